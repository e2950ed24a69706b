// Finite groups with a Z2-grading.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace tg {

// A homomorphism to Z_k, used to pull back the builtin cyclic cocycles.
struct CyclicHom {
    std::string name;
    int k = 1;
    std::vector<int> value;
};

// Elements are 0..n-1 with 0 the identity.
struct GradedGroup {
    std::string label;
    int n = 1;
    std::vector<int> table;  // table[a*n+b] = ab
    std::vector<int> inverse;
    std::vector<int> sign;  // grading, +1 or -1
    std::vector<std::string> names;
    std::vector<CyclicHom> homs;

    int mul(int a, int b) const { return table[a * n + b]; }
    int inv(int a) const { return inverse[a]; }
    int order() const { return n; }
    bool has_odd() const;
    std::vector<int> kernel() const;
    int find(const std::string& name) const;  // -1 if absent
};

// Parses "cyclic:4:mod2", "product_Z2:S3", "dihedral:4:reflection",
// "symmetric:3:sign", optionally with a trailing grading override.
GradedGroup build_graded_group(const std::string& spec);
inline GradedGroup build_graded_group(const char* spec) { return build_graded_group(std::string(spec)); }
// JSON form: {"family": ..., "n": ..., "base": ..., "grading": ...} or an
// explicit table {"family": "explicit", "names": [...], "table": [[...]], "grading": [...]}.
GradedGroup build_graded_group(const nlohmann::json& spec);

// Throws std::invalid_argument with a witness if the data is not a graded group.
void validate(const GradedGroup& g);

}  // namespace tg
