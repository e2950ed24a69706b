// Property checks over a matrix of graded groups and cocycles. Shared by the
// `verify` subcommand and the acceptance binary.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tg/cochain.hpp"
#include "tg/group.hpp"
#include "tg/groupoid.hpp"

namespace tg {

struct PropertyResult {
    std::string name;
    bool pass = true;
    long cases = 0;
    std::string witness;  // first failure
    double seconds = 0;

    // Records a case; keeps only the first failing witness.
    void record(bool ok, const std::string& what);
};

// Leaves out the timing so that output is reproducible.
nlohmann::json to_json(const PropertyResult& r);

// A graded group with its classifying groupoid and the twisted 2-cocycles used
// for the algebra and counting checks: trivial, quaternionic when the group has
// odd elements, and the solver basis of the given order.
struct SuiteEntry {
    std::string spec;
    GradedGroup grp;
    GroupoidPtr bg;
    std::vector<std::pair<std::string, Cochain>> theta;
};
SuiteEntry suite_entry(const std::string& spec, int order);

// First non-degenerate tuple where c is nonzero, as text; empty if c is zero.
std::string first_nonzero(const Cochain& c);

PropertyResult check_anti_chain(const std::vector<std::string>& groups, int per_degree, std::uint64_t seed);
PropertyResult check_oracle(const std::vector<std::string>& groups, int per_degree, std::uint64_t seed);
PropertyResult check_restriction(const std::vector<std::string>& groups, int per_degree, std::uint64_t seed);
PropertyResult check_count_simples(const std::vector<SuiteEntry>& suite);
PropertyResult check_centre(const std::vector<SuiteEntry>& suite);
// Groups in one family share their even part; centre dimensions of the
// cocycles that vanish on the even part must agree across the family.
PropertyResult check_lift_independence(const std::vector<std::vector<std::string>>& families);
PropertyResult check_flat_sections(const std::vector<std::string>& groups, int per_group, std::uint64_t seed);
PropertyResult check_algebra(const std::vector<SuiteEntry>& suite);
PropertyResult check_quasi_bialgebra(const std::vector<std::string>& groups, int order);
PropertyResult check_double(const std::vector<std::string>& groups, int order);
PropertyResult check_torsion(const std::vector<std::string>& groups, int order, std::uint64_t seed);
PropertyResult check_solver();

// Runs everything listed in a manifest; see manifests/verify_v1.json.
std::vector<PropertyResult> run_manifest(const nlohmann::json& manifest, std::uint64_t seed);

}  // namespace tg
