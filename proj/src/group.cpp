#include "tg/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tg {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer for " + what + ": '" + s + "'");
    }
}

// Ungraded group from a multiplication functor on 0..n-1.
template <class Mul>
GradedGroup from_mul(std::string label, int n, std::vector<std::string> names, Mul mul) {
    GradedGroup g;
    g.label = std::move(label);
    g.n = n;
    g.names = std::move(names);
    g.table.resize((std::size_t)n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table[a * n + b] = mul(a, b);
    g.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.table[a * n + b] == 0) g.inverse[a] = b;
    g.sign.assign(n, 1);
    return g;
}

GradedGroup cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    GradedGroup g = from_mul("Z" + std::to_string(n), n, names, [n](int a, int b) { return (a + b) % n; });
    CyclicHom h{"id", n, {}};
    for (int i = 0; i < n; ++i) h.value.push_back(i);
    g.homs.push_back(h);
    return g;
}

// Dihedral group of order 2m: element r^a s^b stored as a + m*b.
GradedGroup dihedral(int m) {
    if (m < 1) throw std::invalid_argument("dihedral group needs n >= 1");
    std::vector<std::string> names;
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < m; ++a) names.push_back((b ? "s" : "r") + std::to_string(a));
    names[0] = "e";
    GradedGroup g = from_mul("D" + std::to_string(m), 2 * m, names, [m](int x, int y) {
        int a1 = x % m, b1 = x / m, a2 = y % m, b2 = y / m;
        // r^a1 s^b1 r^a2 s^b2 = r^(a1 + (-1)^b1 a2) s^(b1+b2)
        int a = (a1 + (b1 ? m - a2 : a2)) % m;
        return a + m * ((b1 + b2) % 2);
    });
    CyclicHom h{"reflection", 2, {}};
    for (int x = 0; x < 2 * m; ++x) h.value.push_back(x / m);
    g.homs.push_back(h);
    return g;
}

GradedGroup symmetric(int k) {
    if (k < 1 || k > 5) throw std::invalid_argument("symmetric group supported for 1 <= n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = (int)i;
    std::vector<std::string> names;
    for (auto& q : perms) {
        std::string s;
        for (int v : q) s += std::to_string(v + 1);
        names.push_back(s);
    }
    names[0] = "e";
    GradedGroup g = from_mul("S" + std::to_string(k), (int)perms.size(), names, [&](int a, int b) {
        std::vector<int> c(k);
        for (int i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];  // a after b
        return index.at(c);
    });
    CyclicHom h{"sign", 2, {}};
    for (auto& q : perms) {
        int inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) inv += q[i] > q[j];
        h.value.push_back(inv % 2);
    }
    g.homs.push_back(h);
    return g;
}

GradedGroup direct_product(const GradedGroup& a, const GradedGroup& b) {
    std::vector<std::string> names;
    for (int x = 0; x < a.n; ++x)
        for (int y = 0; y < b.n; ++y) names.push_back("(" + a.names[x] + "," + b.names[y] + ")");
    names[0] = "e";
    GradedGroup g = from_mul(a.label + "x" + b.label, a.n * b.n, names, [&](int u, int v) {
        return a.mul(u / b.n, v / b.n) * b.n + b.mul(u % b.n, v % b.n);
    });
    for (auto& h : a.homs) {
        CyclicHom p{h.name + ".0", h.k, {}};
        for (int u = 0; u < g.n; ++u) p.value.push_back(h.value[u / b.n]);
        g.homs.push_back(p);
    }
    for (auto& h : b.homs) {
        CyclicHom p{h.name + ".1", h.k, {}};
        for (int u = 0; u < g.n; ++u) p.value.push_back(h.value[u % b.n]);
        g.homs.push_back(p);
    }
    return g;
}

GradedGroup base_group(const std::string& s) {
    if (s == "1" || s == "trivial") return cyclic(1);
    if (s == "Z2xZ2") return direct_product(cyclic(2), cyclic(2));
    if (s.size() >= 2 && s[0] == 'Z') return cyclic(parse_int(s.substr(1), "cyclic order"));
    if (s.size() >= 2 && s[0] == 'S') return symmetric(parse_int(s.substr(1), "symmetric degree"));
    if (s.size() >= 2 && s[0] == 'D') return dihedral(parse_int(s.substr(1), "dihedral order"));
    throw std::invalid_argument("unknown base group '" + s + "'");
}

void apply_grading(GradedGroup& g, const std::string& grading, const std::string& family) {
    if (grading == "trivial") {
        g.sign.assign(g.n, 1);
        return;
    }
    const CyclicHom* h = nullptr;
    if (grading == "mod2" && family == "cyclic") {
        if (g.n % 2 != 0) throw std::invalid_argument("mod2 grading requires an even cyclic order");
        h = &g.homs.front();
        for (int x = 0; x < g.n; ++x) g.sign[x] = (h->value[x] % 2) ? -1 : 1;
        return;
    }
    if (grading == "reflection" && family == "dihedral") h = &g.homs.front();
    if (grading == "sign" && family == "symmetric") h = &g.homs.front();
    if (grading == "projection" && family == "product_Z2") h = &g.homs.back();
    if (!h) throw std::invalid_argument("grading '" + grading + "' not available for family '" + family + "'");
    for (int x = 0; x < g.n; ++x) g.sign[x] = h->value[x] ? -1 : 1;
}

std::string default_grading(const std::string& family) {
    if (family == "cyclic") return "mod2";
    if (family == "dihedral") return "reflection";
    if (family == "symmetric") return "sign";
    if (family == "product_Z2") return "projection";
    return "trivial";
}

GradedGroup build_family(const std::string& family, const std::string& param, std::string grading) {
    if (grading.empty()) grading = default_grading(family);
    GradedGroup g;
    if (family == "cyclic")
        g = cyclic(parse_int(param, "cyclic order"));
    else if (family == "dihedral")
        g = dihedral(parse_int(param, "dihedral order"));
    else if (family == "symmetric")
        g = symmetric(parse_int(param, "symmetric degree"));
    else if (family == "product_Z2")
        g = direct_product(base_group(param), cyclic(2));
    else
        throw std::invalid_argument("unknown group family '" + family + "'");
    apply_grading(g, grading, family);
    g.label = family + ":" + param + ":" + grading;
    validate(g);
    return g;
}

}  // namespace

bool GradedGroup::has_odd() const {
    return std::any_of(sign.begin(), sign.end(), [](int s) { return s < 0; });
}

std::vector<int> GradedGroup::kernel() const {
    std::vector<int> k;
    for (int x = 0; x < n; ++x)
        if (sign[x] > 0) k.push_back(x);
    return k;
}

int GradedGroup::find(const std::string& name) const {
    for (int x = 0; x < n; ++x)
        if (names[x] == name) return x;
    return -1;
}

void validate(const GradedGroup& g) {
    const int n = g.n;
    if (n < 1 || (int)g.table.size() != n * n || (int)g.sign.size() != n)
        throw std::invalid_argument("group table has wrong shape");
    for (int a = 0; a < n * n; ++a)
        if (g.table[a] < 0 || g.table[a] >= n) throw std::invalid_argument("group table entry out of range");
    for (int a = 0; a < n; ++a)
        if (g.mul(0, a) != a || g.mul(a, 0) != a)
            throw std::invalid_argument("element 0 is not an identity");
    for (int a = 0; a < n; ++a) {
        if (g.inverse[a] < 0 || g.mul(g.inverse[a], a) != 0)
            throw std::invalid_argument("element " + g.names[a] + " has no inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw std::invalid_argument("non-associative table at (" + g.names[a] + "," +
                                                g.names[b] + "," + g.names[c] + ")");
    for (int a = 0; a < n; ++a) {
        if (g.sign[a] != 1 && g.sign[a] != -1) throw std::invalid_argument("grading values must be +1 or -1");
        for (int b = 0; b < n; ++b)
            if (g.sign[g.mul(a, b)] != g.sign[a] * g.sign[b])
                throw std::invalid_argument("grading is not a homomorphism at (" + g.names[a] + "," +
                                            g.names[b] + ")");
    }
}

GradedGroup build_graded_group(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() < 2 || parts.size() > 3)
        throw std::invalid_argument("group spec must look like family:param[:grading], got '" + spec + "'");
    return build_family(parts[0], parts[1], parts.size() == 3 ? parts[2] : "");
}

GradedGroup build_graded_group(const nlohmann::json& spec) {
    if (spec.is_string()) return build_graded_group(spec.get<std::string>());
    if (!spec.is_object() || !spec.contains("family"))
        throw std::invalid_argument("group spec JSON needs a 'family' field");
    std::string family = spec.at("family").get<std::string>();
    if (family != "explicit") {
        std::string param;
        if (spec.contains("n"))
            param = std::to_string(spec.at("n").get<int>());
        else if (spec.contains("base"))
            param = spec.at("base").get<std::string>();
        else
            throw std::invalid_argument("group spec needs 'n' or 'base'");
        std::string grading = spec.contains("grading") ? spec.at("grading").get<std::string>() : "";
        return build_family(family, param, grading);
    }
    const auto& rows = spec.at("table");
    int n = (int)rows.size();
    std::vector<std::string> names;
    if (spec.contains("names"))
        names = spec.at("names").get<std::vector<std::string>>();
    else
        for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    if ((int)names.size() != n) throw std::invalid_argument("names and table sizes differ");
    GradedGroup g;
    g.label = spec.value("label", std::string("explicit"));
    g.n = n;
    g.names = names;
    g.table.resize((std::size_t)n * n);
    for (int a = 0; a < n; ++a) {
        if ((int)rows[a].size() != n) throw std::invalid_argument("table is not square");
        for (int b = 0; b < n; ++b) g.table[a * n + b] = rows[a][b].get<int>();
    }
    g.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.table[a * n + b] == 0 && a * n + b < (int)g.table.size()) g.inverse[a] = b;
    g.sign.assign(n, 1);
    if (spec.contains("grading")) {
        const auto& gr = spec.at("grading");
        if (gr.is_string()) {
            if (gr.get<std::string>() != "trivial")
                throw std::invalid_argument("explicit groups take 'trivial' or a sign list as grading");
        } else {
            g.sign = gr.get<std::vector<int>>();
        }
    }
    validate(g);
    return g;
}

}  // namespace tg
