#include "tg/verify.hpp"

#include <chrono>
#include <stdexcept>

#include "tg/algebra.hpp"
#include "tg/counting.hpp"
#include "tg/snf.hpp"
#include "tg/torsion.hpp"
#include "tg/transgress.hpp"

namespace tg {

void PropertyResult::record(bool ok, const std::string& what) {
    ++cases;
    if (!ok && pass) {
        pass = false;
        witness = what;
    }
}

nlohmann::json to_json(const PropertyResult& r) {
    return {{"property", r.name}, {"pass", r.pass}, {"cases", r.cases}, {"witness", r.witness}};
}

std::string first_nonzero(const Cochain& c) {
    std::string out;
    const Groupoid& g = *c.groupoid();
    const int n = c.degree();
    for_each_tuple(g, n, [&](const int* t) {
        if (!out.empty() || c.at(t).is_zero()) return;
        std::vector<int> v(t, t + std::max(n, 1));
        out = (n == 0 ? "object " + g.obj_names.at(t[0]) : tuple_str(g, v)) + " = " + c.at(t).str();
    });
    return out;
}

SuiteEntry suite_entry(const std::string& spec, int order) {
    SuiteEntry e;
    e.spec = spec;
    e.grp = build_graded_group(spec);
    e.bg = classifying(e.grp);
    e.theta.emplace_back("trivial", Cochain(e.bg, 2, Twist::PI));
    if (e.grp.has_odd()) e.theta.emplace_back("quaternionic", builtin_cocycle(e.grp, e.bg, "quaternionic", 2, Twist::PI));
    auto b = cocycle_basis(e.bg, 2, Twist::PI, order);
    for (std::size_t i = 0; i < b.cocycles.size(); ++i)
        e.theta.emplace_back("solver" + std::to_string(i), b.cocycles[i]);
    return e;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
PropertyResult timed(const std::string& name, F&& f) {
    PropertyResult r;
    r.name = name;
    auto t0 = Clock::now();
    try {
        f(r);
    } catch (const std::exception& e) {
        r.record(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

struct Loops {
    GradedGroup grp;
    GroupoidPtr bg, L, Q, R;
    explicit Loops(const std::string& spec)
        : grp(build_graded_group(spec)),
          bg(classifying(grp)),
          L(loop_groupoid(bg)),
          Q(quotient_loop_groupoid(bg)),
          R(unoriented_quotient_loop_groupoid(bg)) {}
};

struct MapCase {
    const char* name;
    Twist twist;
    Variant variant;
};
const MapCase kMaps[] = {{"tau", Twist::NONE, Variant::PLAIN},
                         {"tau_pi", Twist::PI, Variant::QUOT},
                         {"tau_ref", Twist::PI, Variant::REF},
                         {"tau_ref_tilde", Twist::NONE, Variant::REF_TILDE}};

Cochain apply_map(const MapCase& m, const Loops& l, const Cochain& c) {
    switch (m.variant) {
        case Variant::PLAIN: return tau(c, l.L);
        case Variant::QUOT: return tau_pi(c, l.Q);
        case Variant::REF: return tau_ref(c, l.R);
        case Variant::REF_TILDE: return tau_ref_tilde(c, l.R);
    }
    throw std::logic_error("unknown map");
}

const GroupoidPtr& target(const MapCase& m, const Loops& l) {
    return m.variant == Variant::PLAIN ? l.L : m.variant == Variant::QUOT ? l.Q : l.R;
}

std::string where(const std::string& spec, const std::string& what) { return spec + " " + what; }

}  // namespace

PropertyResult check_anti_chain(const std::vector<std::string>& groups, int per_degree, std::uint64_t seed) {
    return timed("anti_chain_map", [&](PropertyResult& r) {
        for (auto& spec : groups) {
            Loops l(spec);
            for (auto& m : kMaps)
                for (int deg = 1; deg <= 3; ++deg)
                    for (int i = 0; i < per_degree; ++i) {
                        std::uint64_t s = seed * 1000003 + r.cases;
                        Cochain c = random_cochain(l.bg, deg, m.twist, 12, s);
                        Cochain diff = differential(apply_map(m, l, c)) + apply_map(m, l, differential(c));
                        r.record(diff.is_zero(), where(spec, std::string(m.name) + " degree " + std::to_string(deg) +
                                                                 " seed " + std::to_string(s) + ": " +
                                                                 first_nonzero(diff)));
                    }
        }
    });
}

PropertyResult check_oracle(const std::vector<std::string>& groups, int per_degree, std::uint64_t seed) {
    return timed("oracle_equivalence", [&](PropertyResult& r) {
        for (auto& spec : groups) {
            Loops l(spec);
            for (auto& m : kMaps)
                for (int deg = 1; deg <= 3; ++deg)
                    for (int i = 0; i < per_degree; ++i) {
                        std::uint64_t s = seed * 1000003 + r.cases;
                        Cochain c = random_cochain(l.bg, deg, m.twist, 12, s);
                        Cochain diff = ez_transgress_oracle(c, m.variant, target(m, l)) - apply_map(m, l, c);
                        r.record(diff.is_zero(), where(spec, std::string(m.name) + " degree " + std::to_string(deg) +
                                                                 " seed " + std::to_string(s) + ": " +
                                                                 first_nonzero(diff)));
                    }
        }
    });
}

PropertyResult check_restriction(const std::vector<std::string>& groups, int per_degree, std::uint64_t seed) {
    return timed("restriction_diagram", [&](PropertyResult& r) {
        for (auto& spec : groups) {
            Loops l(spec);
            auto E = even_subgroupoid(l.bg);
            auto LE = loop_groupoid(E);
            Functor up = inclusion(LE, l.R), inc = inclusion(E, l.bg);
            for (int deg = 1; deg <= 3; ++deg)
                for (int i = 0; i < per_degree; ++i) {
                    std::uint64_t s = seed * 1000003 + r.cases;
                    Cochain c = random_cochain(l.bg, deg, Twist::PI, 12, s);
                    Cochain diff = pullback(up, tau_ref(c, l.R)) - tau(pullback(inc, c, Twist::NONE), LE);
                    r.record(diff.is_zero(),
                             where(spec, "degree " + std::to_string(deg) + " seed " + std::to_string(s) + ": " +
                                             first_nonzero(diff)));
                }
        }
    });
}

PropertyResult check_count_simples(const std::vector<SuiteEntry>& suite) {
    return timed("count_simples", [&](PropertyResult& r) {
        for (auto& e : suite)
            for (auto& [name, th] : e.theta) {
                CountReport c = count_simples(e.grp, e.bg, th);
                r.record(c.agree, where(e.spec, name + ": " + to_json(c).dump()));
            }
    });
}

PropertyResult check_centre(const std::vector<SuiteEntry>& suite) {
    return timed("centre_dim", [&](PropertyResult& r) {
        for (auto& e : suite)
            for (auto& [name, th] : e.theta) {
                CountReport c = centre_dim(e.grp, e.bg, th);
                r.record(c.agree, where(e.spec, name + ": " + to_json(c).dump()));
            }
    });
}

PropertyResult check_lift_independence(const std::vector<std::vector<std::string>>& families) {
    return timed("centre_lift_independence", [&](PropertyResult& r) {
        for (auto& fam : families) {
            std::optional<mpq_class> first;
            for (auto& spec : fam) {
                auto grp = build_graded_group(spec);
                auto bg = classifying(grp);
                std::vector<Cochain> cs{Cochain(bg, 2, Twist::PI)};
                if (grp.has_odd()) cs.push_back(builtin_cocycle(grp, bg, "quaternionic", 2, Twist::PI));
                for (auto& th : cs) {
                    mpq_class v = centre_dim(grp, bg, th).value_sections;
                    if (!first) first = v;
                    r.record(v == *first, spec + ": centre dimension " + rational_str(v) + " vs " + rational_str(*first) +
                                              " for " + fam.front());
                }
            }
        }
    });
}

PropertyResult check_flat_sections(const std::vector<std::string>& groups, int per_group, std::uint64_t seed) {
    return timed("flat_sections_half_dim", [&](PropertyResult& r) {
        for (auto& spec : groups) {
            auto grp = build_graded_group(spec);
            auto bg = classifying(grp);
            auto b = cocycle_basis(bg, 1, Twist::PI, 12);
            for (int i = 0; i < per_group; ++i) {
                std::uint64_t s = seed * 1000003 + r.cases;
                Cochain a = random_cocycle(bg, b, s) + differential(random_cochain(bg, 0, Twist::PI, 12, s + 1));
                CountReport c = flat_sect_equality(a);
                r.record(c.agree, where(spec, "seed " + std::to_string(s) + ": " + to_json(c).dump()));
            }
        }
    });
}

PropertyResult check_algebra(const std::vector<SuiteEntry>& suite) {
    return timed("associativity_and_key_identity", [&](PropertyResult& r) {
        for (auto& e : suite) {
            auto Q = quotient_loop_groupoid(e.bg);
            const GradedGroup& G = e.grp;
            for (auto& [name, th] : e.theta) {
                auto w = associativity_witness(TwistedAlgebra{e.bg, th});
                r.record(!w, where(e.spec, name + ": not associative at " + (w ? tuple_str(*e.bg, *w) : "")));
                Cochain tp = tau_pi(th, Q);
                auto T = [&](int om, int g) {
                    for (int m : Q->out[Q->loop_obj[g]])
                        if (Q->mor_up[m] == om) return tp.at(&m);
                    throw std::logic_error("missing loop morphism");
                };
                auto Th = [&](int a, int b) {
                    int t[2] = {b, a};
                    return th.at(t);
                };
                auto conj = [&](int om, int g) { return G.mul(G.mul(om, g), G.inv(om)); };
                for (int om = 0; om < G.n; ++om)
                    for (int g2 : G.kernel())
                        for (int g1 : G.kernel()) {
                            Phase lhs = Th(conj(om, g2), conj(om, g1)) - Th(g2, g1).act(G.sign[om]);
                            Phase rhs = T(om, g2) + T(om, g1) - T(om, G.mul(g2, g1));
                            r.record(lhs == rhs, where(e.spec, name + ": key identity at (w,g2,g1) = (" +
                                                                   G.names[om] + "," + G.names[g2] + "," +
                                                                   G.names[g1] + ")"));
                        }
            }
        }
    });
}

PropertyResult check_quasi_bialgebra(const std::vector<std::string>& groups, int order) {
    return timed("quasi_bialgebra", [&](PropertyResult& r) {
        for (auto& spec : groups) {
            auto grp = build_graded_group(spec);
            auto bg = classifying(grp);
            auto b = cocycle_basis(bg, 3, Twist::PI, order);
            std::vector<Cochain> etas{Cochain(bg, 3, Twist::PI)};
            etas.insert(etas.end(), b.cocycles.begin(), b.cocycles.end());
            for (std::size_t i = 0; i < etas.size(); ++i) {
                auto q = quasi_bialgebra(grp, bg, etas[i]);
                std::string tag = i == 0 ? "zero" : "solver" + std::to_string(i - 1);
                r.record(q.ok(), where(spec, tag + ": (a) " + q.conj_identity + " (b) " + q.compat_identity +
                                                 " (c) " + q.multiplicative + " (d) " + q.coassociative));
            }
        }
    });
}

PropertyResult check_double(const std::vector<std::string>& groups, int order) {
    return timed("double_counts", [&](PropertyResult& r) {
        for (auto& spec : groups) {
            auto grp = build_graded_group(spec);
            auto bg = classifying(grp);
            auto b = cocycle_basis(bg, 3, Twist::PI, order);
            std::vector<Cochain> etas{Cochain(bg, 3, Twist::PI)};
            etas.insert(etas.end(), b.cocycles.begin(), b.cocycles.end());
            for (std::size_t i = 0; i < etas.size(); ++i) {
                std::string tag = i == 0 ? "zero" : "solver" + std::to_string(i - 1);
                CountReport c = double_simple_count(bg, etas[i]);
                r.record(c.agree, where(spec, tag + ": " + to_json(c).dump()));
                Sectors s = one_loop_sectors(bg, etas[i]);
                r.record(s.torus + s.klein == c.value_sections,
                         where(spec, tag + ": torus " + rational_str(s.torus) + " + klein " + rational_str(s.klein) +
                                         " != " + rational_str(c.value_sections)));
            }
        }
    });
}

PropertyResult check_torsion(const std::vector<std::string>& groups, int order, std::uint64_t seed) {
    return timed("torsion_dual_path", [&](PropertyResult& r) {
        for (auto& spec : groups) {
            auto grp = build_graded_group(spec);
            auto bg = classifying(grp);
            for (int deg : {2, 3}) {
                auto b = cocycle_basis(bg, deg, Twist::PI, order);
                for (std::size_t i = 0; i < b.cocycles.size(); ++i) {
                    std::string tag = "degree " + std::to_string(deg) + " solver" + std::to_string(i);
                    auto run = [&](const Cochain& c) { return deg == 2 ? torsion_2d(grp, bg, c) : torsion_3d(grp, bg, c); };
                    TorsionTable t;
                    try {
                        t = run(b.cocycles[i]);
                    } catch (const std::logic_error& e) {
                        r.record(false, where(spec, tag + ": " + e.what()));
                        continue;
                    }
                    r.record(true, "");
                    // gauge invariance of the orbit sums
                    std::uint64_t s = seed * 1000003 + r.cases;
                    Cochain g = b.cocycles[i] + differential(random_cochain(bg, deg - 1, Twist::PI, 12, s));
                    TorsionTable tg = run(g);
                    r.record(tg.orbit_sums == t.orbit_sums, where(spec, tag + ": orbit sums change under a coboundary"));
                }
            }
        }
        // the classical antisymmetrization pattern on T2 rows of (Z2 x Z2) x Z2
        auto grp = build_graded_group(std::string("product_Z2:Z2xZ2"));
        auto bg = classifying(grp);
        Cochain th = builtin_cocycle(grp, bg, "bichar:id.0.0:id.1.0", 2, Twist::PI);
        for (auto& row : torsion_2d(grp, bg, th).rows) {
            if (row.surface != Surface::T2) continue;
            int g = row.gens[0], h = row.gens[1];
            // components (a1, a2) of the Z2 x Z2 factor
            int a1 = (g / 2) / 2, a2 = (g / 2) % 2, b1 = (h / 2) / 2, b2 = (h / 2) % 2;
            Phase eps(((a1 * b2 - a2 * b1) % 2 + 2) % 2, 2);
            r.record(row.phase == eps, "antisymmetrization pattern at (" + grp.names[g] + "," + grp.names[h] +
                                           "): " + row.phase.str() + " vs " + eps.str());
        }
    });
}

PropertyResult check_solver() {
    return timed("cohomology_solver", [&](PropertyResult& r) {
        auto grp = build_graded_group(std::string("cyclic:2:trivial"));
        auto bg = classifying(grp);
        for (int k : {2, 4, 12}) {
            for (int n : {1, 3}) {
                auto b = cocycle_basis(bg, n, Twist::NONE, k);
                bool ok = b.cohomology.size() == 1 && b.cohomology[0] == 2;
                std::string got;
                for (auto& f : b.cohomology) got += f.get_str() + " ";
                r.record(ok, "H^" + std::to_string(n) + "(Z2; Z/" + std::to_string(k) + ") = [" + got + "]");
            }
        }
        Cochain c3 = builtin_cocycle(grp, bg, "cyclic3", 3);
        r.record(is_cocycle(c3), "cyclic3 is not a cocycle");
        // sum_j eta[g|g^j|g] telescopes to zero on coboundaries of a cyclic group
        Phase inv;
        for (int j = 0; j < grp.n; ++j) {
            int t[3] = {1, j, 1};
            inv += c3.at(t);
        }
        r.record(!inv.is_zero(), "cyclic3 has vanishing cyclic invariant, so it may be a coboundary");
    });
}

std::vector<PropertyResult> run_manifest(const nlohmann::json& m, std::uint64_t seed) {
    auto strings = [&](const char* key) { return m.at(key).get<std::vector<std::string>>(); };
    int order = m.value("solver_order", 4);
    std::vector<std::string> suite_specs = strings("suite");
    std::vector<SuiteEntry> suite;
    for (auto& s : suite_specs) suite.push_back(suite_entry(s, order));
    std::vector<PropertyResult> out;
    out.push_back(check_anti_chain(suite_specs, m.value("anti_chain_per_degree", 2), seed));
    out.push_back(check_oracle(suite_specs, m.value("oracle_per_degree", 1), seed));
    out.push_back(check_restriction(suite_specs, m.value("restriction_per_degree", 2), seed));
    out.push_back(check_count_simples(suite));
    out.push_back(check_centre(suite));
    out.push_back(check_lift_independence(m.at("lift_families").get<std::vector<std::vector<std::string>>>()));
    out.push_back(check_flat_sections(suite_specs, m.value("flat_sections_per_group", 4), seed));
    out.push_back(check_algebra(suite));
    out.push_back(check_quasi_bialgebra(strings("quasi_bialgebra_groups"), order));
    out.push_back(check_double(strings("small_groups"), order));
    out.push_back(check_torsion(strings("small_groups"), order, seed));
    out.push_back(check_solver());
    return out;
}

}  // namespace tg
