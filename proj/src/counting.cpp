#include "tg/counting.hpp"

#include <sstream>
#include <stdexcept>

#include "tg/algebra.hpp"
#include "tg/snf.hpp"
#include "tg/transgress.hpp"

namespace tg {

namespace {

Phase th2(const Cochain& c, int a, int b) {  // c([a|b])
    int t[2] = {b, a};
    return c.at(t);
}

void require_integer(const CountReport& r, bool half) {
    auto check = [&](const mpq_class& v, const std::string& which) {
        mpq_class x = half ? mpq_class(v * 2) : v;
        if (x < 0 || x.get_den() != 1)
            throw std::logic_error(r.quantity + ": " + which + " = " + rational_str(v) + " is not a non-negative " +
                                   (half ? "half-integer" : "integer"));
    };
    check(r.value_formula, "value_formula");
    check(r.value_sections, "value_sections");
    for (auto& [k, v] : r.extra) check(v, k);
}

void require_group(const GradedGroup& grp, const GroupoidPtr& bg) {
    if (bg->nobj != 1 || bg->nmor() != grp.n) throw std::invalid_argument("expected the classifying groupoid of the group");
}

// Orbits of the kernel under g -> w g^pi(w) w^-1, w in G^ (real_action) or in G.
int orbit_count(const GradedGroup& grp, bool real_action) {
    std::vector<int> seen(grp.n, 0);
    int orbits = 0;
    for (int g : grp.kernel()) {
        if (seen[g]) continue;
        ++orbits;
        for (int w = 0; w < grp.n; ++w) {
            if (!real_action && grp.sign[w] < 0) continue;
            int gp = grp.sign[w] > 0 ? g : grp.inv(g);
            seen[grp.mul(grp.mul(w, gp), grp.inv(w))] = 1;
        }
    }
    return orbits;
}

}  // namespace

void CountReport::settle() {
    agree = value_formula == value_sections;
    if (value_classical) agree = agree && *value_classical == value_formula;
    for (auto& [k, v] : extra) agree = agree && v == value_formula;
}

nlohmann::json to_json(const CountReport& r) {
    nlohmann::json j{{"quantity", r.quantity},
                     {"value_formula", rational_str(r.value_formula)},
                     {"value_sections", rational_str(r.value_sections)},
                     {"agree", r.agree}};
    j["value_classical"] = r.value_classical ? nlohmann::json(rational_str(*r.value_classical)) : nlohmann::json();
    for (auto& [k, v] : r.extra) j["extra"][k] = rational_str(v);
    return j;
}

std::string to_text(const CountReport& r) {
    std::ostringstream os;
    os << r.quantity << "\n";
    os << "  formula    " << rational_str(r.value_formula) << "\n";
    os << "  sections   " << rational_str(r.value_sections) << "\n";
    if (r.value_classical) os << "  classical  " << rational_str(*r.value_classical) << "\n";
    for (auto& [k, v] : r.extra) os << "  " << k << std::string(k.size() < 11 ? 11 - k.size() : 1, ' ') << rational_str(v) << "\n";
    os << "  agree      " << (r.agree ? "yes" : "NO") << "\n";
    return os.str();
}

mpq_class rational_integral(const PhaseSum& s, const std::string& what) {
    auto v = s.rational_value();
    if (!v) throw std::logic_error(what + " is not rational: " + s.str());
    return *v;
}

CountReport count_simples(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& theta) {
    require_group(grp, bg);
    if (theta.degree() != 2 || theta.twist() != Twist::PI) throw std::invalid_argument("count_simples needs a twisted 2-cocycle");
    require_cocycle(theta, "count_simples input");
    CountReport r;
    r.quantity = "simple Real twisted representations";
    auto R = unoriented_quotient_loop_groupoid(bg);
    Cochain beta = tau_ref(theta, R);
    auto LR = loop_groupoid(R);
    r.value_formula = rational_integral(integrate(tau(beta, LR)), r.quantity);
    r.value_sections = flat_sections_dim_C(beta).dim;
    // weighted sum over pairs (g, w) with g = w g^pi(w) w^-1
    PhaseSum pairs;
    for (int g : grp.kernel())
        for (int w = 0; w < grp.n; ++w) {
            int gp = grp.sign[w] > 0 ? g : grp.inv(g);
            if (grp.mul(grp.mul(w, gp), grp.inv(w)) != g) continue;
            Phase p = th2(theta, g, w) - th2(theta, w, gp);
            if (grp.sign[w] < 0) p -= th2(theta, grp.inv(g), g);
            pairs += PhaseSum(p);
        }
    r.extra["pair_sum"] = rational_integral(pairs, "pair sum") / (2 * (int)grp.kernel().size());
    // untwisted: classes of G up to the Real conjugation
    if (theta.is_zero()) r.value_classical = orbit_count(grp, true);
    r.settle();
    require_integer(r, false);
    return r;
}

CountReport centre_dim(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& theta) {
    require_group(grp, bg);
    if (theta.degree() != 2 || theta.twist() != Twist::PI) throw std::invalid_argument("centre_dim needs a twisted 2-cocycle");
    require_cocycle(theta, "centre_dim input");
    CountReport r;
    r.quantity = "real dimension of the centre";
    auto G = grp.kernel();
    PhaseSum s;
    for (int g1 : G)
        for (int g2 : G)
            if (grp.mul(g1, g2) == grp.mul(g2, g1)) s += PhaseSum(th2(theta, g1, g2) - th2(theta, g2, g1));
    r.value_formula = rational_integral(s, "commuting pair sum") / (int)G.size();
    auto Q = quotient_loop_groupoid(bg);
    r.value_sections = real_flat_sections_dim(-tau_pi(theta, Q)).dim;
    r.extra["algebra_centre"] = centre(build_algebra(bg, theta)).dim;
    if (theta.is_zero()) r.value_classical = orbit_count(grp, false);
    r.settle();
    require_integer(r, false);
    return r;
}

CountReport double_simple_count(const GroupoidPtr& bg, const Cochain& eta, std::uint64_t budget) {
    if (eta.degree() != 3 || eta.twist() != Twist::PI) throw std::invalid_argument("double_simple_count needs a twisted 3-cocycle");
    require_cocycle(eta, "double_simple_count input");
    CountReport r;
    r.quantity = "simple modules of the double";
    auto R = unoriented_quotient_loop_groupoid(bg);
    auto LR = loop_groupoid(R);
    // morphisms of L L R: sum over objects x of |Aut(x)| |out(x)|
    std::uint64_t need = 0;
    for (int x = 0; x < LR->nobj; ++x) need += (std::uint64_t)LR->aut(x).size() * LR->out[x].size();
    if (need > budget)
        throw BudgetExceeded("second loop groupoid needs about " + std::to_string(need) + " morphisms, budget is " +
                             std::to_string(budget));
    Cochain b1 = tau(tau_ref(eta, R), LR);
    auto LLR = loop_groupoid(LR);
    r.value_formula = rational_integral(integrate(tau(b1, LLR)), r.quantity);
    r.value_sections = flat_sections_dim_C(b1).dim;
    r.settle();
    require_integer(r, false);
    return r;
}

Sectors one_loop_sectors(const GroupoidPtr& bg, const Cochain& eta) {
    if (eta.degree() != 3 || eta.twist() != Twist::PI) throw std::invalid_argument("one_loop_sectors needs a twisted 3-cocycle");
    require_cocycle(eta, "one_loop_sectors input");
    auto R = unoriented_quotient_loop_groupoid(bg);
    auto LR = loop_groupoid(R);
    Cochain b1 = tau(tau_ref(eta, R), LR);
    FlatSections fs = flat_sections_dim_C(b1);
    auto comps = components(*LR);
    Sectors s;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        int par = R->grade[LR->obj_loop[comps[i].base]];
        for (int x : comps[i].objects)
            if (R->grade[LR->obj_loop[x]] != par) throw std::logic_error("a component mixes loop parities");
        (par > 0 ? s.torus : s.klein) += fs.per_component[i];
    }
    return s;
}

CountReport flat_sect_equality(const Cochain& alpha) {
    if (alpha.degree() != 1 || alpha.twist() != Twist::PI)
        throw std::invalid_argument("flat_sect_equality needs a twisted 1-cocycle");
    require_cocycle(alpha, "flat_sect_equality input");
    const GroupoidPtr& g = alpha.groupoid();
    CountReport r;
    r.quantity = "half real dimension of flat sections";
    r.value_formula = rational_integral(integrate(tau_ref(alpha, unoriented_quotient_loop_groupoid(g))), r.quantity);
    r.value_sections = mpq_class(real_flat_sections_dim(alpha).dim, 2);
    r.value_sections.canonicalize();
    r.extra["tau_pi_side"] = rational_integral(integrate(-tau_pi(alpha, quotient_loop_groupoid(g))), "tau_pi integral");
    r.settle();
    require_integer(r, true);
    return r;
}

}  // namespace tg
