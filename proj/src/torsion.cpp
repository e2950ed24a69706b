#include "tg/torsion.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tg/parallel.hpp"
#include "tg/transgress.hpp"

namespace tg {

std::string to_string(Surface s) {
    switch (s) {
        case Surface::T2: return "T2";
        case Surface::KLEIN: return "KLEIN";
        case Surface::T3: return "T3";
        case Surface::KLEINxS1: return "KLEINxS1";
    }
    return "?";
}

namespace {

void require_bg(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& c, int degree) {
    if (bg->nobj != 1 || bg->nmor() != grp.n) throw std::invalid_argument("expected the classifying groupoid of the group");
    if (c.groupoid() != bg) throw std::invalid_argument("cocycle does not live on the given groupoid");
    if (c.degree() != degree || c.twist() != Twist::PI)
        throw std::invalid_argument("torsion needs a twisted " + std::to_string(degree) + "-cocycle");
    require_cocycle(c, "torsion input");
}

std::string row_str(const GradedGroup& grp, const std::vector<int>& gens) {
    std::string s = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + grp.names[gens[i]];
    return s + ")";
}

void finish(TorsionTable& t, const GradedGroup& grp, std::size_t ncomp) {
    std::sort(t.rows.begin(), t.rows.end(), [](const TorsionRow& a, const TorsionRow& b) { return a.gens < b.gens; });
    t.orbit_sums.assign(ncomp, PhaseSum());
    for (auto& r : t.rows) {
        if (r.phase != r.closed_form)
            throw std::logic_error("torsion closed form mismatch at " + row_str(grp, r.gens) + ": transgression " +
                                   r.phase.str() + ", closed form " + r.closed_form.str());
        t.orbit_sums[r.orbit] += PhaseSum(r.phase);
    }
}

std::vector<int> component_of(const Groupoid& g) {
    std::vector<int> c(g.nobj, -1);
    auto comps = components(g);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (int x : comps[i].objects) c[x] = (int)i;
    return c;
}

}  // namespace

Phase torsion_closed_form_2d(const GradedGroup& grp, const Cochain& theta, int g, int w) {
    auto th = [&](int a, int b) {
        int t[2] = {b, a};
        return theta.at(t);
    };
    bool odd = grp.sign[w] < 0;
    int gp = odd ? grp.inv(g) : g;
    Phase p = th(g, w) - th(w, gp);
    if (odd) p -= th(grp.inv(g), g);
    return p;
}

Phase torsion_closed_form_3d(const GradedGroup& grp, const Cochain& eta, int g, int w1, int w2) {
    auto E = [&](int a, int b, int c) {
        int t[3] = {c, b, a};
        return eta.at(t);
    };
    auto mixed = [&](int g, int w1, int w2) {  // w1 even, w2 odd
        int gi = grp.inv(g);
        return E(gi, g, w1) + E(w1, gi, g) - E(gi, w1, g) + E(w1, w2, gi) + E(g, w1, w2) + E(w2, gi, w1) -
               E(w1, g, w2) - E(w2, w1, gi) - E(g, w2, w1);
    };
    bool o1 = grp.sign[w1] < 0, o2 = grp.sign[w2] < 0;
    if (!o1 && !o2)
        return E(w2, g, w1) + E(w1, w2, g) + E(g, w1, w2) - E(w2, w1, g) - E(g, w2, w1) - E(w1, g, w2);
    if (!o1) return mixed(g, w1, w2);
    if (!o2) return -mixed(g, w2, w1);
    int gi = grp.inv(g);
    return E(gi, w2, gi) + E(gi, g, w1) + E(w1, g, gi) - E(gi, g, w2) - E(w2, g, gi) - E(gi, w1, gi) +
           E(w1, w2, g) + E(g, w1, w2) + E(w2, gi, w1) - E(w1, gi, w2) - E(w2, w1, g) - E(g, w2, w1);
}

TorsionTable torsion_2d(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& theta) {
    require_bg(grp, bg, theta, 2);
    auto R = unoriented_quotient_loop_groupoid(bg);
    auto LR = loop_groupoid(R);
    Cochain b0 = tau(tau_ref(theta, R), LR);
    auto comp = component_of(*LR);
    TorsionTable t;
    t.dim = 2;
    t.rows.resize(LR->nobj);
    parallel_for(LR->nobj, [&](std::size_t b, std::size_t e) {
        for (std::size_t o = b; o < e; ++o) {
            int x = (int)o;
            int g = R->obj_loop[LR->obj_up[x]];
            int w = R->mor_up[LR->obj_loop[x]];
            TorsionRow& r = t.rows[o];
            r.gens = {g, w};
            r.surface = grp.sign[w] > 0 ? Surface::T2 : Surface::KLEIN;
            r.phase = b0.at(&x);
            r.closed_form = torsion_closed_form_2d(grp, theta, g, w);
            r.orbit = comp[x];
        }
    });
    finish(t, grp, components(*LR).size());
    return t;
}

TorsionTable torsion_3d(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& eta) {
    require_bg(grp, bg, eta, 3);
    auto R = unoriented_quotient_loop_groupoid(bg);
    auto LR = loop_groupoid(R);
    auto LLR = loop_groupoid(LR);
    Cochain b0 = tau(tau(tau_ref(eta, R), LR), LLR);
    auto comp = component_of(*LLR);
    TorsionTable t;
    t.dim = 3;
    t.rows.resize(LLR->nobj);
    parallel_for(LLR->nobj, [&](std::size_t b, std::size_t e) {
        for (std::size_t o = b; o < e; ++o) {
            int x = (int)o;
            int o1 = LLR->obj_up[x];
            int g = R->obj_loop[LR->obj_up[o1]];
            int w1 = R->mor_up[LR->obj_loop[o1]];
            int w2 = R->mor_up[LR->mor_up[LLR->obj_loop[x]]];
            TorsionRow& r = t.rows[o];
            r.gens = {g, w1, w2};
            r.surface = grp.sign[w1] > 0 && grp.sign[w2] > 0 ? Surface::T3 : Surface::KLEINxS1;
            r.phase = b0.at(&x);
            r.closed_form = torsion_closed_form_3d(grp, eta, g, w1, w2);
            r.orbit = comp[x];
        }
    });
    finish(t, grp, components(*LLR).size());
    // doubly odd rows reduce to the mixed row (g, w1 w2^-1, w2)
    for (auto& r : t.rows) {
        int g = r.gens[0], w1 = r.gens[1], w2 = r.gens[2];
        if (grp.sign[w1] > 0 || grp.sign[w2] > 0) continue;
        std::vector<int> red{g, grp.mul(w1, grp.inv(w2)), w2};
        auto it = std::lower_bound(t.rows.begin(), t.rows.end(), red,
                                   [](const TorsionRow& a, const std::vector<int>& k) { return a.gens < k; });
        if (it == t.rows.end() || it->gens != red)
            throw std::logic_error("reduced row " + row_str(grp, red) + " is missing");
        if (it->phase != r.phase || torsion_closed_form_3d(grp, eta, red[0], red[1], red[2]) != r.phase)
            throw std::logic_error("doubly odd row " + row_str(grp, r.gens) + " differs from " + row_str(grp, red));
    }
    return t;
}

std::string to_tsv(const GradedGroup& grp, const TorsionTable& t) {
    std::ostringstream os;
    os << "generators\tparities\tsurface\tphase\n";
    for (auto& r : t.rows) {
        std::string par;
        for (int x : r.gens) par += grp.sign[x] > 0 ? '+' : '-';
        os << row_str(grp, r.gens) << '\t' << par << '\t' << to_string(r.surface) << '\t' << r.phase.str() << '\n';
    }
    return os.str();
}

}  // namespace tg
