#include "tg/algebra.hpp"

#include <atomic>
#include <deque>
#include <mutex>
#include <stdexcept>

#include "tg/parallel.hpp"
#include "tg/transgress.hpp"

namespace tg {

namespace {

// theta evaluated on l_m2 l_m1.
Phase th(const Cochain& theta, int m2, int m1) {
    int t[2] = {m1, m2};
    return theta.at(t);
}

int find_lift(const Groupoid& g, int x, int parent_mor) {
    for (int m : g.out[x])
        if (g.mor_up[m] == parent_mor) return m;
    return -1;
}

void add_term(AlgebraElement& x, int m, const PhaseSum& c) {
    if (c.is_zero()) return;
    auto it = x.find(m);
    if (it == x.end()) {
        x.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) x.erase(it);
}

void add_term(TensorElement& x, const std::vector<int>& k, const PhaseSum& c) {
    if (c.is_zero()) return;
    auto it = x.find(k);
    if (it == x.end()) {
        x.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) x.erase(it);
}

std::string tensor_str(const Groupoid& g, const TensorElement& x) {
    std::string s;
    for (auto& [k, c] : x) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        for (std::size_t i = 0; i < k.size(); ++i) s += (i ? " (x) l_" : " l_") + g.mor_names[k[i]];
    }
    return s.empty() ? "0" : s;
}

}  // namespace

std::optional<std::vector<int>> associativity_witness(const TwistedAlgebra& a) {
    const Groupoid& g = *a.g;
    std::vector<std::vector<int>> found;
    std::mutex mu;
    std::atomic<bool> stop{false};
    parallel_for(g.nmor(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e && !stop; ++i) {
            int m1 = (int)i;
            for (int m2 : g.out[g.tgt[m1]]) {
                int m21 = g.compose(m2, m1);
                for (int m3 : g.out[g.tgt[m2]]) {
                    int m32 = g.compose(m3, m2);
                    Phase left = th(a.theta, m3, m2) + th(a.theta, m32, m1);
                    Phase right = th(a.theta, m2, m1).act(a.coeff_sign(m3)) + th(a.theta, m3, m21);
                    if (left != right) {
                        std::lock_guard<std::mutex> lk(mu);
                        found.push_back({m3, m2, m1});
                        stop = true;
                        return;
                    }
                }
            }
        }
    });
    if (found.empty()) return std::nullopt;
    return *std::min_element(found.begin(), found.end(), [](auto& x, auto& y) { return x.back() < y.back(); });
}

TwistedAlgebra build_algebra(GroupoidPtr g, Cochain theta) {
    if (theta.groupoid() != g || theta.degree() != 2)
        throw std::invalid_argument("algebra twist must be a 2-cochain on the groupoid");
    if (theta.twist() == Twist::PI && !g->graded)
        throw std::invalid_argument("a twisted 2-cocycle needs a graded groupoid");
    TwistedAlgebra a{std::move(g), std::move(theta)};
    if (auto w = associativity_witness(a))
        throw std::invalid_argument("not associative (theta is not a cocycle) on " + tuple_str(*a.g, {(*w)[2], (*w)[1], (*w)[0]}));
    return a;
}

AlgebraElement basis_element(int m, const Phase& p) { return {{m, PhaseSum(p)}}; }

AlgebraElement unit(const TwistedAlgebra& a) {
    AlgebraElement u;
    for (int x = 0; x < a.g->nobj; ++x) u.emplace(a.g->ident[x], PhaseSum(Phase()));
    return u;
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
    AlgebraElement r = x;
    for (auto& [m, c] : y) add_term(r, m, c);
    return r;
}

AlgebraElement scale(const AlgebraElement& x, const PhaseSum& c) {
    AlgebraElement r;
    for (auto& [m, v] : x) add_term(r, m, c * v);
    return r;
}

AlgebraElement multiply(const TwistedAlgebra& a, const AlgebraElement& x, const AlgebraElement& y) {
    const Groupoid& g = *a.g;
    AlgebraElement r;
    for (auto& [m2, c2] : x)
        for (auto& [m1, c1] : y) {
            if (g.tgt[m1] != g.src[m2]) continue;
            add_term(r, g.compose(m2, m1), (c2 * c1.act(a.coeff_sign(m2))).shifted(th(a.theta, m2, m1)));
        }
    return r;
}

bool equal(const AlgebraElement& x, const AlgebraElement& y) { return x == y; }

Centre centre(const TwistedAlgebra& a) {
    const Groupoid& g = *a.g;
    const bool real = a.semilinear();
    Centre out;
    out.over_reals = real;
    struct Pot {
        int par = 0;  // 0 = unvisited
        Phase p;
    };
    std::vector<Pot> pot(g.nmor());
    auto eligible = [&](int m) { return g.src[m] == g.tgt[m] && (!real || g.grade[m] > 0); };
    for (int root = 0; root < g.nmor(); ++root) {
        if (!eligible(root) || pot[root].par != 0) continue;
        // c_gamma = act(par, c_root) + p
        std::vector<int> orbit{root};
        pot[root] = {1, Phase()};
        bool dead = false;
        std::optional<Phase> line;  // 2 c_root
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int gam = queue.front();
            queue.pop_front();
            for (int w : g.out[g.src[gam]]) {
                int gp = g.compose(g.compose(w, gam), g.inverse[w]);
                int s = a.coeff_sign(w);
                int par = s * pot[gam].par;
                Phase A = pot[gam].p.act(s) + th(a.theta, w, gam) - th(a.theta, gp, w);
                Pot& q = pot[gp];
                if (q.par == 0) {
                    q = {par, A};
                    orbit.push_back(gp);
                    queue.push_back(gp);
                    continue;
                }
                if (par == q.par) {
                    dead |= A != q.p;
                    continue;
                }
                Phase phi = q.par > 0 ? A - q.p : q.p - A;
                if (line && *line != phi) dead = true;
                line = phi;
            }
        }
        if (dead) continue;
        std::vector<Phase> bases;
        if (!real)
            bases = {Phase()};
        else if (line)
            bases = {line->halve()};
        else
            bases = {Phase(), Phase(1, 4)};
        for (const Phase& c : bases) {
            AlgebraElement z;
            for (int gam : orbit) z.emplace(gam, PhaseSum(c.act(pot[gam].par) + pot[gam].p));
            out.basis.push_back(std::move(z));
        }
        out.dim += (int)bases.size();
    }
    return out;
}

FlatSections real_flat_sections_dim(const Cochain& alpha) {
    if (alpha.degree() != 1 || alpha.twist() != Twist::PI)
        throw std::invalid_argument("Real flat sections need a twisted 1-cochain");
    require_cocycle(alpha, "flat section twist");
    const Groupoid& g = *alpha.groupoid();
    FlatSections f;
    for (const Component& c : components(g)) {
        bool trivial = true;
        for (int m : c.aut)
            if (g.grade[m] > 0 && !alpha.at(&m).is_zero()) trivial = false;
        int d = !trivial ? 0 : c.kind == ComponentKind::ODD_LOOP ? 1 : 2;
        f.per_component.push_back(d);
        f.dim += d;
    }
    return f;
}

FlatSections flat_sections_dim_C(const Cochain& alpha) {
    if (alpha.degree() != 1 || alpha.twist() != Twist::NONE)
        throw std::invalid_argument("complex flat sections need an untwisted 1-cochain");
    require_cocycle(alpha, "flat section twist");
    const Groupoid& g = *alpha.groupoid();
    FlatSections f;
    for (const Component& c : components(g)) {
        bool trivial = true;
        for (int m : c.aut)
            if (!alpha.at(&m).is_zero()) trivial = false;
        f.per_component.push_back(trivial ? 1 : 0);
        f.dim += trivial ? 1 : 0;
    }
    return f;
}

std::string to_string(DoubleVariant v) {
    switch (v) {
        case DoubleVariant::D_REF: return "D_REF";
        case DoubleVariant::DD_QUOT: return "DD_QUOT";
        case DoubleVariant::DD_REF_TILDE: return "DD_REF_TILDE";
    }
    return "?";
}

DoubleVariant parse_double_variant(const std::string& s) {
    if (s == "D_REF") return DoubleVariant::D_REF;
    if (s == "DD_QUOT") return DoubleVariant::DD_QUOT;
    if (s == "DD_REF_TILDE") return DoubleVariant::DD_REF_TILDE;
    throw std::invalid_argument("unknown double variant '" + s + "'");
}

Double build_double(const GroupoidPtr& bg, const Cochain& eta, DoubleVariant v) {
    if (eta.groupoid() != bg || eta.degree() != 3) throw std::invalid_argument("double needs a 3-cochain on the groupoid");
    Twist want = v == DoubleVariant::DD_REF_TILDE ? Twist::NONE : Twist::PI;
    if (eta.twist() != want)
        throw std::invalid_argument(to_string(v) + " needs a " + to_string(want) + "-twisted 3-cocycle");
    require_cocycle(eta, "double twist");
    switch (v) {
        case DoubleVariant::D_REF: {
            auto r = unoriented_quotient_loop_groupoid(bg);
            return {v, r, build_algebra(r, tau_ref(eta, r))};
        }
        case DoubleVariant::DD_QUOT: {
            auto q = quotient_loop_groupoid(bg);
            return {v, q, build_algebra(q, tau_pi(eta, q))};
        }
        case DoubleVariant::DD_REF_TILDE: {
            auto r = unoriented_quotient_loop_groupoid(bg);
            return {v, r, build_algebra(r, tau_ref_tilde(eta, r))};
        }
    }
    throw std::logic_error("unreachable");
}

TwistedAlgebra even_subalgebra(const TwistedAlgebra& a) {
    auto e = even_subgroupoid(a.g);
    return TwistedAlgebra{e, pullback(inclusion(e, a.g), a.theta)};
}

TensorElement tensor_multiply(const TwistedAlgebra& a, const TensorElement& x, const TensorElement& y) {
    const Groupoid& g = *a.g;
    TensorElement r;
    std::vector<int> k;
    for (auto& [u, c] : x) {
        int s = a.coeff_sign(u[0]);
        for (int m : u)
            if (a.coeff_sign(m) != s) throw std::logic_error("tensor term is not degree homogeneous");
        for (auto& [v, d] : y) {
            if (v.size() != u.size()) throw std::invalid_argument("tensor lengths differ");
            k.assign(u.size(), -1);
            Phase p;
            bool ok = true;
            for (std::size_t i = 0; i < u.size() && ok; ++i) {
                if (g.tgt[v[i]] != g.src[u[i]]) {
                    ok = false;
                    break;
                }
                k[i] = g.compose(u[i], v[i]);
                p += th(a.theta, u[i], v[i]);
            }
            if (ok) add_term(r, k, (c * d.act(s)).shifted(p));
        }
    }
    return r;
}

QuasiBialgebraData quasi_bialgebra(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& eta) {
    if (bg->nobj != 1 || bg->nmor() != grp.n) throw std::invalid_argument("quasi-bialgebra needs B of the group");
    QuasiBialgebraData q;
    require_cocycle(eta, "quasi-bialgebra twist");
    // Delta is multiplicative for the product twisted by tau_pi(eta)^-1, the
    // twist of the Drinfeld centre; c and Phi are built from eta itself.
    q.dd = build_double(bg, -eta, DoubleVariant::DD_QUOT);
    const int n = grp.n;
    q.n = n;
    const Groupoid& Q = *q.dd.loop;
    const TwistedAlgebra& A = q.dd.alg;
    std::vector<int> G = grp.kernel();
    auto E = [&](int a, int b, int c) {  // eta([a|b|c])
        int t[3] = {c, b, a};
        return eta.at(t);
    };
    auto cj = [&](int w, int g) { return grp.mul(grp.mul(w, g), grp.inv(w)); };
    // basis l_{g -> w}: the morphism w out of the loop g
    std::vector<int> lm((std::size_t)n * n, -1);
    for (int g : G)
        for (int w = 0; w < n; ++w) lm[(std::size_t)g * n + w] = find_lift(Q, Q.loop_obj[g], w);
    auto L = [&](int g, int w) { return lm[(std::size_t)g * n + w]; };

    q.c.assign((std::size_t)n * n * n, Phase());
    for (int w = 0; w < n; ++w)
        for (int g2 : G)
            for (int g1 : G)
                q.c[((std::size_t)w * n + g2) * n + g1] =
                    E(cj(w, g2), w, g1) - E(w, g2, g1) - E(cj(w, g2), cj(w, g1), w);

    q.delta.resize(Q.nmor());
    for (int m = 0; m < Q.nmor(); ++m) {
        int g = Q.obj_loop[Q.src[m]], w = Q.mor_up[m];
        for (int g1 : G) {
            int g2 = grp.mul(g, grp.inv(g1));
            add_term(q.delta[m], {L(g2, w), L(g1, w)}, PhaseSum(q.c_at(w, g2, g1)));
        }
    }
    for (int g3 : G)
        for (int g2 : G)
            for (int g1 : G) add_term(q.phi, {L(g3, 0), L(g2, 0), L(g1, 0)}, PhaseSum(E(g3, g2, g1)));

    auto nm = [&](int g) { return grp.names[g]; };

    // (a) conjugation by w changes eta by the coboundary of c_w
    for (int w = 0; w < n && q.conj_identity.empty(); ++w)
        for (int g3 : G)
            for (int g2 : G)
                for (int g1 : G) {
                    Phase lhs = E(cj(w, g3), cj(w, g2), cj(w, g1)) - E(g3, g2, g1).act(grp.sign[w]);
                    Phase rhs = q.c_at(w, g2, g1) - q.c_at(w, grp.mul(g3, g2), g1) + q.c_at(w, g3, grp.mul(g2, g1)) -
                                q.c_at(w, g3, g2);
                    if (lhs != rhs && q.conj_identity.empty())
                        q.conj_identity = "w=" + nm(w) + " [" + nm(g3) + "|" + nm(g2) + "|" + nm(g1) + "]: " +
                                          lhs.str() + " vs " + rhs.str();
                }

    // (b) the product twist against c under composition
    auto T = [&](int w2, int w1, int g) {
        int t[2] = {L(g, w1), L(cj(w1, g), w2)};
        return A.theta.at(t);
    };
    for (int w2 = 0; w2 < n && q.compat_identity.empty(); ++w2)
        for (int w1 = 0; w1 < n; ++w1)
            for (int g2 : G)
                for (int g1 : G) {
                    Phase lhs = T(w2, w1, g2) + T(w2, w1, g1) - T(w2, w1, grp.mul(g2, g1));
                    Phase rhs = q.c_at(grp.mul(w2, w1), g2, g1) - q.c_at(w1, g2, g1).act(grp.sign[w2]) -
                                q.c_at(w2, cj(w1, g2), cj(w1, g1));
                    if (lhs != rhs && q.compat_identity.empty())
                        q.compat_identity = "[" + nm(w2) + "|" + nm(w1) + "] g2=" + nm(g2) + " g1=" + nm(g1) + ": " +
                                            lhs.str() + " vs " + rhs.str();
                }

    // (c) Delta is multiplicative on basis pairs
    auto delta_of = [&](const AlgebraElement& x) {
        TensorElement r;
        for (auto& [m, c] : x)
            for (auto& [k, d] : q.delta[m]) add_term(r, k, c * d);
        return r;
    };
    for (int m2 = 0; m2 < Q.nmor() && q.multiplicative.empty(); ++m2)
        for (int m1 = 0; m1 < Q.nmor(); ++m1) {
            TensorElement lhs = delta_of(multiply(A, basis_element(m2), basis_element(m1)));
            TensorElement rhs = tensor_multiply(A, q.delta[m2], q.delta[m1]);
            if (lhs != rhs) {
                q.multiplicative = "l_" + Q.mor_names[m2] + " * l_" + Q.mor_names[m1] + ": " + tensor_str(Q, lhs) +
                                   " vs " + tensor_str(Q, rhs);
                break;
            }
        }

    // (d) quasi-coassociativity
    for (int m = 0; m < Q.nmor() && q.coassociative.empty(); ++m) {
        TensorElement left, right;
        for (auto& [k, c] : q.delta[m]) {
            for (auto& [k2, d] : q.delta[k[1]]) add_term(left, {k[0], k2[0], k2[1]}, c * d);
            for (auto& [k1, d] : q.delta[k[0]]) add_term(right, {k1[0], k1[1], k[1]}, c * d);
        }
        TensorElement lhs = tensor_multiply(A, left, q.phi);
        TensorElement rhs = tensor_multiply(A, q.phi, right);
        if (lhs != rhs)
            q.coassociative = "l_" + Q.mor_names[m] + ": " + tensor_str(Q, lhs) + " vs " + tensor_str(Q, rhs);
    }
    return q;
}

AlgebraElement QInvolution::operator()(const AlgebraElement& x) const {
    const Groupoid& B = *bg;
    const Groupoid& Qg = *quot;
    AlgebraElement r;
    for (auto& [g, c] : x) {
        if (B.grade[g] < 0) throw std::invalid_argument("q acts on the even subalgebra only");
        int m = find_lift(Qg, Qg.loop_obj[g], s);
        int target = B.compose(B.compose(s, g), B.inverse[s]);
        add_term(r, target, c.act(-1).shifted(-tp.at(&m)));
    }
    return r;
}

QInvolution q_involution(const GroupoidPtr& bg, const Cochain& theta, int s) {
    if (bg->nobj != 1) throw std::invalid_argument("q is defined on a classifying groupoid");
    if (s < 0 || s >= bg->nmor() || bg->grade[s] > 0) throw std::invalid_argument("q needs an odd element");
    if (theta.groupoid() != bg || theta.degree() != 2 || theta.twist() != Twist::PI)
        throw std::invalid_argument("q needs a twisted 2-cocycle on the groupoid");
    require_cocycle(theta, "q twist");
    QInvolution q;
    q.bg = bg;
    q.theta = theta;
    q.s = s;
    q.quot = quotient_loop_groupoid(bg);
    q.tp = tau_pi(theta, q.quot);
    return q;
}

nlohmann::json to_json(const Groupoid& g, const AlgebraElement& x) {
    nlohmann::json out = nlohmann::json::array();
    for (auto& [m, c] : x) {
        nlohmann::json terms = nlohmann::json::array();
        for (auto& [q, p] : c.terms()) terms.push_back({{"coeff", rational_str(q)}, {"phase", p.str()}});
        out.push_back({{"morphism", g.mor_names[m]}, {"terms", terms}});
    }
    return out;
}

}  // namespace tg
