#include <doctest.h>

#include <algorithm>
#include <random>

#include "tg/cochain.hpp"
#include "tg/snf.hpp"
#include "tg/transgress.hpp"

using namespace tg;

namespace {

struct Setup {
    GradedGroup grp;
    GroupoidPtr bg, L, Q, R;
    explicit Setup(const char* s)
        : grp(build_graded_group(s)),
          bg(classifying(grp)),
          L(loop_groupoid(bg)),
          Q(quotient_loop_groupoid(bg)),
          R(unoriented_quotient_loop_groupoid(bg)) {}
    int mul(int a, int b) const { return grp.mul(a, b); }
    int mul(int a, int b, int c) const { return mul(mul(a, b), c); }
    int inv(int a) const { return grp.inv(a); }
    int pw(int g, int s) const { return s > 0 ? g : inv(g); }  // g^s for s = +-1
    int odd(int w) const { return grp.sign[w] < 0; }
};

// Values in bar order: v[a|b] and v[a|b|c].
Phase bar(const Cochain& c, int a) { return c.at(&a); }
Phase bar(const Cochain& c, int a, int b) {
    int t[2] = {b, a};
    return c.at(t);
}
Phase bar(const Cochain& c, int a, int b, int d) {
    int t[3] = {d, b, a};
    return c.at(t);
}

// The morphism of a loop groupoid out of loop g whose image in the parent is w.
int out_of(const Groupoid& l, int g, int w) {
    for (int m : l.out[l.loop_obj[g]])
        if (l.mor_up[m] == w) return m;
    return -1;
}

}  // namespace

TEST_CASE("shuffle insertions") {
    for (int slots = 1; slots <= 6; ++slots)
        for (int k = 0; k <= slots; ++k) {
            auto sh = shuffles(slots, k);
            // binomial(slots, k) insertions
            long expect = 1;
            for (int i = 0; i < k; ++i) expect = expect * (slots - i) / (i + 1);
            CHECK((long)sh.size() == expect);
            for (auto& s : sh) {
                REQUIRE((int)s.pos.size() == k);
                CHECK(std::is_sorted(s.pos.begin(), s.pos.end()));
                // inversions: inserted slot p_j preceded by (p_j - j) other slots
                int inv = 0;
                for (int j = 0; j < k; ++j) inv += slots - k - (s.pos[j] - j);
                CHECK(s.sign == (inv % 2 ? -1 : 1));
            }
        }
}

TEST_CASE("degree zero and one closed forms") {
    for (auto s : {"cyclic:4:mod2", "product_Z2:S3", "dihedral:4", "product_Z2:Z3"}) {
        CAPTURE(s);
        Setup t(s);
        auto a0 = random_cochain(t.bg, 1, Twist::PI, 12, 7);
        auto a0u = random_cochain(t.bg, 1, Twist::NONE, 12, 7);
        auto trp = tau_ref(a0, t.R), trt = tau_ref_tilde(a0u, t.R), tp = tau_pi(a0, t.Q), tl = tau(a0u, t.L);
        for (int g = 0; g < t.grp.n; ++g) {
            int x = t.L->loop_obj[g];
            CHECK(tl.at(&x) == bar(a0u, g));
            if (t.odd(g)) continue;
            int y = t.R->loop_obj[g], z = t.Q->loop_obj[g];
            CHECK(trp.at(&y) == bar(a0, g));
            CHECK(trt.at(&y) == bar(a0u, g));
            CHECK(tp.at(&z) == bar(a0, g));
        }

        auto th = random_cochain(t.bg, 2, Twist::PI, 12, 8);
        auto thu = random_cochain(t.bg, 2, Twist::NONE, 12, 9);
        auto r1 = tau_ref(th, t.R), r1t = tau_ref_tilde(thu, t.R), q1 = tau_pi(th, t.Q), l1 = tau(thu, t.L);
        for (int g = 0; g < t.grp.n; ++g)
            for (int w = 0; w < t.grp.n; ++w) {
                int m = out_of(*t.L, g, w);
                CHECK(l1.at(&m) == bar(thu, t.mul(w, g, t.inv(w)), w) - bar(thu, w, g));
                if (t.odd(g)) continue;
                int mq = out_of(*t.Q, g, w);
                CHECK(q1.at(&mq) == bar(th, t.mul(w, g, t.inv(w)), w) - bar(th, w, g));
                int gp = t.pw(g, t.grp.sign[w]);
                int mr = out_of(*t.R, g, w);
                Phase common = bar(th, t.mul(w, gp, t.inv(w)), w) - bar(th, w, gp);
                Phase d = t.odd(w) ? bar(th, t.inv(g), g) : Phase();
                CHECK(r1.at(&mr) == common - d);
                Phase commonu = bar(thu, t.mul(w, gp, t.inv(w)), w) - bar(thu, w, gp);
                Phase du = t.odd(w) ? bar(thu, t.inv(g), g) : Phase();
                CHECK(r1t.at(&mr) == commonu + du);
            }
    }
}

TEST_CASE("degree two closed forms") {
    for (auto s : {"cyclic:4:mod2", "product_Z2:S3", "dihedral:3"}) {
        CAPTURE(s);
        Setup t(s);
        for (std::uint64_t seed : {1, 2}) {
            auto eta = random_cochain(t.bg, 3, Twist::PI, 12, seed);
            auto etau = random_cochain(t.bg, 3, Twist::NONE, 12, seed);
            auto ref = tau_ref(eta, t.R);
            auto plain = tau(etau, t.L);
            for (int g = 0; g < t.grp.n; ++g)
                for (int w1 = 0; w1 < t.grp.n; ++w1)
                    for (int w2 = 0; w2 < t.grp.n; ++w2) {
                        // plain: [w2|w1]g with g2 = w1 g w1^-1, g3 = w2 g2 w2^-1
                        int g2 = t.mul(w1, g, t.inv(w1)), g3 = t.mul(w2, g2, t.inv(w2));
                        int m[2] = {out_of(*t.L, g, w1), out_of(*t.L, g2, w2)};
                        CHECK(plain.at(m) ==
                              bar(etau, g3, w2, w1) - bar(etau, w2, g2, w1) + bar(etau, w2, w1, g));
                        if (t.odd(g)) continue;

                        int p1 = t.grp.sign[w1], P = p1 * t.grp.sign[w2];
                        int n1 = t.pw(g, -p1), q1 = t.pw(g, p1), gP = t.pw(g, P);
                        int h = t.mul(w1, n1, t.inv(w1));           // w1 g^{-pi(w1)} w1^-1
                        int k = t.mul(w1, q1, t.inv(w1));           // w1 g^{pi(w1)} w1^-1
                        int kp = t.mul(w1, gP, t.inv(w1));          // w1 g^P w1^-1
                        int top = t.mul(t.mul(w2, w1), gP, t.inv(t.mul(w2, w1)));
                        Phase v = bar(eta, w2, w1, gP) + bar(eta, top, w2, w1) - bar(eta, w2, kp, w1);
                        if (t.odd(w2))
                            v -= bar(eta, h, k, w1) + bar(eta, w1, n1, q1) - bar(eta, h, w1, q1);
                        if (t.odd(w1) && t.odd(w2)) v += bar(eta, g, t.inv(g), g);
                        int r[2] = {out_of(*t.R, g, w1), out_of(*t.R, t.mul(w1, q1, t.inv(w1)), w2)};
                        CHECK(ref.at(r) == v);
                    }
        }
    }
}

TEST_CASE("transgressions anticommute with d") {
    Setup t("product_Z2:Z3");
    CHECK_THROWS_AS(tau_ref(Cochain(t.bg, 0, Twist::PI), t.R), std::invalid_argument);
    for (int deg = 1; deg <= 3; ++deg) {
        CAPTURE(deg);
        auto c = random_cochain(t.bg, deg, Twist::PI, 12, 30 + deg);
        auto u = random_cochain(t.bg, deg, Twist::NONE, 12, 40 + deg);
        CHECK((differential(tau_ref(c, t.R)) + tau_ref(differential(c), t.R)).is_zero());
        CHECK((differential(tau_pi(c, t.Q)) + tau_pi(differential(c), t.Q)).is_zero());
        CHECK((differential(tau(u, t.L)) + tau(differential(u), t.L)).is_zero());
        CHECK((differential(tau_ref_tilde(u, t.R)) + tau_ref_tilde(differential(u), t.R)).is_zero());
    }
}

TEST_CASE("closed forms agree with the chain-level composite") {
    Setup t("cyclic:4:mod2");
    for (int deg = 1; deg <= 3; ++deg) {
        CAPTURE(deg);
        auto c = random_cochain(t.bg, deg, Twist::PI, 12, 60 + deg);
        auto u = random_cochain(t.bg, deg, Twist::NONE, 12, 70 + deg);
        CHECK(ez_transgress_oracle(c, Variant::REF, t.R) == tau_ref(c, t.R));
        CHECK(ez_transgress_oracle(c, Variant::QUOT, t.Q) == tau_pi(c, t.Q));
        CHECK(ez_transgress_oracle(u, Variant::PLAIN, t.L) == tau(u, t.L));
        CHECK(ez_transgress_oracle(u, Variant::REF_TILDE, t.R) == tau_ref_tilde(u, t.R));
    }
}

TEST_CASE("restriction to the even part is the plain transgression") {
    Setup t("dihedral:4");
    auto E = even_subgroupoid(t.bg);
    auto LE = loop_groupoid(E);
    for (int deg = 1; deg <= 3; ++deg) {
        auto c = random_cochain(t.bg, deg, Twist::PI, 12, 80 + deg);
        CHECK(pullback(inclusion(LE, t.R), tau_ref(c, t.R)) ==
              tau(pullback(inclusion(E, t.bg), c, Twist::NONE), LE));
    }
}

TEST_CASE("cocycles transgress to cocycles and survive JSON") {
    Setup t("product_Z2:Z2xZ2");
    auto basis = cocycle_basis(t.bg, 3, Twist::PI, 2);
    REQUIRE_FALSE(basis.cocycles.empty());
    for (auto& eta : basis.cocycles) {
        auto b = tau_ref(eta, t.R);
        CHECK(b.twist() == Twist::NONE);
        CHECK(is_cocycle(b));
        CHECK(cochain_from_json(t.R, to_json(b)) == b);
        auto LR = loop_groupoid(t.R);
        CHECK(is_cocycle(tau(b, LR)));
    }
    // coboundaries go to coboundaries of the transgressed witness, up to sign
    for (std::size_t i = 0; i < basis.coboundaries.size() && i < 4; ++i)
        CHECK(tau_ref(basis.coboundaries[i], t.R) == -differential(tau_ref(basis.witnesses[i], t.R)));
}

TEST_CASE("twisted cochains and anti-invariant cochains on the cover") {
    Setup t("product_Z2:S3");
    auto dc = double_cover(t.bg);
    for (int deg = 0; deg <= 2; ++deg) {
        auto c = random_cochain(t.bg, deg, Twist::PI, 10, 90 + deg);
        auto on = phi_minus(c, dc);
        CHECK(psi_minus(on, dc) == c);
        CHECK(pullback(dc.deck, on) == -on);
        CHECK(phi_minus(differential(c), dc) == differential(on));
        auto u = random_cochain(t.bg, deg, Twist::NONE, 10, 95 + deg);
        auto up = phi_plain(u, dc);
        CHECK(psi_plain(up, dc) == u);
        CHECK(pullback(dc.deck, up) == up);
    }
}

TEST_CASE("chain-level boundary and deck action") {
    Setup t("cyclic:4:mod2");
    auto dc = double_cover(t.bg, true);
    const Groupoid& C = *dc.cover;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        // a random chain of length 3 in the loop groupoid of the cover, based at an even loop
        LoopChain c;
        c.x = (int)(rng() % 2);
        c.eps = 1;
        std::vector<int> loops;
        for (int m : C.aut(c.x))
            if (C.grade[m] > 0) loops.push_back(m);
        c.loop = loops[rng() % loops.size()];
        int at = c.x;
        for (int i = 0; i < 3; ++i) {
            const auto& o = C.out[at];
            int m = o[rng() % o.size()];
            c.om.push_back(m);
            at = C.tgt[m];
        }
        CHECK(zeta(C, zeta(C, c)) == c);
        FChain f = f_map(C, c);
        FChain dd = boundary(C, boundary(C, f));
        CHECK(dd.degenerate_only(C));
        FChain zf = zeta(C, f);
        FChain lhs = boundary(C, zf), rhs = zeta(C, boundary(C, f));
        FChain diff = lhs;
        for (auto& [term, coeff] : rhs.terms) diff.add(term, -coeff);
        CHECK(diff.degenerate_only(C));
    }
    CHECK(alternating(3, 1) == std::vector<int>{1, -1, 1});
    CHECK(alternating(2, -1) == std::vector<int>{1, -1});
}
