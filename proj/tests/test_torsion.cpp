#include <doctest.h>

#include <set>

#include "tg/snf.hpp"
#include "tg/torsion.hpp"

using namespace tg;

namespace {

int real_conj(const GradedGroup& G, int w, int g) {
    return G.mul(G.mul(w, G.sign[w] > 0 ? g : G.inv(g)), G.inv(w));
}

long pairs(const GradedGroup& G) {
    long n = 0;
    for (int g : G.kernel())
        for (int w = 0; w < G.n; ++w) n += real_conj(G, w, g) == g;
    return n;
}

long triples(const GradedGroup& G) {
    long n = 0;
    for (int g : G.kernel())
        for (int a = 0; a < G.n; ++a)
            for (int b = 0; b < G.n; ++b)
                n += real_conj(G, a, g) == g && real_conj(G, b, g) == g && G.mul(a, b) == G.mul(b, a);
    return n;
}

Phase bar(const Cochain& c, int a, int b) {
    int t[2] = {b, a};
    return c.at(t);
}

}  // namespace

TEST_CASE("zero cocycles give zero phases") {
    auto G = build_graded_group("dihedral:4");
    auto bg = classifying(G);
    auto t2 = torsion_2d(G, bg, Cochain(bg, 2, Twist::PI));
    auto t3 = torsion_3d(G, bg, Cochain(bg, 3, Twist::PI));
    for (auto& r : t2.rows) CHECK(r.phase.is_zero());
    for (auto& r : t3.rows) CHECK(r.phase.is_zero());
}

TEST_CASE("row counts and surfaces") {
    for (auto s : {"cyclic:4:mod2", "product_Z2:S3", "dihedral:4", "product_Z2:Z2xZ2"}) {
        CAPTURE(s);
        auto G = build_graded_group(s);
        auto bg = classifying(G);
        auto t2 = torsion_2d(G, bg, Cochain(bg, 2, Twist::PI));
        auto t3 = torsion_3d(G, bg, Cochain(bg, 3, Twist::PI));
        CHECK((long)t2.rows.size() == pairs(G));
        CHECK((long)t3.rows.size() == triples(G));
        for (auto& r : t2.rows) CHECK(r.surface == (G.sign[r.gens[1]] > 0 ? Surface::T2 : Surface::KLEIN));
        for (auto& r : t3.rows) {
            bool even = G.sign[r.gens[1]] > 0 && G.sign[r.gens[2]] > 0;
            CHECK(r.surface == (even ? Surface::T3 : Surface::KLEINxS1));
        }
        CHECK(std::is_sorted(t2.rows.begin(), t2.rows.end(),
                             [](const TorsionRow& a, const TorsionRow& b) { return a.gens < b.gens; }));
    }
}

TEST_CASE("quaternionic on Z4 mod 2") {
    auto G = build_graded_group("cyclic:4:mod2");
    auto bg = classifying(G);
    auto q = builtin_cocycle(G, bg, "quaternionic", 2, Twist::PI);
    CHECK(torsion_closed_form_2d(G, q, 2, 1).is_zero());
    auto t = torsion_2d(G, bg, q);
    bool found = false;
    for (auto& r : t.rows)
        if (r.gens == std::vector<int>{2, 1}) {
            found = true;
            CHECK(r.phase.is_zero());
        }
    CHECK(found);
}

TEST_CASE("discrete torsion antisymmetrization") {
    auto G = build_graded_group("product_Z2:Z2xZ2");
    auto bg = classifying(G);
    auto th = builtin_cocycle(G, bg, "bichar:id.0.0:id.1.0", 2, Twist::PI);
    auto t = torsion_2d(G, bg, th);
    // u = 2 x + y with x = 2 a1 + a2
    auto a1 = [](int u) { return (u / 2) / 2; };
    auto a2 = [](int u) { return (u / 2) % 2; };
    int checked = 0;
    for (auto& r : t.rows) {
        if (r.surface != Surface::T2) continue;
        int g = r.gens[0], h = r.gens[1];
        Phase eps = bar(th, g, h) - bar(th, h, g);
        CHECK(r.phase == eps);
        CHECK(r.phase == Phase((a1(g) * a2(h) + a1(h) * a2(g)) % 2, 2));
        ++checked;
    }
    CHECK(checked == 16);
}

TEST_CASE("closed forms against the iterated transgression") {
    for (auto s : {"product_Z2:S3", "dihedral:4", "cyclic:8:mod2"}) {
        CAPTURE(s);
        auto G = build_graded_group(s);
        auto bg = classifying(G);
        for (auto& th : cocycle_basis(bg, 2, Twist::PI, 4).cocycles)
            for (auto& r : torsion_2d(G, bg, th).rows) CHECK(r.phase == r.closed_form);
        if (G.n > 8) continue;  // the degree 3 solve is slow beyond order 8
        for (auto& eta : cocycle_basis(bg, 3, Twist::PI, 4).cocycles)
            for (auto& r : torsion_3d(G, bg, eta).rows) {
                CHECK(r.phase == r.closed_form);
                CHECK(r.phase == torsion_closed_form_3d(G, eta, r.gens[0], r.gens[1], r.gens[2]));
            }
    }
}

TEST_CASE("rows are gauge invariant") {
    auto G = build_graded_group("dihedral:3");
    auto bg = classifying(G);
    auto b2 = cocycle_basis(bg, 2, Twist::PI, 6);
    auto b3 = cocycle_basis(bg, 3, Twist::PI, 6);
    REQUIRE_FALSE(b3.cocycles.empty());
    for (std::uint64_t s = 0; s < 3; ++s) {
        auto th = random_cocycle(bg, b2, s);
        auto dth = th + differential(random_cochain(bg, 1, Twist::PI, 6, 100 + s));
        auto x = torsion_2d(G, bg, th), y = torsion_2d(G, bg, dth);
        REQUIRE(x.rows.size() == y.rows.size());
        for (std::size_t i = 0; i < x.rows.size(); ++i) CHECK(x.rows[i].phase == y.rows[i].phase);
        CHECK(x.orbit_sums == y.orbit_sums);

        auto eta = random_cocycle(bg, b3, s);
        auto deta = eta + differential(random_cochain(bg, 2, Twist::PI, 6, 200 + s));
        auto u = torsion_3d(G, bg, eta), v = torsion_3d(G, bg, deta);
        REQUIRE(u.rows.size() == v.rows.size());
        for (std::size_t i = 0; i < u.rows.size(); ++i) CHECK(u.rows[i].phase == v.rows[i].phase);
    }
}

TEST_CASE("tsv output") {
    auto G = build_graded_group("cyclic:4:mod2");
    auto bg = classifying(G);
    auto t = torsion_2d(G, bg, Cochain(bg, 2, Twist::PI));
    auto tsv = to_tsv(G, t);
    CHECK(tsv.rfind("generators\tparities\tsurface\tphase\n", 0) == 0);
    CHECK((long)std::count(tsv.begin(), tsv.end(), '\n') == (long)t.rows.size() + 1);
    CHECK(to_string(Surface::KLEINxS1) == "KLEINxS1");
}
