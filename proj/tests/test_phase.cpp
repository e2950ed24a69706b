#include <doctest.h>

#include <random>

#include "tg/phase.hpp"

using namespace tg;

TEST_CASE("phase arithmetic examples") {
    CHECK(add(Phase(1, 3), Phase(1, 2)).str() == "5/6");
    CHECK(act(-1, Phase(1, 4)).str() == "3/4");
    CHECK(scale(Phase(1, 6), 6).str() == "0/1");
    CHECK(Phase().str() == "0/1");
    CHECK(Phase(7, 4).str() == "3/4");
    CHECK(Phase(-1, 3).str() == "2/3");
    CHECK(Phase(2, -6).str() == "2/3");
    CHECK(Phase(4, 8) == Phase::half());
    CHECK(Phase(3, 4).halve() == Phase(3, 8));
}

TEST_CASE("phase parse round trip") {
    for (auto s : {"0/1", "1/2", "5/12", "11/30"}) CHECK(Phase::parse(s).str() == s);
    CHECK(Phase::parse("3/2").str() == "1/2");
    CHECK_THROWS(Phase::parse("x"));
    CHECK_THROWS(Phase::parse("1/0"));
}

TEST_CASE("large denominators take the GMP path and agree") {
    const std::int64_t big = (std::int64_t)1 << 40;
    Phase a(1, big), b(1, big + 1);
    Phase s = a + b;
    mpq_class exact = mpq_class(1, 1) / mpz_class(std::to_string(big)) + mpq_class(1, 1) / mpz_class(std::to_string(big + 1));
    exact.canonicalize();
    CHECK(s.as_mpq() == exact);
    CHECK((s - b) == a);
    CHECK((a.scale(big)).is_zero());
    Phase c = Phase::from_mpq(mpq_class(mpz_class("123456789012345678901234567"), mpz_class("98765432109876543210987654321")));
    CHECK_FALSE(c.is_small());
    CHECK((c + (-c)).is_zero());
    CHECK((c - c).str() == "0/1");
}

TEST_CASE("phase group laws on random samples") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> den(1, 60), num(-200, 200);
    auto draw = [&] { return Phase(num(rng), den(rng)); };
    for (int i = 0; i < 500; ++i) {
        Phase a = draw(), b = draw(), c = draw();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + Phase() == a);
        CHECK((a + (-a)).is_zero());
        CHECK(a.act(-1).act(-1) == a);
        CHECK((a + b).act(-1) == a.act(-1) + b.act(-1));
        CHECK(a.halve().scale(2) == a);
        auto q = a.as_mpq();
        CHECK(q >= 0);
        CHECK(q < 1);
        CHECK(q.get_den() == a.den());
        CHECK(Phase::parse(a.str()) == a);
    }
}

TEST_CASE("phase sums reduce in cyclotomic fields") {
    PhaseSum z3 = PhaseSum(Phase()) + PhaseSum(Phase(1, 3)) + PhaseSum(Phase(2, 3));
    REQUIRE(z3.rational_value());
    CHECK(*z3.rational_value() == 0);
    PhaseSum z6 = PhaseSum(Phase(1, 6)) + PhaseSum(Phase(5, 6));
    REQUIRE(z6.rational_value());
    CHECK(*z6.rational_value() == 1);
    CHECK_FALSE(PhaseSum(Phase(1, 4)).rational_value());
    PhaseSum minus1 = PhaseSum(Phase(1, 2), mpq_class(3, 2));
    CHECK(*minus1.rational_value() == mpq_class(-3, 2));
    // sum of all primitive 5th roots is -1
    PhaseSum z5;
    for (int j = 1; j < 5; ++j) z5 += PhaseSum(Phase(j, 5));
    CHECK(*z5.rational_value() == -1);
    // i + (-i) cancels termwise only after reduction
    PhaseSum ii = PhaseSum(Phase(1, 4)) + PhaseSum(Phase(3, 4));
    CHECK(*ii.rational_value() == 0);
}

TEST_CASE("phase sum algebra") {
    PhaseSum a = PhaseSum(Phase(1, 3), 2) + PhaseSum(Phase(1, 2));
    PhaseSum b = PhaseSum(Phase(1, 6), mpq_class(1, 2));
    CHECK((a - a).is_zero());
    CHECK(a * b == b * a);
    CHECK((a * b).terms().size() == 2);
    CHECK(a.shifted(Phase(2, 3)) == PhaseSum(Phase(), 2) + PhaseSum(Phase(1, 6)));
    CHECK(a.act(-1) == PhaseSum(Phase(2, 3), 2) + PhaseSum(Phase(1, 2)));
    CHECK(a.act(-1).act(-1) == a);
    // |1 + zeta_3|^2 = 1
    PhaseSum w = PhaseSum(Phase()) + PhaseSum(Phase(1, 3));
    CHECK(*(w * w.act(-1)).rational_value() == 1);
}

TEST_CASE("rational helpers") {
    CHECK(rational_str(mpq_class(6, 4)) == "3/2");
    CHECK(parse_rational("-3/9") == mpq_class(-1, 3));
}
