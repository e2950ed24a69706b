// Exact phases in Q/Z and formal rational combinations of them.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tg {

// An element p/q of Q/Z, standing for exp(2 pi i p/q).
// Small denominators live in two machine words; anything larger is kept as a
// GMP rational. Both paths produce the same canonical value.
class Phase {
public:
    Phase() = default;
    Phase(std::int64_t num, std::int64_t den);
    static Phase from_mpq(const mpq_class& q);
    static Phase half() { return Phase(1, 2); }

    mpz_class num() const;
    mpz_class den() const;
    mpq_class as_mpq() const;
    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_small() const { return !big_; }
    std::int64_t small_num() const { return n_; }
    std::int64_t small_den() const { return d_; }

    Phase operator+(const Phase& o) const;
    Phase operator-(const Phase& o) const { return *this + (-o); }
    Phase operator-() const;
    Phase& operator+=(const Phase& o) { return *this = *this + o; }
    Phase& operator-=(const Phase& o) { return *this = *this - o; }

    Phase scale(std::int64_t k) const;
    // Inversion action of eps in {+1,-1}.
    Phase act(int eps) const { return eps < 0 ? -*this : *this; }
    // The representative num/(2 den) of a square root.
    Phase halve() const;

    bool operator==(const Phase& o) const;
    bool operator!=(const Phase& o) const { return !(*this == o); }
    // Orders by (den, num).
    bool operator<(const Phase& o) const;

    std::string str() const;
    static Phase parse(const std::string& s);

private:
    void set_from_mpq(mpq_class q);

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

// Free-function forms of the phase operations.
inline Phase add(const Phase& a, const Phase& b) { return a + b; }
inline Phase neg(const Phase& a) { return -a; }
inline Phase scale(const Phase& a, std::int64_t k) { return a.scale(k); }
inline Phase act(int eps, const Phase& a) { return a.act(eps); }

// Finite Q-linear combination of phases, kept canonical: distinct phases,
// nonzero coefficients, sorted by (den, num).
class PhaseSum {
public:
    using Term = std::pair<mpq_class, Phase>;

    PhaseSum() = default;
    explicit PhaseSum(const Phase& p, const mpq_class& c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    PhaseSum operator+(const PhaseSum& o) const;
    PhaseSum operator-(const PhaseSum& o) const { return *this + o.scaled(-1); }
    PhaseSum operator*(const PhaseSum& o) const;
    PhaseSum& operator+=(const PhaseSum& o) { return *this = *this + o; }

    PhaseSum scaled(const mpq_class& c) const;
    PhaseSum shifted(const Phase& p) const;  // multiply by exp(2 pi i p)
    PhaseSum act(int eps) const;            // complex conjugation when eps = -1

    bool operator==(const PhaseSum& o) const;
    bool operator!=(const PhaseSum& o) const { return !(*this == o); }

    // Exact value in Q(zeta_N), reduced modulo the N-th cyclotomic polynomial.
    // Returns the rational value when the combination is a rational number.
    std::optional<mpq_class> rational_value() const;

    std::string str() const;

private:
    void canonicalize();
    std::vector<Term> terms_;
};

std::string rational_str(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

}  // namespace tg
