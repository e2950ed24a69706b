#include "tg/phase.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tg {

namespace {

using i128 = __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v) {
    bool negative = v < 0;
    unsigned __int128 u = negative ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    mpz_class hi((unsigned long)(std::uint64_t)(u >> 64));
    mpz_class lo((unsigned long)(std::uint64_t)u);
    mpz_class r = (hi << 64) + lo;
    return negative ? mpz_class(-r) : r;
}

mpz_class to_mpz(std::int64_t v) { return to_mpz((i128)v); }

// Reduces q into [0,1).
mpq_class frac(const mpq_class& q) {
    mpz_class n = q.get_num();
    mpz_class d = q.get_den();
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    mpq_class out(r, d);
    out.canonicalize();
    return out;
}

}  // namespace

Phase::Phase(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("phase with zero denominator");
    i128 n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    n %= d;
    if (n < 0) n += d;
    i128 g = gcd128(n, d);
    if (g == 0) g = 1;
    n /= g;
    d /= g;
    n_ = (std::int64_t)n;
    d_ = (std::int64_t)d;
    if (n_ == 0) d_ = 1;
}

Phase Phase::from_mpq(const mpq_class& q) {
    Phase p;
    p.set_from_mpq(q);
    return p;
}

void Phase::set_from_mpq(mpq_class q) {
    q.canonicalize();
    q = frac(q);
    if (q.get_den().fits_slong_p()) {
        n_ = q.get_num().get_si();
        d_ = q.get_den().get_si();
        if (n_ == 0) d_ = 1;
        big_.reset();
    } else {
        n_ = 0;
        d_ = 1;
        big_ = std::make_shared<const mpq_class>(q);
    }
}

mpz_class Phase::num() const { return big_ ? mpz_class(big_->get_num()) : to_mpz(n_); }
mpz_class Phase::den() const { return big_ ? mpz_class(big_->get_den()) : to_mpz(d_); }

mpq_class Phase::as_mpq() const {
    if (big_) return *big_;
    mpq_class q(to_mpz(n_), to_mpz(d_));
    q.canonicalize();
    return q;
}

Phase Phase::operator+(const Phase& o) const {
    if (!big_ && !o.big_) {
        i128 g = gcd128(d_, o.d_);
        i128 d = (i128)(d_ / g) * o.d_;
        i128 n = (i128)n_ * (o.d_ / g) + (i128)o.n_ * (d_ / g);
        n %= d;
        i128 h = gcd128(n, d);
        if (h == 0) h = 1;
        n /= h;
        d /= h;
        if (d <= kMax) {
            Phase p;
            p.n_ = (std::int64_t)n;
            p.d_ = n == 0 ? 1 : (std::int64_t)d;
            return p;
        }
    }
    return from_mpq(as_mpq() + o.as_mpq());
}

Phase Phase::operator-() const {
    if (big_) return from_mpq(-*big_);
    Phase p;
    if (n_ != 0) {
        p.n_ = d_ - n_;
        p.d_ = d_;
    }
    return p;
}

Phase Phase::scale(std::int64_t k) const {
    if (big_) return from_mpq(*big_ * to_mpz(k));
    i128 n = ((i128)n_ * k) % d_;
    if (n < 0) n += d_;
    return Phase((std::int64_t)n, d_);
}

Phase Phase::halve() const {
    if (!big_ && d_ <= kMax / 2) return Phase(n_, 2 * d_);
    return from_mpq(as_mpq() / 2);
}

bool Phase::operator==(const Phase& o) const {
    if (!big_ && !o.big_) return n_ == o.n_ && d_ == o.d_;
    if (big_ && o.big_) return *big_ == *o.big_;
    return false;  // canonical: a big phase never has a small denominator
}

bool Phase::operator<(const Phase& o) const {
    if (!big_ && !o.big_) return d_ != o.d_ ? d_ < o.d_ : n_ < o.n_;
    mpz_class da = den(), db = o.den();
    if (da != db) return da < db;
    return num() < o.num();
}

std::string Phase::str() const { return num().get_str() + "/" + den().get_str(); }

Phase Phase::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(s);
            return from_mpq(mpq_class(n));
        }
        mpz_class n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return from_mpq(mpq_class(n, d));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed phase '" + s + "'");
    }
}

// ---------------------------------------------------------------- PhaseSum

PhaseSum::PhaseSum(const Phase& p, const mpq_class& c) {
    if (c != 0) terms_.emplace_back(c, p);
}

void PhaseSum::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.second < b.second; });
    std::vector<Term> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().second == t.second)
            out.back().first += t.first;
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.first == 0; }),
              out.end());
    terms_ = std::move(out);
}

PhaseSum PhaseSum::operator+(const PhaseSum& o) const {
    PhaseSum r;
    r.terms_ = terms_;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.canonicalize();
    return r;
}

PhaseSum PhaseSum::operator*(const PhaseSum& o) const {
    PhaseSum r;
    for (auto& a : terms_)
        for (auto& b : o.terms_) r.terms_.emplace_back(a.first * b.first, a.second + b.second);
    r.canonicalize();
    return r;
}

PhaseSum PhaseSum::scaled(const mpq_class& c) const {
    PhaseSum r;
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.first *= c;
    return r;
}

PhaseSum PhaseSum::shifted(const Phase& p) const {
    PhaseSum r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.second += p;
    r.canonicalize();
    return r;
}

PhaseSum PhaseSum::act(int eps) const {
    if (eps > 0) return *this;
    PhaseSum r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.second = -t.second;
    r.canonicalize();
    return r;
}

bool PhaseSum::operator==(const PhaseSum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second)
            return false;
    return true;
}

namespace {

using Poly = std::vector<mpq_class>;  // coefficient of x^i at index i

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        mpq_class lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
        trim(a);
    }
    return a;
}

// Exact quotient a / b for monic b.
Poly poly_div(Poly a, const Poly& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    if (a.size() <= db) return {};
    Poly q(a.size() - db, 0);
    while (a.size() > db) {
        mpq_class lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        q[shift] = lead;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= lead * b[i];
        trim(a);
    }
    return q;
}

Poly cyclotomic(unsigned long n) {
    static std::map<unsigned long, Poly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned long d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div(p, cyclotomic(d));
    cache[n] = p;
    return p;
}

}  // namespace

std::optional<mpq_class> PhaseSum::rational_value() const {
    if (terms_.empty()) return mpq_class(0);
    mpz_class lcm = 1;
    for (auto& t : terms_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.second.den().get_mpz_t());
    if (!lcm.fits_ulong_p() || lcm > 100000)
        throw std::runtime_error("phase denominator too large for cyclotomic evaluation");
    unsigned long n = lcm.get_ui();
    Poly p(n, 0);
    for (auto& t : terms_) {
        mpz_class e = t.second.num() * (lcm / t.second.den());
        p[e.get_ui() % n] += t.first;
    }
    Poly r = poly_mod(p, cyclotomic(n));
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    return r.empty() ? mpq_class(0) : r[0];
}

std::string PhaseSum::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += rational_str(terms_[i].first) + "*[" + terms_[i].second.str() + "]";
    }
    return s;
}

std::string rational_str(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class parse_rational(const std::string& s) {
    try {
        mpq_class q(s);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

}  // namespace tg
