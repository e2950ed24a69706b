#include "tg/snf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace tg {

namespace {

struct Overflow {};

// Checked int64 scalar with the same interface the elimination needs.
struct I64 {
    std::int64_t v = 0;
    static I64 from(std::int64_t x) { return {x}; }
    bool zero() const { return v == 0; }
    I64 abs() const {
        if (v == INT64_MIN) throw Overflow{};
        return {v < 0 ? -v : v};
    }
    bool less(const I64& o) const { return v < o.v; }
    bool is_unit() const { return v == 1 || v == -1; }
    static I64 quot(const I64& a, const I64& b) { return {a.v / b.v}; }
    // a - q b
    static I64 axpy(const I64& a, const I64& q, const I64& b) {
        std::int64_t p, r;
        if (__builtin_mul_overflow(q.v, b.v, &p) || __builtin_sub_overflow(a.v, p, &r)) throw Overflow{};
        return {r};
    }
    mpz_class mpz() const { return mpz_class((long)v); }
};

struct Big {
    mpz_class v;
    static Big from(std::int64_t x) { return {mpz_class((long)x)}; }
    bool zero() const { return v == 0; }
    Big abs() const { return {::abs(v)}; }
    bool less(const Big& o) const { return v < o.v; }
    bool is_unit() const { return v == 1 || v == -1; }
    static Big quot(const Big& a, const Big& b) {
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a.v.get_mpz_t(), b.v.get_mpz_t());
        return {q};
    }
    static Big axpy(const Big& a, const Big& q, const Big& b) { return {a.v - q.v * b.v}; }
    mpz_class mpz() const { return v; }
};

template <class T>
Diagonalization run(int R, int C, const std::vector<std::int64_t>& in) {
    std::vector<T> A(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) A[i] = T::from(in[i]);
    std::vector<T> V((std::size_t)C * C, T::from(0));
    for (int i = 0; i < C; ++i) V[(std::size_t)i * C + i] = T::from(1);
    auto at = [&](int r, int c) -> T& { return A[(std::size_t)r * C + c]; };
    auto swap_rows = [&](int r1, int r2) {
        if (r1 == r2) return;
        std::swap_ranges(A.begin() + (std::size_t)r1 * C, A.begin() + (std::size_t)(r1 + 1) * C,
                         A.begin() + (std::size_t)r2 * C);
    };
    auto swap_cols = [&](int c1, int c2, int from) {
        if (c1 == c2) return;
        for (int r = from; r < R; ++r) std::swap(at(r, c1), at(r, c2));
        for (int r = 0; r < C; ++r) std::swap(V[(std::size_t)r * C + c1], V[(std::size_t)r * C + c2]);
    };
    Diagonalization d;
    d.rows = R;
    d.cols = C;
    int t = 0;
    for (; t < std::min(R, C); ++t) {
        // pivot: a unit if one exists, else the smallest nonzero entry
        int pr = -1, pc = -1;
        T best;
        for (int r = t; r < R && !(pr >= 0 && best.is_unit()); ++r)
            for (int c = t; c < C; ++c) {
                const T& x = at(r, c);
                if (x.zero()) continue;
                T ax = x.abs();
                if (pr < 0 || ax.less(best)) {
                    pr = r, pc = c, best = ax;
                    if (best.is_unit()) break;
                }
            }
        if (pr < 0) break;
        swap_rows(t, pr);
        swap_cols(t, pc, t);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int r = t + 1; r < R; ++r) {
                if (at(r, t).zero()) continue;
                T q = T::quot(at(r, t), at(t, t));
                for (int c = t; c < C; ++c)
                    if (!at(t, c).zero()) at(r, c) = T::axpy(at(r, c), q, at(t, c));
                if (!at(r, t).zero()) {
                    swap_rows(t, r);
                    dirty = true;
                }
            }
            for (int c = t + 1; c < C; ++c) {
                if (at(t, c).zero()) continue;
                T q = T::quot(at(t, c), at(t, t));
                for (int r = t; r < R; ++r)
                    if (!at(r, t).zero()) at(r, c) = T::axpy(at(r, c), q, at(r, t));
                for (int r = 0; r < C; ++r) {
                    T& vt = V[(std::size_t)r * C + t];
                    if (!vt.zero()) V[(std::size_t)r * C + c] = T::axpy(V[(std::size_t)r * C + c], q, vt);
                }
                if (!at(t, c).zero()) {
                    swap_cols(t, c, t);
                    dirty = true;
                }
            }
        }
        d.diag.push_back(at(t, t).abs().mpz());
    }
    d.rank = (int)d.diag.size();
    d.V.assign(C, std::vector<mpz_class>(C));
    for (int r = 0; r < C; ++r)
        for (int c = 0; c < C; ++c) d.V[r][c] = V[(std::size_t)r * C + c].mpz();
    return d;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Cochain from_vector(const GroupoidPtr& g, int n, Twist tw, const TupleList& tuples, const std::vector<mpz_class>& x,
                    int k) {
    Cochain c(g, n, tw);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), x[i].get_mpz_t(), k);
        if (r != 0) c.set(tuples[i], Phase(r.get_si(), k));
    }
    return c;
}

}  // namespace

Diagonalization diagonalize(int rows, int cols, const std::vector<std::int64_t>& a) {
    try {
        return run<I64>(rows, cols, a);
    } catch (const Overflow&) {
        return run<Big>(rows, cols, a);
    }
}

std::vector<mpz_class> invariant_factors(const std::vector<mpz_class>& orders) {
    // primary decomposition, then recombine largest powers
    std::map<mpz_class, std::vector<mpz_class>> by_prime;
    for (mpz_class q : orders) {
        q = ::abs(q);
        if (q == 0) throw std::invalid_argument("infinite cyclic factor in a torsion group");
        for (mpz_class p = 2; q > 1; ++p) {
            if (p * p > q) p = q;
            mpz_class pw = 1;
            while (q % p == 0) {
                q /= p;
                pw *= p;
            }
            if (pw > 1) by_prime[p].push_back(pw);
        }
    }
    std::size_t len = 0;
    for (auto& [p, v] : by_prime) {
        std::sort(v.begin(), v.end(), std::greater<>());
        len = std::max(len, v.size());
    }
    std::vector<mpz_class> out(len, 1);
    for (auto& [p, v] : by_prime)
        for (std::size_t i = 0; i < v.size(); ++i) out[len - 1 - i] *= v[i];
    return out;
}

DifferentialMatrix differential_matrix(const GroupoidPtr& gp, int n, Twist twist, std::uint64_t budget) {
    const Groupoid& g = *gp;
    std::uint64_t nr = count_nondegenerate(g, n + 1), nc = count_nondegenerate(g, n);
    if (nc != 0 && nr > budget / nc)
        throw BudgetExceeded("differential matrix needs " + std::to_string(nr) + " x " + std::to_string(nc) +
                             " entries, budget is " + std::to_string(budget));
    DifferentialMatrix m;
    m.cols = nondegenerate_tuples(g, n);
    m.rows = nondegenerate_tuples(g, n + 1);
    Cochain probe(gp, n, twist);
    std::vector<int> col_of(probe.table_size(), -1);
    for (std::size_t j = 0; j < m.cols.size(); ++j) col_of[probe.key(m.cols[j])] = (int)j;
    m.a.assign(m.rows.size() * m.cols.size(), 0);
    const int N = n + 1;
    int buf[8];
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        const int* t = m.rows[r];
        std::int64_t* row = m.a.data() + r * m.cols.size();
        auto add = [&](const int* u, int coeff) {
            if (n > 0)
                for (int i = 0; i < n; ++i)
                    if (g.is_identity(u[i])) return;
            row[col_of[probe.key(u)]] += coeff;
        };
        int lead = twist == Twist::PI ? g.grade[t[N - 1]] : 1;
        if (N == 1) {
            buf[0] = g.src[t[0]];
            add(buf, lead);
            buf[0] = g.tgt[t[0]];
            add(buf, -1);
            continue;
        }
        add(t, lead);
        for (int j = 1; j < N; ++j) {
            int k = 0;
            for (int i = 0; i < N; ++i) {
                if (i == j - 1) continue;
                buf[k++] = i == j ? g.compose(t[j], t[j - 1]) : t[i];
            }
            add(buf, (N - j) % 2 ? -1 : 1);
        }
        add(t + 1, N % 2 ? -1 : 1);
    }
    return m;
}

CocycleBasis cocycle_basis(const GroupoidPtr& g, int n, Twist twist, int k, std::uint64_t budget) {
    if (k < 2) throw std::invalid_argument("coefficient order must be at least 2");
    CocycleBasis b;
    b.degree = n;
    b.twist = twist;
    b.order = k;
    DifferentialMatrix dn = differential_matrix(g, n, twist, budget);
    Diagonalization sn = diagonalize((int)dn.rows.size(), (int)dn.cols.size(), dn.a);
    b.rank_d = sn.rank;
    const int C = (int)dn.cols.size();
    const mpz_class K = k;
    for (int i = 0; i < C; ++i) {
        mpz_class y = 1;
        if (i < sn.rank) {
            mpz_class gg = gcd(K, sn.diag[i]);
            if (gg == 1) continue;
            y = K / gg;
        }
        std::vector<mpz_class> x(C);
        for (int r = 0; r < C; ++r) x[r] = sn.V[r][i] * y;
        Cochain c = from_vector(g, n, twist, dn.cols, x, k);
        if (!c.is_zero()) b.cocycles.push_back(std::move(c));
    }
    std::vector<mpz_class> orders;
    int free_rank = C - sn.rank;
    for (int i = 0; i < sn.rank; ++i) orders.push_back(gcd(K, sn.diag[i]));
    if (n > 0) {
        DifferentialMatrix dp = differential_matrix(g, n - 1, twist, budget);
        Diagonalization sp = diagonalize((int)dp.rows.size(), (int)dp.cols.size(), dp.a);
        b.rank_d_prev = sp.rank;
        free_rank -= sp.rank;
        const int Cp = (int)dp.cols.size();
        for (int i = 0; i < sp.rank; ++i) {
            orders.push_back(gcd(K, sp.diag[i]));
            std::vector<mpz_class> x(Cp);
            for (int r = 0; r < Cp; ++r) x[r] = sp.V[r][i];
            Cochain w = from_vector(g, n - 1, twist, dp.cols, x, k);
            Cochain dw = differential(w);
            if (dw.is_zero()) continue;
            b.witnesses.push_back(std::move(w));
            b.coboundaries.push_back(std::move(dw));
        }
    }
    for (int i = 0; i < free_rank; ++i) orders.push_back(K);
    b.cohomology = invariant_factors(orders);
    return b;
}

Cochain random_cocycle(const GroupoidPtr& g, const CocycleBasis& b, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Cochain c(g, b.degree, b.twist);
    for (auto& z : b.cocycles) c = c + z.scaled((std::int64_t)(rng() % (std::uint64_t)std::max(b.order, 1)));
    return c;
}

}  // namespace tg
