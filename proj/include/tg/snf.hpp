// Cocycle and coboundary spaces over Z/k via Smith normal form over Z.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "tg/cochain.hpp"

namespace tg {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Diagonalization U A V = diag(d) of an integer matrix by unimodular row and
// column operations. Only V is kept. The diagonal need not satisfy the
// divisibility chain; `rank` entries are nonzero.
struct Diagonalization {
    int rows = 0, cols = 0, rank = 0;
    std::vector<mpz_class> diag;
    std::vector<std::vector<mpz_class>> V;  // V[i][j], cols x cols
};

// Dense row-major input. Runs in checked int64 and falls back to GMP on overflow.
Diagonalization diagonalize(int rows, int cols, const std::vector<std::int64_t>& a);

// Turns a list of cyclic orders into invariant factors d1 | d2 | ..., dropping 1s.
std::vector<mpz_class> invariant_factors(const std::vector<mpz_class>& orders);

// Matrix of d : C^n -> C^{n+1} on normalized cochains, rows indexed by the
// non-degenerate (n+1)-tuples and columns by the n-tuples.
struct DifferentialMatrix {
    TupleList rows, cols;
    std::vector<std::int64_t> a;
};
DifferentialMatrix differential_matrix(const GroupoidPtr& g, int n, Twist twist, std::uint64_t budget);

struct CocycleBasis {
    int degree = 0;
    Twist twist = Twist::NONE;
    int order = 0;
    std::vector<Cochain> cocycles;
    std::vector<Cochain> coboundaries;
    std::vector<Cochain> witnesses;  // coboundaries[i] = d witnesses[i]
    std::vector<mpz_class> cohomology;  // invariant factors of H^n with Z/k coefficients
    int rank_d = 0, rank_d_prev = 0;
};

// budget caps the number of matrix entries of the larger differential.
CocycleBasis cocycle_basis(const GroupoidPtr& g, int n, Twist twist, int k, std::uint64_t budget = 20'000'000);

// Random Z/k-combination of the cocycle basis (zero if the basis is empty).
Cochain random_cocycle(const GroupoidPtr& g, const CocycleBasis& b, std::uint64_t seed);

}  // namespace tg
