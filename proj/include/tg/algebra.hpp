// Twisted (Real) groupoid algebras, flat sections, Drinfeld doubles and the
// Real quasi-bialgebra data on the quotient double.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tg/cochain.hpp"
#include "tg/group.hpp"
#include "tg/groupoid.hpp"
#include "tg/phase.hpp"

namespace tg {

// Basis l_m for every morphism m; the product is
//   (c2 l_m2)(c1 l_m1) = c2 act(s(m2), c1) exp(2 pi i theta(m2, m1)) l_{m2 m1}
// with s the grading when theta is PI-twisted (a Real algebra, linear over R)
// and s = +1 otherwise (a complex algebra).
struct TwistedAlgebra {
    GroupoidPtr g;
    Cochain theta;
    bool semilinear() const { return theta.twist() == Twist::PI; }
    int coeff_sign(int m) const { return semilinear() ? g->grade[m] : 1; }
};

using AlgebraElement = std::map<int, PhaseSum>;

// Throws std::invalid_argument if theta is not a 2-cocycle, with the first
// non-associative basis triple.
TwistedAlgebra build_algebra(GroupoidPtr g, Cochain theta);
// First basis triple (m3, m2, m1) with (l3 l2) l1 != l3 (l2 l1), if any.
std::optional<std::vector<int>> associativity_witness(const TwistedAlgebra& a);

AlgebraElement basis_element(int m, const Phase& p = Phase());
AlgebraElement unit(const TwistedAlgebra& a);
AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement multiply(const TwistedAlgebra& a, const AlgebraElement& x, const AlgebraElement& y);
// Multiplication by a scalar from the left.
AlgebraElement scale(const AlgebraElement& x, const PhaseSum& c);
bool equal(const AlgebraElement& x, const AlgebraElement& y);

struct Centre {
    std::vector<AlgebraElement> basis;
    int dim = 0;             // over R for Real algebras, over C otherwise
    bool over_reals = false;
};
// Orbit propagation over the conjugation action on loops. For Real algebras
// only degree +1 loops carry coefficients.
Centre centre(const TwistedAlgebra& a);

struct FlatSections {
    int dim = 0;
    std::vector<int> per_component;  // aligned with components(g)
};
// alpha a PI-twisted 1-cocycle on a graded groupoid; dimension over R.
FlatSections real_flat_sections_dim(const Cochain& alpha);
// alpha an untwisted 1-cocycle; dimension over C.
FlatSections flat_sections_dim_C(const Cochain& alpha);

enum class DoubleVariant { D_REF, DD_QUOT, DD_REF_TILDE };
std::string to_string(DoubleVariant v);
DoubleVariant parse_double_variant(const std::string& s);

struct Double {
    DoubleVariant variant;
    GroupoidPtr loop;  // the loop groupoid of B G^ carrying the algebra
    TwistedAlgebra alg;
};
// eta lives on B G^; PI-twisted for D_REF and DD_QUOT, untwisted for DD_REF_TILDE.
Double build_double(const GroupoidPtr& bg, const Cochain& eta, DoubleVariant v);
// Degree +1 morphisms between loops of degree +1, with theta restricted.
TwistedAlgebra even_subalgebra(const TwistedAlgebra& a);

// Elements of D (x) D or D (x) D (x) D: tuples of basis ids -> coefficient.
using TensorElement = std::map<std::vector<int>, PhaseSum>;
// Factorwise product. All basis ids in a term of x have the same degree, and
// coefficients of y moving past them are acted on by that degree.
TensorElement tensor_multiply(const TwistedAlgebra& a, const TensorElement& x, const TensorElement& y);

struct QuasiBialgebraData {
    Double dd;  // DD_QUOT of eta^-1, i.e. product twist tau_pi(eta)^-1
    // c[(w * n + g2) * n + g1] for w in G^, g1, g2 in G (indices into the group).
    std::vector<Phase> c;
    int n = 0;
    Phase c_at(int w, int g2, int g1) const { return c[((std::size_t)w * n + g2) * n + g1]; }
    // Delta(l_m) for every basis id m of dd.alg.
    std::vector<TensorElement> delta;
    TensorElement phi;
    // Results of the four checks; empty string when passed, else first witness.
    std::string conj_identity, compat_identity, multiplicative, coassociative;
    bool ok() const {
        return conj_identity.empty() && compat_identity.empty() && multiplicative.empty() && coassociative.empty();
    }
};
// Builds c, Delta and Phi and runs the checks:
//   (a) eta(w.g3, w.g2, w.g1) - pi(w) eta(g3, g2, g1) = (d c_w)(g3, g2, g1)
//   (b) T(g2) + T(g1) - T(g2 g1) = c_{w2 w1} - pi(w2) c_{w1} - c_{w2}(w1.g2, w1.g1),
//       T(g) = -tau_pi(eta)([w2|w1]g), the product twist of dd
//   (c) Delta(x y) = Delta(x) Delta(y) on basis pairs
//   (d) (id (x) Delta) Delta(a) Phi = Phi (Delta (x) id) Delta(a)
// Does not throw on failed checks; callers inspect ok().
QuasiBialgebraData quasi_bialgebra(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& eta);

// q^s on the even subalgebra C^theta[BG] of the Real group algebra of theta on
// B G^: sum c_g l_g -> sum conj(c_g) exp(-2 pi i tau_pi(theta)([s]g)) l_{sgs^-1}.
// Elements are indexed by morphism ids of bg restricted to G.
struct QInvolution {
    GroupoidPtr bg;
    Cochain theta;
    int s = 0;
    Cochain tp;  // tau_pi(theta) on the quotient loop groupoid
    GroupoidPtr quot;
    AlgebraElement operator()(const AlgebraElement& x) const;
};
QInvolution q_involution(const GroupoidPtr& bg, const Cochain& theta, int s);

nlohmann::json to_json(const Groupoid& g, const AlgebraElement& x);

}  // namespace tg
