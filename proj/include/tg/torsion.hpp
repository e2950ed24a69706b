// Discrete torsion phases of twisted 2- and 3-cocycles on tori, Klein bottles
// and their products with a circle.
#pragma once

#include <string>
#include <vector>

#include "tg/cochain.hpp"
#include "tg/group.hpp"
#include "tg/groupoid.hpp"
#include "tg/phase.hpp"

namespace tg {

enum class Surface { T2, KLEIN, T3, KLEINxS1 };
std::string to_string(Surface s);

struct TorsionRow {
    std::vector<int> gens;  // (g, w) or (g, w1, w2), group indices
    Surface surface = Surface::T2;
    Phase phase;        // iterated transgression
    Phase closed_form;  // hand-written formula
    int orbit = 0;      // component of the loop groupoid holding the row
};

struct TorsionTable {
    int dim = 2;
    std::vector<TorsionRow> rows;  // sorted by gens
    // Per orbit: sum of exp(2 pi i phase) over its rows.
    std::vector<PhaseSum> orbit_sums;
};

// Rows over all (g, w) with g even and g w = w g^pi(w). Throws std::logic_error
// on a row where the two evaluations differ.
TorsionTable torsion_2d(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& theta);
// Rows over all (g, w1, w2) with g even, w1 and w2 fixing g under the Real
// conjugation and commuting with each other. Also asserts that every row with
// w1, w2 both odd equals the row (g, w1 w2^-1, w2).
TorsionTable torsion_3d(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& eta);

// The closed forms, written directly on the cocycle values.
//   2d: -Delta_w theta(g^-1, g) + theta(g, w) - theta(w, g^pi(w))
//   3d: alternating sums depending on the parities of w1, w2
Phase torsion_closed_form_2d(const GradedGroup& grp, const Cochain& theta, int g, int w);
Phase torsion_closed_form_3d(const GradedGroup& grp, const Cochain& eta, int g, int w1, int w2);

// generators, parities, surface, phase; one line per row after a header.
std::string to_tsv(const GradedGroup& grp, const TorsionTable& t);

}  // namespace tg
