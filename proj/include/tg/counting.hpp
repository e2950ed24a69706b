// Counting formulas with independent cross-checks.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

#include "tg/cochain.hpp"
#include "tg/group.hpp"
#include "tg/groupoid.hpp"

namespace tg {

struct CountReport {
    std::string quantity;
    mpq_class value_formula = 0;
    mpq_class value_sections = 0;
    std::optional<mpq_class> value_classical;
    std::map<std::string, mpq_class> extra;  // further independent evaluations
    bool agree = false;

    // Recomputes agree from all present values.
    void settle();
};

nlohmann::json to_json(const CountReport& r);
std::string to_text(const CountReport& r);

// Exact rational value of an integral; throws std::logic_error if it is not rational.
mpq_class rational_integral(const PhaseSum& s, const std::string& what);

// Number of simple theta-twisted Real representations. theta: PI-twisted 2-cocycle on bg = B G^.
CountReport count_simples(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& theta);
// Real dimension of the centre of the Real twisted group algebra.
CountReport centre_dim(const GradedGroup& grp, const GroupoidPtr& bg, const Cochain& theta);
// Number of simple modules of the double D_REF; eta PI-twisted 3-cocycle.
// Throws BudgetExceeded when the second loop groupoid would exceed `budget` morphisms.
CountReport double_simple_count(const GroupoidPtr& bg, const Cochain& eta, std::uint64_t budget = 5'000'000);

struct Sectors {
    mpq_class torus = 0, klein = 0;
};
// Splits the flat sections of tau(tau_ref(eta)) by the parity of omega in (g, omega).
Sectors one_loop_sectors(const GroupoidPtr& bg, const Cochain& eta);

// alpha: PI-twisted 1-cocycle on any graded groupoid.
CountReport flat_sect_equality(const Cochain& alpha);

}  // namespace tg
