// Loop transgression: closed forms, the Eilenberg-Zilber oracle, and the
// translation between twisted cochains and cochains on the double cover.
#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "tg/cochain.hpp"
#include "tg/groupoid.hpp"

namespace tg {

// Slots are numbered 0..slots-1 in application order; `pos` lists the slots
// holding inserted loop entries. sign = (-1)^{#(inserted slot, other slot)
// pairs with the inserted one applied first}.
struct ShuffleInsertion {
    int slots = 0;
    std::vector<int> pos;
    int sign = 1;
};
std::vector<ShuffleInsertion> shuffles(int slots, int inserted);

// All closed forms take the cochain on the parent groupoid and the matching
// loop groupoid built from it (loop->up must be the cochain's groupoid).
//
// Sign conventions, additive and in application order (omega_1 applied first):
//   tau, tau_pi     sum_i (-1)^{n-i} lam(omega_1..omega_i, gamma_{i+1}, omega_{i+1}..omega_n),
//                   gamma_{i+1} = omega_{<=i} gamma omega_{<=i}^{-1}
//   tau_ref         sum_k e_k sum_s sgn(s) lam(s . c),  e_1 = 1,
//                   e_k = (-1)^{k-1} Delta(omega_n..omega_{n-k+2}) for k >= 2
//   tau_ref_tilde   as tau_ref with e_k = +Delta(omega_n..omega_{n-k+2})
// In s . c the k inserted entries sit among omega_1..omega_{n+1-k}; the j-th
// one, after omega_1..omega_p, is omega_{<=p} gamma^{(-1)^{k-j} pi(omega_{<=n})} omega_{<=p}^{-1}.
Cochain tau(const Cochain& lam, const GroupoidPtr& loop);
Cochain tau_pi(const Cochain& lam, const GroupoidPtr& quot);
Cochain tau_ref(const Cochain& lam, const GroupoidPtr& ref);
Cochain tau_ref_tilde(const Cochain& lam, const GroupoidPtr& ref);

// Convenience forms that build the loop groupoid.
Cochain tau(const Cochain& lam);
Cochain tau_pi(const Cochain& lam);
Cochain tau_ref(const Cochain& lam);
Cochain tau_ref_tilde(const Cochain& lam);

enum class Variant { PLAIN, QUOT, REF, REF_TILDE };
std::string to_string(Variant v);

// Twisted cochains on G^ and deck anti-invariant cochains on the cover.
// phi_minus(l)(chain from (x,e)) = e_end * l(projected chain), e_end the sign
// of the final object. psi_minus evaluates on the lift ending at sign +1.
Cochain phi_minus(const Cochain& twisted, const DoubleCover& dc);
Cochain psi_minus(const Cochain& on_cover, const DoubleCover& dc);
// Untwisted cochains: plain pullback along the projection, and evaluation on
// the lift starting at sign +1.
Cochain phi_plain(const Cochain& lam, const DoubleCover& dc);
Cochain psi_plain(const Cochain& on_cover, const DoubleCover& dc);

// ---------------------------------------------------------------- chain level

// A chain [omega_n|...|omega_1] in the loop groupoid of the double cover,
// based at ((x, eps), loop) where loop is a degree +1 endomorphism of x in G^.
struct LoopChain {
    int x = 0, eps = 1, loop = 0;
    std::vector<int> om;  // application order
    auto tie() const { return std::tie(x, eps, loop, om); }
    bool operator<(const LoopChain& o) const { return tie() < o.tie(); }
    bool operator==(const LoopChain& o) const { return tie() == o.tie(); }
};

// Generator of C(BZ) (x) C(loop groupoid of the cover): a-values in
// application order, tensor a loop chain.
struct FTerm {
    std::vector<int> a;
    LoopChain tail;
    bool operator<(const FTerm& o) const { return std::tie(a, tail) < std::tie(o.a, o.tail); }
};

// Formal Z-linear combination.
struct FChain {
    std::map<FTerm, long> terms;
    void add(const FTerm& t, long c);
    FChain& operator+=(const FChain& o);
    bool degenerate_only(const Groupoid& g) const;
};

// s_i^e: a_j = (-1)^{i-j} e in application order.
std::vector<int> alternating(int i, int eps);

// f_n applied to a loop chain.
FChain f_map(const Groupoid& g, const LoopChain& c);
// Boundaries with the face convention dual to the cochain differential.
std::vector<std::pair<LoopChain, long>> boundary(const Groupoid& g, const LoopChain& c);
FChain boundary(const Groupoid& g, const FChain& c);
// Deck action: negate the a-values, flip eps, invert the loop.
LoopChain zeta(const Groupoid& g, const LoopChain& c);
FChain zeta(const Groupoid& g, const FChain& c);

// Evaluates a cochain on ev_* EZ of a chain. With `minus`, each G^ chain is
// weighted by the sign of the final cover object.
Phase evaluate_ez(const Groupoid& g, const Cochain& lam, const FChain& c, bool minus);

// The transgression computed through the defining composite. `target` is the
// loop groupoid the result lives on (loop groupoid for PLAIN, quotient loop
// groupoid for QUOT, unoriented quotient loop groupoid for REF and REF_TILDE).
Cochain ez_transgress_oracle(const Cochain& lam, Variant v, const GroupoidPtr& target);

}  // namespace tg
