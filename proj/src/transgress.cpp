#include "tg/transgress.hpp"

#include <stdexcept>

#include "tg/parallel.hpp"

namespace tg {

namespace {

int power(const Groupoid& g, int loop, int e) {
    int x = g.src[loop];
    int r = g.ident[x];
    int step = e >= 0 ? loop : g.inverse[loop];
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) r = g.compose(step, r);
    return r;
}

int conj(const Groupoid& g, int c, int m) { return g.compose(g.compose(c, m), g.inverse[c]); }

int lookup(const Groupoid& g, int x, int parent_mor) {
    for (int m : g.out[x])
        if (g.mor_up[m] == parent_mor) return m;
    throw std::logic_error("no lift of morphism");
}

// Shared driver: evaluates `value` on every non-degenerate output tuple of
// the loop groupoid. The callback gets the base object of the loop groupoid
// and the parent morphisms omega_1..omega_n.
template <class F>
Cochain over_loops(const GroupoidPtr& loop, int n, Twist tw, F value) {
    Cochain out(loop, n, tw);
    TupleList tuples = nondegenerate_tuples(*loop, n);
    const Groupoid& L = *loop;
    parallel_for(tuples.size(), [&](std::size_t b, std::size_t e) {
        std::vector<int> om(n);
        for (std::size_t i = b; i < e; ++i) {
            const int* t = tuples[i];
            int o = n == 0 ? t[0] : L.src[t[0]];
            for (int k = 0; k < n; ++k) om[k] = L.mor_up[t[k]];
            out.set(t, value(L.obj_up[o], L.obj_loop[o], om));
        }
    });
    return out;
}

void check_loop(const Cochain& lam, const GroupoidPtr& loop, const char* what) {
    if (loop->up != lam.groupoid() || loop->obj_loop.empty())
        throw std::invalid_argument(std::string(what) + ": loop groupoid is not built over the cochain's groupoid");
    if (lam.degree() < 1) throw std::invalid_argument(std::string(what) + ": input degree must be at least 1");
}

Cochain conjugation_form(const Cochain& lam, const GroupoidPtr& loop, Twist out_twist) {
    const Groupoid& g = *lam.groupoid();
    const int n = lam.degree() - 1;
    return over_loops(loop, n, out_twist, [&](int x, int gamma, const std::vector<int>& om) {
        int u[8];
        Phase v;
        int c = g.ident[x];
        for (int i = 0; i <= n; ++i) {
            for (int k = 0; k < i; ++k) u[k] = om[k];
            u[i] = conj(g, c, gamma);
            for (int k = i; k < n; ++k) u[k + 1] = om[k];
            Phase term = lam.at(u);
            v += (n - i) % 2 ? -term : term;
            if (i < n) c = g.compose(om[i], c);
        }
        return v;
    });
}

Cochain shuffle_engine(const Cochain& lam, const GroupoidPtr& loop, bool tilde) {
    const Groupoid& g = *lam.groupoid();
    const int n = lam.degree() - 1;
    std::vector<std::vector<ShuffleInsertion>> sh(n + 2);
    for (int k = 1; k <= n + 1; ++k) sh[k] = shuffles(n + 1, k);
    return over_loops(loop, n, tilde ? Twist::PI : Twist::NONE, [&](int x, int gamma, const std::vector<int>& om) {
        int P = 1;
        for (int m : om) P *= g.grade[m];
        int u[8];
        Phase v;
        for (int k = 1; k <= n + 1; ++k) {
            int e = 1;
            if (k >= 2) {
                for (int i = n - k + 1; i < n; ++i)
                    if (g.grade[om[i]] > 0) e = 0;
                if (e == 0) continue;
                if (!tilde && (k - 1) % 2) e = -1;
            }
            for (const auto& s : sh[k]) {
                int c = g.ident[x], p = 0, j = 0;
                std::size_t next = 0;
                for (int slot = 0; slot <= n; ++slot) {
                    if (next < s.pos.size() && s.pos[next] == slot) {
                        ++next;
                        ++j;
                        int ex = ((k - j) % 2 ? -1 : 1) * P;
                        u[slot] = conj(g, c, ex > 0 ? gamma : g.inverse[gamma]);
                    } else {
                        u[slot] = om[p];
                        c = g.compose(om[p], c);
                        ++p;
                    }
                }
                Phase term = lam.at(u);
                v += e * s.sign > 0 ? term : -term;
            }
        }
        return v;
    });
}

}  // namespace

std::vector<ShuffleInsertion> shuffles(int slots, int inserted) {
    std::vector<ShuffleInsertion> out;
    if (inserted < 0 || inserted > slots) return out;
    std::vector<int> pos(inserted);
    for (int i = 0; i < inserted; ++i) pos[i] = i;
    while (true) {
        ShuffleInsertion s;
        s.slots = slots;
        s.pos = pos;
        long pairs = 0;
        for (int i = 0; i < inserted; ++i) pairs += (slots - 1 - pos[i]) - (inserted - 1 - i);
        s.sign = pairs % 2 ? -1 : 1;
        out.push_back(std::move(s));
        int i = inserted - 1;
        while (i >= 0 && pos[i] == slots - inserted + i) --i;
        if (i < 0) break;
        ++pos[i];
        for (int k = i + 1; k < inserted; ++k) pos[k] = pos[k - 1] + 1;
    }
    return out;
}

Cochain tau(const Cochain& lam, const GroupoidPtr& loop) {
    check_loop(lam, loop, "tau");
    if (lam.twist() != Twist::NONE) throw std::invalid_argument("tau needs an untwisted cochain");
    return conjugation_form(lam, loop, Twist::NONE);
}

Cochain tau_pi(const Cochain& lam, const GroupoidPtr& quot) {
    check_loop(lam, quot, "tau_pi");
    if (lam.twist() != Twist::PI) throw std::invalid_argument("tau_pi needs a twisted cochain");
    return conjugation_form(lam, quot, Twist::PI);
}

Cochain tau_ref(const Cochain& lam, const GroupoidPtr& ref) {
    check_loop(lam, ref, "tau_ref");
    if (lam.twist() != Twist::PI) throw std::invalid_argument("tau_ref needs a twisted cochain");
    return shuffle_engine(lam, ref, false);
}

Cochain tau_ref_tilde(const Cochain& lam, const GroupoidPtr& ref) {
    check_loop(lam, ref, "tau_ref_tilde");
    if (lam.twist() != Twist::NONE) throw std::invalid_argument("tau_ref_tilde needs an untwisted cochain");
    if (!lam.groupoid()->graded) throw std::invalid_argument("tau_ref_tilde needs a graded groupoid");
    return shuffle_engine(lam, ref, true);
}

Cochain tau(const Cochain& lam) { return tau(lam, loop_groupoid(lam.groupoid())); }
Cochain tau_pi(const Cochain& lam) { return tau_pi(lam, quotient_loop_groupoid(lam.groupoid())); }
Cochain tau_ref(const Cochain& lam) { return tau_ref(lam, unoriented_quotient_loop_groupoid(lam.groupoid())); }
Cochain tau_ref_tilde(const Cochain& lam) {
    return tau_ref_tilde(lam, unoriented_quotient_loop_groupoid(lam.groupoid()));
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::PLAIN: return "PLAIN";
        case Variant::QUOT: return "QUOT";
        case Variant::REF: return "REF";
        case Variant::REF_TILDE: return "REF_TILDE";
    }
    return "?";
}

// ---------------------------------------------------------------- Phi / Psi

namespace {

// Lift of a G^ tuple to the cover starting at sign eps.
void lift(const DoubleCover& dc, int x, int eps, const int* t, int n, int* out) {
    const Groupoid& C = *dc.cover;
    const Groupoid& B = *dc.proj.cod;
    int obj = 2 * x + (eps < 0);
    for (int i = 0; i < n; ++i) {
        out[i] = lookup(C, obj, t[i]);
        obj = C.tgt[out[i]];
    }
    (void)B;
}

}  // namespace

Cochain phi_minus(const Cochain& lam, const DoubleCover& dc) {
    if (lam.groupoid() != dc.proj.cod || lam.twist() != Twist::PI)
        throw std::invalid_argument("phi_minus needs a twisted cochain on the base");
    const Groupoid& C = *dc.cover;
    const int n = lam.degree();
    Cochain out(dc.cover, n, Twist::NONE);
    int buf[8];
    for_each_tuple(C, n, [&](const int* t) {
        int end;
        if (n == 0) {
            buf[0] = C.obj_up[t[0]];
            end = t[0];
        } else {
            for (int i = 0; i < n; ++i) buf[i] = C.mor_up[t[i]];
            end = C.tgt[t[n - 1]];
        }
        out.set(t, lam.at(buf).act(C.obj_sign[end]));
    });
    return out;
}

Cochain psi_minus(const Cochain& mu, const DoubleCover& dc) {
    if (mu.groupoid() != dc.cover) throw std::invalid_argument("psi_minus needs a cochain on the cover");
    const Groupoid& B = *dc.proj.cod;
    const int n = mu.degree();
    Cochain out(dc.proj.cod, n, Twist::PI);
    int buf[8];
    for_each_tuple(B, n, [&](const int* t) {
        if (n == 0) {
            buf[0] = 2 * t[0];
        } else {
            int P = 1;
            for (int i = 0; i < n; ++i) P *= B.grade[t[i]];
            lift(dc, B.src[t[0]], P, t, n, buf);
        }
        out.set(t, mu.at(buf));
    });
    return out;
}

Cochain phi_plain(const Cochain& lam, const DoubleCover& dc) { return pullback(dc.proj, lam, Twist::NONE); }

Cochain psi_plain(const Cochain& mu, const DoubleCover& dc) {
    if (mu.groupoid() != dc.cover) throw std::invalid_argument("psi_plain needs a cochain on the cover");
    const Groupoid& B = *dc.proj.cod;
    const int n = mu.degree();
    Cochain out(dc.proj.cod, n, Twist::NONE);
    int buf[8];
    for_each_tuple(B, n, [&](const int* t) {
        if (n == 0)
            buf[0] = 2 * t[0];
        else
            lift(dc, B.src[t[0]], 1, t, n, buf);
        out.set(t, mu.at(buf));
    });
    return out;
}

// ---------------------------------------------------------------- chains

void FChain::add(const FTerm& t, long c) {
    if (c == 0) return;
    auto it = terms.find(t);
    if (it == terms.end()) {
        terms.emplace(t, c);
    } else if ((it->second += c) == 0) {
        terms.erase(it);
    }
}

FChain& FChain::operator+=(const FChain& o) {
    for (auto& [t, c] : o.terms) add(t, c);
    return *this;
}

bool FChain::degenerate_only(const Groupoid& g) const {
    for (auto& [t, c] : terms) {
        bool degenerate = false;
        for (int a : t.a) degenerate |= a == 0;
        for (int m : t.tail.om) degenerate |= g.is_identity(m);
        if (!degenerate) return false;
    }
    return true;
}

std::vector<int> alternating(int i, int eps) {
    std::vector<int> a(i);
    for (int j = 1; j <= i; ++j) a[j - 1] = ((i - j) % 2 ? -1 : 1) * eps;
    return a;
}

FChain f_map(const Groupoid& g, const LoopChain& c) {
    const int n = (int)c.om.size();
    // eps_i = pi(omega_{<=i-1}) eps_1, i = 1..n+1
    std::vector<int> eps(n + 2);
    eps[1] = c.eps;
    for (int i = 1; i <= n; ++i) eps[i + 1] = eps[i] * g.grade[c.om[i - 1]];
    FChain f;
    f.add({alternating(1, eps[n + 1]), c}, eps[n + 1]);
    for (int i = 0; i <= n - 1; ++i) {
        bool all_odd = true;
        for (int k = n - i; k <= n; ++k) all_odd &= g.grade[c.om[k - 1]] < 0;
        if (!all_odd) continue;
        LoopChain tail = c;
        tail.om.resize(n - 1 - i);
        f.add({alternating(i + 2, eps[n + 1]), tail}, (i % 2 ? -1 : 1) * eps[n + 1 - i]);
    }
    return f;
}

std::vector<std::pair<LoopChain, long>> boundary(const Groupoid& g, const LoopChain& c) {
    std::vector<std::pair<LoopChain, long>> out;
    const int n = (int)c.om.size();
    if (n == 0) return out;
    LoopChain a = c;
    a.om.pop_back();
    out.emplace_back(a, 1);
    for (int j = 1; j < n; ++j) {
        LoopChain m = c;
        m.om[j - 1] = g.compose(c.om[j], c.om[j - 1]);
        m.om.erase(m.om.begin() + j);
        out.emplace_back(m, (n - j) % 2 ? -1 : 1);
    }
    LoopChain z;
    z.x = g.tgt[c.om[0]];
    z.eps = c.eps * g.grade[c.om[0]];
    z.loop = conj(g, c.om[0], c.loop);
    z.om.assign(c.om.begin() + 1, c.om.end());
    out.emplace_back(z, n % 2 ? -1 : 1);
    return out;
}

FChain boundary(const Groupoid& g, const FChain& c) {
    FChain out;
    for (auto& [t, coeff] : c.terms) {
        const int p = (int)t.a.size();
        if (p > 0) {
            std::vector<int> a(t.a.begin(), t.a.end() - 1);
            out.add({a, t.tail}, coeff);
            for (int j = 1; j < p; ++j) {
                std::vector<int> m = t.a;
                m[j - 1] = t.a[j - 1] + t.a[j];
                m.erase(m.begin() + j);
                out.add({m, t.tail}, (p - j) % 2 ? -coeff : coeff);
            }
            out.add({std::vector<int>(t.a.begin() + 1, t.a.end()), t.tail}, p % 2 ? -coeff : coeff);
        }
        long koszul = p % 2 ? -1 : 1;
        for (auto& [face, s] : boundary(g, t.tail)) out.add({t.a, face}, koszul * s * coeff);
    }
    return out;
}

LoopChain zeta(const Groupoid& g, const LoopChain& c) {
    LoopChain z = c;
    z.eps = -c.eps;
    z.loop = g.inverse[c.loop];
    return z;
}

FChain zeta(const Groupoid& g, const FChain& c) {
    FChain out;
    for (auto& [t, coeff] : c.terms) {
        FTerm z{t.a, zeta(g, t.tail)};
        for (int& a : z.a) a = -a;
        out.add(z, coeff);
    }
    return out;
}

Phase evaluate_ez(const Groupoid& g, const Cochain& lam, const FChain& c, bool minus) {
    Phase total;
    int u[8];
    for (auto& [t, coeff] : c.terms) {
        const int p = (int)t.a.size(), q = (int)t.tail.om.size();
        if (p + q != lam.degree()) throw std::logic_error("chain degree does not match cochain degree");
        for (const auto& s : shuffles(p + q, p)) {
            int loop = t.tail.loop, eps = t.tail.eps, ai = 0, bi = 0;
            std::size_t next = 0;
            for (int slot = 0; slot < p + q; ++slot) {
                if (next < s.pos.size() && s.pos[next] == slot) {
                    ++next;
                    u[slot] = power(g, loop, t.a[ai++]);
                } else {
                    int w = t.tail.om[bi++];
                    u[slot] = w;
                    loop = conj(g, w, loop);
                    eps *= g.grade[w];
                }
            }
            long sign = coeff * s.sign * (minus ? eps : 1);
            Phase v = lam.at(u);
            total += v.scale(sign);
        }
    }
    return total;
}

Cochain ez_transgress_oracle(const Cochain& lam, Variant v, const GroupoidPtr& target) {
    check_loop(lam, target, "ez_transgress_oracle");
    if (lam.degree() > 4) throw std::invalid_argument("ez_transgress_oracle supports input degree at most 4");
    const Groupoid& g = *lam.groupoid();
    const bool twisted_in = v == Variant::QUOT || v == Variant::REF;
    if ((lam.twist() == Twist::PI) != twisted_in)
        throw std::invalid_argument("ez_transgress_oracle: twist does not match variant " + to_string(v));
    const Twist out_twist = (v == Variant::QUOT || v == Variant::REF_TILDE) ? Twist::PI : Twist::NONE;
    return over_loops(target, lam.degree() - 1, out_twist, [&](int x, int gamma, const std::vector<int>& om) {
        int P = 1;
        for (int m : om) P *= g.grade[m];
        LoopChain c{x, 1, gamma, om};
        FChain fc;
        switch (v) {
            case Variant::PLAIN:
                fc.add({{1}, c}, 1);
                return evaluate_ez(g, lam, fc, false);
            case Variant::QUOT:
                c.eps = P;
                fc.add({{1}, c}, 1);
                return evaluate_ez(g, lam, fc, true);
            case Variant::REF:
                return evaluate_ez(g, lam, f_map(g, c), true);
            case Variant::REF_TILDE:
                c.eps = P;
                c.loop = P > 0 ? gamma : g.inverse[gamma];
                return evaluate_ez(g, lam, f_map(g, c), false);
        }
        return Phase();
    });
}

}  // namespace tg
