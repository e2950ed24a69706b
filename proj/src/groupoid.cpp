#include "tg/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace tg {

namespace {

int lookup(const Groupoid& g, int x, int parent_mor) {
    for (int m : g.out[x])
        if (g.mor_up[m] == parent_mor) return m;
    return -1;
}

void index_out(Groupoid& g) {
    g.out.assign(g.nobj, {});
    g.locpos.assign(g.nmor(), 0);
    for (int m = 0; m < g.nmor(); ++m) {
        g.locpos[m] = (int)g.out[g.src[m]].size();
        g.out[g.src[m]].push_back(m);
    }
    g.maxout = 1;
    for (auto& o : g.out) g.maxout = std::max<int>(g.maxout, (int)o.size());
}

// Builds a groupoid whose objects sit over objects of `parent` and whose
// morphisms are the parent morphisms p out of obj_up[x] with target(x,p) >= 0.
struct OverSpec {
    std::string label;
    GroupoidPtr parent;
    std::vector<int> obj_up, obj_loop, obj_sign;
    std::vector<std::string> obj_names;
    std::function<int(int, int)> target;
    bool graded = false;
};

GroupoidPtr build_over(OverSpec s) {
    const Groupoid& P = *s.parent;
    auto g = std::make_shared<Groupoid>();
    g->label = s.label;
    g->nobj = (int)s.obj_up.size();
    g->up = s.parent;
    g->obj_up = s.obj_up;
    g->obj_loop = s.obj_loop;
    g->obj_sign = s.obj_sign;
    g->obj_names = s.obj_names;
    g->graded = s.graded;
    std::vector<std::vector<int>> idx(g->nobj, std::vector<int>(P.maxout, -1));
    for (int x = 0; x < g->nobj; ++x) {
        for (int p : P.out[s.obj_up[x]]) {
            int t = s.target(x, p);
            if (t < 0) continue;
            int m = g->nmor();
            g->src.push_back(x);
            g->tgt.push_back(t);
            g->mor_up.push_back(p);
            g->grade.push_back(s.graded ? P.grade[p] : 1);
            idx[x][P.locpos[p]] = m;
        }
    }
    index_out(*g);
    auto find = [&](int x, int p) {
        int m = idx[x][P.locpos[p]];
        if (m < 0) throw std::logic_error("derived groupoid is not closed under parent structure");
        return m;
    };
    g->ident.resize(g->nobj);
    for (int x = 0; x < g->nobj; ++x) g->ident[x] = find(x, P.ident[s.obj_up[x]]);
    g->inverse.resize(g->nmor());
    for (int m = 0; m < g->nmor(); ++m) g->inverse[m] = find(g->tgt[m], P.inverse[g->mor_up[m]]);
    g->comp.assign((std::size_t)g->nmor() * g->maxout, -1);
    for (int m1 = 0; m1 < g->nmor(); ++m1)
        for (int m2 : g->out[g->tgt[m1]]) {
            int c = find(g->src[m1], P.compose(g->mor_up[m2], g->mor_up[m1]));
            if (g->tgt[c] != g->tgt[m2]) throw std::logic_error("derived composition has wrong target");
            g->comp[(std::size_t)m1 * g->maxout + g->locpos[m2]] = c;
        }
    if (g->obj_names.empty())
        for (int x = 0; x < g->nobj; ++x) g->obj_names.push_back("x" + std::to_string(x));
    for (int m = 0; m < g->nmor(); ++m) {
        const std::string& pn = P.mor_names[g->mor_up[m]];
        g->mor_names.push_back(g->nobj == 1 ? pn : pn + "@" + g->obj_names[g->src[m]]);
    }
    return g;
}

// Loop groupoid style construction over g: objects are the loops gamma selected
// by `keep`, and p sends gamma to conj(p, gamma).
GroupoidPtr build_loops(const GroupoidPtr& g, const std::string& label, std::function<bool(int)> keep,
                        std::function<int(int, int)> conj, bool graded) {
    const Groupoid& P = *g;
    OverSpec s;
    s.label = label;
    s.parent = g;
    s.graded = graded;
    auto loop_obj = std::make_shared<std::vector<int>>(P.nmor(), -1);
    for (int x = 0; x < P.nobj; ++x)
        for (int m : P.out[x]) {
            if (P.tgt[m] != x || !keep(m)) continue;
            (*loop_obj)[m] = (int)s.obj_up.size();
            s.obj_up.push_back(x);
            s.obj_loop.push_back(m);
            s.obj_names.push_back(P.nobj == 1 ? P.mor_names[m] : "(" + P.obj_names[x] + "," + P.mor_names[m] + ")");
        }
    s.target = [loop_obj, conj, &s](int x, int p) { return (*loop_obj)[conj(p, s.obj_loop[x])]; };
    auto out = build_over(s);
    std::const_pointer_cast<Groupoid>(out)->loop_obj = *loop_obj;
    return out;
}

}  // namespace

std::vector<int> Groupoid::aut(int x) const {
    std::vector<int> a;
    for (int m : out[x])
        if (tgt[m] == x) a.push_back(m);
    return a;
}

int Groupoid::find_morphism(const std::string& name) const {
    for (int m = 0; m < nmor(); ++m)
        if (mor_names[m] == name) return m;
    return -1;
}

GroupoidPtr classifying(const GradedGroup& G) {
    auto g = std::make_shared<Groupoid>();
    g->label = "B(" + G.label + ")";
    g->nobj = 1;
    g->graded = true;
    g->src.assign(G.n, 0);
    g->tgt.assign(G.n, 0);
    g->grade = G.sign;
    g->inverse = G.inverse;
    g->ident = {0};
    index_out(*g);
    g->comp.resize((std::size_t)G.n * G.n);
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b) g->comp[(std::size_t)a * G.n + b] = G.mul(b, a);
    g->obj_names = {"*"};
    g->mor_names = G.names;
    return g;
}

GroupoidPtr action_groupoid(const GradedGroup& G, int nx, const std::vector<int>& act) {
    if (nx < 1 || (int)act.size() != G.n * nx) throw std::invalid_argument("action table has wrong shape");
    for (int v : act)
        if (v < 0 || v >= nx) throw std::invalid_argument("action table entry out of range");
    for (int x = 0; x < nx; ++x) {
        if (act[x] != x) throw std::invalid_argument("identity does not act trivially");
        for (int a = 0; a < G.n; ++a)
            for (int b = 0; b < G.n; ++b)
                if (act[G.mul(a, b) * nx + x] != act[a * nx + act[b * nx + x]])
                    throw std::invalid_argument("action is not compatible with multiplication");
    }
    OverSpec s;
    s.label = "X//" + G.label;
    s.parent = classifying(G);
    s.obj_up.assign(nx, 0);
    for (int x = 0; x < nx; ++x) s.obj_names.push_back("x" + std::to_string(x));
    s.target = [&act, nx](int x, int g) { return act[g * nx + x]; };
    s.graded = true;
    return build_over(s);
}

DoubleCover double_cover(const GroupoidPtr& g, bool keep_grading) {
    const Groupoid& P = *g;
    OverSpec s;
    s.label = "cover(" + P.label + ")";
    s.parent = g;
    s.graded = keep_grading;
    for (int x = 0; x < P.nobj; ++x)
        for (int e : {1, -1}) {
            s.obj_up.push_back(x);
            s.obj_sign.push_back(e);
            s.obj_names.push_back(P.obj_names[x] + (e > 0 ? "+" : "-"));
        }
    s.target = [&P, &s](int x, int p) { return 2 * P.tgt[p] + (s.obj_sign[x] * P.grade[p] < 0 ? 1 : 0); };
    DoubleCover dc;
    dc.cover = build_over(s);
    const Groupoid& C = *dc.cover;
    dc.proj = Functor{dc.cover, g, C.obj_up, C.mor_up};
    dc.deck.dom = dc.cover;
    dc.deck.cod = dc.cover;
    for (int x = 0; x < C.nobj; ++x) dc.deck.obj.push_back(x ^ 1);
    for (int m = 0; m < C.nmor(); ++m) dc.deck.mor.push_back(lookup(C, C.src[m] ^ 1, C.mor_up[m]));
    return dc;
}

GroupoidPtr loop_groupoid(const GroupoidPtr& g) {
    const Groupoid* P = g.get();
    return build_loops(
        g, "L(" + P->label + ")", [](int) { return true; },
        [P](int p, int gam) { return P->compose(P->compose(p, gam), P->inverse[p]); }, P->graded);
}

GroupoidPtr quotient_loop_groupoid(const GroupoidPtr& g) {
    const Groupoid* P = g.get();
    if (!P->graded) throw std::invalid_argument("quotient loop groupoid needs a graded groupoid");
    return build_loops(
        g, "Lpi(" + P->label + ")", [P](int m) { return P->grade[m] > 0; },
        [P](int p, int gam) { return P->compose(P->compose(p, gam), P->inverse[p]); }, true);
}

GroupoidPtr unoriented_quotient_loop_groupoid(const GroupoidPtr& g) {
    const Groupoid* P = g.get();
    if (!P->graded) throw std::invalid_argument("unoriented quotient loop groupoid needs a graded groupoid");
    return build_loops(
        g, "Lref(" + P->label + ")", [P](int m) { return P->grade[m] > 0; },
        [P](int p, int gam) {
            int gp = P->grade[p] > 0 ? gam : P->inverse[gam];
            return P->compose(P->compose(p, gp), P->inverse[p]);
        },
        true);
}

GroupoidPtr even_subgroupoid(const GroupoidPtr& g) {
    const Groupoid* P = g.get();
    OverSpec s;
    s.label = "even(" + P->label + ")";
    s.parent = g;
    s.graded = P->graded;
    s.obj_up.resize(P->nobj);
    std::iota(s.obj_up.begin(), s.obj_up.end(), 0);
    s.obj_names = P->obj_names;
    s.target = [P](int, int p) { return P->grade[p] > 0 ? P->tgt[p] : -1; };
    auto out = build_over(s);
    auto mut = std::const_pointer_cast<Groupoid>(out);
    for (int m = 0; m < mut->nmor(); ++m) mut->mor_names[m] = P->mor_names[mut->mor_up[m]];
    return out;
}

GroupoidPtr forget_grading(const GroupoidPtr& g) {
    auto c = std::make_shared<Groupoid>(*g);
    c->graded = false;
    c->grade.assign(c->nmor(), 1);
    c->label = "ungraded(" + g->label + ")";
    return c;
}

Functor identity_functor(const GroupoidPtr& g) {
    Functor f{g, g, {}, {}};
    f.obj.resize(g->nobj);
    std::iota(f.obj.begin(), f.obj.end(), 0);
    f.mor.resize(g->nmor());
    std::iota(f.mor.begin(), f.mor.end(), 0);
    return f;
}

namespace {

// Objects of a loop groupoid over the cover are ((x,e), cover loop).
Functor loop_cover_to(const DoubleCover& dc, const GroupoidPtr& L, const GroupoidPtr& Q, bool real) {
    const Groupoid& C = *dc.cover;
    if (L->up != dc.cover || Q->up != dc.proj.cod)
        throw std::invalid_argument("loop groupoids do not match the double cover");
    const Groupoid& B = *Q->up;
    Functor f{L, Q, {}, {}};
    for (int o = 0; o < L->nobj; ++o) {
        int cl = L->obj_loop[o];
        int gam = C.mor_up[cl];
        int eps = C.obj_sign[L->obj_up[o]];
        if (real && eps < 0) gam = B.inverse[gam];
        f.obj.push_back(Q->loop_obj[gam]);
    }
    for (int m = 0; m < L->nmor(); ++m) f.mor.push_back(lookup(*Q, f.obj[L->src[m]], C.mor_up[L->mor_up[m]]));
    return f;
}

}  // namespace

Functor loop_to_quotient(const DoubleCover& dc, const GroupoidPtr& L, const GroupoidPtr& Q) {
    return loop_cover_to(dc, L, Q, false);
}

Functor loop_to_unoriented(const DoubleCover& dc, const GroupoidPtr& L, const GroupoidPtr& R) {
    return loop_cover_to(dc, L, R, true);
}

Functor loop_deck(const DoubleCover& dc, const GroupoidPtr& L, bool invert_loop) {
    const Groupoid& C = *dc.cover;
    Functor f{L, L, {}, {}};
    for (int o = 0; o < L->nobj; ++o) {
        int cl = L->obj_loop[o];
        int flipped = dc.deck.mor[cl];
        if (invert_loop) flipped = C.inverse[flipped];
        f.obj.push_back(L->loop_obj[flipped]);
    }
    for (int m = 0; m < L->nmor(); ++m) f.mor.push_back(lookup(*L, f.obj[L->src[m]], dc.deck.mor[L->mor_up[m]]));
    return f;
}

Functor inclusion(const GroupoidPtr& sub, const GroupoidPtr& ambient) {
    Functor f{sub, ambient, {}, {}};
    if (sub->up == ambient) {
        f.obj = sub->obj_up;
        f.mor = sub->mor_up;
        return f;
    }
    if (sub->up && ambient->up && sub->up->up == ambient->up && !sub->obj_loop.empty()) {
        const Groupoid& E = *sub->up;
        for (int o = 0; o < sub->nobj; ++o) f.obj.push_back(ambient->loop_obj[E.mor_up[sub->obj_loop[o]]]);
        for (int m = 0; m < sub->nmor(); ++m)
            f.mor.push_back(lookup(*ambient, f.obj[sub->src[m]], E.mor_up[sub->mor_up[m]]));
        return f;
    }
    throw std::invalid_argument("no canonical inclusion between these groupoids");
}

void validate(const Functor& f, bool require_graded) {
    const Groupoid& D = *f.dom;
    const Groupoid& C = *f.cod;
    if ((int)f.obj.size() != D.nobj || (int)f.mor.size() != D.nmor())
        throw std::invalid_argument("functor tables have wrong size");
    for (int m = 0; m < D.nmor(); ++m) {
        int fm = f.mor[m];
        if (fm < 0 || C.src[fm] != f.obj[D.src[m]] || C.tgt[fm] != f.obj[D.tgt[m]])
            throw std::invalid_argument("functor does not respect source/target at " + D.mor_names[m]);
        if (require_graded && C.grade[fm] != D.grade[m])
            throw std::invalid_argument("functor does not preserve the grading at " + D.mor_names[m]);
    }
    for (int x = 0; x < D.nobj; ++x)
        if (f.mor[D.ident[x]] != C.ident[f.obj[x]]) throw std::invalid_argument("functor does not preserve identities");
    for (int m1 = 0; m1 < D.nmor(); ++m1)
        for (int m2 : D.out[D.tgt[m1]])
            if (f.mor[D.compose(m2, m1)] != C.compose(f.mor[m2], f.mor[m1]))
                throw std::invalid_argument("functor does not preserve composition");
}

std::string to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::ODD_LOOP: return "ODD_LOOP";
        case ComponentKind::PAIRED: return "PAIRED";
        case ComponentKind::EVEN: return "EVEN";
    }
    return "?";
}

std::vector<Component> components(const Groupoid& g) {
    std::vector<int> parent(g.nobj);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
    for (int m = 0; m < g.nmor(); ++m) {
        int a = root(g.src[m]), b = root(g.tgt[m]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> slot(g.nobj, -1);
    std::vector<Component> comps;
    for (int x = 0; x < g.nobj; ++x) {
        int r = root(x);
        if (slot[r] < 0) {
            slot[r] = (int)comps.size();
            comps.push_back({});
            comps.back().base = x;
        }
        comps[slot[r]].objects.push_back(x);
    }
    for (auto& c : comps) {
        c.aut = g.aut(c.base);
        bool odd_loop = false, odd_any = false;
        if (g.graded) {
            for (int m : c.aut) odd_loop |= g.grade[m] < 0;
            for (int x : c.objects)
                for (int m : g.out[x]) odd_any |= g.grade[m] < 0;
        }
        c.kind = odd_loop ? ComponentKind::ODD_LOOP : odd_any ? ComponentKind::PAIRED : ComponentKind::EVEN;
    }
    return comps;
}

std::optional<std::string> check_axioms(const Groupoid& g) {
    for (int m = 0; m < g.nmor(); ++m) {
        const std::string& n = g.mor_names[m];
        if (g.compose(m, g.ident[g.src[m]]) != m || g.compose(g.ident[g.tgt[m]], m) != m)
            return "identity not neutral for " + n;
        int i = g.inverse[m];
        if (g.compose(i, m) != g.ident[g.src[m]] || g.compose(m, i) != g.ident[g.tgt[m]])
            return "inverse fails for " + n;
        if (g.grade[g.compose(i, m)] != 1) return "grading not functorial at " + n;
    }
    for (int m1 = 0; m1 < g.nmor(); ++m1)
        for (int m2 : g.out[g.tgt[m1]]) {
            int c = g.compose(m2, m1);
            if (c < 0) return "missing composite";
            if (g.grade[c] != g.grade[m2] * g.grade[m1]) return "grading not multiplicative";
            for (int m3 : g.out[g.tgt[m2]])
                if (g.compose(m3, c) != g.compose(g.compose(m3, m2), m1))
                    return "associativity fails at (" + g.mor_names[m3] + "," + g.mor_names[m2] + "," +
                           g.mor_names[m1] + ")";
        }
    return std::nullopt;
}

}  // namespace tg
