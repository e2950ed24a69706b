// Finite groupoids with dense ids, optional Z2-gradings, and the loop constructions.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tg/group.hpp"

namespace tg {

struct Groupoid;
using GroupoidPtr = std::shared_ptr<const Groupoid>;

// Morphisms with source x are listed in out[x]; locpos[m] is the position of m
// there. Composition is a flat table comp[m1*maxout + locpos[m2]] for m2 after m1.
struct Groupoid {
    std::string label;
    int nobj = 0;
    std::vector<int> src, tgt, inverse, ident;
    bool graded = false;
    std::vector<int> grade;  // +1/-1 per morphism, all +1 if ungraded
    std::vector<std::vector<int>> out;
    std::vector<int> locpos;
    int maxout = 0;
    std::vector<int> comp;

    // For derived groupoids: the parent and how objects and morphisms sit over it.
    GroupoidPtr up;
    std::vector<int> obj_up;     // object of the parent
    std::vector<int> obj_loop;   // loop groupoids: the loop, a parent morphism
    std::vector<int> obj_sign;   // double covers: the sign
    std::vector<int> mor_up;     // parent morphism
    std::vector<int> loop_obj;   // loop groupoids: parent morphism -> object, or -1

    std::vector<std::string> obj_names, mor_names;

    int nmor() const { return (int)src.size(); }
    int compose(int m2, int m1) const {
        if (tgt[m1] != src[m2]) return -1;
        return comp[(std::size_t)m1 * maxout + locpos[m2]];
    }
    bool is_identity(int m) const { return ident[src[m]] == m; }
    int sign(int m) const { return grade[m]; }
    std::vector<int> aut(int x) const;
    int find_morphism(const std::string& name) const;  // -1 if absent
};

struct Functor {
    GroupoidPtr dom, cod;
    std::vector<int> obj, mor;
};

// Throws std::invalid_argument if F is not a functor (or not grading preserving
// when require_graded is set).
void validate(const Functor& f, bool require_graded = false);

// One object, morphisms the group elements.
GroupoidPtr classifying(const GradedGroup& g);
// X//G from an action table act[g*nx + x].
GroupoidPtr action_groupoid(const GradedGroup& g, int nx, const std::vector<int>& act);

struct DoubleCover {
    GroupoidPtr cover;
    Functor proj;
    Functor deck;
};
// Objects (x, eps), morphisms (omega, eps_source). The cover is ungraded unless
// keep_grading is set, in which case it carries the pulled back grading.
DoubleCover double_cover(const GroupoidPtr& g, bool keep_grading = false);

GroupoidPtr loop_groupoid(const GroupoidPtr& g);
GroupoidPtr quotient_loop_groupoid(const GroupoidPtr& g);
GroupoidPtr unoriented_quotient_loop_groupoid(const GroupoidPtr& g);
// Same objects, degree +1 morphisms only.
GroupoidPtr even_subgroupoid(const GroupoidPtr& g);
GroupoidPtr forget_grading(const GroupoidPtr& g);

// Canonical functors from the loop groupoid of the double cover.
Functor loop_to_quotient(const DoubleCover& dc, const GroupoidPtr& loop_cover, const GroupoidPtr& quot);
Functor loop_to_unoriented(const DoubleCover& dc, const GroupoidPtr& loop_cover, const GroupoidPtr& ref);
// The deck involutions of the loop groupoid of a double cover:
// ((x,e),g) -> ((x,-e),g) and ((x,e),g) -> ((x,-e),g^-1).
Functor loop_deck(const DoubleCover& dc, const GroupoidPtr& loop_cover, bool invert_loop);
// Inclusion of a subgroupoid built by even_subgroupoid, or a loop groupoid of it
// into the corresponding loop groupoid of the parent.
Functor inclusion(const GroupoidPtr& sub, const GroupoidPtr& ambient);
Functor identity_functor(const GroupoidPtr& g);

enum class ComponentKind { ODD_LOOP, PAIRED, EVEN };
std::string to_string(ComponentKind k);

struct Component {
    std::vector<int> objects;
    int base = 0;
    std::vector<int> aut;  // automorphisms of base
    ComponentKind kind = ComponentKind::EVEN;
};
std::vector<Component> components(const Groupoid& g);

// First violated category axiom, if any.
std::optional<std::string> check_axioms(const Groupoid& g);

}  // namespace tg
