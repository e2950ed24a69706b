// Normalized cochains on finite groupoids with values in Q/Z.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tg/group.hpp"
#include "tg/groupoid.hpp"
#include "tg/phase.hpp"

namespace tg {

enum class Twist { NONE, PI };
std::string to_string(Twist t);
Twist parse_twist(const std::string& s);

// Tuples are stored in application order: t[0] = m_1 is applied first, so the
// bar notation [m_n|...|m_1] reads t backwards. Degree 0 cochains are indexed
// by objects and their "tuple" is the single object id.
class Cochain {
public:
    Cochain() = default;
    Cochain(GroupoidPtr g, int degree, Twist twist);

    const GroupoidPtr& groupoid() const { return g_; }
    int degree() const { return n_; }
    Twist twist() const { return tw_; }

    std::size_t key(const int* t) const;
    Phase at(const int* t) const { return vals_[key(t)]; }
    Phase at(const std::vector<int>& t) const { return at(t.data()); }
    void set(const int* t, const Phase& p) { vals_[key(t)] = p; }
    void set(const std::vector<int>& t, const Phase& p) { set(t.data(), p); }
    Phase value_at_key(std::size_t k) const { return vals_[k]; }
    void set_at_key(std::size_t k, const Phase& p) { vals_[k] = p; }
    std::size_t table_size() const { return vals_.size(); }

    // Sign of the twist on morphism m: its grade if twisted, else +1.
    int twist_sign(int m) const { return tw_ == Twist::PI ? g_->grade[m] : 1; }

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain scaled(std::int64_t k) const;
    bool operator==(const Cochain& o) const;
    bool operator!=(const Cochain& o) const { return !(*this == o); }
    bool is_zero() const;

private:
    GroupoidPtr g_;
    int n_ = 0;
    Twist tw_ = Twist::NONE;
    std::vector<std::size_t> stride_;
    std::vector<Phase> vals_;
};

// Flat list of composable tuples of a fixed length in application order.
struct TupleList {
    int n = 0;
    std::vector<int> data;
    std::size_t size() const { return n == 0 ? data.size() : data.size() / n; }
    const int* operator[](std::size_t i) const { return data.data() + i * std::max(n, 1); }
};

// All composable tuples of length n with no identity entry. For n = 0 this is
// the list of objects.
TupleList nondegenerate_tuples(const Groupoid& g, int n);
// Number of such tuples, without materializing them.
std::uint64_t count_nondegenerate(const Groupoid& g, int n);

void for_each_tuple(const Groupoid& g, int n, const std::function<void(const int*)>& f);

Cochain differential(const Cochain& c);
// First tuple where d c is nonzero.
std::optional<std::vector<int>> cocycle_witness(const Cochain& c);
inline bool is_cocycle(const Cochain& c) { return !cocycle_witness(c); }
// Throws std::invalid_argument naming the witness.
void require_cocycle(const Cochain& c, const std::string& what);

Cochain pullback(const Functor& f, const Cochain& c, std::optional<Twist> twist = std::nullopt);

// Sum over objects of beta(x)/|x->|, which is the integral for closed beta.
PhaseSum integrate(const Cochain& beta);

// Builtin cocycles on B(G). Names: trivial, quaternionic, cyclic3[:hom],
// bichar:hom1:hom2 (also spelled cyclic2_pulled).
Cochain builtin_cocycle(const GradedGroup& grp, const GroupoidPtr& bg, const std::string& spec, int degree = -1,
                        Twist twist = Twist::NONE);

Cochain random_cochain(const GroupoidPtr& g, int degree, Twist twist, int order, std::uint64_t seed);

// Cocycle JSON, tuples written as morphism names in bar order [m_n,...,m_1].
nlohmann::json to_json(const Cochain& c);
Cochain cochain_from_json(const GroupoidPtr& g, const nlohmann::json& j);

// Tuple in bar order as readable text.
std::string tuple_str(const Groupoid& g, const std::vector<int>& t);

}  // namespace tg
