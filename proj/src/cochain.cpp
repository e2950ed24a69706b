#include "tg/cochain.hpp"

#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace tg {

std::string to_string(Twist t) { return t == Twist::PI ? "pi" : "none"; }

Twist parse_twist(const std::string& s) {
    if (s == "pi" || s == "PI") return Twist::PI;
    if (s == "none" || s == "NONE") return Twist::NONE;
    throw std::invalid_argument("unknown twist '" + s + "'");
}

Cochain::Cochain(GroupoidPtr g, int degree, Twist twist) : g_(std::move(g)), n_(degree), tw_(twist) {
    if (degree < 0 || degree > 5) throw std::invalid_argument("cochain degree out of range");
    if (twist == Twist::PI && !g_->graded) throw std::invalid_argument("twisted cochain on an ungraded groupoid");
    std::size_t size;
    if (n_ == 0) {
        size = g_->nobj;
    } else {
        stride_.assign(n_, 1);
        for (int k = n_ - 2; k >= 0; --k) stride_[k] = stride_[k + 1] * g_->maxout;
        size = (std::size_t)g_->nmor() * stride_[0];
    }
    vals_.assign(size, Phase());
}

std::size_t Cochain::key(const int* t) const {
    if (n_ == 0) return t[0];
    std::size_t k = (std::size_t)t[0] * stride_[0];
    for (int i = 1; i < n_; ++i) k += (std::size_t)g_->locpos[t[i]] * stride_[i];
    return k;
}

Cochain Cochain::operator+(const Cochain& o) const {
    if (g_ != o.g_ || n_ != o.n_ || tw_ != o.tw_) throw std::invalid_argument("adding incompatible cochains");
    Cochain r = *this;
    for (std::size_t i = 0; i < vals_.size(); ++i) r.vals_[i] += o.vals_[i];
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    for (auto& v : r.vals_) v = -v;
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::scaled(std::int64_t k) const {
    Cochain r = *this;
    for (auto& v : r.vals_) v = v.scale(k);
    return r;
}

bool Cochain::operator==(const Cochain& o) const {
    return g_ == o.g_ && n_ == o.n_ && tw_ == o.tw_ && vals_ == o.vals_;
}

bool Cochain::is_zero() const {
    for (auto& v : vals_)
        if (!v.is_zero()) return false;
    return true;
}

namespace {

template <class F>
void walk(const Groupoid& g, int n, int* buf, int depth, F& f) {
    if (depth == n) {
        f((const int*)buf);
        return;
    }
    int from = g.tgt[buf[depth - 1]];
    for (int m : g.out[from]) {
        if (g.is_identity(m)) continue;
        buf[depth] = m;
        walk(g, n, buf, depth + 1, f);
    }
}

template <class F>
void walk_all(const Groupoid& g, int n, F&& f) {
    int buf[8];
    if (n == 0) {
        for (int x = 0; x < g.nobj; ++x) {
            buf[0] = x;
            f((const int*)buf);
        }
        return;
    }
    for (int m = 0; m < g.nmor(); ++m) {
        if (g.is_identity(m)) continue;
        buf[0] = m;
        walk(g, n, buf, 1, f);
    }
}

// Value of d c on a tuple of length c.degree()+1.
Phase d_at(const Cochain& c, const int* t) {
    const Groupoid& g = *c.groupoid();
    const int n = c.degree() + 1;
    int buf[8];
    Phase v;
    if (n == 1) {
        int m = t[0];
        buf[0] = g.src[m];
        v = c.at(buf).act(c.twist_sign(m));
        buf[0] = g.tgt[m];
        return v - c.at(buf);
    }
    v = c.at(t).act(c.twist_sign(t[n - 1]));
    for (int j = 1; j < n; ++j) {
        int k = 0;
        for (int i = 0; i < n; ++i) {
            if (i == j - 1) continue;
            buf[k++] = i == j ? g.compose(t[j], t[j - 1]) : t[i];
        }
        Phase term = c.at(buf);
        v += ((n - j) % 2) ? -term : term;
    }
    Phase last = c.at(t + 1);
    v += (n % 2) ? -last : last;
    return v;
}

}  // namespace

void for_each_tuple(const Groupoid& g, int n, const std::function<void(const int*)>& f) { walk_all(g, n, f); }

TupleList nondegenerate_tuples(const Groupoid& g, int n) {
    TupleList l;
    l.n = n;
    const int w = std::max(n, 1);
    walk_all(g, n, [&](const int* t) { l.data.insert(l.data.end(), t, t + w); });
    return l;
}

std::uint64_t count_nondegenerate(const Groupoid& g, int n) {
    if (n == 0) return g.nobj;
    // paths of length n in the graph of non-identity morphisms, by target object
    std::vector<std::uint64_t> ways(g.nobj, 1), next(g.nobj);
    for (int step = 0; step < n; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (int m = 0; m < g.nmor(); ++m)
            if (!g.is_identity(m)) next[g.tgt[m]] += ways[g.src[m]];
        ways.swap(next);
    }
    return std::accumulate(ways.begin(), ways.end(), std::uint64_t(0));
}

Cochain differential(const Cochain& c) {
    Cochain d(c.groupoid(), c.degree() + 1, c.twist());
    walk_all(*c.groupoid(), c.degree() + 1, [&](const int* t) { d.set(t, d_at(c, t)); });
    return d;
}

std::optional<std::vector<int>> cocycle_witness(const Cochain& c) {
    std::optional<std::vector<int>> w;
    const int n = c.degree() + 1;
    // walk_all has no early exit; the witness is the first failing tuple
    walk_all(*c.groupoid(), n, [&](const int* t) {
        if (!w && !d_at(c, t).is_zero()) w = std::vector<int>(t, t + n);
    });
    return w;
}

std::string tuple_str(const Groupoid& g, const std::vector<int>& t) {
    std::string s = "[";
    for (std::size_t i = t.size(); i-- > 0;) {
        s += g.mor_names[t[i]];
        if (i) s += "|";
    }
    return s + "]";
}

void require_cocycle(const Cochain& c, const std::string& what) {
    if (auto w = cocycle_witness(c)) {
        Cochain d = differential(c);
        throw std::invalid_argument(what + " is not a cocycle: d = " + d.at(*w).str() + " at " +
                                    tuple_str(*c.groupoid(), *w));
    }
}

Cochain pullback(const Functor& f, const Cochain& c, std::optional<Twist> twist) {
    if (f.cod != c.groupoid()) throw std::invalid_argument("pullback along a functor with the wrong codomain");
    Cochain r(f.dom, c.degree(), twist.value_or(c.twist()));
    int buf[8];
    const int n = c.degree();
    walk_all(*f.dom, n, [&](const int* t) {
        if (n == 0) {
            buf[0] = f.obj[t[0]];
        } else {
            for (int i = 0; i < n; ++i) buf[i] = f.mor[t[i]];
        }
        r.set(t, c.at(buf));
    });
    return r;
}

PhaseSum integrate(const Cochain& beta) {
    if (beta.degree() != 0) throw std::invalid_argument("only degree 0 cochains can be integrated");
    require_cocycle(beta, "integrand");
    const Groupoid& g = *beta.groupoid();
    PhaseSum s;
    for (int x = 0; x < g.nobj; ++x) {
        int buf[1] = {x};
        s += PhaseSum(beta.at(buf), mpq_class(1, (unsigned long)g.out[x].size()));
    }
    return s;
}

namespace {

const CyclicHom& find_hom(const GradedGroup& grp, const std::string& name) {
    if (grp.homs.empty()) throw std::invalid_argument("group " + grp.label + " has no cyclic homomorphisms");
    if (name.empty()) return grp.homs.front();
    for (auto& h : grp.homs)
        if (h.name == name) return h;
    std::string known;
    for (auto& h : grp.homs) known += " " + h.name;
    throw std::invalid_argument("unknown homomorphism '" + name + "'; available:" + known);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto p = s.find(sep, start);
        parts.push_back(s.substr(start, p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return parts;
}

}  // namespace

Cochain builtin_cocycle(const GradedGroup& grp, const GroupoidPtr& bg, const std::string& spec, int degree,
                        Twist twist) {
    auto parts = split(spec, ':');
    const std::string& name = parts[0];
    const Groupoid& g = *bg;
    if (g.nobj != 1 || g.nmor() != grp.n) throw std::invalid_argument("builtin cocycles live on B(G)");
    auto check_degree = [&](int want) {
        if (degree >= 0 && degree != want)
            throw std::invalid_argument(name + " has degree " + std::to_string(want) + ", not " +
                                        std::to_string(degree));
    };
    Cochain c;
    if (name == "trivial" || name == "zero") {
        c = Cochain(bg, degree < 0 ? 2 : degree, twist);
    } else if (name == "quaternionic") {
        check_degree(2);
        if (!g.graded) throw std::invalid_argument("quaternionic needs a graded group");
        c = Cochain(bg, 2, twist);
        walk_all(g, 2, [&](const int* t) {
            if (g.grade[t[0]] < 0 && g.grade[t[1]] < 0) c.set(t, Phase::half());
        });
    } else if (name == "cyclic3") {
        check_degree(3);
        const CyclicHom& h = find_hom(grp, parts.size() > 1 ? parts[1] : "");
        c = Cochain(bg, 3, twist);
        walk_all(g, 3, [&](const int* t) {
            std::int64_t a = h.value[t[2]], b = h.value[t[1]], x = h.value[t[0]];
            c.set(t, Phase(a * ((b + x) / h.k), h.k));
        });
    } else if (name == "bichar" || name == "cyclic2_pulled") {
        check_degree(2);
        if (parts.size() != 3) throw std::invalid_argument("bichar needs two homomorphism names");
        const CyclicHom& h1 = find_hom(grp, parts[1]);
        const CyclicHom& h2 = find_hom(grp, parts[2]);
        std::int64_t q = std::gcd(h1.k, h2.k);
        c = Cochain(bg, 2, twist);
        walk_all(g, 2, [&](const int* t) { c.set(t, Phase((std::int64_t)h1.value[t[1]] * h2.value[t[0]], q)); });
    } else {
        throw std::invalid_argument("unknown builtin cocycle '" + name + "'");
    }
    require_cocycle(c, "builtin " + spec);
    return c;
}

Cochain random_cochain(const GroupoidPtr& g, int degree, Twist twist, int order, std::uint64_t seed) {
    if (order < 1) throw std::invalid_argument("order must be positive");
    std::mt19937_64 rng(seed);
    Cochain c(g, degree, twist);
    walk_all(*g, degree, [&](const int* t) { c.set(t, Phase((std::int64_t)(rng() % (std::uint64_t)order), order)); });
    return c;
}

nlohmann::json to_json(const Cochain& c) {
    const Groupoid& g = *c.groupoid();
    nlohmann::json vals = nlohmann::json::array();
    mpz_class order = 1;
    const int n = c.degree();
    walk_all(g, n, [&](const int* t) {
        Phase p = c.at(t);
        if (p.is_zero()) return;
        mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), p.den().get_mpz_t());
        nlohmann::json tup = nlohmann::json::array();
        if (n == 0) {
            tup.push_back(g.obj_names[t[0]]);
        } else {
            for (int i = n - 1; i >= 0; --i) tup.push_back(g.mor_names[t[i]]);
        }
        vals.push_back({{"tuple", tup}, {"phase", p.str()}});
    });
    return {{"degree", n},
            {"twist", to_string(c.twist())},
            {"order", order.fits_slong_p() ? nlohmann::json(order.get_si()) : nlohmann::json(order.get_str())},
            {"groupoid", g.label},
            {"values", vals}};
}

Cochain cochain_from_json(const GroupoidPtr& gp, const nlohmann::json& j) {
    const Groupoid& g = *gp;
    if (!j.is_object() || !j.contains("degree") || !j.contains("values"))
        throw std::invalid_argument("cocycle JSON needs 'degree' and 'values'");
    int n = j.at("degree").get<int>();
    Twist tw = parse_twist(j.value("twist", std::string("none")));
    std::int64_t order = 0;
    if (j.contains("order") && j.at("order").is_number_integer()) order = j.at("order").get<std::int64_t>();
    Cochain c(gp, n, tw);
    std::unordered_map<std::string, int> mor, obj;
    for (int m = 0; m < g.nmor(); ++m) mor[g.mor_names[m]] = m;
    for (int x = 0; x < g.nobj; ++x) obj[g.obj_names[x]] = x;
    for (auto& e : j.at("values")) {
        auto names = e.at("tuple").get<std::vector<std::string>>();
        if ((int)names.size() != std::max(n, 1)) throw std::invalid_argument("tuple of wrong length in cocycle JSON");
        std::vector<int> t(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) {
            const auto& table = n == 0 ? obj : mor;
            auto it = table.find(names[names.size() - 1 - i]);
            if (it == table.end()) throw std::invalid_argument("unknown name '" + names[names.size() - 1 - i] + "'");
            t[i] = it->second;
        }
        if (n > 0) {
            for (int i = 0; i < n; ++i)
                if (g.is_identity(t[i])) throw std::invalid_argument("non-normalized entry " + tuple_str(g, t));
            for (int i = 1; i < n; ++i)
                if (g.tgt[t[i - 1]] != g.src[t[i]]) throw std::invalid_argument("non-composable tuple " + tuple_str(g, t));
        }
        Phase p = Phase::parse(e.at("phase").get<std::string>());
        if (order > 0 && (!p.is_small() || order % p.small_den() != 0))
            throw std::invalid_argument("phase " + p.str() + " does not have order dividing " + std::to_string(order));
        c.set(t, p);
    }
    return c;
}

}  // namespace tg
