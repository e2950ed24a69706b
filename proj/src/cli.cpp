#include "tg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tg/algebra.hpp"
#include "tg/counting.hpp"
#include "tg/parallel.hpp"
#include "tg/snf.hpp"
#include "tg/torsion.hpp"
#include "tg/transgress.hpp"
#include "tg/verify.hpp"

#ifndef TG_MANIFEST_DIR
#define TG_MANIFEST_DIR "manifests"
#endif

namespace tg {

namespace {

struct Config {
    std::string group, cocycle, map = "tau_ref", variant = "D_REF", twist = "pi", out, format = "json";
    std::string manifest;
    int degree = -1, order = 4, threads = 0;
    std::uint64_t seed = 0, budget = 20'000'000;
};

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    return nlohmann::json::parse(f);
}

GradedGroup load_group(const std::string& g) {
    if (g.empty()) throw std::invalid_argument("--group is required");
    if (g.front() == '{') return build_graded_group(nlohmann::json::parse(g));
    if (std::filesystem::is_regular_file(g)) return build_graded_group(read_json_file(g));
    return build_graded_group(g);
}

// One cocycle source: a JSON file, "solver:i", "random", or a builtin name.
Cochain load_cocycle(const Config& c, const GradedGroup& grp, const GroupoidPtr& bg, int degree, Twist twist) {
    const std::string& s = c.cocycle;
    if (s.empty()) throw std::invalid_argument("--cocycle is required");
    Cochain out;
    if (std::filesystem::is_regular_file(s)) {
        out = cochain_from_json(bg, read_json_file(s));
        if (out.twist() != twist)
            throw std::invalid_argument("cocycle file has twist " + to_string(out.twist()) + ", expected " +
                                        to_string(twist));
    } else if (s.rfind("solver:", 0) == 0 || s == "random") {
        auto b = cocycle_basis(bg, degree, twist, c.order, c.budget);
        if (s == "random") {
            out = random_cocycle(bg, b, c.seed);
        } else {
            std::size_t i = std::stoul(s.substr(7));
            if (i >= b.cocycles.size())
                throw std::invalid_argument("solver basis has " + std::to_string(b.cocycles.size()) + " elements");
            out = b.cocycles[i];
        }
    } else {
        out = builtin_cocycle(grp, bg, s, degree, twist);
    }
    require_cocycle(out, "input");
    return out;
}

Twist map_twist(const std::string& m) {
    if (m == "tau" || m == "tau_ref_tilde") return Twist::NONE;
    if (m == "tau_pi" || m == "tau_ref") return Twist::PI;
    throw std::invalid_argument("unknown map '" + m + "'");
}

nlohmann::json group_info(const GradedGroup& grp) {
    auto bg = classifying(grp);
    nlohmann::json j{{"label", grp.label}, {"order", grp.n}, {"names", grp.names}, {"grading", grp.sign}};
    std::vector<int> k = grp.kernel();
    j["kernel_order"] = k.size();
    j["homs"] = nlohmann::json::object();
    for (auto& h : grp.homs) j["homs"][h.name] = h.k;
    auto sizes = [](const GroupoidPtr& g) {
        return nlohmann::json{{"objects", g->nobj}, {"morphisms", g->nmor()}, {"components", components(*g).size()}};
    };
    j["loop"] = sizes(loop_groupoid(bg));
    j["quotient_loop"] = sizes(quotient_loop_groupoid(bg));
    j["unoriented_quotient_loop"] = sizes(unoriented_quotient_loop_groupoid(bg));
    return j;
}

int cmd_info(const Config& c, std::ostream& out) {
    out << group_info(load_group(c.group)).dump(2) << "\n";
    return EXIT_OK;
}

int cmd_cocycles(const Config& c, std::ostream& out) {
    auto grp = load_group(c.group);
    auto bg = classifying(grp);
    int deg = c.degree < 0 ? 2 : c.degree;
    auto b = cocycle_basis(bg, deg, parse_twist(c.twist), c.order, c.budget);
    nlohmann::json j{{"degree", deg}, {"twist", c.twist}, {"order", c.order}};
    for (auto& f : b.cohomology) j["cohomology"].push_back(f.get_str());
    if (b.cohomology.empty()) j["cohomology"] = nlohmann::json::array();
    j["cocycles"] = nlohmann::json::array();
    for (auto& z : b.cocycles) j["cocycles"].push_back(to_json(z));
    out << j.dump(2) << "\n";
    return EXIT_OK;
}

int cmd_transgress(const Config& c, std::ostream& out) {
    auto grp = load_group(c.group);
    auto bg = classifying(grp);
    Cochain lam = load_cocycle(c, grp, bg, c.degree < 0 ? 2 : c.degree, map_twist(c.map));
    Cochain r;
    if (c.map == "tau") r = tau(lam, loop_groupoid(bg));
    else if (c.map == "tau_pi") r = tau_pi(lam, quotient_loop_groupoid(bg));
    else if (c.map == "tau_ref") r = tau_ref(lam, unoriented_quotient_loop_groupoid(bg));
    else r = tau_ref_tilde(lam, unoriented_quotient_loop_groupoid(bg));
    out << to_json(r).dump(2) << "\n";
    return EXIT_OK;
}

int emit_reports(const Config& c, const std::vector<CountReport>& rs, const nlohmann::json& extra, std::ostream& out) {
    bool ok = true;
    for (auto& r : rs) ok = ok && r.agree;
    if (c.format == "text") {
        for (auto& r : rs) out << to_text(r);
        for (auto& [k, v] : extra.items()) out << k << " " << v.dump() << "\n";
    } else {
        nlohmann::json j = nlohmann::json::array();
        for (auto& r : rs) j.push_back(to_json(r));
        if (!extra.empty()) j.push_back(extra);
        out << j.dump(2) << "\n";
    }
    return ok ? EXIT_OK : EXIT_VERIFY_FAILED;
}

int cmd_count(const Config& c, std::ostream& out) {
    auto grp = load_group(c.group);
    auto bg = classifying(grp);
    int deg = c.degree < 0 ? 2 : c.degree;
    Cochain z = load_cocycle(c, grp, bg, deg, Twist::PI);
    std::vector<CountReport> rs;
    nlohmann::json extra;
    if (deg == 1) {
        rs.push_back(flat_sect_equality(z));
    } else if (deg == 2) {
        rs.push_back(count_simples(grp, bg, z));
        rs.push_back(centre_dim(grp, bg, z));
    } else if (deg == 3) {
        rs.push_back(double_simple_count(bg, z, c.budget));
        Sectors s = one_loop_sectors(bg, z);
        extra["sectors"] = {{"torus", rational_str(s.torus)}, {"klein", rational_str(s.klein)}};
    } else {
        throw std::invalid_argument("count takes cocycles of degree 1, 2 or 3");
    }
    return emit_reports(c, rs, extra, out);
}

int cmd_centre(const Config& c, std::ostream& out) {
    auto grp = load_group(c.group);
    auto bg = classifying(grp);
    Cochain th = load_cocycle(c, grp, bg, 2, Twist::PI);
    CountReport r = centre_dim(grp, bg, th);
    Centre z = centre(build_algebra(bg, th));
    nlohmann::json basis = nlohmann::json::array();
    for (auto& b : z.basis) basis.push_back(to_json(*bg, b));
    return emit_reports(c, {r}, {{"centre_basis", basis}}, out);
}

int cmd_double(const Config& c, std::ostream& out) {
    auto grp = load_group(c.group);
    auto bg = classifying(grp);
    DoubleVariant v = parse_double_variant(c.variant);
    Twist tw = v == DoubleVariant::DD_REF_TILDE ? Twist::NONE : Twist::PI;
    Cochain eta = load_cocycle(c, grp, bg, 3, tw);
    Double d = build_double(bg, eta, v);
    auto w = associativity_witness(d.alg);
    Centre z = centre(d.alg);
    nlohmann::json j{{"variant", to_string(v)},
                     {"dimension", d.loop->nmor()},
                     {"semilinear", d.alg.semilinear()},
                     {"associative", !w},
                     {"centre_dim", z.dim},
                     {"centre_over_reals", z.over_reals}};
    bool ok = !w;
    if (w) j["associativity_witness"] = tuple_str(*d.loop, *w);
    if (v == DoubleVariant::D_REF) {
        CountReport r = double_simple_count(bg, eta, c.budget);
        j["simple_count"] = to_json(r);
        ok = ok && r.agree;
    }
    out << j.dump(2) << "\n";
    return ok ? EXIT_OK : EXIT_VERIFY_FAILED;
}

int cmd_quasicheck(const Config& c, std::ostream& out) {
    auto grp = load_group(c.group);
    auto bg = classifying(grp);
    Cochain eta = load_cocycle(c, grp, bg, 3, Twist::PI);
    auto q = quasi_bialgebra(grp, bg, eta);
    auto check = [](const std::string& w) {
        return w.empty() ? nlohmann::json{{"pass", true}} : nlohmann::json{{"pass", false}, {"witness", w}};
    };
    nlohmann::json j{{"ok", q.ok()},
                     {"conjugation_identity", check(q.conj_identity)},
                     {"compatibility_identity", check(q.compat_identity)},
                     {"multiplicative", check(q.multiplicative)},
                     {"coassociative", check(q.coassociative)}};
    out << j.dump(2) << "\n";
    return q.ok() ? EXIT_OK : EXIT_VERIFY_FAILED;
}

int cmd_torsion(const Config& c, std::ostream& out) {
    auto grp = load_group(c.group);
    auto bg = classifying(grp);
    int deg = c.degree < 0 ? 2 : c.degree;
    if (deg != 2 && deg != 3) throw std::invalid_argument("torsion takes cocycles of degree 2 or 3");
    Cochain z = load_cocycle(c, grp, bg, deg, Twist::PI);
    out << to_tsv(grp, deg == 2 ? torsion_2d(grp, bg, z) : torsion_3d(grp, bg, z));
    return EXIT_OK;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
    std::string path = c.manifest.empty() ? std::string(TG_MANIFEST_DIR) + "/verify_v1.json" : c.manifest;
    auto results = run_manifest(read_json_file(path), c.seed);
    bool ok = true;
    for (auto& r : results) {
        ok = ok && r.pass;
        err << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << r.seconds << " s)\n";
        if (c.format == "text") {
            out << (r.pass ? "PASS " : "FAIL ") << r.name << " " << r.cases;
            if (!r.pass) out << " " << r.witness;
            out << "\n";
        }
    }
    if (c.format != "text") {
        nlohmann::json j{{"manifest", std::filesystem::path(path).filename().string()}, {"seed", c.seed}, {"pass", ok}};
        for (auto& r : results) j["properties"].push_back(to_json(r));
        out << j.dump(2) << "\n";
    }
    return ok ? EXIT_OK : EXIT_VERIFY_FAILED;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Loop transgression of twisted groupoid cocycles"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto common = [&](CLI::App* s) {
        s->add_option("--group", c.group, "group spec (family:param[:grading]), JSON file or inline JSON");
        s->add_option("--cocycle", c.cocycle, "builtin name, JSON file, solver:<i> or random");
        s->add_option("--degree", c.degree, "cocycle degree");
        s->add_option("--order", c.order, "coefficient order k for the solver")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "random seed");
        s->add_option("--out", c.out, "write results here instead of stdout");
        s->add_option("--threads", c.threads, "worker threads (default TRANSGRESS_THREADS or 1)")
            ->check(CLI::NonNegativeNumber);
        s->add_option("--budget", c.budget, "cap on table sizes")->check(CLI::PositiveNumber);
        s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };
    std::map<std::string, CLI::App*> subs;
    for (auto [name, help] : std::vector<std::pair<const char*, const char*>>{
             {"info", "group data and loop groupoid sizes"},
             {"cocycles", "cocycle basis and cohomology over Z/k"},
             {"transgress", "apply a transgression map"},
             {"count", "counting formulas with cross-checks"},
             {"centre", "centre of the Real twisted group algebra"},
             {"double", "build a double and check it"},
             {"quasicheck", "Real quasi-bialgebra checks"},
             {"torsion", "discrete torsion phase table (TSV)"},
             {"verify", "run the verification suite"}}) {
        subs[name] = app.add_subcommand(name, help);
        common(subs[name]);
    }
    subs["cocycles"]->add_option("--twist", c.twist, "pi or none")->check(CLI::IsMember({"pi", "none"}));
    subs["transgress"]
        ->add_option("--map", c.map, "tau, tau_pi, tau_ref or tau_ref_tilde")
        ->check(CLI::IsMember({"tau", "tau_pi", "tau_ref", "tau_ref_tilde"}));
    subs["double"]
        ->add_option("--variant", c.variant, "D_REF, DD_QUOT or DD_REF_TILDE")
        ->check(CLI::IsMember({"D_REF", "DD_QUOT", "DD_REF_TILDE"}));
    subs["verify"]->add_option("--manifest", c.manifest, "manifest path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? EXIT_OK : EXIT_INPUT;
    }

    std::unique_ptr<std::ofstream> file;
    std::ostream* dst = &out;
    try {
        if (c.threads > 0) set_thread_count(c.threads);
        if (!c.out.empty()) {
            file = std::make_unique<std::ofstream>(c.out);
            if (!*file) throw std::invalid_argument("cannot write " + c.out);
            dst = file.get();
        }
        std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "info") return cmd_info(c, *dst);
        if (cmd == "cocycles") return cmd_cocycles(c, *dst);
        if (cmd == "transgress") return cmd_transgress(c, *dst);
        if (cmd == "count") return cmd_count(c, *dst);
        if (cmd == "centre") return cmd_centre(c, *dst);
        if (cmd == "double") return cmd_double(c, *dst);
        if (cmd == "quasicheck") return cmd_quasicheck(c, *dst);
        if (cmd == "torsion") return cmd_torsion(c, *dst);
        return cmd_verify(c, *dst, err);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return EXIT_BUDGET;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const std::out_of_range& e) {
        err << "input error: " << e.what() << "\n";
        return EXIT_INPUT;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_VERIFY_FAILED;
    }
}

}  // namespace tg
