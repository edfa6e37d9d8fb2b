#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hv/acceptance.hpp"
#include "hv/lab.hpp"
#include "hv/operators.hpp"

using namespace hv;
using nlohmann::ordered_json;

namespace {

struct Common {
    std::string config_path, out_dir;
    std::optional<std::size_t> order;
    std::optional<int> J, L;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "JSON run configuration file");
    cmd->add_option("--out", c.out_dir, "directory for artifacts");
    cmd->add_option("--order", c.order, "truncation order");
    cmd->add_option("--ladder", c.J, "radius-ladder depth J");
    cmd->add_option("--depth", c.L, "Carleson box depth L");
    cmd->add_option("--tol", c.tol, "convergence tolerance");
    cmd->add_option("--seed", c.seed, "random seed");
}

RunConfig build_config(const Common& c) {
    RunConfig cfg;
    if (!c.config_path.empty()) cfg = RunConfig::load(c.config_path);
    cfg.threads = RunConfig::env_threads();
    if (c.order) cfg.order = *c.order;
    if (c.J) cfg.J = *c.J;
    if (c.L) cfg.L = *c.L;
    if (c.tol) cfg.tol_converge = *c.tol;
    if (c.seed) cfg.seed = *c.seed;
    if (cfg.J < 1 || cfg.J > 40) throw invalid_spec("--ladder out of range (1..40)");
    if (cfg.L < 0 || cfg.L > 24) throw invalid_spec("--depth out of range (0..24)");
    if (cfg.order < 1 || cfg.order > MAX_ORDER) throw invalid_spec("--order out of range");
    return cfg;
}

void append_series_body(ordered_json& j, const TaylorSeries& f) {
    j["order"] = f.order();
    j["hint"] = f.hint.describe();
    ordered_json head = ordered_json::array();
    for (std::size_t k = 0; k <= std::min<std::size_t>(f.order(), 7); ++k)
        head.push_back(ordered_json::array({f.a[k].real(), f.a[k].imag()}));
    j["head"] = head;
}

ordered_json series_meta(const FunctionSpec& spec, const TaylorSeries& f) {
    ordered_json j;
    j["spec"] = spec.to_json();
    append_series_body(j, f);
    return j;
}

void write_series(const TaylorSeries& f, const ordered_json& meta, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    Table t;
    t.name = "coefficients";
    t.columns = {"k", "re", "im"};
    for (std::size_t k = 0; k < f.a.size(); ++k)
        t.rows.push_back({double(k), f.a[k].real(), f.a[k].imag()});
    write_text_atomic(dir + "/coefficients.csv", t.to_csv());
    write_text_atomic(dir + "/meta.json", meta.dump(2) + "\n");
}

int do_realize(const Common& com, const std::string& fspec) {
    RunConfig cfg = build_config(com);
    FunctionSpec spec = FunctionSpec::parse_string(fspec);
    TaylorSeries f = realize(spec, cfg.order);
    f.validate();
    ordered_json meta = series_meta(spec, f);
    std::printf("%s\n", meta.dump(2).c_str());
    if (!com.out_dir.empty()) write_series(f, meta, com.out_dir);
    return 0;
}

int do_apply(const Common& com, const std::string& opname, const std::string& gspec,
             const std::string& fspec, std::optional<std::size_t> cap) {
    RunConfig cfg = build_config(com);
    FunctionSpec fs = FunctionSpec::parse_string(fspec);
    TaylorSeries f = realize(fs, cfg.order);
    const std::size_t c = cap ? *cap : FULL_DEGREE;

    TaylorSeries out;
    TaylorSeries g;
    FunctionSpec gs;
    if (opname == "cesaro") {
        out = cesaro(f);
    } else {
        if (gspec.empty()) throw invalid_spec("--g is required for Tg/Sg/Mg");
        gs = FunctionSpec::parse_string(gspec);
        g = realize(gs, cfg.order);
        if (opname == "Tg")
            out = volterra(g, f, c);
        else if (opname == "Sg")
            out = companion(g, f, c);
        else if (opname == "Mg")
            out = multiply(g, f, c);
        else
            throw invalid_spec("--op must be one of Tg, Sg, Mg, cesaro");
    }

    ordered_json meta;
    meta["op"] = opname;
    meta["f"] = fs.to_json();
    if (opname != "cesaro") {
        OperatorReport r = describe_application(opname, g, f, out, c);
        meta["g"] = gs.to_json();
        meta["g_order"] = r.g_order;
        meta["f_order"] = r.f_order;
        meta["out_order"] = r.out_order;
        meta["discarded"] = r.discarded;
        meta["ibp_defect"] = r.ibp;
    }
    append_series_body(meta, out);
    std::printf("%s\n", meta.dump(2).c_str());
    if (!com.out_dir.empty()) write_series(out, meta, com.out_dir);
    return 0;
}

int do_norm(const Common& com, const std::string& space, const std::string& fspec, double alpha,
            double domain_p, const std::string& gspec, std::optional<std::size_t> angles) {
    RunConfig cfg = build_config(com);
    SpaceSpec sp = parse_space(space);
    FunctionSpec fs = FunctionSpec::parse_string(fspec);
    TaylorSeries f = realize(fs, cfg.order);

    SpaceContext cx;
    cx.alpha = alpha;
    cx.domain_p = domain_p;
    cx.ladder.J = cfg.J;
    cx.ladder.converge_tol = cfg.tol_converge;
    cx.bmoa.J = cfg.J;
    cx.bmoa.angles = angles ? *angles : cfg.angles.value_or(64);
    cx.carleson_depth = cfg.L;
    TaylorSeries symbol;
    if (!gspec.empty()) {
        symbol = realize(FunctionSpec::parse_string(gspec), cfg.order);
        cx.symbol = &symbol;
    }

    NormEstimate est = space_norm(sp, f, cx);
    std::printf("%s\n", fmt17(est.value).c_str());
    if (!com.out_dir.empty()) {
        namespace fs2 = std::filesystem;
        fs2::create_directories(com.out_dir);
        ordered_json j;
        j["space"] = space;
        j["f"] = fs.to_json();
        j["order"] = cfg.order;
        j["estimate"] = est.to_json();
        write_text_atomic(com.out_dir + "/estimate.json", j.dump(2) + "\n");
    }
    return est.safe_count == 0 ? 3 : 0;
}

int do_experiment(const Common& com, const std::string& name, const nlohmann::json& args) {
    RunConfig cfg = build_config(com);
    const auto& known = experiment_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
        std::string all;
        for (const auto& n : known) all += (all.empty() ? "" : ", ") + n;
        throw invalid_spec("unknown experiment \"" + name + "\" (have: " + all + ")");
    }
    ExperimentReport rep = run_named_experiment(name, args, cfg);
    for (const auto& [label, est] : rep.verdicts)
        std::printf("%-24s %-13s value %s\n", label.c_str(), verdict_name(est.status),
                    fmt17(est.value).c_str());
    for (const auto& n : rep.notes) std::printf("note: %s\n", n.c_str());
    std::printf("expectation: %s\n", rep.expectation.c_str());
    std::printf("%s: %s\n", rep.id.c_str(), rep.passed ? "PASS" : "FAIL");
    if (!com.out_dir.empty()) write_report(rep, com.out_dir);
    return rep.passed ? 0 : 1;
}

int do_suite(const Common& com, const std::string& target) {
    RunConfig cfg = build_config(com);
    if (target != "paper-acceptance")
        throw invalid_spec("unknown suite \"" + target + "\" (have: paper-acceptance)");
    const std::string out = com.out_dir.empty() ? "acceptance_out" : com.out_dir;
    const int failures = run_suite(cfg, out);
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for analytic function spaces on the unit disk"};
    app.require_subcommand(1);
    int rc = 0;

    Common com_realize;
    std::string realize_f;
    auto* cmd_realize = app.add_subcommand("realize", "realize a function spec as coefficients");
    add_common(cmd_realize, com_realize);
    cmd_realize->add_option("--f", realize_f, "function spec (catalog name or inline JSON)")
        ->required();
    cmd_realize->callback([&] { rc = do_realize(com_realize, realize_f); });

    Common com_apply;
    std::string apply_op, apply_g, apply_f;
    std::optional<std::size_t> apply_cap;
    auto* cmd_apply = app.add_subcommand("apply-op", "apply an operator to a function");
    add_common(cmd_apply, com_apply);
    cmd_apply->add_option("--op", apply_op, "Tg, Sg, Mg, or cesaro")->required();
    cmd_apply->add_option("--g", apply_g, "symbol spec");
    cmd_apply->add_option("--f", apply_f, "argument spec")->required();
    cmd_apply->add_option("--cap", apply_cap, "output order cap");
    cmd_apply->callback([&] { rc = do_apply(com_apply, apply_op, apply_g, apply_f, apply_cap); });

    Common com_norm;
    std::string norm_space, norm_f, norm_g;
    double norm_alpha = 0.5, norm_p = 2.0;
    std::optional<std::size_t> norm_angles;
    auto* cmd_norm = app.add_subcommand("norm", "estimate a space norm of a function");
    add_common(cmd_norm, com_norm);
    cmd_norm
        ->add_option("--space", norm_space,
                     "H<p>, Hinf, BMOA, BMOAlog, Bloch, Korenblum, Lipschitz, A21, Bergman, "
                     "OptimalDomain")
        ->required();
    cmd_norm->add_option("--f", norm_f, "function spec")->required();
    cmd_norm->add_option("--alpha", norm_alpha, "Korenblum/Lipschitz exponent");
    cmd_norm->add_option("--p", norm_p, "target exponent for OptimalDomain");
    cmd_norm->add_option("--g", norm_g, "symbol spec for Bergman/OptimalDomain");
    cmd_norm->add_option("--angles", norm_angles, "oscillation-grid angle count");
    cmd_norm->callback([&] {
        rc = do_norm(com_norm, norm_space, norm_f, norm_alpha, norm_p, norm_g, norm_angles);
    });

    Common com_exp;
    std::string exp_name, exp_variant, exp_g, exp_h, exp_f, exp_f1, exp_f2, exp_n, exp_family,
        exp_degrees, exp_args;
    std::optional<double> exp_p, exp_p1, exp_p2, exp_alpha, exp_gamma, exp_delta;
    auto* cmd_exp = app.add_subcommand("experiment", "run a registered experiment");
    cmd_exp->alias("run");
    add_common(cmd_exp, com_exp);
    cmd_exp->add_option("name", exp_name, "experiment name")->required();
    cmd_exp->add_option("--variant", exp_variant, "witness variant (log-pair, shifted-pair)");
    cmd_exp->add_option("--g", exp_g, "symbol spec");
    cmd_exp->add_option("--mult", exp_h, "multiplier spec");
    cmd_exp->add_option("--f", exp_f, "function spec");
    cmd_exp->add_option("--f1", exp_f1, "first pair member");
    cmd_exp->add_option("--f2", exp_f2, "second pair member");
    cmd_exp->add_option("--p", exp_p, "exponent");
    cmd_exp->add_option("--p1", exp_p1, "lower exponent");
    cmd_exp->add_option("--p2", exp_p2, "higher exponent");
    cmd_exp->add_option("--alpha", exp_alpha, "growth exponent");
    cmd_exp->add_option("--gamma", exp_gamma, "source growth exponent");
    cmd_exp->add_option("--delta", exp_delta, "target growth exponent");
    cmd_exp->add_option("--n", exp_n, "monomial list, e.g. 16..1024 or 1,2,8");
    cmd_exp->add_option("--family", exp_family, "family token: catalog or concentration");
    cmd_exp->add_option("--degrees", exp_degrees, "comma list of polynomial degrees");
    cmd_exp->add_option("--args", exp_args, "extra experiment arguments as inline JSON");
    cmd_exp->callback([&] {
        nlohmann::json args = nlohmann::json::object();
        if (!exp_variant.empty()) args["variant"] = exp_variant;
        if (!exp_g.empty()) args["g"] = exp_g;
        if (!exp_h.empty()) args["h"] = exp_h;
        if (!exp_f.empty()) args["f"] = exp_f;
        if (!exp_f1.empty()) args["f1"] = exp_f1;
        if (!exp_f2.empty()) args["f2"] = exp_f2;
        if (exp_p) args["p"] = *exp_p;
        if (exp_p1) args["p1"] = *exp_p1;
        if (exp_p2) args["p2"] = *exp_p2;
        if (exp_alpha) args["alpha"] = *exp_alpha;
        if (exp_gamma) args["gamma"] = *exp_gamma;
        if (exp_delta) args["delta"] = *exp_delta;
        if (!exp_n.empty()) args["n"] = exp_n;
        if (!exp_family.empty()) args["family"] = exp_family;
        if (!exp_degrees.empty()) {
            nlohmann::json arr = nlohmann::json::array();
            for (std::size_t n : parse_n_list(exp_degrees)) arr.push_back(n);
            args["degrees"] = arr;
        }
        if (!exp_args.empty()) {
            nlohmann::json extra = nlohmann::json::parse(exp_args, nullptr, false);
            if (extra.is_discarded() || !extra.is_object())
                throw invalid_spec("--args must be a JSON object");
            args.update(extra);
        }
        rc = do_experiment(com_exp, exp_name, args);
    });

    Common com_suite;
    std::string suite_target = "paper-acceptance";
    auto* cmd_suite = app.add_subcommand("suite", "run an acceptance suite");
    add_common(cmd_suite, com_suite);
    cmd_suite->add_option("target", suite_target, "suite name (paper-acceptance)");
    cmd_suite->callback([&] { rc = do_suite(com_suite, suite_target); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const invalid_spec& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const order_overflow& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return rc;
}
