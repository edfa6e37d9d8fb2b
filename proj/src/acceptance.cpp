#include "hv/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iterator>
#include <numbers>
#include <random>

#include "hv/lab.hpp"
#include "hv/operators.hpp"

namespace hv {

namespace fs = std::filesystem;

namespace {

std::string fmtg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* criterion_name(int id) {
    static const char* names[] = {"",
                                  "cesaro-transform-identity",
                                  "integration-by-parts-defect",
                                  "circle-mean-coefficient-bridge",
                                  "functional-sandwich-quadrature",
                                  "monomial-image-decay",
                                  "log-witness-separation",
                                  "shifted-witness-separation",
                                  "cyclicity-residual-floor",
                                  "multiplier-operator-bound",
                                  "modulus-blowup-image-split",
                                  "oscillation-box-energy",
                                  "deterministic-replay"};
    return names[id];
}

// ---- criterion 1: the averaging operator equals the log-symbol transform ----

CriterionResult c1(const RunConfig& cfg, const fs::path& dir) {
    std::mt19937_64 rng(cfg.seed);
    auto unif = [&] { return double(rng() >> 11) * 0x1.0p-53; };
    TaylorSeries g = realize(catalog_spec("neg_log"), 128);

    ExperimentReport rep;
    rep.id = "cesaro-transform-identity";
    rep.params["trials"] = 20;
    rep.params["degree"] = 64;
    rep.params["seed"] = cfg.seed;
    rep.expectation =
        "for random degree-64 polynomials, the averaging-operator coefficients match the shifted "
        "log-symbol transform coefficients to 1e-13";
    Table t;
    t.name = "defects";
    t.columns = {"trial", "max_diff"};
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> c(65);
        for (auto& x : c) x = cplx(2 * unif() - 1, 2 * unif() - 1);
        TaylorSeries f(std::move(c), TailHint::exact());
        TaylorSeries C = cesaro(f);
        TaylorSeries T = volterra(g, f);
        double d = 0;
        for (std::size_t m = 0; m <= f.order(); ++m)
            d = std::max(d, std::abs(C.a[m] - T.at(m + 1)));
        worst = std::max(worst, d);
        t.rows.push_back({double(trial), d});
    }
    rep.tables.push_back(t);
    rep.passed = worst <= 1e-13;
    write_report(rep, dir.string());
    return {1, criterion_name(1), rep.passed, "max coefficient diff " + fmtg(worst)};
}

// ---- criterion 2: integration-by-parts defect across catalog pairs ----

CriterionResult c2(const RunConfig& cfg, const fs::path& dir) {
    (void)cfg;
    std::vector<std::string> names;
    for (const auto& n : catalog_names())
        if (n != "inv_singular_inner") names.push_back(n);
    std::vector<TaylorSeries> fns;
    fns.reserve(names.size());
    for (const auto& n : names) fns.push_back(realize(catalog_spec(n), 512));

    ExperimentReport rep;
    rep.id = "integration-by-parts-defect";
    rep.params["order"] = 512;
    rep.params["pairs"] = names.size();
    rep.expectation =
        "T_g f + S_g f + g(0) f(0) - g f vanishes coefficientwise to 1e-12 for twenty catalog "
        "pairs at order 512";
    Table t;
    t.name = "defects";
    t.columns = {"pair_index", "defect"};
    double worst = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::size_t j = (i + 3) % names.size();
        const double d = ibp_defect(fns[j], fns[i]);
        rep.notes.push_back(std::to_string(i) + ": g=" + names[j] + " f=" + names[i]);
        worst = std::max(worst, d);
        t.rows.push_back({double(i), d});
    }
    rep.tables.push_back(t);
    rep.passed = worst <= 1e-12;
    write_report(rep, dir.string());
    return {2, criterion_name(2), rep.passed, "worst defect " + fmtg(worst)};
}

// ---- criterion 3: circle means vs coefficient sums at p = 2 ----

CriterionResult c3(const RunConfig& cfg, const fs::path& dir) {
    (void)cfg;
    ExperimentReport rep;
    rep.id = "circle-mean-coefficient-bridge";
    rep.params["order"] = 256;
    rep.expectation =
        "squared circle mean equals the coefficient power sum at every certified ladder radius: "
        "1e-10 absolute below scale 1e3, 1e-10 relative above";
    Table t;
    t.name = "bridge";
    t.columns = {"function_index", "worst_diff", "worst_allowed"};
    bool ok = true;
    double worst_ratio = 0;
    const auto& names = catalog_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        TaylorSeries f = realize(catalog_spec(names[i]), 256);
        double rcut;
        try {
            rcut = eval_cut_radius(f, 1e-6);
        } catch (const numeric_failure&) {
            rcut = 0.75;
        }
        double wd = 0, wa = 1e-10;
        for (int j = 0; j <= 8; ++j) {
            const double r = (j == 0) ? 0.0 : 1.0 - std::ldexp(1.0, -j);
            if (r > rcut) break;
            const double psum = power_sum_sq(f, r);
            const double m = mean_p(f, r, 2.0);
            const double diff = std::abs(m * m - psum);
            const double allowed = (psum <= 1e3) ? 1e-10 : 1e-10 * psum;
            if (diff / allowed > wd / wa) {
                wd = diff;
                wa = allowed;
            }
            if (diff > allowed) ok = false;
        }
        worst_ratio = std::max(worst_ratio, wd / wa);
        rep.notes.push_back(std::to_string(i) + ": " + names[i]);
        t.rows.push_back({double(i), wd, wa});
    }
    rep.tables.push_back(t);
    rep.passed = ok;
    write_report(rep, dir.string());
    return {3, criterion_name(3), ok, "worst diff/allowance " + fmtg(worst_ratio)};
}

// ---- criterion 4: functional sandwich and its quadrature twin ----

CriterionResult c4(const RunConfig& cfg, const fs::path& dir) {
    (void)cfg;
    PolarGrid grid = make_polar_grid(160, 1024);
    ExperimentReport rep;
    rep.id = "functional-sandwich-quadrature";
    rep.params["order"] = 256;
    rep.params["gauss_points"] = 160;
    rep.params["angles"] = 1024;
    rep.expectation =
        "(||f||^2 + |f(0)|^2)/2 <= Phi(f) <= ||f||^2 within 1e-13 of scale, and the area-integral "
        "evaluation of Phi agrees to 1e-8 relative";
    Table t;
    t.name = "sandwich";
    t.columns = {"function_index", "phi", "lower", "upper", "quad_rel_err"};
    bool ok = true;
    double worst = 0;
    const auto& names = catalog_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        TaylorSeries f = realize(catalog_spec(names[i]), 256);
        const double phi = lp_functional(f);
        const double upper = power_sum_sq(f, 1.0);
        const double lower = 0.5 * (upper + std::norm(f.at(0)));
        const double scale = std::max(upper, 1.0);
        if (phi < lower - 1e-13 * scale || phi > upper + 1e-13 * scale) ok = false;
        const double quad = lp_functional_quadrature(f, grid);
        const double rel = std::abs(quad - phi) / std::max(phi, 1.0);
        worst = std::max(worst, rel);
        if (rel > 1e-8) ok = false;
        rep.notes.push_back(std::to_string(i) + ": " + names[i]);
        t.rows.push_back({double(i), phi, lower, upper, rel});
    }
    rep.tables.push_back(t);
    rep.passed = ok;
    write_report(rep, dir.string());
    return {4, criterion_name(4), ok, "worst quadrature rel err " + fmtg(worst)};
}

// ---- criterion 5: monomial image decay against closed forms ----

CriterionResult c5(const RunConfig& cfg, const fs::path& dir) {
    ExperimentReport rep =
        monomial_decay(catalog_spec("neg_log"), 2.0, parse_n_list("1..1024"), cfg);
    write_report(rep, dir.string());
    const double cf = rep.tables.at(0).rows.at(0).at(2);
    const double target = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
    const bool first_ok = std::abs(cf * cf - target) <= 1e-12;
    const double slope = rep.params.contains("slope") ? rep.params["slope"].get<double>() : 0.0;
    const bool pass = rep.passed && first_ok;
    return {5, criterion_name(5), pass,
            "n=1 closed form " + fmtg(cf) + ", completed slope " + fmtg(slope)};
}

// ---- criteria 6/7: witness separations ----

CriterionResult c6(const RunConfig& cfg, const fs::path& dir) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep = witness_report("log-pair", cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_report(rep, dir.string());
    const NormEstimate* h = rep.verdict("f_hardy");
    const NormEstimate* d = rep.verdict("f_domain");
    const bool pass = rep.passed && h && d && h->status == Verdict::diverging &&
                      d->status == Verdict::converged && secs < 30.0;
    return {6, criterion_name(6), pass,
            std::string("hardy ") + verdict_name(h->status) + ", domain " +
                verdict_name(d->status) + " (" + fmtg(d->value) + "), " + fmtg(secs) + "s"};
}

CriterionResult c7(const RunConfig& cfg, const fs::path& dir) {
    ExperimentReport rep = witness_report("shifted-pair", cfg);
    write_report(rep, dir.string());
    const NormEstimate* h = rep.verdict("f_hardy");
    const NormEstimate* d = rep.verdict("f_domain");
    const NormEstimate* l = rep.verdict("lifted_hardy");
    const NormEstimate* k = rep.verdict("companion_carleson");
    return {7, criterion_name(7), rep.passed,
            std::string("hardy ") + verdict_name(h->status) + ", domain " +
                verdict_name(d->status) + ", lifted " + verdict_name(l->status) + ", boxes " +
                verdict_name(k->status)};
}

// ---- criterion 8: cyclicity residual floor + least-squares cross-check ----

CriterionResult c8(const RunConfig& cfg, const fs::path& dir) {
    ExperimentReport rep =
        cyclicity_residual(catalog_spec("singular_inner"), {0, 1, 2, 4, 8, 16, 32, 64}, cfg);
    TaylorSeries S = realize(catalog_spec("singular_inner"), std::max<std::size_t>(cfg.order, 144));
    const std::vector<int> small{0, 1, 2, 4, 8};
    std::vector<CyclicityPoint> pts = cyclicity_curve(S, small);
    Table qt;
    qt.name = "qr_check";
    qt.columns = {"degree", "gram", "qr", "diff"};
    bool qr_ok = true;
    double worst = 0;
    for (const auto& pt : pts) {
        const double q = cyclicity_residual_qr(S, pt.degree);
        const double diff = std::abs(q - pt.residual);
        worst = std::max(worst, diff);
        if (diff > 1e-8) qr_ok = false;
        qt.rows.push_back({double(pt.degree), pt.residual, q, diff});
    }
    rep.tables.push_back(qt);
    write_report(rep, dir.string());
    const bool pass = rep.passed && qr_ok;
    return {8, criterion_name(8), pass,
            "residual at 64: " + fmtg(rep.tables.at(0).rows.back().at(1)) +
                ", gram-vs-qr worst diff " + fmtg(worst)};
}

// ---- criterion 9: multiplier bound, bounded and concentrating families ----

CriterionResult c9(const RunConfig& cfg, const fs::path& dir) {
    ExperimentReport bounded = multiplier_probe(catalog_spec("z"), catalog_spec("one_plus_z_half"),
                                                2.0, default_multiplier_family(), cfg);
    write_report(bounded, (dir / "bounded").string());
    ExperimentReport conc = multiplier_probe(catalog_spec("z"), catalog_spec("neg_log"), 2.0,
                                             concentration_family(), cfg);
    write_report(conc, (dir / "concentration").string());
    const bool pass = bounded.passed && conc.passed;
    return {9, criterion_name(9), pass,
            "bounded max ratio " + fmtg(bounded.params["max_ratio"].get<double>()) +
                ", concentration " + (conc.passed ? "increasing" : "not increasing")};
}

// ---- criterion 10: modulus blow-up with an image split across exponents ----

CriterionResult c10(const RunConfig& cfg, const fs::path& dir) {
    ExperimentReport rep = blaschke_case_probe({cplx(0)}, 1.0, 2.0, cfg);
    write_report(rep, dir.string());
    const NormEstimate* lo = rep.verdict("image_low");
    const NormEstimate* hi = rep.verdict("image_high");
    return {10, criterion_name(10), rep.passed,
            std::string("low ") + verdict_name(lo->status) + " (" + fmtg(lo->value) + "), high " +
                verdict_name(hi->status)};
}

// ---- criterion 11: oscillation norms and box energies ----

CriterionResult c11(const RunConfig& cfg, const fs::path& dir) {
    BmoaGrid grid{cfg.J, 64, 1e-3};
    TaylorSeries zs = realize(catalog_spec("z"), 1);
    NormEstimate bz = bmoa_norm(zs, grid);
    TaylorSeries lg = realize(catalog_spec("neg_log"), cfg.order);
    NormEstimate bl = bmoa_norm(lg, grid);
    TaylorSeries lg_big = realize(catalog_spec("neg_log"), 131070);
    NormEstimate cl = carleson_seminorm(lg_big, cfg.L, true);
    NormEstimate cz = carleson_seminorm(zs, cfg.L, true);

    double depth_ratio = 0;
    if (cl.samples.size() >= 3) {
        const double a = cl.samples[cl.samples.size() / 2];
        const double b = cl.samples.back();
        depth_ratio = (b * b) / std::max(a * a, 1e-300);
    }
    const bool ok = bz.status == Verdict::converged && std::abs(bz.value - 1.0) <= 1e-4 &&
                    bl.status == Verdict::converged && cl.status == Verdict::diverging &&
                    depth_ratio >= 2.0 && depth_ratio <= 6.0 && cz.status == Verdict::converged;

    ExperimentReport rep;
    rep.id = "oscillation-box-energy";
    rep.params["order"] = cfg.order;
    rep.params["box_order"] = 131070;
    rep.params["depth"] = cfg.L;
    rep.params["depth_ratio"] = depth_ratio;
    rep.expectation =
        "oscillation norm of z equals 1 to 1e-4 (converged); log symbol oscillation converged; "
        "log-weighted box energy of the log symbol diverging with half-depth energy ratio in "
        "[2,6]; log-weighted box energy of z converged";
    rep.verdicts = {{"bmoa_monomial", bz},
                    {"bmoa_log", bl},
                    {"carleson_log_weighted", cl},
                    {"carleson_monomial", cz}};
    Table t;
    t.name = "box_depths";
    t.columns = {"depth_radius", "sample"};
    for (std::size_t i = 0; i < cl.samples.size(); ++i)
        t.rows.push_back({cl.radii[i], cl.samples[i]});
    rep.tables.push_back(t);
    rep.passed = ok;
    write_report(rep, dir.string());
    return {11, criterion_name(11), ok,
            "bmoa(z) = " + fmtg(bz.value) + ", log boxes " + verdict_name(cl.status) +
                " ratio " + fmtg(depth_ratio)};
}

CriterionResult run_one(int id, const RunConfig& cfg, const fs::path& dir) {
    switch (id) {
        case 1: return c1(cfg, dir);
        case 2: return c2(cfg, dir);
        case 3: return c3(cfg, dir);
        case 4: return c4(cfg, dir);
        case 5: return c5(cfg, dir);
        case 6: return c6(cfg, dir);
        case 7: return c7(cfg, dir);
        case 8: return c8(cfg, dir);
        case 9: return c9(cfg, dir);
        case 10: return c10(cfg, dir);
        default: return c11(cfg, dir);
    }
}

void collect_files(const fs::path& root, std::vector<fs::path>& rel) {
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), root));
    std::sort(rel.begin(), rel.end());
}

bool trees_identical(const fs::path& a, const fs::path& b, std::string& diff) {
    std::vector<fs::path> ra, rb;
    collect_files(a, ra);
    collect_files(b, rb);
    if (ra != rb) {
        diff = "file lists differ";
        return false;
    }
    for (const auto& r : ra) {
        std::ifstream fa(a / r, std::ios::binary), fb(b / r, std::ios::binary);
        std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
        std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
        if (sa != sb) {
            diff = r.string();
            return false;
        }
    }
    return true;
}

} // namespace

int run_suite(const RunConfig& cfg, const std::string& out_dir,
              std::vector<CriterionResult>* results_out) {
    const fs::path root(out_dir);
    std::vector<CriterionResult> results;
    for (const char* run : {"runA", "runB"}) {
        const fs::path rdir = root / run;
        fs::create_directories(rdir);
        auto task = [&cfg, rdir](int id) -> CriterionResult {
            char sub[16];
            std::snprintf(sub, sizeof sub, "criterion_%02d", id);
            const fs::path cdir = rdir / sub;
            fs::create_directories(cdir);
            try {
                return run_one(id, cfg, cdir);
            } catch (const std::exception& e) {
                return {id, criterion_name(id), false, std::string("exception: ") + e.what()};
            }
        };
        std::vector<CriterionResult> cur(11);
        if (cfg.threads > 1) {
            std::vector<std::future<CriterionResult>> futs;
            futs.reserve(11);
            for (int id = 1; id <= 11; ++id)
                futs.push_back(std::async(std::launch::async, task, id));
            for (int i = 0; i < 11; ++i) cur[std::size_t(i)] = futs[std::size_t(i)].get();
        } else {
            for (int id = 1; id <= 11; ++id) cur[std::size_t(id - 1)] = task(id);
        }
        if (results.empty()) results = cur;
    }

    std::string diff;
    const bool same = trees_identical(root / "runA", root / "runB", diff);
    results.push_back({12, criterion_name(12), same,
                       same ? "runA and runB byte-identical" : "difference at " + diff});

    int failures = 0;
    nlohmann::ordered_json summary = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        std::printf("criterion %02d [%s] %s: %s\n", r.id, r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.message.c_str());
        std::fflush(stdout);
        if (!r.passed) ++failures;
        nlohmann::ordered_json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["passed"] = r.passed;
        e["message"] = r.message;
        summary.push_back(e);
    }
    write_text_atomic((root / "summary.json").string(), summary.dump(2) + "\n");
    if (results_out) *results_out = results;
    return failures;
}

} // namespace hv
