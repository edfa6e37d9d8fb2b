#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "hv/errors.hpp"
#include "hv/lab.hpp"

using namespace hv;

namespace {

RunConfig small_config() {
    RunConfig cfg;
    cfg.order = 512;
    cfg.J = 10;
    cfg.L = 6;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("n-list grammar") {
    CHECK(parse_n_list("16..1024") ==
          std::vector<std::size_t>{16, 32, 64, 128, 256, 512, 1024});
    CHECK(parse_n_list("5..40") == std::vector<std::size_t>{8, 16, 32});
    CHECK(parse_n_list("1,2,8") == std::vector<std::size_t>{1, 2, 8});
    CHECK(parse_n_list("7") == std::vector<std::size_t>{7});
    CHECK_THROWS_AS(parse_n_list("7,3"), invalid_spec);
}

TEST_CASE("monomial decay against closed forms") {
    RunConfig cfg = small_config();
    {
        ExperimentReport rep =
            monomial_decay(catalog_spec("z"), 2.0, parse_n_list("1..64"), cfg);
        CHECK(rep.passed);
        for (const auto& row : rep.tables.at(0).rows) CHECK(row.at(3) <= 1e-12);
    }
    {
        ExperimentReport rep =
            monomial_decay(catalog_spec("neg_log"), 2.0, parse_n_list("1..64"), cfg);
        CHECK(rep.passed);
        const double slope = rep.params.at("slope").get<double>();
        CHECK(slope == doctest::Approx(-0.5).epsilon(0.1));
    }
}

TEST_CASE("intersection probe distinguishes members from non-members") {
    RunConfig cfg = small_config();
    {
        ExperimentReport rep =
            intersection_probe(catalog_spec("binom_m025"), parse_n_list("1..1024"), 2.0, cfg);
        CHECK(rep.passed);
        CHECK(rep.verdict("f")->status == Verdict::converged);
    }
    {
        ExperimentReport rep =
            intersection_probe(catalog_spec("binom_m125"), parse_n_list("1..1024"), 2.0, cfg);
        CHECK(rep.passed);
        CHECK(rep.verdict("f")->status == Verdict::diverging);
    }
}

TEST_CASE("constant multipliers scale domain norms exactly") {
    RunConfig cfg = small_config();
    FunctionSpec h;
    h.kind = "linear_combo";
    h.terms.emplace_back(cplx(2.5, 0.0), catalog_spec("unit"));
    std::vector<FunctionSpec> family{catalog_spec("z"), catalog_spec("binom_m025"),
                                     catalog_spec("neg_log")};
    ExperimentReport rep = multiplier_probe(catalog_spec("z"), h, 2.0, family, cfg);
    CHECK(rep.passed);
    for (const auto& row : rep.tables.at(0).rows)
        CHECK(row.at(1) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("cyclicity residuals: floor for the inner symbol, decay for the outer control") {
    RunConfig cfg = small_config();
    ExperimentReport rep =
        cyclicity_residual(catalog_spec("singular_inner"), {0, 1, 2, 4, 8}, cfg);
    CHECK(rep.passed);
    // gram route against dense least squares
    TaylorSeries S = realize(catalog_spec("singular_inner"), 512);
    for (const auto& pt : cyclicity_curve(S, {0, 2, 8})) {
        const double qr = cyclicity_residual_qr(S, pt.degree);
        CHECK(std::abs(qr - pt.residual) <= 1e-8);
    }
}

TEST_CASE("smoothness gate of the image-boundedness probe") {
    RunConfig cfg = small_config();
    {
        ExperimentReport rep =
            aleman_cima_probe(catalog_spec("binom_p050"), 1.0, 2.0, parse_n_list("1..64"), cfg);
        CHECK(rep.passed);
        CHECK(rep.verdict("symbol_smoothness")->status == Verdict::converged);
    }
    {
        ExperimentReport rep =
            aleman_cima_probe(catalog_spec("binom_m050"), 1.0, 2.0, parse_n_list("1..64"), cfg);
        CHECK(rep.passed);
        CHECK(rep.verdict("symbol_smoothness")->status == Verdict::diverging);
        REQUIRE(!rep.notes.empty());
    }
}

TEST_CASE("growth-pair verifier flags the degenerate pair") {
    RunConfig cfg = small_config();
    ExperimentReport rep = run_named_experiment("growth-pair", nlohmann::json::object(), cfg);
    CHECK(rep.passed);
    CHECK(rep.params.at("flagged").get<bool>());
    CHECK(rep.params.at("two_sided_ratio").get<double>() > 32.0);
}

TEST_CASE("rotation family keeps the growth-multiplier ratio near the symbol constant") {
    RunConfig cfg = small_config();
    {
        ExperimentReport rep =
            korenblum_multiplier_probe(catalog_spec("binom_m050"), 0.25, 0.75, cfg);
        CHECK(rep.passed);
        CHECK(rep.verdict("symbol_growth")->status == Verdict::converged);
    }
    {
        ExperimentReport rep =
            korenblum_multiplier_probe(catalog_spec("binom_m125"), 0.25, 0.75, cfg);
        CHECK(rep.passed);
        CHECK(rep.verdict("symbol_growth")->status == Verdict::diverging);
    }
    CHECK_THROWS_AS(korenblum_multiplier_probe(catalog_spec("z"), 0.5, 0.25, cfg), invalid_spec);
}

TEST_CASE("experiment registry dispatches and rejects unknown names") {
    RunConfig cfg = small_config();
    CHECK(experiment_names().size() == 9);
    CHECK_THROWS_AS(run_named_experiment("nope", nlohmann::json::object(), cfg), invalid_spec);
    nlohmann::json args;
    args["g"] = "z";
    args["n"] = "1..16";
    ExperimentReport rep = run_named_experiment("monomial-decay", args, cfg);
    CHECK(rep.id == "monomial-decay");
    CHECK(rep.passed);
}

TEST_CASE("reports serialize byte-identically across writes") {
    RunConfig cfg = small_config();
    ExperimentReport rep =
        monomial_decay(catalog_spec("neg_log"), 2.0, parse_n_list("1..16"), cfg);
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "hv_rep_check";
    fs::remove_all(base);
    write_report(rep, (base / "a").string());
    write_report(rep, (base / "b").string());
    for (const char* f : {"report.json", "decay.csv"}) {
        const std::string sa = slurp(base / "a" / f);
        const std::string sb = slurp(base / "b" / f);
        REQUIRE(!sa.empty());
        CHECK(sa == sb);
    }
    fs::remove_all(base);
}
