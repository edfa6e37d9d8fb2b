#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hv/errors.hpp"
#include "hv/spec.hpp"

using namespace hv;

namespace {

TaylorSeries random_poly(std::size_t deg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&] { return double(rng() >> 11) * 0x1.0p-53; };
    std::vector<cplx> c(deg + 1);
    for (auto& x : c) x = cplx(2 * u() - 1, 2 * u() - 1);
    return TaylorSeries(std::move(c), TailHint::exact());
}

FunctionSpec binomial(double alpha) {
    FunctionSpec s;
    s.kind = "binomial_power";
    s.alpha = alpha;
    return s;
}

} // namespace

TEST_CASE("binomial coefficients match a contour integral of the closed form") {
    const double alpha = -1.25;
    TaylorSeries f = realize(binomial(alpha), 64);
    const std::size_t M = 4096;
    const double r = 0.9;
    const double twopi = 2.0 * std::acos(-1.0);
    std::vector<cplx> vals(M);
    double maxabs = 0;
    for (std::size_t m = 0; m < M; ++m) {
        const cplx z = std::polar(r, twopi * double(m) / double(M));
        vals[m] = std::exp(alpha * std::log(cplx(1.0) - z));
        maxabs = std::max(maxabs, std::abs(vals[m]));
    }
    for (std::size_t k = 0; k <= 64; ++k) {
        cplx acc(0);
        for (std::size_t m = 0; m < M; ++m)
            acc += vals[m] * std::polar(1.0, -twopi * double(m) * double(k) / double(M));
        const cplx est = acc / (double(M) * std::pow(r, double(k)));
        // quadrature roundoff in the bin is amplified by 1/r^k after division
        const double tol = 1e-12 * (maxabs / std::pow(r, double(k)) + std::abs(f.a[k]));
        CHECK(std::abs(est - f.a[k]) <= tol);
    }
}

TEST_CASE("cauchy product matches the direct convolution") {
    TaylorSeries f = random_poly(100, 11);
    TaylorSeries g = random_poly(80, 12);
    TaylorSeries p = cauchy_product(f, g, 150);
    for (std::size_t n = 0; n <= 150; ++n) {
        cplx direct(0);
        for (std::size_t j = 0; j <= n; ++j) direct += f.at(j) * g.at(n - j);
        CHECK(std::abs(p.at(n) - direct) <= 1e-12 * (1.0 + std::abs(direct)));
    }
    TaylorSeries full = cauchy_product(f, g, 180);
    CHECK(full.hint.kind == TailHint::Kind::zero); // uncapped product of polynomials is exact
}

TEST_CASE("inner function satisfies its differential equation") {
    TaylorSeries S = realize(catalog_spec("singular_inner"), 512);
    CHECK(std::abs(S.a[0] - std::exp(-1.0)) <= 1e-15);
    CHECK(std::abs(S.a[1] + 2.0 * std::exp(-1.0)) <= 1e-15);
    CHECK(std::abs(S.a[2]) <= 1e-15);
    // (z-1)^2 S' = -2 S
    TaylorSeries q(std::vector<cplx>{1.0, -2.0, 1.0}, TailHint::exact());
    TaylorSeries lhs = cauchy_product(q, differentiate(S), 510);
    for (std::size_t k = 0; k <= 510; ++k) CHECK(std::abs(lhs.at(k) + 2.0 * S.at(k)) <= 1e-12);
}

TEST_CASE("horner evaluation agrees with the circle FFT") {
    TaylorSeries f = random_poly(100, 21);
    const double r = 0.7;
    const std::size_t M = 256;
    const double twopi = 2.0 * std::acos(-1.0);
    std::vector<cplx> vals = evaluate_on_circle(f, r, M);
    for (std::size_t m : {std::size_t(0), std::size_t(1), std::size_t(17), std::size_t(255)}) {
        const cplx z = std::polar(r, twopi * double(m) / double(M));
        CHECK(std::abs(vals[m] - horner_eval(f, z)) <= 1e-12 * (1.0 + std::abs(vals[m])));
    }
}

TEST_CASE("log/exp and double-reciprocal round-trips") {
    for (const char* name : {"outer3", "one_plus_z_half"}) {
        TaylorSeries f = realize(catalog_spec(name), 256);
        TaylorSeries rt = series_exp(series_log(f, 256), 256);
        TaylorSeries rr = reciprocal(reciprocal(f, 256), 256);
        double scale = 0;
        for (const auto& c : f.a) scale = std::max(scale, std::abs(c));
        for (std::size_t k = 0; k <= 256; ++k) {
            CHECK(std::abs(rt.at(k) - f.at(k)) <= 1e-12 * scale);
            CHECK(std::abs(rr.at(k) - f.at(k)) <= 1e-11 * scale);
        }
    }
}

TEST_CASE("reciprocal of the inner function against its own recurrence") {
    // u = 1/S satisfies (n+1) u_{n+1} = (2n+2) u_n - (n-1) u_{n-1}, u_0 = e
    auto oracle = [](std::size_t N) {
        std::vector<cplx> u(N + 1);
        u[0] = std::exp(1.0);
        if (N >= 1) u[1] = 2.0 * u[0];
        for (std::size_t m = 1; m < N; ++m) {
            const double n = double(m);
            u[m + 1] = ((2 * n + 2) * u[m] - (n - 1) * u[m - 1]) / (n + 1);
        }
        return u;
    };
    {
        TaylorSeries r6 = reciprocal(realize(catalog_spec("singular_inner"), 6), 6);
        auto u = oracle(6);
        for (std::size_t k = 0; k <= 6; ++k)
            CHECK(std::abs(r6.at(k) - u[k]) <= 1e-12 * std::abs(u[k]));
    }
    {
        // conditioning grows like the coefficients themselves; only a loose
        // relative agreement is meaningful at higher order
        TaylorSeries r64 = reciprocal(realize(catalog_spec("singular_inner"), 64), 64);
        auto u = oracle(64);
        for (std::size_t k = 0; k <= 64; ++k)
            CHECK(std::abs(r64.at(k) - u[k]) <= 1e-4 * std::max(1.0, std::abs(u[k])));
    }
}

TEST_CASE("power realizes through exp(alpha log)") {
    // ((1-z)^{-2})^{1/2} = (1-z)^{-1}: compare against the geometric series
    FunctionSpec base = binomial(-2.0);
    FunctionSpec pw;
    pw.kind = "power";
    pw.bases.push_back(base);
    pw.alpha = 0.5;
    TaylorSeries f = realize(pw, 128);
    for (std::size_t k = 0; k <= 128; ++k) CHECK(std::abs(f.at(k) - cplx(1.0)) <= 1e-12);
}

TEST_CASE("tail hints certify what they claim") {
    TaylorSeries f = realize(binomial(-1.25), 128);
    CHECK_NOTHROW(f.validate());
    CHECK(!f.hint.heuristic);
    CHECK(tail_sup_bound(f.hint, 128, 0.5) < 1e-8);
    CHECK(std::isinf(tail_sup_bound(f.hint, 128, 1.0)));

    TaylorSeries mono = realize(catalog_spec("z5"), 8);
    CHECK(mono.hint.kind == TailHint::Kind::zero);
    CHECK(tail_sup_bound(mono.hint, 8, 0.999) == 0.0);

    std::vector<cplx> geo(65);
    for (std::size_t k = 0; k <= 64; ++k) geo[k] = std::ldexp(1.0, -int(k));
    TaylorSeries g(std::move(geo));
    CHECK_NOTHROW(g.validate());
    CHECK(tail_sup_bound(g.hint, 64, 0.9) < INF);
}

TEST_CASE("spec validation rejects out-of-domain parameters") {
    FunctionSpec b;
    b.kind = "blaschke_factor";
    b.a = cplx(1.5, 0.0);
    CHECK_THROWS_AS(realize(b, 16), invalid_spec);

    FunctionSpec s;
    s.kind = "shifted_binomial_power";
    s.alpha = -0.5;
    s.a = cplx(0.5, 0.0);
    CHECK_THROWS_AS(realize(s, 16), invalid_spec);

    FunctionSpec r;
    r.kind = "reciprocal";
    r.bases.push_back(catalog_spec("z"));
    CHECK_THROWS_AS(realize(r, 16), invalid_spec);

    CHECK_THROWS_AS(realize(catalog_spec("z"), MAX_ORDER + 1), order_overflow);
    CHECK_THROWS_AS(catalog_spec("nope"), invalid_spec);
}

TEST_CASE("specs round-trip through JSON") {
    for (const char* name : {"witness_log_power", "k_symbol", "blaschke_cplx", "inv_outer3"}) {
        FunctionSpec s = catalog_spec(name);
        FunctionSpec back = FunctionSpec::parse(nlohmann::json::parse(s.to_json().dump()));
        TaylorSeries a = realize(s, 48);
        TaylorSeries b = realize(back, 48);
        for (std::size_t k = 0; k <= 48; ++k) CHECK(a.at(k) == b.at(k));
    }
}
