#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hv/errors.hpp"
#include "hv/norms.hpp"
#include "hv/operators.hpp"
#include "hv/spec.hpp"

using namespace hv;

TEST_CASE("circle mean squared equals the coefficient power sum") {
    TaylorSeries f = realize(catalog_spec("binom_m045"), 128);
    for (double r : {0.0, 0.5, 0.9}) {
        const double psum = power_sum_sq(f, r);
        const double m = mean_p(f, r, 2.0);
        CHECK(std::abs(m * m - psum) <= 1e-12 * (1.0 + psum));
    }
}

TEST_CASE("integral means have closed values on simple polynomials") {
    TaylorSeries u = realize(catalog_spec("unit"), 4);
    for (double p : {1.0, 2.0, 4.0}) CHECK(mean_p(u, 0.9, p) == doctest::Approx(1.0).epsilon(1e-12));
    // mean of |(1+z)/2|^4 on the unit circle is 6/16
    TaylorSeries h = realize(catalog_spec("one_plus_z_half"), 4);
    CHECK(mean_p(h, 1.0, 4.0) ==
          doctest::Approx(std::pow(6.0 / 16.0, 0.25)).epsilon(1e-9));
}

TEST_CASE("boundary norm of a monomial is one and converges") {
    TaylorSeries m = realize(catalog_spec("z5"), 5);
    NormEstimate est = hardy_norm(m, 2.0);
    CHECK(est.status == Verdict::converged);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(est.safe_count == est.samples.size());
}

TEST_CASE("boundary norms detect blow-up of a fat binomial") {
    TaylorSeries f = realize(catalog_spec("binom_m125"), 4096);
    NormEstimate est = hardy_norm(f, 2.0);
    CHECK(est.status == Verdict::diverging);
    REQUIRE(est.growth_fit.has_value());
    CHECK(*est.growth_fit == doctest::Approx(0.75).epsilon(0.1));
}

TEST_CASE("growth sup has binomial closed forms") {
    LadderOptions lad;
    {
        TaylorSeries f = realize(catalog_spec("binom_m050"), 65536);
        NormEstimate est = growth_sup(f, 0.5, false, lad);
        CHECK(est.status == Verdict::converged);
        CHECK(est.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
    }
    {
        TaylorSeries f = realize(catalog_spec("binom_p050"), 65536);
        NormEstimate est = growth_sup(f, 0.5, true, lad);
        CHECK(est.status == Verdict::converged);
        CHECK(est.value == doctest::Approx(0.5 * std::pow(2.0, 0.5)).epsilon(1e-3));
    }
    {
        // negative weight exponent probes blow-up: |z| (1-r^2)^{-1/2} diverges
        TaylorSeries z = realize(catalog_spec("z"), 1);
        NormEstimate est = growth_sup(z, -0.5, false, lad);
        CHECK(est.status == Verdict::diverging);
    }
}

TEST_CASE("oscillation point values have the mobius closed form") {
    TaylorSeries z = realize(catalog_spec("z"), 1);
    for (cplx a : {cplx(0.0), cplx(0.3, 0.0), cplx(0.5, 0.2)}) {
        CHECK(bmoa_point(z, a) == doctest::Approx(1.0 - std::norm(a)).epsilon(1e-12));
    }
    NormEstimate est = bmoa_norm(z);
    CHECK(est.status == Verdict::converged);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("oscillation autocorrelation route matches the direct average") {
    TaylorSeries g = realize(catalog_spec("neg_log"), 256);
    const cplx a(0.4, 0.0);
    const double fast = bmoa_point(g, a);
    const double slow = bmoa_point_direct(g, a, 0.999, 4096);
    CHECK(std::abs(fast - slow) <= 0.05 * fast);
}

TEST_CASE("box energies match the direct box integral") {
    TaylorSeries z = realize(catalog_spec("z"), 1);
    NormEstimate est = carleson_seminorm(z, 3, false);
    CHECK(est.status == Verdict::converged);
    TaylorSeries gp = differentiate(z); // the constant 1
    for (int l = 0; l <= 3; ++l) {
        const double h = std::ldexp(1.0, -l);
        CarlesonBox box{h / 2.0, h};
        BoxIntegral bi = box_integral(gp, box, 32);
        CHECK(est.samples[std::size_t(l)] ==
              doctest::Approx(std::sqrt(bi.value / box.length)).epsilon(1e-10));
    }
}

TEST_CASE("derivative functional sits inside its sandwich") {
    TaylorSeries z = realize(catalog_spec("z"), 1);
    CHECK(lp_functional(z) == doctest::Approx(0.5).epsilon(1e-15));
    PolarGrid grid = make_polar_grid(96, 512);
    for (const char* name : {"z", "neg_log", "binom_m025", "outer3"}) {
        TaylorSeries f = realize(catalog_spec(name), 128);
        const double phi = lp_functional(f);
        const double upper = power_sum_sq(f, 1.0);
        const double lower = 0.5 * (upper + std::norm(f.at(0)));
        CHECK(phi >= lower - 1e-13 * std::max(upper, 1.0));
        CHECK(phi <= upper + 1e-13 * std::max(upper, 1.0));
        CHECK(lp_functional_quadrature(f, grid) == doctest::Approx(phi).epsilon(1e-9));
    }
}

TEST_CASE("weighted bergman inner products of monomials") {
    TaylorSeries one = realize(catalog_spec("unit"), 0);
    CHECK(a21_norm(one) == doctest::Approx(1.0).epsilon(1e-15));
    for (std::size_t k = 0; k <= 10; ++k) {
        FunctionSpec ms;
        ms.kind = "monomial";
        ms.n = long(k);
        TaylorSeries zk = realize(ms, k);
        const double want = 2.0 / (double(k + 1) * double(k + 2));
        CHECK(a21_inner(zk, zk).real() == doctest::Approx(want).epsilon(1e-15));
    }
    TaylorSeries z2 = realize(FunctionSpec::parse_string("{\"kind\":\"monomial\",\"n\":2}"), 2);
    TaylorSeries z3 = realize(FunctionSpec::parse_string("{\"kind\":\"monomial\",\"n\":3}"), 3);
    CHECK(std::abs(a21_inner(z2, z3)) <= 1e-16);
}

TEST_CASE("weighted product norm collapses for reciprocal pairs") {
    TaylorSeries S = realize(catalog_spec("singular_inner"), 129);
    TaylorSeries g = antiderivative(S);
    TaylorSeries f = realize(catalog_spec("inv_singular_inner"), 128);
    const double v = bergman_weighted_norm(f, g, 128);
    CHECK(v * v == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("domain norm of the reciprocal inner function is one") {
    TaylorSeries S = realize(catalog_spec("singular_inner"), 129);
    TaylorSeries g = antiderivative(S);
    TaylorSeries f = realize(catalog_spec("inv_singular_inner"), 128);
    NormEstimate est = optimal_domain_norm(g, f, 2.0);
    CHECK(est.status == Verdict::converged);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("domain norm of the constant argument is the centered symbol norm") {
    TaylorSeries g = realize(catalog_spec("neg_log"), 512);
    TaylorSeries one = realize(catalog_spec("unit"), 0);
    NormEstimate dom = optimal_domain_norm(g, one, 2.0);
    std::vector<cplx> c = g.a;
    c[0] = 0;
    TaylorSeries centered(std::move(c), g.hint);
    NormEstimate ref = hardy_norm(centered, 2.0);
    CHECK(dom.status == ref.status);
    CHECK(dom.value == doctest::Approx(ref.value).epsilon(1e-12));
}

TEST_CASE("constant symbols are rejected") {
    TaylorSeries one = realize(catalog_spec("unit"), 4);
    TaylorSeries f = realize(catalog_spec("z"), 4);
    CHECK_THROWS_AS(optimal_domain_norm(one, f, 2.0), constant_symbol);
}

TEST_CASE("space grammar parses and routes") {
    CHECK(parse_space("H2").kind == SpaceKind::hardy);
    CHECK(parse_space("H2").p == doctest::Approx(2.0));
    CHECK(parse_space("H1.5").p == doctest::Approx(1.5));
    CHECK(parse_space("Hinf").kind == SpaceKind::hardy_inf);
    CHECK(parse_space("BMOAlog").kind == SpaceKind::bmoa_log);
    CHECK(parse_space("OptimalDomain").kind == SpaceKind::optimal_domain);
    CHECK_THROWS_AS(parse_space("H0"), invalid_spec);
    CHECK_THROWS_AS(parse_space("Hx"), invalid_spec);
    CHECK_THROWS_AS(parse_space("Foo"), invalid_spec);

    SpaceContext cx;
    TaylorSeries m = realize(catalog_spec("z5"), 5);
    NormEstimate est = space_norm(parse_space("H2"), m, cx);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-15));

    // Bloch norm of z: |0| + sup (1-r^2)|1| = 1
    NormEstimate bl = space_norm(parse_space("Bloch"), realize(catalog_spec("z"), 1), cx);
    CHECK(bl.value == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(space_norm(parse_space("Bergman"), m, cx), invalid_spec);
    cx.alpha = 0.0;
    CHECK_THROWS_AS(space_norm(parse_space("Korenblum"), m, cx), invalid_spec);
}

TEST_CASE("estimates serialize with the documented keys") {
    TaylorSeries m = realize(catalog_spec("z5"), 5);
    NormEstimate est = hardy_norm(m, 2.0);
    auto j = est.to_json();
    for (const char* key : {"value", "status", "samples", "growth_fit", "safe_radius"})
        CHECK(j.contains(key));
    CHECK(j["status"].get<std::string>() == "converged");
}
