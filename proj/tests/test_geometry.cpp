#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hv/errors.hpp"
#include "hv/geometry.hpp"
#include "hv/spec.hpp"

using namespace hv;

TEST_CASE("gauss nodes integrate polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(8, x, w);
    for (int k = 0; k <= 15; ++k) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
        const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
        CHECK(std::abs(s - exact) <= 1e-13);
    }
}

TEST_CASE("polar grid weights are a partition of unity") {
    PolarGrid grid = make_polar_grid(128, 64);
    double s = 0;
    for (double wi : grid.w) s += wi;
    CHECK(std::abs(s - 1.0) <= 1e-12);
    for (double ui : grid.u) {
        CHECK(ui > 0.0);
        CHECK(ui < 1.0);
    }
}

TEST_CASE("area quadrature reproduces beta moments") {
    PolarGrid grid = make_polar_grid(128, 16);
    for (int k : {0, 1, 2, 5, 10, 25, 50}) {
        for (int alpha : {0, 1}) {
            auto provider = [&](double r, std::size_t) {
                const double u = r * r;
                return std::vector<double>(1, std::pow(u, k) * std::pow(1.0 - u, alpha));
            };
            const double val = area_integral(provider, grid);
            const double exact =
                alpha == 0 ? 1.0 / (k + 1.0) : 1.0 / ((k + 1.0) * (k + 2.0));
            CHECK(std::abs(val - exact) <= 1e-10 * exact);
        }
    }
}

TEST_CASE("mobius transform is an involution") {
    const cplx a(0.3, 0.4);
    for (cplx z : {cplx(0.1, -0.2), cplx(-0.5, 0.1), cplx(0.0, 0.7), cplx(0.25, 0.25)}) {
        CHECK(std::abs(mobius(a, mobius(a, z)) - z) <= 1e-14);
    }
    // boundary preserved
    const cplx zb = std::polar(1.0, 1.234);
    CHECK(std::abs(std::abs(mobius(a, zb)) - 1.0) <= 1e-14);
    CHECK_THROWS_AS(mobius(cplx(1.2, 0.0), cplx(0.1, 0.0)), invalid_spec);
}

TEST_CASE("dyadic boxes tile each level exactly once") {
    const std::size_t L = 4;
    std::vector<CarlesonBox> boxes = dyadic_boxes(L);
    CHECK(boxes.size() == (std::size_t(1) << (L + 1)) - 1);
    for (std::size_t l = 0; l <= L; ++l) {
        const double h = std::ldexp(1.0, -int(l));
        for (double t : {0.0, 0.123, 0.5, 0.999}) {
            int hits = 0;
            for (const auto& b : boxes)
                if (b.length == h && box_contains_angle(b, t)) ++hits;
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("ladder radii follow the dyadic schedule") {
    RadiusLadder lad = make_ladder(5);
    REQUIRE(lad.radii.size() == 5);
    for (std::size_t j = 0; j < 5; ++j)
        CHECK(lad.radii[j] == doctest::Approx(1.0 - std::ldexp(1.0, -int(j) - 1)).epsilon(1e-15));
}

TEST_CASE("eval cut radius honors the hint") {
    TaylorSeries mono = realize(catalog_spec("z5"), 8);
    CHECK(eval_cut_radius(mono, 1e-9) == 1.0);
    TaylorSeries f = realize(catalog_spec("binom_m125"), 64);
    const double rc = eval_cut_radius(f, 1e-6);
    CHECK(rc < 1.0);
    CHECK(rc >= 0.5);
}

TEST_CASE("box energy matches a brute-force Riemann sum") {
    TaylorSeries g = realize(catalog_spec("neg_log"), 257);
    TaylorSeries gp = differentiate(g);
    CarlesonBox box{0.625, 0.25};
    BoxIntegral bi = box_integral(gp, box, 48);
    REQUIRE(bi.r_cut > 1.0 - box.length);

    const double twopi = 2.0 * std::acos(-1.0);
    const double r_lo = 1.0 - box.length, r_hi = bi.r_cut;
    const double t_lo = box.center - box.length / 2.0;
    const std::size_t NR = 600, NT = 600;
    double acc = 0;
    for (std::size_t i = 0; i < NR; ++i) {
        const double r = r_lo + (i + 0.5) * (r_hi - r_lo) / NR;
        double row = 0;
        for (std::size_t j = 0; j < NT; ++j) {
            const double t = t_lo + (j + 0.5) * box.length / NT;
            const cplx z = std::polar(r, twopi * t);
            const double v = std::norm(horner_eval(gp, z));
            row += v * (1.0 - r * r);
        }
        // dA_norm = (1/pi) r dr dtheta = 2 r dr * (dt in turns)
        acc += row * 2.0 * r * ((r_hi - r_lo) / NR) * (box.length / NT);
    }
    CHECK(std::abs(acc - bi.value) <= 0.01 * bi.value);
}
