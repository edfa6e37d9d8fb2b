#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hv/errors.hpp"
#include "hv/operators.hpp"
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

} // namespace

TEST_CASE("averaging operator equals the shifted log-symbol transform") {
    TaylorSeries g = realize(catalog_spec("neg_log"), 96);
    TaylorSeries f = random_poly(40, 5);
    TaylorSeries C = cesaro(f);
    TaylorSeries T = volterra(g, f);
    for (std::size_t m = 0; m <= f.order(); ++m)
        CHECK(std::abs(C.a[m] - T.at(m + 1)) <= 1e-15);
}

TEST_CASE("transform of the identity by the identity") {
    TaylorSeries z = realize(catalog_spec("z"), 1);
    TaylorSeries out = volterra(z, z);
    REQUIRE(out.order() >= 2);
    CHECK(std::abs(out.at(0)) == 0.0);
    CHECK(std::abs(out.at(1)) == 0.0);
    CHECK(std::abs(out.at(2) - cplx(0.5)) <= 1e-16);
}

TEST_CASE("transform is linear and annihilates nothing but constants") {
    TaylorSeries g = realize(catalog_spec("neg_log"), 64);
    TaylorSeries f = random_poly(32, 7);
    TaylorSeries h = random_poly(32, 8);
    const cplx al(0.3, -1.1), be(-0.7, 0.2);
    TaylorSeries comb = linear_combine({{al, &f}, {be, &h}}, 32);
    TaylorSeries lhs = volterra(g, comb);
    TaylorSeries tf = volterra(g, f);
    TaylorSeries th = volterra(g, h);
    for (std::size_t k = 0; k <= lhs.order(); ++k)
        CHECK(std::abs(lhs.at(k) - (al * tf.at(k) + be * th.at(k))) <= 1e-13);
    CHECK(std::abs(lhs.at(0)) == 0.0);
}

TEST_CASE("integration by parts closes on catalog pairs") {
    const char* pairs[][2] = {{"neg_log", "binom_m025"},
                              {"z5", "blaschke_half"},
                              {"singular_inner", "outer3"},
                              {"witness_log_power", "z"},
                              {"plus_m125", "k_symbol"}};
    for (const auto& pr : pairs) {
        TaylorSeries f = realize(catalog_spec(pr[0]), 256);
        TaylorSeries g = realize(catalog_spec(pr[1]), 256);
        CHECK(ibp_defect(g, f) <= 1e-12);
    }
}

TEST_CASE("companion averages of monomials have the closed coefficient form") {
    TaylorSeries f = realize(catalog_spec("neg_log"), 64);
    for (std::size_t n : {std::size_t(1), std::size_t(4), std::size_t(64), std::size_t(4096)}) {
        TaylorSeries F = companion_on_monomial(f, n);
        for (std::size_t k = 0; k <= 64; ++k) {
            const cplx want = f.at(k) * (double(n) / double(n + k));
            CHECK(std::abs(F.at(k) - want) <= 1e-16 * (1.0 + std::abs(want)));
        }
    }
    // deviation from f shrinks as n grows
    double prev = INF;
    for (std::size_t n : {std::size_t(8), std::size_t(64), std::size_t(512)}) {
        TaylorSeries F = companion_on_monomial(f, n);
        double dev = 0;
        for (std::size_t k = 0; k <= 64; ++k) dev = std::max(dev, std::abs(F.at(k) - f.at(k)));
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK_THROWS_AS(companion_on_monomial(f, 0), invalid_spec);
}

TEST_CASE("transform with the integrated inner symbol inverts its reciprocal") {
    TaylorSeries S = realize(catalog_spec("singular_inner"), 520);
    TaylorSeries g = antiderivative(S); // g' = S exactly
    TaylorSeries f = realize(catalog_spec("inv_singular_inner"), 512);
    TaylorSeries out = volterra(g, f, 513);
    CHECK(std::abs(out.at(0)) == 0.0);
    CHECK(std::abs(out.at(1) - cplx(1.0)) <= 1e-14);
    for (std::size_t k = 2; k <= 14; ++k) CHECK(std::abs(out.at(k)) <= 1e-10);
    for (std::size_t k = 15; k <= 64; ++k) CHECK(std::abs(out.at(k)) <= 1e-4);
}

TEST_CASE("operator application report accounts for capping") {
    TaylorSeries g = realize(catalog_spec("neg_log"), 32);
    TaylorSeries f = random_poly(16, 9);
    TaylorSeries out = volterra(g, f, 20);
    CHECK(out.order() == 20);
    OperatorReport r = describe_application("Tg", g, f, out, 20);
    CHECK(r.out_order == 20);
    CHECK(r.discarded == 16 + 32 + 1 - 20);
    CHECK(r.ibp <= 1e-12);
}
