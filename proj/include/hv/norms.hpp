#pragma once
#include <complex>
#include <cstddef>
#include <string>

#include "hv/estimate.hpp"
#include "hv/geometry.hpp"
#include "hv/taylor.hpp"

namespace hv {

struct LadderOptions {
    int J = 12;                  // ladder radii 1 - 2^-j, j = 1..J
    double safe_rel_tol = 1e-8;  // tail bound below this (relative) certifies a sample
    double converge_tol = 1e-6;
};

// integral mean M_p(f, r); a single trapezoid rule at the aliasing-free
// resolution for p = 2, doubling grids gated at gate_tol otherwise
double mean_p(const TaylorSeries& f, double r, double p, double gate_tol = 1e-9);

// H^p norm probe: ladder samples M_p(f, r_j), tail-certified prefix,
// dyadic coefficient sections at the boundary, verdict engine on top
NormEstimate hardy_norm(const TaylorSeries& f, double p, const LadderOptions& opts = {});

// sup_{|z|<=r} |f(z)| (1-|z|^2)^beta  (or |f'| when on_derivative), sampled on
// {0} + ladder with golden-section refinement of circle maxima; beta may be
// negative to probe boundary blow-up; sections are running suprema
NormEstimate growth_sup(const TaylorSeries& f, double beta, bool on_derivative,
                        const LadderOptions& opts = {});

struct BmoaGrid {
    int J = 12;
    std::size_t angles = 64;
    double certify_tol = 1e-3;  // agreement required between full and half-order values
};

// ||g o phi_a - g(a)||^2 in H^2 via the coefficient autocorrelation of g
double bmoa_point(const TaylorSeries& g, cplx a);
// slow reference: averages |g(phi_a(r e^{i t})) - g(a)|^2 over M angles
double bmoa_point_direct(const TaylorSeries& g, cplx a, double r, std::size_t M);

// sup over a Mobius grid of bmoa_point, plus |g(0)|; converged only when a
// doubled grid moves the value by less than one percent
NormEstimate bmoa_norm(const TaylorSeries& g, const BmoaGrid& grid = {});

// sup over dyadic Carleson boxes of depth <= max_depth of
//   (1/|I|) integral over S(I) of |g'|^2 (1-|z|^2) dA,
// optionally weighted by log^2(e/|I|); samples are per-depth square roots
NormEstimate carleson_seminorm(const TaylorSeries& g, int max_depth, bool log_weight,
                               std::size_t radial_points = 32, double cut_rel_tol = 1e-6);

// |f(0)|^2 + sum_k (k/(k+1)) |a_k|^2, and its area-integral twin
// |f(0)|^2 + integral |f'|^2 (1-|z|^2) dA
double lp_functional(const TaylorSeries& f);
double lp_functional_quadrature(const TaylorSeries& f, const PolarGrid& grid);

// inner product and norm for the weighted Bergman space with
// ||z^k||^2 = 2/((k+1)(k+2)) (so the constant 1 has norm 1)
cplx a21_inner(const TaylorSeries& f, const TaylorSeries& h);
double a21_norm(const TaylorSeries& f);

// || f g' || in the (1-|z|^2)-weighted Bergman space: forms the coefficient
// product w = f g' up to degree cap, then sums |w_k|^2/((k+1)(k+2)) exactly
double bergman_weighted_norm(const TaylorSeries& f, const TaylorSeries& g,
                             std::size_t cap = static_cast<std::size_t>(-1));

// norm of f in the largest space the transform with symbol g maps into H^p:
// the H^p estimate of the transformed series; throws constant_symbol when the
// transform annihilates everything
NormEstimate optimal_domain_norm(const TaylorSeries& g, const TaylorSeries& f, double p,
                                 const LadderOptions& opts = {});

enum class SpaceKind {
    hardy,
    hardy_inf,
    bmoa,
    bmoa_log,
    bloch,
    korenblum,
    lipschitz,
    a21,
    bergman,
    optimal_domain
};

struct SpaceSpec {
    SpaceKind kind = SpaceKind::hardy;
    double p = 2.0;  // exponent parsed from H<p>
};

// accepts H<p>, Hinf, BMOA, BMOAlog, Bloch, Korenblum, Lipschitz, A21,
// Bergman, OptimalDomain
SpaceSpec parse_space(const std::string& text);
const char* space_kind_name(SpaceKind k);

struct SpaceContext {
    double alpha = 0.5;                  // Korenblum / Lipschitz exponent
    double domain_p = 2.0;               // target exponent for OptimalDomain
    const TaylorSeries* symbol = nullptr;  // Bergman / OptimalDomain symbol
    LadderOptions ladder;
    BmoaGrid bmoa;
    int carleson_depth = 10;
};

NormEstimate space_norm(const SpaceSpec& sp, const TaylorSeries& f, const SpaceContext& cx);

} // namespace hv
