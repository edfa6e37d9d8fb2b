#pragma once
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "hv/taylor.hpp"

namespace hv {

// Gauss-Legendre nodes/weights on [-1,1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// quadrature for integrals against normalized area measure on the disk,
// written in u = r^2 so the radial rule is exact for radial polynomials
struct PolarGrid {
    std::vector<double> u; // radial nodes, u = r^2 in (0,1)
    std::vector<double> w; // weights; sum to 1
    std::size_t angles = 0;
    double radius(std::size_t i) const { return std::sqrt(u[i]); }
};
PolarGrid make_polar_grid(int radial_points, std::size_t angles);

// provider returns integrand samples at radius r over M equispaced angles
// (angle 2*pi*m/M, m = 0..M-1)
double area_integral(const std::function<std::vector<double>(double r, std::size_t M)>& provider,
                     const PolarGrid& grid);

// phi_a(z) = (a - z)/(1 - conj(a) z)
cplx mobius(cplx a, cplx z);

struct RadiusLadder {
    std::vector<double> radii; // r_j = 1 - 2^{-j}, j = 1..J
    double safe_rel_tol = 1e-8;
};
RadiusLadder make_ladder(std::size_t J, double safe_rel_tol = 1e-8);

// arc I of the circle in normalized angle coordinates (fractions of a turn);
// the box over I is {z : z/|z| in I, 1-|I| < |z| < 1}
struct CarlesonBox {
    double center; // normalized angle in [0,1)
    double length; // |I| in (0,1]
};

// all dyadic arcs of length 2^{-l}, l = 0..L
std::vector<CarlesonBox> dyadic_boxes(std::size_t L);
bool box_contains_angle(const CarlesonBox& box, double t);

// largest dyadic radius 1 - 2^{-m} at which the hinted tail stays below
// rel_tol relative to the series' own size; 1.0 for exact truncations
double eval_cut_radius(const TaylorSeries& f, double rel_tol);

struct BoxIntegral {
    double value;
    double r_cut; // radial truncation actually applied
};
// int_{S(I)} |gprime(z)|^2 (1 - |z|^2) dA_norm with the radial range cut at
// the evaluation-safe radius of gprime
BoxIntegral box_integral(const TaylorSeries& gprime, const CarlesonBox& box, int radial_points,
                         double cut_rel_tol = 1e-6);

} // namespace hv
