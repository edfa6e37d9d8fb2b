#pragma once
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace hv {

using cplx = std::complex<double>;
inline constexpr double INF = std::numeric_limits<double>::infinity();

std::size_t next_pow2(std::size_t n);

// deterministic pairwise tree sum over a fixed (ascending-index) order
double pairwise_sum(const double* v, std::size_t n);
double pairwise_sum(const std::vector<double>& v);
cplx pairwise_sum(const cplx* v, std::size_t n);

struct LineFit {
    double slope = 0, intercept = 0;
};
// least-squares line through (x_i, y_i); needs >= 2 points
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// shortest decimal that round-trips is not what we want for byte-stable reports;
// always print 17 significant digits
std::string fmt17(double v);

// sum_{m>=0} 1/(x+m)^2 for x >= 1, to ~1e-15 relative (Euler-Maclaurin)
double inverse_square_tail(double x);

} // namespace hv
