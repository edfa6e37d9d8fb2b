#include "hv/util.hpp"

#include <cmath>
#include <cstdio>

#include "hv/errors.hpp"

namespace hv {

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

namespace {
template <class T>
T pairwise_impl(const T* v, std::size_t n) {
    if (n <= 8) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_impl(v, h) + pairwise_impl(v + h, n - h);
}
} // namespace

double pairwise_sum(const double* v, std::size_t n) { return pairwise_impl(v, n); }
double pairwise_sum(const std::vector<double>& v) { return pairwise_impl(v.data(), v.size()); }
cplx pairwise_sum(const cplx* v, std::size_t n) { return pairwise_impl(v, n); }

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw error("fit_line: need >= 2 points");
    double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    if (den == 0) throw error("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double inverse_square_tail(double x) {
    if (!(x >= 1)) throw error("inverse_square_tail: x must be >= 1");
    double s = 0;
    while (x < 40) {
        s += 1.0 / (x * x);
        x += 1;
    }
    // sum_{m>=0} (y+m)^{-2} = 1/y + 1/(2y^2) + B_2/y^3 + B_4/y^5 + ...
    double y = x, y2 = y * y;
    double t = 1 / y + 1 / (2 * y2);
    double p = y * y2; // y^3
    t += (1.0 / 6.0) / p;
    p *= y2;
    t += (-1.0 / 30.0) / p;
    p *= y2;
    t += (1.0 / 42.0) / p;
    p *= y2;
    t += (-1.0 / 30.0) / p;
    p *= y2;
    t += (5.0 / 66.0) / p;
    return s + t;
}

} // namespace hv
