#include "hv/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "hv/errors.hpp"

namespace hv {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw invalid_spec("gauss_legendre needs n >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-like initial guess
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
            }
            pp = n * (t * p0 - p1) / (t * t - 1);
            double dt = p0 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1 - t * t) * pp * pp);
    }
}

PolarGrid make_polar_grid(int radial_points, std::size_t angles) {
    std::vector<double> x, gw;
    gauss_legendre(radial_points, x, gw);
    PolarGrid g;
    g.angles = angles;
    g.u.resize(radial_points);
    g.w.resize(radial_points);
    for (int i = 0; i < radial_points; ++i) {
        g.u[i] = 0.5 * (x[i] + 1.0);
        g.w[i] = 0.5 * gw[i];
    }
    double total = pairwise_sum(g.w);
    if (std::abs(total - 1.0) > 1e-12) throw numeric_failure("polar grid weights do not sum to 1");
    return g;
}

double area_integral(const std::function<std::vector<double>(double r, std::size_t M)>& provider,
                     const PolarGrid& grid) {
    std::vector<double> per_radius(grid.u.size());
    for (std::size_t i = 0; i < grid.u.size(); ++i) {
        std::vector<double> vals = provider(grid.radius(i), grid.angles);
        per_radius[i] = grid.w[i] * pairwise_sum(vals) / double(vals.size());
    }
    return pairwise_sum(per_radius);
}

cplx mobius(cplx a, cplx z) {
    if (std::abs(a) >= 1) throw invalid_spec("mobius parameter needs |a| < 1");
    cplx den = cplx(1) - std::conj(a) * z;
    if (std::abs(den) < 1e-300) throw pole_hit("mobius denominator vanished");
    return (a - z) / den;
}

RadiusLadder make_ladder(std::size_t J, double safe_rel_tol) {
    RadiusLadder l;
    l.safe_rel_tol = safe_rel_tol;
    l.radii.reserve(J);
    for (std::size_t j = 1; j <= J; ++j) l.radii.push_back(1.0 - std::ldexp(1.0, -int(j)));
    return l;
}

std::vector<CarlesonBox> dyadic_boxes(std::size_t L) {
    std::vector<CarlesonBox> out;
    out.reserve((std::size_t(2) << L) - 1);
    for (std::size_t l = 0; l <= L; ++l) {
        double h = std::ldexp(1.0, -int(l));
        for (std::size_t t = 0; t < (std::size_t(1) << l); ++t)
            out.push_back({(double(t) + 0.5) * h, h});
    }
    return out;
}

bool box_contains_angle(const CarlesonBox& box, double t) {
    double d = t - std::floor(t) - (box.center - 0.5 * box.length);
    d -= std::floor(d); // distance along the circle from the arc's left edge
    return d < box.length;
}

double eval_cut_radius(const TaylorSeries& f, double rel_tol) {
    if (f.hint.kind == TailHint::Kind::zero) return 1.0;
    int best = 0;
    for (int m = 1; m <= 50; ++m) {
        double r = 1.0 - std::ldexp(1.0, -m);
        std::vector<double> t(f.a.size());
        double rk = 1;
        for (std::size_t k = 0; k < f.a.size(); ++k) {
            t[k] = std::abs(f.a[k]) * rk;
            rk *= r;
        }
        double scale = 1.0 + pairwise_sum(t);
        if (tail_sup_bound(f.hint, f.order(), r) <= rel_tol * scale) best = m;
        else break;
    }
    if (best == 0) throw numeric_failure("series tail uncertifiable at every dyadic radius");
    return 1.0 - std::ldexp(1.0, -best);
}

BoxIntegral box_integral(const TaylorSeries& gprime, const CarlesonBox& box, int radial_points,
                         double cut_rel_tol) {
    if (!(box.length > 0) || box.length > 1) throw invalid_spec("box length must lie in (0,1]");
    double r_cut = eval_cut_radius(gprime, cut_rel_tol);
    double u_lo = (1.0 - box.length) * (1.0 - box.length);
    double u_hi = r_cut * r_cut;
    if (u_hi <= u_lo) return {0.0, r_cut};

    std::vector<double> x, gw;
    gauss_legendre(radial_points, x, gw);
    std::size_t M = next_pow2(std::max<std::size_t>(
        2 * (gprime.order() + 1), std::size_t(std::ceil(32.0 / box.length))));

    std::vector<double> radial(radial_points);
    for (int i = 0; i < radial_points; ++i) {
        double u = 0.5 * (u_hi - u_lo) * x[i] + 0.5 * (u_hi + u_lo);
        double wu = 0.5 * (u_hi - u_lo) * gw[i];
        std::vector<cplx> vals = evaluate_on_circle(gprime, std::sqrt(u), M);
        std::vector<double> arc;
        arc.reserve(std::size_t(box.length * M) + 2);
        for (std::size_t m = 0; m < M; ++m)
            if (box_contains_angle(box, double(m) / double(M))) arc.push_back(std::norm(vals[m]));
        double mean = arc.empty() ? 0.0 : pairwise_sum(arc) / double(arc.size());
        radial[i] = wu * mean * (1.0 - u) * box.length;
    }
    return {pairwise_sum(radial), r_cut};
}

} // namespace hv
