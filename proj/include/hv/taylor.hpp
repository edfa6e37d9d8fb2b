#pragma once
#include <optional>
#include <string>
#include <vector>

#include "hv/util.hpp"

namespace hv {

// Bound on the coefficients the truncation dropped (k > order).
//   zero       : the function IS the stored polynomial
//   geometric  : |a_k| <= C * rho^{-k}
//   poly       : |a_k| <= C * k^m
// `heuristic` marks bounds fitted from the stored prefix rather than derived
// from the generating recurrence.
struct TailHint {
    enum class Kind { zero, geometric, poly } kind = Kind::poly;
    double C = 0, rho = 1, m = 0;
    bool heuristic = true;

    static TailHint exact() { return {Kind::zero, 0, 1, 0, false}; }
    static TailHint geo(double C, double rho, bool heur) { return {Kind::geometric, C, rho, 0, heur}; }
    static TailHint power(double C, double m, bool heur) { return {Kind::poly, C, 1, m, heur}; }
    std::string describe() const;
};

struct TaylorSeries {
    std::vector<cplx> a; // a[k] multiplies z^k
    TailHint hint = TailHint::power(0, 0, true);

    TaylorSeries() : a(1, cplx(0)) {}
    explicit TaylorSeries(std::vector<cplx> coeffs);
    TaylorSeries(std::vector<cplx> coeffs, TailHint h);

    std::size_t order() const { return a.size() - 1; }
    cplx at(std::size_t k) const { return k < a.size() ? a[k] : cplx(0); }
    void validate() const; // finite coefficients, hint honored on stored range
};

// fit a tail bound from the last quartile of the stored coefficients;
// C is then raised so the bound holds at every stored k >= 1
TailHint fit_tail_hint(const std::vector<cplx>& a);

// sum_{k>N} bound(k) r^k and its L2 sibling sqrt(sum bound(k)^2 r^{2k});
// +inf when the hint cannot certify anything at this radius
double tail_sup_bound(const TailHint& h, std::size_t N, double r);
double tail_l2_bound(const TailHint& h, std::size_t N, double r);

// ---- arithmetic (coefficient-exact through the returned order) ----

TaylorSeries linear_combine(const std::vector<std::pair<cplx, const TaylorSeries*>>& terms,
                            std::size_t order);
// full convolution capped at `order`; coefficients through min(order, deg f + deg g) are exact
TaylorSeries cauchy_product(const TaylorSeries& f, const TaylorSeries& g, std::size_t order);
TaylorSeries reciprocal(const TaylorSeries& f, std::size_t order);
TaylorSeries series_log(const TaylorSeries& f, std::size_t order);
TaylorSeries series_exp(const TaylorSeries& f, std::size_t order);
// principal branch: exp(alpha * log f); requires f(0) != 0
TaylorSeries series_pow(const TaylorSeries& f, double alpha, std::size_t order);
TaylorSeries differentiate(const TaylorSeries& f);
TaylorSeries antiderivative(const TaylorSeries& f);

struct EvalResult {
    cplx value;
    double tail_bound; // certified bound on |true f(z) - value| from the hint
};
// compensated Horner at |z| < 1
EvalResult evaluate(const TaylorSeries& f, cplx z);
// same value without the tail-bound computation (hot loops)
cplx horner_eval(const TaylorSeries& f, cplx z);

// values f(r e^{2pi i m/M}), m = 0..M-1, via an FFT of the radius-scaled
// coefficients; M must be a power of two with M >= 2*(order+1)
std::vector<cplx> evaluate_on_circle(const TaylorSeries& f, double r, std::size_t M);

// sum_k |a_k|^2 r^{2k} in a fixed ascending-k pairwise order
double power_sum_sq(const TaylorSeries& f, double r);
double h2_norm_exact(const TaylorSeries& f);

} // namespace hv
