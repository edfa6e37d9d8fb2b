#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hv/taylor.hpp"

namespace hv {

inline constexpr std::size_t FULL_DEGREE = SIZE_MAX;

// T_g(f) = int_0^z f g' ; `cap` limits the output order (FULL_DEGREE keeps
// every exact coefficient, i.e. order f.order + g.order)
TaylorSeries volterra(const TaylorSeries& g, const TaylorSeries& f,
                      std::size_t cap = FULL_DEGREE);
// same operator given g' directly (for symbols supplied via their derivative)
TaylorSeries volterra_gprime(const TaylorSeries& gprime, const TaylorSeries& f,
                             std::size_t cap = FULL_DEGREE);
// companion S_g(f) = int_0^z f' g
TaylorSeries companion(const TaylorSeries& g, const TaylorSeries& f,
                       std::size_t cap = FULL_DEGREE);
// M_g(f) = g f
TaylorSeries multiply(const TaylorSeries& g, const TaylorSeries& f,
                      std::size_t cap = FULL_DEGREE);

// max coefficient modulus of T_g(f) + S_g(f) + g(0)f(0) - g f over the common
// exact degree range
double ibp_defect(const TaylorSeries& g, const TaylorSeries& f);

// [C f]_n = (sum_{k<=n} a_k) / (n+1); satisfies z C(f) = T_{-log(1-z)}(f)
TaylorSeries cesaro(const TaylorSeries& f);

// F_n = z^{-n} S_f(z^n); coefficients a_k n/(n+k)
TaylorSeries companion_on_monomial(const TaylorSeries& f, std::size_t n);

struct OperatorReport {
    std::string op;
    std::size_t g_order = 0, f_order = 0, out_order = 0;
    std::size_t discarded = 0; // exact trailing coefficients dropped by capping
    double ibp = 0;            // integration-by-parts defect of the (g, f) pair
};
OperatorReport describe_application(const std::string& op, const TaylorSeries& g,
                                    const TaylorSeries& f, const TaylorSeries& out,
                                    std::size_t cap);

} // namespace hv
