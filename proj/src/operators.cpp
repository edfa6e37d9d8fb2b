#include "hv/operators.hpp"

#include <algorithm>

#include "hv/errors.hpp"

namespace hv {

static std::size_t product_cap(std::size_t full, std::size_t cap) {
    if (cap == FULL_DEGREE) return full;
    return std::min(full, cap > 0 ? cap - 1 : 0); // leave room for the antiderivative shift
}

TaylorSeries volterra_gprime(const TaylorSeries& gprime, const TaylorSeries& f,
                             std::size_t cap) {
    std::size_t full = f.order() + gprime.order();
    return antiderivative(cauchy_product(f, gprime, product_cap(full, cap)));
}

TaylorSeries volterra(const TaylorSeries& g, const TaylorSeries& f, std::size_t cap) {
    return volterra_gprime(differentiate(g), f, cap);
}

TaylorSeries companion(const TaylorSeries& g, const TaylorSeries& f, std::size_t cap) {
    TaylorSeries fp = differentiate(f);
    std::size_t full = fp.order() + g.order();
    return antiderivative(cauchy_product(fp, g, product_cap(full, cap)));
}

TaylorSeries multiply(const TaylorSeries& g, const TaylorSeries& f, std::size_t cap) {
    std::size_t full = f.order() + g.order();
    return cauchy_product(g, f, cap == FULL_DEGREE ? full : std::min(full, cap));
}

double ibp_defect(const TaylorSeries& g, const TaylorSeries& f) {
    TaylorSeries T = volterra(g, f);
    TaylorSeries S = companion(g, f);
    TaylorSeries P = multiply(g, f);
    cplx c0 = g.a[0] * f.a[0];
    std::size_t deg = f.order() + g.order();
    double worst = 0;
    for (std::size_t k = 0; k <= deg; ++k) {
        cplx d = T.at(k) + S.at(k) - P.at(k);
        if (k == 0) d += c0;
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

TaylorSeries cesaro(const TaylorSeries& f) {
    std::vector<cplx> b(f.a.size());
    for (std::size_t m = 0; m < f.a.size(); ++m)
        b[m] = pairwise_sum(f.a.data(), m + 1) / double(m + 1);
    return TaylorSeries(std::move(b));
}

TaylorSeries companion_on_monomial(const TaylorSeries& f, std::size_t n) {
    if (n < 1) throw invalid_spec("companion_on_monomial needs n >= 1");
    std::vector<cplx> b(f.a.size());
    for (std::size_t k = 0; k < f.a.size(); ++k)
        b[k] = f.a[k] * (double(n) / double(n + k));
    if (f.hint.kind == TailHint::Kind::zero)
        return TaylorSeries(std::move(b), TailHint::exact());
    return TaylorSeries(std::move(b), f.hint); // |b_k| <= |a_k|, same bound holds
}

OperatorReport describe_application(const std::string& op, const TaylorSeries& g,
                                    const TaylorSeries& f, const TaylorSeries& out,
                                    std::size_t cap) {
    OperatorReport r;
    r.op = op;
    r.g_order = g.order();
    r.f_order = f.order();
    r.out_order = out.order();
    std::size_t full = f.order() + g.order() + (op == "Tg" || op == "Sg" ? 1 : 0);
    r.discarded = cap != FULL_DEGREE && full > out.order() ? full - out.order() : 0;
    r.ibp = ibp_defect(g, f);
    return r;
}

} // namespace hv
