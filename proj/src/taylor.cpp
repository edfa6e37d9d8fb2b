#include "hv/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hv/errors.hpp"
#include "hv/fft.hpp"

namespace hv {

std::string TailHint::describe() const {
    char buf[128];
    switch (kind) {
    case Kind::zero:
        return "zero";
    case Kind::geometric:
        std::snprintf(buf, sizeof buf, "geometric C=%.3g rho=%.6g%s", C, rho,
                      heuristic ? " (fitted)" : "");
        return buf;
    case Kind::poly:
        std::snprintf(buf, sizeof buf, "poly C=%.3g m=%.3g%s", C, m,
                      heuristic ? " (fitted)" : "");
        return buf;
    }
    return "?";
}

static double hint_at(const TailHint& h, std::size_t k) {
    switch (h.kind) {
    case TailHint::Kind::zero: return 0;
    case TailHint::Kind::geometric: return h.C * std::pow(h.rho, -double(k));
    case TailHint::Kind::poly: return h.C * std::pow(double(std::max<std::size_t>(k, 1)), h.m);
    }
    return 0;
}

TaylorSeries::TaylorSeries(std::vector<cplx> coeffs) : a(std::move(coeffs)) {
    if (a.empty()) a.assign(1, cplx(0));
    hint = fit_tail_hint(a);
    validate();
}

TaylorSeries::TaylorSeries(std::vector<cplx> coeffs, TailHint h) : a(std::move(coeffs)), hint(h) {
    if (a.empty()) a.assign(1, cplx(0));
    validate();
}

void TaylorSeries::validate() const {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!std::isfinite(a[k].real()) || !std::isfinite(a[k].imag()))
            throw numeric_failure("non-finite coefficient at index " + std::to_string(k));
    if (hint.kind == TailHint::Kind::zero) return;
    if (!(hint.C >= 0) || !std::isfinite(hint.C))
        throw invalid_spec("tail hint needs finite C >= 0");
    if (hint.kind == TailHint::Kind::geometric && !(hint.rho > 1))
        throw invalid_spec("geometric tail hint needs rho > 1");
    // the declared bound must already hold on the stored range (constant term exempt:
    // hints describe asymptotics, and every bound form is monotone past k = 1)
    for (std::size_t k = 1; k < a.size(); ++k) {
        double b = hint_at(hint, k);
        if (std::abs(a[k]) > b * (1 + 1e-9) + 1e-300)
            throw invalid_spec("tail hint violated by stored coefficient at index " +
                               std::to_string(k));
    }
}

TailHint fit_tail_hint(const std::vector<cplx>& a) {
    std::size_t N = a.size() - 1;
    // collect the last-quartile nonzero moduli
    std::vector<double> ks, logs;
    std::size_t lo = N - std::min<std::size_t>(N, std::max<std::size_t>(N / 4, 8));
    if (lo < 1) lo = 1;
    for (std::size_t k = lo; k <= N; ++k) {
        double m = std::abs(a[k]);
        if (m > 0) {
            ks.push_back(double(k));
            logs.push_back(std::log(m));
        }
    }
    if (ks.size() < 4) {
        // (near-)polynomial data: everything past the stored range is treated as zero
        bool all_zero_tail = true;
        for (std::size_t k = (N + 1) / 2; k <= N && k >= 1; ++k)
            if (std::abs(a[k]) != 0) { all_zero_tail = false; break; }
        if (all_zero_tail) return TailHint::exact();
        // fall back to a flat bound at the max modulus
        double mx = 0;
        for (std::size_t k = 1; k < a.size(); ++k) mx = std::max(mx, std::abs(a[k]));
        return TailHint::power(mx, 0, true);
    }
    // compare log|a_k| ~ c - k log(rho)  against  log|a_k| ~ c + m log k
    std::vector<double> logks(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) logks[i] = std::log(ks[i]);
    LineFit geo = fit_line(ks, logs);
    LineFit pol = fit_line(logks, logs);
    auto resid = [&](const LineFit& f, const std::vector<double>& x) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double e = logs[i] - (f.intercept + f.slope * x[i]);
            s += e * e;
        }
        return s;
    };
    double rg = resid(geo, ks), rp = resid(pol, logks);
    TailHint h;
    if (geo.slope < -1e-12 && rg <= rp) {
        h = TailHint::geo(std::exp(geo.intercept), std::exp(-geo.slope), true);
    } else {
        h = TailHint::power(std::exp(pol.intercept), pol.slope, true);
    }
    // raise C so the bound covers every stored k >= 1
    double scale = 1;
    for (std::size_t k = 1; k < a.size(); ++k) {
        double b = hint_at(h, k);
        double m = std::abs(a[k]);
        if (m > 0 && b > 0) scale = std::max(scale, m / b);
        else if (m > 0 && b == 0) scale = std::max(scale, 1e308);
    }
    h.C *= scale * (1 + 1e-9);
    return h;
}

double tail_sup_bound(const TailHint& h, std::size_t N, double r) {
    if (h.kind == TailHint::Kind::zero) return 0;
    if (!(r >= 0) || r >= 1) return INF;
    if (r == 0) return 0;
    double s = 0;
    if (h.kind == TailHint::Kind::geometric) {
        double q = r / h.rho;
        if (q >= 1) { // sum numerically until the terms die or diverge
            double t = h.C * std::pow(q, double(N + 1));
            for (int it = 0; it < 100000; ++it) {
                s += t;
                t *= q;
                if (t < 1e-18 * (s + 1e-300)) return s;
                if (!std::isfinite(s)) return INF;
            }
            return INF;
        }
        return h.C * std::pow(q, double(N + 1)) / (1 - q);
    }
    // poly: sum C k^m r^k until the geometric decay certifies the remainder
    double t;
    std::size_t k = N + 1;
    for (int it = 0; it < 4000000; ++it, ++k) {
        t = h.C * std::pow(double(k), h.m) * std::pow(r, double(k));
        s += t;
        // once k^m grows slower than a fixed geometric cushion, bound the rest
        double q = r * std::pow(double(k + 1) / double(k), std::max(h.m, 0.0));
        if (q < 1 && t * q / (1 - q) < 1e-15 * (s + 1e-300)) return s + t * q / (1 - q);
        if (!std::isfinite(s)) return INF;
    }
    return INF;
}

double tail_l2_bound(const TailHint& h, std::size_t N, double r) {
    if (h.kind == TailHint::Kind::zero) return 0;
    if (!(r >= 0) || r > 1) return INF;
    if (r == 0) return 0;
    double s = 0;
    if (h.kind == TailHint::Kind::geometric) {
        double q = (r / h.rho) * (r / h.rho);
        if (q >= 1) return INF;
        s = h.C * h.C * std::pow(q, double(N + 1)) / (1 - q);
        return std::sqrt(s);
    }
    if (r == 1) {
        // sum C^2 k^{2m}: finite iff 2m < -1
        if (h.m >= -0.5) return INF;
        std::size_t k = N + 1;
        for (int it = 0; it < 4000000; ++it, ++k) {
            double t = h.C * h.C * std::pow(double(k), 2 * h.m);
            s += t;
            // integral-comparison remainder: sum_{j>k} j^{2m} <= k^{2m+1}/(-2m-1)
            double rem = std::pow(double(k), 2 * h.m + 1) / (-2 * h.m - 1);
            if (rem < 1e-12 * (s + 1e-300)) return std::sqrt(s + rem);
        }
        return INF;
    }
    std::size_t k = N + 1;
    for (int it = 0; it < 4000000; ++it, ++k) {
        double t = h.C * h.C * std::pow(double(k), 2 * h.m) * std::pow(r, 2.0 * double(k));
        s += t;
        double q = r * r * std::pow(double(k + 1) / double(k), std::max(2 * h.m, 0.0));
        if (q < 1 && t * q / (1 - q) < 1e-15 * (s + 1e-300))
            return std::sqrt(s + t * q / (1 - q));
        if (!std::isfinite(s)) return INF;
    }
    return INF;
}

// ---- arithmetic ----

static TailHint combine_hints_linear(const std::vector<std::pair<cplx, const TaylorSeries*>>& ts) {
    // zero + zero stays zero; otherwise fall back to a fitted hint downstream
    for (auto& [c, f] : ts)
        if (f->hint.kind != TailHint::Kind::zero) return TailHint::power(0, 0, true);
    (void)ts;
    return TailHint::exact();
}

TaylorSeries linear_combine(const std::vector<std::pair<cplx, const TaylorSeries*>>& terms,
                            std::size_t order) {
    std::vector<cplx> out(order + 1, cplx(0));
    for (auto& [c, f] : terms)
        for (std::size_t k = 0; k <= order && k < f->a.size(); ++k) out[k] += c * f->a[k];
    TailHint h = combine_hints_linear(terms);
    if (h.kind == TailHint::Kind::zero) {
        // exactness survives only if nothing got cut
        for (auto& [c, f] : terms)
            if (f->a.size() > order + 1)
                for (std::size_t k = order + 1; k < f->a.size(); ++k)
                    if (std::abs(c) * std::abs(f->a[k]) != 0) return TaylorSeries(std::move(out));
        return TaylorSeries(std::move(out), TailHint::exact());
    }
    return TaylorSeries(std::move(out));
}

TaylorSeries cauchy_product(const TaylorSeries& f, const TaylorSeries& g, std::size_t order) {
    std::size_t full = f.order() + g.order();
    std::size_t N = std::min(order, full);
    std::vector<cplx> out(N + 1, cplx(0));
    std::vector<cplx> terms;
    for (std::size_t n = 0; n <= N; ++n) {
        std::size_t jlo = n > g.order() ? n - g.order() : 0;
        std::size_t jhi = std::min(n, f.order());
        terms.clear();
        terms.reserve(jhi - jlo + 1);
        for (std::size_t j = jlo; j <= jhi; ++j) {
            cplx t = f.a[j] * g.a[n - j];
            // exact zeros never change a pairwise sum; skipping keeps sparse
            // inputs (monomials) cheap
            if (t.real() != 0.0 || t.imag() != 0.0) terms.push_back(t);
        }
        out[n] = pairwise_sum(terms.data(), terms.size());
    }
    if (out.size() < order + 1) out.resize(order + 1, cplx(0));
    if (f.hint.kind == TailHint::Kind::zero && g.hint.kind == TailHint::Kind::zero &&
        order >= full)
        return TaylorSeries(std::move(out), TailHint::exact());
    return TaylorSeries(std::move(out));
}

TaylorSeries reciprocal(const TaylorSeries& f, std::size_t order) {
    cplx f0 = f.a[0];
    if (std::abs(f0) == 0) throw invalid_spec("reciprocal of a series vanishing at 0");
    std::vector<cplx> b(order + 1, cplx(0));
    b[0] = cplx(1) / f0;
    // f * b = 1  =>  b_n = -(1/f0) sum_{j=1..n} f_j b_{n-j}
    for (std::size_t n = 1; n <= order; ++n) {
        std::vector<cplx> terms;
        std::size_t jhi = std::min(n, f.order());
        terms.reserve(jhi);
        for (std::size_t j = 1; j <= jhi; ++j) terms.push_back(f.a[j] * b[n - j]);
        b[n] = -pairwise_sum(terms.data(), terms.size()) / f0;
    }
    return TaylorSeries(std::move(b));
}

TaylorSeries series_log(const TaylorSeries& f, std::size_t order) {
    cplx f0 = f.a[0];
    if (std::abs(f0) == 0) throw invalid_spec("log of a series vanishing at 0");
    // (log f)' = f'/f  =>  n b_n = n f_n/f0 - (1/f0) sum_{j=1..n-1} j b_j f_{n-j}
    std::vector<cplx> b(order + 1, cplx(0));
    b[0] = std::log(f0);
    for (std::size_t n = 1; n <= order; ++n) {
        std::vector<cplx> terms;
        for (std::size_t j = 1; j < n; ++j)
            if (n - j <= f.order()) terms.push_back(double(j) * b[j] * f.a[n - j]);
        cplx s = pairwise_sum(terms.data(), terms.size());
        cplx fn = n <= f.order() ? f.a[n] : cplx(0);
        b[n] = (double(n) * fn - s) / (double(n) * f0);
    }
    return TaylorSeries(std::move(b));
}

TaylorSeries series_exp(const TaylorSeries& f, std::size_t order) {
    // b' = f' b  =>  n b_n = sum_{j=1..n} j f_j b_{n-j}
    std::vector<cplx> b(order + 1, cplx(0));
    b[0] = std::exp(f.a[0]);
    for (std::size_t n = 1; n <= order; ++n) {
        std::vector<cplx> terms;
        std::size_t jhi = std::min(n, f.order());
        for (std::size_t j = 1; j <= jhi; ++j) terms.push_back(double(j) * f.a[j] * b[n - j]);
        b[n] = pairwise_sum(terms.data(), terms.size()) / double(n);
    }
    return TaylorSeries(std::move(b));
}

TaylorSeries series_pow(const TaylorSeries& f, double alpha, std::size_t order) {
    if (std::abs(f.a[0]) == 0)
        throw invalid_spec("fractional power of a series vanishing at 0");
    TaylorSeries lg = series_log(f, order);
    for (auto& c : lg.a) c *= alpha;
    return series_exp(lg, order);
}

TaylorSeries differentiate(const TaylorSeries& f) {
    std::vector<cplx> b(std::max<std::size_t>(f.order(), 1), cplx(0));
    for (std::size_t k = 1; k <= f.order(); ++k) b[k - 1] = double(k) * f.a[k];
    if (f.hint.kind == TailHint::Kind::zero)
        return TaylorSeries(std::move(b), TailHint::exact());
    return TaylorSeries(std::move(b));
}

TaylorSeries antiderivative(const TaylorSeries& f) {
    std::vector<cplx> b(f.order() + 2, cplx(0));
    for (std::size_t k = 0; k <= f.order(); ++k) b[k + 1] = f.a[k] / double(k + 1);
    if (f.hint.kind == TailHint::Kind::zero)
        return TaylorSeries(std::move(b), TailHint::exact());
    return TaylorSeries(std::move(b));
}

cplx horner_eval(const TaylorSeries& f, cplx z) {
    // Horner with a running compensation term
    cplx s(0), c(0);
    for (std::size_t k = f.a.size(); k-- > 0;) {
        cplx prod = s * z;
        cplx y = f.a[k] - c;
        cplx t = prod + y;
        c = (t - prod) - y;
        s = t;
    }
    return s;
}

EvalResult evaluate(const TaylorSeries& f, cplx z) {
    double r = std::abs(z);
    if (r >= 1) throw radius_out_of_range("evaluate needs |z| < 1");
    return {horner_eval(f, z), tail_sup_bound(f.hint, f.order(), r)};
}

std::vector<cplx> evaluate_on_circle(const TaylorSeries& f, double r, std::size_t M) {
    if (M == 0 || (M & (M - 1)) != 0 || M < 2 * (f.order() + 1))
        throw invalid_spec("circle sample count must be a power of two >= 2*(order+1)");
    if (!(r >= 0) || r > 1) throw radius_out_of_range("circle radius must lie in [0,1]");
    std::vector<cplx> buf(M, cplx(0));
    double rk = 1;
    for (std::size_t k = 0; k < f.a.size(); ++k) {
        buf[k % M] += f.a[k] * rk;
        rk *= r;
    }
    fft_pow2(buf, +1);
    return buf;
}

double power_sum_sq(const TaylorSeries& f, double r) {
    std::vector<double> t(f.a.size());
    double r2 = r * r, rk = 1;
    for (std::size_t k = 0; k < f.a.size(); ++k) {
        t[k] = std::norm(f.a[k]) * rk;
        rk *= r2;
    }
    return pairwise_sum(t);
}

double h2_norm_exact(const TaylorSeries& f) { return std::sqrt(power_sum_sq(f, 1.0)); }

} // namespace hv
