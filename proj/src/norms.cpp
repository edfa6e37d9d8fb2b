#include "hv/norms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "hv/errors.hpp"
#include "hv/fft.hpp"
#include "hv/operators.hpp"

namespace hv {

namespace {

double circle_mean_pow(const TaylorSeries& f, double r, double p, std::size_t M) {
    std::vector<cplx> vals = evaluate_on_circle(f, r, M);
    std::vector<double> t(M);
    if (p == 2.0)
        for (std::size_t m = 0; m < M; ++m) t[m] = std::norm(vals[m]);
    else
        for (std::size_t m = 0; m < M; ++m) t[m] = std::pow(std::abs(vals[m]), p);
    return pairwise_sum(t) / double(M);
}

// grid maximum of |h| on the circle of radius r, then a golden-section polish
// of the angle between the two neighbors of the best grid point
double circle_sup(const TaylorSeries& h, double r) {
    if (r == 0.0) return std::abs(h.a[0]);
    const std::size_t M = next_pow2(std::max<std::size_t>(256, 2 * (h.order() + 1)));
    std::vector<cplx> vals = evaluate_on_circle(h, r, M);
    std::size_t best = 0;
    double bv = -1.0;
    for (std::size_t m = 0; m < M; ++m) {
        double v = std::abs(vals[m]);
        if (v > bv) {
            bv = v;
            best = m;
        }
    }
    const double twopi = 2.0 * std::acos(-1.0);
    auto val = [&](double t) { return std::abs(horner_eval(h, std::polar(r, t))); };
    double a = (double(best) - 1.0) * twopi / double(M);
    double b = (double(best) + 1.0) * twopi / double(M);
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = val(c), fd = val(d);
    for (int it = 0; it < 64; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = val(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = val(d);
        }
    }
    return std::max(bv, std::max(fc, fd));
}

// boundary norms of the dyadic coefficient sections P_{2^i} f, i <= min(J, log2 N);
// capping at log2 N keeps the last increment an honest octave of stored data
std::vector<double> hardy_sections(const TaylorSeries& f, double p, int J) {
    std::vector<double> secs;
    const std::size_t N = f.order();
    if (N == 0 || J < 0) return secs;
    int jmax = 0;
    while (jmax + 1 <= J && (std::size_t(1) << (jmax + 1)) <= N) ++jmax;
    if (p == 2.0) {
        std::vector<double> sq(N + 1);
        for (std::size_t k = 0; k <= N; ++k) sq[k] = std::norm(f.a[k]);
        for (int i = 0; i <= jmax; ++i) {
            std::size_t d = std::size_t(1) << i;
            secs.push_back(std::sqrt(pairwise_sum(sq.data(), d + 1)));
        }
    } else {
        for (int i = 0; i <= jmax; ++i) {
            std::size_t d = std::size_t(1) << i;
            TaylorSeries part(std::vector<cplx>(f.a.begin(), f.a.begin() + d + 1),
                              TailHint::exact());
            secs.push_back(mean_p(part, 1.0, p));
        }
    }
    return secs;
}

std::string certification_note(std::size_t safe, std::size_t total, const TailHint& hint) {
    return std::to_string(safe) + "/" + std::to_string(total) +
           " samples tail-certified; hint " + hint.describe();
}

NormEstimate exact_estimate(double v, const char* what) {
    NormEstimate e;
    e.value = v;
    e.status = Verdict::converged;
    e.radii = {1.0};
    e.samples = {v};
    e.safe_count = 1;
    e.truncation_note = what;
    return e;
}

// positive-lag coefficient autocorrelation d_n = sum_k a_{k+n} conj(a_k)
std::vector<cplx> autocorrelation(const std::vector<cplx>& a) {
    const std::size_t M = next_pow2(2 * a.size());
    std::vector<cplx> buf(M, cplx(0));
    std::copy(a.begin(), a.end(), buf.begin());
    fft_pow2(buf, +1);
    for (auto& v : buf) v = cplx(std::norm(v), 0.0);
    fft_pow2(buf, -1);
    std::vector<cplx> d(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) d[n] = buf[n] / double(M);
    return d;
}

// mean of |g o phi_a|^2 over the circle: Re d_0 + 2 Re sum_{n>=1} d_n a^n,
// using that the circle means of powers of an inner function are a^{k-l}
double mobius_mean_sq(const std::vector<cplx>& d, cplx a) {
    cplx s(0);
    for (std::size_t n = d.size() - 1; n >= 1; --n) s = s * a + d[n];
    s *= a;
    return d[0].real() + 2.0 * s.real();
}

double bmoa_val(const std::vector<cplx>& d, const TaylorSeries& g, cplx a) {
    double v = mobius_mean_sq(d, a) - std::norm(horner_eval(g, a));
    return v < 0.0 ? 0.0 : v;
}

struct BmoaScan {
    std::vector<double> radii, samples;
    std::size_t safe_rows = 0;  // consecutive fully certified rows, center first
    double best_sq = 0;         // max certified squared oscillation
    std::size_t certified = 0, total = 0;
};

BmoaScan bmoa_scan(const TaylorSeries& g, const std::vector<cplx>& d, const TaylorSeries& gh,
                   const std::vector<cplx>& dh, int J, std::size_t angles, double tol) {
    const bool exact = g.hint.kind == TailHint::Kind::zero;
    const double twopi = 2.0 * std::acos(-1.0);
    BmoaScan sc;
    bool chain = true;
    auto probe = [&](cplx a, double& rowmax_cert, double& rowmax_all, bool& row_ok) {
        double v = bmoa_val(d, g, a);
        bool ok = exact || std::abs(v - bmoa_val(dh, gh, a)) <= tol * std::max(v, 1.0);
        ++sc.total;
        rowmax_all = std::max(rowmax_all, v);
        if (ok) {
            ++sc.certified;
            rowmax_cert = std::max(rowmax_cert, v);
            sc.best_sq = std::max(sc.best_sq, v);
        } else {
            row_ok = false;
        }
    };
    {
        double rc = -1, ra = 0;
        bool ok = true;
        probe(cplx(0), rc, ra, ok);
        sc.radii.push_back(0.0);
        sc.samples.push_back(std::sqrt(rc >= 0 ? rc : ra));
        if (ok && chain)
            ++sc.safe_rows;
        else
            chain = false;
    }
    for (int j = 1; j <= J; ++j) {
        const double r = 1.0 - std::ldexp(1.0, -j);
        double rc = -1, ra = 0;
        bool ok = true;
        for (std::size_t t = 0; t < angles; ++t)
            probe(std::polar(r, twopi * double(t) / double(angles)), rc, ra, ok);
        sc.radii.push_back(r);
        sc.samples.push_back(std::sqrt(rc >= 0 ? rc : ra));
        if (ok && chain)
            ++sc.safe_rows;
        else
            chain = false;
    }
    return sc;
}

} // namespace

double mean_p(const TaylorSeries& f, double r, double p, double gate_tol) {
    if (!(p > 0) || !std::isfinite(p)) throw invalid_spec("mean_p requires finite p > 0");
    if (r < 0.0 || r > 1.0) throw radius_out_of_range("mean_p radius outside [0,1]");
    std::size_t M = next_pow2(std::max<std::size_t>(256, 2 * (f.order() + 1)));
    if (p == 2.0) return std::sqrt(circle_mean_pow(f, r, 2.0, M));
    double prev = circle_mean_pow(f, r, p, M);
    while (M < (std::size_t(1) << 22)) {
        M *= 2;
        double cur = circle_mean_pow(f, r, p, M);
        if (std::abs(cur - prev) <= gate_tol * std::max(std::abs(cur), 1e-300))
            return std::pow(cur, 1.0 / p);
        prev = cur;
    }
    throw numeric_failure("angular refinement did not stabilize the integral mean");
}

NormEstimate hardy_norm(const TaylorSeries& f, double p, const LadderOptions& opts) {
    if (!(p > 0) || !std::isfinite(p)) throw invalid_spec("hardy_norm requires finite p > 0");
    NormEstimate est;
    RadiusLadder ladder = make_ladder(std::size_t(opts.J), opts.safe_rel_tol);
    const std::size_t N = f.order();
    bool chain = true;
    for (double r : ladder.radii) {
        double v = mean_p(f, r, p);
        double tail = (p == 2.0) ? tail_l2_bound(f.hint, N, r) : tail_sup_bound(f.hint, N, r);
        est.radii.push_back(r);
        est.samples.push_back(v);
        if (chain && tail <= opts.safe_rel_tol * std::max(v, 1e-300))
            ++est.safe_count;
        else
            chain = false;
    }
    // integral means grow with the radius; a certified drop is a quadrature bug
    for (std::size_t i = 1; i < est.safe_count; ++i)
        if (est.samples[i] < est.samples[i - 1] - 1e-12 * std::max(est.samples[i - 1], 1.0))
            throw numeric_failure("integral means decreased along the radius ladder");
    est.sections = hardy_sections(f, p, opts.J);
    est.growth_fit = fit_growth(est.samples, est.safe_count, est.radii);
    est.status =
        decide_verdict(est.samples, est.safe_count, est.sections, est.growth_fit, opts.converge_tol);
    if (est.status == Verdict::converged)
        est.value = (p == 2.0) ? std::sqrt(power_sum_sq(f, 1.0)) : mean_p(f, 1.0, p);
    else if (est.safe_count)
        est.value = est.samples[est.safe_count - 1];
    else if (!est.samples.empty())
        est.value = est.samples.back();
    est.truncation_note = certification_note(est.safe_count, est.samples.size(), f.hint);
    return est;
}

NormEstimate growth_sup(const TaylorSeries& f, double beta, bool on_derivative,
                        const LadderOptions& opts) {
    if (!std::isfinite(beta)) throw invalid_spec("growth exponent must be finite");
    TaylorSeries h = on_derivative ? differentiate(f) : f;
    const std::size_t N = h.order();
    NormEstimate est;
    std::vector<double> rs{0.0};
    RadiusLadder ladder = make_ladder(std::size_t(opts.J), opts.safe_rel_tol);
    rs.insert(rs.end(), ladder.radii.begin(), ladder.radii.end());
    bool chain = true;
    for (double r : rs) {
        double w = std::pow(1.0 - r * r, beta);
        double v = circle_sup(h, r) * w;
        double tail = tail_sup_bound(h.hint, N, r) * w;
        est.radii.push_back(r);
        est.samples.push_back(v);
        if (chain && tail <= opts.safe_rel_tol * std::max(v, 1e-300))
            ++est.safe_count;
        else
            chain = false;
    }
    double run = 0;
    for (std::size_t i = 0; i < est.safe_count; ++i) {
        run = std::max(run, est.samples[i]);
        est.sections.push_back(run);
    }
    est.growth_fit = fit_growth(est.samples, est.safe_count, est.radii);
    est.status =
        decide_verdict(est.samples, est.safe_count, est.sections, est.growth_fit, opts.converge_tol);
    if (est.status == Verdict::converged && !est.sections.empty())
        est.value = est.sections.back();
    else if (est.safe_count)
        est.value = est.samples[est.safe_count - 1];
    else if (!est.samples.empty())
        est.value = est.samples.back();
    est.truncation_note = certification_note(est.safe_count, est.samples.size(), h.hint);
    return est;
}

double bmoa_point(const TaylorSeries& g, cplx a) {
    if (std::abs(a) >= 1.0) throw invalid_spec("bmoa_point needs |a| < 1");
    return bmoa_val(autocorrelation(g.a), g, a);
}

double bmoa_point_direct(const TaylorSeries& g, cplx a, double r, std::size_t M) {
    if (std::abs(a) >= 1.0) throw invalid_spec("bmoa_point_direct needs |a| < 1");
    const double twopi = 2.0 * std::acos(-1.0);
    const cplx ga = horner_eval(g, a);
    std::vector<double> t(M);
    for (std::size_t m = 0; m < M; ++m) {
        cplx w = mobius(a, std::polar(r, twopi * double(m) / double(M)));
        t[m] = std::norm(horner_eval(g, w) - ga);
    }
    return pairwise_sum(t) / double(M);
}

NormEstimate bmoa_norm(const TaylorSeries& g, const BmoaGrid& grid) {
    const std::vector<cplx> d = autocorrelation(g.a);
    const std::size_t nh = g.order() / 2 + 1;
    TaylorSeries gh(std::vector<cplx>(g.a.begin(), g.a.begin() + std::ptrdiff_t(nh)),
                    TailHint::exact());
    const std::vector<cplx> dh = autocorrelation(gh.a);
    const double g0 = std::abs(g.a[0]);

    BmoaScan s1 = bmoa_scan(g, d, gh, dh, grid.J, grid.angles, grid.certify_tol);
    const double value1 = g0 + std::sqrt(s1.best_sq);

    NormEstimate est;
    est.radii = s1.radii;
    est.samples = s1.samples;
    est.safe_count = s1.safe_rows;
    est.growth_fit = fit_growth(est.samples, est.safe_count, est.radii);
    est.value = value1;
    Verdict dv = decide_verdict(est.samples, est.safe_count, {}, est.growth_fit, 1e-6);
    if (dv == Verdict::diverging) {
        est.status = Verdict::diverging;
        est.truncation_note = std::to_string(s1.certified) + "/" + std::to_string(s1.total) +
                              " grid points certified";
    } else {
        BmoaScan s2 = bmoa_scan(g, d, gh, dh, grid.J + 1, 2 * grid.angles, grid.certify_tol);
        const double value2 = g0 + std::sqrt(s2.best_sq);
        const double shift = std::abs(value2 - value1);
        if (shift <= 0.01 * std::max(value1, 1.0)) {
            est.status = Verdict::converged;
            est.value = value2;
        } else {
            est.status = Verdict::inconclusive;
        }
        est.truncation_note = std::to_string(s1.certified) + "/" + std::to_string(s1.total) +
                              " grid points certified; doubled-grid shift " + fmt17(shift);
    }
    return est;
}

NormEstimate carleson_seminorm(const TaylorSeries& g, int max_depth, bool log_weight,
                               std::size_t radial_points, double cut_rel_tol) {
    if (max_depth < 0) throw invalid_spec("carleson_seminorm needs max_depth >= 0");
    TaylorSeries gp = differentiate(g);
    const double r_cut = eval_cut_radius(gp, cut_rel_tol);
    const double u_cut = std::min(1.0, r_cut * r_cut);
    std::vector<double> x, gw;
    gauss_legendre(int(radial_points), x, gw);
    const double ln2 = std::log(2.0);

    NormEstimate est;
    std::vector<double> vsq;
    for (int l = 0; l <= max_depth; ++l) {
        const double h = std::ldexp(1.0, -l);
        const double u_lo = (1.0 - h) * (1.0 - h);
        if (u_cut <= u_lo) {
            est.truncation_note = "depth limited to " + std::to_string(l - 1) +
                                  " by the evaluation cut r=" + fmt17(r_cut);
            break;
        }
        const std::size_t B = std::size_t(1) << l;
        const std::size_t M =
            next_pow2(std::max<std::size_t>(2 * (gp.order() + 1), std::size_t(32) << l));
        const std::size_t per = M / B;
        std::vector<double> acc(B, 0.0);
        std::vector<double> sq(M);
        for (std::size_t i = 0; i < radial_points; ++i) {
            const double u = 0.5 * (u_cut - u_lo) * x[i] + 0.5 * (u_cut + u_lo);
            const double wu = 0.5 * (u_cut - u_lo) * gw[i];
            std::vector<cplx> vals = evaluate_on_circle(gp, std::sqrt(u), M);
            for (std::size_t m = 0; m < M; ++m) sq[m] = std::norm(vals[m]);
            for (std::size_t t = 0; t < B; ++t)
                acc[t] += wu * (1.0 - u) * (pairwise_sum(sq.data() + t * per, per) / double(per));
        }
        const double q = *std::max_element(acc.begin(), acc.end());
        const double lw = log_weight ? (1.0 + double(l) * ln2) * (1.0 + double(l) * ln2) : 1.0;
        vsq.push_back(q * lw);
        est.radii.push_back(1.0 - h);
        est.samples.push_back(std::sqrt(q * lw));
    }
    if (vsq.empty()) throw numeric_failure("no Carleson depth certifiable at this order");

    est.safe_count = vsq.size();
    est.growth_fit = fit_growth(est.samples, est.safe_count, est.radii);
    const std::size_t L = vsq.size() - 1;
    if (L >= 2) {
        bool increasing = true;
        for (std::size_t l = 2; l <= L; ++l)
            if (!(vsq[l] > vsq[l - 1])) increasing = false;
        if (increasing && vsq[L] >= 2.0 * vsq[L / 2])
            est.status = Verdict::diverging;
        else if (vsq[L] <= 1.5 * vsq[(L + 1) / 2])
            est.status = Verdict::converged;
        else
            est.status = Verdict::inconclusive;
    }
    est.value = *std::max_element(est.samples.begin(), est.samples.end());
    if (est.truncation_note.empty())
        est.truncation_note = "all depths through " + std::to_string(L) +
                              " inside the evaluation cut r=" + fmt17(r_cut);
    return est;
}

double lp_functional(const TaylorSeries& f) {
    std::vector<double> t(f.order() + 1);
    t[0] = std::norm(f.a[0]);
    for (std::size_t k = 1; k <= f.order(); ++k)
        t[k] = double(k) / double(k + 1) * std::norm(f.a[k]);
    return pairwise_sum(t);
}

double lp_functional_quadrature(const TaylorSeries& f, const PolarGrid& grid) {
    TaylorSeries fp = differentiate(f);
    auto provider = [&](double r, std::size_t M) {
        const std::size_t Me = next_pow2(std::max(M, 2 * (fp.order() + 1)));
        std::vector<cplx> vals = evaluate_on_circle(fp, r, Me);
        std::vector<double> out(Me);
        const double w = 1.0 - r * r;
        for (std::size_t m = 0; m < Me; ++m) out[m] = std::norm(vals[m]) * w;
        return out;
    };
    return std::norm(f.a[0]) + area_integral(provider, grid);
}

cplx a21_inner(const TaylorSeries& f, const TaylorSeries& h) {
    const std::size_t n = std::min(f.order(), h.order());
    std::vector<cplx> t(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        t[k] = f.a[k] * std::conj(h.a[k]) * (2.0 / (double(k + 1) * double(k + 2)));
    return pairwise_sum(t.data(), t.size());
}

double a21_norm(const TaylorSeries& f) {
    return std::sqrt(std::max(0.0, a21_inner(f, f).real()));
}

double bergman_weighted_norm(const TaylorSeries& f, const TaylorSeries& g, std::size_t cap) {
    TaylorSeries gp = differentiate(g);
    const std::size_t full = f.order() + gp.order();
    TaylorSeries w = cauchy_product(f, gp, std::min(cap, full));
    std::vector<double> t(w.order() + 1);
    for (std::size_t k = 0; k <= w.order(); ++k)
        t[k] = std::norm(w.a[k]) / (double(k + 1) * double(k + 2));
    return std::sqrt(pairwise_sum(t));
}

NormEstimate optimal_domain_norm(const TaylorSeries& g, const TaylorSeries& f, double p,
                                 const LadderOptions& opts) {
    bool nonconstant = false;
    for (std::size_t k = 1; k <= g.order() && !nonconstant; ++k)
        if (g.a[k] != cplx(0)) nonconstant = true;
    if (!nonconstant) throw constant_symbol("domain norm undefined: the symbol is constant");
    // keep only coefficients the truncations determine exactly: c_k of f g'
    // needs every f_j (j <= k) and g'_j (j <= k) unless that factor is an
    // exact polynomial
    TaylorSeries gp = differentiate(g);
    const std::size_t kf =
        f.hint.kind == TailHint::Kind::zero ? FULL_DEGREE : f.order();
    const std::size_t kg =
        gp.hint.kind == TailHint::Kind::zero ? FULL_DEGREE : gp.order();
    const std::size_t exact = std::min(kf, kg);
    TaylorSeries image =
        volterra_gprime(gp, f, exact == FULL_DEGREE ? FULL_DEGREE : exact + 1);
    NormEstimate est = hardy_norm(image, p, opts);
    est.truncation_note = "transform image of order " + std::to_string(image.order()) + "; " +
                          est.truncation_note;
    return est;
}

const char* space_kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::hardy: return "Hp";
        case SpaceKind::hardy_inf: return "Hinf";
        case SpaceKind::bmoa: return "BMOA";
        case SpaceKind::bmoa_log: return "BMOAlog";
        case SpaceKind::bloch: return "Bloch";
        case SpaceKind::korenblum: return "Korenblum";
        case SpaceKind::lipschitz: return "Lipschitz";
        case SpaceKind::a21: return "A21";
        case SpaceKind::bergman: return "Bergman";
        case SpaceKind::optimal_domain: return "OptimalDomain";
    }
    return "?";
}

SpaceSpec parse_space(const std::string& text) {
    if (text == "Hinf") return {SpaceKind::hardy_inf, 0.0};
    if (text == "BMOA") return {SpaceKind::bmoa, 0.0};
    if (text == "BMOAlog") return {SpaceKind::bmoa_log, 0.0};
    if (text == "Bloch") return {SpaceKind::bloch, 0.0};
    if (text == "Korenblum") return {SpaceKind::korenblum, 0.0};
    if (text == "Lipschitz") return {SpaceKind::lipschitz, 0.0};
    if (text == "A21") return {SpaceKind::a21, 0.0};
    if (text == "Bergman") return {SpaceKind::bergman, 0.0};
    if (text == "OptimalDomain") return {SpaceKind::optimal_domain, 0.0};
    if (text.size() > 1 && text[0] == 'H') {
        std::size_t pos = 0;
        double p = 0;
        try {
            p = std::stod(text.substr(1), &pos);
        } catch (const std::exception&) {
            throw invalid_spec("unknown space: " + text);
        }
        if (pos != text.size() - 1 || !(p > 0) || !std::isfinite(p))
            throw invalid_spec("bad Hardy exponent in: " + text);
        return {SpaceKind::hardy, p};
    }
    throw invalid_spec("unknown space: " + text);
}

NormEstimate space_norm(const SpaceSpec& sp, const TaylorSeries& f, const SpaceContext& cx) {
    switch (sp.kind) {
        case SpaceKind::hardy:
            return hardy_norm(f, sp.p, cx.ladder);
        case SpaceKind::hardy_inf:
            return growth_sup(f, 0.0, false, cx.ladder);
        case SpaceKind::bmoa:
            return bmoa_norm(f, cx.bmoa);
        case SpaceKind::bmoa_log: {
            NormEstimate e = carleson_seminorm(f, cx.carleson_depth, true);
            e.value += std::abs(f.a[0]);
            return e;
        }
        case SpaceKind::bloch: {
            NormEstimate e = growth_sup(f, 1.0, true, cx.ladder);
            e.value += std::abs(f.a[0]);
            return e;
        }
        case SpaceKind::korenblum:
            if (!(cx.alpha > 0) || !std::isfinite(cx.alpha))
                throw invalid_spec("Korenblum norm needs alpha > 0");
            return growth_sup(f, cx.alpha, false, cx.ladder);
        case SpaceKind::lipschitz: {
            if (!(cx.alpha > 0) || !(cx.alpha <= 1))
                throw invalid_spec("Lipschitz norm needs alpha in (0,1]");
            NormEstimate e = growth_sup(f, 1.0 - cx.alpha, true, cx.ladder);
            e.value += std::abs(f.a[0]);
            return e;
        }
        case SpaceKind::a21:
            return exact_estimate(a21_norm(f), "coefficient-exact functional");
        case SpaceKind::bergman:
            if (!cx.symbol) throw invalid_spec("Bergman norm needs a symbol (--g)");
            return exact_estimate(bergman_weighted_norm(f, *cx.symbol),
                                  "coefficient-exact functional");
        case SpaceKind::optimal_domain:
            if (!cx.symbol) throw invalid_spec("OptimalDomain norm needs a symbol (--g)");
            return optimal_domain_norm(*cx.symbol, f, cx.domain_p, cx.ladder);
    }
    throw invalid_spec("unhandled space kind");
}

} // namespace hv
