#include "hv/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "hv/util.hpp"

namespace hv {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::converged: return "converged";
        case Verdict::diverging: return "diverging";
        default: return "inconclusive";
    }
}

nlohmann::ordered_json NormEstimate::to_json() const {
    nlohmann::ordered_json j;
    j["value"] = value;
    j["status"] = verdict_name(status);
    j["samples"] = samples;
    if (growth_fit)
        j["growth_fit"] = *growth_fit;
    else
        j["growth_fit"] = nullptr;
    j["safe_radius"] = safe_radius();
    j["radii"] = radii;
    j["safe_count"] = safe_count;
    j["sections"] = sections;
    if (!truncation_note.empty()) j["truncation_note"] = truncation_note;
    return j;
}

std::optional<double> fit_growth(const std::vector<double>& samples, std::size_t safe_count,
                                 const std::vector<double>& radii) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < safe_count && i < samples.size(); ++i) {
        if (radii[i] < 0.875 || samples[i] <= 0.0) continue;
        xs.push_back(std::log(1.0 / (1.0 - radii[i])));
        ys.push_back(std::log(samples[i]));
    }
    if (xs.size() < 2) return std::nullopt;
    return fit_line(xs, ys).slope;
}

Verdict decide_verdict(const std::vector<double>& samples, std::size_t safe_count,
                       const std::vector<double>& sections,
                       const std::optional<double>& growth_fit, double converge_tol) {
    const std::size_t s = std::min(safe_count, samples.size());
    auto dsq = [&](std::size_t i) {
        return samples[i] * samples[i] - samples[i - 1] * samples[i - 1];
    };

    if (s >= 4) {
        const double d1 = dsq(s - 3), d2 = dsq(s - 2), d3 = dsq(s - 1);
        if (d1 > 0.0 && d2 > d1 && d3 > d2 && growth_fit && *growth_fit > 0.05)
            return Verdict::diverging;
    }

    if (sections.size() >= 2) {
        const double last = sections.back();
        const double incr = std::abs(last - sections[sections.size() - 2]);
        if (incr < converge_tol * std::max(std::abs(last), 1.0)) return Verdict::converged;
    }

    if (s >= 4) {
        const double d1 = dsq(s - 3), d2 = dsq(s - 2), d3 = dsq(s - 1);
        const double slack = 1e-15 * samples[s - 1] * samples[s - 1];
        const bool nonneg = d1 >= -slack && d2 >= -slack && d3 >= -slack;
        const bool contracting = d2 <= 0.9 * d1 + slack && d3 <= 0.9 * d2 + slack;
        bool sections_ok = true;
        if (sections.size() >= 3) {
            const std::size_t n = sections.size();
            const double s_last = sections[n - 1] - sections[n - 2];
            const double s_prev = sections[n - 2] - sections[n - 3];
            sections_ok = s_last <= s_prev + 1e-12 * std::max(std::abs(sections[n - 1]), 1.0);
        }
        if (nonneg && contracting && sections_ok) return Verdict::converged;
    }

    return Verdict::inconclusive;
}

} // namespace hv
