#pragma once
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hv {

enum class Verdict { converged, diverging, inconclusive };
const char* verdict_name(Verdict v);

// a norm value together with the evidence that produced it: the radius-ladder
// (or depth) samples, how many of them the truncation certifies, the
// dyadic-section sequence used for the convergence test, and the fitted
// boundary-growth exponent
struct NormEstimate {
    double value = 0;
    Verdict status = Verdict::inconclusive;
    std::vector<double> radii;
    std::vector<double> samples;
    std::size_t safe_count = 0;     // samples[0..safe_count) certified by the tail hint
    std::vector<double> sections;   // section norms at the boundary (or running sups)
    std::optional<double> growth_fit;
    std::string truncation_note;

    double safe_radius() const { return safe_count ? radii[safe_count - 1] : 0.0; }
    nlohmann::ordered_json to_json() const;
};

// slope of log(sample) against log(1/(1-r)) over certified samples with
// r >= 0.875; nullopt when fewer than two usable points
std::optional<double> fit_growth(const std::vector<double>& samples, std::size_t safe_count,
                                 const std::vector<double>& radii);

// Decision rules, applied in order to the certified samples v_1..v_s
// (d_i below are the squared-sample increments v_i^2 - v_{i-1}^2):
//   diverging:  last three d_i positive and strictly increasing, and the
//               fitted growth exponent exceeds 0.05;
//   converged (stalled sections): the last section increment is below
//               tol * max(section, 1);
//   converged (contracting increments): last three d_i nonnegative and
//               decreasing with ratio <= 0.9, and the section increments
//               are themselves decreasing when sections are available;
//   otherwise inconclusive.
Verdict decide_verdict(const std::vector<double>& samples, std::size_t safe_count,
                       const std::vector<double>& sections,
                       const std::optional<double>& growth_fit, double converge_tol);

} // namespace hv
