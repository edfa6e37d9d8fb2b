#pragma once
#include <string>
#include <vector>

#include "hv/config.hpp"
#include "hv/norms.hpp"
#include "hv/report.hpp"
#include "hv/spec.hpp"

namespace hv {

// Each experiment realizes its inputs from FunctionSpecs, runs the relevant
// estimators, and grades the outcome against a registered expectation whose
// rule text is recorded verbatim in the report.

ExperimentReport monomial_decay(const FunctionSpec& g, double p,
                                const std::vector<std::size_t>& n_list, const RunConfig& cfg);

// variant "log-pair": symbol z, outer companion, log-power witness;
// variant "shifted-pair": log symbol, witness (1+z)^{-5/4}, companion arctanh-type symbol
ExperimentReport witness_report(const std::string& variant, const RunConfig& cfg);

ExperimentReport intersection_probe(const FunctionSpec& f, const std::vector<std::size_t>& n_list,
                                    double p, const RunConfig& cfg);

ExperimentReport multiplier_probe(const FunctionSpec& g, const FunctionSpec& h, double p,
                                  const std::vector<FunctionSpec>& family, const RunConfig& cfg);

ExperimentReport cyclicity_residual(const FunctionSpec& symbol, const std::vector<int>& degrees,
                                    const RunConfig& cfg);

ExperimentReport aleman_cima_probe(const FunctionSpec& g, double p1, double p2,
                                   const std::vector<std::size_t>& n_list, const RunConfig& cfg);

ExperimentReport blaschke_case_probe(const std::vector<cplx>& b_params, double p1, double p2,
                                     const RunConfig& cfg);

ExperimentReport korenblum_multiplier_probe(const FunctionSpec& g, double gamma, double delta,
                                            const RunConfig& cfg);

ExperimentReport growth_pair_verify(const FunctionSpec& f1, const FunctionSpec& f2, double alpha,
                                    const RunConfig& cfg);

// minimum of ||1 - p S|| over polynomials p of degree <= N in the weighted
// Bergman space, via the exact Gram system (eigendecomposition with relative
// eigenvalue cutoff 1e-14)
struct CyclicityPoint {
    int degree = 0;
    double residual = 0;
    double condition = 1;
    bool ill_conditioned = false;  // condition estimate above 1e12; flagged, not fatal
};
std::vector<CyclicityPoint> cyclicity_curve(const TaylorSeries& S, const std::vector<int>& degrees);
// dense least-squares oracle (QR on the weighted coefficient matrix)
double cyclicity_residual_qr(const TaylorSeries& S, int degree);

std::vector<FunctionSpec> default_multiplier_family();  // ten catalog functions
std::vector<FunctionSpec> concentration_family();       // (1-z)^{-1/2+1/k}, k = 1..10

// "16..1024" -> powers of two in range; "1,3,10" -> literal list
std::vector<std::size_t> parse_n_list(const std::string& text);

const std::vector<std::string>& experiment_names();
ExperimentReport run_named_experiment(const std::string& name, const nlohmann::json& args,
                                      const RunConfig& cfg);

} // namespace hv
