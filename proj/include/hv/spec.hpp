#pragma once
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hv/taylor.hpp"

namespace hv {

// symbolic recipe for a function analytic on the open unit disk; realizable
// at any truncation order with coefficient-exact recurrences
struct FunctionSpec {
    // one of: monomial, neg_log_one_minus_z, neg_log_over_z, binomial_power,
    // shifted_binomial_power, singular_inner, blaschke_factor,
    // outer_three_minus_log, product, power, reciprocal, exp, log, linear_combo
    std::string kind;
    long n = 0;        // monomial degree
    double alpha = 0;  // binomial / power exponent
    cplx a{1.0, 0.0};  // shift / blaschke / neg-log rate parameter
    std::vector<FunctionSpec> bases;                  // product, power, reciprocal, exp, log
    std::vector<std::pair<cplx, FunctionSpec>> terms; // linear_combo

    static FunctionSpec parse(const nlohmann::json& j);
    // inline JSON (leading '{') or a catalog name
    static FunctionSpec parse_string(const std::string& text);
    nlohmann::ordered_json to_json() const;
    void validate() const;
};

inline constexpr std::size_t MAX_ORDER = 1u << 20;

TaylorSeries realize(const FunctionSpec& spec, std::size_t order);

const std::vector<std::string>& catalog_names();
FunctionSpec catalog_spec(const std::string& name);

} // namespace hv
