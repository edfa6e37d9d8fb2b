#pragma once
#include <stdexcept>
#include <string>

namespace hv {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a FunctionSpec or SpaceSpec that cannot be realized (bad kind, missing field,
// reciprocal/power/log of a series with vanishing constant term, ...)
struct invalid_spec : error {
    using error::error;
};

// requested truncation order above the configured maximum
struct order_overflow : error {
    using error::error;
};

// evaluation point outside the domain the truncation can certify
struct radius_out_of_range : error {
    using error::error;
};

// Mobius transform asked to divide by zero
struct pole_hit : error {
    using error::error;
};

// a computation produced values it cannot stand behind (NaN/Inf, failed doubling gate)
struct numeric_failure : error {
    using error::error;
};

// operator norm requested for a constant symbol (T_g = 0)
struct constant_symbol : error {
    using error::error;
};

// Gram system condition estimate above threshold
struct ill_conditioned : error {
    using error::error;
};

} // namespace hv
