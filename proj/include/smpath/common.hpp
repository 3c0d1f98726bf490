#pragma once

#include <stdexcept>
#include <string>

namespace smpath {

/// Model kind / parameter combination that the toolkit does not support.
struct invalid_model_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a configured resource cap (e.g. dense factorization size).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadrature failed to reach the requested tolerance. Carries the error
/// estimate that was actually achieved.
struct accuracy_error : std::runtime_error {
    accuracy_error(const std::string& what, double achieved_estimate)
        : std::runtime_error(what), achieved(achieved_estimate) {}
    double achieved;
};

// Desk-scale caps. FBM paths go through a dense covariance factorization,
// dyadic fields through (2^n+1)^d grids.
inline constexpr int fbm_max_grid_points = 4097;
inline constexpr int field_max_depth_1d = 12;
inline constexpr int field_max_depth_2d = 9;

} // namespace smpath
