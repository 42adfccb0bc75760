#pragma once

#include <functional>

#include "core/types.hpp"

namespace tilefield {

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error bound
};

struct IntegralResult3 {
    Vec3 value;
    double error = 0.0;  // max over components
};

// Adaptive 15-point Gauss-Kronrod integration on [a, b]. Bisects the interval
// with the largest error estimate until
//   sum(error) <= max(abs_tol, rel_tol * |sum(value)|).
// Throws ConvergenceError after max_subdivisions (carrying the best estimate)
// and IntegrandError if the integrand returns NaN.
IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec);

// Vector-valued variant sharing integrand evaluations across components;
// the error control uses the max-abs component norm.
IntegralResult3 integrate_1d_vec3(const std::function<Vec3(double)>& f, double a, double b,
                                  const QuadratureSpec& spec);

// Nested 2D integration over [ax,bx] x [ay,by]. The inner integral runs at a
// tolerance 10x tighter than the outer so inner noise stays below the outer
// error estimate.
IntegralResult integrate_2d(const std::function<double(double, double)>& f, double ax,
                            double bx, double ay, double by, const QuadratureSpec& spec);

IntegralResult3 integrate_2d_vec3(const std::function<Vec3(double, double)>& f, double ax,
                                  double bx, double ay, double by,
                                  const QuadratureSpec& spec);

}  // namespace tilefield
