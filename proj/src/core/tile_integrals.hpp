#pragma once

#include <utility>

#include "core/geometry.hpp"
#include "core/quadrature.hpp"
#include "core/types.hpp"

namespace tilefield {

// Algebraic building blocks of the closed-form antiderivatives. All take
// canonical-frame arguments.
double helper_A(double r, double x, double theta, double z);   // sqrt(r^2 - 2xr cos + x^2 + z^2)
double helper_B(double x, double theta, double z);             // x^2(cos^2 - 1) - z^2
double helper_C(double r, double x);                           // 4rx/(r+x)^2
double helper_D(double theta);                                 // cos(theta/2)
double helper_E(double r, double x, double z);                 // 2 sqrt(rx/((r+x)^2 + z^2))
std::pair<double, double> helper_Fpm(double r, double x, double theta, double z_s);

// The twelve surface integrals in canonical coordinates, as definite values
// over the shifted limits in `args`. The first six live on an arc surface
// r' = r_s and integrate over (theta', z'); B and F live on a vertical
// surface theta' = theta_s and integrate over (r', z'); L lives on a
// horizontal surface z' = z_s and integrates over (r', theta').
// Antiderivatives are combined by four-corner differences, with the angular
// range pre-split at interior multiples of 2*pi where the antiderivative has
// a sign discontinuity.
double integral_A(double r_s, const CanonicalArgs& args);
double integral_D(double r_s, const CanonicalArgs& args);
double integral_E(double r_s, const CanonicalArgs& args);
double integral_G(double r_s, const CanonicalArgs& args);
double integral_I(double r_s, const CanonicalArgs& args);
double integral_J(double r_s, const CanonicalArgs& args);
double integral_B(double theta_s, const CanonicalArgs& args);
double integral_F(double theta_s, const CanonicalArgs& args);
double integral_L(double z_s, const CanonicalArgs& args);

// Partially analytic integrals: the r' integration is closed-form, the
// remaining variable is integrated adaptively.
double integral_C(const CanonicalArgs& args, double z_s, const QuadratureSpec& spec);
double integral_H(const CanonicalArgs& args, double theta_s, const QuadratureSpec& spec);
double integral_K(const CanonicalArgs& args, double z_s, const QuadratureSpec& spec);

// Moves an evaluation off the loci where the closed forms are invalid:
//   x = 0 (on the cylinder axis), r_lo = 0, and theta = n*pi coinciding with
//   a zero z-limit or a radial limit equal to x. The theta condition triggers
//   both for shifted angular limits near n*pi and for even multiples of pi
//   interior to the angular range (which become evaluation corners after
//   splitting). nudge_scale multiplies the displacement (used by the
//   nudge-sensitivity check).
// GuardReport.nudge_applied holds (radial point shift, inner-radius lift,
// axial point shift) in the canonical frame.
std::pair<CanonicalArgs, GuardReport> singularity_guard(const CanonicalPoint& point,
                                                        const CanonicalArgs& args,
                                                        double nudge_scale = 1.0);

}  // namespace tilefield
