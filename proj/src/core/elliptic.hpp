#pragma once

#include "core/types.hpp"

namespace tilefield {

// Carlson symmetric elliptic integrals, evaluated by the duplication
// algorithm. Valid for non-negative arguments (at most one of x,y,z zero;
// p > 0 for rj). Relative accuracy ~1e-15.
double carlson_rf(double x, double y, double z);
double carlson_rc(double x, double y);
double carlson_rd(double x, double y, double z);
double carlson_rj(double x, double y, double z, double p);

// Incomplete Legendre integrals in the convention used throughout this
// library: the first argument is the SINE of the amplitude and the last is
// the MODULUS k (not the parameter m = k^2). Odd in u. The third-kind
// characteristic n enters the integrand as 1/(1 - n sin^2).
//
// Convention note: resolved by matching the closed-form tile integrals
// against direct quadrature of their defining double integrals; see
// tests/test_elliptic.cpp (convention resolution suite).
double ellip_f(double u, double k);
double ellip_e(double u, double k);
double ellip_pi(double u, double n, double k);

struct EllipticTriple {
    double f = 0.0, e = 0.0, pi = 0.0;
};

// F, E and (optionally) Pi as they appear in the tile antiderivatives:
//   sin(amplitude) = cos(theta/2),
//   k^2 = 4rx/((r+x)^2 + z^2),  n = 4rx/(r+x)^2.
// The distances to the modulus/characteristic poles are formed from
// (r-x)^2 + 4rx sin^2(theta/2) instead of 1 - n sin^2, which would round to
// zero once |r-x| drops below sqrt(eps)*(r+x) (the guard keeps evaluations
// off the poles themselves but legitimately this close to them).
EllipticTriple ellip_triple_tile(double theta, double r, double x, double z, bool need_pi);

}  // namespace tilefield
