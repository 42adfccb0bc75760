#include "core/tile_integrals.hpp"

#include <algorithm>
#include <cmath>

#include "core/elliptic.hpp"

namespace tilefield {

namespace {

// r^2 - 2xr cos(theta) + x^2 in cancellation-free form.
double rho2_of(double r, double x, double theta) {
    const double s = std::sin(0.5 * theta);
    const double d = r - x;
    return d * d + 4.0 * r * x * s * s;
}

bool empty_span(double lo, double hi) { return !(hi > lo); }

// ln(A - z) - ln(A + z); odd in z. Evaluated through rho^2 = A^2 - z^2 so the
// small factor is never formed by subtraction.
double log_diff_Az(double r, double x, double theta, double z) {
    if (z == 0.0) return 0.0;
    const double rho2 = rho2_of(r, x, theta);
    if (rho2 <= 0.0)
        throw DomainError("log(A -+ z): A = |z| at r = x, theta = 2*pi*n");
    const double a = std::sqrt(rho2 + z * z);
    const double v = 2.0 * std::log(a + std::fabs(z)) - std::log(rho2);
    return z > 0.0 ? -v : v;
}

// atanh(z/A) in the same stable form.
double atanh_z_over_A(double r, double x, double theta, double z) {
    return -0.5 * log_diff_Az(r, x, theta, z);
}

// ln(r - x cos(theta) + A); switches to (x^2 sin^2 + z^2)/(x cos - r + A)
// when r < x cos(theta) to avoid cancellation.
double log_rxA(double r, double x, double theta, double z) {
    const double xc = x * std::cos(theta);
    const double a = helper_A(r, x, theta, z);
    if (r >= xc) {
        const double arg = (r - xc) + a;
        if (arg <= 0.0) throw DomainError("log(r - x cos + A): argument is zero");
        return std::log(arg);
    }
    const double xs = x * std::sin(theta);
    const double num = xs * xs + z * z;
    if (num <= 0.0) throw DomainError("log(r - x cos + A): argument is zero");
    return std::log(num) - std::log((xc - r) + a);
}

// Angular range split at interior multiples of 2*pi, where sgn(sin(theta/2))
// flips and the elliptic antiderivatives jump. sgn is constant per piece.
struct ThetaPiece {
    double lo, hi, sgn;
};

struct ThetaPieces {
    ThetaPiece piece[3];
    int count = 0;
};

ThetaPieces split_theta(double lo, double hi) {
    constexpr double kTwoPi = 2.0 * kPi;
    const double tol = 1e-13 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
    double cuts[4];
    int ncuts = 0;
    cuts[ncuts++] = lo;
    const long n0 = static_cast<long>(std::ceil((lo + tol) / kTwoPi));
    for (long n = n0; n * kTwoPi < hi - tol && ncuts < 3; ++n) cuts[ncuts++] = n * kTwoPi;
    cuts[ncuts++] = hi;

    ThetaPieces out;
    for (int i = 0; i + 1 < ncuts; ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b - a <= tol) continue;
        const double mid = 0.5 * (a + b);
        const double sgn = std::sin(0.5 * mid) >= 0.0 ? 1.0 : -1.0;
        out.piece[out.count++] = {a, b, sgn};
    }
    return out;
}

// Four-corner difference over (theta, z) with angular splitting.
// g(theta, z, sgn) is the antiderivative, evaluated one-sided at split points
// through the piece's sgn.
template <class G>
double corner_theta_z(const CanonicalArgs& a, G&& g) {
    if (empty_span(a.th_lo, a.th_hi) || empty_span(a.z_lo, a.z_hi)) return 0.0;
    double total = 0.0;
    const ThetaPieces pieces = split_theta(a.th_lo, a.th_hi);
    for (int i = 0; i < pieces.count; ++i) {
        const auto& p = pieces.piece[i];
        total += g(p.hi, a.z_hi, p.sgn) - g(p.lo, a.z_hi, p.sgn)
               - g(p.hi, a.z_lo, p.sgn) + g(p.lo, a.z_lo, p.sgn);
    }
    return total;
}

}  // namespace

double helper_A(double r, double x, double theta, double z) {
    // radicand is a sum of squares in this form; the max() keeps the contract
    // that cancellation can never surface as NaN
    return std::sqrt(std::max(0.0, rho2_of(r, x, theta) + z * z));
}

double helper_B(double x, double theta, double z) {
    const double s = std::sin(theta);
    return -(x * x * s * s + z * z);
}

double helper_C(double r, double x) {
    const double s = r + x;
    return 4.0 * r * x / (s * s);
}

double helper_D(double theta) { return std::cos(0.5 * theta); }

double helper_E(double r, double x, double z) {
    const double s = r + x;
    return 2.0 * std::sqrt(r * x / (s * s + z * z));
}

std::pair<double, double> helper_Fpm(double r, double x, double theta, double z_s) {
    const double den2 = x * x + z_s * z_s;
    if (den2 <= 0.0) throw DomainError("helper_Fpm: x^2 + z_s^2 = 0");
    const double den = std::sqrt(den2);
    const double a = helper_A(r, x, theta, z_s);
    return {(a + r) / den, (a - r) / den};
}

// --- arc-surface integrals (theta', z' free) --------------------------------

double integral_A(double r_s, const CanonicalArgs& a) {
    if (r_s == 0.0) return 0.0;  // integrand carries a factor r_s
    const double x = a.x;
    return corner_theta_z(a, [&](double th, double z, double sgn) {
        const double sp = r_s + x;
        const double s2 = sp * sp + z * z;
        const auto el = ellip_triple_tile(th, r_s, x, z, true);
        const double pref = 0.5 * sgn * z / (r_s * x * x * std::sqrt(s2));
        return pref * ((r_s - x) * (r_s - x) * el.pi + s2 * el.e -
                       (2.0 * (r_s * r_s + x * x) + z * z) * el.f);
    });
}

double integral_D(double r_s, const CanonicalArgs& a) {
    if (r_s == 0.0) return 0.0;
    const double x = a.x;
    return corner_theta_z(a, [&](double th, double z, double) {
        return ((r_s * r_s + x * x) * log_diff_Az(r_s, x, th, z) -
                2.0 * z * helper_A(r_s, x, th, z)) /
               (4.0 * r_s * x * x);
    });
}

double integral_E(double r_s, const CanonicalArgs& a) {
    const double x = a.x;
    if (r_s == 0.0) {
        // limit of the closed form; integrand stays finite on the axis surface
        return corner_theta_z(a, [&](double th, double z, double) {
            return -std::sin(th) / std::sqrt(x * x + z * z);
        });
    }
    return corner_theta_z(a, [&](double th, double z, double sgn) {
        const double sp = r_s + x;
        const double s2 = sp * sp + z * z;
        const auto el = ellip_triple_tile(th, r_s, x, z, false);
        const double pref = -sgn / (r_s * x * std::sqrt(s2));
        return pref * (s2 * el.e - (r_s * r_s + x * x + z * z) * el.f);
    });
}

double integral_G(double r_s, const CanonicalArgs& a) {
    const double x = a.x;
    if (r_s == 0.0) {
        return corner_theta_z(a, [&](double th, double z, double) {
            return z * std::cos(th) / (x * std::sqrt(x * x + z * z));
        });
    }
    return corner_theta_z(a, [&](double th, double z, double) {
        return ((r_s * r_s - x * x) * log_diff_Az(r_s, x, th, z) -
                2.0 * z * helper_A(r_s, x, th, z)) /
               (4.0 * r_s * x * x);
    });
}

double integral_I(double r_s, const CanonicalArgs& a) {
    const double x = a.x;
    if (r_s == 0.0) {
        return corner_theta_z(a, [&](double th, double z, double) {
            return -z * std::sin(th) / (x * std::sqrt(x * x + z * z));
        });
    }
    return corner_theta_z(a, [&](double th, double z, double sgn) {
        const double sp = r_s + x;
        const double s2 = sp * sp + z * z;
        const auto el = ellip_triple_tile(th, r_s, x, z, true);
        const double pref = -sgn * z / (2.0 * r_s * x * x * sp * std::sqrt(s2));
        return pref * ((r_s - x) * (r_s * r_s + x * x) * el.pi +
                       sp * (s2 * el.e - (2.0 * r_s * r_s + z * z) * el.f));
    });
}

double integral_J(double r_s, const CanonicalArgs& a) {
    const double x = a.x;
    if (r_s == 0.0) {
        return corner_theta_z(a, [&](double th, double z, double) {
            return std::cos(th) / std::sqrt(x * x + z * z);
        });
    }
    return corner_theta_z(a, [&](double th, double z, double) {
        return -helper_A(r_s, x, th, z) / (r_s * x);
    });
}

// --- vertical-surface integrals (r', z' free) --------------------------------

double integral_B(double theta_s, const CanonicalArgs& a) {
    if (empty_span(a.r_lo, a.r_hi) || empty_span(a.z_lo, a.z_hi)) return 0.0;
    const double x = a.x;
    const double c = std::cos(theta_s), s = std::sin(theta_s);
    auto g = [&](double r, double z) {
        const double A = helper_A(r, x, theta_s, z);
        // s -> 0 sends the atan argument to +-inf; IEEE atan(+-inf) = +-pi/2
        // is exactly the one-sided limit needed there
        double v = std::atan(z * (r - x * c) / (s * x * A)) * c;
        if (s != 0.0) v -= atanh_z_over_A(r, x, theta_s, z) * s;
        return v;
    };
    return g(a.r_hi, a.z_hi) - g(a.r_lo, a.z_hi) - g(a.r_hi, a.z_lo) + g(a.r_lo, a.z_lo);
}

double integral_F(double theta_s, const CanonicalArgs& a) {
    if (empty_span(a.r_lo, a.r_hi) || empty_span(a.z_lo, a.z_hi)) return 0.0;
    const double x = a.x;
    auto g = [&](double r, double z) { return -log_rxA(r, x, theta_s, z); };
    return g(a.r_hi, a.z_hi) - g(a.r_lo, a.z_hi) - g(a.r_hi, a.z_lo) + g(a.r_lo, a.z_lo);
}

// --- horizontal-surface integrals (r', theta' free) --------------------------

double integral_L(double z_s, const CanonicalArgs& a) {
    if (empty_span(a.r_lo, a.r_hi) || empty_span(a.th_lo, a.th_hi)) return 0.0;
    const double x = a.x;
    // Equivalent antiderivative of the published expression after removing
    // the terms that depend on only one of (r', theta') and therefore cancel
    // in the four-corner difference. Continuous across theta' = 2*pi*n for
    // z_s != 0, so no angular splitting is required.
    auto g = [&](double r, double th) {
        return -std::cos(th) * log_rxA(r, x, th, z_s) - helper_A(r, x, th, z_s) / x;
    };
    return g(a.r_hi, a.th_hi) - g(a.r_lo, a.th_hi) - g(a.r_hi, a.th_lo) + g(a.r_lo, a.th_lo);
}

// --- partially numeric integrals ---------------------------------------------

double integral_C(const CanonicalArgs& a, double z_s, const QuadratureSpec& spec) {
    if (empty_span(a.r_lo, a.r_hi) || empty_span(a.th_lo, a.th_hi)) return 0.0;
    // The defining integrand carries a factor z_s; on the z_s = 0 plane the
    // value is the principal value, which is exactly zero.
    if (z_s == 0.0) return 0.0;
    const double x = a.x;
    auto g = [&](double r, double th) {
        const double A = helper_A(r, x, th, z_s);
        const double B = helper_B(x, th, z_s);
        return -(r * x * std::cos(th) - x * x - z_s * z_s) / (A * B);
    };
    auto f = [&](double th) { return g(a.r_hi, th) - g(a.r_lo, th); };
    // The final value carries a factor z_s, so the absolute tolerance of the
    // remaining theta integral is the caller's divided by |z_s|. Near the
    // axis the r-differenced integrand loses ~|log10 x| digits to
    // cancellation while the product stays O(x); without the rescaling the
    // quadrature would chase noise it cannot beat.
    QuadratureSpec eff = spec;
    eff.abs_tol = spec.abs_tol / std::fabs(z_s);
    // split at 2*pi*n so the narrow feature that develops for small z_s sits
    // at piece boundaries
    double total = 0.0;
    const ThetaPieces pieces = split_theta(a.th_lo, a.th_hi);
    for (int i = 0; i < pieces.count; ++i)
        total += integrate_1d(f, pieces.piece[i].lo, pieces.piece[i].hi, eff).value;
    return z_s * total;
}

double integral_H(const CanonicalArgs& a, double theta_s, const QuadratureSpec& spec) {
    if (empty_span(a.r_lo, a.r_hi) || empty_span(a.z_lo, a.z_hi)) return 0.0;
    const double x = a.x;
    const double c = std::cos(theta_s), s = std::sin(theta_s);
    const double s2 = s * s;
    auto g = [&](double r, double z) {
        const double A = helper_A(r, x, theta_s, z);
        if (s2 == 0.0) return -c / A;  // exact reduction of the 0/0 form
        return (r * x * s2 + z * z * c) / (A * -(x * x * s2 + z * z));
    };
    auto f = [&](double z) { return g(a.r_hi, z) - g(a.r_lo, z); };
    return integrate_1d(f, a.z_lo, a.z_hi, spec).value;
}

double integral_K(const CanonicalArgs& a, double z_s, const QuadratureSpec& spec) {
    if (empty_span(a.r_lo, a.r_hi) || empty_span(a.th_lo, a.th_hi)) return 0.0;
    const double x = a.x;
    const double w = x * x + z_s * z_s;
    // The two rational terms of the published antiderivative are combined
    // over the common denominator A*B; separately each diverges like 1/B at
    // theta' = 2*pi*n as z_s -> 0 while the sum stays finite.
    auto g = [&](double r, double th) {
        const double c = std::cos(th);
        const double A = helper_A(r, x, th, z_s);
        double rational;
        if (z_s == 0.0) {
            rational = (x - 2.0 * r * c) / A;
        } else {
            const double s = std::sin(th);
            const double s2 = s * s;
            const double num = s2 * x * (2.0 * c * r * x - w) + c * r * z_s * z_s;
            rational = num / (A * -(x * x * s2 + z_s * z_s));
        }
        return c * log_rxA(r, x, th, z_s) + rational;
    };
    auto f = [&](double th) { return g(a.r_hi, th) - g(a.r_lo, th); };
    double total = 0.0;
    const ThetaPieces pieces = split_theta(a.th_lo, a.th_hi);
    for (int i = 0; i < pieces.count; ++i)
        total += integrate_1d(f, pieces.piece[i].lo, pieces.piece[i].hi, spec).value;
    return total;
}

// --- singularity guard --------------------------------------------------------

namespace {

double dist_to_npi(double th) {
    const double q = th / kPi;
    return std::fabs(q - std::round(q)) * kPi;
}

bool contains_even_pi_multiple(double lo, double hi, double tol) {
    constexpr double kTwoPi = 2.0 * kPi;
    const long n0 = static_cast<long>(std::ceil((lo - tol) / kTwoPi));
    return n0 * kTwoPi <= hi + tol;
}

}  // namespace

std::pair<CanonicalArgs, GuardReport> singularity_guard(const CanonicalPoint& point,
                                                        const CanonicalArgs& args,
                                                        double nudge_scale) {
    (void)point;  // all relevant state is in the canonical args
    CanonicalArgs a = args;
    GuardReport rep;
    const double char_len = std::max({a.r_hi, a.z_hi - a.z_lo, 1e-300});
    const double eps_geom = 1e-9 * char_len;
    const double eps_ang = 1e-9;
    const double eps_nudge = 10.0 * eps_geom * nudge_scale;

    auto trigger = [&](GuardCondition c) {
        if (!rep.triggered) rep.condition = c;
        rep.triggered = true;
    };

    if (a.x < eps_geom) {
        rep.nudge_applied.x += eps_nudge - a.x;
        a.x = eps_nudge;
        trigger(GuardCondition::x_zero);
    }
    if (a.r_lo < eps_geom && a.r_hi > eps_geom) {
        rep.nudge_applied.y += eps_nudge - a.r_lo;
        a.r_lo = eps_nudge;
        trigger(GuardCondition::r_zero);
    }

    const bool limit_near_npi =
        dist_to_npi(a.th_lo) < eps_ang || dist_to_npi(a.th_hi) < eps_ang;
    const bool interior_even = contains_even_pi_multiple(a.th_lo, a.th_hi, eps_ang);
    const bool z_limit_near_0 = std::fabs(a.z_lo) < eps_geom || std::fabs(a.z_hi) < eps_geom;
    const bool r_limit_near_x =
        std::fabs(a.r_lo - a.x) < eps_geom || std::fabs(a.r_hi - a.x) < eps_geom;

    if ((limit_near_npi || interior_even) && z_limit_near_0) {
        // move the point axially: limits shift down together
        a.z_lo -= eps_nudge;
        a.z_hi -= eps_nudge;
        rep.nudge_applied.z += eps_nudge;
        trigger(GuardCondition::theta_npi_z0);
    }
    if ((limit_near_npi || interior_even) && r_limit_near_x) {
        const double to_lo = std::fabs(a.r_lo - a.x);
        const double to_hi = std::fabs(a.r_hi - a.x);
        const double r_near = to_lo < to_hi ? a.r_lo : a.r_hi;
        const double step = (a.x >= r_near) ? eps_nudge : -eps_nudge;
        a.x += step;
        rep.nudge_applied.x += step;
        trigger(GuardCondition::theta_npi_r_eq_x);
    }
    return {a, rep};
}

}  // namespace tilefield
