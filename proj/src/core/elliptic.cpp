#include "core/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace tilefield {

namespace {

constexpr double kErrTol = 1.0e-3;  // duplication stop; series tail ~ErrTol^6
constexpr double kSlack = 1.0e-12;  // domain slack for arguments at the boundary

[[noreturn]] void domain_fail(const char* fn, const char* what) {
    throw DomainError(std::string(fn) + ": " + what);
}

}  // namespace

double carlson_rf(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z < 0.0) domain_fail("carlson_rf", "negative argument");
    if (x + y == 0.0 || y + z == 0.0 || z + x == 0.0)
        domain_fail("carlson_rf", "two arguments zero (divergent)");
    double xt = x, yt = y, zt = z;
    double mu, dx, dy, dz;
    do {
        const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        const double lam = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        mu = (xt + yt + zt) / 3.0;
        dx = (mu - xt) / mu;
        dy = (mu - yt) / mu;
        dz = (mu - zt) / mu;
    } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) > kErrTol);
    const double e2 = dx * dy - dz * dz;
    const double e3 = dx * dy * dz;
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
}

double carlson_rc(double x, double y) {
    if (x < 0.0 || y <= 0.0) domain_fail("carlson_rc", "argument outside x>=0, y>0");
    double xt = x, yt = y;
    double mu, s;
    do {
        const double lam = 2.0 * std::sqrt(xt) * std::sqrt(yt) + yt;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        mu = (xt + 2.0 * yt) / 3.0;
        s = (yt - xt) / (3.0 * mu);
    } while (std::fabs(s) > kErrTol);
    return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) / std::sqrt(mu);
}

double carlson_rd(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z <= 0.0) domain_fail("carlson_rd", "argument outside domain");
    if (x + y == 0.0) domain_fail("carlson_rd", "x + y zero (divergent)");
    double xt = x, yt = y, zt = z;
    double sum = 0.0, fac = 1.0;
    double mu, dx, dy, dz;
    do {
        const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        const double lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + lam));
        fac *= 0.25;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        mu = 0.2 * (xt + yt + 3.0 * zt);
        dx = (mu - xt) / mu;
        dy = (mu - yt) / mu;
        dz = (mu - zt) / mu;
    } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) > kErrTol);
    const double ea = dx * dy;
    const double eb = dz * dz;
    const double ec = ea - eb;
    const double ed = ea - 6.0 * eb;
    const double ee = ed + ec + ec;
    constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0, c4 = 3.0 / 26.0;
    constexpr double c5 = 0.25 * c3, c6 = 1.5 * c4;
    return 3.0 * sum +
           fac * (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                  dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
               (mu * std::sqrt(mu));
}

double carlson_rj(double x, double y, double z, double p) {
    if (x < 0.0 || y < 0.0 || z < 0.0) domain_fail("carlson_rj", "negative argument");
    if (p <= 0.0) domain_fail("carlson_rj", "p <= 0 (only the principal branch is supported)");
    if (x + y == 0.0 || y + z == 0.0 || z + x == 0.0)
        domain_fail("carlson_rj", "two arguments zero (divergent)");
    double xt = x, yt = y, zt = z, pt = p;
    double sum = 0.0, fac = 1.0;
    double mu, dx, dy, dz, dp;
    do {
        const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        const double lam = sx * (sy + sz) + sy * sz;
        const double alpha = pt * (sx + sy + sz) + sx * sy * sz;
        const double beta = pt * (pt + lam) * (pt + lam);
        sum += fac * carlson_rc(alpha * alpha, beta);
        fac *= 0.25;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        pt = 0.25 * (pt + lam);
        mu = 0.2 * (xt + yt + zt + 2.0 * pt);
        dx = (mu - xt) / mu;
        dy = (mu - yt) / mu;
        dz = (mu - zt) / mu;
        dp = (mu - pt) / mu;
    } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz), std::fabs(dp)}) > kErrTol);
    const double ea = dx * (dy + dz) + dy * dz;
    const double eb = dx * dy * dz;
    const double ec = dp * dp;
    const double ed = ea - 3.0 * ec;
    const double ee = eb + 2.0 * dp * (ea - ec);
    constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 3.0, c3 = 3.0 / 22.0, c4 = 3.0 / 26.0;
    constexpr double c5 = 0.75 * c3, c6 = 1.5 * c4;
    return 3.0 * sum +
           fac * (1.0 + ed * (-c1 + c5 * ed - c6 * ee) +
                  eb * (c2 + dp * (-c3 + dp * c4)) + dp * ea * (c2 - dp * c3) -
                  c2 * dp * ec) /
               (mu * std::sqrt(mu));
}

namespace {

// Shared validation/clamping for the Legendre wrappers. Returns (x, y) of the
// Carlson arguments: x = 1 - u^2, y = 1 - k^2 u^2.
struct LegendreArgs {
    double x, y;
};

LegendreArgs legendre_args(const char* fn, double u, double k) {
    const double u2 = u * u;
    if (!(u2 <= 1.0 + kSlack)) domain_fail(fn, "|sin amplitude| > 1");
    const double k2u2 = k * k * u2;
    if (!(k2u2 <= 1.0 + kSlack)) domain_fail(fn, "k^2 sin^2(amplitude) > 1");
    return {std::max(0.0, 1.0 - u2), std::max(0.0, 1.0 - k2u2)};
}

}  // namespace

double ellip_f(double u, double k) {
    if (u == 0.0) return 0.0;
    const auto [x, y] = legendre_args("ellip_f", u, k);
    if (x == 0.0 && y == 0.0) domain_fail("ellip_f", "divergent at amplitude pi/2, k = 1");
    return u * carlson_rf(x, y, 1.0);
}

double ellip_e(double u, double k) {
    if (u == 0.0) return 0.0;
    const auto [x, y] = legendre_args("ellip_e", u, k);
    const double rf = carlson_rf(x, y, 1.0);
    if (k == 0.0) return u * rf;
    return u * rf - (k * k) * (u * u * u) / 3.0 * carlson_rd(x, y, 1.0);
}

double ellip_pi(double u, double n, double k) {
    if (n == 0.0) return ellip_f(u, k);
    if (u == 0.0) return 0.0;
    const auto [x, y] = legendre_args("ellip_pi", u, k);
    // Guarded geometry can sit within (nudge/length)^2 ~ 1e-17 of the pole;
    // R_J handles any positive p, so reject only the pole itself.
    const double p = 1.0 - n * u * u;
    if (p <= 1e-300) domain_fail("ellip_pi", "characteristic pole: n sin^2(amplitude) >= 1");
    return u * carlson_rf(x, y, 1.0) +
           n * (u * u * u) / 3.0 * carlson_rj(x, y, 1.0, p);
}

EllipticTriple ellip_triple_tile(double theta, double r, double x, double z, bool need_pi) {
    const double u = std::cos(0.5 * theta);
    const double sh = std::sin(0.5 * theta);
    const double xx = sh * sh;  // 1 - u^2, exact where it matters
    const double d = r - x;
    const double rho2 = d * d + 4.0 * r * x * xx;
    const double sp = r + x;
    const double sp2z = sp * sp + z * z;
    if (sp2z <= 0.0) domain_fail("ellip_triple_tile", "degenerate geometry");
    const double y = (rho2 + z * z) / sp2z;  // 1 - k^2 u^2
    if (y <= 0.0) domain_fail("ellip_triple_tile", "modulus pole: A = 0");

    EllipticTriple t;
    if (u == 0.0) return t;
    const double rf = carlson_rf(xx, y, 1.0);
    const double u3 = u * u * u;
    t.f = u * rf;
    const double k2 = 4.0 * r * x / sp2z;
    t.e = (k2 == 0.0) ? t.f : t.f - k2 * u3 / 3.0 * carlson_rd(xx, y, 1.0);
    if (need_pi) {
        const double n = 4.0 * r * x / (sp * sp);
        const double p = rho2 / (sp * sp);  // 1 - n u^2, identically
        if (p <= 1e-300)
            domain_fail("ellip_triple_tile", "characteristic pole: r = x, theta = 2*pi*n");
        t.pi = (n == 0.0) ? t.f : t.f + n * u3 / 3.0 * carlson_rj(xx, y, 1.0, p);
    }
    return t;
}

}  // namespace tilefield
