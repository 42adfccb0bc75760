#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tilefield {

void Tile::validate() const {
    if (!(r1 >= 0.0) || !std::isfinite(r2)) throw ValidationError("Tile: radii must satisfy 0 <= r1 <= r2");
    if (!(r1 <= r2)) throw ValidationError("Tile: radii must satisfy 0 <= r1 <= r2");
    if (!(z1 <= z2) || !std::isfinite(z1) || !std::isfinite(z2))
        throw ValidationError("Tile: axial extent must satisfy z1 <= z2");
    if (!(theta1 <= theta2) || !std::isfinite(theta1) || !std::isfinite(theta2))
        throw ValidationError("Tile: angular span must satisfy theta1 <= theta2");
    if (theta2 - theta1 > 2.0 * kPi + 1e-12)
        throw ValidationError("Tile: angular span exceeds 2*pi");
    if (!offset.finite()) throw ValidationError("Tile: offset must be finite");
    if (!magnetization.finite() || magnetization.max_abs() >= 1e9)
        throw ValidationError("Tile: magnetization must be finite with |M_i| < 1e9 A/m");
}

std::pair<CanonicalPoint, CanonicalArgs> canonicalize(const EvalPoint& point, const Tile& tile) {
    const Vec3 d = point - tile.offset;
    CanonicalPoint cp;
    cp.x_c = std::hypot(d.x, d.y);
    cp.psi = (d.x == 0.0 && d.y == 0.0) ? 0.0 : std::atan2(d.y, d.x);
    if (cp.psi <= -kPi) cp.psi = kPi;
    cp.z_shift = d.z;

    CanonicalArgs args;
    args.x = cp.x_c;
    args.r_lo = tile.r1;
    args.r_hi = tile.r2;
    args.th_lo = tile.theta1 - cp.psi;
    args.th_hi = tile.theta2 - cp.psi;
    args.z_lo = tile.z1 - cp.z_shift;
    args.z_hi = tile.z2 - cp.z_shift;
    return {cp, args};
}

Tensor3 rotate_tensor_back(const Tensor3& n_local, double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    Tensor3 r;
    r(0, 0) = c; r(0, 1) = -s; r(0, 2) = 0.0;
    r(1, 0) = s; r(1, 1) = c;  r(1, 2) = 0.0;
    r(2, 0) = 0.0; r(2, 1) = 0.0; r(2, 2) = 1.0;
    return r.matmul(n_local).matmul(r.transposed());
}

Vec3 magnetization_from_mu0m(const Vec3& mu0_m_tesla) {
    return mu0_m_tesla / kMu0;
}

InsideResult classify_inside(const Tile& tile, const EvalPoint& point, double eps) {
    const Vec3 d = point - tile.offset;
    const double rho = std::hypot(d.x, d.y);
    const double span = tile.theta2 - tile.theta1;

    // distance-to-boundary per coordinate; positive means inward
    double dr = tile.r2 - rho;
    if (tile.r1 > eps) dr = std::min(dr, rho - tile.r1);

    double dth_len;
    if (span >= 2.0 * kPi - 1e-12) {
        dth_len = std::numeric_limits<double>::infinity();  // full ring: no vertical faces
    } else {
        double rel = std::atan2(d.y, d.x) - tile.theta1;
        rel = rel - 2.0 * kPi * std::floor(rel / (2.0 * kPi));  // into [0, 2*pi)
        // signed angular distance to the wedge, positive inward
        const double dth = (rel <= span) ? std::min(rel, span - rel)
                                         : -std::min(rel - span, 2.0 * kPi - rel);
        dth_len = dth * std::max(rho, eps);  // arc length at the point's radius
    }

    const double dz = std::min(d.z - tile.z1, tile.z2 - d.z);

    const double m = std::min({dr, dth_len, dz});
    InsideResult res;
    if (m > eps) {
        res.inside = true;
    } else if (m > -eps) {
        res.on_surface = true;  // classified outside, flagged
    }
    return res;
}

}  // namespace tilefield
