#pragma once

#include <utility>

#include "core/types.hpp"

namespace tilefield {

// Evaluation point expressed in the tile's rotated/translated frame, where it
// lies at (x_c, 0, 0).
struct CanonicalPoint {
    double x_c = 0.0;      // radial distance from the tile axis, >= 0
    double psi = 0.0;      // rotation angle, in (-pi, pi]
    double z_shift = 0.0;  // point z relative to the tile-axis origin
};

// Integration limits in the canonical frame together with the point's radial
// coordinate. The angular and axial limits are the tile's, shifted by -psi
// and -z_shift; the radial limits are the tile radii.
struct CanonicalArgs {
    double x = 0.0;
    double r_lo = 0.0, r_hi = 0.0;
    double th_lo = 0.0, th_hi = 0.0;
    double z_lo = 0.0, z_hi = 0.0;
};

// Reduces a global-frame evaluation to the canonical y = z = 0 configuration.
// psi is the quadrant-correct two-argument arctangent of the offset-relative
// (y, x); x_c = 0 is permitted here and rejected later by the guard.
std::pair<CanonicalPoint, CanonicalArgs> canonicalize(const EvalPoint& point, const Tile& tile);

// Rotates a canonical-frame tensor back to the global frame:
// N_global = R(psi) * N_local * R(psi)^T, R the right-handed rotation about z.
Tensor3 rotate_tensor_back(const Tensor3& n_local, double psi);

// Converts a magnetization given as mu0*M in tesla to M in A/m.
Vec3 magnetization_from_mu0m(const Vec3& mu0_m_tesla);

struct InsideResult {
    bool inside = false;      // strictly inside (beyond the surface tolerance)
    bool on_surface = false;  // within eps of a bounding surface, inside-ish otherwise
};

// Cylindrical-bounds containment test with tolerance eps at the faces.
// Points within eps of a face classify as outside with on_surface set.
InsideResult classify_inside(const Tile& tile, const EvalPoint& point, double eps);

}  // namespace tilefield
