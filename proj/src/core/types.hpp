#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tilefield {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kMu0 = 4.0 * kPi * 1e-7;  // vacuum permeability, T*m/A

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    double max_abs() const { return std::max({std::fabs(x), std::fabs(y), std::fabs(z)}); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Cartesian field-evaluation point in the global frame.
using EvalPoint = Vec3;

// 3x3 real tensor, row-major.
struct Tensor3 {
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[3 * i + j]; }
    double operator()(int i, int j) const { return m[3 * i + j]; }

    static Tensor3 zero() { return {}; }
    static Tensor3 identity() {
        Tensor3 t;
        t(0, 0) = t(1, 1) = t(2, 2) = 1.0;
        return t;
    }

    Tensor3 operator+(const Tensor3& o) const {
        Tensor3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Tensor3 operator-(const Tensor3& o) const {
        Tensor3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Tensor3& operator+=(const Tensor3& o) {
        for (int i = 0; i < 9; ++i) m[i] += o.m[i];
        return *this;
    }
    Tensor3 operator*(double s) const {
        Tensor3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Tensor3 matmul(const Tensor3& o) const {
        Tensor3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Tensor3 transposed() const {
        Tensor3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double trace() const { return m[0] + m[4] + m[8]; }
    double max_abs() const {
        double v = 0.0;
        for (double e : m) v = std::max(v, std::fabs(e));
        return v;
    }
    double max_asymmetry() const {
        double v = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                v = std::max(v, std::fabs((*this)(i, j) - (*this)(j, i)));
        return v;
    }
    bool finite() const {
        for (double e : m)
            if (!std::isfinite(e)) return false;
        return true;
    }
};

// Angular section of a hollow finite cylinder, axis-aligned, uniformly magnetized.
// Geometry in meters/radians, magnetization in A/m.
struct Tile {
    double r1 = 0.0, r2 = 0.0;          // inner/outer radius, 0 <= r1 <= r2
    double theta1 = 0.0, theta2 = 0.0;  // angular span, theta2 - theta1 <= 2*pi
    double z1 = 0.0, z2 = 0.0;          // axial extent
    Vec3 offset;                        // cylinder-axis origin in the global frame
    Vec3 magnetization;                 // uniform M, A/m

    // Throws ValidationError on malformed input. Zero-span tiles are accepted
    // and produce a zero field.
    void validate() const;

    double volume() const {
        return 0.5 * (theta2 - theta1) * (r2 * r2 - r1 * r1) * (z2 - z1);
    }
    // Scale used by the singularity guard and surface classification.
    double characteristic_length() const { return std::max(r2, z2 - z1); }
};

// Tolerances and subdivision limits for all adaptive integration.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 200;

    void validate() const;
};

enum class GuardCondition { none, theta_npi_z0, theta_npi_r_eq_x, x_zero, r_zero };

// Outcome of the singularity guard: whether the evaluation had to be moved off
// a singular locus, and by how much (canonical frame: radial, -, axial).
struct GuardReport {
    bool triggered = false;
    GuardCondition condition = GuardCondition::none;
    Vec3 nudge_applied;
};

enum class Provenance { analytic, quadrature_fallback, nudged };

// Field evaluation result at a single point.
struct FieldSample {
    EvalPoint point;
    Tensor3 n;             // summed flux-density tensor of all tiles
    Vec3 b;                // tesla
    Vec3 h;                // A/m
    bool inside = false;   // strictly inside any tile
    bool on_surface = false;  // within guard tolerance of a tile surface
    Provenance provenance = Provenance::analytic;
};

// ---------------------------------------------------------------------------
// Error types

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (elliptic/atanh); names the term.
struct DomainError : Error {
    using Error::Error;
};

// Adaptive integration did not reach tolerance; carries the best estimate.
struct ConvergenceError : Error {
    double best_estimate;
    double error_bound;
    ConvergenceError(const std::string& what, double best, double bound)
        : Error(what), best_estimate(best), error_bound(bound) {}
};

// Integrand produced NaN.
struct IntegrandError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

}  // namespace tilefield
