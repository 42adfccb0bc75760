#include "core/oracle.hpp"

#include <cmath>

#include "core/geometry.hpp"

namespace tilefield {

QuadratureSpec oracle_default_spec() {
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 0.0;
    spec.max_subdivisions = 400;
    return spec;
}

namespace {

struct Kernel {
    Vec3 q;  // evaluation point relative to the tile-axis origin

    // gradient of 1/|q - r'| with respect to the evaluation point
    Vec3 grad_d(const Vec3& rp) const {
        const Vec3 d = q - rp;
        const double r2 = d.dot(d);
        const double inv3 = 1.0 / (r2 * std::sqrt(r2));
        return d * -inv3;
    }
};

}  // namespace

Vec3 oracle_b_surface(const Tile& tile, const EvalPoint& point, const QuadratureSpec& spec) {
    tile.validate();
    const Kernel ker{point - tile.offset};
    const Vec3 m = tile.magnetization;
    Vec3 total;

    // arc surfaces r' = r_s, parametrized by (theta', z'), area element r_s dtheta dz
    for (const auto& [rs, sign] : {std::pair{tile.r2, 1.0}, std::pair{tile.r1, -1.0}}) {
        if (rs == 0.0) continue;
        auto f = [&](double th, double zp) {
            const double c = std::cos(th), s = std::sin(th);
            const Vec3 g = ker.grad_d({rs * c, rs * s, zp});
            const double mt = m.x * s - m.y * c;
            return Vec3{mt * g.y - m.z * c * g.z,
                        -(mt * g.x + m.z * s * g.z),
                        m.z * (c * g.x + s * g.y)};
        };
        total += integrate_2d_vec3(f, tile.theta1, tile.theta2, tile.z1, tile.z2, spec).value *
                 (sign * rs);
    }

    // vertical surfaces theta' = theta_s, parametrized by (r', z')
    for (const auto& [ts, sign] : {std::pair{tile.theta2, 1.0}, std::pair{tile.theta1, -1.0}}) {
        const double c = std::cos(ts), s = std::sin(ts);
        auto f = [&](double rp, double zp) {
            const Vec3 g = ker.grad_d({rp * c, rp * s, zp});
            const double mr = m.x * c + m.y * s;
            return Vec3{mr * g.y + m.z * s * g.z,
                        -(mr * g.x + m.z * c * g.z),
                        m.z * (c * g.y - s * g.x)};
        };
        total += integrate_2d_vec3(f, tile.r1, tile.r2, tile.z1, tile.z2, spec).value * sign;
    }

    // horizontal surfaces z' = z_s, parametrized by (r', theta'), area element r' dr dtheta
    for (const auto& [zs, sign] : {std::pair{tile.z2, 1.0}, std::pair{tile.z1, -1.0}}) {
        auto f = [&](double rp, double th) {
            const double c = std::cos(th), s = std::sin(th);
            const Vec3 g = ker.grad_d({rp * c, rp * s, zs});
            return Vec3{m.x * g.z, m.y * g.z, -(m.x * g.x + m.y * g.y)} * rp;
        };
        total += integrate_2d_vec3(f, tile.r1, tile.r2, tile.theta1, tile.theta2, spec).value *
                 sign;
    }

    return total * (kMu0 / (4.0 * kPi));
}

Vec3 oracle_b_charge(const Tile& tile, const EvalPoint& point, const QuadratureSpec& spec) {
    tile.validate();
    const Kernel ker{point - tile.offset};
    const Vec3 m = tile.magnetization;
    Vec3 h;

    // H(p) = (1/4pi) sum_faces int sigma (p - r')/|p - r'|^3 da',  sigma = M . n
    for (const auto& [rs, sign] : {std::pair{tile.r2, 1.0}, std::pair{tile.r1, -1.0}}) {
        if (rs == 0.0) continue;
        auto f = [&](double th, double zp) -> Vec3 {
            const double c = std::cos(th), s = std::sin(th);
            const double sigma = sign * (m.x * c + m.y * s);
            return ker.grad_d({rs * c, rs * s, zp}) * -sigma;
        };
        h += integrate_2d_vec3(f, tile.theta1, tile.theta2, tile.z1, tile.z2, spec).value * rs;
    }
    for (const auto& [ts, sign] : {std::pair{tile.theta2, 1.0}, std::pair{tile.theta1, -1.0}}) {
        const double c = std::cos(ts), s = std::sin(ts);
        const double sigma = sign * (-m.x * s + m.y * c);
        if (sigma == 0.0) continue;
        auto f = [&](double rp, double zp) -> Vec3 {
            return ker.grad_d({rp * c, rp * s, zp}) * -sigma;
        };
        h += integrate_2d_vec3(f, tile.r1, tile.r2, tile.z1, tile.z2, spec).value;
    }
    for (const auto& [zs, sign] : {std::pair{tile.z2, 1.0}, std::pair{tile.z1, -1.0}}) {
        const double sigma = sign * m.z;
        if (sigma == 0.0) continue;
        auto f = [&](double rp, double th) -> Vec3 {
            return ker.grad_d({rp * std::cos(th), rp * std::sin(th), zs}) * (-sigma * rp);
        };
        h += integrate_2d_vec3(f, tile.r1, tile.r2, tile.theta1, tile.theta2, spec).value;
    }
    h *= 1.0 / (4.0 * kPi);

    const double eps = 1e-9 * std::max(tile.characteristic_length(), 1e-300);
    const bool inside = classify_inside(tile, point, eps).inside;
    return (inside ? h + m : h) * kMu0;
}

Tensor3 oracle_tensor(const Tile& tile, const EvalPoint& point, const QuadratureSpec& spec) {
    Tensor3 n;
    const double scale = 4.0 * kPi / kMu0;
    for (int j = 0; j < 3; ++j) {
        Tile unit = tile;
        unit.magnetization = {j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0, j == 2 ? 1.0 : 0.0};
        const Vec3 column = oracle_b_surface(unit, point, spec) * scale;
        n(0, j) = column.x;
        n(1, j) = column.y;
        n(2, j) = column.z;
    }
    return n;
}

}  // namespace tilefield
