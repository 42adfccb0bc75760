#include "core/tensor_field.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "core/oracle.hpp"
#include "core/tile_integrals.hpp"

namespace tilefield {

namespace {

constexpr double kNudgeSensitivityTol = 1e-6;

// analytic < nudged < quadrature_fallback
int severity(Provenance p) {
    switch (p) {
        case Provenance::analytic: return 0;
        case Provenance::nudged: return 1;
        case Provenance::quadrature_fallback: return 2;
    }
    return 2;
}

bool degenerate(const Tile& t) {
    return t.r1 >= t.r2 || t.theta1 >= t.theta2 || t.z1 >= t.z2;
}

Tensor3 tensor_canonical(const CanonicalArgs& a, const QuadratureSpec& spec, bool all_nine) {
    const double c1 = std::cos(a.th_lo), c2 = std::cos(a.th_hi);
    const double s1 = std::sin(a.th_lo), s2 = std::sin(a.th_hi);
    const double r1 = a.r_lo, r2 = a.r_hi;

    const double A1 = integral_A(r1, a), A2 = integral_A(r2, a);
    const double D1 = integral_D(r1, a), D2 = integral_D(r2, a);
    const double E1 = integral_E(r1, a), E2 = integral_E(r2, a);
    const double I1 = integral_I(r1, a), I2 = integral_I(r2, a);
    const double J1 = integral_J(r1, a), J2 = integral_J(r2, a);
    const double B1 = integral_B(a.th_lo, a), B2 = integral_B(a.th_hi, a);
    const double F1 = integral_F(a.th_lo, a), F2 = integral_F(a.th_hi, a);
    const double H1 = integral_H(a, a.th_lo, spec), H2 = integral_H(a, a.th_hi, spec);
    const double C1 = integral_C(a, a.z_lo, spec), C2 = integral_C(a, a.z_hi, spec);
    const double L1 = integral_L(a.z_lo, a), L2 = integral_L(a.z_hi, a);

    Tensor3 n;
    n(0, 0) = r2 * A2 - r1 * A1 + c2 * B2 - c1 * B1 + C2 - C1;
    n(0, 1) = r1 * D1 - r2 * D2 + s2 * B2 - s1 * B1;
    n(0, 2) = r1 * E1 - r2 * E2 + s2 * F2 - s1 * F1;
    n(1, 1) = r2 * I2 - r1 * I1 + s1 * H1 - s2 * H2 + C2 - C1;
    n(1, 2) = r1 * J1 - r2 * J2 + c1 * F1 - c2 * F2;
    n(2, 1) = L1 - L2;
    n(2, 2) = r2 * A2 - r1 * A1 + r2 * I2 - r1 * I1 + c2 * B2 - c1 * B1 + s1 * H1 - s2 * H2;

    if (all_nine) {
        const double G1 = integral_G(r1, a), G2 = integral_G(r2, a);
        const double K1 = integral_K(a, a.z_lo, spec), K2 = integral_K(a, a.z_hi, spec);
        n(1, 0) = r1 * G1 - r2 * G2 + c1 * H1 - c2 * H2;
        n(2, 0) = K1 - K2;
    } else {
        n(1, 0) = n(0, 1);
        n(2, 0) = n(0, 2);
    }
    if (!n.finite()) throw DomainError("tensor_canonical: non-finite component");
    return n;
}

TensorResult tensor_impl(const Tile& tile, const EvalPoint& point, const QuadratureSpec& spec,
                         bool all_nine) {
    tile.validate();
    if (!point.finite()) throw ValidationError("tensor_at: non-finite evaluation point");

    TensorResult res;
    if (degenerate(tile)) return res;  // empty magnet, zero tensor

    const auto [cp, raw_args] = canonicalize(point, tile);
    auto [args, guard] = singularity_guard(cp, raw_args);
    res.guard = guard;

    try {
        Tensor3 n_local = tensor_canonical(args, spec, all_nine);
        if (guard.triggered) {
            res.provenance = Provenance::nudged;
            // the nudge must sit below physical resolution: doubling it may
            // not move the result
            const auto [args2, guard2] = singularity_guard(cp, raw_args, 2.0);
            (void)guard2;
            const Tensor3 n_check = tensor_canonical(args2, spec, all_nine);
            const double scale = std::max(n_local.max_abs(), 1e-300);
            if ((n_local - n_check).max_abs() > kNudgeSensitivityTol * scale)
                throw DomainError("tensor_at: nudge-sensitivity check failed");
        }
        res.n = rotate_tensor_back(n_local, cp.psi);
        return res;
    } catch (const Error&) {
        // closed forms unavailable here: integrate the defining surface
        // integrals instead
        res.n = oracle_tensor(tile, point, oracle_default_spec());
        res.provenance = Provenance::quadrature_fallback;
        return res;
    }
}

}  // namespace

TensorResult tensor_at(const Tile& tile, const EvalPoint& point, const QuadratureSpec& spec) {
    return tensor_impl(tile, point, spec, false);
}

TensorResult tensor_at_full(const Tile& tile, const EvalPoint& point,
                            const QuadratureSpec& spec) {
    return tensor_impl(tile, point, spec, true);
}

double tensor_symmetry_check(const Tile& tile, const EvalPoint& point,
                             const QuadratureSpec& spec) {
    return tensor_at_full(tile, point, spec).n.max_asymmetry();
}

FieldSample field_at(std::span<const Tile> tiles, const EvalPoint& point,
                     const QuadratureSpec& spec) {
    FieldSample s;
    s.point = point;
    Vec3 m_inside;
    for (const Tile& tile : tiles) {
        const TensorResult res = tensor_at(tile, point, spec);
        s.n += res.n;
        s.b += res.n.apply(tile.magnetization) * (kMu0 / (4.0 * kPi));
        if (severity(res.provenance) > severity(s.provenance)) s.provenance = res.provenance;

        const double eps = 1e-9 * std::max(tile.characteristic_length(), 1e-300);
        const InsideResult in = classify_inside(tile, point, eps);
        if (in.inside) {
            s.inside = true;
            m_inside += tile.magnetization;
        }
        if (in.on_surface) s.on_surface = true;
    }
    s.h = s.b / kMu0 - m_inside;
    return s;
}

std::vector<FieldSample> field_at_batch(std::span<const Tile> tiles,
                                        std::span<const EvalPoint> points,
                                        const QuadratureSpec& spec, int n_threads) {
    std::vector<FieldSample> out(points.size());
    if (points.empty()) return out;

    unsigned workers = n_threads > 0 ? static_cast<unsigned>(n_threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, points.size());

    if (workers <= 1) {
        for (size_t i = 0; i < points.size(); ++i) out[i] = field_at(tiles, points[i], spec);
        return out;
    }

    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                out[i] = field_at(tiles, points[i], spec);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace tilefield
