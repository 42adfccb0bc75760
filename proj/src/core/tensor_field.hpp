#pragma once

#include <span>
#include <vector>

#include "core/geometry.hpp"
#include "core/types.hpp"

namespace tilefield {

struct TensorResult {
    Tensor3 n;  // global frame
    GuardReport guard;
    Provenance provenance = Provenance::analytic;
};

// Flux-density tensor N of one tile at one point, global frame:
// B = (mu0/4pi) N * M. Canonicalizes, guards, evaluates the closed forms and
// rotates back. Six components are evaluated; N_yx, N_zx are filled by
// symmetry and N_zy from its own analytic form. A guard trigger runs the
// nudge-sensitivity check; if doubling the nudge moves the tensor by more
// than 1e-6 relative (or any sub-integral fails), the evaluation falls back
// to the surface-quadrature oracle and is marked accordingly.
TensorResult tensor_at(const Tile& tile, const EvalPoint& point,
                       const QuadratureSpec& spec = {});

// All nine components evaluated independently from their own formulas
// (no symmetry fill); used by the symmetry test suite.
TensorResult tensor_at_full(const Tile& tile, const EvalPoint& point,
                            const QuadratureSpec& spec = {});

// max_ij |N_ij - N_ji| with all nine components computed independently.
double tensor_symmetry_check(const Tile& tile, const EvalPoint& point,
                             const QuadratureSpec& spec = {});

// B, H and the summed tensor of a tile assembly at one point:
//   B = sum (mu0/4pi) N_i M_i,   H = B/mu0 - sum_{tiles containing p} M_i.
FieldSample field_at(std::span<const Tile> tiles, const EvalPoint& point,
                     const QuadratureSpec& spec = {});

// Batch evaluation with a worker pool (n_threads <= 0 selects the hardware
// concurrency). Results are in input order regardless of completion order.
std::vector<FieldSample> field_at_batch(std::span<const Tile> tiles,
                                        std::span<const EvalPoint> points,
                                        const QuadratureSpec& spec = {}, int n_threads = 0);

}  // namespace tilefield
