#pragma once

#include "core/quadrature.hpp"
#include "core/types.hpp"

namespace tilefield {

// Default tolerances for the brute-force evaluations: two orders below the
// 1e-6 field-agreement acceptance tolerance, with extra subdivision headroom
// for points close to a surface.
QuadratureSpec oracle_default_spec();

// B by direct 2D quadrature of the oriented surface-current curl integrals
// over the six tile faces (outer arc and the theta2/z2 faces positive; the
// opposite faces negated). Independent of the closed-form path.
Vec3 oracle_b_surface(const Tile& tile, const EvalPoint& point,
                      const QuadratureSpec& spec = oracle_default_spec());

// Second opinion via the magnetic-charge model: H from the surface charge
// density sigma = M . n over the six faces, then B = mu0 (H + M [inside]).
Vec3 oracle_b_charge(const Tile& tile, const EvalPoint& point,
                     const QuadratureSpec& spec = oracle_default_spec());

// Tensor assembled from three unit-magnetization surface-oracle runs.
Tensor3 oracle_tensor(const Tile& tile, const EvalPoint& point,
                      const QuadratureSpec& spec = oracle_default_spec());

}  // namespace tilefield
