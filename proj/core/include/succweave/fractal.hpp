#pragma once

#include "succweave/canonical.hpp"
#include "succweave/structure.hpp"

#include <cstddef>

namespace succweave {

/// Which successor spikes the center receives: both directions, only an
/// outgoing chain, or only an incoming chain.
enum class FractalMode { both, upper, lower };

inline constexpr std::size_t kDefaultFractalBudget = 100000;

/// Process-wide budget used when a call passes element_budget = 0; the CLI
/// can override it through SUCCWEAVE_FRACTAL_BUDGET.
std::size_t default_fractal_budget();
void set_default_fractal_budget(std::size_t budget);

/// Recursive fractal construction: every element at distance d <= k-1 from
/// the center gets fresh upper/lower structures of its own radius-(k-d-1)
/// type attached through S-edges; the center's spikes follow the mode.
/// The result is over the signature plus S, layered by construction, and
/// canonicalized so equal inputs give identical outputs.
PointedStructure fractal_build(const PointedStructure& tau, unsigned k, FractalMode mode,
                               std::size_t element_budget = 0);

/// Canonical type of the fractal built from a representative of tau
/// restricted to radius k. Requires the representative to be a ball of
/// radius at least k around its center.
NeighborhoodType fractal_type_id(const PointedStructure& tau_rep, unsigned k, FractalMode mode,
                                 std::size_t element_budget = 0);

} // namespace succweave
