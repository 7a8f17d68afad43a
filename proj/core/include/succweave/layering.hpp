#pragma once

#include "succweave/structure.hpp"

#include <optional>
#include <vector>

namespace succweave {

/// Witness search for the layering property: returns a cycle of length
/// between 3 and 2r+1 traversing at least one S-edge (in either
/// orientation), or nullopt when no such cycle exists. Absence of a
/// witness is equivalent to every r-neighborhood being layered.
std::optional<std::vector<Element>> short_cycle_through_s(const Structure& s, unsigned r);

/// Definition-based layering check: for every element, the r-neighborhood
/// over the signature plus S contains no cycle through an S-edge. Kept as
/// an independent oracle for short_cycle_through_s.
bool layered_neighborhoods(const Structure& s, unsigned r);

/// True iff the distance between x and y (S-edges included) exceeds 2r;
/// adding the S-edge (x,y) to a layered structure then keeps it layered.
bool safe_to_add(const Structure& s, Element x, Element y, unsigned r);

} // namespace succweave
