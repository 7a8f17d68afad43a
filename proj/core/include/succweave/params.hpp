#pragma once

#include "succweave/structure.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace succweave {

/// All numeric parameters the pipeline needs: (r,t) derived from the
/// target quantifier rank, the occurrence margin g, and overrides.
struct ParamsBundle {
    unsigned alpha = 0;
    unsigned degree = 0;
    unsigned radius = 1;
    std::uint64_t threshold = 1;
    /// Number of distinct radius-r types occurring in the first input;
    /// stands in for the count of all degree-bounded types in the g
    /// bounds (it only shrinks them). Filled by the pipeline.
    std::uint64_t n_occ = 1;
    /// Forces g to a constant when set.
    std::optional<std::uint64_t> g_const;

    /// Derive (r,t) from the target rank and degree bound.
    static ParamsBundle from_alpha(unsigned alpha, unsigned degree);
    /// Explicit radius/threshold, optionally with a constant g.
    static ParamsBundle forced(unsigned radius, std::uint64_t threshold, unsigned degree,
                               std::optional<std::uint64_t> g_const = std::nullopt);

    std::uint64_t g(std::uint64_t beta) const;
    /// Name of the bound that was binding at beta (diagnostic).
    std::string binding_bound(std::uint64_t beta) const;
};

/// (r, t) large enough that threshold equivalence at (r,t) implies
/// equivalence at quantifier rank alpha for degree-bounded structures.
std::pair<unsigned, std::uint64_t> hanf_params(unsigned alpha, unsigned degree);

/// Occurrence margin: the largest of the three construction bounds, with
/// the global type count replaced by the number of occurring types.
std::uint64_t g_of(std::uint64_t beta, unsigned d, unsigned r, std::uint64_t t,
                   std::uint64_t n_occ);

/// a_1 = g(0), a_{i+1} = g(i * a_i); diagnostic sequence explaining why a
/// rare/frequent classification is stable.
std::vector<std::uint64_t> a_sequence(const std::function<std::uint64_t(std::uint64_t)>& g,
                                      std::size_t n);

} // namespace succweave
