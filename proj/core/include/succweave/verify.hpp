#pragma once

#include "succweave/canonical.hpp"
#include "succweave/weave.hpp"

#include <optional>
#include <string>
#include <vector>

namespace succweave {

struct CheckEntry {
    std::string name;
    bool pass = false;
    std::string witness;
};

/// Per-property pass/fail certificate for a completed weave, together with
/// the enriched censuses of both sides.
struct VerificationReport {
    unsigned radius = 1;
    std::uint64_t threshold = 1;
    std::optional<unsigned> ef_depth;
    bool iso_branch = false;
    std::vector<CheckEntry> checks;
    TypeCensus census1;
    TypeCensus census2;

    bool overall() const;
    const CheckEntry* find(const std::string& name) const;
};

/// Runs every property check on a weave result: circularity, layering,
/// edge-type homogeneity, fractal regularity outside the woven region,
/// type preservation along the transfer map, threshold equivalence of the
/// enriched censuses, segment structure, and (optionally) an empirical
/// EF-equivalence probe at the given depth.
VerificationReport verify_weave(const WeaveResult& result, const Structure& g1,
                                const Structure& g2, unsigned r, std::uint64_t t,
                                std::optional<unsigned> ef_depth = std::nullopt);

} // namespace succweave
