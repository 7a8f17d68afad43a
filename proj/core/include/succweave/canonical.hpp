#pragma once

#include "succweave/structure.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace succweave {

/// Canonical identifier of a pointed-neighborhood isomorphism class.
/// Two pointed structures get equal ids iff they are isomorphic center to
/// center with all relations preserved both ways. Types over the plain
/// signature and over the signature plus S are distinct namespaces.
struct NeighborhoodType {
    std::string id;
    unsigned radius = 0;
    bool over_succ = false;

    auto operator<=>(const NeighborhoodType&) const = default;

    /// Lowercase hex rendering of the id bytes, used in reports.
    std::string hex() const;
};

/// Occurrence counts of neighborhood types at a fixed radius.
struct TypeCensus {
    unsigned radius = 0;
    bool over_succ = false;
    std::map<NeighborhoodType, std::uint64_t> counts;
    std::uint64_t total = 0;
};

/// Per-element types of one structure at a fixed radius, with the distinct
/// types interned to small indices for cheap equality checks.
struct ElementTypes {
    unsigned radius = 0;
    bool over_succ = false;
    std::vector<NeighborhoodType> distinct;
    std::vector<std::uint32_t> idx;

    static ElementTypes compute(const Structure& s, unsigned radius, bool include_succ);

    const NeighborhoodType& type_of(Element x) const { return distinct[idx.at(x)]; }
    std::optional<std::uint32_t> index_of(const NeighborhoodType& t) const;
    TypeCensus census() const;
};

/// Canonical byte form of a structure plus the relabeling that produced
/// it: order[i] is the original element placed at canonical position i.
struct CanonicalForm {
    std::string bytes;
    std::vector<Element> order;
};

/// Minimum-encoding canonical form via color refinement and backtracking
/// over refinement-minimal cells. When a center is given it is pinned to
/// canonical position 0.
CanonicalForm canonical_form(const Structure& s, std::optional<Element> center);

NeighborhoodType canonical_type(const PointedStructure& p, unsigned radius);

/// The input relabeled into canonical order (center becomes 0). Equal
/// inputs up to pointed isomorphism give identical outputs.
PointedStructure canonicalize_pointed(const PointedStructure& p);

TypeCensus type_census(const Structure& s, unsigned radius, bool include_succ);

/// True iff for every type in either census the counts (0 when absent)
/// are equal or both strictly greater than t.
bool threshold_equivalent(const TypeCensus& c1, const TypeCensus& c2, std::uint64_t t);

/// Full isomorphism between two structures when one exists (composition
/// of the canonical relabelings); result[x] is the image of x.
std::optional<std::vector<Element>> find_isomorphism(const Structure& a, const Structure& b);

} // namespace succweave
