#pragma once

#include "succweave/errors.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace succweave {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;
using SuccPair = std::pair<Element, Element>;

/// Distance value for unreachable pairs.
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// A relation symbol: name plus positive arity.
struct RelationSymbol {
    std::string name;
    unsigned arity = 1;

    bool operator==(const RelationSymbol&) const = default;
};

/// An ordered list of relation symbols. Names must be unique and "S" is
/// reserved for the successor relation, which lives outside the signature.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<RelationSymbol> relations);

    const std::vector<RelationSymbol>& relations() const { return relations_; }
    std::size_t size() const { return relations_.size(); }
    const RelationSymbol& at(std::size_t i) const { return relations_.at(i); }

    /// Index of a relation by name; throws InputError when absent.
    std::size_t index_of(const std::string& name) const;
    bool has(const std::string& name) const;

    bool operator==(const Signature&) const = default;

private:
    std::vector<RelationSymbol> relations_;
};

/// A finite relational structure over universe 0..n-1. Tables are tuple
/// sets (deduplicated, sorted); the optional successor relation S is kept
/// apart from the user relations. Immutable after construction, so all
/// operations are pure and safe to call concurrently.
class Structure {
public:
    Structure() = default;
    Structure(Signature sig, std::size_t size,
              std::vector<std::vector<Tuple>> tables,
              std::optional<std::vector<SuccPair>> succ = std::nullopt);

    /// Convenience constructor for a plain digraph over signature {E:2}.
    static Structure graph(std::size_t size, std::vector<SuccPair> edges);

    const Signature& signature() const { return sig_; }
    std::size_t size() const { return size_; }
    const std::vector<Tuple>& table(std::size_t rel) const { return tables_.at(rel); }
    const std::vector<std::vector<Tuple>>& tables() const { return tables_; }

    bool has_succ() const { return succ_.has_value(); }
    const std::vector<SuccPair>& succ() const;

    /// Copy of this structure with the successor relation replaced/added.
    Structure with_succ(std::vector<SuccPair> succ) const;
    /// Copy with the successor relation dropped.
    Structure without_succ() const;

    bool holds(std::size_t rel, const Tuple& t) const;
    bool succ_holds(Element a, Element b) const;

    /// Gaifman adjacency list of x (sorted, no duplicates, never x itself).
    const std::vector<Element>& neighbors(Element x, bool include_succ) const;

    bool operator==(const Structure&) const = default;

private:
    void validate() const;
    void build_adjacency();

    Signature sig_;
    std::size_t size_ = 0;
    std::vector<std::vector<Tuple>> tables_;
    std::optional<std::vector<SuccPair>> succ_;
    std::vector<std::vector<Element>> adj_sigma_;
    std::vector<std::vector<Element>> adj_full_;
};

/// A structure with a distinguished center element.
struct PointedStructure {
    Structure structure;
    Element center = 0;

    PointedStructure() = default;
    PointedStructure(Structure s, Element c);

    bool operator==(const PointedStructure&) const = default;
};

std::vector<Element> gaifman_neighbors(const Structure& s, Element x, bool include_succ);
std::size_t gaifman_distance(const Structure& s, Element x, Element y, bool include_succ);
std::vector<Element> ball(const Structure& s, Element x, unsigned radius, bool include_succ);

/// Induced substructure on the radius ball around x, renumbered by BFS
/// order from x (ties broken by original index), pointed at x.
PointedStructure neighborhood(const Structure& s, Element x, unsigned radius, bool include_succ);

unsigned structure_degree(const Structure& s, bool include_succ);

/// Upper bound on the size of an r-ball in a graph of degree at most d.
std::uint64_t n_bound(unsigned d, unsigned r);

} // namespace succweave
