#pragma once

#include "succweave/canonical.hpp"
#include "succweave/params.hpp"
#include "succweave/structure.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace succweave {

/// Output of the rare/frequent separation. Rare types have equal counts in
/// both inputs; frequent types (tau_0 first) each have at least g(beta)
/// occurrences on both sides.
struct Classification {
    std::vector<NeighborhoodType> rare;
    std::vector<NeighborhoodType> frequent;
    std::uint64_t beta = 0;
    std::string binding_bound;
};

/// Bookkeeping of one side's partial successor: the protection levels
/// around rare occurrences (R_0..R_r) and junction anchors (P_0..P_r), the
/// anchors themselves, and (on side 1) the transfer domain and embedding.
struct BuilderState {
    int structure_id = 1;
    std::vector<std::optional<Element>> succ_fwd;
    std::vector<std::optional<Element>> succ_bwd;
    std::vector<std::set<Element>> r_sets;
    std::vector<std::set<Element>> p_sets;
    std::vector<std::pair<Element, Element>> anchors; // per frequent type: (min, max)
    std::vector<Element> a_set;
    std::vector<Element> b_set;
    std::map<Element, Element> h;
    std::size_t chain_guard_hits = 0;

    static BuilderState make(std::size_t n, unsigned r, int structure_id);

    void add_edge(Element x, Element y);
    void remove_edge(Element x, Element y);
    std::vector<SuccPair> succ_pairs() const;
    /// Recomputes a_set as the union of all R and P levels.
    void refresh_a_set();
};

/// A completed weave: total circular successors for both sides plus the
/// classification and final per-side bookkeeping.
struct WeaveResult {
    std::vector<Element> succ1;
    std::vector<Element> succ2;
    Classification classification;
    BuilderState state1;
    BuilderState state2;
    ParamsBundle params;
    bool isomorphism_branch = false;

    std::vector<SuccPair> succ_pairs(int side) const;
};

/// Rare/frequent separation replayed on census1's counts in ascending
/// (count, id) order. Throws SimilarityError when a rare type has unequal
/// counts across the censuses or a frequent type is too scarce in census2.
Classification classify_types(const TypeCensus& census1, const TypeCensus& census2,
                              const ParamsBundle& params);

/// Least-index element of the wanted type at distance (S included) greater
/// than 2r from every element of the exclusion set.
Element pick_far(const Structure& g, const BuilderState& st, const ElementTypes& types,
                 const NeighborhoodType& wanted, const std::vector<Element>& exclusion,
                 unsigned r);

/// Partial successor construction around occurrences of rare types, then
/// level-by-level protection of their surroundings to depth r.
BuilderState weave_rare(const Structure& g, unsigned r, const Classification& cls,
                        const ElementTypes& types);

/// Picks the per-type boundary anchors, joins them cyclically, and
/// protects them to depth r.
void weave_junctions(const Structure& g, unsigned r, BuilderState& st, const Classification& cls,
                     const ElementTypes& types);

/// Carries the partial successor over to the second structure through a
/// type-preserving induced embedding of the woven region.
std::pair<std::map<Element, Element>, BuilderState> transfer_partial(
    const Structure& g1, const BuilderState& st1, const Structure& g2, unsigned r,
    const ElementTypes& types1, const ElementTypes& types2);

/// Endpoint of x's successor chain (forward=true follows successors).
/// Throws ContractViolation when x lies on a successor cycle.
Element s_star(const BuilderState& st, Element x, bool forward);

/// Completion: greedy per-type appending followed by splicing leftovers
/// into the unique cycle. Returns the total successor permutation.
std::vector<Element> complete(const Structure& g, BuilderState& st, unsigned r,
                              const Classification& cls, const ElementTypes& types);

/// Full pipeline: census both sides, classify, either take the
/// isomorphism branch (all types rare) or weave/transfer/complete.
WeaveResult weave_pair(const Structure& g1, const Structure& g2, ParamsBundle params);

} // namespace succweave
