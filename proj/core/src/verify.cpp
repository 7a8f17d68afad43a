#include "succweave/verify.hpp"

#include "succweave/fractal.hpp"
#include "succweave/layering.hpp"
#include "succweave/logic.hpp"

#include <map>
#include <set>
#include <sstream>

namespace succweave {

namespace {

std::string join_elements(const std::vector<Element>& elems) {
    std::ostringstream out;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out << ' ';
        out << elems[i];
    }
    return out.str();
}

CheckEntry check_circular(int side, const std::vector<Element>& succ) {
    std::vector<SuccPair> pairs;
    pairs.reserve(succ.size());
    for (Element x = 0; x < succ.size(); ++x) pairs.emplace_back(x, succ[x]);
    CheckEntry entry{"circular_successor_" + std::to_string(side), false, ""};
    entry.pass = is_circular_successor(pairs, succ.size());
    if (!entry.pass) entry.witness = "not a single-orbit permutation";
    return entry;
}

CheckEntry check_layering(int side, const Structure& enriched, unsigned r) {
    CheckEntry entry{"layering_" + std::to_string(side), false, ""};
    auto cycle = short_cycle_through_s(enriched, r);
    entry.pass = !cycle.has_value();
    if (cycle) entry.witness = "cycle " + join_elements(*cycle);
    return entry;
}

CheckEntry check_homogeneity(int side, const BuilderState& st, const ElementTypes& sigma_types,
                             const std::vector<Element>& succ) {
    std::set<Element> r0(st.r_sets.empty() ? std::set<Element>{} : st.r_sets[0]);
    std::set<Element> p0(st.p_sets.empty() ? std::set<Element>{} : st.p_sets[0]);
    CheckEntry entry{"edge_type_homogeneity_" + std::to_string(side), true, ""};
    for (Element x = 0; x < succ.size(); ++x) {
        Element y = succ[x];
        if (r0.count(x) || r0.count(y)) continue;
        if (p0.count(x) && p0.count(y)) continue;
        if (sigma_types.idx[x] != sigma_types.idx[y]) {
            entry.pass = false;
            entry.witness = "edge (" + std::to_string(x) + "," + std::to_string(y) +
                            ") joins different types";
            return entry;
        }
    }
    return entry;
}

CheckEntry check_fractal(int side, const Structure& g, const BuilderState& st,
                         const ElementTypes& sigma_types, const ElementTypes& enriched_types,
                         unsigned r) {
    CheckEntry entry{"fractal_regularity_" + std::to_string(side), true, ""};
    std::vector<char> in_a(g.size(), 0);
    for (Element e : st.a_set) in_a[e] = 1;
    // One fractal id per occurring type; tokens compared, never structures.
    std::map<std::uint32_t, NeighborhoodType> expected;
    for (Element x = 0; x < g.size(); ++x) {
        if (in_a[x]) continue;
        const std::uint32_t sigma = sigma_types.idx[x];
        auto it = expected.find(sigma);
        if (it == expected.end()) {
            it = expected
                     .emplace(sigma,
                              fractal_type_id(neighborhood(g, x, r, false), r, FractalMode::both))
                     .first;
        }
        if (!(enriched_types.type_of(x) == it->second)) {
            entry.pass = false;
            entry.witness = "element " + std::to_string(x) + " is not fractal-typed";
            return entry;
        }
    }
    return entry;
}

CheckEntry check_h_preservation(const BuilderState& st1, const ElementTypes& enriched1,
                                const ElementTypes& enriched2) {
    CheckEntry entry{"h_type_preservation", true, ""};
    for (Element x : st1.a_set) {
        auto it = st1.h.find(x);
        if (it == st1.h.end()) {
            entry.pass = false;
            entry.witness = "element " + std::to_string(x) + " has no transfer image";
            return entry;
        }
        if (!(enriched1.type_of(x) == enriched2.type_of(it->second))) {
            entry.pass = false;
            entry.witness = "element " + std::to_string(x) + " and its image " +
                            std::to_string(it->second) + " have different enriched types";
            return entry;
        }
    }
    return entry;
}

CheckEntry check_segments(int side, const BuilderState& st, const ElementTypes& sigma_types,
                          const std::vector<Element>& succ) {
    CheckEntry entry{"segment_structure_" + std::to_string(side), true, ""};
    const std::set<Element> r0 = st.r_sets.empty() ? std::set<Element>{} : st.r_sets[0];
    for (std::size_t i = 0; i < st.anchors.size(); ++i) {
        auto [lo, hi] = st.anchors[i];
        const std::uint32_t tau = sigma_types.idx[lo];
        if (sigma_types.idx[hi] != tau) {
            entry.pass = false;
            entry.witness = "anchors of segment " + std::to_string(i) + " differ in type";
            return entry;
        }
        std::set<Element> arc;
        Element cur = lo;
        bool closed = false;
        for (std::size_t steps = 0; steps < succ.size(); ++steps) {
            arc.insert(cur);
            if (cur == hi) { closed = true; break; }
            cur = succ[cur];
        }
        if (!closed) {
            entry.pass = false;
            entry.witness = "segment " + std::to_string(i) + " never reaches its upper anchor";
            return entry;
        }
        std::set<Element> expected;
        for (Element x = 0; x < succ.size(); ++x)
            if (sigma_types.idx[x] == tau) expected.insert(x);
        if (i == 0) expected.insert(r0.begin(), r0.end());
        if (arc != expected) {
            entry.pass = false;
            entry.witness = "segment " + std::to_string(i) + " does not cover exactly its type";
            return entry;
        }
    }
    return entry;
}

} // namespace

bool VerificationReport::overall() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const CheckEntry* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerificationReport verify_weave(const WeaveResult& result, const Structure& g1,
                                const Structure& g2, unsigned r, std::uint64_t t,
                                std::optional<unsigned> ef_depth) {
    VerificationReport report;
    report.radius = r;
    report.threshold = t;
    report.ef_depth = ef_depth;
    report.iso_branch = result.isomorphism_branch;

    const Structure e1 = g1.with_succ(result.succ_pairs(1));
    const Structure e2 = g2.with_succ(result.succ_pairs(2));

    report.checks.push_back(check_circular(1, result.succ1));
    report.checks.push_back(check_circular(2, result.succ2));
    report.checks.push_back(check_layering(1, e1, r));
    report.checks.push_back(check_layering(2, e2, r));

    const ElementTypes enriched1 = ElementTypes::compute(e1, r, true);
    const ElementTypes enriched2 = ElementTypes::compute(e2, r, true);
    report.census1 = enriched1.census();
    report.census2 = enriched2.census();

    {
        CheckEntry entry{"threshold_equivalence", false, ""};
        entry.pass = threshold_equivalent(report.census1, report.census2, t);
        if (!entry.pass) entry.witness = "enriched censuses differ beyond the threshold";
        report.checks.push_back(entry);
    }

    if (!result.isomorphism_branch) {
        const ElementTypes sigma1 = ElementTypes::compute(g1, r, false);
        const ElementTypes sigma2 = ElementTypes::compute(g2, r, false);
        report.checks.push_back(check_homogeneity(1, result.state1, sigma1, result.succ1));
        report.checks.push_back(check_homogeneity(2, result.state2, sigma2, result.succ2));
        report.checks.push_back(check_fractal(1, g1, result.state1, sigma1, enriched1, r));
        report.checks.push_back(check_fractal(2, g2, result.state2, sigma2, enriched2, r));
        report.checks.push_back(check_h_preservation(result.state1, enriched1, enriched2));
        report.checks.push_back(check_segments(1, result.state1, sigma1, result.succ1));
        report.checks.push_back(check_segments(2, result.state2, sigma2, result.succ2));
    } else {
        CheckEntry entry{"isomorphic_enriched", false, ""};
        entry.pass = find_isomorphism(e1, e2).has_value();
        if (!entry.pass) entry.witness = "no isomorphism between the enriched structures";
        report.checks.push_back(entry);
    }

    if (ef_depth) {
        CheckEntry entry{"ef_equivalence_empirical", false, "depth=" + std::to_string(*ef_depth)};
        entry.pass = ef_equivalent(e1, e2, *ef_depth);
        report.checks.push_back(entry);
    }
    return report;
}

} // namespace succweave
