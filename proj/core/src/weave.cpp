#include "succweave/weave.hpp"

#include "succweave/errors.hpp"

#include <algorithm>
#include <queue>

namespace succweave {

namespace {

// Multi-source BFS over the Gaifman graph extended with the partial
// successor; mask[y] = 1 iff some source reaches y within limit steps.
std::vector<char> within_distance(const Structure& g, const BuilderState& st,
                                  const std::vector<Element>& sources, unsigned limit) {
    std::vector<std::size_t> dist(g.size(), kUnreachable);
    std::queue<Element> queue;
    for (Element s : sources) {
        if (dist[s] != 0) {
            dist[s] = 0;
            queue.push(s);
        }
    }
    auto visit = [&](Element u, Element v) {
        if (dist[v] == kUnreachable) {
            dist[v] = dist[u] + 1;
            queue.push(v);
        }
    };
    while (!queue.empty()) {
        Element u = queue.front();
        queue.pop();
        if (dist[u] == limit) continue;
        for (Element v : g.neighbors(u, false)) visit(u, v);
        if (st.succ_fwd[u]) visit(u, *st.succ_fwd[u]);
        if (st.succ_bwd[u]) visit(u, *st.succ_bwd[u]);
    }
    std::vector<char> mask(g.size(), 0);
    for (Element v = 0; v < g.size(); ++v) mask[v] = dist[v] != kUnreachable;
    return mask;
}

std::uint32_t resolve_type(const ElementTypes& types, const NeighborhoodType& wanted,
                           const char* who) {
    auto idx = types.index_of(wanted);
    if (!idx)
        throw InfeasibilityError(std::string(who) + ": wanted type " + wanted.hex().substr(0, 16) +
                                 "... does not occur in the structure");
    return *idx;
}

Element pick_far_masked(const Structure& g, const BuilderState& st, const ElementTypes& types,
                        std::uint32_t wanted_idx, const std::vector<Element>& exclusion,
                        unsigned r, const char* who) {
    const std::vector<char> near = within_distance(g, st, exclusion, 2 * r);
    for (Element x = 0; x < g.size(); ++x)
        if (types.idx[x] == wanted_idx && !near[x]) return x;
    throw InfeasibilityError(std::string(who) + ": no occurrence of type " +
                             types.distinct[wanted_idx].hex().substr(0, 16) +
                             "... farther than 2r from the " + std::to_string(exclusion.size()) +
                             " excluded elements; occurrence margin g too small or parameters too aggressive");
}

std::vector<Element> sorted_union(const std::vector<std::set<Element>>& families_a,
                                  const std::vector<std::set<Element>>& families_b) {
    std::set<Element> all;
    for (const auto& s : families_a) all.insert(s.begin(), s.end());
    for (const auto& s : families_b) all.insert(s.begin(), s.end());
    return {all.begin(), all.end()};
}

} // namespace

BuilderState BuilderState::make(std::size_t n, unsigned r, int structure_id) {
    BuilderState st;
    st.structure_id = structure_id;
    st.succ_fwd.assign(n, std::nullopt);
    st.succ_bwd.assign(n, std::nullopt);
    st.r_sets.assign(r + 1, {});
    st.p_sets.assign(r + 1, {});
    return st;
}

void BuilderState::add_edge(Element x, Element y) {
    if (x == y) throw ContractViolation("successor self-loop");
    if (succ_fwd[x]) throw ContractViolation("element already has a successor");
    if (succ_bwd[y]) throw ContractViolation("element already has a predecessor");
    succ_fwd[x] = y;
    succ_bwd[y] = x;
}

void BuilderState::remove_edge(Element x, Element y) {
    if (!succ_fwd[x] || *succ_fwd[x] != y) throw ContractViolation("removing a missing successor edge");
    succ_fwd[x] = std::nullopt;
    succ_bwd[y] = std::nullopt;
}

std::vector<SuccPair> BuilderState::succ_pairs() const {
    std::vector<SuccPair> pairs;
    for (Element x = 0; x < succ_fwd.size(); ++x)
        if (succ_fwd[x]) pairs.emplace_back(x, *succ_fwd[x]);
    return pairs;
}

void BuilderState::refresh_a_set() { a_set = sorted_union(r_sets, p_sets); }

std::vector<SuccPair> WeaveResult::succ_pairs(int side) const {
    const auto& succ = side == 1 ? succ1 : succ2;
    std::vector<SuccPair> pairs;
    pairs.reserve(succ.size());
    for (Element x = 0; x < succ.size(); ++x) pairs.emplace_back(x, succ[x]);
    return pairs;
}

Classification classify_types(const TypeCensus& census1, const TypeCensus& census2,
                              const ParamsBundle& params) {
    if (census1.radius != census2.radius)
        throw InputError("classify_types: census radius mismatch");

    std::vector<std::pair<std::uint64_t, NeighborhoodType>> ordered;
    ordered.reserve(census1.counts.size());
    for (const auto& [type, count] : census1.counts) ordered.emplace_back(count, type);
    std::sort(ordered.begin(), ordered.end());

    auto count2 = [&](const NeighborhoodType& t) -> std::uint64_t {
        auto it = census2.counts.find(t);
        return it == census2.counts.end() ? 0 : it->second;
    };

    Classification cls;
    std::size_t i = 0;
    while (i < ordered.size() && ordered[i].first < params.g(cls.beta)) {
        cls.beta += ordered[i].first;
        cls.rare.push_back(ordered[i].second);
        ++i;
    }
    for (; i < ordered.size(); ++i) cls.frequent.push_back(ordered[i].second);
    cls.binding_bound = params.binding_bound(cls.beta);

    for (const auto& type : cls.rare) {
        if (count2(type) != census1.counts.at(type))
            throw SimilarityError("rare type " + type.hex().substr(0, 16) +
                                  "... has unequal occurrence counts");
    }
    for (const auto& [type, count] : census2.counts) {
        if (!census1.counts.count(type))
            throw SimilarityError("type " + type.hex().substr(0, 16) +
                                  "... occurs only in the second structure");
    }
    for (const auto& type : cls.frequent) {
        if (count2(type) < params.g(cls.beta))
            throw SimilarityError("frequent type " + type.hex().substr(0, 16) +
                                  "... is too scarce in the second structure");
    }
    return cls;
}

Element pick_far(const Structure& g, const BuilderState& st, const ElementTypes& types,
                 const NeighborhoodType& wanted, const std::vector<Element>& exclusion,
                 unsigned r) {
    return pick_far_masked(g, st, types, resolve_type(types, wanted, "pick_far"), exclusion, r,
                           "pick_far");
}

BuilderState weave_rare(const Structure& g, unsigned r, const Classification& cls,
                        const ElementTypes& types) {
    if (cls.frequent.empty())
        throw ContractViolation("weave_rare requires a frequent type");
    BuilderState st = BuilderState::make(g.size(), r, 1);

    std::vector<char> is_rare_type(types.distinct.size(), 0);
    for (const auto& type : cls.rare)
        if (auto idx = types.index_of(type)) is_rare_type[*idx] = 1;
    const std::uint32_t tau0 = resolve_type(types, cls.frequent.front(), "weave_rare");

    std::vector<char> in_r(g.size(), 0);
    std::vector<Element> r_members; // ascending insertion not required; mask drives BFS
    auto put = [&](std::vector<std::set<Element>>& sets, unsigned level, Element e,
                   std::vector<char>& mask, std::vector<Element>& members) {
        sets[level].insert(e);
        if (!mask[e]) {
            mask[e] = 1;
            members.push_back(e);
        }
    };

    for (Element x = 0; x < g.size(); ++x)
        if (is_rare_type[types.idx[x]]) put(st.r_sets, 0, x, in_r, r_members);

    // Every rare occurrence gets a tau_0-typed successor and predecessor
    // far from the construction so far.
    for (Element x : std::vector<Element>(st.r_sets[0].begin(), st.r_sets[0].end())) {
        for (Element y : g.neighbors(x, false))
            if (!in_r[y]) put(st.r_sets, 1, y, in_r, r_members);
        Element xp = pick_far_masked(g, st, types, tau0, r_members, r, "weave_rare");
        put(st.r_sets, 1, xp, in_r, r_members);
        st.add_edge(x, xp);
        Element xm = pick_far_masked(g, st, types, tau0, r_members, r, "weave_rare");
        put(st.r_sets, 1, xm, in_r, r_members);
        st.add_edge(xm, x);
    }

    // Protect level by level: everything reached gets its own type as
    // successor/predecessor until depth r is built.
    for (unsigned k = 1; k + 1 <= r; ++k) {
        for (Element x : std::vector<Element>(st.r_sets[k].begin(), st.r_sets[k].end())) {
            for (Element y : g.neighbors(x, false))
                if (!in_r[y]) put(st.r_sets, k + 1, y, in_r, r_members);
            if (!st.succ_fwd[x]) {
                Element xp = pick_far_masked(g, st, types, types.idx[x], r_members, r, "weave_rare");
                put(st.r_sets, k + 1, xp, in_r, r_members);
                st.add_edge(x, xp);
            }
            if (!st.succ_bwd[x]) {
                Element xm = pick_far_masked(g, st, types, types.idx[x], r_members, r, "weave_rare");
                put(st.r_sets, k + 1, xm, in_r, r_members);
                st.add_edge(xm, x);
            }
        }
    }
    return st;
}

void weave_junctions(const Structure& g, unsigned r, BuilderState& st, const Classification& cls,
                     const ElementTypes& types) {
    if (cls.frequent.empty()) throw ContractViolation("weave_junctions requires a frequent type");
    std::vector<char> excluded(g.size(), 0);
    std::vector<Element> members;
    for (const auto& level : st.r_sets)
        for (Element e : level)
            if (!excluded[e]) {
                excluded[e] = 1;
                members.push_back(e);
            }
    auto put = [&](unsigned level, Element e) {
        st.p_sets[level].insert(e);
        if (!excluded[e]) {
            excluded[e] = 1;
            members.push_back(e);
        }
    };

    // Two anchors per frequent type, mutually far apart.
    for (const auto& type : cls.frequent) {
        const std::uint32_t idx = resolve_type(types, type, "weave_junctions");
        Element lo = pick_far_masked(g, st, types, idx, members, r, "weave_junctions");
        put(0, lo);
        Element hi = pick_far_masked(g, st, types, idx, members, r, "weave_junctions");
        put(0, hi);
        st.anchors.emplace_back(lo, hi);
    }
    const std::size_t m = st.anchors.size();
    for (std::size_t i = 0; i < m; ++i)
        st.add_edge(st.anchors[i].second, st.anchors[(i + 1) % m].first);

    // Protect the anchors to depth r the same way rare occurrences were.
    for (unsigned k = 0; k + 1 <= r; ++k) {
        for (Element x : std::vector<Element>(st.p_sets[k].begin(), st.p_sets[k].end())) {
            for (Element y : g.neighbors(x, false))
                if (!excluded[y]) put(k + 1, y);
            if (!st.succ_fwd[x]) {
                Element xp = pick_far_masked(g, st, types, types.idx[x], members, r, "weave_junctions");
                put(k + 1, xp);
                st.add_edge(x, xp);
            }
            if (!st.succ_bwd[x]) {
                Element xm = pick_far_masked(g, st, types, types.idx[x], members, r, "weave_junctions");
                put(k + 1, xm);
                st.add_edge(xm, x);
            }
        }
    }
    st.refresh_a_set();
}

namespace {

// Backtracking search for a type-preserving induced embedding of the
// woven region into the second structure, component by component with the
// images of distinct components kept more than 2r apart.
class TransferSearch {
public:
    TransferSearch(const Structure& g1, const Structure& g2, unsigned r,
                   const ElementTypes& types1, const ElementTypes& types2,
                   const std::vector<Element>& b_set, const std::vector<char>& in_a)
        : g1_(g1), g2_(g2), r_(r), types1_(types1), types2_(types2), in_a_(in_a) {
        build_components(b_set);
        used_.assign(g2_.size(), 0);
        image_of_.assign(g1_.size(), std::nullopt);
        build_incidence(g1_, incidence_1_);
        build_incidence(g2_, incidence_2_);
    }

    std::optional<std::map<Element, Element>> run() {
        if (!place(0, 0)) return std::nullopt;
        std::map<Element, Element> h;
        for (Element x = 0; x < g1_.size(); ++x)
            if (image_of_[x]) h.emplace(x, *image_of_[x]);
        return h;
    }

private:
    using Incidence = std::vector<std::vector<std::pair<std::size_t, std::size_t>>>;

    static void build_incidence(const Structure& s, Incidence& out) {
        out.assign(s.size(), {});
        for (std::size_t rel = 0; rel < s.signature().size(); ++rel)
            for (std::size_t ti = 0; ti < s.table(rel).size(); ++ti)
                for (Element e : s.table(rel)[ti]) out[e].emplace_back(rel, ti);
        for (auto& inc : out) {
            std::sort(inc.begin(), inc.end());
            inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
        }
    }

    void build_components(const std::vector<Element>& b_set) {
        std::vector<char> in_b(g1_.size(), 0);
        for (Element e : b_set) in_b[e] = 1;
        std::vector<char> seen(g1_.size(), 0);
        for (Element root : b_set) {
            if (seen[root]) continue;
            // Gather the component, then order it by BFS from its least
            // member that lies in A (the constrained elements).
            std::vector<Element> comp;
            std::queue<Element> queue;
            seen[root] = 1;
            queue.push(root);
            while (!queue.empty()) {
                Element u = queue.front();
                queue.pop();
                comp.push_back(u);
                for (Element v : g1_.neighbors(u, false))
                    if (in_b[v] && !seen[v]) {
                        seen[v] = 1;
                        queue.push(v);
                    }
            }
            std::sort(comp.begin(), comp.end());
            Element start = comp.front();
            for (Element e : comp)
                if (in_a_[e]) {
                    start = e;
                    break;
                }
            std::vector<Element> order;
            std::vector<std::optional<Element>> parent(g1_.size(), std::nullopt);
            std::vector<char> visited(g1_.size(), 0);
            std::queue<Element> bfs;
            visited[start] = 1;
            bfs.push(start);
            while (!bfs.empty()) {
                Element u = bfs.front();
                bfs.pop();
                order.push_back(u);
                for (Element v : g1_.neighbors(u, false)) {
                    if (!in_b[v] || visited[v]) continue;
                    visited[v] = 1;
                    parent[v] = u;
                    bfs.push(v);
                }
            }
            component_orders_.push_back(order);
            component_parents_.push_back(std::move(parent));
        }
    }

    bool consistent(Element u, Element cand) const {
        for (auto [rel, ti] : incidence_1_[u]) {
            const Tuple& t = g1_.table(rel)[ti];
            Tuple mapped(t.size());
            bool complete = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                Element e = t[i];
                if (e == u) {
                    mapped[i] = cand;
                } else if (image_of_[e]) {
                    mapped[i] = *image_of_[e];
                } else {
                    complete = false;
                    break;
                }
            }
            if (complete && !g2_.holds(rel, mapped)) return false;
        }
        for (auto [rel, ti] : incidence_2_[cand]) {
            const Tuple& t = g2_.table(rel)[ti];
            Tuple back(t.size());
            bool complete = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                Element e = t[i];
                if (e == cand) {
                    back[i] = u;
                } else if (preimage_.count(e)) {
                    back[i] = preimage_.at(e);
                } else {
                    complete = false;
                    break;
                }
            }
            if (complete && !g1_.holds(rel, back)) return false;
        }
        return true;
    }

    bool place(std::size_t comp, std::size_t pos) {
        if (comp == component_orders_.size()) return true;
        const auto& order = component_orders_[comp];
        if (pos == order.size()) return place(comp + 1, 0);
        if (pos == 0) {
            // Entering a component: recompute which targets are too close
            // to the images already placed.
            std::vector<Element> placed;
            for (Element y = 0; y < g2_.size(); ++y)
                if (used_[y]) placed.push_back(y);
            forbidden_stack_.push_back(sigma_within(placed, 2 * r_));
        }
        const Element u = order[pos];
        const auto& forbidden = forbidden_stack_.back();
        bool ok = false;
        if (!component_parents_[comp][u]) {
            for (Element cand = 0; cand < g2_.size() && !ok; ++cand)
                ok = try_candidate(comp, pos, u, cand, forbidden);
        } else {
            Element parent_image = *image_of_[*component_parents_[comp][u]];
            for (Element cand : g2_.neighbors(parent_image, false)) {
                if (try_candidate(comp, pos, u, cand, forbidden)) {
                    ok = true;
                    break;
                }
            }
        }
        if (pos == 0 && !ok) forbidden_stack_.pop_back();
        return ok;
    }

    bool try_candidate(std::size_t comp, std::size_t pos, Element u, Element cand,
                       const std::vector<char>& forbidden) {
        if (used_[cand] || forbidden[cand]) return false;
        if (in_a_[u] && types2_.type_of(cand) != types1_.type_of(u)) return false;
        if (!consistent(u, cand)) return false;
        used_[cand] = 1;
        image_of_[u] = cand;
        preimage_[cand] = u;
        if (place(comp, pos + 1)) return true;
        used_[cand] = 0;
        image_of_[u] = std::nullopt;
        preimage_.erase(cand);
        return false;
    }

    std::vector<char> sigma_within(const std::vector<Element>& sources, unsigned limit) const {
        std::vector<std::size_t> dist(g2_.size(), kUnreachable);
        std::queue<Element> queue;
        for (Element s : sources) {
            dist[s] = 0;
            queue.push(s);
        }
        while (!queue.empty()) {
            Element u = queue.front();
            queue.pop();
            if (dist[u] == limit) continue;
            for (Element v : g2_.neighbors(u, false))
                if (dist[v] == kUnreachable) {
                    dist[v] = dist[u] + 1;
                    queue.push(v);
                }
        }
        std::vector<char> mask(g2_.size(), 0);
        for (Element v = 0; v < g2_.size(); ++v) mask[v] = dist[v] != kUnreachable;
        return mask;
    }

    const Structure& g1_;
    const Structure& g2_;
    unsigned r_;
    const ElementTypes& types1_;
    const ElementTypes& types2_;
    const std::vector<char>& in_a_;
    std::vector<std::vector<Element>> component_orders_;
    std::vector<std::vector<std::optional<Element>>> component_parents_;
    std::vector<char> used_;
    std::vector<std::optional<Element>> image_of_;
    std::map<Element, Element> preimage_;
    std::vector<std::vector<char>> forbidden_stack_;
    Incidence incidence_1_;
    Incidence incidence_2_;
};

} // namespace

std::pair<std::map<Element, Element>, BuilderState> transfer_partial(
    const Structure& g1, const BuilderState& st1, const Structure& g2, unsigned r,
    const ElementTypes& types1, const ElementTypes& types2) {
    std::vector<char> in_a(g1.size(), 0);
    for (Element e : st1.a_set) in_a[e] = 1;

    const std::vector<char> b_mask = within_distance(g1, st1, st1.a_set, r);
    std::vector<Element> b_set;
    for (Element e = 0; e < g1.size(); ++e)
        if (b_mask[e]) b_set.push_back(e);

    TransferSearch search(g1, g2, r, types1, types2, b_set, in_a);
    auto h = search.run();
    if (!h)
        throw SimilarityError("transfer: no type-preserving induced embedding of the woven "
                              "region into the second structure");

    BuilderState st2 = BuilderState::make(g2.size(), r, 2);
    for (Element x = 0; x < g1.size(); ++x)
        if (st1.succ_fwd[x]) st2.add_edge(h->at(x), h->at(*st1.succ_fwd[x]));
    for (unsigned k = 0; k < st1.r_sets.size(); ++k)
        for (Element e : st1.r_sets[k]) st2.r_sets[k].insert(h->at(e));
    for (unsigned k = 0; k < st1.p_sets.size(); ++k)
        for (Element e : st1.p_sets[k]) st2.p_sets[k].insert(h->at(e));
    for (auto [lo, hi] : st1.anchors) st2.anchors.emplace_back(h->at(lo), h->at(hi));
    st2.refresh_a_set();
    return {std::move(*h), std::move(st2)};
}

Element s_star(const BuilderState& st, Element x, bool forward) {
    const auto& step = forward ? st.succ_fwd : st.succ_bwd;
    Element cur = x;
    for (std::size_t walked = 0; walked <= step.size(); ++walked) {
        if (!step[cur]) return cur;
        cur = *step[cur];
        if (cur == x)
            throw ContractViolation("s_star called on an element of a successor cycle");
    }
    throw ContractViolation("s_star walk exceeded the universe size");
}

std::vector<Element> complete(const Structure& g, BuilderState& st, unsigned r,
                              const Classification& cls, const ElementTypes& types) {
    if (cls.frequent.empty()) throw ContractViolation("complete requires a frequent type");
    if (st.anchors.size() != cls.frequent.size())
        throw ContractViolation("complete requires one anchor pair per frequent type");

    std::vector<char> in_a(g.size(), 0);
    for (Element e : st.a_set) in_a[e] = 1;

    for (std::size_t i = 0; i < cls.frequent.size(); ++i) {
        const std::uint32_t tau = resolve_type(types, cls.frequent[i], "complete");
        Element s = s_star(st, st.anchors[i].first, true);
        const Element t = s_star(st, st.anchors[i].second, false);

        // Greedy sweep: append far-away predecessor-less chains of this
        // type after s until no candidate is left.
        while (true) {
            const std::vector<char> near_s = within_distance(g, st, {s}, 2 * r);
            const std::vector<char> near_t = within_distance(g, st, {t}, 2 * r);
            std::optional<Element> chosen;
            for (Element x = 0; x < g.size(); ++x) {
                if (st.succ_bwd[x] || types.idx[x] != tau) continue;
                if (near_s[x] || near_t[x]) continue;
                const Element x_end = s_star(st, x, true);
                if (near_t[x_end]) continue;
                if (x_end == s) {
                    // Appending x would close a cycle prematurely; the
                    // distance conditions alone do not exclude this.
                    ++st.chain_guard_hits;
                    continue;
                }
                chosen = x;
                break;
            }
            if (!chosen) break;
            st.add_edge(s, *chosen);
            s = s_star(st, *chosen, true);
        }
        st.add_edge(s, t);
    }

    // Splice every remaining predecessor-less chain into the cycle.
    for (std::size_t i = 0; i < cls.frequent.size(); ++i) {
        const std::uint32_t tau = resolve_type(types, cls.frequent[i], "complete");
        for (Element x = 0; x < g.size(); ++x) {
            if (st.succ_bwd[x] || types.idx[x] != tau) continue;
            const Element chain_end = s_star(st, x, true);
            const std::vector<char> near_x = within_distance(g, st, {x}, 2 * r);
            const std::vector<char> near_end = within_distance(g, st, {chain_end}, 2 * r);
            std::optional<Element> found_y;
            for (Element y = 0; y < g.size(); ++y) {
                if (!st.succ_fwd[y]) continue;
                Element z = *st.succ_fwd[y];
                if (in_a[y] || in_a[z]) continue;
                if (types.idx[y] != tau || types.idx[z] != tau) continue;
                if (near_x[y] || near_end[z]) continue;
                found_y = y;
                break;
            }
            if (!found_y)
                throw InfeasibilityError(
                    "complete: no spliceable successor edge for type " +
                    cls.frequent[i].hex().substr(0, 16) +
                    "...; the greedy sweep needs at least 2*N(d+2,2r)+1 edges, so the "
                    "occurrence margin g was too small for these parameters");
            Element y = *found_y;
            Element z = *st.succ_fwd[y];
            st.remove_edge(y, z);
            st.add_edge(y, x);
            st.add_edge(chain_end, z);
        }
    }

    std::vector<Element> succ(g.size());
    for (Element x = 0; x < g.size(); ++x) {
        if (!st.succ_fwd[x])
            throw ContractViolation("complete finished with a successor-less element");
        succ[x] = *st.succ_fwd[x];
    }
    return succ;
}

WeaveResult weave_pair(const Structure& g1, const Structure& g2, ParamsBundle params) {
    if (g1.has_succ() || g2.has_succ())
        throw InputError("weave_pair: inputs must not already carry a successor relation");
    if (!(g1.signature() == g2.signature()))
        throw InputError("weave_pair: signature mismatch");
    if (structure_degree(g1, false) > params.degree || structure_degree(g2, false) > params.degree)
        throw InputError("weave_pair: structure degree exceeds the bound d=" +
                         std::to_string(params.degree));
    if (params.radius < 1) throw InputError("weave_pair: radius must be at least 1");

    const unsigned r = params.radius;
    const ElementTypes types1 = ElementTypes::compute(g1, r, false);
    const ElementTypes types2 = ElementTypes::compute(g2, r, false);
    const TypeCensus census1 = types1.census();
    const TypeCensus census2 = types2.census();
    if (!threshold_equivalent(census1, census2, params.threshold))
        throw SimilarityError("weave_pair: censuses are not threshold-equivalent at (r=" +
                              std::to_string(r) + ", t=" + std::to_string(params.threshold) + ")");
    params.n_occ = census1.counts.size();

    WeaveResult result;
    result.params = params;
    result.classification = classify_types(census1, census2, params);

    if (result.classification.frequent.empty()) {
        auto iso = find_isomorphism(g1, g2);
        if (!iso)
            throw SimilarityError("weave_pair: all types rare but the structures are not "
                                  "isomorphic");
        const std::size_t n = g1.size();
        result.isomorphism_branch = true;
        result.succ1.resize(n);
        result.succ2.resize(n);
        for (Element x = 0; x < n; ++x) {
            Element next = static_cast<Element>((x + 1) % n);
            result.succ1[x] = next;
            result.succ2[(*iso)[x]] = (*iso)[next];
        }
        result.state1 = BuilderState::make(n, r, 1);
        result.state2 = BuilderState::make(g2.size(), r, 2);
        for (Element x = 0; x < n; ++x) result.state1.h.emplace(x, (*iso)[x]);
        return result;
    }

    result.state1 = weave_rare(g1, r, result.classification, types1);
    weave_junctions(g1, r, result.state1, result.classification, types1);
    auto [h, st2] = transfer_partial(g1, result.state1, g2, r, types1, types2);
    result.state1.h = std::move(h);
    const std::vector<char> b_mask = within_distance(g1, result.state1, result.state1.a_set, r);
    result.state1.b_set.clear();
    for (Element e = 0; e < g1.size(); ++e)
        if (b_mask[e]) result.state1.b_set.push_back(e);
    result.state2 = std::move(st2);
    result.succ1 = complete(g1, result.state1, r, result.classification, types1);
    result.succ2 = complete(g2, result.state2, r, result.classification, types2);
    return result;
}

} // namespace succweave
