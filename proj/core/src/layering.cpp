#include "succweave/layering.hpp"

#include "succweave/errors.hpp"

#include <algorithm>
#include <queue>

namespace succweave {

namespace {

// Shortest path from source to goal in the Gaifman graph with S included,
// with the direct source-goal edge removed. Lengths above limit are
// discarded. Returns the path as element sequence source..goal.
std::optional<std::vector<Element>> bounded_detour(const Structure& s, Element source,
                                                   Element goal, unsigned limit) {
    if (source == goal) return std::nullopt;
    std::vector<std::size_t> dist(s.size(), kUnreachable);
    std::vector<Element> parent(s.size(), 0);
    std::queue<Element> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
        Element u = queue.front();
        queue.pop();
        if (dist[u] == limit) continue;
        for (Element v : s.neighbors(u, true)) {
            if (u == source && v == goal) continue; // skip the direct edge
            if (dist[v] != kUnreachable) continue;
            dist[v] = dist[u] + 1;
            parent[v] = u;
            if (v == goal) {
                std::vector<Element> path{goal};
                while (path.back() != source) path.push_back(parent[path.back()]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push(v);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<std::vector<Element>> short_cycle_through_s(const Structure& s, unsigned r) {
    if (!s.has_succ()) throw InputError("short_cycle_through_s: structure has no successor relation");
    if (r == 0) return std::nullopt; // cycles need length >= 3 > 2*0+1
    for (auto [a, b] : s.succ()) {
        if (a == b) continue; // self-pairs yield no Gaifman edge
        // A cycle of length <= 2r+1 through the S-edge (a,b) exists iff b
        // reaches a within 2r without using the direct edge.
        auto path = bounded_detour(s, b, a, 2 * r);
        if (path) {
            // path is b..a; appending the edge (a,b) closes the cycle.
            return path;
        }
    }
    return std::nullopt;
}

bool layered_neighborhoods(const Structure& s, unsigned r) {
    if (!s.has_succ()) throw InputError("layered_neighborhoods: structure has no successor relation");
    for (Element x = 0; x < s.size(); ++x) {
        const PointedStructure nb = neighborhood(s, x, r, true);
        if (!nb.structure.has_succ()) continue;
        for (auto [a, b] : nb.structure.succ()) {
            if (a == b) continue;
            // Any-length detour inside the neighborhood: connectivity from
            // b to a after removing the direct Gaifman edge a-b.
            std::vector<char> seen(nb.structure.size(), 0);
            std::queue<Element> queue;
            seen[b] = 1;
            queue.push(b);
            bool reached = false;
            while (!queue.empty() && !reached) {
                Element u = queue.front();
                queue.pop();
                for (Element v : nb.structure.neighbors(u, true)) {
                    if (u == b && v == a) continue;
                    if (seen[v]) continue;
                    seen[v] = 1;
                    if (v == a) { reached = true; break; }
                    queue.push(v);
                }
            }
            if (reached) return false;
        }
    }
    return true;
}

bool safe_to_add(const Structure& s, Element x, Element y, unsigned r) {
    if (!s.has_succ()) throw InputError("safe_to_add: structure has no successor relation");
    std::size_t d = gaifman_distance(s, x, y, true);
    return d == kUnreachable || d > 2 * static_cast<std::size_t>(r);
}

} // namespace succweave
