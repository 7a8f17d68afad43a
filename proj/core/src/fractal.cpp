#include "succweave/fractal.hpp"

#include "succweave/errors.hpp"

#include <queue>

namespace succweave {

namespace {

std::size_t g_fractal_budget = kDefaultFractalBudget;

struct Assembly {
    std::size_t budget = 0;
    std::size_t n = 0;
    std::vector<std::vector<Tuple>> tables;
    std::vector<SuccPair> succ;

    // Copies a plain structure in, returning the index offset of the copy.
    Element attach(const Structure& piece) {
        if (n + piece.size() > budget)
            throw ResourceError("fractal build exceeded the element budget");
        const Element offset = static_cast<Element>(n);
        n += piece.size();
        for (std::size_t rel = 0; rel < piece.signature().size(); ++rel) {
            for (const auto& t : piece.table(rel)) {
                Tuple mapped(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = t[i] + offset;
                tables[rel].push_back(std::move(mapped));
            }
        }
        return offset;
    }
};

std::vector<std::size_t> center_distances(const Structure& s, Element center) {
    std::vector<std::size_t> dist(s.size(), kUnreachable);
    std::queue<Element> queue;
    dist[center] = 0;
    queue.push(center);
    while (!queue.empty()) {
        Element u = queue.front();
        queue.pop();
        for (Element v : s.neighbors(u, false)) {
            if (dist[v] != kUnreachable) continue;
            dist[v] = dist[u] + 1;
            queue.push(v);
        }
    }
    return dist;
}

// Builds the piece for (tau, k, mode) into the assembly and returns the
// absolute index of its center.
Element build_into(Assembly& out, const PointedStructure& tau, unsigned k, FractalMode mode) {
    const Element base = out.attach(tau.structure);
    const Element root = base + tau.center;
    if (k == 0) return root;

    const auto dist = center_distances(tau.structure, tau.center);
    for (Element x = 0; x < tau.structure.size(); ++x) {
        if (dist[x] == kUnreachable || dist[x] > k - 1) continue;
        const unsigned sub_radius = k - 1 - static_cast<unsigned>(dist[x]);
        const bool is_center = x == tau.center;
        const bool want_upper = !is_center || mode != FractalMode::lower;
        const bool want_lower = !is_center || mode != FractalMode::upper;
        PointedStructure chi = neighborhood(tau.structure, x, sub_radius, false);
        if (want_upper) {
            Element up = build_into(out, chi, sub_radius, FractalMode::upper);
            out.succ.emplace_back(base + x, up);
        }
        if (want_lower) {
            Element lo = build_into(out, chi, sub_radius, FractalMode::lower);
            out.succ.emplace_back(lo, base + x);
        }
    }
    return root;
}

} // namespace

std::size_t default_fractal_budget() { return g_fractal_budget; }

void set_default_fractal_budget(std::size_t budget) {
    if (budget == 0) throw InputError("fractal budget must be positive");
    g_fractal_budget = budget;
}

PointedStructure fractal_build(const PointedStructure& tau, unsigned k, FractalMode mode,
                               std::size_t element_budget) {
    if (element_budget == 0) element_budget = default_fractal_budget();
    if (tau.structure.has_succ())
        throw InputError("fractal_build: input must be over the plain signature");
    if (k >= 1) {
        // k = 0 is the identity base case and accepts any pointed input.
        const auto dist = center_distances(tau.structure, tau.center);
        for (Element x = 0; x < tau.structure.size(); ++x)
            if (dist[x] == kUnreachable || dist[x] > k)
                throw InputError("fractal_build: input is not a radius-" + std::to_string(k) +
                                 " neighborhood of its center");
    }

    Assembly out;
    out.budget = element_budget;
    out.tables.resize(tau.structure.signature().size());
    Element root = build_into(out, tau, k, mode);
    Structure built(tau.structure.signature(), out.n, std::move(out.tables), std::move(out.succ));
    return canonicalize_pointed(PointedStructure(std::move(built), root));
}

NeighborhoodType fractal_type_id(const PointedStructure& tau_rep, unsigned k, FractalMode mode,
                                 std::size_t element_budget) {
    PointedStructure restricted = neighborhood(tau_rep.structure, tau_rep.center, k, false);
    return canonical_type(fractal_build(restricted, k, mode, element_budget), k);
}

} // namespace succweave
