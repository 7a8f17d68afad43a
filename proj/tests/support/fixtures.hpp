#pragma once

#include "succweave/structure.hpp"

#include <numeric>
#include <random>

namespace fixtures {

using namespace succweave;

/// k disjoint directed 3-cycles.
inline Structure tri(std::size_t copies) {
    std::vector<SuccPair> edges;
    edges.reserve(copies * 3);
    for (std::size_t i = 0; i < copies; ++i) {
        Element a = static_cast<Element>(3 * i);
        edges.emplace_back(a, a + 1);
        edges.emplace_back(a + 1, a + 2);
        edges.emplace_back(a + 2, a);
    }
    return Structure::graph(3 * copies, std::move(edges));
}

/// k disjoint directed 3-cycles plus one directed 4-cycle.
inline Structure mix(std::size_t copies) {
    std::vector<SuccPair> edges;
    for (std::size_t i = 0; i < copies; ++i) {
        Element a = static_cast<Element>(3 * i);
        edges.emplace_back(a, a + 1);
        edges.emplace_back(a + 1, a + 2);
        edges.emplace_back(a + 2, a);
    }
    Element base = static_cast<Element>(3 * copies);
    for (Element j = 0; j < 4; ++j) edges.emplace_back(base + j, base + (j + 1) % 4);
    return Structure::graph(3 * copies + 4, std::move(edges));
}

inline Structure directed_cycle(std::size_t n) {
    std::vector<SuccPair> edges;
    for (Element i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Element>((i + 1) % n));
    return Structure::graph(n, std::move(edges));
}

inline Structure directed_path(std::size_t n) {
    std::vector<SuccPair> edges;
    for (Element i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Structure::graph(n, std::move(edges));
}

inline std::vector<Element> random_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

/// The same structure with the universe permuted by a seeded shuffle.
inline Structure relabel(const Structure& s, std::uint64_t seed) {
    const std::vector<Element> perm = random_permutation(s.size(), seed);
    std::vector<std::vector<Tuple>> tables(s.signature().size());
    for (std::size_t rel = 0; rel < s.signature().size(); ++rel) {
        for (const auto& t : s.table(rel)) {
            Tuple mapped(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = perm[t[i]];
            tables[rel].push_back(std::move(mapped));
        }
    }
    std::optional<std::vector<SuccPair>> succ;
    if (s.has_succ()) {
        std::vector<SuccPair> pairs;
        for (auto [a, b] : s.succ()) pairs.emplace_back(perm[a], perm[b]);
        succ = std::move(pairs);
    }
    return Structure(s.signature(), s.size(), std::move(tables), std::move(succ));
}

/// Random digraph over {E:2}; every ordered pair (self-loops included)
/// becomes an edge with probability p.
inline Structure random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution flip(p);
    std::vector<SuccPair> edges;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (flip(rng)) edges.emplace_back(a, b);
    return Structure::graph(n, std::move(edges));
}

/// Random structure over {E:2, U:1}; exercises non-graph signatures.
inline Structure random_two_relation(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution flip(p);
    std::vector<Tuple> e_table;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (flip(rng)) e_table.push_back({a, b});
    std::vector<Tuple> u_table;
    for (Element a = 0; a < n; ++a)
        if (flip(rng)) u_table.push_back({a});
    return Structure(Signature({{"E", 2}, {"U", 1}}), n, {std::move(e_table), std::move(u_table)});
}

inline std::vector<SuccPair> random_pairs(std::mt19937_64& rng, std::size_t n, std::size_t count) {
    if (n == 0) return {};
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    std::vector<SuccPair> pairs;
    for (std::size_t i = 0; i < count; ++i) pairs.emplace_back(pick(rng), pick(rng));
    return pairs;
}

} // namespace fixtures
