#pragma once

#include "succweave/logic.hpp"
#include "succweave/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

// Independent brute-force oracles. These deliberately avoid the library's
// canonical labeling, BFS helpers and prepared evaluator so that they can
// stand as second opinions in tests.
namespace oracles {

using namespace succweave;

inline bool tables_match_under(const Structure& a, const Structure& b,
                               const std::vector<Element>& map) {
    for (std::size_t rel = 0; rel < a.signature().size(); ++rel) {
        std::vector<Tuple> mapped;
        for (const auto& t : a.table(rel)) {
            Tuple m(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) m[i] = map[t[i]];
            mapped.push_back(std::move(m));
        }
        std::sort(mapped.begin(), mapped.end());
        if (mapped != b.table(rel)) return false;
    }
    std::vector<SuccPair> mapped_succ;
    if (a.has_succ())
        for (auto [x, y] : a.succ()) mapped_succ.emplace_back(map[x], map[y]);
    std::sort(mapped_succ.begin(), mapped_succ.end());
    std::vector<SuccPair> b_succ = b.has_succ() ? b.succ() : std::vector<SuccPair>{};
    return mapped_succ == b_succ;
}

/// All-bijections pointed isomorphism (center fixed to center).
inline bool pointed_isomorphic(const PointedStructure& a, const PointedStructure& b) {
    if (!(a.structure.signature() == b.structure.signature())) return false;
    if (a.structure.size() != b.structure.size()) return false;
    const std::size_t n = a.structure.size();
    std::vector<Element> b_rest;
    for (Element e = 0; e < n; ++e)
        if (e != b.center) b_rest.push_back(e);
    std::vector<Element> a_rest;
    for (Element e = 0; e < n; ++e)
        if (e != a.center) a_rest.push_back(e);
    std::sort(b_rest.begin(), b_rest.end());
    do {
        std::vector<Element> map(n);
        map[a.center] = b.center;
        for (std::size_t i = 0; i < a_rest.size(); ++i) map[a_rest[i]] = b_rest[i];
        if (tables_match_under(a.structure, b.structure, map)) return true;
    } while (std::next_permutation(b_rest.begin(), b_rest.end()));
    return false;
}

/// All-bijections plain isomorphism.
inline bool isomorphic(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()) || a.size() != b.size()) return false;
    std::vector<Element> map(a.size());
    std::iota(map.begin(), map.end(), 0);
    do {
        if (tables_match_under(a, b, map)) return true;
    } while (std::next_permutation(map.begin(), map.end()));
    return false;
}

/// All-pairs shortest paths over the Gaifman graph, rebuilt from the
/// tables directly (Floyd-Warshall).
inline std::vector<std::vector<std::size_t>> all_distances(const Structure& s, bool include_succ) {
    const std::size_t n = s.size();
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kUnreachable));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    auto join = [&](Element a, Element b) {
        if (a != b) d[a][b] = d[b][a] = 1;
    };
    for (std::size_t rel = 0; rel < s.signature().size(); ++rel)
        for (const auto& t : s.table(rel))
            for (Element a : t)
                for (Element b : t) join(a, b);
    if (include_succ && s.has_succ())
        for (auto [a, b] : s.succ()) join(a, b);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i][k] == kUnreachable) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (d[k][j] == kUnreachable) continue;
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    return d;
}

/// Second model checker: substitutes variables eagerly and evaluates atoms
/// by linear table scans.
inline bool eval_expanded(const Structure& s, const Formula& f,
                          std::map<std::string, Element>& env) {
    switch (f.kind) {
        case Formula::Kind::exists:
            for (Element e = 0; e < s.size(); ++e) {
                auto saved = env.find(f.var) != env.end() ? std::optional<Element>(env[f.var])
                                                          : std::nullopt;
                env[f.var] = e;
                bool ok = eval_expanded(s, *f.children[0], env);
                if (saved)
                    env[f.var] = *saved;
                else
                    env.erase(f.var);
                if (ok) return true;
            }
            return false;
        case Formula::Kind::forall: {
            for (Element e = 0; e < s.size(); ++e) {
                auto saved = env.find(f.var) != env.end() ? std::optional<Element>(env[f.var])
                                                          : std::nullopt;
                env[f.var] = e;
                bool ok = eval_expanded(s, *f.children[0], env);
                if (saved)
                    env[f.var] = *saved;
                else
                    env.erase(f.var);
                if (!ok) return false;
            }
            return true;
        }
        case Formula::Kind::conj:
            for (const auto& c : f.children)
                if (!eval_expanded(s, *c, env)) return false;
            return true;
        case Formula::Kind::disj:
            for (const auto& c : f.children)
                if (eval_expanded(s, *c, env)) return true;
            return false;
        case Formula::Kind::neg:
            return !eval_expanded(s, *f.children[0], env);
        case Formula::Kind::equals:
            return env.at(f.args[0]) == env.at(f.args[1]);
        case Formula::Kind::atom: {
            Tuple t;
            for (const auto& v : f.args) t.push_back(env.at(v));
            if (f.relation == kSuccName || f.relation == kLinSuccName) {
                if (!s.has_succ()) return false;
                for (auto [x, y] : s.succ())
                    if (x == t[0] && y == t[1]) return true;
                return false;
            }
            for (const auto& row : s.table(s.signature().index_of(f.relation)))
                if (row == t) return true;
            return false;
        }
    }
    return false;
}

inline bool eval_expanded(const Structure& s, const FormulaPtr& f) {
    std::map<std::string, Element> env;
    return eval_expanded(s, *f, env);
}

/// Rank-k Hintikka sentence of a structure: the game-normal-form sentence
/// characterizing its rank-k equivalence class, as a concrete formula.
/// For any structures A, B of the same signature, A and B satisfy the same
/// rank-k sentences iff B satisfies hintikka(A, k).
inline FormulaPtr hintikka_formula(const Structure& s, const std::vector<Element>& picked,
                                   unsigned k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < picked.size(); ++i) names.push_back("x" + std::to_string(i));
    if (k == 0) {
        std::vector<FormulaPtr> literals;
        for (std::size_t rel = 0; rel < s.signature().size(); ++rel) {
            const unsigned arity = s.signature().at(rel).arity;
            // every arity-tuple over the picked positions
            std::vector<std::size_t> idx(arity, 0);
            while (true) {
                if (picked.empty()) break;
                Tuple t(arity);
                std::vector<std::string> args(arity);
                for (unsigned i = 0; i < arity; ++i) {
                    t[i] = picked[idx[i]];
                    args[i] = names[idx[i]];
                }
                FormulaPtr atom = Formula::atom(s.signature().at(rel).name, args);
                literals.push_back(s.holds(rel, t) ? atom : Formula::neg(atom));
                unsigned pos = 0;
                while (pos < arity && ++idx[pos] == picked.size()) idx[pos++] = 0;
                if (pos == arity) break;
            }
        }
        if (s.has_succ()) {
            for (std::size_t i = 0; i < picked.size(); ++i)
                for (std::size_t j = 0; j < picked.size(); ++j) {
                    FormulaPtr atom = Formula::atom(kSuccName, {names[i], names[j]});
                    literals.push_back(s.succ_holds(picked[i], picked[j]) ? atom
                                                                          : Formula::neg(atom));
                }
        }
        for (std::size_t i = 0; i < picked.size(); ++i)
            for (std::size_t j = i + 1; j < picked.size(); ++j) {
                FormulaPtr eq = Formula::equals(names[i], names[j]);
                literals.push_back(picked[i] == picked[j] ? eq : Formula::neg(eq));
            }
        return Formula::conj(std::move(literals));
    }
    std::string next = "x" + std::to_string(picked.size());
    std::vector<FormulaPtr> parts;
    std::vector<FormulaPtr> cases;
    for (Element e = 0; e < s.size(); ++e) {
        std::vector<Element> extended = picked;
        extended.push_back(e);
        FormulaPtr sub = hintikka_formula(s, extended, k - 1);
        cases.push_back(sub);
        parts.push_back(Formula::exists(next, sub));
    }
    parts.push_back(Formula::forall(next, Formula::disj(std::move(cases))));
    return Formula::conj(std::move(parts));
}

inline FormulaPtr hintikka(const Structure& s, unsigned k) {
    return hintikka_formula(s, {}, k);
}

/// All digraphs over {E:2} with n elements (self-loops allowed).
inline std::vector<Structure> all_digraphs(std::size_t n) {
    std::vector<SuccPair> slots;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) slots.emplace_back(a, b);
    std::vector<Structure> out;
    const std::size_t count = std::size_t(1) << slots.size();
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<SuccPair> edges;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask & (std::size_t(1) << i)) edges.push_back(slots[i]);
        out.push_back(Structure::graph(n, std::move(edges)));
    }
    return out;
}

/// Linear successors on 0..n-1: one per ordering.
inline std::vector<std::vector<SuccPair>> all_linear_successors(std::size_t n) {
    std::vector<Element> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<SuccPair>> out;
    do {
        std::vector<SuccPair> pairs;
        for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(order[i], order[i + 1]);
        out.push_back(std::move(pairs));
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

/// Closes a linear successor into the circular one (max -> min edge).
inline std::vector<SuccPair> close_linear(const std::vector<SuccPair>& linear, std::size_t n) {
    std::vector<char> has_succ(n, 0), has_pred(n, 0);
    for (auto [a, b] : linear) {
        has_succ[a] = 1;
        has_pred[b] = 1;
    }
    Element max = 0, min = 0;
    for (Element e = 0; e < n; ++e) {
        if (!has_succ[e]) max = e;
        if (!has_pred[e]) min = e;
    }
    std::vector<SuccPair> closed = linear;
    closed.emplace_back(max, min);
    return closed;
}

/// All circular successors on 0..n-1.
inline std::vector<std::vector<SuccPair>> all_circular_successors(std::size_t n) {
    std::set<std::vector<SuccPair>> unique;
    for (const auto& linear : all_linear_successors(n)) {
        auto closed = close_linear(linear, n);
        std::sort(closed.begin(), closed.end());
        unique.insert(closed);
    }
    return {unique.begin(), unique.end()};
}

} // namespace oracles
