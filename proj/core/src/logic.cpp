#include "succweave/logic.hpp"

#include "succweave/canonical.hpp"
#include "succweave/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace succweave {

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
    return std::make_shared<Formula>(Formula{Kind::exists, std::move(var), {std::move(body)}, {}, {}});
}
FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
    return std::make_shared<Formula>(Formula{Kind::forall, std::move(var), {std::move(body)}, {}, {}});
}
FormulaPtr Formula::conj(std::vector<FormulaPtr> children) {
    return std::make_shared<Formula>(Formula{Kind::conj, {}, std::move(children), {}, {}});
}
FormulaPtr Formula::disj(std::vector<FormulaPtr> children) {
    return std::make_shared<Formula>(Formula{Kind::disj, {}, std::move(children), {}, {}});
}
FormulaPtr Formula::neg(FormulaPtr child) {
    return std::make_shared<Formula>(Formula{Kind::neg, {}, {std::move(child)}, {}, {}});
}
FormulaPtr Formula::equals(std::string a, std::string b) {
    return std::make_shared<Formula>(Formula{Kind::equals, {}, {}, {}, {std::move(a), std::move(b)}});
}
FormulaPtr Formula::atom(std::string relation, std::vector<std::string> args) {
    return std::make_shared<Formula>(Formula{Kind::atom, {}, {}, std::move(relation), std::move(args)});
}

unsigned Formula::quantifier_rank() const {
    unsigned inner = 0;
    for (const auto& c : children) inner = std::max(inner, c->quantifier_rank());
    return (kind == Kind::exists || kind == Kind::forall) ? inner + 1 : inner;
}

bool Formula::uses_relation(const std::string& name) const {
    if (kind == Kind::atom && relation == name) return true;
    for (const auto& c : children)
        if (c->uses_relation(name)) return true;
    return false;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind) {
        case Formula::Kind::exists:
        case Formula::Kind::forall:
            bound.push_back(f.var);
            collect_free(*f.children[0], bound, out);
            bound.pop_back();
            return;
        case Formula::Kind::equals:
        case Formula::Kind::atom:
            for (const auto& v : f.args)
                if (std::find(bound.rbegin(), bound.rend(), v) == bound.rend()) out.insert(v);
            return;
        default:
            for (const auto& c : f.children) collect_free(*c, bound, out);
            return;
    }
}

void collect_all_vars(const Formula& f, std::set<std::string>& out) {
    if (!f.var.empty()) out.insert(f.var);
    for (const auto& v : f.args) out.insert(v);
    for (const auto& c : f.children) collect_all_vars(*c, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used, unsigned& counter) {
    while (true) {
        std::string candidate = counter == 0 ? base : base + std::to_string(counter);
        ++counter;
        if (!used.count(candidate)) return candidate;
    }
}

// --- model checking -------------------------------------------------------

constexpr int kRelSucc = -1;
constexpr int kRelEquals = -2;

struct Prepared {
    Formula::Kind kind;
    int rel = 0;
    std::vector<int> slots;
    std::vector<Prepared> children;
};

Prepared prepare(const Formula& f, std::vector<std::string>& scope, const Structure& s) {
    Prepared out;
    out.kind = f.kind;
    switch (f.kind) {
        case Formula::Kind::exists:
        case Formula::Kind::forall:
            scope.push_back(f.var);
            out.children.push_back(prepare(*f.children[0], scope, s));
            scope.pop_back();
            return out;
        case Formula::Kind::conj:
        case Formula::Kind::disj:
        case Formula::Kind::neg:
            for (const auto& c : f.children) out.children.push_back(prepare(*c, scope, s));
            return out;
        case Formula::Kind::equals:
        case Formula::Kind::atom: {
            if (f.kind == Formula::Kind::equals) {
                out.rel = kRelEquals;
                if (f.args.size() != 2) throw InputError("equality needs two variables");
            } else if (f.relation == kSuccName || f.relation == kLinSuccName) {
                if (!s.has_succ())
                    throw InputError("formula uses " + f.relation +
                                     " but the structure has no successor relation");
                if (f.args.size() != 2)
                    throw InputError(f.relation + " atoms need two variables");
                out.rel = kRelSucc;
            } else {
                std::size_t idx = s.signature().index_of(f.relation);
                if (f.args.size() != s.signature().at(idx).arity)
                    throw InputError("arity mismatch in atom " + f.relation);
                out.rel = static_cast<int>(idx);
            }
            for (const auto& v : f.args) {
                auto it = std::find(scope.rbegin(), scope.rend(), v);
                if (it == scope.rend())
                    throw InputError("free variable " + v + " (sentences only)");
                out.slots.push_back(static_cast<int>(scope.size() - 1 - (it - scope.rbegin())));
            }
            return out;
        }
    }
    throw ContractViolation("unreachable formula kind");
}

bool eval(const Prepared& f, std::vector<Element>& env, const Structure& s) {
    switch (f.kind) {
        case Formula::Kind::exists:
            for (Element e = 0; e < s.size(); ++e) {
                env.push_back(e);
                bool ok = eval(f.children[0], env, s);
                env.pop_back();
                if (ok) return true;
            }
            return false;
        case Formula::Kind::forall:
            for (Element e = 0; e < s.size(); ++e) {
                env.push_back(e);
                bool ok = eval(f.children[0], env, s);
                env.pop_back();
                if (!ok) return false;
            }
            return true;
        case Formula::Kind::conj:
            for (const auto& c : f.children)
                if (!eval(c, env, s)) return false;
            return true;
        case Formula::Kind::disj:
            for (const auto& c : f.children)
                if (eval(c, env, s)) return true;
            return false;
        case Formula::Kind::neg:
            return !eval(f.children[0], env, s);
        case Formula::Kind::equals:
            return env[f.slots[0]] == env[f.slots[1]];
        case Formula::Kind::atom: {
            if (f.rel == kRelSucc) return s.succ_holds(env[f.slots[0]], env[f.slots[1]]);
            Tuple t(f.slots.size());
            for (std::size_t i = 0; i < f.slots.size(); ++i) t[i] = env[f.slots[i]];
            return s.holds(static_cast<std::size_t>(f.rel), t);
        }
    }
    throw ContractViolation("unreachable formula kind");
}

// --- EF game ---------------------------------------------------------------

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const {
        std::size_t h = 1469598103934665603ull;
        for (auto v : key) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

class EfEngine {
public:
    EfEngine(const Structure& a, const Structure& b, EfOptions options)
        : a_(a), b_(b), options_(options) {
        build_incidence(a_, incidence_a_);
        build_incidence(b_, incidence_b_);
    }

    bool run(unsigned k) {
        std::vector<std::pair<Element, Element>> pos;
        return wins(pos, k);
    }

private:
    using Incidence = std::vector<std::vector<std::pair<int, std::size_t>>>;

    static void build_incidence(const Structure& s, Incidence& out) {
        out.assign(s.size(), {});
        for (std::size_t rel = 0; rel < s.signature().size(); ++rel)
            for (std::size_t ti = 0; ti < s.table(rel).size(); ++ti)
                for (Element e : s.table(rel)[ti]) out[e].emplace_back(static_cast<int>(rel), ti);
        if (s.has_succ())
            for (std::size_t ti = 0; ti < s.succ().size(); ++ti) {
                out[s.succ()[ti].first].emplace_back(kRelSucc, ti);
                out[s.succ()[ti].second].emplace_back(kRelSucc, ti);
            }
        for (auto& inc : out) {
            std::sort(inc.begin(), inc.end());
            inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
        }
    }

    static Tuple tuple_at(const Structure& s, int rel, std::size_t ti) {
        if (rel == kRelSucc) return {s.succ()[ti].first, s.succ()[ti].second};
        return s.table(rel)[ti];
    }

    static bool holds_in(const Structure& s, int rel, const Tuple& t) {
        if (rel == kRelSucc) return t.size() == 2 && s.succ_holds(t[0], t[1]);
        return s.holds(static_cast<std::size_t>(rel), t);
    }

    // Checks that extending the position with (u,v) keeps a partial
    // isomorphism: functional/injective with matching equalities, and
    // tuples fully inside the matched sets map both ways.
    bool valid_extension(const std::vector<std::pair<Element, Element>>& pos, Element u, Element v) {
        for (auto [x, y] : pos) {
            if ((x == u) != (y == v)) return false;
        }
        std::map<Element, Element> fwd, bwd;
        for (auto [x, y] : pos) {
            fwd[x] = y;
            bwd[y] = x;
        }
        fwd[u] = v;
        bwd[v] = u;
        for (auto [rel, ti] : incidence_a_[u]) {
            Tuple t = tuple_at(a_, rel, ti);
            Tuple mapped(t.size());
            bool complete = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                auto it = fwd.find(t[i]);
                if (it == fwd.end()) { complete = false; break; }
                mapped[i] = it->second;
            }
            if (complete && !holds_in(b_, rel, mapped)) return false;
        }
        for (auto [rel, ti] : incidence_b_[v]) {
            Tuple t = tuple_at(b_, rel, ti);
            Tuple mapped(t.size());
            bool complete = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                auto it = bwd.find(t[i]);
                if (it == bwd.end()) { complete = false; break; }
                mapped[i] = it->second;
            }
            if (complete && !holds_in(a_, rel, mapped)) return false;
        }
        return true;
    }

    const std::pair<ElementTypes, ElementTypes>& types_at(unsigned radius) {
        auto it = type_cache_.find(radius);
        if (it == type_cache_.end()) {
            it = type_cache_
                     .emplace(radius, std::make_pair(ElementTypes::compute(a_, radius, true),
                                                     ElementTypes::compute(b_, radius, true)))
                     .first;
        }
        return it->second;
    }

    std::vector<Element> candidates(const Structure& target, bool target_is_b, Element picked,
                                    unsigned rounds) {
        std::vector<Element> order(target.size());
        for (Element e = 0; e < target.size(); ++e) order[e] = e;
        if (options_.type_ordering && rounds >= 1) {
            const auto& [ta, tb] = types_at(rounds - 1);
            const ElementTypes& picked_side = target_is_b ? ta : tb;
            const ElementTypes& response_side = target_is_b ? tb : ta;
            const NeighborhoodType& wanted = picked_side.type_of(picked);
            std::stable_partition(order.begin(), order.end(), [&](Element e) {
                return response_side.type_of(e) == wanted;
            });
        }
        return order;
    }

    bool wins(std::vector<std::pair<Element, Element>>& pos, unsigned rounds) {
        if (rounds == 0) return true;
        std::vector<std::uint32_t> key;
        key.reserve(pos.size() * 2 + 1);
        key.push_back(rounds);
        for (auto [x, y] : pos) {
            key.push_back(x);
            key.push_back(y);
        }
        auto memo_it = memo_.find(key);
        if (memo_it != memo_.end()) return memo_it->second;
        if (memo_.size() > kMemoBudget)
            throw ResourceError("EF game state budget exceeded");

        bool result = true;
        for (Element u = 0; u < a_.size() && result; ++u) {
            bool found = false;
            for (Element v : candidates(b_, true, u, rounds)) {
                if (!valid_extension(pos, u, v)) continue;
                pos.emplace_back(u, v);
                bool ok = wins(pos, rounds - 1);
                pos.pop_back();
                if (ok) { found = true; break; }
            }
            if (!found) result = false;
        }
        for (Element v = 0; v < b_.size() && result; ++v) {
            bool found = false;
            for (Element u : candidates(a_, false, v, rounds)) {
                if (!valid_extension(pos, u, v)) continue;
                pos.emplace_back(u, v);
                bool ok = wins(pos, rounds - 1);
                pos.pop_back();
                if (ok) { found = true; break; }
            }
            if (!found) result = false;
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

    static constexpr std::size_t kMemoBudget = 1 << 24;

    const Structure& a_;
    const Structure& b_;
    EfOptions options_;
    Incidence incidence_a_;
    Incidence incidence_b_;
    std::unordered_map<std::vector<std::uint32_t>, bool, KeyHash> memo_;
    std::map<unsigned, std::pair<ElementTypes, ElementTypes>> type_cache_;
};

// --- rewritings ------------------------------------------------------------

FormulaPtr rewrite_succ_atoms(const FormulaPtr& f, const std::set<std::string>& used,
                              unsigned& counter) {
    switch (f->kind) {
        case Formula::Kind::atom: {
            if (f->relation != kSuccName) return f;
            const std::string& x = f->args[0];
            const std::string& y = f->args[1];
            std::string z = fresh_name("z", used, counter);
            // Sbar(x,y) or not exists z (Sbar(x,z) or Sbar(z,y))
            return Formula::disj(
                {Formula::atom(kLinSuccName, {x, y}),
                 Formula::neg(Formula::exists(
                     z, Formula::disj({Formula::atom(kLinSuccName, {x, z}),
                                       Formula::atom(kLinSuccName, {z, y})})))});
        }
        case Formula::Kind::equals:
            return f;
        default: {
            auto copy = std::make_shared<Formula>(*f);
            for (auto& c : copy->children) c = rewrite_succ_atoms(c, used, counter);
            return copy;
        }
    }
}

FormulaPtr rewrite_linsucc_atoms(const FormulaPtr& f, const std::string& min_var) {
    switch (f->kind) {
        case Formula::Kind::atom: {
            if (f->relation != kLinSuccName) return f;
            const std::string& x = f->args[0];
            const std::string& y = f->args[1];
            // S(x,y) and not y = min
            return Formula::conj({Formula::atom(kSuccName, {x, y}),
                                  Formula::neg(Formula::equals(y, min_var))});
        }
        case Formula::Kind::equals:
            return f;
        default: {
            auto copy = std::make_shared<Formula>(*f);
            for (auto& c : copy->children) c = rewrite_linsucc_atoms(c, min_var);
            return copy;
        }
    }
}

} // namespace

std::vector<std::string> Formula::free_variables() const {
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(*this, bound, out);
    return {out.begin(), out.end()};
}

bool model_check(const Structure& s, const FormulaPtr& phi) {
    if (!phi) throw InputError("null formula");
    if (!phi->free_variables().empty())
        throw InputError("model_check requires a sentence (no free variables)");
    std::vector<std::string> scope;
    Prepared prepared = prepare(*phi, scope, s);
    std::vector<Element> env;
    return eval(prepared, env, s);
}

bool ef_equivalent(const Structure& a, const Structure& b, unsigned k, EfOptions options) {
    if (!(a.signature() == b.signature()))
        throw InputError("ef_equivalent: signature mismatch");
    return EfEngine(a, b, options).run(k);
}

FormulaPtr succ_to_linsucc(const FormulaPtr& phi) {
    if (!phi) throw InputError("null formula");
    if (phi->uses_relation(kLinSuccName))
        throw InputError("succ_to_linsucc: formula already uses " + std::string(kLinSuccName));
    std::set<std::string> used;
    collect_all_vars(*phi, used);
    unsigned counter = 0;
    return rewrite_succ_atoms(phi, used, counter);
}

FormulaPtr linsucc_to_succ(const FormulaPtr& psi) {
    if (!psi) throw InputError("null formula");
    if (psi->uses_relation(kSuccName))
        throw InputError("linsucc_to_succ: formula already uses " + std::string(kSuccName));
    std::set<std::string> used;
    collect_all_vars(*psi, used);
    unsigned counter = 0;
    std::string min_var = fresh_name("min", used, counter);
    return Formula::exists(min_var, rewrite_linsucc_atoms(psi, min_var));
}

bool is_circular_successor(const std::vector<SuccPair>& pairs, std::size_t n) {
    if (n == 0) return pairs.empty();
    if (pairs.size() != n) return false;
    std::vector<std::optional<Element>> next(n);
    std::vector<char> has_pred(n, 0);
    for (auto [a, b] : pairs) {
        if (a >= n || b >= n) return false;
        if (next[a] || has_pred[b]) return false;
        next[a] = b;
        has_pred[b] = 1;
    }
    // Bijective by counting; check the orbit from 0 covers everything.
    Element cur = 0;
    for (std::size_t steps = 1; steps <= n; ++steps) {
        if (!next[cur]) return false;
        cur = *next[cur];
        if (cur == 0) return steps == n;
    }
    return false;
}

} // namespace succweave
