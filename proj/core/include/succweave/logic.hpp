#pragma once

#include "succweave/structure.hpp"

#include <memory>
#include <string>
#include <vector>

namespace succweave {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// First-order formula tree. Atoms may name the circular successor "S" or
/// the linear successor "Sbar"; both are interpreted against a structure's
/// succ relation, which holds whichever flavor the formula speaks about.
struct Formula {
    enum class Kind { exists, forall, conj, disj, neg, equals, atom };

    Kind kind;
    std::string var;                  // quantifiers
    std::vector<FormulaPtr> children; // conj/disj (n-ary), neg (1), quantifiers (1)
    std::string relation;             // atoms
    std::vector<std::string> args;    // atom arguments; equals uses args[0], args[1]

    static FormulaPtr exists(std::string var, FormulaPtr body);
    static FormulaPtr forall(std::string var, FormulaPtr body);
    static FormulaPtr conj(std::vector<FormulaPtr> children);
    static FormulaPtr disj(std::vector<FormulaPtr> children);
    static FormulaPtr neg(FormulaPtr child);
    static FormulaPtr equals(std::string a, std::string b);
    static FormulaPtr atom(std::string relation, std::vector<std::string> args);

    unsigned quantifier_rank() const;
    bool uses_relation(const std::string& name) const;
    std::vector<std::string> free_variables() const;
};

/// Names of the two successor flavors accepted in atoms.
inline constexpr const char* kSuccName = "S";
inline constexpr const char* kLinSuccName = "Sbar";

/// Tarskian truth by exhaustive assignment enumeration. phi must be a
/// sentence over the structure's signature (plus S when succ is present).
bool model_check(const Structure& s, const FormulaPtr& phi);

struct EfOptions {
    /// Order Duplicator candidates so that elements matching the picked
    /// element's (rounds-1)-neighborhood type are tried first. Pure
    /// optimization; never changes the result.
    bool type_ordering = false;
};

/// True iff Duplicator wins the k-round Ehrenfeucht-Fraisse game, i.e.
/// the structures satisfy the same sentences of quantifier rank <= k.
bool ef_equivalent(const Structure& a, const Structure& b, unsigned k, EfOptions options = {});

/// Rewrites every S(x,y) atom into its linear-successor equivalent
/// "Sbar(x,y) or nothing follows x and nothing precedes y".
FormulaPtr succ_to_linsucc(const FormulaPtr& phi);

/// Wraps the formula in an existential cut point: Sbar(x,y) becomes
/// S(x,y) and y != min, all under "exists min".
FormulaPtr linsucc_to_succ(const FormulaPtr& psi);

/// True iff pairs is the graph of a circular permutation of 0..n-1
/// (a bijection with a single orbit; n=1 admits the fixed point (0,0)).
bool is_circular_successor(const std::vector<SuccPair>& pairs, std::size_t n);

} // namespace succweave
