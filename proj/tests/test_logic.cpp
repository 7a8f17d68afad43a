#include "succweave/logic.hpp"

#include "succweave/errors.hpp"
#include "succweave/io.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace succweave;

namespace {

FormulaPtr parse(const std::string& text) { return parse_formula_text(text); }

// Random sentence of quantifier rank <= max_rank over the given atoms.
FormulaPtr random_sentence(std::mt19937_64& rng, unsigned rank_left, unsigned depth_left,
                           const std::vector<std::pair<std::string, unsigned>>& atoms,
                           std::vector<std::string>& scope) {
    const bool can_quantify = rank_left > 0;
    const bool can_atom = !scope.empty();
    unsigned kind = rng() % 6;
    if (!can_atom) kind = 0;
    if (!can_quantify && kind == 0) kind = 1 + rng() % 5;
    if (depth_left == 0 && can_atom) kind = 4 + rng() % 2;
    switch (kind) {
        case 0: {
            std::string var = "v" + std::to_string(scope.size());
            scope.push_back(var);
            FormulaPtr body = random_sentence(rng, rank_left - 1, depth_left, atoms, scope);
            scope.pop_back();
            return rng() % 2 ? Formula::exists(var, body) : Formula::forall(var, body);
        }
        case 1:
        case 2: {
            std::vector<FormulaPtr> children;
            for (unsigned i = 0; i < 2; ++i)
                children.push_back(random_sentence(rng, rank_left, depth_left - 1, atoms, scope));
            return kind == 1 ? Formula::conj(std::move(children))
                             : Formula::disj(std::move(children));
        }
        case 3:
            return Formula::neg(random_sentence(rng, rank_left, depth_left - 1, atoms, scope));
        case 4: {
            const std::string& a = scope[rng() % scope.size()];
            const std::string& b = scope[rng() % scope.size()];
            return Formula::equals(a, b);
        }
        default: {
            const auto& [name, arity] = atoms[rng() % atoms.size()];
            std::vector<std::string> args;
            for (unsigned i = 0; i < arity; ++i) args.push_back(scope[rng() % scope.size()]);
            return Formula::atom(name, std::move(args));
        }
    }
}

FormulaPtr random_sentence(std::mt19937_64& rng, unsigned max_rank,
                           const std::vector<std::pair<std::string, unsigned>>& atoms,
                           const std::string& must_use = "") {
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<std::string> scope;
        FormulaPtr f = random_sentence(rng, max_rank, 5, atoms, scope);
        if (f->quantifier_rank() > max_rank) continue;
        if (!must_use.empty() && !f->uses_relation(must_use)) continue;
        return f;
    }
    throw std::runtime_error("sentence generator starved");
}

} // namespace

TEST_CASE("model_check examples") {
    Structure tri = fixtures::tri(1);
    CHECK_FALSE(model_check(tri, parse("(exists x (E x x))")));
    CHECK(model_check(
        tri, parse("(exists x (exists y (exists z (and (E x y) (E y z) (E z x)))))")));
    for (std::size_t k : {1, 4}) {
        CHECK(model_check(fixtures::tri(k), parse("(forall x (exists y (E x y)))")));
    }
}

TEST_CASE("model_check validation") {
    Structure tri = fixtures::tri(1);
    CHECK_THROWS_AS(model_check(tri, parse("(E x y)")), InputError);           // free variables
    CHECK_THROWS_AS(model_check(tri, parse("(exists x (E x))")), InputError);  // arity
    CHECK_THROWS_AS(model_check(tri, parse("(exists x (Q x))")), InputError);  // unknown relation
    CHECK_THROWS_AS(model_check(tri, parse("(exists x (S x x))")), InputError); // no successor
    CHECK_FALSE(model_check(tri.with_succ({}), parse("(exists x (S x x))")));
}

TEST_CASE("model_check agrees with the expansion evaluator") {
    std::mt19937_64 rng(101);
    for (int round = 0; round < 300; ++round) {
        std::size_t n = 1 + rng() % 6;
        Structure s = fixtures::random_graph(rng, n, 0.3);
        FormulaPtr f = random_sentence(rng, 3, {{"E", 2}});
        CHECK(model_check(s, f) == oracles::eval_expanded(s, f));
    }
}

TEST_CASE("ef_equivalent examples") {
    Structure tri = fixtures::directed_cycle(3);
    Structure sq = fixtures::directed_cycle(4);
    CHECK_FALSE(ef_equivalent(tri, sq, 3)); // the triangle sentence has rank 3
    CHECK(ef_equivalent(tri, sq, 1));

    std::mt19937_64 rng(103);
    for (int round = 0; round < 20; ++round) {
        Structure s = fixtures::random_graph(rng, 1 + rng() % 5, 0.3);
        for (unsigned k = 0; k <= 3; ++k) CHECK(ef_equivalent(s, s, k));
    }
}

TEST_CASE("ef_equivalent is monotone in the number of rounds") {
    std::mt19937_64 rng(107);
    for (int round = 0; round < 60; ++round) {
        Structure a = fixtures::random_graph(rng, 1 + rng() % 4, 0.3);
        Structure b = fixtures::random_graph(rng, 1 + rng() % 4, 0.3);
        for (unsigned k = 3; k >= 1; --k)
            if (ef_equivalent(a, b, k)) CHECK(ef_equivalent(a, b, k - 1));
    }
}

TEST_CASE("ef_equivalent matches the Hintikka-sentence characterization") {
    std::mt19937_64 rng(109);
    for (int round = 0; round < 150; ++round) {
        Structure a = fixtures::random_graph(rng, 1 + rng() % 4, 0.35);
        Structure b = fixtures::random_graph(rng, 1 + rng() % 4, 0.35);
        unsigned k = 1 + rng() % 2;
        bool game = ef_equivalent(a, b, k);
        CHECK(game == model_check(b, oracles::hintikka(a, k)));
        CHECK(game == model_check(a, oracles::hintikka(b, k)));
    }
}

TEST_CASE("ef_equivalent matches the characterization on enriched structures") {
    std::mt19937_64 rng(139);
    for (int round = 0; round < 100; ++round) {
        std::size_t na = 1 + rng() % 3, nb = 1 + rng() % 3;
        Structure a = fixtures::random_graph(rng, na, 0.35)
                          .with_succ(fixtures::random_pairs(rng, na, rng() % (na + 1)));
        Structure b = fixtures::random_graph(rng, nb, 0.35)
                          .with_succ(fixtures::random_pairs(rng, nb, rng() % (nb + 1)));
        unsigned k = 1 + rng() % 2;
        bool game = ef_equivalent(a, b, k);
        CHECK(game == model_check(b, oracles::hintikka(a, k)));
        CHECK(game == model_check(a, oracles::hintikka(b, k)));
    }
}

TEST_CASE("type-ordering toggle never changes EF results") {
    std::mt19937_64 rng(113);
    for (int round = 0; round < 80; ++round) {
        std::size_t na = 1 + rng() % 4, nb = 1 + rng() % 4;
        Structure a = fixtures::random_graph(rng, na, 0.3);
        Structure b = fixtures::random_graph(rng, nb, 0.3);
        if (round % 2) {
            a = a.with_succ(fixtures::random_pairs(rng, na, rng() % (na + 1)));
            b = b.with_succ(fixtures::random_pairs(rng, nb, rng() % (nb + 1)));
        }
        unsigned k = 1 + rng() % 2;
        CHECK(ef_equivalent(a, b, k) == ef_equivalent(a, b, k, {.type_ordering = true}));
    }
}

TEST_CASE("succ_to_linsucc rewrites each S atom with a fresh witness") {
    FormulaPtr out = succ_to_linsucc(parse("(forall x (forall y (S x y)))"));
    CHECK(emit_formula(out) ==
          "(forall x (forall y (or (Sbar x y) (not (exists z (or (Sbar x z) (Sbar z y)))))))");

    FormulaPtr untouched = succ_to_linsucc(parse("(exists x (E x x))"));
    CHECK(emit_formula(untouched) == "(exists x (E x x))");

    CHECK_THROWS_AS(succ_to_linsucc(parse("(exists x (Sbar x x))")), InputError);

    // an existing variable named z forces a renamed witness
    FormulaPtr shadowed = succ_to_linsucc(parse("(forall z (forall y (S z y)))"));
    CHECK(emit_formula(shadowed) ==
          "(forall z (forall y (or (Sbar z y) (not (exists z1 (or (Sbar z z1) (Sbar z1 y)))))))");
}

TEST_CASE("linsucc_to_succ cuts at an existential minimum") {
    FormulaPtr out = linsucc_to_succ(parse("(forall x (forall y (Sbar x y)))"));
    CHECK(emit_formula(out) ==
          "(exists min (forall x (forall y (and (S x y) (not (= y min))))))");

    FormulaPtr vacuous = linsucc_to_succ(parse("(exists x (E x x))"));
    CHECK(emit_formula(vacuous) == "(exists min (exists x (E x x)))");

    CHECK_THROWS_AS(linsucc_to_succ(parse("(exists x (S x x))")), InputError);
}

TEST_CASE("rewritings preserve truth across successor flavors (sampled up to n=5)") {
    std::mt19937_64 rng(127);
    int checked = 0;
    for (int round = 0; round < 10; ++round) {
        FormulaPtr phi = random_sentence(rng, 2, {{"E", 2}, {"S", 2}}, "S");
        FormulaPtr psi = succ_to_linsucc(phi);
        for (std::size_t n = 1; n <= 5; ++n) {
            const int graphs = n <= 3 ? 6 : 2;
            for (int g = 0; g < graphs; ++g) {
                Structure base = fixtures::random_graph(rng, n, 0.4);
                for (const auto& linear : oracles::all_linear_successors(n)) {
                    Structure with_linear = base.with_succ(linear);
                    Structure with_circular = base.with_succ(oracles::close_linear(linear, n));
                    CHECK(model_check(with_linear, psi) == model_check(with_circular, phi));
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 3000);
}

TEST_CASE("cut rewriting preserves truth (sampled up to n=5)") {
    std::mt19937_64 rng(131);
    int checked = 0;
    for (int round = 0; round < 8; ++round) {
        FormulaPtr psi = random_sentence(rng, 2, {{"E", 2}, {"Sbar", 2}}, "Sbar");
        FormulaPtr phi = linsucc_to_succ(psi);
        for (std::size_t n = 1; n <= 5; ++n) {
            const int graphs = n <= 3 ? 4 : 2;
            for (int g = 0; g < graphs; ++g) {
                Structure base = fixtures::random_graph(rng, n, 0.4);
                for (const auto& circular : oracles::all_circular_successors(n)) {
                    bool left = model_check(base.with_succ(circular), phi);
                    bool right = false;
                    for (Element min = 0; min < n && !right; ++min) {
                        std::vector<SuccPair> cut;
                        for (auto [p, q] : circular)
                            if (q != min) cut.emplace_back(p, q);
                        right = model_check(base.with_succ(cut), psi);
                    }
                    CHECK(left == right);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("is_circular_successor") {
    CHECK(is_circular_successor({{0, 1}, {1, 2}, {2, 0}}, 3));
    CHECK_FALSE(is_circular_successor({{0, 1}, {1, 0}, {2, 3}, {3, 2}}, 4));
    CHECK_FALSE(is_circular_successor({{0, 0}, {1, 1}}, 2));
    CHECK(is_circular_successor({{0, 0}}, 1));
    CHECK(is_circular_successor({}, 0));
    CHECK_FALSE(is_circular_successor({}, 1));
    CHECK_FALSE(is_circular_successor({{0, 1}, {0, 2}, {1, 0}}, 3)); // not functional
    CHECK_FALSE(is_circular_successor({{0, 1}, {1, 2}}, 3));         // not total
    CHECK_FALSE(is_circular_successor({{0, 5}}, 1));                 // out of range
}
