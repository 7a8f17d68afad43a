#include "succweave/params.hpp"

#include "succweave/errors.hpp"

#include <doctest.h>

using namespace succweave;

TEST_CASE("hanf_params examples") {
    CHECK(hanf_params(0, 3) == std::pair<unsigned, std::uint64_t>{1, 1});
    CHECK(hanf_params(1, 3) == std::pair<unsigned, std::uint64_t>{1, 5});
    CHECK(hanf_params(2, 2) == std::pair<unsigned, std::uint64_t>{4, 19});
}

TEST_CASE("hanf_params outputs are positive") {
    for (unsigned alpha = 0; alpha <= 3; ++alpha)
        for (unsigned d = 0; d <= 4; ++d) {
            auto [r, t] = hanf_params(alpha, d);
            CHECK(r >= 1);
            CHECK(t >= 1);
        }
}

TEST_CASE("g_of examples") {
    CHECK(g_of(0, 2, 1, 2, 1) == 79);
    CHECK(g_of(4, 2, 1, 2, 2) == 213);
}

TEST_CASE("g_of is strictly increasing in beta") {
    for (std::uint64_t beta = 0; beta < 40; ++beta)
        CHECK(g_of(beta + 1, 2, 1, 2, 1) > g_of(beta, 2, 1, 2, 1));
    for (std::uint64_t beta = 0; beta < 40; ++beta)
        CHECK(g_of(beta + 1, 3, 2, 7, 4) > g_of(beta, 3, 2, 7, 4));
}

TEST_CASE("a_sequence examples") {
    auto incr = [](std::uint64_t b) { return b + 1; };
    CHECK(a_sequence(incr, 3) == std::vector<std::uint64_t>{1, 2, 5});
    CHECK(a_sequence(incr, 1) == std::vector<std::uint64_t>{1});

    auto g = [](std::uint64_t b) { return g_of(b, 2, 1, 2, 1); };
    CHECK(a_sequence(g, 1) == std::vector<std::uint64_t>{79});
}

TEST_CASE("a_sequence overflow raises a resource error") {
    auto g = [](std::uint64_t b) { return std::max<std::uint64_t>(b, 1) * 3; };
    CHECK_THROWS_AS(a_sequence(g, 40), ResourceError);
}

TEST_CASE("bundle overrides") {
    ParamsBundle p = ParamsBundle::forced(1, 2, 2, 8);
    CHECK(p.g(0) == 8);
    CHECK(p.g(100) == 8);
    CHECK(p.binding_bound(0) == "forced-constant");

    ParamsBundle q = ParamsBundle::forced(1, 2, 2);
    q.n_occ = 1;
    CHECK(q.g(0) == 79);
    CHECK(q.binding_bound(0) == "completion-splice");

    CHECK_THROWS_AS(ParamsBundle::forced(0, 2, 2), InputError);
    CHECK_THROWS_AS(ParamsBundle::forced(1, 0, 2), InputError);
}

TEST_CASE("from_alpha wires hanf_params") {
    ParamsBundle p = ParamsBundle::from_alpha(1, 3);
    CHECK(p.radius == 1);
    CHECK(p.threshold == 5);
    CHECK(p.degree == 3);
}
