#include "succweave/params.hpp"

#include "succweave/errors.hpp"

#include <limits>

namespace succweave {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw ResourceError("parameter arithmetic overflow");
    return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (b > std::numeric_limits<std::uint64_t>::max() - a)
        throw ResourceError("parameter arithmetic overflow");
    return a + b;
}

} // namespace

std::pair<unsigned, std::uint64_t> hanf_params(unsigned alpha, unsigned degree) {
    // Conservative closed forms; any valid (r,t) pair works and these are
    // overridable from the CLI.
    std::uint64_t pow3 = 1;
    for (unsigned i = 0; i < alpha; ++i) pow3 = checked_mul(pow3, 3);
    std::uint64_t r64 = std::max<std::uint64_t>(1, (pow3 - 1) / 2);
    if (r64 > std::numeric_limits<unsigned>::max())
        throw ResourceError("radius overflow");
    unsigned r = static_cast<unsigned>(r64);
    std::uint64_t t = checked_add(checked_mul(alpha, n_bound(degree, r)), 1);
    return {r, t};
}

std::uint64_t g_of(std::uint64_t beta, unsigned d, unsigned r, std::uint64_t t,
                   std::uint64_t n_occ) {
    const std::uint64_t b1 = checked_add(checked_mul(beta, n_bound(d + 2, 3 * r)), 1);
    const std::uint64_t protection = checked_mul(checked_add(beta, 2 * n_occ), n_bound(d + 2, r));
    const std::uint64_t b2 = checked_add(protection, checked_add(checked_mul(4, n_bound(d + 2, 2 * r)), 1));
    const std::uint64_t b3 = checked_add(protection, t);
    return std::max({b1, b2, b3});
}

ParamsBundle ParamsBundle::from_alpha(unsigned alpha, unsigned degree) {
    ParamsBundle p;
    p.alpha = alpha;
    p.degree = degree;
    auto [r, t] = hanf_params(alpha, degree);
    p.radius = r;
    p.threshold = t;
    return p;
}

ParamsBundle ParamsBundle::forced(unsigned radius, std::uint64_t threshold, unsigned degree,
                                  std::optional<std::uint64_t> g_const) {
    if (radius < 1) throw InputError("radius must be at least 1");
    if (threshold < 1) throw InputError("threshold must be at least 1");
    ParamsBundle p;
    p.degree = degree;
    p.radius = radius;
    p.threshold = threshold;
    p.g_const = g_const;
    return p;
}

std::uint64_t ParamsBundle::g(std::uint64_t beta) const {
    if (g_const) return *g_const;
    return g_of(beta, degree, radius, threshold, n_occ);
}

std::string ParamsBundle::binding_bound(std::uint64_t beta) const {
    if (g_const) return "forced-constant";
    const std::uint64_t b1 = checked_add(checked_mul(beta, n_bound(degree + 2, 3 * radius)), 1);
    const std::uint64_t protection =
        checked_mul(checked_add(beta, 2 * n_occ), n_bound(degree + 2, radius));
    const std::uint64_t b2 =
        checked_add(protection, checked_add(checked_mul(4, n_bound(degree + 2, 2 * radius)), 1));
    const std::uint64_t b3 = checked_add(protection, threshold);
    const std::uint64_t top = std::max({b1, b2, b3});
    if (top == b1) return "rare-protection";
    if (top == b2) return "completion-splice";
    return "census-surplus";
}

std::vector<std::uint64_t> a_sequence(const std::function<std::uint64_t(std::uint64_t)>& g,
                                      std::size_t n) {
    std::vector<std::uint64_t> a;
    a.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0) {
            a.push_back(g(0));
        } else {
            a.push_back(g(checked_mul(i, a.back())));
        }
    }
    return a;
}

} // namespace succweave
