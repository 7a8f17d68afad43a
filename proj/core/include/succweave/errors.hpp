#pragma once

#include <stdexcept>
#include <string>

namespace succweave {

/// Malformed input: bad documents, out-of-range elements, signature misuse.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// The two input structures are not similar enough for the requested
/// parameters (census mismatch, missing embedding, unequal rare counts).
struct SimilarityError : std::runtime_error {
    explicit SimilarityError(const std::string& what) : std::runtime_error(what) {}
};

/// A construction step ran out of candidates; usually means g was forced
/// too small or the radius/threshold were forced too aggressively.
struct InfeasibilityError : std::runtime_error {
    explicit InfeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

/// A configurable budget (element count, arithmetic range, search size)
/// was exceeded.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated an operation contract (e.g. chain walk on a cycle).
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

} // namespace succweave
