#pragma once

#include "succweave/logic.hpp"
#include "succweave/params.hpp"
#include "succweave/verify.hpp"
#include "succweave/weave.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace succweave {

/// A structure loaded from a document, with the original element labels
/// (labels[i] is the label renumbered to i).
struct LoadedStructure {
    Structure structure;
    std::vector<std::int64_t> labels;

    bool identity_labels() const;
};

LoadedStructure parse_structure_text(const std::string& text);
LoadedStructure load_structure(const std::string& path);
std::string emit_structure(const Structure& s);

/// Successor file: the permutation plus the bookkeeping verify needs to
/// re-run every check (rare occurrences, junction set, anchors, the woven
/// region, and on side 2 the transfer pairs), integrity-hashed.
struct SuccessorFile {
    int side = 1;
    std::size_t n = 0;
    bool iso_branch = false;
    std::vector<Element> succ;
    std::vector<Element> rare;
    std::vector<Element> junction;
    std::vector<std::pair<Element, Element>> anchors;
    std::vector<Element> a_set;
    std::vector<std::pair<Element, Element>> h_pairs; // side 2 only

    static SuccessorFile from_result(const WeaveResult& result, int side);
};

std::string emit_successor(const SuccessorFile& f);
SuccessorFile parse_successor_text(const std::string& text);
SuccessorFile load_successor(const std::string& path);

/// Rebuilds the weave-result view that verification consumes from a pair
/// of successor files.
WeaveResult result_from_files(const SuccessorFile& f1, const SuccessorFile& f2, unsigned r);

std::string emit_report(const VerificationReport& report);
std::string emit_census(const TypeCensus& census);
std::string emit_params(const ParamsBundle& params);

/// Parenthesized prefix grammar: (exists x (and (E x y) (not (= x y)))).
FormulaPtr parse_formula_text(const std::string& text);
FormulaPtr load_formula(const std::string& path);
std::string emit_formula(const FormulaPtr& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace succweave
