#include "succweave/errors.hpp"
#include "succweave/fractal.hpp"
#include "succweave/io.hpp"
#include "succweave/layering.hpp"
#include "succweave/logic.hpp"
#include "succweave/params.hpp"
#include "succweave/verify.hpp"
#include "succweave/weave.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInputError = 3;

void echo_labels(const succweave::LoadedStructure& loaded, const std::string& path) {
    if (loaded.identity_labels()) return;
    std::cerr << "note: " << path << " renumbered to 0.." << loaded.labels.size() - 1 << ":";
    for (std::size_t i = 0; i < loaded.labels.size(); ++i)
        std::cerr << ' ' << loaded.labels[i] << "->" << i;
    std::cerr << "\n";
}

succweave::Structure load(const std::string& path) {
    succweave::LoadedStructure loaded = succweave::load_structure(path);
    echo_labels(loaded, path);
    return std::move(loaded.structure);
}

int run(int argc, char** argv) {
    using namespace succweave;

    if (const char* budget = std::getenv("SUCCWEAVE_FRACTAL_BUDGET"))
        set_default_fractal_budget(std::stoull(budget));

    CLI::App app{"circular successor construction on finite relational structures"};
    app.require_subcommand(1);

    // census
    std::string census_path;
    unsigned census_radius = 1;
    bool census_with_succ = false;
    auto* census_cmd = app.add_subcommand("census", "neighborhood-type census of one structure");
    census_cmd->add_option("file", census_path)->required();
    census_cmd->add_option("--radius", census_radius)->required();
    census_cmd->add_flag("--with-succ", census_with_succ);

    // params
    unsigned params_alpha = 0;
    unsigned params_degree = 0;
    auto* params_cmd = app.add_subcommand("params", "derive pipeline parameters from a rank");
    params_cmd->add_option("--alpha", params_alpha)->required();
    params_cmd->add_option("--degree", params_degree)->required();

    // weave
    std::string weave_g1, weave_g2;
    std::string out_succ1 = "succ1.txt", out_succ2 = "succ2.txt", weave_report = "report.json";
    unsigned weave_alpha = 0, weave_degree = 0, weave_radius = 0;
    std::uint64_t weave_threshold = 0, weave_gconst = 0;
    auto* weave_cmd = app.add_subcommand("weave", "build successor relations on two structures");
    weave_cmd->add_option("g1", weave_g1)->required();
    weave_cmd->add_option("g2", weave_g2)->required();
    auto* opt_alpha = weave_cmd->add_option("--alpha", weave_alpha);
    auto* opt_degree = weave_cmd->add_option("--degree", weave_degree);
    auto* opt_radius = weave_cmd->add_option("--radius", weave_radius);
    auto* opt_threshold = weave_cmd->add_option("--threshold", weave_threshold);
    auto* opt_gconst = weave_cmd->add_option("--g-const", weave_gconst);
    weave_cmd->add_option("--out-succ1", out_succ1);
    weave_cmd->add_option("--out-succ2", out_succ2);
    weave_cmd->add_option("--report", weave_report);

    // verify
    std::string verify_g1, verify_s1, verify_g2, verify_s2, verify_report = "report.json";
    unsigned verify_radius = 1;
    std::uint64_t verify_threshold = 1;
    unsigned verify_ef_depth = 0;
    auto* verify_cmd = app.add_subcommand("verify", "re-check a weave from its files");
    verify_cmd->add_option("g1", verify_g1)->required();
    verify_cmd->add_option("succ1", verify_s1)->required();
    verify_cmd->add_option("g2", verify_g2)->required();
    verify_cmd->add_option("succ2", verify_s2)->required();
    verify_cmd->add_option("--radius", verify_radius)->required();
    verify_cmd->add_option("--threshold", verify_threshold)->required();
    auto* opt_ef = verify_cmd->add_option("--ef-depth", verify_ef_depth);
    verify_cmd->add_option("--report", verify_report);

    // ef
    std::string ef_a, ef_b;
    unsigned ef_depth = 1;
    auto* ef_cmd = app.add_subcommand("ef", "Ehrenfeucht-Fraisse equivalence of two structures");
    ef_cmd->add_option("a", ef_a)->required();
    ef_cmd->add_option("b", ef_b)->required();
    ef_cmd->add_option("--depth", ef_depth)->required();

    // mc
    std::string mc_structure, mc_formula;
    auto* mc_cmd = app.add_subcommand("mc", "model-check a sentence on a structure");
    mc_cmd->add_option("file", mc_structure)->required();
    mc_cmd->add_option("formula", mc_formula)->required();

    // rewrite
    std::string rewrite_direction, rewrite_formula;
    auto* rewrite_cmd = app.add_subcommand("rewrite", "successor-flavor formula rewriting");
    rewrite_cmd->add_option("direction", rewrite_direction)
        ->required()
        ->check(CLI::IsMember({"succ2lin", "lin2succ"}));
    rewrite_cmd->add_option("formula", rewrite_formula)->required();

    CLI11_PARSE(app, argc, argv);

    if (census_cmd->parsed()) {
        Structure s = load(census_path);
        std::cout << emit_census(type_census(s, census_radius, census_with_succ));
        return kExitOk;
    }

    if (params_cmd->parsed()) {
        std::cout << emit_params(ParamsBundle::from_alpha(params_alpha, params_degree));
        return kExitOk;
    }

    if (weave_cmd->parsed()) {
        Structure g1 = load(weave_g1);
        Structure g2 = load(weave_g2);
        ParamsBundle params;
        if (*opt_alpha || *opt_degree) {
            if (!*opt_alpha || !*opt_degree)
                throw InputError("weave: --alpha and --degree must be given together");
            if (*opt_radius || *opt_threshold || *opt_gconst)
                throw InputError("weave: give either --alpha/--degree or --radius/--threshold");
            params = ParamsBundle::from_alpha(weave_alpha, weave_degree);
        } else {
            if (!*opt_radius || !*opt_threshold)
                throw InputError("weave: need --alpha/--degree or --radius/--threshold");
            unsigned degree = std::max(structure_degree(g1, false), structure_degree(g2, false));
            params = ParamsBundle::forced(weave_radius, weave_threshold, degree,
                                          *opt_gconst ? std::optional<std::uint64_t>(weave_gconst)
                                                      : std::nullopt);
        }
        WeaveResult result = weave_pair(g1, g2, params);
        write_file(out_succ1, emit_successor(SuccessorFile::from_result(result, 1)));
        write_file(out_succ2, emit_successor(SuccessorFile::from_result(result, 2)));
        VerificationReport report =
            verify_weave(result, g1, g2, result.params.radius, result.params.threshold);
        write_file(weave_report, emit_report(report));
        std::cout << (result.isomorphism_branch ? "isomorphism branch" : "woven") << "; report "
                  << (report.overall() ? "pass" : "FAIL") << "; successors in " << out_succ1
                  << ", " << out_succ2 << "\n";
        const std::size_t guard_hits =
            result.state1.chain_guard_hits + result.state2.chain_guard_hits;
        if (guard_hits > 0)
            std::cerr << "note: the completion's chain guard fired " << guard_hits << " times\n";
        return report.overall() ? kExitOk : kExitCheckFailed;
    }

    if (verify_cmd->parsed()) {
        Structure g1 = load(verify_g1);
        Structure g2 = load(verify_g2);
        SuccessorFile f1 = load_successor(verify_s1);
        SuccessorFile f2 = load_successor(verify_s2);
        if (f1.n != g1.size() || f2.n != g2.size())
            throw InputError("verify: successor file size does not match its structure");
        WeaveResult result = result_from_files(f1, f2, verify_radius);
        std::optional<unsigned> depth;
        if (*opt_ef) depth = verify_ef_depth;
        VerificationReport report =
            verify_weave(result, g1, g2, verify_radius, verify_threshold, depth);
        write_file(verify_report, emit_report(report));
        for (const auto& check : report.checks)
            if (!check.pass)
                std::cout << "failed: " << check.name
                          << (check.witness.empty() ? "" : " (" + check.witness + ")") << "\n";
        std::cout << "report " << (report.overall() ? "pass" : "FAIL") << " -> " << verify_report
                  << "\n";
        return report.overall() ? kExitOk : kExitCheckFailed;
    }

    if (ef_cmd->parsed()) {
        Structure a = load(ef_a);
        Structure b = load(ef_b);
        bool equivalent = ef_equivalent(a, b, ef_depth);
        std::cout << (equivalent ? "equivalent" : "not-equivalent") << " at depth " << ef_depth
                  << "\n";
        return equivalent ? kExitOk : kExitCheckFailed;
    }

    if (mc_cmd->parsed()) {
        Structure s = load(mc_structure);
        FormulaPtr phi = load_formula(mc_formula);
        bool truth = model_check(s, phi);
        std::cout << (truth ? "true" : "false") << "\n";
        return truth ? kExitOk : kExitCheckFailed;
    }

    if (rewrite_cmd->parsed()) {
        FormulaPtr f = load_formula(rewrite_formula);
        FormulaPtr rewritten =
            rewrite_direction == "succ2lin" ? succ_to_linsucc(f) : linsucc_to_succ(f);
        std::cout << emit_formula(rewritten) << "\n";
        return kExitOk;
    }

    return kExitInputError;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const succweave::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const succweave::SimilarityError& e) {
        std::cerr << "not similar: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const succweave::InfeasibilityError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const succweave::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
