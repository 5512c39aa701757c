#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli_common.hpp"
#include "json.hpp"
#include "psamp/errors.hpp"
#include "psamp/mapping.hpp"
#include "psamp/oracle.hpp"
#include "psamp/surjection.hpp"

namespace {

struct VerifyArgs {
    std::string kind = "both";
    std::uint64_t max_n = 8;
    std::uint64_t max_k = 4;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
};

// Smallest per-cell p-value that still counts as a pass. With a few dozen
// cells a correct sampler clears this with high probability, while any
// systematic bias at 1e5 samples lands many orders of magnitude below it.
constexpr double kPassThreshold = 1e-4;

nlohmann::json verify_cell(psamp::RandomSource& rng, psamp::oracle::Ensemble ensemble,
                           std::uint64_t n, std::uint64_t k, std::uint64_t samples) {
    const auto law = psamp::oracle::exact_profile_distribution(n, k, ensemble);
    std::map<std::vector<psamp::SizeCount>, std::size_t> index;
    std::vector<double> probability;
    for (const auto& [pairs, rat] : law) {
        index.emplace(pairs, probability.size());
        probability.push_back(rat.convert_to<double>());
    }

    std::vector<std::uint64_t> observed(probability.size(), 0);
    bool impossible = false;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const psamp::Profile profile =
            ensemble == psamp::oracle::Ensemble::Mapping
                ? psamp::mapping_profile(rng, n, k)
                : psamp::surjection_profile(rng, n, k);
        const auto it = index.find(profile.pairs());
        if (it == index.end()) {
            impossible = true;
            break;
        }
        observed[it->second] += 1;
    }

    double pvalue = 0.0;
    double tv = 1.0;
    if (!impossible) {
        std::vector<double> expected(probability.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            expected[i] = probability[i] * static_cast<double>(samples);
        }
        pvalue = psamp::oracle::chi_square_pvalue(observed, expected);
        tv = psamp::oracle::tv_distance(observed, probability);
    }

    nlohmann::json cell;
    cell["kind"] = ensemble == psamp::oracle::Ensemble::Mapping ? "mapping" : "surjection";
    cell["n"] = n;
    cell["k"] = k;
    cell["profiles"] = probability.size();
    cell["pvalue"] = pvalue;
    cell["tv"] = tv;
    if (impossible) cell["impossible_profile"] = true;
    return cell;
}

void run_verify(const VerifyArgs& args) {
    if (args.samples < 10000) {
        throw std::invalid_argument("verify needs --samples >= 10000 to have any power");
    }
    if (args.max_n > 32 || args.max_k > 16 || args.max_n == 0 || args.max_k == 0) {
        throw std::invalid_argument("verify supports 1 <= max-n <= 32 and 1 <= max-k <= 16");
    }

    psamp::RandomSource rng(args.seed);
    nlohmann::json report;
    report["samples"] = args.samples;
    report["seed"] = args.seed;
    report["cells"] = nlohmann::json::array();
    double min_pvalue = 1.0;

    const bool do_mapping = args.kind != "surjection";
    const bool do_surjection = args.kind != "mapping";
    for (std::uint64_t n = 1; n <= args.max_n; ++n) {
        for (std::uint64_t k = 1; k <= args.max_k; ++k) {
            if (do_mapping) {
                auto cell = verify_cell(rng, psamp::oracle::Ensemble::Mapping, n, k, args.samples);
                min_pvalue = std::min(min_pvalue, cell["pvalue"].get<double>());
                report["cells"].push_back(std::move(cell));
            }
            if (do_surjection && k <= n) {
                auto cell = verify_cell(rng, psamp::oracle::Ensemble::Surjection, n, k, args.samples);
                min_pvalue = std::min(min_pvalue, cell["pvalue"].get<double>());
                report["cells"].push_back(std::move(cell));
            }
        }
    }

    const bool pass = min_pvalue >= kPassThreshold;
    report["min_pvalue"] = min_pvalue;
    report["pass"] = pass;
    std::cout << report.dump(2) << '\n';
    if (!pass) {
        throw psamp::InternalError("verification failed: min p-value below threshold");
    }
}

}  // namespace

void register_verify(CLI::App& app) {
    auto args = std::make_shared<VerifyArgs>();
    CLI::App* cmd = app.add_subcommand(
        "verify", "Compare sampled profile frequencies against the exact law");
    cmd->add_option("--kind", args->kind, "ensembles to check")
        ->check(CLI::IsMember({"mapping", "surjection", "both"}));
    cmd->add_option("--max-n", args->max_n, "largest domain size");
    cmd->add_option("--max-k", args->max_k, "largest codomain size");
    cmd->add_option("--samples", args->samples, "samples per (n, k) cell");
    cmd->add_option("--seed", args->seed, "RNG seed for the whole run");
    cmd->callback([args] { run_verify(*args); });
}
