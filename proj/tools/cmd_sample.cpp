#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "cli_common.hpp"
#include "psamp/mapping.hpp"
#include "psamp/surjection.hpp"

namespace {

struct SampleArgs {
    std::string kind;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t count = 1;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    bool stats = false;
};

void run_sample(const SampleArgs& args) {
    const std::uint64_t base_seed = resolve_seed(args.seed);
    for (std::uint64_t i = 0; i < args.count; ++i) {
        // Sample i uses seed base_seed + i, so a batch of count samples is
        // reproducible and each sample can be regenerated on its own.
        psamp::RandomSource rng(base_seed + i);
        psamp::SamplerStats stats;
        const psamp::Profile profile =
            args.kind == "mapping"
                ? psamp::mapping_profile(rng, args.n, args.k, {}, &stats)
                : psamp::surjection_profile(rng, args.n, args.k, {}, &stats);
        if (args.format == "json") {
            std::cout << psamp::profile_to_json(profile) << '\n';
        } else {
            if (i > 0) std::cout << '\n';
            std::cout << psamp::profile_to_csv(profile);
        }
        if (args.stats) {
            std::cerr << "sample=" << i << " seed=" << (base_seed + i)
                      << " pairs=" << profile.pair_count()
                      << " rounds=" << stats.rounds
                      << " depth=" << stats.recursion_depth
                      << " binomial_draws=" << stats.binomial_draws
                      << " poisson_draws=" << stats.poisson_draws
                      << " bernoulli_draws=" << stats.bernoulli_draws
                      << " max_window=" << stats.max_window << '\n';
        }
    }
}

}  // namespace

void register_sample(CLI::App& app) {
    auto args = std::make_shared<SampleArgs>();
    CLI::App* cmd = app.add_subcommand(
        "sample", "Sample uniform random mapping or surjection profiles");
    cmd->add_option("--kind", args->kind, "ensemble to sample from")
        ->required()
        ->check(CLI::IsMember({"mapping", "surjection"}));
    cmd->add_option("--n", args->n, "domain size")->required();
    cmd->add_option("--k", args->k, "codomain size")->required();
    cmd->add_option("--count", args->count, "number of independent samples");
    cmd->add_option("--seed", args->seed,
                    "RNG seed (default: PROFILE_SAMPLER_SEED or entropy)");
    cmd->add_option("--format", args->format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--stats", args->stats,
                  "print per-sample sampler statistics to stderr");
    cmd->callback([args] { run_sample(*args); });
}
