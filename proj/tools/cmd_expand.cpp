#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cli_common.hpp"
#include "json.hpp"
#include "psamp/profile.hpp"
#include "psamp/reconstruct.hpp"

namespace {

struct ExpandArgs {
    std::string profile_path = "-";
    std::string method = "tree";
    std::string emit = "image";
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin),
                std::istreambuf_iterator<char>()};
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open profile file: " + path);
    return {std::istreambuf_iterator<char>(file),
            std::istreambuf_iterator<char>()};
}

void run_expand(const ExpandArgs& args) {
    const psamp::ParsedProfile parsed = psamp::profile_from_json(read_input(args.profile_path));
    psamp::RandomSource rng(resolve_seed(args.seed));
    psamp::ReconstructOptions options;
    options.method = args.method == "shuffle" ? psamp::ExpandMethod::Shuffle
                                              : psamp::ExpandMethod::WeightedTree;

    if (args.emit == "sizes") {
        const psamp::SizeVector sv =
            psamp::size_vector_from_profile(rng, parsed.profile, options);
        if (args.format == "json") {
            nlohmann::json out;
            out["n"] = parsed.n;
            out["k"] = parsed.k;
            out["sizes"] = sv.sizes;
            std::cout << out.dump() << '\n';
        } else {
            std::cout << "class,size\n";
            for (std::size_t i = 0; i < sv.sizes.size(); ++i) {
                std::cout << (i + 1) << ',' << sv.sizes[i] << '\n';
            }
        }
        return;
    }

    const psamp::Surjection map = psamp::surjection_from_profile(rng, parsed.profile, options);
    if (args.format == "json") {
        nlohmann::json out;
        out["n"] = map.image.size();
        out["k"] = map.k;
        out["image"] = map.image;
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "element,image\n";
        for (std::size_t i = 0; i < map.image.size(); ++i) {
            std::cout << (i + 1) << ',' << map.image[i] << '\n';
        }
    }
}

}  // namespace

void register_expand(CLI::App& app) {
    auto args = std::make_shared<ExpandArgs>();
    CLI::App* cmd = app.add_subcommand(
        "expand", "Reconstruct a concrete function from a profile");
    cmd->add_option("--profile", args->profile_path,
                    "profile JSON file, or - for stdin");
    cmd->add_option("--method", args->method, "class assignment method")
        ->check(CLI::IsMember({"shuffle", "tree"}));
    cmd->add_option("--emit", args->emit, "what to print")
        ->check(CLI::IsMember({"image", "sizes"}));
    cmd->add_option("--format", args->format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", args->seed,
                    "RNG seed (default: PROFILE_SAMPLER_SEED or entropy)");
    cmd->callback([args] { run_expand(*args); });
}
