#pragma once

#include <cstdint>
#include <optional>

#include "CLI11.hpp"

// Seed precedence: --seed flag, then PROFILE_SAMPLER_SEED from the
// environment, then entropy from std::random_device. Throws
// std::invalid_argument if the environment value is not an unsigned integer.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& cli_seed);

void register_sample(CLI::App& app);
void register_expand(CLI::App& app);
void register_verify(CLI::App& app);
void register_bench(CLI::App& app);
