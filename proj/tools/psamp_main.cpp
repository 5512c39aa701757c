#include <cstdlib>
#include <exception>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>

#include "cli_common.hpp"
#include "psamp/errors.hpp"

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& cli_seed) {
    if (cli_seed) return *cli_seed;
    if (const char* env = std::getenv("PROFILE_SAMPLER_SEED")) {
        const std::string text(env);
        try {
            std::size_t pos = 0;
            if (text.empty() || text[0] == '-') throw std::invalid_argument("sign");
            const unsigned long long value = std::stoull(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("suffix");
            return value;
        } catch (...) {
            throw std::invalid_argument("PROFILE_SAMPLER_SEED must be an unsigned integer");
        }
    }
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

int main(int argc, char** argv) {
    CLI::App app{"Exact uniform sampling of random mapping and surjection profiles"};
    app.require_subcommand(1);
    register_sample(app);
    register_expand(app);
    register_verify(app);
    register_bench(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const psamp::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 3;
    } catch (const psamp::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
