#pragma once

#include <stdexcept>
#include <string>

namespace psamp {

// A request exceeds a configured resource limit (memory cap, size range).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed at runtime (dominating-bound violation,
// round-budget blowout). Indicates a kernel bug, never bad user input.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psamp
