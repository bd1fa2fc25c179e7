#pragma once

#include <stdexcept>
#include <string>

namespace ogc {

/// Malformed input: bad files, out-of-alphabet symbols, wrong value types,
/// non-subset domain restrictions, unknown constraint kinds.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation applied in the wrong session phase (e.g. adding a variable
/// after the constraint was closed).
class LifecycleError : public std::runtime_error {
public:
    explicit LifecycleError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured budget was exhausted (search nodes, subset-construction cap).
/// Carries the best bound found so far when one exists.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
    ResourceError(const std::string& what, std::string bound)
        : std::runtime_error(what), best_bound(std::move(bound)) {}

    std::string best_bound;
};

} // namespace ogc
