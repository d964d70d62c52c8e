#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Caller passed arguments outside an operation's contract (CLI exit code 2).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematical domain violation, e.g. a kernel evaluated at t <= 0.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A computation ran but produced an unusable result (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zeno
