#pragma once

#include <stdexcept>
#include <string>

namespace wgb {

// Error taxonomy shared by the library and the CLI. Each class carries the
// process exit code the CLI maps it to.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 1; }
    virtual ~Error() = default;
};

// Bad arguments or violated preconditions.
struct UsageError : Error {
    using Error::Error;
    int exit_code() const override { return 2; }
};

// A parameter search exhausted its box without a feasible configuration.
struct InfeasibleError : Error {
    long configs_scanned;
    InfeasibleError(const std::string& msg, long scanned)
        : Error(msg), configs_scanned(scanned) {}
    int exit_code() const override { return 3; }
};

// An interval refinement hit the precision ceiling while still ambiguous.
struct PrecisionError : Error {
    using Error::Error;
    int exit_code() const override { return 4; }
};

// An enumeration or quadrature would exceed its operation budget.
struct BudgetError : Error {
    double estimate;
    BudgetError(const std::string& msg, double est) : Error(msg), estimate(est) {}
    int exit_code() const override { return 5; }
};

}  // namespace wgb
