#pragma once

#include <cstdint>
#include <vector>

#include "wgb/primes.hpp"

namespace wgb {

// Per-slot half-open boxes (lower, upper]: slot i admits primes p with
// lower < p <= upper.
struct RangeProfile {
    std::vector<std::pair<double, double>> boxes;
};

inline constexpr int64_t kDefaultCountBudget = 1'000'000'000;

// Ordered s-tuples of primes with p_1^k + ... + p_s^k = n. Counting is
// ordered to match the circle-method integrand. Throws BudgetError when the
// enumeration estimate exceeds `budget` elementary steps.
int64_t count_reps(int k, int s, int64_t n, int64_t budget = kDefaultCountBudget);

// Same, with each slot confined to its box.
int64_t count_reps_ranged(int k, int64_t n, const RangeProfile& profile,
                          int64_t budget = kDefaultCountBudget);

// Independent oracle: counts for every n <= n_max at once by s-fold
// convolution of the prime k-th power indicator. `exclude` drops the listed
// primes from the indicator (used by local-obstruction diagnostics).
std::vector<int64_t> count_oracle_convolution(int k, int s, int64_t n_max,
                                              const std::vector<uint64_t>& exclude = {},
                                              int64_t budget = kDefaultCountBudget);

}  // namespace wgb
