#pragma once

#include <cstdint>
#include <vector>

namespace wgb {

struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;  // ascending, complete up to limit
};

// Segmented sieve of Eratosthenes. Rejects limit < 2.
PrimeTable sieve(uint64_t limit);

// Number of primes in (lo, hi] using an existing table (hi <= table.limit).
uint64_t primes_in_range(const PrimeTable& table, uint64_t lo, uint64_t hi);

}  // namespace wgb
