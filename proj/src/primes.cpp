#include "wgb/primes.hpp"

#include <algorithm>
#include <cmath>

#include "wgb/errors.hpp"

namespace wgb {

PrimeTable sieve(uint64_t limit) {
    if (limit < 2) throw UsageError("sieve limit must be at least 2");

    PrimeTable out;
    out.limit = limit;

    // base primes up to sqrt(limit) by a plain sieve
    uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    while (root * root > limit) --root;
    while ((root + 1) * (root + 1) <= limit) ++root;
    std::vector<bool> base(root + 1, true);
    std::vector<uint64_t> base_primes;
    for (uint64_t i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (uint64_t j = i * i; j <= root; j += i) base[j] = false;
    }
    for (uint64_t p : base_primes)
        if (p <= limit) out.primes.push_back(p);

    const uint64_t kSegment = 1 << 18;
    std::vector<bool> seg;
    for (uint64_t lo = root + 1; lo <= limit; lo += kSegment) {
        uint64_t hi = std::min(lo + kSegment - 1, limit);
        seg.assign(hi - lo + 1, true);
        for (uint64_t p : base_primes) {
            if (p * p > hi) break;
            uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (uint64_t j = start; j <= hi; j += p) seg[j - lo] = false;
        }
        for (uint64_t i = lo; i <= hi; ++i)
            if (seg[i - lo]) out.primes.push_back(i);
    }
    return out;
}

uint64_t primes_in_range(const PrimeTable& table, uint64_t lo, uint64_t hi) {
    if (hi > table.limit) throw UsageError("range exceeds sieve limit");
    auto b = std::upper_bound(table.primes.begin(), table.primes.end(), lo);
    auto e = std::upper_bound(table.primes.begin(), table.primes.end(), hi);
    return static_cast<uint64_t>(e - b);
}

}  // namespace wgb
