#include "wgb/repcount.hpp"

#include <algorithm>
#include <cmath>

#include "wgb/errors.hpp"

namespace wgb {

namespace {

int64_t ipow_checked(int64_t base, int k, int64_t cap) {
    // base^k, or cap+1 if it overflows past cap
    __int128 r = 1;
    for (int i = 0; i < k; ++i) {
        r *= base;
        if (r > cap) return cap + 1;
    }
    return static_cast<int64_t>(r);
}

int64_t kth_root_floor(int64_t n, int k) {
    if (n < 1) return 0;
    int64_t r = static_cast<int64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 0 && ipow_checked(r, k, n) > n) --r;
    while (ipow_checked(r + 1, k, n) <= n) ++r;
    return r;
}

// safe overcount of pi(x), used to budget before any sieving happens
double pi_upper(double x) {
    if (x < 2) return 0;
    if (x < 17) return 6;
    return 1.3 * x / std::log(x);
}

std::vector<int64_t> prime_kth_powers(int k, int64_t n, const std::vector<uint64_t>& exclude) {
    int64_t root = kth_root_floor(n, k);
    std::vector<int64_t> pk;
    if (root < 2) return pk;
    PrimeTable table = sieve(static_cast<uint64_t>(root));
    pk.reserve(table.primes.size());
    for (uint64_t p : table.primes) {
        if (std::find(exclude.begin(), exclude.end(), p) != exclude.end()) continue;
        pk.push_back(ipow_checked(static_cast<int64_t>(p), k, n));
    }
    return pk;
}

int64_t factorial(int r) {
    int64_t f = 1;
    for (int i = 2; i <= r; ++i) f *= i;
    return f;
}

// Accumulates ordered r-tuple counts by sum into `acc` (size n+1) by walking
// non-decreasing index tuples and crediting each with its permutation count.
void accumulate_tuples(const std::vector<int64_t>& pk, int r, int64_t n,
                       std::vector<int64_t>& acc) {
    const int64_t rfact = factorial(r);
    std::vector<int> idx(r);
    auto rec = [&](auto&& self, int depth, size_t start, int64_t sum) -> void {
        if (depth == r) {
            // permutation count = r! / prod(run length!)
            int64_t perms = rfact;
            int run = 1;
            for (int i = 1; i < r; ++i) {
                if (idx[i] == idx[i - 1])
                    ++run;
                else {
                    perms /= factorial(run);
                    run = 1;
                }
            }
            perms /= factorial(run);
            acc[sum] += perms;
            return;
        }
        for (size_t i = start; i < pk.size(); ++i) {
            int64_t next = sum + pk[i];
            if (next > n) break;
            idx[depth] = static_cast<int>(i);
            self(self, depth + 1, i, next);
        }
    };
    rec(rec, 0, 0, 0);
}

int64_t count_s3(const std::vector<int64_t>& pk, int64_t n) {
    int64_t total = 0;
    const int m = static_cast<int>(pk.size());
    for (int i = 0; i < m && 3 * pk[i] <= n; ++i) {
        int64_t rem = n - pk[i];
        int j = i, l = m - 1;
        while (j <= l) {
            int64_t s2 = pk[j] + pk[l];
            if (s2 == rem) {
                // multiset {i, j, l} with i <= j <= l
                if (i == j && j == l)
                    total += 1;
                else if (i == j || j == l)
                    total += 3;
                else
                    total += 6;
                ++j;
                --l;
            } else if (s2 < rem) {
                ++j;
            } else {
                --l;
            }
        }
    }
    return total;
}

}  // namespace

int64_t count_reps(int k, int s, int64_t n, int64_t budget) {
    if (k < 1 || s < 1 || n < 1) throw UsageError("count_reps requires k, s, n >= 1");
    if (budget < 1) throw UsageError("budget must be positive");

    const double root = static_cast<double>(kth_root_floor(n, k));
    const double pi_est = pi_upper(root);
    double estimate;
    if (s == 1)
        estimate = std::log2(root + 2);
    else if (s == 2)
        estimate = pi_est;
    else if (s == 3)
        estimate = pi_est * pi_est;
    else
        estimate = std::pow(pi_est, (s + 1) / 2) + 16.0 * static_cast<double>(n);
    if (estimate > static_cast<double>(budget))
        throw BudgetError("enumeration estimate exceeds budget", estimate);

    std::vector<int64_t> pk = prime_kth_powers(k, n, {});
    if (pk.empty()) return 0;

    switch (s) {
        case 1:
            return std::binary_search(pk.begin(), pk.end(), n) ? 1 : 0;
        case 2: {
            int64_t total = 0;
            int i = 0, j = static_cast<int>(pk.size()) - 1;
            while (i <= j) {
                int64_t s2 = pk[i] + pk[j];
                if (s2 == n) {
                    total += (i == j) ? 1 : 2;
                    ++i;
                    --j;
                } else if (s2 < n) {
                    ++i;
                } else {
                    --j;
                }
            }
            return total;
        }
        case 3:
            return count_s3(pk, n);
        default: {
            // meet in the middle over dense half-sums
            const int s1 = s / 2, s2 = s - s1;
            std::vector<int64_t> a(n + 1, 0), b(n + 1, 0);
            accumulate_tuples(pk, s1, n, a);
            accumulate_tuples(pk, s2, n, b);
            int64_t total = 0;
            for (int64_t m = 0; m <= n; ++m)
                if (a[m] != 0 && b[n - m] != 0) total += a[m] * b[n - m];
            return total;
        }
    }
}

int64_t count_reps_ranged(int k, int64_t n, const RangeProfile& profile, int64_t budget) {
    if (k < 1 || n < 1) throw UsageError("count_reps_ranged requires k, n >= 1");
    const int s = static_cast<int>(profile.boxes.size());
    if (s < 1) throw UsageError("profile needs at least one box");
    for (auto& [lo, hi] : profile.boxes)
        if (!(lo < hi)) throw UsageError("box lower bound must be below upper bound");

    // per-slot candidate k-th powers
    const int64_t root = kth_root_floor(n, k);
    if (root < 2) return 0;
    PrimeTable table = sieve(static_cast<uint64_t>(root));
    std::vector<std::vector<int64_t>> slot(s);
    for (int i = 0; i < s; ++i) {
        auto [lo, hi] = profile.boxes[i];
        for (uint64_t p : table.primes) {
            double pd = static_cast<double>(p);
            if (pd > lo && pd <= hi) slot[i].push_back(ipow_checked(p, k, n));
        }
        if (slot[i].empty()) return 0;
    }

    // suffix min/max sums for pruning
    std::vector<int64_t> suf_min(s + 1, 0), suf_max(s + 1, 0);
    for (int i = s - 1; i >= 0; --i) {
        suf_min[i] = suf_min[i + 1] + slot[i].front();
        suf_max[i] = suf_max[i + 1] + slot[i].back();
    }

    // depth-first with remaining-sum window pruning
    int64_t nodes = 0, total = 0;
    auto rec = [&](auto&& self, int depth, int64_t rem) -> void {
        if (depth == s) {
            if (rem == 0) ++total;
            return;
        }
        for (int64_t q : slot[depth]) {
            if (++nodes > budget)
                throw BudgetError("ranged enumeration exceeded budget",
                                  static_cast<double>(nodes));
            int64_t next = rem - q;
            if (next < suf_min[depth + 1]) break;  // slot values only grow
            if (next > suf_max[depth + 1]) continue;
            self(self, depth + 1, next);
        }
    };
    rec(rec, 0, n);
    return total;
}

std::vector<int64_t> count_oracle_convolution(int k, int s, int64_t n_max,
                                              const std::vector<uint64_t>& exclude,
                                              int64_t budget) {
    if (k < 1 || s < 1 || n_max < 1) throw UsageError("convolution requires k, s, n_max >= 1");
    std::vector<int64_t> pk = prime_kth_powers(k, n_max, exclude);
    double estimate = static_cast<double>(s) * static_cast<double>(n_max) *
                          (static_cast<double>(pk.size()) + 1.0) +
                      16.0 * static_cast<double>(n_max);
    if (estimate > static_cast<double>(budget))
        throw BudgetError("convolution estimate exceeds budget", estimate);

    std::vector<int64_t> cur(n_max + 1, 0);
    for (int64_t q : pk) cur[q] = 1;
    std::vector<int64_t> out(n_max + 1, 0);
    for (int step = 1; step < s; ++step) {
        std::fill(out.begin(), out.end(), 0);
        for (int64_t m = 0; m <= n_max; ++m) {
            if (cur[m] == 0) continue;
            for (int64_t q : pk) {
                if (m + q > n_max) break;
                out[m + q] += cur[m];
            }
        }
        std::swap(cur, out);
    }
    return cur;
}

}  // namespace wgb
