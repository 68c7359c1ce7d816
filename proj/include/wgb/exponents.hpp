#pragma once

#include <vector>

#include "wgb/rational.hpp"

namespace wgb {

// Mean-value saving table: decimal entries for 7 <= k <= 20 read literally as
// rationals (e.g. 58.093 -> 58093/1000), the quadratic fallback 2k^2 - 6k + 4
// otherwise. Rejects k < 3.
Rational big_sigma(int k);

// sigma_k defined by 1/sigma_k = min(2^(k-1), big_sigma(k)). Rejects k < 3.
Rational sigma(int k);

// Least admissible t for a given k.
inline int min_t(int k) { return (k + 3) / 2; }

// Diminishing-range exponent sequence lambda_1..lambda_(t+u) and its sum.
struct ExponentSystem {
    int k = 0, t = 0, u = 0;
    std::vector<Rational> lambdas;
    Rational Lambda;
    // Sliding-window diagnostic: true when every ratio lambda_(i+j)/lambda_i
    // with window start i <= u+1 and 0 < j < min_t(k) stays above 1/2.
    bool window_ok = false;
};

// Builds the sequence:
//   lambda_i       = phi^(i-1)                         for 1 <= i <= u+1,
//   lambda_(u+2)   = (k^2 - T) / D * lambda_(u+1),
//   lambda_(u+j)   = (k^2-k-1) / D * theta^(j-3) * lambda_(u+1)  for 3 <= j <= t,
// where theta = 1 - 1/k, phi = theta + sigma(k-1)/k, T = theta^(t-3) and
// D = k^2 + k - k*T. Everything is exact.
// Preconditions: k >= 4, t >= min_t(k), u >= 1. With strict_window set, a
// configuration failing the window diagnostic is rejected outright.
ExponentSystem lambda_seq(int k, int t, int u, bool strict_window = false);

// Closed form for the same total:
//   Lambda = k/(1-s) + [((k^3-k-(k^3-2k^2+2)T)(1-s) - (k-1+s)D) / (D(1-s))] * phi^u
// with s = sigma(k-1). Exactly equal to lambda_seq(...).Lambda.
Rational lambda_total_closed(int k, int t, int u);

}  // namespace wgb
