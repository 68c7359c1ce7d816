#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wgb/exponents.hpp"
#include "wgb/rational.hpp"

namespace wgb {

// Exact feasibility certificate for a configuration (k, t, u).
// With L = Lambda(k, t, u) and sk = sigma(k):
//   v       = floor((k - L) / (2 sk))
//   eta*    = (k - L) - 2 v sk, always in [0, 2 sk)
//   h       = 1, 2 or 3 as eta* falls in [0, sk/2), [sk/2, sk), [sk, 2 sk)
//   s       = 2 (t + u + v) + h
// Feasible demands k - L >= 0, s >= 3k + 1, and for h in {1, 2} either
// v >= 3 or eta* < h sk / 3.
struct BoundCertificate {
    int k = 0, t = 0, u = 0;
    Rational Lambda;
    long v = 0;
    Rational eta_star;
    int h = 0;
    long s = 0;
    Rational h_star;  // 2 eta* / sigma(k)
    bool feasible = false;
    std::vector<std::string> failed_hypotheses;
};

BoundCertificate certificate(int k, int t, int u);

// 2 eta* / sigma(k) rounded toward +infinity at `places` decimals.
// Rejects infeasible certificates.
std::string h_star_rounded(const BoundCertificate& cert, int places);

struct SearchReport {
    int k = 0;
    BoundCertificate best;
    std::vector<std::pair<int, int>> all_optimal;  // every (t,u) tied at best.s
    long configs_scanned = 0;                      // grid cells examined
    long exact_evaluations = 0;                    // cells certified exactly
    int t_max = 0, u_max = 0;
};

// Search cap ceil(4 k ln k), raised to 130 for k <= 20.
int default_cap(int k);

// Scans min_t(k) <= t <= t_max, 1 <= u <= u_max for the feasible certificate
// of least s; ties resolved by least t+u, then least t. Pass -1 for either
// cap to use default_cap(k). A double-precision prefilter with a proven error
// margin ranks the grid; only candidate cells are certified in exact
// arithmetic, so the result equals the exhaustive scan's.
SearchReport optimize(int k, int t_max = -1, int u_max = -1);

// floor((4k - 2) ln k + k + offset) via interval refinement, doubling the
// working precision from start_precision (at least 16) up to 4096 bits until
// the floor is pinned. offset is -7 or -4.
Integer asymptotic_bound(int k, int offset, long start_precision = 128);

struct SweepRow {
    int k = 0;
    long s_opt = 0;
    Integer bound_minus7, bound_minus4;
    bool holds_minus7 = false, holds_minus4 = false;
};

// optimize(k) with default caps for every k in [k_min, k_max], compared
// against both asymptotic bounds. Requires 4 <= k_min <= k_max.
std::vector<SweepRow> theorem1_sweep(int k_min, int k_max,
                                     long start_precision = 128);

}  // namespace wgb
