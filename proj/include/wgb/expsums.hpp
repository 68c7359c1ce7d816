#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "wgb/rational.hpp"

namespace wgb {

// Phases alpha * m are reduced mod 1 in exact arithmetic before any floating
// point evaluation, so x^k far beyond double range still produces correct
// angles. alpha is carried as an exact rational (decimal inputs and doubles
// convert exactly).
struct WeylSumSpec {
    int k = 2;
    double X = 1;
    long H = 1;  // difference sums only, 1 <= H <= X
    Rational alpha;
};

// sum over integers X < x <= 2X of e(alpha x^k)
std::complex<double> weyl_f(const WeylSumSpec& spec);

// sum over primes X < p <= 2X of e(alpha p^k)
std::complex<double> prime_g(const WeylSumSpec& spec);

// sum over 1 <= h <= H, X < x <= 2X of e(alpha ((x+h)^k - x^k))
std::complex<double> diff_F(const WeylSumSpec& spec);

// Multiplicative coefficient with prime-power values
//   w_k(p^(uk+1)) = k p^(-u-1/2),  w_k(p^(uk+v)) = p^(-u-1) for 2 <= v <= k.
// Requires k >= 3.
double w_factor(int k, uint64_t q);
// Exact square of the same, for inequality checks with no rounding.
Rational w_factor_squared(int k, uint64_t q);

struct ArcLabel {
    enum class Kind { Major, Minor };
    Kind kind = Kind::Minor;
    uint64_t q = 0, a = 0;   // Major only
    double distance = 0.0;   // |q alpha - a|, Major only
};

// Labels alpha Major when some 0 <= a <= q <= Y with gcd(a, q) = 1 has
// |q alpha - a| <= 1/X, reporting the smallest such q (then smallest a).
// Candidate q come from the continued-fraction convergents of alpha: the
// least q with ||q alpha|| <= 1/X is a best approximation of the second kind
// and hence a convergent denominator. Requires 0 <= alpha < 1, 1 <= Y <= X.
ArcLabel dissect(const Rational& alpha, const Rational& Y, const Rational& X);

// Model size of f_k on a major arc: w_k(q) X / (1 + X^k |alpha - a/q|).
// Requires gcd(a, q) = 1.
double major_model(int k, uint64_t q, uint64_t a, const Rational& alpha, double X);

struct ProbeRow {
    double alpha = 0, abs_sum = 0;
    ArcLabel label;
    double model = 0;  // major points only
};

struct MinorProbeReport {
    int k = 0;
    double X = 0;
    long grid_size = 0, minor_count = 0;
    double empirical_sup = 0;   // max |f_k| over minor grid points
    double predicted = 0;       // X^(1 - sigma_k)
    double ratio = 0;           // empirical_sup / predicted
    double trivial_bound = 0;   // floor(2X) - floor(X)
    std::vector<ProbeRow> rows;
};

// Evaluates |f_k| on the grid j/grid_size under the dissection
// Y = X^(k sigma_k), 1/X' = X^(k sigma_k - k), recording the minor-arc sup.
// Rows are retained only when keep_rows is set.
MinorProbeReport minor_sup_probe(int k, double X, long grid_size, bool keep_rows = false);

// CSV rendering (columns: alpha, abs_sum, kind, q, a, model).
std::string probe_csv(const std::vector<ProbeRow>& rows);

}  // namespace wgb
