#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "wgb/rational.hpp"

namespace wgb {

// K(k) = prod p^gamma over primes p with (p-1) | k, where theta is the
// exponent of p in k and gamma = theta + 2 when p = 2 and theta > 0,
// gamma = theta + 1 otherwise.
struct LocalModulus {
    int k = 0;
    Integer K;
    std::vector<std::pair<uint64_t, int>> factors;  // (p, gamma)
};

LocalModulus local_modulus(int k);  // k >= 1

// n lies in the residue class s mod K(k).
bool admissible(int k, long s, const Integer& n);

// S(q, a) = sum over reduced residues r mod q of e(a r^k / q).
// Requires gcd(a, q) = 1 (a is reduced mod q first).
std::complex<double> complete_sum(uint64_t q, long long a, int k);

struct SingularSeriesValue {
    double value = 0;          // real part of the partial sum over q <= q_max
    uint64_t q_max = 0;
    double tail_estimate = 0;  // crude majorization of the omitted q > q_max,
                               // reported, not certified; infinite for s < 3
    double max_imag = 0;       // largest |imag| seen while accumulating
};

// Partial singular series sum_{q <= q_max} phi(q)^{-s} sum_{(a,q)=1}
// S(q,a)^s e(-an/q). The per-prime-power terms are computed through the
// coset structure of the k-th power map on the unit group (S(q,a) is
// constant on cosets of the image), which keeps the work near
// sum_{p^e <= q_max} phi(p^e) instead of its square; composite q are then
// assembled by multiplicativity. Requires s >= 1, q_max >= 1.
SingularSeriesValue singular_series(int k, int s, const Integer& n, uint64_t q_max);

// Same, sharing the prime-power tables across many n.
std::vector<SingularSeriesValue> singular_series_batch(int k, int s,
                                                       const std::vector<Integer>& ns,
                                                       uint64_t q_max);

// V(beta; Z) = integral over Z < gamma <= 2Z of e(beta gamma^k) / log gamma,
// by adaptive Simpson quadrature to absolute tolerance quad_tol.
// Requires Z > 2. Throws when the subdivision budget runs out first.
std::complex<double> v_integral(int k, double beta, double Z, double quad_tol);

// Factor shape for the archimedean integrand: V(beta; N)^h times the square
// of prod_j V(beta; N^lambda_j).
struct IntegralProfile {
    long h = 0;
    std::vector<Rational> lambdas;
};

struct SingularIntegralValue {
    double value = 0;               // real part of the truncated integral
    double beta_cutoff = 0;         // cutoff actually used
    double truncation_estimate = 0; // crude model of the omitted |beta| mass,
                                    // reported, not certified
    double max_imag = 0;
};

// Truncated integral over |beta| <= beta_cutoff of
//   V(beta; N)^h (prod_j V(beta; N^lambda_j))^2 e(-beta n),
// N = n^(1/k) / 2 unless N_override > 0 supplies the range directly.
// beta_cutoff <= 0 selects the default 10 N^(-k). Every factor range must
// satisfy Z > 2.
SingularIntegralValue singular_integral(int k, const IntegralProfile& profile,
                                        long n, double beta_cutoff = 0,
                                        double quad_tol = 1e-9,
                                        double N_override = 0);

}  // namespace wgb
