#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "wgb/errors.hpp"
#include "wgb/local.hpp"
#include "wgb/primes.hpp"

using namespace wgb;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

bool is_prime_slow(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Mobius function by trial factorization.
int mobius(uint64_t n) {
    int sign = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

uint64_t euler_phi(uint64_t n) {
    uint64_t out = 0;
    for (uint64_t r = 1; r <= n; ++r)
        if (std::gcd(r, n) == 1) ++out;
    return out;
}

uint64_t inverse_mod(uint64_t x, uint64_t m) {
    for (uint64_t c = 1; c < m; ++c)
        if (c * x % m == 1) return c;
    return 0;  // m = 1
}

// Fixed-grid composite Simpson for 1/log t, independent of the adaptive code.
double li_difference(double lo, double hi, long intervals) {
    double h = (hi - lo) / (2.0 * intervals);
    double acc = 1.0 / std::log(lo) + 1.0 / std::log(hi);
    for (long i = 1; i < 2 * intervals; ++i)
        acc += (i % 2 ? 4.0 : 2.0) / std::log(lo + i * h);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("local modulus examples") {
    LocalModulus k1 = local_modulus(1);
    CHECK(k1.K == 2);
    CHECK(k1.factors == std::vector<std::pair<uint64_t, int>>{{2, 1}});

    LocalModulus k2 = local_modulus(2);
    CHECK(k2.K == 24);
    CHECK(k2.factors == std::vector<std::pair<uint64_t, int>>{{2, 3}, {3, 1}});

    CHECK(local_modulus(3).K == 2);
    CHECK(local_modulus(4).K == 240);
    CHECK(local_modulus(6).K == 504);    // 8 * 9 * 7
    CHECK(local_modulus(12).K == 65520); // 16 * 9 * 5 * 7 * 13

    CHECK_THROWS_AS(local_modulus(0), UsageError);
}

TEST_CASE("local modulus against a brute oracle") {
    for (int k = 1; k <= 50; ++k) {
        CAPTURE(k);
        Integer want = 1;
        std::vector<std::pair<uint64_t, int>> factors;
        for (uint64_t p = 2; p <= static_cast<uint64_t>(k) + 1; ++p) {
            if (!is_prime_slow(p)) continue;
            if (k % static_cast<int>(p - 1) != 0) continue;
            int theta = 0;
            for (int m = k; m % static_cast<int>(p) == 0; m /= static_cast<int>(p)) ++theta;
            int gamma = (p == 2 && theta > 0) ? theta + 2 : theta + 1;
            factors.emplace_back(p, gamma);
            for (int i = 0; i < gamma; ++i) want *= static_cast<long>(p);
        }
        LocalModulus got = local_modulus(k);
        CHECK(got.K == want);
        CHECK(got.factors == factors);
    }
}

TEST_CASE("admissible residue classes") {
    CHECK(admissible(1, 3, Integer(11)));
    CHECK(!admissible(1, 3, Integer(12)));
    CHECK(admissible(1, 3, Integer(3)));
    CHECK(admissible(2, 5, Integer(5)));
    CHECK(admissible(2, 5, Integer(29)));
    CHECK(!admissible(2, 5, Integer(28)));
    CHECK(admissible(2, 5, Integer(-19)));  // 5 - 24

    // 10^24 = 16 (mod 24), so +13 lands on the class of 5 and +5 does not.
    CHECK(admissible(2, 5, Integer("1000000000000000000000013")));
    CHECK(!admissible(2, 5, Integer("1000000000000000000000005")));

    CHECK_THROWS_AS(admissible(0, 3, Integer(5)), UsageError);
    CHECK_THROWS_AS(admissible(1, 0, Integer(5)), UsageError);
}

TEST_CASE("complete sums by hand") {
    CHECK(complete_sum(1, 0, 2) == std::complex<double>(1, 0));
    CHECK(std::abs(complete_sum(2, 1, 7) - std::complex<double>(-1, 0)) < 1e-12);

    // r in {1, 2} both square to 1 mod 3.
    std::complex<double> s3 = complete_sum(3, 1, 2);
    std::complex<double> want = 2.0 * std::polar(1.0, kTau / 3.0);
    CHECK(std::abs(s3 - want) < 1e-12);

    CHECK_THROWS_AS(complete_sum(6, 2, 3), UsageError);
    CHECK_THROWS_AS(complete_sum(6, 3, 3), UsageError);
    CHECK_THROWS_AS(complete_sum(0, 1, 3), UsageError);
}

TEST_CASE("complete sums never exceed the unit count") {
    for (uint64_t q = 1; q <= 60; ++q) {
        double phi = static_cast<double>(euler_phi(q));
        for (uint64_t a = 0; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            for (int k : {1, 2, 3}) {
                CAPTURE(q);
                CAPTURE(a);
                CAPTURE(k);
                CHECK(std::abs(complete_sum(q, (long long)a, k)) <= phi + 1e-9);
            }
        }
    }
    // Equality at the smallest moduli.
    CHECK(std::abs(complete_sum(1, 0, 4)) == doctest::Approx(1.0));
    CHECK(std::abs(complete_sum(2, 1, 4)) == doctest::Approx(1.0));
}

TEST_CASE("linear complete sums reduce to the Mobius function") {
    for (uint64_t q = 1; q <= 30; ++q) {
        CAPTURE(q);
        std::complex<double> s = complete_sum(q, 1, 1);
        CHECK(std::abs(s - std::complex<double>(mobius(q), 0)) < 1e-10);
    }
}

TEST_CASE("complete sums factor over coprime moduli") {
    for (uint64_t q1 = 2; q1 <= 14; ++q1) {
        for (uint64_t q2 = q1 + 1; q1 * q2 <= 200; ++q2) {
            if (std::gcd(q1, q2) != 1) continue;
            uint64_t q = q1 * q2;
            uint64_t c2 = inverse_mod(q2 % q1, q1);  // c2 q2 = 1 (mod q1)
            uint64_t c1 = inverse_mod(q1 % q2, q2);
            for (uint64_t a : {uint64_t{1}, q - 1}) {
                if (std::gcd(a, q) != 1) continue;
                for (int k : {2, 3}) {
                    std::complex<double> whole = complete_sum(q, (long long)(a), k);
                    std::complex<double> part1 = complete_sum(q1, (long long)(a * c2 % q1), k);
                    std::complex<double> part2 = complete_sum(q2, (long long)(a * c1 % q2), k);
                    CAPTURE(q1);
                    CAPTURE(q2);
                    CAPTURE(a);
                    CAPTURE(k);
                    CHECK(std::abs(whole - part1 * part2) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("singular series partial sums") {
    // Only q = 1 contributes at the trivial cutoff.
    SingularSeriesValue one = singular_series(2, 5, Integer(29), 1);
    CHECK(one.value == 1.0);
    CHECK(one.q_max == 1);
    CHECK(one.tail_estimate > 0);

    // Below three variables the crude tail majorization diverges.
    CHECK(std::isinf(singular_series(1, 2, Integer(5), 100).tail_estimate));

    // Even targets with three prime slots: the partial sums die away.
    SingularSeriesValue even = singular_series(1, 3, Integer(100), 4096);
    CHECK(std::abs(even.value) < 1e-6);
    CHECK(even.max_imag < 1e-8);

    // Doubling the cutoff shrinks the step between partial sums.
    double prev = singular_series(1, 3, Integer(7), 250).value;
    std::vector<double> deltas;
    for (uint64_t q : {500, 1000, 2000, 4000}) {
        double cur = singular_series(1, 3, Integer(7), q).value;
        deltas.push_back(std::abs(cur - prev));
        prev = cur;
    }
    for (size_t i = 1; i < deltas.size(); ++i) CHECK(deltas[i] <= deltas[i - 1] * 1.1);
    CHECK(deltas.back() < 1e-6);

    CHECK_THROWS_AS(singular_series(1, 3, Integer(7), 0), UsageError);
    CHECK_THROWS_AS(singular_series(0, 3, Integer(7), 10), UsageError);
    CHECK_THROWS_AS(singular_series(1, 0, Integer(7), 10), UsageError);
}

TEST_CASE("ternary series matches the Euler product") {
    // For k = 1, s = 3 the series has the classical product
    //   2 prod_{p | n, p > 2} (1 - (p-1)^-2) prod_{p coprime} (1 + (p-1)^-3).
    PrimeTable table = sieve(100000);
    for (long n : {5L, 7L, 9L, 15L, 105L, 9999L}) {
        CAPTURE(n);
        double euler = 2.0;
        for (uint64_t p : table.primes) {
            if (p == 2) continue;
            double pm = static_cast<double>(p - 1);
            if (n % static_cast<long>(p) == 0)
                euler *= 1.0 - 1.0 / (pm * pm);
            else
                euler *= 1.0 + 1.0 / (pm * pm * pm);
        }
        SingularSeriesValue got = singular_series(1, 3, Integer(n), 10000);
        CHECK(std::abs(got.value - euler) <= got.tail_estimate + 1e-6);
        CHECK(got.max_imag < 1e-8);
    }
}

TEST_CASE("five squares series is positive on the admissible class") {
    std::vector<Integer> ns = {Integer(29), Integer(53), Integer(77), Integer(101)};
    auto batch = singular_series_batch(2, 5, ns, 3000);
    REQUIRE(batch.size() == 4);
    for (size_t i = 0; i < ns.size(); ++i) {
        CAPTURE(i);
        CHECK(admissible(2, 5, ns[i]));
        CHECK(batch[i].value > 1.0);
        CHECK(batch[i].value - batch[i].tail_estimate > 1.0);
        CHECK(batch[i].max_imag < 1e-8);

        SingularSeriesValue single = singular_series(2, 5, ns[i], 3000);
        CHECK(single.value == batch[i].value);
        CHECK(single.max_imag == batch[i].max_imag);
    }
}

TEST_CASE("oscillatory interval integral") {
    // beta = 0 is the logarithmic integral over (Z, 2Z].
    std::complex<double> base = v_integral(1, 0.0, 50.0, 1e-9);
    double li = li_difference(50.0, 100.0, 100000);
    CHECK(std::abs(base.imag()) < 1e-12);
    CHECK(std::abs(base.real() - li) < 1e-8);
    // Same value independent of k when the phase vanishes.
    CHECK(std::abs(v_integral(3, 0.0, 50.0, 1e-9) - base) < 1e-8);

    // Triangle bound and conjugate symmetry.
    for (double beta : {1e-4, 3e-3, 0.02, 0.4}) {
        CAPTURE(beta);
        std::complex<double> v = v_integral(2, beta, 50.0, 1e-9);
        CHECK(std::abs(v) <= 50.0 / std::log(50.0) + 1e-9);
        std::complex<double> m = v_integral(2, -beta, 50.0, 1e-9);
        CHECK(std::abs(v - std::conj(m)) < 1e-12);
    }

    CHECK_THROWS_AS(v_integral(1, 0.0, 2.0, 1e-9), UsageError);
    CHECK_THROWS_AS(v_integral(0, 0.0, 50.0, 1e-9), UsageError);
    CHECK_THROWS_AS(v_integral(1, 0.0, 50.0, 0.0), UsageError);
    // Far too oscillatory for the subdivision budget at this tolerance.
    CHECK_THROWS_AS(v_integral(2, 1000.0, 50.0, 1e-16), PrecisionError);
}

TEST_CASE("truncated archimedean integral") {
    // No V factors at all: the window integral of e(-beta n) in closed form.
    IntegralProfile empty;
    SingularIntegralValue flat = singular_integral(1, empty, 10, 0.03, 1e-9, 5.0);
    double want = std::sin(kTau * 0.03 * 10) / (kTau / 2.0 * 10.0);
    CHECK(flat.beta_cutoff == doctest::Approx(0.03));
    CHECK(flat.value == doctest::Approx(want).epsilon(1e-7));
    CHECK(flat.max_imag < 2e-8);

    IntegralProfile cubic{3, {}};
    SingularIntegralValue J = singular_integral(1, cubic, 225, 0, 1e-6, 50.0);
    CHECK(J.beta_cutoff == doctest::Approx(0.2));  // default 10 / N
    CHECK(J.max_imag < 2e-5);
    CHECK(J.truncation_estimate > 0);
    CHECK(J.truncation_estimate < 0.05);

    // Independent density oracle: midpoint rule on the two free variables of
    // the weight 1/(log x log y log(n-x-y)) over (N, 2N]^3 slices.
    const double N = 50.0, n = 225.0;
    const int M = 400;
    const double h = N / M;
    double est = 0;
    for (int i = 0; i < M; ++i) {
        double x = N + (i + 0.5) * h;
        for (int j = 0; j < M; ++j) {
            double y = N + (j + 0.5) * h;
            double z = n - x - y;
            if (z <= N || z > 2 * N) continue;
            est += 1.0 / (std::log(x) * std::log(y) * std::log(z));
        }
    }
    est *= h * h;
    CHECK(std::abs(J.value - est) / est < 0.03);

    // Positive throughout the bulk of attainable sums.
    for (long nn : {180L, 225L, 270L}) {
        CAPTURE(nn);
        SingularIntegralValue bulk = singular_integral(1, cubic, nn, 0, 1e-6, 50.0);
        CHECK(bulk.value > 0);
    }

    // Mixed ranges: one full-length factor squared against a shorter pair.
    IntegralProfile mixed{1, {Rational(3, 4)}};
    SingularIntegralValue mixed_val = singular_integral(2, mixed, 100, 0, 1e-6);
    CHECK(std::isfinite(mixed_val.value));
    CHECK(mixed_val.max_imag < 2e-5);
    CHECK(mixed_val.beta_cutoff == doctest::Approx(10.0 / 25.0));  // N = 5, k = 2

    CHECK_THROWS_AS(singular_integral(1, cubic, 0, 0, 1e-6, 50.0), UsageError);
    CHECK_THROWS_AS(singular_integral(2, cubic, 16, 0, 1e-6), UsageError);  // N = 2
    IntegralProfile negative{-1, {}};
    CHECK_THROWS_AS(singular_integral(1, negative, 10, 0.1, 1e-6, 5.0), UsageError);
}
