#include "wgb/local.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "wgb/errors.hpp"

namespace wgb {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::complex<double> ipow_c(std::complex<double> z, unsigned long e) {
    std::complex<double> r = 1;
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

}  // namespace

LocalModulus local_modulus(int k) {
    if (k < 1) throw UsageError("local_modulus requires k >= 1");
    LocalModulus out;
    out.k = k;
    out.K = 1;
    for (uint64_t p = 2; p <= static_cast<uint64_t>(k) + 1; ++p) {
        if (!is_prime_u64(p)) continue;
        if (k % (p - 1) != 0) continue;
        int theta = 0;
        for (int kk = k; kk % static_cast<int>(p) == 0; kk /= static_cast<int>(p))
            ++theta;
        int gamma = (p == 2 && theta > 0) ? theta + 2 : theta + 1;
        out.factors.emplace_back(p, gamma);
        out.K *= int_pow(Integer(static_cast<unsigned long>(p)),
                         static_cast<unsigned long>(gamma));
    }
    return out;
}

bool admissible(int k, long s, const Integer& n) {
    if (s < 1) throw UsageError("admissible requires s >= 1");
    Integer K = local_modulus(k).K;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), Integer(n - s).get_mpz_t(), K.get_mpz_t());
    return r == 0;
}

std::complex<double> complete_sum(uint64_t q, long long a, int k) {
    if (q < 1) throw UsageError("complete_sum requires q >= 1");
    if (k < 1) throw UsageError("complete_sum requires k >= 1");
    auto qi = static_cast<long long>(q);
    uint64_t ar = static_cast<uint64_t>(((a % qi) + qi) % qi);
    if (std::gcd(ar, q) != 1)
        throw UsageError("complete_sum requires gcd(a, q) = 1");
    std::complex<double> sum = 0;
    for (uint64_t r = 1; r <= q; ++r) {
        if (std::gcd(r, q) != 1) continue;
        uint64_t j = mulmod_u64(ar, powmod_u64(r, static_cast<uint64_t>(k), q), q);
        double ang = kTwoPi * static_cast<double>(j) / static_cast<double>(q);
        sum += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return sum;
}

namespace {

// Per prime power q = p^e: the k-th power map sends the unit group onto a
// subgroup H with every value hit m = phi/|H| times, and S(q, a) depends on a
// only through its coset a H. We store one weight (S/phi)^s per coset plus
// the coset index of each unit, so evaluating A(q, n) for a new n costs one
// table walk instead of a fresh character sum.
struct PrimePowerData {
    uint32_t q = 0, p = 0;
    std::vector<uint32_t> coset_of;               // per unit, in ascending order
    std::vector<std::complex<double>> weight;     // per coset
};

std::vector<PrimePowerData> build_prime_power_tables(int k, int s, uint64_t q_max) {
    std::vector<PrimePowerData> tables;
    std::vector<char> composite(q_max + 1, 0);
    std::vector<std::complex<double>> root;
    std::vector<uint32_t> coset_res, h_list;
    std::vector<char> in_h;

    for (uint64_t p = 2; p <= q_max; ++p) {
        if (composite[p]) continue;
        for (uint64_t m = p * p; m <= q_max; m += p) composite[m] = 1;

        for (uint64_t q = p; q <= q_max; q *= p) {
            PrimePowerData data;
            data.q = static_cast<uint32_t>(q);
            data.p = static_cast<uint32_t>(p);
            uint64_t phi = q - q / p;
            data.coset_of.reserve(phi);

            root.assign(q, {});
            for (uint64_t j = 0; j < q; ++j) {
                double ang = kTwoPi * static_cast<double>(j) / static_cast<double>(q);
                root[j] = {std::cos(ang), std::sin(ang)};
            }

            in_h.assign(q, 0);
            h_list.clear();
            for (uint64_t r = 1; r < q; ++r) {
                if (r % p == 0) continue;
                uint64_t y = powmod_u64(r, static_cast<uint64_t>(k), q);
                if (!in_h[y]) {
                    in_h[y] = 1;
                    h_list.push_back(static_cast<uint32_t>(y));
                }
            }

            coset_res.assign(q, UINT32_MAX);
            for (uint64_t r = 1; r < q; ++r) {
                if (r % p == 0) continue;
                if (coset_res[r] == UINT32_MAX) {
                    auto cid = static_cast<uint32_t>(data.weight.size());
                    std::complex<double> t = 0;
                    for (uint32_t y : h_list) {
                        uint64_t z = mulmod_u64(r, y, q);
                        coset_res[z] = cid;
                        t += root[z];
                    }
                    data.weight.push_back(
                        ipow_c(t / static_cast<double>(h_list.size()),
                               static_cast<unsigned long>(s)));
                }
                data.coset_of.push_back(coset_res[r]);
            }
            tables.push_back(std::move(data));
            if (q > q_max / p) break;  // avoid overflow on q *= p
        }
    }
    return tables;
}

std::vector<uint32_t> smallest_factor_sieve(uint64_t limit) {
    std::vector<uint32_t> spf(limit + 1, 0);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (spf[i]) continue;
        for (uint64_t j = i; j <= limit; j += i)
            if (!spf[j]) spf[j] = static_cast<uint32_t>(i);
    }
    return spf;
}

}  // namespace

std::vector<SingularSeriesValue> singular_series_batch(int k, int s,
                                                       const std::vector<Integer>& ns,
                                                       uint64_t q_max) {
    if (k < 1) throw UsageError("singular_series requires k >= 1");
    if (s < 1) throw UsageError("singular_series requires s >= 1");
    if (q_max < 1) throw UsageError("singular_series requires q_max >= 1");

    double tail;
    if (s >= 3) {
        double qd = static_cast<double>(q_max);
        tail = std::pow(qd, 2.0 - s) / (s - 2.0) + std::pow(qd, 1.0 - s);
    } else {
        tail = std::numeric_limits<double>::infinity();
    }

    std::vector<SingularSeriesValue> out;
    out.reserve(ns.size());
    if (q_max == 1) {
        for (size_t i = 0; i < ns.size(); ++i)
            out.push_back({1.0, q_max, tail, 0.0});
        return out;
    }

    auto tables = build_prime_power_tables(k, s, q_max);
    auto spf = smallest_factor_sieve(q_max);
    std::vector<std::complex<double>> app(q_max + 1), acc(q_max + 1);

    for (const auto& n : ns) {
        // A(p^e, n) for every prime power, walking e(-a n / q) over the units
        // by incremental rotation (consecutive units differ by 1 or 2).
        for (const auto& data : tables) {
            uint64_t q = data.q, p = data.p;
            uint64_t nq = mpz_fdiv_ui(n.get_mpz_t(), q);
            double ang = -kTwoPi * static_cast<double>(nq) / static_cast<double>(q);
            std::complex<double> w1(std::cos(ang), std::sin(ang));
            std::complex<double> w2 = w1 * w1, cur = w1;
            std::complex<double> total = 0;
            size_t i = 0;
            uint64_t prev = 1;
            for (uint64_t r = 1; r < q; ++r) {
                if (r % p == 0) continue;
                if (r != prev) {
                    cur *= (r - prev == 1) ? w1 : w2;
                    prev = r;
                }
                if ((r & 0xFFF) == 0) cur /= std::abs(cur);
                total += data.weight[data.coset_of[i++]] * cur;
            }
            app[q] = total;
        }

        // Multiplicativity assembles composite q from their prime-power parts.
        std::complex<double> sum = 1;  // q = 1 term
        double max_imag = 0;
        acc[1] = 1;
        for (uint64_t q = 2; q <= q_max; ++q) {
            uint64_t p = spf[q], part = 1, rest = q;
            while (rest % p == 0) {
                rest /= p;
                part *= p;
            }
            acc[q] = (rest == 1) ? app[part] : app[part] * acc[rest];
            sum += acc[q];
            max_imag = std::max(max_imag, std::abs(sum.imag()));
        }
        if (max_imag >= 1e-8)
            throw PrecisionError("singular series accumulated a nonreal component");
        out.push_back({sum.real(), q_max, tail, max_imag});
    }
    return out;
}

SingularSeriesValue singular_series(int k, int s, const Integer& n, uint64_t q_max) {
    return singular_series_batch(k, s, {n}, q_max).front();
}

namespace {

struct QuadBudget {
    long evals = 0;
    long cap = 4000000;
};

template <class F>
std::complex<double> quad_eval(F& f, double x, QuadBudget& budget) {
    if (++budget.evals > budget.cap)
        throw PrecisionError("quadrature budget exhausted before tolerance was met");
    return f(x);
}

template <class F>
std::complex<double> quad_refine(F& f, double a, double b, std::complex<double> fa,
                                 std::complex<double> fm, std::complex<double> fb,
                                 std::complex<double> whole, double tol, int depth,
                                 QuadBudget& budget) {
    double m = 0.5 * (a + b);
    std::complex<double> flm = quad_eval(f, 0.5 * (a + m), budget);
    std::complex<double> frm = quad_eval(f, 0.5 * (m + b), budget);
    std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    std::complex<double> delta = left + right - whole;
    if (depth >= 60 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return quad_refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, budget) +
           quad_refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, budget);
}

template <class F>
std::complex<double> integrate(F f, double a, double b, double tol, QuadBudget& budget) {
    std::complex<double> fa = quad_eval(f, a, budget);
    std::complex<double> fb = quad_eval(f, b, budget);
    std::complex<double> fm = quad_eval(f, 0.5 * (a + b), budget);
    std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return quad_refine(f, a, b, fa, fm, fb, whole, tol, 0, budget);
}

}  // namespace

std::complex<double> v_integral(int k, double beta, double Z, double quad_tol) {
    if (k < 1) throw UsageError("v_integral requires k >= 1");
    if (!(Z > 2) || !std::isfinite(Z))
        throw UsageError("v_integral requires Z > 2");
    if (!(quad_tol > 0)) throw UsageError("quadrature tolerance must be positive");
    QuadBudget budget;
    auto f = [beta, k](double g) {
        double gk = 1;
        for (int i = 0; i < k; ++i) gk *= g;
        double ang = kTwoPi * beta * gk;
        return std::complex<double>(std::cos(ang), std::sin(ang)) / std::log(g);
    };
    return integrate(f, Z, 2 * Z, quad_tol, budget);
}

SingularIntegralValue singular_integral(int k, const IntegralProfile& profile,
                                        long n, double beta_cutoff, double quad_tol,
                                        double N_override) {
    if (k < 1) throw UsageError("singular_integral requires k >= 1");
    if (n < 1) throw UsageError("singular_integral requires n >= 1");
    if (profile.h < 0) throw UsageError("profile h must be nonnegative");
    if (!(quad_tol > 0)) throw UsageError("quadrature tolerance must be positive");

    double N = N_override > 0
                   ? N_override
                   : 0.5 * std::pow(static_cast<double>(n), 1.0 / k);

    std::map<double, unsigned long> mult;
    if (profile.h > 0) mult[N] += static_cast<unsigned long>(profile.h);
    for (const auto& lam : profile.lambdas) mult[std::pow(N, lam.get_d())] += 2;
    for (const auto& [Z, m] : mult)
        if (!(Z > 2))
            throw UsageError("every factor range must satisfy Z > 2");

    double cutoff = beta_cutoff > 0 ? beta_cutoff : 10.0 * std::pow(N, -k);
    double inner_tol = 0.01 * quad_tol;

    QuadBudget budget;
    auto integrand = [&](double beta) {
        std::complex<double> g = 1;
        for (const auto& [Z, m] : mult)
            g *= ipow_c(v_integral(k, beta, Z, inner_tol), m);
        double ang = -kTwoPi * beta * static_cast<double>(n);
        return g * std::complex<double>(std::cos(ang), std::sin(ang));
    };
    std::complex<double> I = integrate(integrand, -cutoff, cutoff, quad_tol, budget);

    // Tail model: past the cutoff each factor obeys the first-derivative
    // bound |V(beta; Z)| <= 1 / (pi |beta| k Z^(k-1) log Z) (an equality-grade
    // bound at k = 1, a model otherwise), so the omitted mass is at most
    // 2 D c^(1-count) / (count - 1) with D the product of the constants.
    unsigned long count = 0;
    double decay = 1;
    for (const auto& [Z, m] : mult) {
        count += m;
        double c1 = 0.5 * kTwoPi * k * std::pow(Z, k - 1) * std::log(Z);
        decay *= std::pow(c1, -static_cast<double>(m));
    }
    double trunc = count >= 2
                       ? 2.0 * decay * std::pow(cutoff, 1.0 - static_cast<double>(count)) /
                             static_cast<double>(count - 1)
                       : std::numeric_limits<double>::infinity();

    double imag = std::abs(I.imag());
    if (imag > 10.0 * quad_tol + 1e-10 * (1.0 + std::abs(I.real())))
        throw PrecisionError("truncated integral is not real to tolerance");
    return {I.real(), cutoff, trunc, imag};
}

}  // namespace wgb
