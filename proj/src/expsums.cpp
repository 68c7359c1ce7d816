#include "wgb/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "wgb/errors.hpp"
#include "wgb/exponents.hpp"
#include "wgb/primes.hpp"

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

// Reduces alpha to num/den with 0 <= num < den once, then maps integers m to
// frac(alpha m) without ever forming alpha m in floating point.
class PhaseReducer {
  public:
    explicit PhaseReducer(const Rational& alpha) {
        den_z_ = alpha.get_den();
        mpz_fdiv_r(num_z_.get_mpz_t(), alpha.get_num().get_mpz_t(), den_z_.get_mpz_t());
        fast_ = den_z_.fits_ulong_p();
        if (fast_) {
            den_u_ = den_z_.get_ui();
            num_u_ = num_z_.get_ui();
        }
    }

    // frac(alpha x^k)
    double pow_phase(uint64_t x, unsigned long k) const {
        if (fast_) {
            if (den_u_ == 1) return 0.0;
            uint64_t r = powmod_u64(x, k, den_u_);
            return static_cast<double>(mulmod_u64(num_u_, r, den_u_)) /
                   static_cast<double>(den_u_);
        }
        Integer t, base(static_cast<unsigned long>(x));
        mpz_powm_ui(t.get_mpz_t(), base.get_mpz_t(), k, den_z_.get_mpz_t());
        return big_phase(t);
    }

    // frac(alpha m) for m >= 0
    double int_phase(const Integer& m) const {
        if (fast_) {
            if (den_u_ == 1) return 0.0;
            uint64_t r = mpz_fdiv_ui(m.get_mpz_t(), den_u_);
            return static_cast<double>(mulmod_u64(num_u_, r, den_u_)) /
                   static_cast<double>(den_u_);
        }
        return big_phase(m);
    }

  private:
    double big_phase(const Integer& residue) const {
        Integer t = residue * num_z_;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), den_z_.get_mpz_t());
        Rational frac(t, den_z_);
        frac.canonicalize();
        return frac.get_d();
    }

    bool fast_ = false;
    uint64_t num_u_ = 0, den_u_ = 1;
    Integer num_z_, den_z_;
};

std::complex<double> unit_phase(double frac) {
    double ang = kTwoPi * frac;
    return {std::cos(ang), std::sin(ang)};
}

void check_spec(const WeylSumSpec& spec) {
    if (spec.k < 1) throw UsageError("exponent k must be at least 1");
    if (!(spec.X >= 1) || !std::isfinite(spec.X))
        throw UsageError("summation endpoint X must be a finite real >= 1");
}

struct PrimePower {
    uint64_t p;
    int e;
};

std::vector<PrimePower> factor_u64(uint64_t q) {
    std::vector<PrimePower> out;
    for (uint64_t p = 2; p * p <= q; p += (p == 2) ? 1 : 2) {
        if (q % p) continue;
        int e = 0;
        while (q % p == 0) { q /= p; ++e; }
        out.push_back({p, e});
    }
    if (q > 1) out.push_back({q, 1});
    return out;
}

}  // namespace

std::complex<double> weyl_f(const WeylSumSpec& spec) {
    check_spec(spec);
    PhaseReducer red(spec.alpha);
    auto lo = static_cast<uint64_t>(std::floor(spec.X));
    auto hi = static_cast<uint64_t>(std::floor(2 * spec.X));
    std::complex<double> sum = 0;
    for (uint64_t x = lo + 1; x <= hi; ++x)
        sum += unit_phase(red.pow_phase(x, static_cast<unsigned long>(spec.k)));
    return sum;
}

std::complex<double> prime_g(const WeylSumSpec& spec) {
    check_spec(spec);
    PhaseReducer red(spec.alpha);
    auto hi = static_cast<uint64_t>(std::floor(2 * spec.X));
    PrimeTable table = sieve(std::max<uint64_t>(hi, 2));
    std::complex<double> sum = 0;
    for (uint64_t p : table.primes) {
        if (p <= spec.X) continue;
        if (p > hi) break;
        sum += unit_phase(red.pow_phase(p, static_cast<unsigned long>(spec.k)));
    }
    return sum;
}

std::complex<double> diff_F(const WeylSumSpec& spec) {
    check_spec(spec);
    if (spec.H < 1 || static_cast<double>(spec.H) > spec.X)
        throw UsageError("difference length H must satisfy 1 <= H <= X");
    PhaseReducer red(spec.alpha);
    auto lo = static_cast<uint64_t>(std::floor(spec.X));
    auto hi = static_cast<uint64_t>(std::floor(2 * spec.X));
    std::complex<double> sum = 0;
    for (long h = 1; h <= spec.H; ++h) {
        for (uint64_t x = lo + 1; x <= hi; ++x) {
            Integer d = int_pow(Integer(static_cast<unsigned long>(x + h)),
                                static_cast<unsigned long>(spec.k)) -
                        int_pow(Integer(static_cast<unsigned long>(x)),
                                static_cast<unsigned long>(spec.k));
            sum += unit_phase(red.int_phase(d));
        }
    }
    return sum;
}

double w_factor(int k, uint64_t q) {
    if (k < 3) throw UsageError("w_factor requires k >= 3");
    if (q < 1) throw UsageError("w_factor requires q >= 1");
    double out = 1;
    for (const auto& [p, e] : factor_u64(q)) {
        int u = (e - 1) / k;
        int v = e - u * k;
        double pd = static_cast<double>(p);
        if (v == 1)
            out *= k * std::pow(pd, -u - 0.5);
        else
            out *= std::pow(pd, -u - 1.0);
    }
    return out;
}

Rational w_factor_squared(int k, uint64_t q) {
    if (k < 3) throw UsageError("w_factor_squared requires k >= 3");
    if (q < 1) throw UsageError("w_factor_squared requires q >= 1");
    Rational out = 1;
    for (const auto& [p, e] : factor_u64(q)) {
        int u = (e - 1) / k;
        int v = e - u * k;
        Integer pz(static_cast<unsigned long>(p));
        if (v == 1) {
            // p may divide k, so reduce before multiplying in.
            Rational f(Integer(k) * k, int_pow(pz, 2ul * u + 1));
            f.canonicalize();
            out *= f;
        } else {
            out *= Rational(1, int_pow(pz, 2ul * u + 2));
        }
    }
    return out;
}

ArcLabel dissect(const Rational& alpha, const Rational& Y, const Rational& X) {
    if (alpha < 0 || alpha >= 1)
        throw UsageError("dissect expects 0 <= alpha < 1");
    if (Y < 1 || X < Y)
        throw UsageError("dissect expects 1 <= Y <= X");
    Rational win = Rational(1) / X;

    // Walk convergent denominators of alpha in increasing order. For each,
    // scan the integer window around q alpha for a coprime numerator. The
    // first hit is the minimal Major witness (see header).
    Integer num = alpha.get_num(), den = alpha.get_den();
    Integer qm2 = 1, qm1 = 0;
    while (den != 0) {
        Integer ai = num / den;  // both nonnegative here
        Integer rem = num - ai * den;
        num = den;
        den = rem;
        Integer qn = ai * qm1 + qm2;
        qm2 = qm1;
        qm1 = qn;
        if (Rational(qn) > Y) break;

        Rational center = Rational(qn) * alpha;
        Integer amin = ceil_div(center - win);
        Integer amax = floor_div(center + win);
        if (amin < 0) amin = 0;
        if (amax > qn) amax = qn;
        for (Integer a = amin; a <= amax; ++a) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), qn.get_mpz_t());
            if (g != 1) continue;
            ArcLabel label;
            label.kind = ArcLabel::Kind::Major;
            label.q = qn.get_ui();
            label.a = a.get_ui();
            label.distance = std::abs(Rational(center - Rational(a)).get_d());
            return label;
        }
    }
    return {};
}

double major_model(int k, uint64_t q, uint64_t a, const Rational& alpha, double X) {
    if (q < 1 || std::gcd(a, q) != 1)
        throw UsageError("major_model requires gcd(a, q) = 1");
    Rational delta = alpha - Rational(static_cast<unsigned long>(a),
                                      static_cast<unsigned long>(q));
    double dist = std::abs(delta.get_d());
    return w_factor(k, q) * X / (1 + std::pow(X, k) * dist);
}

MinorProbeReport minor_sup_probe(int k, double X, long grid_size, bool keep_rows) {
    if (k < 3) throw UsageError("minor_sup_probe requires k >= 3");
    if (!(X >= 1) || !std::isfinite(X))
        throw UsageError("minor_sup_probe requires finite X >= 1");
    if (grid_size < 1) throw UsageError("grid size must be positive");

    double sig = sigma(k).get_d();
    Rational Yd = rat_from_double(std::pow(X, k * sig));
    Rational Xd = rat_from_double(std::pow(X, k - k * sig));

    MinorProbeReport rep;
    rep.k = k;
    rep.X = X;
    rep.grid_size = grid_size;
    rep.predicted = std::pow(X, 1 - sig);
    rep.trivial_bound = std::floor(2 * X) - std::floor(X);

    for (long j = 0; j < grid_size; ++j) {
        Rational alpha(j, grid_size);
        alpha.canonicalize();
        ArcLabel label = dissect(alpha, Yd, Xd);
        WeylSumSpec spec{k, X, 1, alpha};
        double mag = std::abs(weyl_f(spec));
        ProbeRow row{static_cast<double>(j) / static_cast<double>(grid_size),
                     mag, label, 0.0};
        if (label.kind == ArcLabel::Kind::Minor) {
            ++rep.minor_count;
            rep.empirical_sup = std::max(rep.empirical_sup, mag);
        } else {
            row.model = major_model(k, label.q, label.a, alpha, X);
        }
        if (keep_rows) rep.rows.push_back(row);
    }
    rep.ratio = rep.predicted > 0 ? rep.empirical_sup / rep.predicted : 0;
    return rep;
}

std::string probe_csv(const std::vector<ProbeRow>& rows) {
    std::string out = "alpha,abs_sum,kind,q,a,model\n";
    char buf[160];
    for (const auto& row : rows) {
        if (row.label.kind == ArcLabel::Kind::Major) {
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,major,%llu,%llu,%.12g\n",
                          row.alpha, row.abs_sum,
                          static_cast<unsigned long long>(row.label.q),
                          static_cast<unsigned long long>(row.label.a), row.model);
        } else {
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,minor,,,\n",
                          row.alpha, row.abs_sum);
        }
        out += buf;
    }
    return out;
}

}  // namespace wgb
