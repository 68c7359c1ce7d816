#include "wgb/exponents.hpp"

#include <map>

#include "wgb/errors.hpp"

namespace wgb {

Rational big_sigma(int k) {
    if (k < 3) throw UsageError("big_sigma requires k >= 3");
    // Entries are decimals over 1000; canonicalize once so that exact
    // comparisons (mpq_equal wants lowest terms) behave downstream.
    static const std::map<int, Rational> table = [] {
        std::map<int, Rational> t = {
            {7, Rational(58093, 1000)},   {8, Rational(80867, 1000)},
            {9, Rational(107396, 1000)},  {10, Rational(137763, 1000)},
            {11, Rational(172027, 1000)}, {12, Rational(210222, 1000)},
            {13, Rational(252370, 1000)}, {14, Rational(298487, 1000)},
            {15, Rational(348580, 1000)}, {16, Rational(402655, 1000)},
            {17, Rational(460718, 1000)}, {18, Rational(522771, 1000)},
            {19, Rational(588815, 1000)}, {20, Rational(658854, 1000)},
        };
        for (auto& [kk, v] : t) v.canonicalize();
        return t;
    }();
    auto it = table.find(k);
    if (it != table.end()) return it->second;
    return Rational(2L * k * k - 6L * k + 4);
}

Rational sigma(int k) {
    if (k < 3) throw UsageError("sigma requires k >= 3");
    Rational two_pow = Rational(int_pow(Integer(2), static_cast<unsigned long>(k - 1)));
    Rational bs = big_sigma(k);
    return 1 / std::min(two_pow, bs);
}

namespace {

void check_preconditions(int k, int t, int u) {
    if (k < 4) throw UsageError("exponent sequence requires k >= 4");
    if (t < min_t(k)) throw UsageError("t below the floor((k+3)/2) minimum");
    if (u < 1) throw UsageError("u must be at least 1");
}

bool window_holds(const std::vector<Rational>& lam, int k, int u) {
    const int len = min_t(k);
    const int n = static_cast<int>(lam.size());
    const Rational half(1, 2);
    for (int i = 1; i <= u + 1; ++i)
        for (int j = 1; j < len && i + j <= n; ++j)
            if (lam[i + j - 1] <= half * lam[i - 1]) return false;
    return true;
}

}  // namespace

ExponentSystem lambda_seq(int k, int t, int u, bool strict_window) {
    check_preconditions(k, t, u);

    const Rational theta(k - 1, k);
    const Rational sg = sigma(k - 1);
    const Rational phi = theta + sg / k;
    const Rational kk(k);

    ExponentSystem sys;
    sys.k = k;
    sys.t = t;
    sys.u = u;
    sys.lambdas.reserve(t + u);

    // geometric head: phi^0 .. phi^u
    Rational p(1);
    for (int i = 0; i <= u; ++i) {
        sys.lambdas.push_back(p);
        p *= phi;
    }
    const Rational& head_top = sys.lambdas[u];  // lambda_(u+1)

    const Rational T = rat_pow(theta, static_cast<unsigned long>(t - 3));
    const Rational D = kk * kk + kk - kk * T;

    sys.lambdas.push_back((kk * kk - T) / D * head_top);

    const Rational tail_coef = Rational(1L * k * k - k - 1) / D * head_top;
    Rational tp(1);  // theta^(j-3)
    for (int j = 3; j <= t; ++j) {
        sys.lambdas.push_back(tail_coef * tp);
        tp *= theta;
    }

    sys.Lambda = 0;
    for (const Rational& l : sys.lambdas) sys.Lambda += l;

    sys.window_ok = window_holds(sys.lambdas, k, u);
    if (strict_window && !sys.window_ok)
        throw InfeasibleError("window condition lambda_(i+j) > lambda_i / 2 violated", 1);
    return sys;
}

Rational lambda_total_closed(int k, int t, int u) {
    check_preconditions(k, t, u);
    const Rational theta(k - 1, k);
    const Rational sg = sigma(k - 1);
    const Rational phi = theta + sg / k;
    const Rational one_minus = 1 - sg;
    const Rational kk(k);

    const Rational T = rat_pow(theta, static_cast<unsigned long>(t - 3));
    const Rational D = kk * kk + kk - kk * T;
    const Rational k3 = kk * kk * kk;

    Rational coef = ((k3 - kk - (k3 - 2 * kk * kk + 2) * T) * one_minus - (kk - 1 + sg) * D) /
                    (D * one_minus);
    return kk / one_minus + coef * rat_pow(phi, static_cast<unsigned long>(u));
}

}  // namespace wgb
