#include "wgb/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "wgb/certified.hpp"
#include "wgb/errors.hpp"

namespace wgb {

BoundCertificate certificate(int k, int t, int u) {
    BoundCertificate c;
    c.k = k;
    c.t = t;
    c.u = u;
    c.Lambda = lambda_total_closed(k, t, u);

    const Rational sk = sigma(k);
    const Rational deficit = k - c.Lambda;
    const Rational two_sk = 2 * sk;

    Integer v_big = floor_div(deficit / two_sk);
    if (!v_big.fits_slong_p()) throw Error("certificate v out of range");
    c.v = v_big.get_si();
    c.eta_star = deficit - c.v * two_sk;  // in [0, 2 sk) by the floor identity
    if (c.eta_star < sk / 2)
        c.h = 1;
    else if (c.eta_star < sk)
        c.h = 2;
    else
        c.h = 3;
    c.s = 2L * (t + u + c.v) + c.h;
    c.h_star = 2 * c.eta_star / sk;

    if (sgn(deficit) < 0) c.failed_hypotheses.push_back("lambda-exceeds-k");
    if (c.s < 3L * k + 1) c.failed_hypotheses.push_back("s-below-3k-plus-1");
    if (c.h != 3 && c.v < 3 && !(c.eta_star < Rational(c.h) * sk / 3))
        c.failed_hypotheses.push_back("small-v-eta-too-large");
    c.feasible = c.failed_hypotheses.empty();
    return c;
}

std::string h_star_rounded(const BoundCertificate& cert, int places) {
    if (!cert.feasible) throw UsageError("h_star_rounded requires a feasible certificate");
    return to_decimal_string_ceil(cert.h_star, places);
}

int default_cap(int k) {
    int cap = static_cast<int>(std::ceil(4.0 * k * std::log(static_cast<double>(k))));
    if (k <= 20) cap = std::max(cap, 130);
    return cap;
}

namespace {

// s contribution of the deficit alone: 2 floor(rho/2) + h(rho), where
// rho = (k - Lambda)/sigma(k). Nondecreasing step function of rho >= 0.
long deficit_steps(double rho) {
    double m = std::floor(rho / 2.0);
    double fr = rho - 2.0 * m;
    int h = fr < 0.5 ? 1 : (fr < 1.0 ? 2 : 3);
    return 2 * static_cast<long>(m) + h;
}

struct Cell {
    long s_lo;  // proven lower bound on s if this cell is feasible
    int t, u;
};

}  // namespace

SearchReport optimize(int k, int t_max, int u_max) {
    if (k < 4) throw UsageError("optimize requires k >= 4");
    if (t_max < 0) t_max = default_cap(k);
    if (u_max < 0) u_max = default_cap(k);
    const int t_min = min_t(k);
    if (t_max < t_min) throw UsageError("t_max below floor((k+3)/2)");
    if (u_max < 1) throw UsageError("u_max must be at least 1");

    SearchReport rep;
    rep.k = k;
    rep.t_max = t_max;
    rep.u_max = u_max;
    rep.configs_scanned = static_cast<long>(t_max - t_min + 1) * u_max;

    // Double-precision prefilter. Forward error on Lambda is dominated by the
    // powers theta^(t-3) and phi^u, each a chain of at most `cap` rounded
    // multiplications, and by the k^3-sized coefficient arithmetic. A coarse
    // but safe envelope: |err| <= 2^-53 * k * (128 * cap + 200), widened 16x.
    const int cap = std::max(t_max, u_max);
    const double eps_lambda =
        16.0 * std::ldexp(static_cast<double>(k) * (128.0 * cap + 200.0), -53);
    const double sk_d = mpq_get_d(sigma(k).get_mpq_t());
    const double eps_rho = eps_lambda / sk_d + 1e-9;

    const double theta_d = (k - 1.0) / k;
    const double sg_d = mpq_get_d(sigma(k - 1).get_mpq_t());
    const double phi_d = theta_d + sg_d / k;
    const double k3 = static_cast<double>(k) * k * k;
    const double c0 = k / (1.0 - sg_d);

    // per-t closed-form coefficient, so each grid cell is one fma
    std::vector<double> coef(t_max + 1, 0.0);
    {
        double T = std::pow(theta_d, t_min - 3);
        for (int t = t_min; t <= t_max; ++t) {
            double D = static_cast<double>(k) * k + k - k * T;  // k^2 + k - kT
            double num = (k3 - k - (k3 - 2.0 * k * k + 2.0) * T) * (1.0 - sg_d) -
                         (k - 1.0 + sg_d) * D;
            coef[t] = num / (D * (1.0 - sg_d));
            T *= theta_d;
        }
    }

    // First sweep: a guaranteed-feasible upper bound on the optimal s, so the
    // second sweep only has to keep competitive cells. A cell with
    // rho - eps >= 6 certainly has v >= 3, which together with a proven
    // s >= 3k+1 settles feasibility from the bracket alone.
    long s_ub = std::numeric_limits<long>::max();
    {
        double phi_u = phi_d;
        for (int u = 1; u <= u_max; ++u) {
            for (int t = t_min; t <= t_max; ++t) {
                double lam = c0 + coef[t] * phi_u;
                double rho = (k - lam) / sk_d;
                if (rho - eps_rho < 6.0) continue;
                long lo = 2L * (t + u) + deficit_steps(rho - eps_rho);
                if (lo < 3L * k + 1) continue;
                s_ub = std::min(s_ub, 2L * (t + u) + deficit_steps(rho + eps_rho));
            }
            phi_u *= phi_d;
        }
    }

    std::vector<Cell> cells;
    cells.reserve(1024);
    double phi_u = phi_d;
    for (int u = 1; u <= u_max; ++u) {
        for (int t = t_min; t <= t_max; ++t) {
            double lam = c0 + coef[t] * phi_u;
            double rho = (k - lam) / sk_d;
            if (rho + eps_rho < 0.0) continue;  // certainly lambda-exceeds-k
            double rho_lo = std::max(rho - eps_rho, 0.0);
            long s_lo = 2L * (t + u) + deficit_steps(rho_lo);
            if (s_lo <= s_ub) cells.push_back({s_lo, t, u});
        }
        phi_u *= phi_d;
    }

    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.s_lo != b.s_lo) return a.s_lo < b.s_lo;
        if (a.t + a.u != b.t + b.u) return a.t + a.u < b.t + b.u;
        return a.t < b.t;
    });

    std::optional<BoundCertificate> best;
    std::vector<std::pair<int, int>> ties;
    for (const Cell& cell : cells) {
        // sorted by s_lo: once the proven bound passes the incumbent,
        // no later cell can match it
        if (best && best->s < cell.s_lo) break;
        BoundCertificate c = certificate(k, cell.t, cell.u);
        ++rep.exact_evaluations;
        if (!c.feasible) continue;
        if (!best || c.s < best->s) {
            best = c;
            ties.assign(1, {c.t, c.u});
        } else if (c.s == best->s) {
            ties.emplace_back(c.t, c.u);
            long bsum = best->t + best->u, csum = c.t + c.u;
            if (csum < bsum || (csum == bsum && c.t < best->t)) best = c;
        }
    }
    if (!best)
        throw InfeasibleError("no feasible configuration within caps", rep.configs_scanned);

    std::sort(ties.begin(), ties.end());
    rep.best = *best;
    rep.all_optimal = std::move(ties);
    return rep;
}

Integer asymptotic_bound(int k, int offset, long start_precision) {
    if (k < 2) throw UsageError("asymptotic_bound requires k >= 2");
    if (offset != -7 && offset != -4) throw UsageError("offset must be -7 or -4");
    if (start_precision < 16) throw UsageError("start precision below 16 bits");
    mpfr_prec_t ceiling = std::max<mpfr_prec_t>(4096, start_precision);
    for (mpfr_prec_t prec = start_precision; prec <= ceiling; prec *= 2) {
        CertifiedReal expr =
            certified_log(Rational(k), prec).mul_long(4L * k - 2).add_long(k + offset);
        if (auto f = expr.unambiguous_floor()) return *f;
    }
    throw PrecisionError("floor still ambiguous at 4096 bits");
}

std::vector<SweepRow> theorem1_sweep(int k_min, int k_max, long start_precision) {
    if (k_min < 4) throw UsageError("sweep requires k_min >= 4");
    if (k_min > k_max) throw UsageError("empty sweep range");
    std::vector<SweepRow> rows;
    rows.reserve(k_max - k_min + 1);
    for (int k = k_min; k <= k_max; ++k) {
        SweepRow row;
        row.k = k;
        row.s_opt = optimize(k).best.s;
        row.bound_minus7 = asymptotic_bound(k, -7, start_precision);
        row.bound_minus4 = asymptotic_bound(k, -4, start_precision);
        row.holds_minus7 = Integer(row.s_opt) <= row.bound_minus7;
        row.holds_minus4 = Integer(row.s_opt) <= row.bound_minus4;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace wgb
