#include "wgb/rational.hpp"

#include <cctype>
#include <cmath>

#include "wgb/errors.hpp"

namespace wgb {

Integer int_pow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rational rat_pow(const Rational& x, unsigned long n) {
    if (n == 0) return Rational(1);
    // num and den are already coprime, so powering them separately stays canonical.
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(x.get_mpq_t()), n);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(x.get_mpq_t()), n);
    return r;
}

Integer floor_div(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), mpq_numref(x.get_mpq_t()), mpq_denref(x.get_mpq_t()));
    return q;
}

Integer ceil_div(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), mpq_numref(x.get_mpq_t()), mpq_denref(x.get_mpq_t()));
    return q;
}

Rational rat_from_string(const std::string& s) {
    std::string v = s;
    // trim
    size_t b = v.find_first_not_of(" \t");
    size_t e = v.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty rational literal");
    v = v.substr(b, e - b + 1);

    if (v.find('/') != std::string::npos) {
        Rational r;
        if (mpq_set_str(r.get_mpq_t(), v.c_str(), 10) != 0)
            throw UsageError("bad rational literal: " + s);
        if (sgn(Rational(r.get_den())) == 0) throw UsageError("zero denominator: " + s);
        r.canonicalize();
        return r;
    }

    // decimal or scientific notation, handled digit by digit so the value is exact
    bool neg = false;
    size_t i = 0;
    if (i < v.size() && (v[i] == '+' || v[i] == '-')) neg = (v[i++] == '-');
    Integer digits = 0;
    long frac_digits = 0;
    bool seen_digit = false, seen_dot = false;
    long exp10 = 0;
    for (; i < v.size(); ++i) {
        char c = v[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            try {
                exp10 = std::stol(v.substr(i + 1));
            } catch (const std::exception&) {
                throw UsageError("bad exponent in numeric literal: " + s);
            }
            break;
        } else {
            throw UsageError("bad numeric literal: " + s);
        }
    }
    if (!seen_digit) throw UsageError("bad numeric literal: " + s);
    Rational r(digits);
    long net = exp10 - frac_digits;
    Integer scale = int_pow(Integer(10), static_cast<unsigned long>(net < 0 ? -net : net));
    if (net >= 0)
        r *= Rational(scale);
    else
        r /= Rational(scale);
    if (neg) r = -r;
    r.canonicalize();
    return r;
}

Rational rat_from_double(double x) {
    if (!std::isfinite(x)) throw UsageError("non-finite value has no rational form");
    Rational r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

std::string to_fraction_string(const Rational& x) {
    return x.get_str();
}

namespace {

std::string render_scaled(const Integer& scaled, int places) {
    // scaled = round(x * 10^places); stitch the decimal point back in
    Integer a = abs(scaled);
    std::string digits = a.get_str();
    if (static_cast<int>(digits.size()) <= places)
        digits = std::string(places - digits.size() + 1, '0') + digits;
    std::string out;
    if (sgn(scaled) < 0) out += '-';
    out += digits.substr(0, digits.size() - places);
    if (places > 0) {
        out += '.';
        out += digits.substr(digits.size() - places);
    }
    return out;
}

}  // namespace

std::string to_decimal_string(const Rational& x, int places) {
    if (places < 0) throw UsageError("negative decimal places");
    Integer p10 = int_pow(Integer(10), static_cast<unsigned long>(places));
    Rational scaled = x * Rational(p10);
    // nearest, ties away from zero
    Integer q;
    if (sgn(scaled) >= 0)
        q = floor_div(scaled + Rational(1, 2));
    else
        q = ceil_div(scaled - Rational(1, 2));
    return render_scaled(q, places);
}

std::string to_decimal_string_ceil(const Rational& x, int places) {
    if (places < 0) throw UsageError("negative decimal places");
    Integer p10 = int_pow(Integer(10), static_cast<unsigned long>(places));
    return render_scaled(ceil_div(x * Rational(p10)), places);
}

}  // namespace wgb
