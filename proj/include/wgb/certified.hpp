#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "wgb/rational.hpp"

namespace wgb {

// Directed-rounding interval [lo, hi] guaranteed to bracket the exact value.
// Endpoints are kept at the requested precision plus a few guard bits, so the
// reported width is well below 2^(1-precision) relative. Widths shrink (never
// grow) when the same expression is re-evaluated at higher precision, because
// a finer binary grid refines a coarser one.
class CertifiedReal {
  public:
    explicit CertifiedReal(mpfr_prec_t precision_bits);
    CertifiedReal(const CertifiedReal& o);
    CertifiedReal& operator=(const CertifiedReal& o);
    ~CertifiedReal();

    static CertifiedReal from_long(long v, mpfr_prec_t precision_bits);
    static CertifiedReal from_rational(const Rational& x, mpfr_prec_t precision_bits);

    CertifiedReal operator+(const CertifiedReal& o) const;
    CertifiedReal operator-(const CertifiedReal& o) const;
    CertifiedReal operator*(const CertifiedReal& o) const;
    CertifiedReal add_long(long v) const;
    CertifiedReal mul_long(long v) const;

    mpfr_prec_t precision() const { return prec_; }
    double lo_double() const;  // rounded down
    double hi_double() const;  // rounded up
    double width() const;

    bool contains(const Rational& x) const;
    // True when [lo, hi] sits inside [o.lo, o.hi] possibly widened by slack.
    bool contained_in(const CertifiedReal& o, const Rational& slack = Rational(0)) const;

    // floor(value) when both endpoints agree on it; nullopt if the interval
    // straddles an integer and the floor is still ambiguous.
    std::optional<Integer> unambiguous_floor() const;

    Rational lower_rational() const;
    Rational upper_rational() const;

    std::string to_string(int digits) const;

  private:
    friend CertifiedReal certified_log(const Rational& x, mpfr_prec_t precision_bits);

    mpfr_prec_t prec_;   // requested precision
    mpfr_t lo_, hi_;     // stored with guard bits on top of prec_
};

// Interval containing ln(x). Rejects x <= 0.
CertifiedReal certified_log(const Rational& x, mpfr_prec_t precision_bits);

}  // namespace wgb
