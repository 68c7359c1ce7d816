#include "wgb/certified.hpp"

#include <algorithm>
#include <cstdio>

#include "wgb/errors.hpp"

namespace wgb {

namespace {
constexpr mpfr_prec_t kGuardBits = 32;
}

CertifiedReal::CertifiedReal(mpfr_prec_t precision_bits) : prec_(precision_bits) {
    if (precision_bits < 2) throw UsageError("precision must be at least 2 bits");
    mpfr_init2(lo_, precision_bits + kGuardBits);
    mpfr_init2(hi_, precision_bits + kGuardBits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

CertifiedReal::CertifiedReal(const CertifiedReal& o) : prec_(o.prec_) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

CertifiedReal& CertifiedReal::operator=(const CertifiedReal& o) {
    if (this != &o) {
        prec_ = o.prec_;
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

CertifiedReal::~CertifiedReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

CertifiedReal CertifiedReal::from_long(long v, mpfr_prec_t precision_bits) {
    CertifiedReal r(precision_bits);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

CertifiedReal CertifiedReal::from_rational(const Rational& x, mpfr_prec_t precision_bits) {
    CertifiedReal r(precision_bits);
    mpfr_set_q(r.lo_, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, x.get_mpq_t(), MPFR_RNDU);
    return r;
}

CertifiedReal CertifiedReal::operator+(const CertifiedReal& o) const {
    CertifiedReal r(std::min(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

CertifiedReal CertifiedReal::operator-(const CertifiedReal& o) const {
    CertifiedReal r(std::min(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

CertifiedReal CertifiedReal::operator*(const CertifiedReal& o) const {
    // general interval product: min/max over the four endpoint products,
    // each computed under both rounding directions
    CertifiedReal r(std::min(prec_, o.prec_));
    mpfr_srcptr as[2] = {lo_, hi_};
    mpfr_srcptr bs[2] = {o.lo_, o.hi_};
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(r.lo_));
    bool first = true;
    for (auto a : as)
        for (auto b : bs) {
            mpfr_mul(t, a, b, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, a, b, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

CertifiedReal CertifiedReal::add_long(long v) const {
    CertifiedReal r(prec_);
    mpfr_add_si(r.lo_, lo_, v, MPFR_RNDD);
    mpfr_add_si(r.hi_, hi_, v, MPFR_RNDU);
    return r;
}

CertifiedReal CertifiedReal::mul_long(long v) const {
    CertifiedReal r(prec_);
    if (v >= 0) {
        mpfr_mul_si(r.lo_, lo_, v, MPFR_RNDD);
        mpfr_mul_si(r.hi_, hi_, v, MPFR_RNDU);
    } else {
        mpfr_mul_si(r.lo_, hi_, v, MPFR_RNDD);
        mpfr_mul_si(r.hi_, lo_, v, MPFR_RNDU);
    }
    return r;
}

double CertifiedReal::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double CertifiedReal::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double CertifiedReal::width() const {
    mpfr_t w;
    mpfr_init2(w, mpfr_get_prec(hi_));
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool CertifiedReal::contains(const Rational& x) const {
    return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool CertifiedReal::contained_in(const CertifiedReal& o, const Rational& slack) const {
    Rational olo = o.lower_rational() - slack;
    Rational ohi = o.upper_rational() + slack;
    return mpfr_cmp_q(lo_, olo.get_mpq_t()) >= 0 && mpfr_cmp_q(hi_, ohi.get_mpq_t()) <= 0;
}

std::optional<Integer> CertifiedReal::unambiguous_floor() const {
    // floor(lo) == floor(hi) pins floor(v) for every v in [lo, hi]
    mpfr_t f;
    mpfr_init2(f, mpfr_get_prec(lo_));
    Integer flo, fhi;
    mpfr_floor(f, lo_);
    mpfr_get_z(flo.get_mpz_t(), f, MPFR_RNDN);
    mpfr_floor(f, hi_);
    mpfr_get_z(fhi.get_mpz_t(), f, MPFR_RNDN);
    mpfr_clear(f);
    if (flo == fhi) return flo;
    return std::nullopt;
}

Rational CertifiedReal::lower_rational() const {
    if (!mpfr_number_p(lo_)) throw Error("non-finite interval endpoint");
    mpf_t tmp;
    mpf_init2(tmp, mpfr_get_prec(lo_) + 64);
    mpfr_get_f(tmp, lo_, MPFR_RNDD);
    Rational r;
    mpq_set_f(r.get_mpq_t(), tmp);
    mpf_clear(tmp);
    return r;
}

Rational CertifiedReal::upper_rational() const {
    if (!mpfr_number_p(hi_)) throw Error("non-finite interval endpoint");
    mpf_t tmp;
    mpf_init2(tmp, mpfr_get_prec(hi_) + 64);
    mpfr_get_f(tmp, hi_, MPFR_RNDU);
    Rational r;
    mpq_set_f(r.get_mpq_t(), tmp);
    mpf_clear(tmp);
    return r;
}

std::string CertifiedReal::to_string(int digits) const {
    mpfr_t mid;
    mpfr_init2(mid, mpfr_get_prec(lo_));
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    char buf[160];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, mid);
    mpfr_clear(mid);
    return buf;
}

CertifiedReal certified_log(const Rational& x, mpfr_prec_t precision_bits) {
    if (sgn(x) <= 0) throw UsageError("certified_log requires a positive argument");
    CertifiedReal out(precision_bits);
    // log is increasing, so images of outward-rounded endpoints bracket ln(x)
    mpfr_t t;
    mpfr_init2(t, precision_bits + kGuardBits);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDD);
    mpfr_log(out.lo_, t, MPFR_RNDD);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDU);
    mpfr_log(out.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return out;
}

}  // namespace wgb
