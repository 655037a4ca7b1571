#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include "magicineq/errors.hpp"
#include "magicineq/rational.hpp"

namespace magicineq {

/// Closed interval [lo, hi] with dyadic endpoints (MPFR numbers are exactly
/// integer * 2^exponent). Every operation rounds lo toward -inf and hi
/// toward +inf, so the result always contains the exact image of the
/// inputs. Endpoint precision is carried per interval; binary operations
/// work at the larger of the two operand precisions.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64) : prec_(clamp_prec(prec)) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    Interval(const Interval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDN);
        mpfr_set(hi_, o.hi_, MPFR_RNDN);
    }

    Interval(Interval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, 2);
        mpfr_init2(hi_, 2);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    Interval& operator=(const Interval& o) {
        if (this != &o) {
            mpfr_set_prec(lo_, o.prec_);
            mpfr_set_prec(hi_, o.prec_);
            prec_ = o.prec_;
            mpfr_set(lo_, o.lo_, MPFR_RNDN);
            mpfr_set(hi_, o.hi_, MPFR_RNDN);
        }
        return *this;
    }

    Interval& operator=(Interval&& o) noexcept {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        std::swap(prec_, o.prec_);
        return *this;
    }

    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval from_rational(const Rational& q, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_, q.mpq().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.mpq().get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static Interval from_long(long n, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_, n, MPFR_RNDD);
        mpfr_set_si(r.hi_, n, MPFR_RNDU);
        return r;
    }

    static Interval from_endpoints(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
        if (lo > hi) throw Error("Interval: lo > hi");
        Interval r(prec);
        mpfr_set_q(r.lo_, lo.mpq().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, hi.mpq().get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static Interval zero(mpfr_prec_t prec) { return Interval(prec); }
    static Interval one(mpfr_prec_t prec) { return from_long(1, prec); }

    mpfr_prec_t precision() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    /// Exact rational value of the lower endpoint (endpoints are dyadic).
    Rational lo_rational() const { return to_rational(lo_); }
    Rational hi_rational() const { return to_rational(hi_); }

    /// Exact width hi - lo, computed in rational arithmetic.
    Rational width() const { return hi_rational() - lo_rational(); }

    bool contains(const Rational& q) const {
        return mpfr_cmp_q(lo_, q.mpq().get_mpq_t()) <= 0 &&
               mpfr_cmp_q(hi_, q.mpq().get_mpq_t()) >= 0;
    }
    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool contains(const Interval& o) const {
        return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
    }
    bool intersects(const Interval& o) const {
        return mpfr_cmp(hi_, o.lo_) >= 0 && mpfr_cmp(o.hi_, lo_) >= 0;
    }

    bool is_strictly_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_strictly_negative() const { return mpfr_sgn(hi_) < 0; }

    /// Entire interval strictly below the rational bound.
    bool certainly_less(const Rational& q) const {
        return mpfr_cmp_q(hi_, q.mpq().get_mpq_t()) < 0;
    }
    bool certainly_le(const Rational& q) const {
        return mpfr_cmp_q(hi_, q.mpq().get_mpq_t()) <= 0;
    }
    bool certainly_greater(const Rational& q) const {
        return mpfr_cmp_q(lo_, q.mpq().get_mpq_t()) > 0;
    }
    bool certainly_ge(const Rational& q) const {
        return mpfr_cmp_q(lo_, q.mpq().get_mpq_t()) >= 0;
    }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a) {
        Interval r(a.prec_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        // lo: min of the four products rounded down
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        // hi: max of the four products rounded up
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    /// Division; the divisor must not contain zero.
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw Error("Interval: division by interval containing zero");
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    Interval& operator+=(const Interval& o) { *this = *this + o; return *this; }
    Interval& operator-=(const Interval& o) { *this = *this - o; return *this; }
    Interval& operator*=(const Interval& o) { *this = *this * o; return *this; }

    /// Multiplication by an exact rational scalar.
    Interval mul_rational(const Rational& q) const {
        Interval r(prec_);
        if (q.sign() >= 0) {
            mpfr_mul_q(r.lo_, lo_, q.mpq().get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(r.hi_, hi_, q.mpq().get_mpq_t(), MPFR_RNDU);
        } else {
            mpfr_mul_q(r.lo_, hi_, q.mpq().get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(r.hi_, lo_, q.mpq().get_mpq_t(), MPFR_RNDU);
        }
        return r;
    }

    Interval add_rational(const Rational& q) const {
        Interval r(prec_);
        mpfr_add_q(r.lo_, lo_, q.mpq().get_mpq_t(), MPFR_RNDD);
        mpfr_add_q(r.hi_, hi_, q.mpq().get_mpq_t(), MPFR_RNDU);
        return r;
    }

    /// x^k for integer k >= 0, tight on the monotone pieces.
    Interval pow_ui(unsigned long k) const {
        if (k == 0) return one(prec_);
        if (k == 1) return *this;
        Interval r(prec_);
        const bool even = (k % 2 == 0);
        if (mpfr_sgn(lo_) >= 0) {
            mpfr_pow_ui(r.lo_, lo_, k, MPFR_RNDD);
            mpfr_pow_ui(r.hi_, hi_, k, MPFR_RNDU);
        } else if (mpfr_sgn(hi_) <= 0) {
            if (even) {
                mpfr_pow_ui(r.lo_, hi_, k, MPFR_RNDD);
                mpfr_pow_ui(r.hi_, lo_, k, MPFR_RNDU);
            } else {
                mpfr_pow_ui(r.lo_, lo_, k, MPFR_RNDD);
                mpfr_pow_ui(r.hi_, hi_, k, MPFR_RNDU);
            }
        } else if (even) {
            mpfr_set_zero(r.lo_, 1);
            mpfr_t t;
            mpfr_init2(t, prec_);
            mpfr_pow_ui(r.hi_, hi_, k, MPFR_RNDU);
            mpfr_pow_ui(t, lo_, k, MPFR_RNDU);
            mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
            mpfr_clear(t);
        } else {
            mpfr_pow_ui(r.lo_, lo_, k, MPFR_RNDD);
            mpfr_pow_ui(r.hi_, hi_, k, MPFR_RNDU);
        }
        return r;
    }

    /// Square root; requires lo >= 0.
    Interval sqrt() const {
        if (mpfr_sgn(lo_) < 0) throw NonPositiveInputError("Interval::sqrt: negative lower endpoint");
        Interval r(prec_);
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    /// Smallest interval containing both inputs.
    static Interval hull(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    /// Widen both endpoints outward by a nonnegative rational margin.
    Interval widened(const Rational& eps) const {
        if (eps.sign() < 0) throw Error("Interval::widened: negative margin");
        Interval r(prec_);
        mpfr_sub_q(r.lo_, lo_, eps.mpq().get_mpq_t(), MPFR_RNDD);
        mpfr_add_q(r.hi_, hi_, eps.mpq().get_mpq_t(), MPFR_RNDU);
        return r;
    }

    /// Upper bound on |x| over the interval, as an exact rational.
    Rational abs_upper() const {
        Rational a = lo_rational().abs();
        Rational b = hi_rational().abs();
        return a > b ? a : b;
    }

    /// Re-round endpoints outward to a target precision.
    Interval rounded_to(mpfr_prec_t prec) const {
        Interval r(prec);
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    /// Decimal rendering with outward-rounded endpoints.
    std::string str(int digits = 12) const {
        return "[" + lo_str(digits) + ", " + hi_str(digits) + "]";
    }

    std::string lo_str(int digits = 17) const {
        char buf[160];
        mpfr_snprintf(buf, sizeof(buf), "%.*RDg", digits, lo_);
        return buf;
    }

    std::string hi_str(int digits = 17) const {
        char buf[160];
        mpfr_snprintf(buf, sizeof(buf), "%.*RUg", digits, hi_);
        return buf;
    }

    double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

private:
    static mpfr_prec_t clamp_prec(mpfr_prec_t p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }

    static Rational to_rational(const mpfr_t& x) {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), x);
        return Rational(q);
    }

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

} // namespace magicineq
