#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "magicineq/errors.hpp"
#include "magicineq/interval.hpp"
#include "magicineq/rational.hpp"

namespace magicineq {

namespace detail {

/// Enclosure of arctan(1/x) for integer x >= 2 via the alternating series
///   arctan(1/x) = sum_{k>=0} (-1)^k / ((2k+1) x^(2k+1)).
/// Terms decrease in absolute value, so the truncation remainder after K
/// terms is bounded by the first omitted term 1/((2K+1) x^(2K+1)); the
/// partial sum is widened by that bound on both sides.
inline Interval atan_recip_interval(long x, mpfr_prec_t prec) {
    const mpfr_prec_t work = prec + 32;
    const unsigned long stop_bits = static_cast<unsigned long>(prec) + 18;

    Interval sum(work);
    mpz_class xpow;           // x^(2k+1)
    mpz_pow_ui(xpow.get_mpz_t(), mpz_class(x).get_mpz_t(), 1);
    const mpz_class xsq = mpz_class(x) * x;

    long k = 0;
    for (;;) {
        mpz_class denom = xpow * (2 * k + 1);
        if (mpz_sizeinbase(denom.get_mpz_t(), 2) >= stop_bits) {
            // remainder bound: first omitted term
            sum = sum.widened(Rational(mpz_class(1), denom));
            return sum;
        }
        Rational term(mpz_class(1), denom);
        Interval t = Interval::from_rational(k % 2 == 0 ? term : -term, work);
        sum += t;
        xpow *= xsq;
        ++k;
    }
}

} // namespace detail

/// Enclosure of pi via Machin's formula
///   pi = 16 arctan(1/5) - 4 arctan(1/239),
/// with each arctangent summed as an alternating series whose remainder is
/// bounded by the first omitted term. Width <= 2^-(precision-4).
inline Interval enclose_pi(mpfr_prec_t precision) {
    if (precision < 16) throw OutOfRangeError("enclose_pi: precision must be >= 16");
    Interval a = detail::atan_recip_interval(5, precision + 8);
    Interval b = detail::atan_recip_interval(239, precision + 8);
    Interval pi = a.mul_rational(16) - b.mul_rational(4);
    return pi.rounded_to(precision);
}

namespace detail {

/// Smallest short dyadic >= r (64-bit mantissa, rounded up). Keeps the
/// running Taylor term bound from growing into a megabit rational at high
/// working precision; the bound stays a valid upper bound.
inline Rational dyadic_upper(const Rational& r) {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_q(t, r.mpq().get_mpq_t(), MPFR_RNDU);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), t);
    mpfr_clear(t);
    return Rational(q);
}

} // namespace detail

/// Enclosure of e^x for rational x with |x| <= 64, via the Taylor series
/// sum x^k/k! truncated after K terms with the factorial remainder bound
///   |R_K| <= (|x|^K / K!) * (K+1)/(K+1-|x|)   for K+1 > |x|.
inline Interval enclose_exp(const Rational& x, mpfr_prec_t precision) {
    if (x.abs() > Rational(64)) throw OutOfRangeError("enclose_exp: |x| > 64 is out of design range");
    const mpfr_prec_t work = precision + 32;
    const Rational ax_up = detail::dyadic_upper(x.abs());
    const Rational target = Rational::pow2(-(static_cast<long>(precision) + 8));

    Interval x_itv = Interval::from_rational(x, work);
    Interval term = Interval::one(work);
    Interval sum = term;
    Rational term_abs(1); // upper bound on |x|^k / k!

    for (long k = 1;; ++k) {
        if (Rational(k) > ax_up) {
            // factor k/(k - |x|) converts the current term bound into a
            // geometric-tail bound for everything from this term onward
            Rational tail = term_abs * ax_up / (Rational(k) - ax_up);
            if (tail <= target) {
                return sum.widened(tail).rounded_to(precision);
            }
        }
        term = (term * x_itv).mul_rational(Rational(1, k));
        term_abs = detail::dyadic_upper(term_abs * ax_up / Rational(k));
        sum += term;
        if (k > 4096) throw Error("enclose_exp: failed to converge"); // unreachable for |x| <= 64
    }
}

/// Monotone hull: e^[a,b] = [e^a, e^b] evaluated at the dyadic endpoints.
inline Interval enclose_exp(const Interval& x, mpfr_prec_t precision) {
    Interval lo = enclose_exp(x.lo_rational(), precision);
    Interval hi = enclose_exp(x.hi_rational(), precision);
    return Interval::from_endpoints(lo.lo_rational(), hi.hi_rational(), precision);
}

/// Arithmetic-geometric mean of two positive enclosures. After one
/// normalizing step the true iterates satisfy b_k <= AGM <= a_k, so
/// [b_k.lo, a_k.hi] encloses the limit at every subsequent step; iteration
/// stops when that sandwich is tight.
inline Interval agm(const Interval& a0, const Interval& b0, mpfr_prec_t precision) {
    if (!a0.is_strictly_positive() || !b0.is_strictly_positive())
        throw NonPositiveInputError("agm: inputs must be strictly positive");
    const mpfr_prec_t work = precision + 32;
    const Rational target = Rational::pow2(-(static_cast<long>(precision) + 8));
    const Rational half(1, 2);

    Interval a = a0.rounded_to(work);
    Interval b = b0.rounded_to(work);
    // first step establishes a >= b for the true iterates (AM-GM)
    Interval an = (a + b).mul_rational(half);
    Interval bn = (a * b).sqrt();
    a = an;
    b = bn;

    Rational gap = a.hi_rational() - b.lo_rational();
    for (int it = 0; it < 128; ++it) {
        if (gap <= target) break;
        an = (a + b).mul_rational(half);
        bn = (a * b).sqrt();
        a = an;
        b = bn;
        Rational next_gap = a.hi_rational() - b.lo_rational();
        if (next_gap >= gap) break; // interval widths dominate; no further progress
        gap = next_gap;
    }
    return Interval::from_endpoints(b.lo_rational(), a.hi_rational(), work).rounded_to(precision);
}

/// Enclosure of Gamma(1/4) through the AGM identity
///   Gamma(1/4)^2 = (2 pi)^(3/2) / AGM(sqrt 2, 1).
/// Deliberately independent of the theta series, so the theta special-value
/// checks are non-circular. Width <= 2^-(precision-8).
inline Interval enclose_gamma_quarter(mpfr_prec_t precision) {
    if (precision < 32) throw OutOfRangeError("enclose_gamma_quarter: precision must be >= 32");
    const mpfr_prec_t work = precision + 32;
    Interval two_pi = enclose_pi(work).mul_rational(2);
    Interval two_pi_pow3half = two_pi.pow_ui(3).sqrt();
    Interval sqrt2 = Interval::from_long(2, work).sqrt();
    Interval m = agm(sqrt2, Interval::one(work), work);
    Interval gamma_sq = two_pi_pow3half / m;
    return gamma_sq.sqrt().rounded_to(precision);
}

/// Tagged enclosure of a named constant, as recorded in certificates.
struct ConstantEnclosure {
    std::string name;     // "pi", "exp_pi_mult(k)", "gamma_quarter"
    Interval value;
    mpfr_prec_t precision;
};

/// Process-wide memo of constant enclosures. All enclosures are pure
/// functions of (tag, precision); the cache only avoids recomputation.
class ConstantCache {
public:
    static ConstantCache& instance() {
        static ConstantCache cache;
        return cache;
    }

    Interval pi(mpfr_prec_t precision) {
        return lookup(key("pi", 0, precision), [&] { return enclose_pi(precision); });
    }

    /// e^(k*pi) for small integer k (covers e^{2pi}, e^{3pi}, e^{-2pi}).
    Interval exp_pi_mult(long k, mpfr_prec_t precision) {
        return lookup(key("exp_pi", k, precision), [&] {
            Interval p = pi(precision + 32).mul_rational(Rational(k));
            return enclose_exp(p, precision);
        });
    }

    Interval gamma_quarter(mpfr_prec_t precision) {
        return lookup(key("gamma_quarter", 0, precision),
                      [&] { return enclose_gamma_quarter(precision); });
    }

    /// Exact dyadic bounds [lo, hi] of pi at the given precision.
    std::pair<Rational, Rational> pi_bounds(mpfr_prec_t precision) {
        Interval p = pi(precision);
        return {p.lo_rational(), p.hi_rational()};
    }

private:
    ConstantCache() = default;

    static std::string key(const char* tag, long k, mpfr_prec_t prec) {
        return std::string(tag) + "|" + std::to_string(k) + "|" + std::to_string(prec);
    }

    template <class F>
    Interval lookup(const std::string& k, F&& compute) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(k);
            if (it != memo_.end()) return it->second;
        }
        Interval v = compute();
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = memo_.emplace(k, v);
        (void)inserted;
        return it->second;
    }

    std::mutex mu_;
    std::map<std::string, Interval> memo_;
};

/// Enclosure of e^(c*pi) for rational c (workhorse for e^{-pi t} etc.).
inline Interval enclose_exp_pi_times(const Rational& c, mpfr_prec_t precision) {
    Interval p = ConstantCache::instance().pi(precision + 32).mul_rational(c);
    return enclose_exp(p, precision);
}

} // namespace magicineq
