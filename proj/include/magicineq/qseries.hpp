#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "magicineq/coeffpoly.hpp"
#include "magicineq/errors.hpp"
#include "magicineq/rational.hpp"

namespace magicineq {

/// Coefficient-growth bound |coeff_n| <= C * (n+1)^s for all n >= 0.
/// Only meaningful for series whose coefficients are constant rationals;
/// it is what turns a truncation into a rigorous enclosure at q = e^{-pi t}.
struct Majorant {
    Rational C;
    int s = 0;
};

/// Truncated expansion sum_n coeff_n q^n with q = e^{pi i z}. Coefficients
/// live in Q[p, v] with p -> pi, v -> iz (degree <= 2 in each), so on the
/// imaginary axis everything is real. Exponents are integers; a bounded
/// Laurent part (negative exponents) can appear as the documented result
/// of division, and is rejected by the operations that need n >= 0.
///
/// `order` N means: coefficients are exact for all n < N and unknown above.
class QSeries {
public:
    explicit QSeries(long order) : order_(order) {
        if (order < 1) throw Error("QSeries: order must be >= 1");
    }

    static QSeries zero(long order) { return QSeries(order); }

    static QSeries one(long order) {
        QSeries s(order);
        s.set_coeff(0, CoeffPoly::constant(Rational(1)));
        return s;
    }

    static QSeries constant(const Rational& r, long order) {
        QSeries s(order);
        s.set_coeff(0, CoeffPoly::constant(r));
        return s;
    }

    static QSeries monomial(long n, const Rational& r, long order) {
        QSeries s(order);
        s.set_coeff(n, CoeffPoly::constant(r));
        return s;
    }

    static QSeries monomial(long n, const CoeffPoly& c, long order) {
        QSeries s(order);
        s.set_coeff(n, c);
        return s;
    }

    long order() const { return order_; }
    const std::map<long, CoeffPoly>& coeffs() const { return coeffs_; }
    const std::optional<Majorant>& majorant() const { return majorant_; }

    /// Builder access; enforces the ring degree caps and the truncation
    /// order, and never stores zero coefficients.
    void set_coeff(long n, const CoeffPoly& c) {
        if (n >= order_) throw Error("QSeries: exponent beyond truncation order");
        if (c.degree_first() > 2 || c.degree_second() > 2)
            throw DegreeOverflowError("QSeries: coefficient degree exceeds (p^2, v^2) ring bounds");
        if (c.is_zero())
            coeffs_.erase(n);
        else
            coeffs_[n] = c;
    }

    CoeffPoly coeff(long n) const {
        auto it = coeffs_.find(n);
        return it == coeffs_.end() ? CoeffPoly() : it->second;
    }

    /// Coefficient as a rational; throws if it is z-dependent.
    Rational rational_coeff(long n) const {
        CoeffPoly c = coeff(n);
        if (!c.is_constant()) throw NonConstantCoefficientsError("QSeries: coefficient is not constant");
        return c.constant_value();
    }

    bool is_identically_zero() const { return coeffs_.empty(); }

    std::optional<long> min_exponent() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.begin()->first;
    }

    bool has_constant_coefficients() const {
        for (const auto& [n, c] : coeffs_)
            if (!c.is_constant()) return false;
        return true;
    }

    /// Attaches a majorant after verifying it against every stored
    /// coefficient. Hard failure on violation.
    QSeries with_majorant(const Rational& C, int s) const {
        QSeries r = *this;
        r.majorant_ = Majorant{C, s};
        r.verify_majorant();
        return r;
    }

    /// Test hook: attaches (or keeps) a majorant without re-verification.
    /// Used only by mutation fixtures that deliberately corrupt series.
    QSeries with_majorant_unchecked(std::optional<Majorant> m) const {
        QSeries r = *this;
        r.majorant_ = std::move(m);
        return r;
    }

    /// Checks |coeff_n| <= C (n+1)^s for all stored n. Requires constant
    /// coefficients and no Laurent part.
    void verify_majorant() const {
        if (!majorant_) return;
        for (const auto& [n, c] : coeffs_) {
            if (n < 0 || !c.is_constant())
                throw MajorantViolationError("QSeries: majorant on Laurent or z-dependent series");
            Rational bound = majorant_->C * Rational(n + 1).pow(majorant_->s);
            if (c.constant_value().abs() > bound) {
                std::ostringstream os;
                os << "QSeries: majorant violated at q^" << n << ": |" << c.constant_value().str()
                   << "| > " << bound.str();
                throw MajorantViolationError(os.str());
            }
        }
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        QSeries r(std::min(a.order_, b.order_));
        for (const auto& [n, c] : a.coeffs_)
            if (n < r.order_) r.set_coeff(n, c);
        for (const auto& [n, c] : b.coeffs_)
            if (n < r.order_) r.set_coeff(n, r.coeff(n) + c);
        if (a.majorant_ && b.majorant_)
            r.majorant_ = Majorant{a.majorant_->C + b.majorant_->C,
                                   std::max(a.majorant_->s, b.majorant_->s)};
        return r;
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

    friend QSeries operator-(const QSeries& a) {
        QSeries r(a.order_);
        for (const auto& [n, c] : a.coeffs_) r.coeffs_[n] = -c;
        r.majorant_ = a.majorant_;
        return r;
    }

    QSeries scaled(const Rational& k) const {
        QSeries r(order_);
        if (k.is_zero()) return r;
        for (const auto& [n, c] : coeffs_) r.coeffs_[n] = c.scaled(k);
        if (majorant_) r.majorant_ = Majorant{majorant_->C * k.abs(), majorant_->s};
        return r;
    }

    /// Multiplies every coefficient by a fixed polynomial factor (used to
    /// assemble z-dependent combinations like (p^2 v^2 / 18) * S).
    QSeries scaled_poly(const CoeffPoly& k) const {
        if (k.is_constant()) return scaled(k.constant_value());
        QSeries r(order_);
        for (const auto& [n, c] : coeffs_) r.set_coeff(n, c * k);
        return r;
    }

    /// Exact Cauchy convolution, valid through the order to which both
    /// factors carry full information.
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        long ma = a.coeffs_.empty() ? 0 : a.coeffs_.begin()->first;
        long mb = b.coeffs_.empty() ? 0 : b.coeffs_.begin()->first;
        long out_order = std::min(a.order_ + mb, b.order_ + ma);
        QSeries r(out_order);
        if (a.coeffs_.empty() || b.coeffs_.empty()) return r;
        std::map<long, CoeffPoly> acc;
        for (const auto& [i, ci] : a.coeffs_) {
            if (i >= a.order_) continue;
            for (const auto& [j, cj] : b.coeffs_) {
                long e = i + j;
                if (e >= out_order) break;
                auto it = acc.find(e);
                if (it == acc.end())
                    acc.emplace(e, ci * cj);
                else
                    it->second = it->second + ci * cj;
            }
        }
        for (const auto& [n, c] : acc) r.set_coeff(n, c);
        if (a.majorant_ && b.majorant_ && ma >= 0 && mb >= 0)
            r.majorant_ = Majorant{a.majorant_->C * b.majorant_->C,
                                   a.majorant_->s + b.majorant_->s + 1};
        return r;
    }

    /// Binary powering over mul. The largest power the construction needs
    /// is 24 (inside (theta2 theta3 theta4)^8); larger requests are a bug.
    QSeries pow(unsigned k) const {
        if (k > 24) throw OutOfRangeError("QSeries::pow: exponent > 24 out of design range");
        if (k == 0) return one(order_).with_majorant(Rational(1), 0);
        int top = 31;
        while (((k >> top) & 1u) == 0) --top;
        QSeries result = *this;
        for (int bit = top - 1; bit >= 0; --bit) {
            result = result * result;
            if ((k >> bit) & 1u) result = result * *this;
        }
        return result;
    }

    /// Series division. The divisor must have a nonzero constant-rational
    /// coefficient at its minimal exponent; the quotient picks up the
    /// documented Laurent shift when a's minimal exponent is smaller.
    friend QSeries div(const QSeries& a, const QSeries& b) {
        if (b.coeffs_.empty())
            throw NonInvertibleLeadingCoefficientError("div: divisor is zero through its order");
        long mb = b.coeffs_.begin()->first;
        CoeffPoly lead = b.coeffs_.begin()->second;
        if (!lead.is_constant() || lead.constant_value().is_zero())
            throw NonInvertibleLeadingCoefficientError("div: leading coefficient is not a nonzero rational");
        Rational b0 = lead.constant_value();

        long out_order = std::min(a.order_, b.order_) - mb;
        QSeries r(out_order);
        if (a.coeffs_.empty()) return r;
        long ma = a.coeffs_.begin()->first;
        long start = ma - mb;
        for (long e = start; e < out_order; ++e) {
            CoeffPoly num = a.coeff(e + mb);
            for (const auto& [f, cf] : r.coeffs_) {
                if (f >= e) break;
                long bi = e - f + mb;
                auto it = b.coeffs_.find(bi);
                if (it != b.coeffs_.end()) num = num - cf * it->second;
            }
            CoeffPoly ce = num.scaled(b0.inverse());
            if (!ce.is_zero()) {
                if (ce.degree_first() > 2 || ce.degree_second() > 2)
                    throw DegreeOverflowError("div: coefficient degree exceeds ring bounds");
                r.coeffs_[e] = ce;
            }
        }
        return r;
    }

    /// z -> z+1, i.e. q -> -q: multiplies the coefficient of q^n by (-1)^n.
    /// Defined only for constant-coefficient series; a z-dependent shift
    /// would leave the real (p, v) representation and is an error.
    QSeries half_period_shift() const {
        if (!has_constant_coefficients())
            throw NonConstantCoefficientsError("half_period_shift: series has z-dependent coefficients");
        QSeries r(order_);
        for (const auto& [n, c] : coeffs_) {
            long nn = n % 2;
            r.coeffs_[n] = (nn == 0) ? c : -c;
        }
        r.majorant_ = majorant_;
        return r;
    }

    /// Exact division by q^k for series divisible by q^k; errors if any
    /// nonzero coefficient sits below q^k. Order drops by k; the majorant
    /// shifts as (C (k+1)^s, s) since (n+k+1) <= (k+1)(n+1).
    QSeries shift_down(long k) const {
        if (k < 0) throw Error("shift_down: negative shift");
        QSeries r(order_ - k);
        for (const auto& [n, c] : coeffs_) {
            if (n < k)
                throw Error("shift_down: nonzero coefficient below q^" + std::to_string(k));
            r.coeffs_[n - k] = c;
        }
        if (majorant_)
            r.majorant_ = Majorant{majorant_->C * Rational(k + 1).pow(majorant_->s), majorant_->s};
        return r;
    }

    /// True when a - b has no nonzero coefficient through the shared order.
    bool agrees_with(const QSeries& other) const {
        return (*this - other).is_identically_zero();
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    /// First exponent at which the series is nonzero, for residual reports.
    std::string describe_residual() const {
        if (coeffs_.empty()) return "0";
        const auto& [n, c] = *coeffs_.begin();
        std::ostringstream os;
        os << "(" << c.str() << ") q^" << n << " + ...";
        return os.str();
    }

private:
    long order_;
    std::map<long, CoeffPoly> coeffs_;
    std::optional<Majorant> majorant_;
};

/// Restriction of a q-series to the imaginary axis z = it: the value is
/// sum_n poly_n(pi, t) e^{-n pi t} with poly_n obtained from coeff_n by
/// v -> -T. Supports exact termwise t-differentiation.
class AxisSeries {
public:
    explicit AxisSeries(long order) : order_(order) {}

    long order() const { return order_; }
    const std::map<long, AxisPoly>& coeffs() const { return coeffs_; }

    void set_coeff(long n, const AxisPoly& c) {
        if (n >= order_) throw Error("AxisSeries: exponent beyond truncation order");
        if (n < 0) throw Error("AxisSeries: negative exponent");
        if (c.is_zero())
            coeffs_.erase(n);
        else
            coeffs_[n] = c;
    }

    AxisPoly coeff(long n) const {
        auto it = coeffs_.find(n);
        return it == coeffs_.end() ? AxisPoly() : it->second;
    }

    bool is_identically_zero() const { return coeffs_.empty(); }

    /// d/dt of poly_n(pi,t) e^{-n pi t} termwise:
    /// new poly_n = dT(poly_n) - n * p * poly_n.
    AxisSeries diff_t() const {
        AxisSeries r(order_);
        for (const auto& [n, c] : coeffs_) {
            AxisPoly d = c.d_second() - c.times_first().scaled(Rational(n));
            if (!d.is_zero()) r.coeffs_[n] = d;
        }
        return r;
    }

    friend AxisSeries operator-(const AxisSeries& a, const AxisSeries& b) {
        AxisSeries r(std::min(a.order_, b.order_));
        for (const auto& [n, c] : a.coeffs_)
            if (n < r.order_) r.coeffs_[n] = c;
        for (const auto& [n, c] : b.coeffs_) {
            if (n >= r.order_) continue;
            AxisPoly d = r.coeff(n) - c;
            if (d.is_zero())
                r.coeffs_.erase(n);
            else
                r.coeffs_[n] = d;
        }
        return r;
    }

    friend bool operator==(const AxisSeries& a, const AxisSeries& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

private:
    long order_;
    std::map<long, AxisPoly> coeffs_;
};

/// Axis restriction z = it: p stays, v -> -T.
inline AxisSeries to_axis(const QSeries& s) {
    AxisSeries r(s.order());
    for (const auto& [n, c] : s.coeffs()) {
        if (n < 0) throw Error("to_axis: Laurent series not supported");
        r.set_coeff(n, c.second_negated());
    }
    return r;
}

/// Rigorous bound on the tail sum_{n > N} C (n+1)^s x^n for 0 < x <= x_hi.
/// Consecutive majorant terms shrink by at least
///   rho = x_hi ((N+3)/(N+2))^s        (for n >= N+1),
/// so the tail is at most the first omitted term over (1 - rho):
///   C (N+2)^s x_hi^{N+1} / (1 - rho).
inline Rational tail_bound(const Majorant& m, long N, const Rational& x_hi) {
    if (N < 0) throw Error("tail_bound: N must be >= 0");
    if (x_hi.sign() <= 0) throw Error("tail_bound: x_hi must be positive");
    Rational rho = x_hi * (Rational(N + 3) / Rational(N + 2)).pow(m.s);
    if (rho >= Rational(1))
        throw RhoNotLessThanOneError("tail_bound: rho >= 1, increase truncation order N");
    Rational first = m.C * Rational(N + 2).pow(m.s) * x_hi.pow(N + 1);
    return first / (Rational(1) - rho);
}

} // namespace magicineq
