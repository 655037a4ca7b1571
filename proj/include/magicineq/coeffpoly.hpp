#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "magicineq/errors.hpp"
#include "magicineq/interval.hpp"
#include "magicineq/rational.hpp"

namespace magicineq {

/// Bivariate polynomial with rational coefficients over a symbol pair.
/// Two readings are used throughout the library:
///   * q-series coefficients: (p, v) with p -> pi and v -> iz, so that on
///     the imaginary axis z = it the substitution is p -> pi, v -> -t and
///     every value is real ("480 pi i z + 960" is stored as 480*p*v + 960);
///   * axis coefficients: (p, T) with p -> pi, T -> t.
/// Keys are (deg_first, deg_second); zero terms are never stored.
class BiPoly {
public:
    using Key = std::pair<int, int>;

    BiPoly() = default;

    static BiPoly constant(const Rational& r) { return monomial(0, 0, r); }

    static BiPoly monomial(int deg_first, int deg_second, const Rational& r) {
        BiPoly p;
        if (deg_first < 0 || deg_second < 0) throw Error("BiPoly: negative degree");
        if (!r.is_zero()) p.terms_[{deg_first, deg_second}] = r;
        return p;
    }

    const std::map<Key, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw Error("BiPoly: not a constant");
        return terms_.begin()->second;
    }

    Rational coeff(int deg_first, int deg_second) const {
        auto it = terms_.find({deg_first, deg_second});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    int degree_first() const {
        int d = 0;
        for (const auto& [k, r] : terms_) d = std::max(d, k.first);
        return d;
    }

    int degree_second() const {
        int d = 0;
        for (const auto& [k, r] : terms_) d = std::max(d, k.second);
        return d;
    }

    BiPoly operator-() const {
        BiPoly r;
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        BiPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }

    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        BiPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
        return r;
    }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
        return r;
    }

    BiPoly scaled(const Rational& r) const {
        BiPoly out;
        if (r.is_zero()) return out;
        for (const auto& [k, c] : terms_) out.terms_[k] = c * r;
        return out;
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    /// Substitute second variable -> minus itself (v -> -T on the axis).
    BiPoly second_negated() const {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            r.terms_[k] = (k.second % 2 == 0) ? c : -c;
        return r;
    }

    /// Partial derivative with respect to the second variable.
    BiPoly d_second() const {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            if (k.second > 0) r.add_term({k.first, k.second - 1}, c * Rational(k.second));
        return r;
    }

    /// Multiply by the first variable (used by the axis derivative rule).
    BiPoly times_first() const {
        BiPoly r;
        for (const auto& [k, c] : terms_) r.terms_[{k.first + 1, k.second}] = c;
        return r;
    }

    /// Interval evaluation: encloses the exact value for any reals within
    /// the argument intervals.
    Interval eval(const Interval& first, const Interval& second) const {
        mpfr_prec_t prec = std::max(first.precision(), second.precision());
        Interval acc(prec);
        for (const auto& [k, c] : terms_) {
            Interval t = Interval::from_rational(c, prec);
            if (k.first > 0) t = t * first.pow_ui(static_cast<unsigned long>(k.first));
            if (k.second > 0) t = t * second.pow_ui(static_cast<unsigned long>(k.second));
            acc += t;
        }
        return acc;
    }

    /// Exact rational evaluation (test oracle path).
    Rational eval_rational(const Rational& first, const Rational& second) const {
        Rational acc(0);
        for (const auto& [k, c] : terms_)
            acc += c * first.pow(k.first) * second.pow(k.second);
        return acc;
    }

    /// Rendering with explicit symbol names, highest second-degree first,
    /// e.g. "28800*p^2*v^2 + 123840*p*v + 123840".
    std::string str(const char* first_sym = "p", const char* second_sym = "v") const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Key, Rational>> ordered(terms_.begin(), terms_.end());
        std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
            if (a.first.second != b.first.second) return a.first.second > b.first.second;
            return a.first.first > b.first.first;
        });
        std::ostringstream os;
        bool leading = true;
        for (const auto& [k, c] : ordered) {
            Rational a = c;
            if (!leading) {
                os << (a.sign() < 0 ? " - " : " + ");
                if (a.sign() < 0) a = -a;
            }
            leading = false;
            bool has_sym = k.first > 0 || k.second > 0;
            if (!has_sym || a != Rational(1)) {
                os << a.str();
                if (has_sym) os << "*";
            }
            if (k.first > 0) {
                os << first_sym;
                if (k.first > 1) os << "^" << k.first;
                if (k.second > 0) os << "*";
            }
            if (k.second > 0) {
                os << second_sym;
                if (k.second > 1) os << "^" << k.second;
            }
        }
        return os.str();
    }

    /// Rendering in the z convention used for q-series coefficients:
    /// p^a v^b with v = iz prints as pi^a (i z)^b, folding i^2 = -1 into
    /// the sign, e.g. 28800*p^2*v^2 -> "-28800*pi^2*z^2".
    std::string str_z_convention() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Key, Rational>> ordered(terms_.begin(), terms_.end());
        std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
            if (a.first.second != b.first.second) return a.first.second > b.first.second;
            return a.first.first > b.first.first;
        });
        std::ostringstream os;
        bool leading = true;
        for (const auto& [k, c] : ordered) {
            if (k.second > 2) throw Error("BiPoly: z rendering limited to degree 2 in v");
            Rational a = (k.second == 2) ? -c : c;
            if (!leading) {
                os << (a.sign() < 0 ? " - " : " + ");
                if (a.sign() < 0) a = -a;
            } else if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
            leading = false;
            bool has_sym = k.first > 0 || k.second > 0;
            if (!has_sym || a != Rational(1)) {
                os << a.str();
                if (has_sym) os << "*";
            }
            if (k.first > 0) {
                os << "pi";
                if (k.first > 1) os << "^" << k.first;
                if (k.second > 0) os << "*";
            }
            if (k.second == 1) os << "i*z";
            if (k.second == 2) os << "z^2";
        }
        return os.str();
    }

private:
    void add_term(const Key& k, const Rational& c) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[k] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    std::map<Key, Rational> terms_;
};

/// q-side coefficient polynomial in (p, v); degrees capped at 2 by QSeries.
using CoeffPoly = BiPoly;
/// axis-side coefficient polynomial in (p, T); the t-derivative may raise
/// the p degree above 2, so no cap applies.
using AxisPoly = BiPoly;

/// Encloses poly(p, v) for any reals inside the argument intervals.
inline Interval eval_poly_interval(const CoeffPoly& poly, const Interval& p, const Interval& v) {
    return poly.eval(p, v);
}

} // namespace magicineq
