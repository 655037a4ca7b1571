#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "magicineq/coeffpoly.hpp"
#include "magicineq/errors.hpp"
#include "magicineq/qseries.hpp"
#include "magicineq/rational.hpp"

namespace magicineq {

/// Registry keys for every named series of the construction, plus the
/// intermediate products the axis evaluator needs with their own
/// majorants. Theta2 itself is never materialized (fractional exponents);
/// it only enters through its fourth power.
enum class FormId {
    E2,
    E4,
    E6,
    Theta3,
    Theta4,
    Theta2Pow4,       // X = theta2^4 = 16 q (sum q^{n(n+1)})^4
    Theta3Pow4,       // Z
    Theta4Pow4,       // W
    YCombination,     // Y = 2Z - X = theta3^4 + theta4^4
    DeltaPoly,        // E4^3 - E6^2
    DeltaProd,        // 1728 q^2 prod (1 - q^{2n})^24
    Phi0Num,          // 1728 (E2 E4 - E6)^2
    PsiI,             // 128 [ (Z+W)/X^2 + (W-X)/Z^2 ]  (Laurent, starts at q^-2)
    FSmall,           // f = (pi^2/18) (E2 E4 - E6)^2
    FTilde,           // -(pi^2/18) S z^2 + (2 pi i/3) E4 (E2E4-E6) z + 2 E4^2
    GSmall,           // g = X^2 (Z^3 + X Z^2 + X W^2 - W^3)
    GTilde,           // W^2 (Z^3 + W Z^2 + X^2 W - X^3)
    GammaFn,          // X^2 Z^3 + X^3 Z^2
    HFn,              // (Gcap(z) - Gcap(z+1))/2
    HTheta,           // (1/2) q^-2 (X^2 Z^3 + X^3 Z^2 + X^3 W^2 - X^2 W^3)
    FCap,             // -(ftilde - 2)/q^2
    GCap,             // -(gtilde - 2)/q^2
    F1,               // finite part of the Fcap split
    F2,
    F3,
    // intermediates
    E2E4MinusE6,
    E2E4MinusE6Sq,    // S = (E2 E4 - E6)^2
    E4TimesE2E4MinusE6,
    E4Sq,
    E4SqMinus1,
    E2E4MinusE6SqDiv2,     // S / q^2
    E4SqMinus1Div2,        // (E4^2 - 1) / q^2
    E4TimesE2E4MinusE6Div2 // E4 (E2 E4 - E6) / q^2
};

inline const char* form_name(FormId id) {
    switch (id) {
        case FormId::E2: return "E2";
        case FormId::E4: return "E4";
        case FormId::E6: return "E6";
        case FormId::Theta3: return "THETA3";
        case FormId::Theta4: return "THETA4";
        case FormId::Theta2Pow4: return "THETA2_4";
        case FormId::Theta3Pow4: return "Z";
        case FormId::Theta4Pow4: return "W";
        case FormId::YCombination: return "Y";
        case FormId::DeltaPoly: return "DELTA_POLY";
        case FormId::DeltaProd: return "DELTA_PROD";
        case FormId::Phi0Num: return "PHI0_NUM";
        case FormId::PsiI: return "PSI_I";
        case FormId::FSmall: return "F";
        case FormId::FTilde: return "F_TILDE";
        case FormId::GSmall: return "G";
        case FormId::GTilde: return "G_TILDE";
        case FormId::GammaFn: return "GAMMA_FN";
        case FormId::HFn: return "H_FN";
        case FormId::HTheta: return "H_THETA";
        case FormId::FCap: return "F_CAP";
        case FormId::GCap: return "G_CAP";
        case FormId::F1: return "F1";
        case FormId::F2: return "F2";
        case FormId::F3: return "F3";
        case FormId::E2E4MinusE6: return "E2E4_MINUS_E6";
        case FormId::E2E4MinusE6Sq: return "E2E4_MINUS_E6_SQ";
        case FormId::E4TimesE2E4MinusE6: return "E4_E2E4_MINUS_E6";
        case FormId::E4Sq: return "E4_SQ";
        case FormId::E4SqMinus1: return "E4_SQ_MINUS_1";
        case FormId::E2E4MinusE6SqDiv2: return "E2E4_MINUS_E6_SQ_DIV_Q2";
        case FormId::E4SqMinus1Div2: return "E4_SQ_MINUS_1_DIV_Q2";
        case FormId::E4TimesE2E4MinusE6Div2: return "E4_E2E4_MINUS_E6_DIV_Q2";
    }
    return "?";
}

/// Single-coefficient perturbation of a base series, injected by tests to
/// confirm that the suites detect corruption. The majorant is kept without
/// re-verification so the corrupted series still flows through the checks.
struct Mutation {
    FormId target;
    long exponent;
    Rational delta;
};

/// Divisor-power sums sigma_k(n) for n = 1..limit by sieving multiples.
inline std::vector<mpz_class> divisor_power_sums(long limit, unsigned k) {
    std::vector<mpz_class> sig(static_cast<size_t>(limit + 1), mpz_class(0));
    for (long d = 1; d <= limit; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k);
        for (long m = d; m <= limit; m += d) sig[static_cast<size_t>(m)] += dk;
    }
    return sig;
}

/// Eisenstein series (q = e^{pi i z}, so the expansions run over q^{2n}):
///   E2 = 1 - 24 sum sigma_1(n) q^{2n}
///   E4 = 1 + 240 sum sigma_3(n) q^{2n}
///   E6 = 1 - 504 sum sigma_5(n) q^{2n}
inline QSeries eisenstein(int k, long order) {
    if (order < 2) throw Error("eisenstein: order must be >= 2");
    long scale;
    unsigned power;
    Rational maj_c;
    int maj_s;
    switch (k) {
        case 2: scale = -24; power = 1; maj_c = Rational(24); maj_s = 2; break;
        case 4: scale = 240; power = 3; maj_c = Rational(240); maj_s = 4; break;
        case 6: scale = -504; power = 5; maj_c = Rational(504); maj_s = 6; break;
        default: throw Error("eisenstein: k must be 2, 4 or 6");
    }
    long limit = (order - 1) / 2;
    auto sig = divisor_power_sums(limit, power);
    QSeries s(order);
    s.set_coeff(0, CoeffPoly::constant(Rational(1)));
    for (long n = 1; n <= limit; ++n) {
        mpz_class coeff = mpz_class(scale) * sig[static_cast<size_t>(n)];
        s.set_coeff(2 * n, CoeffPoly::constant(Rational(coeff)));
    }
    return s.with_majorant(maj_c, maj_s);
}

enum class ThetaKind { Theta3, Theta4, Theta2Pow4 };

/// Thetanull series:
///   theta3 = sum q^{n^2},  theta4 = sum (-1)^n q^{n^2},
///   theta2^4 = 16 q (sum_{n>=0} q^{n(n+1)})^4   (integer exponents only).
inline QSeries theta(ThetaKind kind, long order) {
    if (order < 2) throw Error("theta: order must be >= 2");
    if (kind == ThetaKind::Theta2Pow4) {
        QSeries core(order);
        for (long n = 0; n * (n + 1) < order; ++n)
            core.set_coeff(n * (n + 1), core.coeff(n * (n + 1)) + CoeffPoly::constant(Rational(1)));
        QSeries x = core.pow(4) * QSeries::monomial(1, Rational(16), order);
        return x.with_majorant(Rational(16), 3);
    }
    QSeries s(order);
    s.set_coeff(0, CoeffPoly::constant(Rational(1)));
    for (long n = 1; n * n < order; ++n) {
        Rational c = (kind == ThetaKind::Theta4 && n % 2 == 1) ? Rational(-2) : Rational(2);
        s.set_coeff(n * n, CoeffPoly::constant(c));
    }
    return s.with_majorant(Rational(2), 0);
}

/// The named coefficient sequences extracted from the built series.
/// `a` stores the rational multiplier of pi^2 in the expansion of f;
/// alpha/beta/delta are indexed by n with the exponent being q^{2n}.
struct CoeffSequences {
    long order = 0;
    std::vector<Rational> a;       // f    = sum a_n pi^2 q^n      (n >= 4)
    std::vector<Rational> b;       // g    = sum b_n q^n           (n >= 3)
    std::vector<CoeffPoly> c;      // ftilde = sum c_n(z) q^n
    std::vector<Rational> d;       // gtilde = sum d_n q^n
    std::vector<Rational> alpha;   // (E2E4-E6)^2 = sum alpha_n q^{2n}
    std::vector<Rational> beta;    // E4^2 - 1    = sum beta_n q^{2n}
    std::vector<Rational> delta;   // E4(E2E4-E6) = sum delta_n q^{2n}
};

/// Builds and memoizes every named series at a fixed truncation order.
/// Construction is deterministic; the memo is guarded so concurrent
/// readers are safe (entries are immutable once built).
class FormRegistry {
public:
    explicit FormRegistry(long order, std::vector<Mutation> mutations = {})
        : order_(order), mutations_(std::move(mutations)) {
        if (order < 16) throw Error("FormRegistry: order must be >= 16");
    }

    long order() const { return order_; }

    const QSeries& get(FormId id) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto it = cache_.find(id);
        if (it != cache_.end()) return it->second;
        QSeries built = build(id);
        // propagated majorants must hold coefficientwise; skipped only for
        // deliberately corrupted fixtures
        if (mutations_.empty()) built.verify_majorant();
        auto [pos, inserted] = cache_.emplace(id, std::move(built));
        (void)inserted;
        return pos->second;
    }

    CoeffSequences sequences() const {
        CoeffSequences out;
        out.order = order_;
        const QSeries& f = get(FormId::FSmall);
        const QSeries& g = get(FormId::GSmall);
        const QSeries& ft = get(FormId::FTilde);
        const QSeries& gt = get(FormId::GTilde);
        const QSeries& sq = get(FormId::E2E4MinusE6Sq);
        const QSeries& e4sqm1 = get(FormId::E4SqMinus1);
        const QSeries& e4d = get(FormId::E4TimesE2E4MinusE6);

        out.a.resize(static_cast<size_t>(order_), Rational(0));
        out.b.resize(static_cast<size_t>(order_), Rational(0));
        out.c.resize(static_cast<size_t>(order_));
        out.d.resize(static_cast<size_t>(order_), Rational(0));
        for (long n = 0; n < order_; ++n) {
            CoeffPoly fc = f.coeff(n);
            if (!fc.is_zero()) {
                // f's coefficients are pure pi^2 monomials
                if (fc != CoeffPoly::monomial(2, 0, fc.coeff(2, 0)))
                    throw Error("sequences: unexpected shape in f coefficient");
                out.a[static_cast<size_t>(n)] = fc.coeff(2, 0);
            }
            out.b[static_cast<size_t>(n)] = g.rational_coeff(n);
            out.c[static_cast<size_t>(n)] = ft.coeff(n);
            out.d[static_cast<size_t>(n)] = gt.rational_coeff(n);
        }
        long half = (order_ + 1) / 2;
        out.alpha.resize(static_cast<size_t>(half), Rational(0));
        out.beta.resize(static_cast<size_t>(half), Rational(0));
        out.delta.resize(static_cast<size_t>(half), Rational(0));
        for (long n = 0; 2 * n < order_; ++n) {
            out.alpha[static_cast<size_t>(n)] = sq.rational_coeff(2 * n);
            out.beta[static_cast<size_t>(n)] = e4sqm1.rational_coeff(2 * n);
            out.delta[static_cast<size_t>(n)] = e4d.rational_coeff(2 * n);
        }
        return out;
    }

private:
    QSeries apply_mutations(FormId id, QSeries s) const {
        for (const auto& m : mutations_) {
            if (m.target != id) continue;
            if (m.exponent >= s.order()) throw Error("Mutation: exponent beyond order");
            auto keep = s.majorant();
            s.set_coeff(m.exponent, s.coeff(m.exponent) + CoeffPoly::constant(m.delta));
            s = s.with_majorant_unchecked(keep);
        }
        return s;
    }

    QSeries build(FormId id) const {
        const long N = order_;
        switch (id) {
            case FormId::E2: return apply_mutations(id, eisenstein(2, N));
            case FormId::E4: return apply_mutations(id, eisenstein(4, N));
            case FormId::E6: return apply_mutations(id, eisenstein(6, N));
            case FormId::Theta3: return apply_mutations(id, theta(ThetaKind::Theta3, N));
            case FormId::Theta4: return apply_mutations(id, theta(ThetaKind::Theta4, N));
            case FormId::Theta2Pow4: return apply_mutations(id, theta(ThetaKind::Theta2Pow4, N));
            case FormId::Theta3Pow4: return get(FormId::Theta3).pow(4);
            case FormId::Theta4Pow4: return get(FormId::Theta4).pow(4);
            case FormId::YCombination:
                return get(FormId::Theta3Pow4).scaled(Rational(2)) - get(FormId::Theta2Pow4);
            case FormId::DeltaPoly:
                return get(FormId::E4).pow(3) - get(FormId::E6).pow(2);
            case FormId::DeltaProd: {
                QSeries acc = QSeries::one(N);
                for (long m = 1; 2 * m < N; ++m) {
                    QSeries factor(N);
                    for (long k = 0; k <= 24 && 2 * m * k < N; ++k) {
                        mpz_class binom;
                        mpz_bin_uiui(binom.get_mpz_t(), 24, static_cast<unsigned long>(k));
                        Rational coef = Rational(binom);
                        if (k % 2 == 1) coef = -coef;
                        factor.set_coeff(2 * m * k, CoeffPoly::constant(coef));
                    }
                    acc = acc * factor;
                }
                return acc * QSeries::monomial(2, Rational(1728), N);
            }
            case FormId::Phi0Num: {
                QSeries s = get(FormId::E2E4MinusE6Sq).scaled(Rational(1728));
                return apply_mutations(id, s);
            }
            case FormId::PsiI: {
                const QSeries& x = get(FormId::Theta2Pow4);
                const QSeries& z = get(FormId::Theta3Pow4);
                const QSeries& w = get(FormId::Theta4Pow4);
                QSeries part_a = div(z + w, x.pow(2));
                QSeries part_b = div(w - x, z.pow(2));
                return (part_a + part_b).scaled(Rational(128));
            }
            case FormId::FSmall:
                return get(FormId::E2E4MinusE6Sq).scaled_poly(CoeffPoly::monomial(2, 0, Rational(1, 18)));
            case FormId::FTilde: {
                // -(pi^2/18) S z^2 + (2 pi i / 3) E4 (E2E4 - E6) z + 2 E4^2
                // with v = iz: z^2 = -v^2 and pi i z = p v, so the three
                // multipliers are (1/18) p^2 v^2, (2/3) p v, and 2.
                QSeries t1 = get(FormId::E2E4MinusE6Sq)
                                 .scaled_poly(CoeffPoly::monomial(2, 2, Rational(1, 18)));
                QSeries t2 = get(FormId::E4TimesE2E4MinusE6)
                                 .scaled_poly(CoeffPoly::monomial(1, 1, Rational(2, 3)));
                QSeries t3 = get(FormId::E4Sq).scaled(Rational(2));
                return t1 + t2 + t3;
            }
            case FormId::GSmall: {
                const QSeries& x = get(FormId::Theta2Pow4);
                const QSeries& z = get(FormId::Theta3Pow4);
                const QSeries& w = get(FormId::Theta4Pow4);
                QSeries bracket = z.pow(3) + x * z.pow(2) + x * w.pow(2) - w.pow(3);
                return x.pow(2) * bracket;
            }
            case FormId::GTilde: {
                const QSeries& x = get(FormId::Theta2Pow4);
                const QSeries& z = get(FormId::Theta3Pow4);
                const QSeries& w = get(FormId::Theta4Pow4);
                QSeries bracket = z.pow(3) + w * z.pow(2) + x.pow(2) * w - x.pow(3);
                return w.pow(2) * bracket;
            }
            case FormId::GammaFn: {
                const QSeries& x = get(FormId::Theta2Pow4);
                const QSeries& z = get(FormId::Theta3Pow4);
                return x.pow(2) * z.pow(3) + x.pow(3) * z.pow(2);
            }
            case FormId::HFn: {
                const QSeries& gcap = get(FormId::GCap);
                return (gcap - gcap.half_period_shift()).scaled(Rational(1, 2));
            }
            case FormId::HTheta: {
                const QSeries& x = get(FormId::Theta2Pow4);
                const QSeries& z = get(FormId::Theta3Pow4);
                const QSeries& w = get(FormId::Theta4Pow4);
                QSeries poly = x.pow(2) * (z.pow(3) - w.pow(3)) + x.pow(3) * (z.pow(2) + w.pow(2));
                return poly.shift_down(2).scaled(Rational(1, 2));
            }
            case FormId::FCap:
                return (QSeries::constant(Rational(2), N) - get(FormId::FTilde)).shift_down(2);
            case FormId::GCap: {
                QSeries two = QSeries::constant(Rational(2), N).with_majorant(Rational(2), 0);
                return (two - get(FormId::GTilde)).shift_down(2);
            }
            case FormId::F1: {
                QSeries s(N);
                s.set_coeff(0, CoeffPoly::monomial(1, 1, Rational(-480)));
                CoeffPoly c2 = CoeffPoly::monomial(2, 2, Rational(-28800)) +
                               CoeffPoly::monomial(1, 1, Rational(-123840)) +
                               CoeffPoly::constant(Rational(-123840));
                s.set_coeff(2, c2);
                return s;
            }
            case FormId::F2: {
                QSeries t1 = get(FormId::E2E4MinusE6SqDiv2)
                                 .scaled_poly(CoeffPoly::monomial(2, 2, Rational(-1, 18)));
                QSeries t2 = get(FormId::E4SqMinus1Div2).scaled(Rational(-2));
                CoeffPoly comp = CoeffPoly::monomial(2, 2, Rational(28800)) +
                                 CoeffPoly::constant(Rational(123840));
                return t1 + t2 + QSeries::monomial(2, comp, N);
            }
            case FormId::F3: {
                QSeries t1 = get(FormId::E4TimesE2E4MinusE6Div2)
                                 .scaled_poly(CoeffPoly::monomial(1, 1, Rational(-2, 3)));
                QSeries s(N);
                s.set_coeff(0, CoeffPoly::monomial(1, 1, Rational(480)));
                s.set_coeff(2, CoeffPoly::monomial(1, 1, Rational(123840)));
                return t1 + s;
            }
            case FormId::E2E4MinusE6:
                return get(FormId::E2) * get(FormId::E4) - get(FormId::E6);
            case FormId::E2E4MinusE6Sq:
                return get(FormId::E2E4MinusE6).pow(2);
            case FormId::E4TimesE2E4MinusE6:
                return get(FormId::E4) * get(FormId::E2E4MinusE6);
            case FormId::E4Sq:
                return get(FormId::E4).pow(2);
            case FormId::E4SqMinus1: {
                QSeries one = QSeries::one(N).with_majorant(Rational(1), 0);
                return get(FormId::E4Sq) - one;
            }
            case FormId::E2E4MinusE6SqDiv2:
                return get(FormId::E2E4MinusE6Sq).shift_down(2);
            case FormId::E4SqMinus1Div2:
                return get(FormId::E4SqMinus1).shift_down(2);
            case FormId::E4TimesE2E4MinusE6Div2:
                return get(FormId::E4TimesE2E4MinusE6).shift_down(2);
        }
        throw Error("FormRegistry: unknown id");
    }

    long order_;
    std::vector<Mutation> mutations_;
    mutable std::recursive_mutex mu_;
    mutable std::map<FormId, QSeries> cache_;
};

/// Registries memoized per truncation order, shared by the evaluator's
/// escalation policy so repeated orders are built once.
class FormCache {
public:
    explicit FormCache(std::vector<Mutation> mutations = {}) : mutations_(std::move(mutations)) {}

    const FormRegistry& at(long order) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = regs_.find(order);
        if (it == regs_.end())
            it = regs_.emplace(order, std::make_unique<FormRegistry>(order, mutations_)).first;
        return *it->second;
    }

private:
    std::vector<Mutation> mutations_;
    std::mutex mu_;
    std::map<long, std::unique_ptr<FormRegistry>> regs_;
};

} // namespace magicineq
