#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "magicineq/certificate.hpp"
#include "magicineq/constants.hpp"
#include "magicineq/evaluator.hpp"
#include "magicineq/forms.hpp"
#include "magicineq/qseries.hpp"

namespace magicineq {

namespace detail {

inline Certificate exact_certificate(const std::string& id, const QSeries& residual, long order) {
    Certificate c;
    c.id = id;
    c.order = order;
    if (residual.is_identically_zero()) {
        c.status = Status::Pass;
        c.evidence = "residual 0 through q^" + std::to_string(residual.order() - 1);
    } else {
        c.status = Status::Fail;
        c.evidence = "residual " + residual.describe_residual();
    }
    return c;
}

/// Runs one residual computation, converting construction breakage into a
/// fail certificate: when inputs are corrupted, downstream builds that rely
/// on the very identities under test (e.g. exact divisibility by q^2) can
/// legitimately blow up, and that is evidence of falsity, not a crash.
template <class MakeResidual>
Certificate exact_check(const std::string& id, long order, MakeResidual&& make) {
    try {
        return exact_certificate(id, make(), order);
    } catch (const Error& e) {
        Certificate c;
        c.id = id;
        c.order = order;
        c.status = Status::Fail;
        c.evidence = std::string("construction failed: ") + e.what();
        return c;
    }
}

/// Escalates precision (doubling, cap 1024 bits) until the decision
/// closure reports pass or fail.
template <class Decide>
Certificate escalate_precision(const std::string& id, mpfr_prec_t precision, Decide&& decide) {
    mpfr_prec_t p = precision;
    for (;;) {
        Certificate c = decide(p);
        c.id = id;
        c.precision = p;
        if (c.status != Status::Inconclusive || p >= 1024) return c;
        p = std::min<mpfr_prec_t>(p * 2, 1024);
    }
}

} // namespace detail

/// The eleven exact identity checks, each a residual-zero test through the
/// registry order. Failures are certificates, not errors.
inline std::vector<Certificate> check_identities(const FormRegistry& reg) {
    const long N = reg.order();
    std::vector<Certificate> out;
    const QSeries& x = reg.get(FormId::Theta2Pow4);
    const QSeries& z = reg.get(FormId::Theta3Pow4);
    const QSeries& w = reg.get(FormId::Theta4Pow4);

    // theta2^4 + theta4^4 = theta3^4
    out.push_back(detail::exact_check("jacobi-theta", N, [&] { return x + w - z; }));

    // E4^3 - E6^2 = 1728 q^2 prod (1 - q^{2n})^24
    out.push_back(detail::exact_check("delta-product", N, [&] {
        return reg.get(FormId::DeltaPoly) - reg.get(FormId::DeltaProd);
    }));

    // E2 E4 - E6 = 720 sum n sigma_3(n) q^{2n}
    out.push_back(detail::exact_check("eisenstein-e4-derivative", N, [&] {
        long limit = (N - 1) / 2;
        auto sig3 = divisor_power_sums(limit, 3);
        QSeries rhs(N);
        for (long n = 1; n <= limit; ++n) {
            mpz_class coeff = mpz_class(720) * n * sig3[static_cast<size_t>(n)];
            rhs.set_coeff(2 * n, CoeffPoly::constant(Rational(coeff)));
        }
        return reg.get(FormId::E2E4MinusE6) - rhs;
    }));

    // E4^3 - E6^2 = (27/4) (theta2 theta3 theta4)^8
    out.push_back(detail::exact_check("delta-theta-product", N, [&] {
        return reg.get(FormId::DeltaPoly) -
               (x.pow(2) * z.pow(2) * w.pow(2)).scaled(Rational(27, 4));
    }));

    // E4 = (theta2^8 + theta3^8 + theta4^8)/2
    out.push_back(detail::exact_check("e4-theta-eighth-powers", N, [&] {
        return reg.get(FormId::E4) - (x.pow(2) + z.pow(2) + w.pow(2)).scaled(Rational(1, 2));
    }));

    // g(z) = gamma(z) - gamma(z+1)
    out.push_back(detail::exact_check("g-gamma-split", N, [&] {
        const QSeries& gam = reg.get(FormId::GammaFn);
        return reg.get(FormId::GSmall) - (gam - gam.half_period_shift());
    }));

    // gtilde(z+1) = Z^3 X^2 + Z^2 X^3 + Z^3 W^2 + Z^2 W^3
    out.push_back(detail::exact_check("gtilde-half-period", N, [&] {
        QSeries rhs = z.pow(3) * x.pow(2) + z.pow(2) * x.pow(3) + z.pow(3) * w.pow(2) +
                      z.pow(2) * w.pow(3);
        return reg.get(FormId::GTilde).half_period_shift() - rhs;
    }));

    // 16 gtilde(z+1) = 6 X^5 + 15 X^4 Y + 10 X^3 Y^2 + Y^5 with Y = 2Z - X
    out.push_back(detail::exact_check("gtilde-quintic", N, [&] {
        const QSeries& y = reg.get(FormId::YCombination);
        QSeries rhs = x.pow(5).scaled(Rational(6)) + (x.pow(4) * y).scaled(Rational(15)) +
                      (x.pow(3) * y.pow(2)).scaled(Rational(10)) + y.pow(5);
        return reg.get(FormId::GTilde).half_period_shift().scaled(Rational(16)) - rhs;
    }));

    // psi_I factorization: (2Z-X) Z^2 + (Z-2X) X^2 = (Z-X)(2Z^2 + XZ + 2X^2),
    // together with W = Z - X (Jacobi) which backs the substitution.
    out.push_back(detail::exact_check("psi-lambda-factorization", N, [&] {
        QSeries lhs =
            (z.scaled(Rational(2)) - x) * z.pow(2) + (z - x.scaled(Rational(2))) * x.pow(2);
        QSeries rhs =
            (z - x) * (z.pow(2).scaled(Rational(2)) + x * z + x.pow(2).scaled(Rational(2)));
        QSeries r1 = lhs - rhs;
        QSeries r2 = w - (z - x);
        return r1.is_identically_zero() ? r2 : r1;
    }));

    // 2 q^2 H matches the theta closed form
    out.push_back(detail::exact_check("h-theta-closed-form", N, [&] {
        return reg.get(FormId::HFn) - reg.get(FormId::HTheta);
    }));

    // Fcap = F1 + F2 + F3, exact in the (p, v) coefficient ring
    out.push_back(detail::exact_check("fcap-three-part-split", N, [&] {
        return reg.get(FormId::FCap) -
               (reg.get(FormId::F1) + reg.get(FormId::F2) + reg.get(FormId::F3));
    }));

    return out;
}

/// Finite-order sign lemmas: every statement is checked for all computed
/// indices below the registry order, and reported as exactly that.
inline std::vector<Certificate> check_signs(const FormRegistry& reg) {
    const long N = reg.order();
    CoeffSequences seq = reg.sequences();
    std::vector<Certificate> out;

    auto nonneg = [&](const std::string& id, const std::vector<Rational>& v, const char* label) {
        Certificate c;
        c.id = id;
        c.order = N;
        c.status = Status::Pass;
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i].sign() < 0) {
                c.status = Status::Fail;
                c.evidence = std::string(label) + "[" + std::to_string(i) + "] = " + v[i].str() + " < 0";
                return c;
            }
        }
        c.evidence = std::string(label) + "_n >= 0 for all computed n < " + std::to_string(v.size());
        return c;
    };

    out.push_back(nonneg("signs-a-nonneg", seq.a, "a"));
    out.push_back(nonneg("signs-b-nonneg", seq.b, "b"));
    out.push_back(nonneg("signs-alpha-nonneg", seq.alpha, "alpha"));
    out.push_back(nonneg("signs-beta-nonneg", seq.beta, "beta"));
    out.push_back(nonneg("signs-delta-nonneg", seq.delta, "delta"));

    {
        Certificate c;
        c.id = "signs-d-alternating";
        c.order = N;
        c.status = Status::Pass;
        for (size_t n = 0; n < seq.d.size(); ++n) {
            Rational signed_d = (n % 2 == 0) ? seq.d[n] : -seq.d[n];
            if (signed_d.sign() < 0) {
                c.status = Status::Fail;
                c.evidence = "(-1)^n d_n < 0 at n = " + std::to_string(n) + ", d_n = " + seq.d[n].str();
                break;
            }
        }
        if (c.status == Status::Pass)
            c.evidence = "(-1)^n d_n >= 0 for all computed n < " + std::to_string(seq.d.size());
        out.push_back(c);
    }

    return out;
}

/// Exact cancellation bookkeeping behind the F2/F3 split: the compensating
/// polynomial terms must remove precisely the n=2 summand of F2 and the
/// n=1,2 summands of F3, which pins alpha_2, beta_2, delta_1, delta_2.
inline Certificate check_cancellations(const FormRegistry& reg) {
    CoeffSequences seq = reg.sequences();
    Certificate c;
    c.id = "split-cancellations";
    c.order = reg.order();
    std::ostringstream ev;

    bool ok = true;
    auto expect = [&](const char* label, const Rational& got, long want) {
        if (got != Rational(want)) {
            ok = false;
            ev << label << " = " << got.str() << " (expected " << want << "); ";
        }
    };
    // (pi^2/18) alpha_2 = 28800 pi^2  and  2 beta_2 = 123840
    expect("alpha_2", seq.alpha[2], 518400);
    expect("beta_2", seq.beta[2], 61920);
    // (2/3) delta_1 = 480  and  (2/3) delta_2 = 123840
    expect("delta_1", seq.delta[1], 720);
    expect("delta_2", seq.delta[2], 185760);
    if (seq.alpha[2] * Rational(1, 18) != Rational(28800)) ok = false;
    if (seq.beta[2] * Rational(2) != Rational(123840)) ok = false;
    if (seq.delta[1] * Rational(2, 3) != Rational(480)) ok = false;
    if (seq.delta[2] * Rational(2, 3) != Rational(123840)) ok = false;

    // structural: the cancelled coefficients really vanish in F2 and F3
    const QSeries& f2 = reg.get(FormId::F2);
    const QSeries& f3 = reg.get(FormId::F3);
    if (!f2.coeff(2).is_zero()) {
        ok = false;
        ev << "F2 q^2 coefficient = " << f2.coeff(2).str() << "; ";
    }
    if (!f3.coeff(0).is_zero() || !f3.coeff(2).is_zero()) {
        ok = false;
        ev << "F3 low coefficients nonzero; ";
    }

    c.status = ok ? Status::Pass : Status::Fail;
    c.evidence = ok ? "alpha_2/18 = 28800, 2 beta_2 = 123840, (2/3) delta_1 = 480, "
                      "(2/3) delta_2 = 123840; cancelled coefficients vanish"
                    : ev.str();
    return c;
}

/// Exact symbolic derivative of F1 on the axis:
///   d/dt F1(it) = 480 pi + e^{-2 pi t} (57600 pi^3 t^2 - 305280 pi^2 t + 371520 pi)
///              = 480 pi [ 1 + e^{-2 pi t} (120 pi^2 t^2 - 636 pi t + 774) ],
/// checked per exponent in Q[p, T].
inline Certificate check_F1_derivative(const FormRegistry& reg) {
    AxisSeries d = to_axis(reg.get(FormId::F1)).diff_t();

    AxisPoly expect0 = AxisPoly::monomial(1, 0, Rational(480));
    AxisPoly expect2 = AxisPoly::monomial(3, 2, Rational(57600)) +
                       AxisPoly::monomial(2, 1, Rational(-305280)) +
                       AxisPoly::monomial(1, 0, Rational(371520));

    Certificate c;
    c.id = "f1-derivative-closed-form";
    c.order = reg.order();
    bool ok = d.coeff(0) == expect0 && d.coeff(2) == expect2 && d.coeffs().size() == 2;
    c.status = ok ? Status::Pass : Status::Fail;
    if (ok) {
        c.evidence = "d/dt F1(it) = 480*p + e^{-2pT} (" + expect2.str("p", "T") + "), exact";
    } else {
        c.evidence = "exponent 0: " + d.coeff(0).str("p", "T") + "; exponent 2: " +
                     d.coeff(2).str("p", "T");
    }
    return c;
}

/// The quadratic 120 pi^2 t^2 - 636 pi t + (774 + e^{2 pi}) is positive on
/// the whole real line: its leading coefficient is positive and the
/// discriminant sign is carried by 636^2 - 480 (774 + e^{2 pi}), whose
/// enclosure must lie strictly below zero. The constant 774 is a
/// parameter so mutation tests can flip the conclusion.
inline Certificate check_quadratic_positivity(mpfr_prec_t precision,
                                              const Rational& constant_term = Rational(774)) {
    return detail::escalate_precision("f1-quadratic-positivity", precision, [&](mpfr_prec_t p) {
        Interval e2pi = ConstantCache::instance().exp_pi_mult(2, p);
        Rational exact_part = Rational(636).pow(2) - Rational(480) * constant_term;
        Interval disc = Interval::from_rational(exact_part, p) - e2pi.mul_rational(480);
        Certificate c;
        if (disc.is_strictly_negative())
            c.status = Status::Pass;
        else if (disc.is_strictly_positive())
            c.status = Status::Fail;
        else
            c.status = Status::Inconclusive;
        c.evidence = "636^2 - 480*(" + constant_term.str() + " + e^{2 pi}) in " + disc.str();
        return c;
    });
}

/// Per-summand monotonicity of F2 on [1, infinity): the n-th summand
/// -(pi^2/18 alpha_n t^2 + 2 beta_n) e^{-pi(2n-2)t} has derivative
/// e^{-lambda t} [ (pi^2/18) alpha_n t (lambda t - 2) + 2 lambda beta_n ]
/// with lambda = pi (2n-2), which is nonnegative at t = 1 once
/// lambda >= 2; that inequality is certified per n from a rational lower
/// bound of pi, and the sign conditions alpha_n, beta_n >= 0 are exact.
inline Certificate check_F2_monotonicity(const FormRegistry& reg, mpfr_prec_t precision) {
    CoeffSequences seq = reg.sequences();
    Rational pi_lo = ConstantCache::instance().pi(std::max<mpfr_prec_t>(precision, 64)).lo_rational();

    Certificate c;
    c.id = "f2-summand-monotonicity";
    c.order = reg.order();
    c.precision = precision;
    c.status = Status::Pass;
    long checked = 0;
    for (long n = 3; n < static_cast<long>(seq.alpha.size()); ++n) {
        bool ok = pi_lo * Rational(2 * n - 2) >= Rational(2) &&
                  seq.alpha[static_cast<size_t>(n)].sign() >= 0 &&
                  seq.beta[static_cast<size_t>(n)].sign() >= 0;
        if (!ok) {
            c.status = Status::Fail;
            c.evidence = "summand n = " + std::to_string(n) + " not certified monotone at t = 1";
            return c;
        }
        ++checked;
    }
    c.evidence = "derivative >= 0 at t = 1 certified for 3 <= n < " +
                 std::to_string(seq.alpha.size()) + " (" + std::to_string(checked) + " summands)";
    return c;
}

/// The three closed-form constant comparisons:
///   (L0)  e^{3 pi} 9 Gamma(1/4)^16 / (8192 pi^12)                 <  20480
///   (L1)  -240 + 6 e^{2 pi} Gamma(1/4)^20 / (2 pi)^15             <= 288
///   (L2)  480 pi + 123840 pi e^{-2 pi}
///         + e^{2 pi} (2 - 45 Gamma(1/4)^16 / (8192 pi^12))        >= 468
/// In (L2) the e^{-2 pi} term carries the factor pi: that is what the
/// derivation from F1(i) + F2(i) produces (the +-123840 constants cancel
/// and the pi*i*z terms survive), and the only reading consistent with
/// the ~468.39 target; the widely printed form without pi evaluates to
/// about -27 and cannot be the intended constant.
inline std::vector<Certificate> check_lemma_constants(mpfr_prec_t precision) {
    std::vector<Certificate> out;

    out.push_back(detail::escalate_precision("lemma-fg-bound", precision, [&](mpfr_prec_t p) {
        mpfr_prec_t wp = p + 32;
        Interval e3pi = ConstantCache::instance().exp_pi_mult(3, wp);
        Interval gamma = ConstantCache::instance().gamma_quarter(wp);
        Interval pi = ConstantCache::instance().pi(wp);
        Interval val = (e3pi * gamma.pow_ui(16)).mul_rational(Rational(9)) /
                       pi.pow_ui(12).mul_rational(Rational(8192));
        Certificate c;
        if (val.certainly_less(Rational(20480)))
            c.status = Status::Pass;
        else if (val.certainly_ge(Rational(20480)))
            c.status = Status::Fail;
        else
            c.status = Status::Inconclusive;
        c.evidence = "e^{3 pi} 9 Gamma(1/4)^16 / (8192 pi^12) in " + val.str() + ", target < 20480";
        return c;
    }));

    out.push_back(detail::escalate_precision("lemma-gtilde-peak", precision, [&](mpfr_prec_t p) {
        mpfr_prec_t wp = p + 32;
        Interval e2pi = ConstantCache::instance().exp_pi_mult(2, wp);
        Interval gamma = ConstantCache::instance().gamma_quarter(wp);
        Interval two_pi = ConstantCache::instance().pi(wp).mul_rational(2);
        Interval val = (e2pi * gamma.pow_ui(20)).mul_rational(Rational(6)) / two_pi.pow_ui(15);
        val = val.add_rational(Rational(-240));
        Certificate c;
        if (val.certainly_le(Rational(288)))
            c.status = Status::Pass;
        else if (val.certainly_greater(Rational(288)))
            c.status = Status::Fail;
        else
            c.status = Status::Inconclusive;
        c.evidence = "-240 + 6 e^{2 pi} Gamma(1/4)^20 / (2 pi)^15 in " + val.str() + ", target <= 288";
        return c;
    }));

    out.push_back(detail::escalate_precision("lemma-ftilde-floor", precision, [&](mpfr_prec_t p) {
        mpfr_prec_t wp = p + 32;
        Interval pi = ConstantCache::instance().pi(wp);
        Interval e2pi = ConstantCache::instance().exp_pi_mult(2, wp);
        Interval em2pi = ConstantCache::instance().exp_pi_mult(-2, wp);
        Interval gamma = ConstantCache::instance().gamma_quarter(wp);
        Interval bracket = Interval::from_long(2, wp) -
                           (gamma.pow_ui(16).mul_rational(Rational(45)) /
                            pi.pow_ui(12).mul_rational(Rational(8192)));
        Interval val = pi.mul_rational(480) + (pi * em2pi).mul_rational(123840) + e2pi * bracket;
        Certificate c;
        if (val.certainly_ge(Rational(468)))
            c.status = Status::Pass;
        else if (val.certainly_less(Rational(468)))
            c.status = Status::Fail;
        else
            c.status = Status::Inconclusive;
        c.evidence = "480 pi + 123840 pi e^{-2 pi} + e^{2 pi} (2 - 45 Gamma(1/4)^16 / (8192 pi^12)) in " +
                     val.str() + ", target >= 468";
        return c;
    }));

    return out;
}

/// Special values at z = i: each series enclosure (truncation + majorant
/// tail at t = 1) must meet its closed-form enclosure; E6's must contain 0.
inline std::vector<Certificate> check_special_values(FormCache& forms, long order,
                                                     mpfr_prec_t precision) {
    std::vector<Certificate> out;
    AxisPoint at_i{Rational(1), precision, order};
    mpfr_prec_t wp = precision + 32;
    Interval pi = ConstantCache::instance().pi(wp);
    Interval gamma = ConstantCache::instance().gamma_quarter(wp);
    Interval two_pi_cubed = pi.mul_rational(2).pow_ui(3);

    auto compare = [&](const std::string& id, FormId form, const Interval& closed,
                       const std::string& closed_desc) {
        Interval series = eval_axis(forms, form, at_i);
        Certificate c;
        c.id = id;
        c.order = order;
        c.precision = precision;
        c.status = series.intersects(closed) ? Status::Pass : Status::Fail;
        c.evidence = std::string(form_name(form)) + "(i) in " + series.str() + "; " + closed_desc +
                     " in " + closed.str();
        out.push_back(c);
    };

    // E2(i) = 3/pi
    compare("special-e2-at-i", FormId::E2, Interval::from_long(3, wp) / pi, "3/pi");
    // E4(i) = 3 Gamma(1/4)^8 / (64 pi^6)
    compare("special-e4-at-i", FormId::E4,
            gamma.pow_ui(8).mul_rational(3) / pi.pow_ui(6).mul_rational(64),
            "3 Gamma(1/4)^8 / (64 pi^6)");
    // E6(i) = 0
    {
        Interval series = eval_axis(forms, FormId::E6, at_i);
        Certificate c;
        c.id = "special-e6-at-i";
        c.order = order;
        c.precision = precision;
        c.status = series.contains_zero() ? Status::Pass : Status::Fail;
        c.evidence = "E6(i) in " + series.str() + "; must contain 0";
        out.push_back(c);
    }
    // theta2(i)^4 = theta4(i)^4 = Gamma(1/4)^4 / (2 pi)^3
    Interval theta24_closed = gamma.pow_ui(4) / two_pi_cubed;
    compare("special-theta2pow4-at-i", FormId::Theta2Pow4, theta24_closed, "Gamma(1/4)^4/(2 pi)^3");
    // theta3(i)^4 = Gamma(1/4)^4 / (4 pi^3)
    compare("special-theta3pow4-at-i", FormId::Theta3Pow4,
            gamma.pow_ui(4) / pi.pow_ui(3).mul_rational(4), "Gamma(1/4)^4/(4 pi^3)");
    compare("special-theta4pow4-at-i", FormId::Theta4Pow4, theta24_closed, "Gamma(1/4)^4/(2 pi)^3");

    return out;
}

/// Settles the q^3 coefficient of H empirically: it equals -d_5 by
/// construction, and the theta closed form recomputes it through an
/// independent convolution route. The widely printed value 10007616 is
/// reported next to the computed one; it is never asserted.
inline Certificate check_H_typo(const FormRegistry& reg) {
    Rational h1 = reg.get(FormId::HFn).rational_coeff(1);
    Rational h3 = reg.get(FormId::HFn).rational_coeff(3);
    Rational h3_theta = reg.get(FormId::HTheta).rational_coeff(3);
    Rational d5 = reg.get(FormId::GTilde).rational_coeff(5);
    Rational d3 = reg.get(FormId::GTilde).rational_coeff(3);

    Certificate c;
    c.id = "h-q3-coefficient";
    c.order = reg.order();
    bool ok = (h3 == -d5) && (h3 == h3_theta) && (h1 == -d3);
    c.status = ok ? Status::Pass : Status::Fail;
    std::ostringstream ev;
    ev << "H = " << h1.str() << " q + " << h3.str() << " q^3 + ...; q^3 coefficient equals -d_5 = "
       << (-d5).str() << " (theta route agrees: " << h3_theta.str()
       << "); printed value under test: 10007616, computed: " << h3.str();
    c.evidence = ev.str();
    return c;
}

} // namespace magicineq
