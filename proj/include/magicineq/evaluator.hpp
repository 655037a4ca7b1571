#pragma once

#include <string>
#include <utility>
#include <vector>

#include "magicineq/certificate.hpp"
#include "magicineq/constants.hpp"
#include "magicineq/errors.hpp"
#include "magicineq/forms.hpp"
#include "magicineq/interval.hpp"
#include "magicineq/qseries.hpp"

namespace magicineq {

/// Evaluation request on the imaginary axis z = it.
struct AxisPoint {
    Rational t;             // strictly positive
    mpfr_prec_t precision = 128;
    long order = 128;
};

/// Escalation policy for certificates: on an inconclusive comparison the
/// order doubles first (cap 1024), then the precision doubles (cap 1024),
/// then the result is reported inconclusive.
struct EvalParams {
    long order = 128;
    mpfr_prec_t precision = 128;
    long order_cap = 1024;
    mpfr_prec_t precision_cap = 1024;
};

namespace detail {

/// Shared per-point data: enclosures of pi, of the nome x = e^{-pi t},
/// a rational upper bound of x for tail bounds, and v = -t.
struct AxisContext {
    Rational t;
    mpfr_prec_t prec;
    Interval pi;
    Interval x;      // encloses e^{-pi t}
    Rational x_hi;   // rational upper bound of e^{-pi t}, < 1
    Interval v;      // degenerate [-t, -t]
};

inline AxisContext make_axis_context(const Rational& t, mpfr_prec_t prec) {
    if (t.sign() <= 0) throw OutOfRangeError("axis evaluation requires t > 0");
    AxisContext ctx;
    ctx.t = t;
    ctx.prec = prec;
    ctx.pi = ConstantCache::instance().pi(prec);
    ctx.x = enclose_exp_pi_times(-t, prec);
    ctx.x_hi = ctx.x.hi_rational();
    if (ctx.x_hi >= Rational(1))
        throw Error("axis evaluation: nome upper bound reached 1; increase precision");
    ctx.v = Interval::from_rational(-t, prec);
    return ctx;
}

/// Truncated sum plus majorant tail for a constant-coefficient series.
inline Interval eval_constant_series(const QSeries& s, const AxisContext& ctx, FormId id) {
    if (!s.majorant())
        throw MissingMajorantError(std::string("eval_axis: ") + form_name(id) + " carries no majorant");
    Interval acc(ctx.prec);
    for (const auto& [n, c] : s.coeffs()) {
        if (n < 0)
            throw MissingMajorantError(std::string("eval_axis: ") + form_name(id) + " has Laurent terms");
        acc += ctx.x.pow_ui(static_cast<unsigned long>(n)).mul_rational(c.constant_value());
    }
    Rational tail = tail_bound(*s.majorant(), s.order() - 1, ctx.x_hi);
    return acc.widened(tail);
}

/// Exact evaluation of a finite q-polynomial with (p, v) coefficients.
inline Interval eval_finite_poly_series(const QSeries& s, const AxisContext& ctx) {
    Interval acc(ctx.prec);
    for (const auto& [n, c] : s.coeffs()) {
        Interval term = c.eval(ctx.pi, ctx.v);
        if (n != 0) term = term * ctx.x.pow_ui(static_cast<unsigned long>(n));
        acc += term;
    }
    return acc;
}

} // namespace detail

/// Certified enclosure of a registry entry at z = it. Constant-coefficient
/// entries are summed directly with their majorant tail; z-dependent
/// entries are evaluated as the finite polynomial combinations of
/// majorant-carrying series they are built from; PSI_I (Laurent) and
/// DELTA_PROD (no majorant) are not evaluable here.
inline Interval eval_axis(FormCache& forms, FormId id, const AxisPoint& point) {
    const FormRegistry& reg = forms.at(point.order);
    detail::AxisContext ctx = detail::make_axis_context(point.t, point.precision);

    auto direct = [&](FormId which) {
        return detail::eval_constant_series(reg.get(which), ctx, which);
    };
    auto poly_at = [&](const CoeffPoly& m) { return m.eval(ctx.pi, ctx.v); };

    switch (id) {
        case FormId::FSmall:
            // f = (pi^2/18) (E2 E4 - E6)^2
            return poly_at(CoeffPoly::monomial(2, 0, Rational(1, 18))) * direct(FormId::E2E4MinusE6Sq);
        case FormId::FTilde:
            return poly_at(CoeffPoly::monomial(2, 2, Rational(1, 18))) * direct(FormId::E2E4MinusE6Sq) +
                   poly_at(CoeffPoly::monomial(1, 1, Rational(2, 3))) * direct(FormId::E4TimesE2E4MinusE6) +
                   direct(FormId::E4Sq).mul_rational(Rational(2));
        case FormId::F1:
            return detail::eval_finite_poly_series(reg.get(FormId::F1), ctx);
        case FormId::F2: {
            CoeffPoly comp = CoeffPoly::monomial(2, 2, Rational(28800)) +
                             CoeffPoly::constant(Rational(123840));
            return poly_at(CoeffPoly::monomial(2, 2, Rational(-1, 18))) * direct(FormId::E2E4MinusE6SqDiv2) +
                   direct(FormId::E4SqMinus1Div2).mul_rational(Rational(-2)) +
                   poly_at(comp) * ctx.x.pow_ui(2);
        }
        case FormId::F3:
            return poly_at(CoeffPoly::monomial(1, 1, Rational(-2, 3))) * direct(FormId::E4TimesE2E4MinusE6Div2) +
                   poly_at(CoeffPoly::monomial(1, 1, Rational(480))) +
                   poly_at(CoeffPoly::monomial(1, 1, Rational(123840))) * ctx.x.pow_ui(2);
        case FormId::FCap: {
            // Fcap = (2 - ftilde) e^{2 pi t}
            Interval ftilde = eval_axis(forms, FormId::FTilde, point);
            Interval grow = enclose_exp_pi_times(point.t * Rational(2), point.precision);
            return (Interval::from_long(2, point.precision) - ftilde) * grow;
        }
        case FormId::PsiI:
            throw MissingMajorantError("eval_axis: PSI_I has a Laurent part; evaluate the cleared combinations instead");
        case FormId::DeltaProd:
            throw MissingMajorantError("eval_axis: DELTA_PROD carries no majorant; use DELTA_POLY");
        default:
            return direct(id);
    }
}

/// Pointwise sign certificate for the two target inequalities.
struct SignCertificate {
    enum class Target { ANegative, BPositive };

    Target target = Target::ANegative;
    Rational t;
    Status status = Status::Inconclusive;
    std::string route;  // "direct" / "reciprocal" for B, "" for A
    std::vector<std::pair<std::string, Interval>> enclosures;
    long order_used = 0;
    mpfr_prec_t precision_used = 0;
};

enum class BRoute { Auto, Direct, Reciprocal };

namespace detail {

/// Decide a conjunction of strict positivity targets: pass when every
/// enclosure is strictly positive, fail when one is certainly negative,
/// inconclusive when some enclosure straddles zero.
inline Status positivity_status(const std::vector<std::pair<std::string, Interval>>& encl) {
    bool straddle = false;
    for (const auto& [name, itv] : encl) {
        if (itv.is_strictly_negative()) return Status::Fail;
        if (!itv.is_strictly_positive()) straddle = true;
    }
    return straddle ? Status::Inconclusive : Status::Pass;
}

template <class EvalOnce>
SignCertificate escalate_positivity(EvalOnce&& eval_once, const EvalParams& params) {
    long N = params.order;
    mpfr_prec_t P = params.precision;
    SignCertificate cert;
    for (;;) {
        bool rho_failed = false;
        try {
            cert = eval_once(N, P);
        } catch (const RhoNotLessThanOneError&) {
            rho_failed = true;
        }
        if (!rho_failed && cert.status != Status::Inconclusive) {
            cert.order_used = N;
            cert.precision_used = P;
            return cert;
        }
        if (N < params.order_cap) {
            N *= 2;
            if (N > params.order_cap) N = params.order_cap;
        } else if (!rho_failed && P < params.precision_cap) {
            P *= 2;
            if (P > params.precision_cap) P = params.precision_cap;
        } else {
            cert.status = Status::Inconclusive;
            cert.order_used = N;
            cert.precision_used = P;
            return cert;
        }
    }
}

} // namespace detail

/// Certifies A(t) < 0 through the reduction
///   A(t) = -t^2 phi0(i/t) - (36/pi^2) psi_I(it),
/// by certifying PHI0_NUM and DELTA_POLY positive at 1/t (so phi0(i/t) > 0)
/// and G_TILDE and DELTA_POLY positive at t (so psi_I(it) > 0).
inline SignCertificate certify_A_negative(FormCache& forms, const Rational& t,
                                          const EvalParams& params = {}) {
    if (t.sign() <= 0) throw OutOfRangeError("certify_A_negative: t must be > 0");
    Rational tr = t.inverse();
    auto once = [&](long N, mpfr_prec_t P) {
        SignCertificate cert;
        cert.target = SignCertificate::Target::ANegative;
        cert.t = t;
        AxisPoint at_recip{tr, P, N};
        AxisPoint at_t{t, P, N};
        cert.enclosures = {
            {"phi0_num(i/t)", eval_axis(forms, FormId::Phi0Num, at_recip)},
            {"delta(i/t)", eval_axis(forms, FormId::DeltaPoly, at_recip)},
            {"gtilde(it)", eval_axis(forms, FormId::GTilde, at_t)},
            {"delta(it)", eval_axis(forms, FormId::DeltaPoly, at_t)},
        };
        cert.status = detail::positivity_status(cert.enclosures);
        return cert;
    };
    SignCertificate cert = detail::escalate_positivity(once, params);
    cert.target = SignCertificate::Target::ANegative;
    cert.t = t;
    return cert;
}

/// Certifies B(t) > 0. For t >= 1 this is gtilde(it) - ftilde(it) > 0
/// (with delta(it) > 0); for t < 1 the reciprocal reduction applies and
/// g(is) - f(is) > 0 is certified at s = 1/t >= 1.
inline SignCertificate certify_B_positive(FormCache& forms, const Rational& t,
                                          const EvalParams& params = {},
                                          BRoute route = BRoute::Auto) {
    if (t.sign() <= 0) throw OutOfRangeError("certify_B_positive: t must be > 0");
    bool direct;
    switch (route) {
        case BRoute::Direct: direct = true; break;
        case BRoute::Reciprocal: direct = false; break;
        default: direct = t >= Rational(1); break;
    }
    Rational s = direct ? t : t.inverse();
    auto once = [&](long N, mpfr_prec_t P) {
        SignCertificate cert;
        cert.target = SignCertificate::Target::BPositive;
        cert.t = t;
        cert.route = direct ? "direct" : "reciprocal";
        AxisPoint at_s{s, P, N};
        Interval margin = direct
            ? eval_axis(forms, FormId::GTilde, at_s) - eval_axis(forms, FormId::FTilde, at_s)
            : eval_axis(forms, FormId::GSmall, at_s) - eval_axis(forms, FormId::FSmall, at_s);
        Interval delta = eval_axis(forms, FormId::DeltaPoly, at_s);
        cert.enclosures = {
            {direct ? "gtilde-ftilde(is)" : "g-f(is)", margin},
            {"delta(is)", delta},
        };
        cert.status = detail::positivity_status(cert.enclosures);
        return cert;
    };
    SignCertificate cert = detail::escalate_positivity(once, params);
    cert.target = SignCertificate::Target::BPositive;
    cert.t = t;
    cert.route = direct ? "direct" : "reciprocal";
    return cert;
}

/// One scan row: both certificates at a grid point.
struct GridRow {
    int index = 0;
    Rational t;
    SignCertificate a;
    SignCertificate b;
};

struct GridReport {
    Rational t_min;
    Rational t_max;
    int steps = 0;
    std::vector<GridRow> rows;

    int count(Status s) const {
        int n = 0;
        for (const auto& r : rows) {
            if (r.a.status == s) ++n;
            if (r.b.status == s) ++n;
        }
        return n;
    }
};

namespace detail {

/// Geometric grid of exact rationals. Points are dyadic approximations of
/// the geometric progression; when t_min t_max = 1 the upper half mirrors
/// the lower half through exact reciprocals so the pairs (t, 1/t) both
/// appear and an odd-length grid passes through t = 1 exactly.
inline std::vector<Rational> geometric_grid(const Rational& t_min, const Rational& t_max, int steps) {
    if (steps < 1) throw Error("scan: steps must be >= 1");
    if (t_min.sign() <= 0 || !(t_min < t_max)) throw Error("scan: need 0 < t_min < t_max");
    std::vector<Rational> ts;
    ts.reserve(static_cast<size_t>(steps));
    if (steps == 1) {
        ts.push_back(t_min);
        return ts;
    }
    mpfr_t l0, l1, tmp;
    mpfr_init2(l0, 64);
    mpfr_init2(l1, 64);
    mpfr_init2(tmp, 64);
    mpfr_set_q(tmp, t_min.mpq().get_mpq_t(), MPFR_RNDN);
    mpfr_log(l0, tmp, MPFR_RNDN);
    mpfr_set_q(tmp, t_max.mpq().get_mpq_t(), MPFR_RNDN);
    mpfr_log(l1, tmp, MPFR_RNDN);
    for (int i = 0; i < steps; ++i) {
        if (i == 0) {
            ts.push_back(t_min);
            continue;
        }
        if (i == steps - 1) {
            ts.push_back(t_max);
            continue;
        }
        mpfr_t li;
        mpfr_init2(li, 64);
        // l0 + (l1 - l0) * i/(steps-1)
        mpfr_sub(li, l1, l0, MPFR_RNDN);
        mpfr_mul_si(li, li, i, MPFR_RNDN);
        mpfr_div_si(li, li, steps - 1, MPFR_RNDN);
        mpfr_add(li, li, l0, MPFR_RNDN);
        mpfr_exp(li, li, MPFR_RNDN);
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), li);
        ts.push_back(Rational(q));
        mpfr_clear(li);
    }
    mpfr_clear(l0);
    mpfr_clear(l1);
    mpfr_clear(tmp);

    if (t_min * t_max == Rational(1)) {
        for (int i = 0; i < steps; ++i) {
            int j = steps - 1 - i;
            if (i > j) ts[static_cast<size_t>(i)] = ts[static_cast<size_t>(j)].inverse();
            if (i == j) ts[static_cast<size_t>(i)] = Rational(1);
        }
    }
    return ts;
}

} // namespace detail

/// Runs both certificates across a geometric grid. Rows are ordered by
/// grid index and fully determined by the configuration.
inline GridReport scan(FormCache& forms, const Rational& t_min, const Rational& t_max, int steps,
                       const EvalParams& params = {}) {
    GridReport report;
    report.t_min = t_min;
    report.t_max = t_max;
    report.steps = steps;
    std::vector<Rational> ts = detail::geometric_grid(t_min, t_max, steps);
    int idx = 0;
    for (const Rational& t : ts) {
        GridRow row;
        row.index = idx++;
        row.t = t;
        row.a = certify_A_negative(forms, t, params);
        row.b = certify_B_positive(forms, t, params);
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace magicineq
