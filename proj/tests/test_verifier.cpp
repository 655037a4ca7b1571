#include <catch2/catch.hpp>

#include <random>
#include <vector>

#include "magicineq/verifier.hpp"

using magicineq::Certificate;
using magicineq::FormId;
using magicineq::FormRegistry;
using magicineq::Mutation;
using magicineq::Rational;
using magicineq::Status;

namespace {

/// Independent convolution oracle: dense int64 series product, no QSeries.
std::vector<long long> conv(const std::vector<long long>& a, const std::vector<long long>& b,
                            size_t n) {
    std::vector<long long> c(n, 0);
    for (size_t i = 0; i < n && i < a.size(); ++i)
        for (size_t j = 0; i + j < n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<long long> power(std::vector<long long> base, int k, size_t n) {
    std::vector<long long> acc(n, 0);
    acc[0] = 1;
    for (int i = 0; i < k; ++i) acc = conv(acc, base, n);
    return acc;
}

/// gtilde = theta4^8 (theta3^12 + theta4^4 theta3^8 + theta2^8 theta4^4 - theta2^12)
/// computed from scratch to a small order; used to settle d_5.
std::vector<long long> gtilde_oracle(size_t n) {
    std::vector<long long> t3(n, 0), t4(n, 0), t2sq(n, 0);
    t3[0] = 1;
    t4[0] = 1;
    for (long m = 1; static_cast<size_t>(m * m) < n; ++m) {
        t3[static_cast<size_t>(m * m)] = 2;
        t4[static_cast<size_t>(m * m)] = (m % 2 == 1) ? -2 : 2;
    }
    // theta2^4 = 16 q (sum q^{a(a+1)})^4
    std::vector<long long> tri(n, 0);
    for (long a = 0; static_cast<size_t>(a * (a + 1)) < n; ++a) tri[static_cast<size_t>(a * (a + 1))] += 1;
    std::vector<long long> x = power(tri, 4, n);
    std::vector<long long> x_shift(n, 0);
    for (size_t i = 0; i + 1 < n; ++i) x_shift[i + 1] = 16 * x[i];
    x = x_shift; // theta2^4

    auto z = power(t3, 4, n);  // theta3^4
    auto w = power(t4, 4, n);  // theta4^4
    auto z2 = conv(z, z, n), z3 = conv(z2, z, n);
    auto w2 = conv(w, w, n);
    auto x2 = conv(x, x, n), x3 = conv(x2, x, n);

    std::vector<long long> bracket(n, 0);
    auto wz2 = conv(w, z2, n);
    auto x2w = conv(x2, w, n);
    for (size_t i = 0; i < n; ++i) bracket[i] = z3[i] + wz2[i] + x2w[i] - x3[i];
    return conv(w2, bracket, n);
}

} // namespace

TEST_CASE("All eleven identities pass with zero residual", "[verifier][identities]") {
    FormRegistry reg(64);
    auto certs = magicineq::check_identities(reg);
    REQUIRE(certs.size() == 11);
    for (const auto& c : certs) {
        INFO(c.id << ": " << c.evidence);
        REQUIRE(c.status == Status::Pass);
    }
}

TEST_CASE("Perturbing theta3 makes the Jacobi identity fail", "[verifier][mutation]") {
    FormRegistry reg(32, {Mutation{FormId::Theta3, 1, Rational(1)}});
    auto certs = magicineq::check_identities(reg);
    bool jacobi_failed = false;
    for (const auto& c : certs)
        if (c.id == "jacobi-theta" && c.status == Status::Fail) jacobi_failed = true;
    REQUIRE(jacobi_failed);
}

TEST_CASE("Sign lemmas hold through the computed order", "[verifier][signs]") {
    FormRegistry reg(64);
    auto certs = magicineq::check_signs(reg);
    REQUIRE(certs.size() == 6);
    for (const auto& c : certs) {
        INFO(c.id << ": " << c.evidence);
        REQUIRE(c.status == Status::Pass);
    }

    SECTION("d_3 = -10240 is negative at an odd index, consistent with alternation") {
        auto seq = reg.sequences();
        REQUIRE(seq.d[3] == Rational(-10240));
        REQUIRE((-seq.d[3]).sign() > 0);
    }
}

TEST_CASE("Cancellation bookkeeping", "[verifier][cancellations]") {
    FormRegistry reg(32);
    Certificate c = magicineq::check_cancellations(reg);
    INFO(c.evidence);
    REQUIRE(c.status == Status::Pass);

    SECTION("numeric relations behind it") {
        auto seq = reg.sequences();
        REQUIRE(seq.alpha[2] * Rational(1, 18) == Rational(28800));
        REQUIRE(seq.delta[1] * Rational(2, 3) == Rational(480));
        REQUIRE(seq.delta[2] * Rational(2, 3) == Rational(123840));
    }
}

TEST_CASE("F1 axis derivative closed form", "[verifier][derivative]") {
    FormRegistry reg(32);
    Certificate c = magicineq::check_F1_derivative(reg);
    INFO(c.evidence);
    REQUIRE(c.status == Status::Pass);
}

TEST_CASE("Quadratic positivity certificate", "[verifier][quadratic]") {
    SECTION("passes at precision 64") {
        Certificate c = magicineq::check_quadratic_positivity(64);
        REQUIRE(c.status == Status::Pass);
        // exact part: 636^2 - 480*774 = 32976
        REQUIRE(Rational(636).pow(2) - Rational(480) * Rational(774) == Rational(32976));
    }

    SECTION("a mutated constant term flips the conclusion") {
        Certificate c = magicineq::check_quadratic_positivity(64, Rational(0));
        // 636^2 - 480 e^{2 pi} = 404496 - 257036.0... > 0: discriminant positive
        REQUIRE(c.status == Status::Fail);
    }

    SECTION("precision escalation shrinks the enclosure monotonically") {
        // the reported enclosure at higher precision sits inside the lower one
        magicineq::Interval e64 = magicineq::ConstantCache::instance().exp_pi_mult(2, 64);
        magicineq::Interval e256 = magicineq::ConstantCache::instance().exp_pi_mult(2, 256);
        REQUIRE(e64.contains(e256));
        REQUIRE(e256.width() < e64.width());
    }

    SECTION("pass is monotone in precision") {
        REQUIRE(magicineq::check_quadratic_positivity(64).status == Status::Pass);
        REQUIRE(magicineq::check_quadratic_positivity(256).status == Status::Pass);
    }
}

TEST_CASE("F2 summand monotonicity at t = 1", "[verifier][derivative]") {
    FormRegistry reg(64);
    Certificate c = magicineq::check_F2_monotonicity(reg, 64);
    INFO(c.evidence);
    REQUIRE(c.status == Status::Pass);
}

TEST_CASE("Lemma constants", "[verifier][lemmas]") {
    auto certs = magicineq::check_lemma_constants(128);
    REQUIRE(certs.size() == 3);
    for (const auto& c : certs) {
        INFO(c.id << ": " << c.evidence);
        REQUIRE(c.status == Status::Pass);
    }
}

TEST_CASE("Special values at z = i", "[verifier][special]") {
    magicineq::FormCache cache;
    auto certs = magicineq::check_special_values(cache, 64, 128);
    REQUIRE(certs.size() == 6);
    for (const auto& c : certs) {
        INFO(c.id << ": " << c.evidence);
        REQUIRE(c.status == Status::Pass);
    }
}

TEST_CASE("H q^3 coefficient settled by the convolution oracle", "[verifier][typo]") {
    FormRegistry reg(16);
    Certificate c = magicineq::check_H_typo(reg);
    INFO(c.evidence);
    REQUIRE(c.status == Status::Pass);

    // independent oracle for d_5 from the theta product definition
    auto gt = gtilde_oracle(8);
    REQUIRE(gt[0] == 2);
    REQUIRE(gt[2] == 240);
    REQUIRE(gt[3] == -10240);
    REQUIRE(gt[4] == 134640);
    REQUIRE(gt[5] == -1007616);
    REQUIRE(reg.get(FormId::HFn).rational_coeff(3) == Rational(-gt[5]));
    REQUIRE(reg.get(FormId::HFn).rational_coeff(3) == Rational(1007616));
    // the printed alternative 10007616 is wrong by one digit
    REQUIRE(reg.get(FormId::HFn).rational_coeff(3) != Rational(10007616));
}

TEST_CASE("Mutation sensitivity across base series", "[verifier][mutation][slow]") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> target_dist(0, 5);
    std::uniform_int_distribution<long> exp_dist(0, 30);
    std::uniform_int_distribution<long> delta_dist(1, 9);
    const FormId targets[6] = {FormId::E2, FormId::E4, FormId::E6,
                               FormId::Theta3, FormId::Theta4, FormId::Theta2Pow4};

    int detected = 0;
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
        FormId target = targets[target_dist(rng)];
        long exponent = exp_dist(rng);
        Rational delta(delta_dist(rng) * (trial % 2 == 0 ? 1 : -1));
        FormRegistry reg(48, {Mutation{target, exponent, delta}});

        bool any_fail = false;
        for (const auto& c : magicineq::check_identities(reg))
            if (c.status == Status::Fail) any_fail = true;
        if (!any_fail)
            for (const auto& c : magicineq::check_signs(reg))
                if (c.status == Status::Fail) any_fail = true;
        if (any_fail) ++detected;
        INFO("mutation " << magicineq::form_name(target) << " q^" << exponent << " += "
                         << delta.str());
        REQUIRE(any_fail);
    }
    REQUIRE(detected == trials);
}
