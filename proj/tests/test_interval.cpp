#include <catch2/catch.hpp>

#include <random>

#include "magicineq/coeffpoly.hpp"
#include "magicineq/interval.hpp"
#include "magicineq/rational.hpp"

using magicineq::CoeffPoly;
using magicineq::Interval;
using magicineq::Rational;

namespace {

std::mt19937_64 rng(20240811);

Rational random_rational(long max_abs_num = 1000, long max_den = 60) {
    std::uniform_int_distribution<long> num(-max_abs_num, max_abs_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng), den(rng));
}

/// A random interval together with a rational point inside it.
std::pair<Interval, Rational> random_interval_with_point(mpfr_prec_t prec) {
    Rational a = random_rational();
    Rational b = random_rational();
    if (b < a) std::swap(a, b);
    std::uniform_int_distribution<long> mix(0, 64);
    long m = mix(rng);
    Rational point = a + (b - a) * Rational(m, 64);
    return {Interval::from_endpoints(a, b, prec), point};
}

} // namespace

TEST_CASE("Interval construction is outward", "[interval]") {
    Interval third = Interval::from_rational(Rational(1, 3), 64);
    REQUIRE(third.contains(Rational(1, 3)));
    REQUIRE(third.lo_rational() < Rational(1, 3));
    REQUIRE(third.hi_rational() > Rational(1, 3));
    REQUIRE(third.width() > Rational(0));
    REQUIRE(third.width() <= Rational::pow2(-60));

    Interval half = Interval::from_rational(Rational(1, 2), 64);
    REQUIRE(half.width() == Rational(0)); // dyadic, exactly representable
}

TEST_CASE("Containment under sampled arithmetic", "[interval][property]") {
    // for every operation, exact rational evaluation at sampled points of
    // the inputs lands inside the output interval
    for (int rep = 0; rep < 100; ++rep) {
        auto [x, px] = random_interval_with_point(64);
        auto [y, py] = random_interval_with_point(64);

        REQUIRE((x + y).contains(px + py));
        REQUIRE((x - y).contains(px - py));
        REQUIRE((x * y).contains(px * py));
        if (!y.contains_zero()) REQUIRE((x / y).contains(px / py));
        REQUIRE(x.pow_ui(3).contains(px.pow(3)));
        REQUIRE(x.pow_ui(4).contains(px.pow(4)));
        REQUIRE(x.mul_rational(Rational(-7, 3)).contains(px * Rational(-7, 3)));
        REQUIRE(x.add_rational(Rational(5, 9)).contains(px + Rational(5, 9)));
    }
}

TEST_CASE("Exactness on degenerate dyadic intervals", "[interval]") {
    Interval a = Interval::from_rational(Rational(3, 2), 64);
    Interval b = Interval::from_rational(Rational(1, 4), 64);
    REQUIRE((a + b).width() == Rational(0));
    REQUIRE((a * b).width() == Rational(0));
    REQUIRE((a - b).width() == Rational(0));
    REQUIRE((a + b).contains(Rational(7, 4)));
    REQUIRE((a * b).contains(Rational(3, 8)));
}

TEST_CASE("Interval even powers through zero", "[interval]") {
    Interval sym = Interval::from_endpoints(Rational(-2), Rational(3), 64);
    Interval sq = sym.pow_ui(2);
    REQUIRE(sq.contains(Rational(0)));
    REQUIRE(sq.contains(Rational(9)));
    REQUIRE(sq.contains(Rational(4)));
    REQUIRE(!sq.contains(Rational(10)));
    REQUIRE(sq.lo_rational() == Rational(0));

    Interval cube = sym.pow_ui(3);
    REQUIRE(cube.contains(Rational(-8)));
    REQUIRE(cube.contains(Rational(27)));
}

TEST_CASE("Interval sqrt and division guards", "[interval]") {
    Interval four = Interval::from_long(4, 64);
    REQUIRE(four.sqrt().contains(Rational(2)));
    REQUIRE_THROWS_AS(Interval::from_endpoints(Rational(-1), Rational(1), 64).sqrt(),
                      magicineq::NonPositiveInputError);
    REQUIRE_THROWS_AS(four / Interval::from_endpoints(Rational(-1), Rational(1), 64),
                      magicineq::Error);
}

TEST_CASE("Interval comparisons are certain", "[interval]") {
    Interval pos = Interval::from_endpoints(Rational(1, 10), Rational(2), 64);
    Interval strad = Interval::from_endpoints(Rational(-1), Rational(1), 64);
    REQUIRE(pos.is_strictly_positive());
    REQUIRE(!strad.is_strictly_positive());
    REQUIRE(!strad.is_strictly_negative());
    REQUIRE(pos.certainly_less(Rational(3)));
    REQUIRE(!pos.certainly_less(Rational(2)));
    REQUIRE(pos.certainly_greater(Rational(0)));
    REQUIRE(pos.intersects(strad));
    REQUIRE(Interval::hull(pos, strad).contains(Rational(-1)));
}

TEST_CASE("eval_poly_interval encloses exact polynomial values", "[interval][coeffpoly]") {
    SECTION("constant poly gives a degenerate interval") {
        CoeffPoly c = CoeffPoly::constant(Rational(123840));
        Interval out = magicineq::eval_poly_interval(
            c, Interval::from_endpoints(Rational(3), Rational(4), 64),
            Interval::from_endpoints(Rational(-5), Rational(5), 64));
        REQUIRE(out.width() == Rational(0));
        REQUIRE(out.contains(Rational(123840)));
    }

    SECTION("single monomial 480 p v at v = -1") {
        CoeffPoly m = CoeffPoly::monomial(1, 1, Rational(480));
        Interval p = Interval::from_endpoints(Rational(311, 99), Rational(312, 99), 64); // contains pi
        Interval v = Interval::from_rational(Rational(-1), 64);
        Interval out = magicineq::eval_poly_interval(m, p, v);
        // contains -480 * (any p in the interval); check the exact rational images
        REQUIRE(out.contains(Rational(-480) * Rational(311, 99)));
        REQUIRE(out.contains(Rational(-480) * Rational(312, 99)));
        REQUIRE(out.is_strictly_negative());
    }

    SECTION("randomized containment") {
        for (int rep = 0; rep < 100; ++rep) {
            CoeffPoly poly;
            for (int i = 0; i <= 2; ++i)
                for (int j = 0; j <= 2; ++j)
                    poly = poly + CoeffPoly::monomial(i, j, random_rational(50, 9));
            auto [p, pp] = random_interval_with_point(96);
            auto [v, pv] = random_interval_with_point(96);
            Interval out = magicineq::eval_poly_interval(poly, p, v);
            REQUIRE(out.contains(poly.eval_rational(pp, pv)));
        }
    }
}
