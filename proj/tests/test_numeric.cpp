#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wgb/certified.hpp"
#include "wgb/errors.hpp"
#include "wgb/rational.hpp"

using namespace wgb;

TEST_CASE("integer powers") {
    CHECK(int_pow(Integer(2), 10) == 1024);
    CHECK(int_pow(Integer(-3), 3) == -27);
    CHECK(int_pow(Integer(5), 0) == 1);
    CHECK(int_pow(Integer(10), 30).get_str().size() == 31);
}

TEST_CASE("rational powers stay canonical") {
    Rational x(7, 8);
    Rational expected(Integer("1628413597910449"), Integer("18014398509481984"));
    CHECK(rat_pow(x, 18) == expected);
    CHECK(rat_pow(Rational(0), 0) == 1);
    CHECK(rat_pow(Rational(5, 3), 0) == 1);
    CHECK(rat_pow(Rational(-2, 3), 3) == Rational(-8, 27));
    CHECK(rat_pow(Rational(-2, 3), 4) == Rational(16, 81));
}

TEST_CASE("floor and ceiling of rationals") {
    CHECK(floor_div(Rational(7, 2)) == 3);
    CHECK(ceil_div(Rational(7, 2)) == 4);
    CHECK(floor_div(Rational(-7, 2)) == -4);
    CHECK(ceil_div(Rational(-7, 2)) == -3);
    CHECK(floor_div(Rational(6, 3)) == 2);
    CHECK(ceil_div(Rational(6, 3)) == 2);
}

TEST_CASE("exact parsing of rational literals") {
    CHECK(rat_from_string("3/4") == Rational(3, 4));
    CHECK(rat_from_string("6/8") == Rational(3, 4));
    CHECK(rat_from_string("-3") == -3);
    CHECK(rat_from_string("0.125") == Rational(1, 8));
    CHECK(rat_from_string(".5") == Rational(1, 2));
    CHECK(rat_from_string("1e-3") == Rational(1, 1000));
    CHECK(rat_from_string("2.5e2") == 250);
    CHECK(rat_from_string("  7/2  ") == Rational(7, 2));
    CHECK(rat_from_string("0.3819660113") ==
          Rational(Integer("3819660113"), Integer("10000000000")));
    CHECK_THROWS_AS(rat_from_string(""), UsageError);
    CHECK_THROWS_AS(rat_from_string("abc"), UsageError);
    CHECK_THROWS_AS(rat_from_string("1/0"), UsageError);
    CHECK_THROWS_AS(rat_from_string("1e"), UsageError);
}

TEST_CASE("doubles convert to exact dyadics") {
    CHECK(rat_from_double(0.5) == Rational(1, 2));
    CHECK(rat_from_double(-2.25) == Rational(-9, 4));
    // 0.1 is not representable; the dyadic image differs from 1/10
    Rational tenth = rat_from_double(0.1);
    CHECK(tenth != Rational(1, 10));
    CHECK(mpz_popcount(tenth.get_den().get_mpz_t()) == 1);
    CHECK_THROWS_AS(rat_from_double(std::nan("")), UsageError);
    CHECK_THROWS_AS(rat_from_double(INFINITY), UsageError);
}

TEST_CASE("fixed-point rendering, ties away from zero") {
    CHECK(to_decimal_string(Rational(1, 3), 2) == "0.33");
    CHECK(to_decimal_string(Rational(2, 3), 2) == "0.67");
    CHECK(to_decimal_string(Rational(5, 4), 1) == "1.3");
    CHECK(to_decimal_string(Rational(-5, 4), 1) == "-1.3");
    CHECK(to_decimal_string(Rational(1, 2), 0) == "1");
    CHECK(to_decimal_string(Rational(-1, 2), 0) == "-1");
    CHECK(to_decimal_string(Rational(1, 8), 3) == "0.125");
    CHECK(to_decimal_string(Rational(0), 4) == "0.0000");
    CHECK(to_decimal_string(Rational(123), 2) == "123.00");
}

TEST_CASE("fixed-point rendering, rounded up") {
    CHECK(to_decimal_string_ceil(Rational(0), 5) == "0.00000");
    CHECK(to_decimal_string_ceil(Rational(1, 100000000), 5) == "0.00001");
    CHECK(to_decimal_string_ceil(Rational(1, 4), 2) == "0.25");
    CHECK(to_decimal_string_ceil(Rational(1, 3), 5) == "0.33334");
    CHECK(to_decimal_string_ceil(Rational(-1, 3), 2) == "-0.33");
}

TEST_CASE("certified intervals: construction and arithmetic") {
    auto five = CertifiedReal::from_long(5, 128);
    CHECK(five.width() == 0.0);
    CHECK(five.contains(Rational(5)));
    REQUIRE(five.unambiguous_floor().has_value());
    CHECK(*five.unambiguous_floor() == 5);

    auto third = CertifiedReal::from_rational(Rational(1, 3), 128);
    CHECK(third.contains(Rational(1, 3)));
    CHECK(third.width() <= std::ldexp(1.0, -125));

    auto prod = CertifiedReal::from_rational(Rational(3, 2), 128) *
                CertifiedReal::from_rational(Rational(-4, 3), 128);
    CHECK(prod.contains(Rational(-2)));
    CHECK(third.mul_long(-6).contains(Rational(-2)));
    CHECK(third.add_long(1).contains(Rational(4, 3)));

    auto diff = CertifiedReal::from_rational(Rational(7, 2), 128) -
                CertifiedReal::from_rational(Rational(3), 128);
    CHECK(diff.contains(Rational(1, 2)));
}

TEST_CASE("certified log brackets the 50-digit value of ln 65") {
    // independently computed: ln 65, correctly rounded to 51 significant digits
    Rational frozen = rat_from_string(
        "4.174387269895637110654246774791506244330869299028725");
    Rational band = Rational(1, int_pow(Integer(10), 49));
    auto L = certified_log(Rational(65), 200);
    CHECK(L.lower_rational() <= frozen + band);
    CHECK(L.upper_rational() >= frozen - band);
    CHECK(L.width() <= std::ldexp(4.2, -199));
    CHECK(L.to_string(12).substr(0, 6) == "4.1743");
}

TEST_CASE("certified log: additivity and monotonicity") {
    auto l2 = certified_log(Rational(2), 160);
    auto l3 = certified_log(Rational(3), 160);
    auto l6 = certified_log(Rational(6), 160);
    auto sum = l2 + l3;
    // both intervals contain ln 6, so they must overlap
    CHECK(l6.lower_rational() <= sum.upper_rational());
    CHECK(sum.lower_rational() <= l6.upper_rational());

    auto l64 = certified_log(Rational(64), 160);
    auto l65 = certified_log(Rational(65), 160);
    CHECK(l64.upper_rational() < l65.lower_rational());
}

TEST_CASE("refinement nests and shrinks") {
    auto coarse = certified_log(Rational(65), 128);
    auto fine = certified_log(Rational(65), 256);
    CHECK(fine.contained_in(coarse));
    CHECK(fine.width() < coarse.width());
}

TEST_CASE("floor extraction refuses straddling intervals") {
    CHECK(*CertifiedReal::from_rational(Rational(7, 2), 128).unambiguous_floor() == 3);
    CHECK(*CertifiedReal::from_rational(Rational(-7, 3), 128).unambiguous_floor() == -3);

    // x - x has strictly positive width when x is not binary-representable,
    // so 3 + (x - x) straddles the integer 3
    auto x = CertifiedReal::from_rational(Rational(1, 3), 128);
    auto straddle = CertifiedReal::from_long(3, 128) + (x - x);
    CHECK(!straddle.unambiguous_floor().has_value());

    // floor(30 ln 8 + 1) = floor(63.383...)
    auto expr = certified_log(Rational(8), 128).mul_long(30).add_long(1);
    REQUIRE(expr.unambiguous_floor().has_value());
    CHECK(*expr.unambiguous_floor() == 63);
}

TEST_CASE("certified log rejects bad input") {
    CHECK_THROWS_AS(certified_log(Rational(0), 128), UsageError);
    CHECK_THROWS_AS(certified_log(Rational(-1), 128), UsageError);
    CHECK_THROWS_AS(CertifiedReal(1), UsageError);
}
