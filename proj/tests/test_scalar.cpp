#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klrr/scalar.hpp"

using namespace klrr;

TEST_CASE("bigint arithmetic") {
    BigInt a(123456789), b(-987654321);
    CHECK((a + b).str() == "-864197532");
    CHECK((a * b).str() == "-121932631112635269");
    CHECK((b / a).str() == "-8");
    CHECK((b % a).str() == "-9");
    CHECK(BigInt::gcd(BigInt(48), BigInt(-18)).str() == "6");
    BigInt big = BigInt::from_string("340282366920938463463374607431768211456");
    CHECK((big * big).str() ==
          "115792089237316195423570985008687907853269984665640564039457584007913129639936");
    CHECK((big / BigInt(2)).str() == "170141183460469231731687303715884105728");
    CHECK(BigInt(-7) < BigInt(3));
    CHECK(BigInt(0).is_zero());
}

TEST_CASE("rational scalars reduce") {
    Field q = Field::rationals();
    Scalar a = Scalar::fraction(BigInt(2), BigInt(3), q);
    Scalar b = Scalar::fraction(BigInt(3), BigInt(1), q);
    CHECK((a * b) == Scalar::of_int(2, q));
    CHECK((a + a + a) == Scalar::of_int(2, q));
    CHECK((a - a).is_zero());
    Scalar c = Scalar::fraction(BigInt(-4), BigInt(-6), q);
    CHECK(c == a);
    CHECK(c.str() == "2/3");
}

TEST_CASE("prime field scalars") {
    Field f5 = Field::fp(5);
    Scalar a = Scalar::of_int(7, f5);
    CHECK(a == Scalar::of_int(2, f5));
    CHECK((a + Scalar::of_int(3, f5)).is_zero());
    Scalar inv = Scalar::one(f5) / Scalar::of_int(2, f5);
    CHECK(inv == Scalar::of_int(3, f5));
    CHECK((-Scalar::of_int(1, f5)) == Scalar::of_int(4, f5));
    CHECK_THROWS(Field::fp(6));
}
