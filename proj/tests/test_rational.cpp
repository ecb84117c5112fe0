#include "hdensity/rational.hpp"

#include <doctest.h>

#include <vector>

using namespace hdensity;

TEST_CASE("product tree") {
    std::vector<BigInt> xs;
    BigInt expect = 1;
    for (int i = 1; i <= 50; ++i) {
        xs.emplace_back(i);
        expect *= i;
    }
    CHECK(product(xs) == expect);
    CHECK(product(std::span<const BigInt>{}) == 1);
}

TEST_CASE("powers and reduction") {
    CHECK(pow(BigInt(3), 5) == 243);
    CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(make_rational(BigInt(6), BigInt(8)) == Rational(3, 4));
    // stripping only by the declared prime still reaches lowest terms
    const Rational r = make_rational(BigInt(12), BigInt(64), 2);
    CHECK(r.get_num() == 3);
    CHECK(r.get_den() == 16);
}

TEST_CASE("decimal rendering") {
    CHECK(to_decimal(Rational(5, 8)) == "0.625");
    CHECK(to_decimal(Rational(2, 3), 5) == "0.66667");
    CHECK(to_decimal(Rational(1)) == "1");
    CHECK(to_decimal(Rational(0)) == "0");
    CHECK(to_decimal(Rational(-1, 4)) == "-0.25");
    CHECK(to_decimal(Rational(1, 1000000), 3).find('e') != std::string::npos);
}

TEST_CASE("parsing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("0.08") == Rational(2, 25));
    CHECK(parse_rational("010/4") == Rational(5, 2));
    CHECK(from_double(0.5) == Rational(1, 2));
}
