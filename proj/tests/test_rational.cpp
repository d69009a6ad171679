#include <gtest/gtest.h>

#include "support.hpp"

using namespace voilab;
using voilab::testing::Q;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
    EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
    EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
    EXPECT_EQ(parse_rational("12"), Rational(12));
    EXPECT_EQ(parse_rational("0.75"), Rational(3, 4));
    EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
    EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
    EXPECT_EQ(parse_rational(" 2/4 "), Rational(1, 2));
    EXPECT_EQ(parse_rational("+7"), Rational(7));
}

TEST(Rational, ParsedValuesAreCanonical) {
    for (const char* s : {"10/4", "-0/7", "0.250", "100/1000", "-9/3"}) {
        Rational r = parse_rational(s);
        EXPECT_TRUE(is_canonical(r)) << s;
    }
    EXPECT_EQ(to_string(parse_rational("-0/7")), "0");
}

TEST(Rational, RejectsMalformedLiterals) {
    for (const char* s : {"", "abc", "1/", "/2", "1/0", "1.2.3", "1e5", "--1", "3/-4", ".", "0x10"})
        EXPECT_THROW(parse_rational(s), ParseError) << "'" << s << "'";
}

TEST(Rational, ToStringOmitsUnitDenominator) {
    EXPECT_EQ(to_string(Q("-77/32")), "-77/32");
    EXPECT_EQ(to_string(Q("8/2")), "4");
}

TEST(Rational, DecimalRoundsHalfEvenToTwelveDigits) {
    EXPECT_EQ(to_decimal(Q("1/3")), "0.333333333333");
    EXPECT_EQ(to_decimal(Q("2/3")), "0.666666666667");
    EXPECT_EQ(to_decimal(Q("7/60")), "0.116666666667");
    EXPECT_EQ(to_decimal(Q("-77/32")), "-2.40625");
    EXPECT_EQ(to_decimal(Q("3/176")), "0.0170454545455");
    EXPECT_EQ(to_decimal(Q("0")), "0");
    EXPECT_EQ(to_decimal(Q("12")), "12");
    // exact ties at the 12th digit
    EXPECT_EQ(to_decimal(Q("1000000000005/10")), "100000000000");
    EXPECT_EQ(to_decimal(Q("1000000000015/10")), "100000000002");
    EXPECT_EQ(to_decimal(Q("0.1234567890125")), "0.123456789012");
    EXPECT_EQ(to_decimal(Q("0.1234567890135")), "0.123456789014");
    // rounding carries into a new digit
    EXPECT_EQ(to_decimal(Q("0.9999999999999")), "1");
}

TEST(Rational, DecimalUsesExponentFormForExtremeMagnitudes) {
    EXPECT_EQ(to_decimal(Q("1/100000")), "1e-05");
    EXPECT_EQ(to_decimal(Q("1/10000")), "0.0001");
    EXPECT_EQ(to_decimal(Q("1000000000000")), "1e+12");
    EXPECT_EQ(to_decimal(Q("-123456789012345")), "-1.23456789012e+14");
}

TEST(Rational, DecimalMatchesPrintfOnRandomValues) {
    voilab::testing::Gen gen(7);
    for (int k = 0; k < 500; ++k) {
        // denominators that are powers of two keep double conversion exact
        long den = 1L << gen.uniform(0, 20);
        Rational r = make_rational(gen.uniform(-1'000'000'000, 1'000'000'000), den);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", r.get_d());
        EXPECT_EQ(to_decimal(r), buf) << to_string(r);
    }
}

TEST(Rational, ArithmeticStaysCanonical) {
    voilab::testing::Gen gen(11);
    for (int k = 0; k < 300; ++k) {
        Rational a = gen.rational(50), b = gen.rational(50);
        EXPECT_TRUE(is_canonical(Rational(a + b)));
        EXPECT_TRUE(is_canonical(Rational(a * b)));
        EXPECT_TRUE(is_canonical(Rational(a - b)));
        if (sgn(b) != 0) {
            EXPECT_TRUE(is_canonical(Rational(a / b)));
        }
    }
}
