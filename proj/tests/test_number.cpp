#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "padelab/errors.hpp"
#include "padelab/number.hpp"

using namespace padelab;

TEST(ParseRational, IntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("42"), mpq_class(42));
  EXPECT_EQ(parse_rational("-7"), mpq_class(-7));
  EXPECT_EQ(parse_rational("1/4"), mpq_class(1, 4));
  EXPECT_EQ(parse_rational("6/8"), mpq_class(3, 4));
  EXPECT_EQ(parse_rational("0.25"), mpq_class(1, 4));
  EXPECT_EQ(parse_rational("-1.5e-3"), mpq_class(-3, 2000));
  EXPECT_EQ(parse_rational("2E2"), mpq_class(200));
}

TEST(ParseRational, RejectsGarbage) {
  for (const char* bad : {"", "abc", "1/0", "nan", "inf", "-inf", "1.2.3", "1/", "/3", "0x10"}) {
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
  }
}

TEST(ToDouble, CorrectlyRounded) {
  EXPECT_EQ(to_double(mpq_class(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(to_double(mpq_class(1, 10)), 0.1);
  EXPECT_EQ(to_double(mpq_class(2, 7)), 2.0 / 7.0);
  // Halfway between 1 and the next double rounds to even.
  mpq_class half_ulp(1);
  half_ulp += mpq_class(1, mpz_class(1) << 53);
  EXPECT_EQ(to_double(half_ulp), 1.0);
  // Outside the double range.
  EXPECT_EQ(to_double(mpq_class(mpz_class(1) << 2000)), std::numeric_limits<double>::infinity());
  EXPECT_EQ(to_double(mpq_class(1, mpz_class(1) << 2000)), 0.0);
}

TEST(QComplex, ParseForms) {
  EXPECT_EQ(QComplex::parse("1/4"), QComplex(mpq_class(1, 4)));
  EXPECT_EQ(QComplex::parse("2i"), QComplex(0, 2));
  EXPECT_EQ(QComplex::parse("-i"), QComplex(0, -1));
  EXPECT_EQ(QComplex::parse("1/2+3/4i"), QComplex(mpq_class(1, 2), mpq_class(3, 4)));
  EXPECT_EQ(QComplex::parse("0.5-0.25i"), QComplex(mpq_class(1, 2), mpq_class(-1, 4)));
  EXPECT_EQ(QComplex::parse("1e-2-1e-2i"), QComplex(mpq_class(1, 100), mpq_class(-1, 100)));
  EXPECT_THROW(QComplex::parse("1+"), ParseError);
  EXPECT_THROW(QComplex::parse("i i"), ParseError);
}

TEST(QComplex, Arithmetic) {
  const QComplex a(1, 2);
  const QComplex b(3, -1);
  EXPECT_EQ(a + b, QComplex(4, 1));
  EXPECT_EQ(a - b, QComplex(-2, 3));
  EXPECT_EQ(a * b, QComplex(5, 5));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a.norm(), mpq_class(5));
  EXPECT_EQ(a.conj(), QComplex(1, -2));
  EXPECT_THROW(a / QComplex(), DomainError);
}

TEST(QComplex, Power) {
  EXPECT_EQ(pow(QComplex(mpq_class(1, 4)), 3), QComplex(mpq_class(1, 64)));
  EXPECT_EQ(pow(QComplex(0, 1), 4), QComplex(1));
  EXPECT_EQ(pow(QComplex(0, 1), 3), QComplex(0, -1));
  EXPECT_EQ(pow(QComplex(5), 0), QComplex(1));
  EXPECT_EQ(pow(QComplex(16), 4) * pow(QComplex(mpq_class(1, 4)), 4), QComplex(256));
}

TEST(QComplex, TextRoundTrip) {
  for (const char* text : {"0", "1/4", "-3", "2/3+1/7i", "-5i"}) {
    const QComplex q = QComplex::parse(text);
    EXPECT_EQ(QComplex::parse(q.to_string()), q) << text;
  }
  EXPECT_EQ(rational_to_string(parse_rational("-2/4")), "-1/2");
}

TEST(Number, KeepsExactValue) {
  const Number n = Number::parse("1/5");
  ASSERT_TRUE(n.is_exact());
  EXPECT_EQ(*n.exact, QComplex(mpq_class(1, 5)));
  EXPECT_EQ(n.value, Complex(0.2, 0.0));
  EXPECT_FALSE(Number(0.2).is_exact());
}
