#include <gtest/gtest.h>

#include <random>

#include "cfbac/numerics.hpp"
#include "oracle.hpp"

using namespace cfbac;

namespace {

const long kRadicands[] = {2, 3, 5, 6, 7, 10, 13, 21};

Exact surd(long p, long q, long d, long r) { return Exact::surd(p, q, d, r); }

}  // namespace

TEST(SquareFree, SplitsSquarePart) {
  auto [s, f] = square_free_split(72);
  EXPECT_EQ(s, 6);
  EXPECT_EQ(f, 2);
  auto [s1, f1] = square_free_split(1);
  EXPECT_EQ(s1, 1);
  EXPECT_EQ(f1, 1);
}

TEST(Exact, NormalizesRadicand) {
  Exact a = surd(0, 1, 8, 1);
  EXPECT_EQ(a.q(), 2);
  EXPECT_EQ(a.d(), 2);
  EXPECT_EQ(a, surd(0, 2, 2, 1));
  Exact b = surd(2, 4, 3, 6);
  EXPECT_EQ(b.p(), 1);
  EXPECT_EQ(b.q(), 2);
  EXPECT_EQ(b.r(), 3);
  EXPECT_TRUE(surd(5, 0, 7, 10).is_rational());
  EXPECT_EQ(surd(5, 0, 7, 10), Exact(Rational(1, 2)));
}

TEST(Exact, FieldArithmetic) {
  Exact one_plus = surd(1, 1, 2, 1), one_minus = surd(1, -1, 2, 1);
  EXPECT_EQ(one_plus * one_minus, Exact(-1));
  EXPECT_EQ(one_plus.conjugate(), one_minus);
  EXPECT_EQ(Exact(1) / one_plus, surd(-1, 1, 2, 1));
  Exact phi = surd(1, 1, 5, 2);
  EXPECT_EQ(phi * phi, phi + 1);
  EXPECT_THROW(Exact(1) / Exact(0), Error);
  EXPECT_THROW(surd(0, 1, 2, 1) + surd(0, 1, 3, 1), Error);
}

TEST(Exact, SqrtStaysInField) {
  EXPECT_EQ(sqrt_exact(Exact(8)), surd(0, 2, 2, 1));
  EXPECT_EQ(sqrt_exact(surd(3, 2, 2, 1)), surd(1, 1, 2, 1));
  EXPECT_EQ(sqrt_exact(Exact(Rational(9, 4))), Exact(Rational(3, 2)));
  EXPECT_EQ(sqrt_exact(Exact(3), 2), surd(0, 1, 3, 1));
  EXPECT_EQ(sqrt_exact(Exact(18), 2), surd(0, 3, 2, 1));
  try {
    sqrt_exact(surd(1, 1, 2, 1));
    FAIL() << "expected NotInField";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInField);
  }
}

TEST(Exact, FloorAndSignMatchReference) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-60, 60), den(1, 40), pick(0, 7);
  for (int i = 0; i < 2000; ++i) {
    long p = coef(rng), q = coef(rng), d = kRadicands[pick(rng)], r = den(rng);
    Exact x = surd(p, q, d, r);
    Ref ref = Ref::surd(p, q, d, r);
    EXPECT_EQ(x.floor(), ref.floor()) << x.to_string();
    int s = mpfr_sgn(ref.get());
    EXPECT_EQ(x.sign(), s > 0 ? 1 : (s < 0 ? -1 : 0)) << x.to_string();
  }
}

TEST(Exact, CompareAcrossRadicandsMatchesReference) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-20, 20), den(1, 12), pick(0, 7);
  for (int i = 0; i < 2000; ++i) {
    long pa = coef(rng), qa = coef(rng), ra = den(rng), pb = coef(rng), qb = coef(rng), rb = den(rng);
    long da = kRadicands[pick(rng)], db = kRadicands[pick(rng)];
    Exact a = surd(pa, qa, da, ra), b = surd(pb, qb, db, rb);
    Ref x = Ref::surd(pa, qa, da, ra), y = Ref::surd(pb, qb, db, rb);
    Ordering expect = a == b ? Ordering::Equal : (x < y ? Ordering::Less : Ordering::Greater);
    EXPECT_EQ(compare(a, b), expect) << a.to_string() << " vs " << b.to_string();
  }
}

TEST(BigReal, EnclosesReferenceConstants) {
  Ref pi = Ref::pi();
  for (long digits : {20L, 64L, 200L}) {
    BigReal p = BigReal::pi(digits);
    EXPECT_LE(mpfr_cmp(p.lo(), pi.get()), 0);
    EXPECT_GE(mpfr_cmp(p.hi(), pi.get()), 0);
    BigReal s = sqrt(BigReal(Rational(2), digits));
    Ref r2 = Ref::sqrt(Ref(2.0));
    EXPECT_LE(mpfr_cmp(s.lo(), r2.get()), 0);
    EXPECT_GE(mpfr_cmp(s.hi(), r2.get()), 0);
    EXPECT_LT(s.width().to_double(), std::pow(10.0, -digits + 2));
  }
}

TEST(BigReal, OperationsEncloseExactResults) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coef(-50, 50), den(1, 50);
  for (int i = 0; i < 500; ++i) {
    Rational a(coef(rng), den(rng)), b(coef(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    BigReal x(a, 30), y(b, 30);
    EXPECT_TRUE((x + y).contains(a + b));
    EXPECT_TRUE((x - y).contains(a - b));
    EXPECT_TRUE((x * y).contains(a * b));
    if (b != 0) EXPECT_TRUE((x / y).contains(a / b));
  }
}

TEST(BigReal, StraddlingFloorIsUndecidable) {
  BigReal h = BigReal::hull(BigReal(Rational(9, 10), 30), BigReal(Rational(11, 10), 30));
  EXPECT_THROW(h.floor(), Undecidable);
  EXPECT_THROW(BigReal::hull(BigReal(Rational(-1, 10), 30), BigReal(Rational(1, 10), 30)).sign(), Undecidable);
  EXPECT_EQ(BigReal(Rational(7, 2), 30).floor(), 3);
}

TEST(Escalate, DoublesUntilDecided) {
  std::vector<long> seen;
  long got = escalate(16, 256, [&](long d) {
    seen.push_back(d);
    if (d < 100) throw Undecidable("not yet");
    return d;
  });
  EXPECT_EQ(got, 128);
  EXPECT_EQ(seen, (std::vector<long>{16, 32, 64, 128}));
  EXPECT_THROW(escalate(16, 64, [](long) -> long { throw Undecidable("never"); }), PrecisionExhausted);
}

TEST(FloorVerified, CertifiesFloor) {
  auto near_one = [](long d) { return BigReal(Rational(1), d); };
  EXPECT_EQ(floor_verified(near_one, 16, 64), Integer(1));
  auto pi = [](long d) { return BigReal::pi(d); };
  EXPECT_EQ(floor_verified(pi, 16, 64), Integer(3));
}

TEST(Parse, Literals) {
  RealLiteral a = parse_real("3/4");
  EXPECT_TRUE(a.exact);
  EXPECT_EQ(a.value, Exact(Rational(3, 4)));
  RealLiteral b = parse_real("(1+sqrt(5))/2");
  EXPECT_EQ(b.value, surd(1, 1, 5, 2));
  RealLiteral c = parse_real("~0.25@40");
  EXPECT_FALSE(c.exact);
  EXPECT_TRUE(c.enclosure(40).contains(Rational(1, 4)));
  EXPECT_THROW(parse_real("three"), Error);
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(format_rational(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(format_rational(Rational(5)), "5");
}
