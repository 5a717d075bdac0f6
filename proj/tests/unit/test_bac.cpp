#include <gtest/gtest.h>

#include <random>

#include "cfbac/bac.hpp"
#include "cfbac/sampling.hpp"
#include "oracle.hpp"

using namespace cfbac;

namespace {

const Params kArithmetic[] = {Params::make(0, 1), Params::make(0, 2), Params::make(0, Rational(5, 2)),
                              Params::make(1, 2), Params::make(1, Rational(3, 2))};

// (theta_{n-1}, theta_n) written out from the change of coordinates.
std::pair<Exact, Exact> reference_psi(const DynamicPair<Exact>& q) {
  Exact k(q.params.k), d = q.x - q.y;
  if (q.params.m == 0) return {Exact(1) / d, -(q.x * q.y) / (k * d)};
  return {Exact(1) / d, (1 - q.x) * (1 - q.y) / (k * d)};
}

// C_a = 1 / sqrt((a+k)^2 + 4k) for m = 0 and 1 / sqrt((a+k-1)^2 + 4a) for m = 1.
Rational c_radicand(const Params& p, long a) {
  Rational s = Rational(a) + p.k - p.m;
  return s * s + 4 * (p.m == 0 ? p.k : Rational(a));
}

}  // namespace

TEST(Psi, MatchesCoordinateFormulaAndInverts) {
  std::mt19937_64 rng(41);
  for (const Params& p : kArithmetic) {
    for (int i = 0; i < 80; ++i) {
      DynamicPair<Exact> q = random_exact_pair(p, rng);
      ApproxPair<Exact> a = psi(q);
      auto [u, v] = reference_psi(q);
      EXPECT_EQ(a.u, u);
      EXPECT_EQ(a.v, v);
      EXPECT_EQ(a.u, theta_dynamic(q));
      EXPECT_EQ(a.v, theta_dynamic(step_forward(q)));
      DynamicPair<Exact> back = psi_inv(p, a.u, a.v, q.n);
      EXPECT_EQ(back.x, q.x);
      EXPECT_EQ(back.y, q.y);
    }
  }
}

TEST(Psi, ConjugatesTheNaturalExtension) {
  std::mt19937_64 rng(43);
  for (const Params& p : kArithmetic) {
    for (int i = 0; i < 40; ++i) {
      DynamicPair<Exact> q = random_exact_pair(p, rng);
      for (int j = 0; j < 10; ++j) {
        ApproxPair<Exact> a = psi(q);
        DigitPair d = recover_digits(p, a.u, a.v);
        EXPECT_EQ(d.a_n, backward_digit(q));
        EXPECT_EQ(d.a_next, forward_digit(q));
        auto [u2, v2] = extend_forward(p, a.u, a.v);
        ApproxPair<Exact> b = psi(step_forward(q));
        EXPECT_EQ(u2, b.u);
        EXPECT_EQ(v2, b.v);
        auto [u0, v0] = extend_backward(p, b.u, b.v);
        EXPECT_EQ(u0, a.u);
        EXPECT_EQ(v0, a.v);
        q = step_forward(q);
      }
    }
  }
}

TEST(Bac, ReconstructionFromOnePairMatchesOrbit) {
  std::mt19937_64 rng(47);
  for (const Params& p : kArithmetic) {
    for (int i = 0; i < 20; ++i) {
      DynamicPair<Exact> q = random_exact_pair(p, rng);
      Orbit<Exact> o = orbit(q, 12, 12);
      BACSegment<Exact> direct = bac_from_orbit(o);
      ApproxPair<Exact> a = psi(o.at(0));
      BACSegment<Exact> rec = reconstruct_bac(p, a.u, a.v, 0, 10, 10);
      for (long n = -10; n <= 10; ++n) EXPECT_EQ(rec.at(n), direct.at(n)) << p.label() << " n=" << n;
      for (long n = rec.start; n + 1 <= rec.start + static_cast<long>(rec.digits.size()); ++n) {
        EXPECT_EQ(rec.digits[static_cast<std::size_t>(n - rec.start)], o.digits.at(n + 1));
      }
    }
  }
}

TEST(Bac, DigitIdentityRecoversNextDigit) {
  std::mt19937_64 rng(53);
  for (const Params& p : kArithmetic) {
    DynamicPair<Exact> q = random_exact_pair(p, rng);
    Orbit<Exact> o = orbit(q, 0, 8);
    for (long n = 1; n + 1 <= 8; ++n) {
      Exact prev = theta_dynamic(o.at(n - 1)), cur = theta_dynamic(o.at(n)), next = theta_dynamic(o.at(n + 1));
      EXPECT_EQ(digit_identity(p, prev, cur, next), Exact(Rational(o.digits.at(n))));
    }
  }
}

TEST(Constants, ClosedFormsMatchReference) {
  for (const Params& p : {Params::make(0, 1), Params::make(0, 2), Params::make(0, Rational(5, 2)), Params::make(1, 2),
                          Params::make(1, Rational(3, 2)), Params::make(1, 3)}) {
    for (long a = 0; a <= 4; ++a) {
      Exact c = c_constant(p, Integer(a));
      EXPECT_EQ(c * c * Exact(c_radicand(p, a)), Exact(1)) << p.label() << " a=" << a;
      EXPECT_GT(c.sign(), 0);
      Exact xi = xi_constant(p, a);
      EXPECT_EQ(xi * xi + Exact(Rational(a) + p.k - p.m) * xi, Exact(p.m == 0 ? p.k : Rational(a)));
      Ref ref = Ref(1.0) / Ref::sqrt(Ref(c_radicand(p, a)));
      EXPECT_NEAR(c.to_double(), ref.to_double(), 1e-15);
      if (a > 0) EXPECT_EQ(compare(c, c_constant(p, a - 1)), Ordering::Less);
    }
  }
  EXPECT_EQ(c_constant(Params::make(1, 2), std::nullopt), Exact(0));
  EXPECT_EQ(c_constant(Params::make(1, 3), Integer(0)), Exact(Rational(1, 2)));
}

TEST(Constants, MarkoffValuesAtClassicalParameter) {
  auto [first, second] = markoff_constants(Params::make(0, 1));
  EXPECT_EQ(first, Exact::surd(0, 1, 5, 5));
  EXPECT_EQ(second, Exact::surd(0, 1, 2, 4));
  Ref r5 = Ref(1.0) / Ref::sqrt(Ref(5.0)), r8 = Ref(1.0) / Ref::sqrt(Ref(8.0));
  for (const auto& [value, ref] : {std::pair{first, r5}, std::pair{second, r8}}) {
    BigReal b(value, 40);
    EXPECT_LE(mpfr_cmp(b.lo(), ref.get()), 0);
    EXPECT_GE(mpfr_cmp(b.hi(), ref.get()), 0);
    EXPECT_LT(b.width().to_double(), 1e-30);
  }
  auto [g1, g2] = markoff_constants(Params::make(0, 2));
  EXPECT_EQ(g1 * g1, Exact(Rational(1, 12)));
  EXPECT_EQ(g2 * g2, Exact(Rational(1, 17)));
}

TEST(Constants, ConstantOrbitIsConstant) {
  for (const Params& p : kArithmetic) {
    for (long a = 0; a <= 2; ++a) {
      Exact xi = xi_constant(p, a);
      DynamicPair<Exact> seed{p, xi, Exact(Rational(Rational(p.m) - p.k - a)) - xi, 0};
      BACSegment<Exact> s = bac_from_orbit(orbit(seed, 10, 10));
      for (const Exact& t : s.theta) EXPECT_EQ(t, c_constant(p, a)) << p.label() << " a=" << a;
      TripleReport r = check_triple(p, s.theta[0], s.theta[1], s.theta[2], Integer(a));
      EXPECT_TRUE(r.constant);
    }
  }
}

TEST(Triples, GaussFamilyBracketsTheConstant) {
  std::mt19937_64 rng(59);
  for (const Params& p : {Params::make(0, 1), Params::make(0, 2)}) {
    for (int i = 0; i < 60; ++i) {
      Orbit<Exact> o = orbit(random_exact_pair(p, rng), 4, 4);
      for (long n = o.pairs.front().n + 1; n < o.pairs.back().n; ++n) {
        Exact prev = theta_dynamic(o.at(n - 1)), cur = theta_dynamic(o.at(n)), next = theta_dynamic(o.at(n + 1));
        Integer a = forward_digit(o.at(n - 1));
        Exact c = c_constant(p, a);
        Exact lo = std::min({prev, cur, next}, [](const Exact& x, const Exact& y) { return compare(x, y) == Ordering::Less; });
        Exact hi = std::max({prev, cur, next}, [](const Exact& x, const Exact& y) { return compare(x, y) == Ordering::Less; });
        EXPECT_EQ(compare(lo, c), Ordering::Less);
        EXPECT_EQ(compare(c, hi), Ordering::Less);
        EXPECT_NO_THROW(check_triple(p, prev, cur, next, a));
      }
    }
  }
}

TEST(Triples, ViolationIsReported) {
  Params p = Params::make(0, 1);
  Exact above = Exact(Rational(9, 10));
  try {
    check_triple(p, above, above, Exact(Rational(8, 10)), Integer(0));
    FAIL() << "expected TheoremViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TheoremViolation);
  }
}

TEST(Renyi, BoundsAreOrderedConstants) {
  Params p = Params::make(1, 2);
  auto [lo, hi] = renyi_bounds(p, 1, Integer(3));
  EXPECT_EQ(lo, c_constant(p, 3));
  EXPECT_EQ(hi, c_constant(p, 1));
  auto [lo_inf, hi0] = renyi_bounds(p, 0, std::nullopt);
  EXPECT_EQ(lo_inf, Exact(0));
  EXPECT_EQ(hi0, Exact(1));
}

TEST(Eta, ClassicalUniformBound) {
  std::mt19937_64 rng(61);
  Params p = Params::make(1, 1);
  EXPECT_EQ(eta_bound(p, 0, 5, 0, 5), Rational(1));
  for (int i = 0; i < 40; ++i) {
    Orbit<Exact> o = orbit(random_exact_pair(p, rng), 6, 6);
    for (std::size_t t = 1; t < o.pairs.size(); ++t) {
      Exact eta = abs(theta_dynamic(o.pairs[t]) - theta_dynamic(o.pairs[t - 1]));
      EXPECT_EQ(compare(eta, Exact(1)), Ordering::Less);
    }
  }
}

TEST(Eta, PrintedClassicalCorollaryValue) {
  EXPECT_EQ(classical_eta_corollary(1), Exact::surd(0, 1, 2, 8));
}
