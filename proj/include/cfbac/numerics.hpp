#ifndef CFBAC_NUMERICS_HPP
#define CFBAC_NUMERICS_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "cfbac/error.hpp"

namespace cfbac {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Ordering { Less, Equal, Greater, Undecidable };

const char* ordering_name(Ordering o);

inline constexpr long kDefaultDigits = 64;
inline constexpr long kDefaultMaxDigits = 256;

// Working precision in decimal digits, honouring CFBAC_PRECISION when set.
long default_digits();

// n = s^2 * f with f square-free. Trial division up to the cube root of the
// cofactor; numbers too large to certify this way raise NotInField.
std::pair<Integer, Integer> square_free_split(const Integer& n);

// Rational or quadratic surd (p + q*sqrt(d)) / r with d square-free, r > 0 and
// gcd(p, q, r) = 1. q = 0 is the rational case and then d = 0, so equal values
// always share one representation.
class Exact {
 public:
  Exact() : p_(0), q_(0), d_(0), r_(1) {}
  Exact(const Rational& x);  // NOLINT: rationals embed implicitly
  Exact(long x) : Exact(Rational(x)) {}  // NOLINT

  // Normalizes arbitrary input, extracting the square part of d.
  static Exact surd(const Integer& p, const Integer& q, const Integer& d, const Integer& r);

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const Integer& d() const { return d_; }
  const Integer& r() const { return r_; }

  bool is_rational() const { return q_ == 0; }
  Rational rational() const;
  int sign() const;
  Integer floor() const;
  Exact conjugate() const;

  Exact operator-() const;
  friend Exact operator+(const Exact& a, const Exact& b);
  friend Exact operator-(const Exact& a, const Exact& b);
  friend Exact operator*(const Exact& a, const Exact& b);
  friend Exact operator/(const Exact& a, const Exact& b);
  Exact& operator+=(const Exact& b) { return *this = *this + b; }
  Exact& operator-=(const Exact& b) { return *this = *this - b; }
  Exact& operator*=(const Exact& b) { return *this = *this * b; }
  Exact& operator/=(const Exact& b) { return *this = *this / b; }
  friend bool operator==(const Exact& a, const Exact& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_ && a.r_ == b.r_;
  }
  friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }

  // Literal form: "p/q" for rationals, "(p+q*sqrt(d))/r" for surds.
  std::string to_string() const;
  double to_double() const;

 private:
  Exact(Integer p, Integer q, Integer d, Integer r, bool reduce);
  void reduce();

  Integer p_, q_, d_, r_;
};

// Non-negative square root inside the field of x (or of ref when x is
// rational). Raises NotInField when the root would need a second radicand.
Exact sqrt_exact(const Exact& x, const Integer& hint_radicand = 0);

// Closed interval [lo, hi] with outward rounding. Precision is tracked in
// decimal digits and every operation returns an enclosure of the exact result.
class BigReal {
 public:
  explicit BigReal(long digits = kDefaultDigits);
  BigReal(const Rational& x, long digits);
  BigReal(const Exact& x, long digits);
  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  static BigReal pi(long digits);
  // Enclosure of a decimal string such as "3.14159".
  static BigReal from_decimal(const std::string& s, long digits);
  static BigReal hull(const BigReal& a, const BigReal& b);

  long digits() const { return digits_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  Integer floor() const;  // throws Undecidable on straddle
  int sign() const;       // throws Undecidable when 0 is inside
  bool contains(const Rational& x) const;
  bool contains(const BigReal& x) const;
  bool contains_zero() const;
  bool is_point() const;
  // Upper bound of hi - lo.
  BigReal width() const;
  double to_double() const;
  // Midpoint with the given number of significant digits.
  std::string to_string(long digits) const;
  std::string to_string() const { return to_string(digits_); }
  BigReal with_digits(long digits) const;

  BigReal operator-() const;
  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, const Rational& b);
  friend BigReal operator-(const BigReal& a, const Rational& b);
  friend BigReal operator*(const BigReal& a, const Rational& b);
  friend BigReal operator/(const BigReal& a, const Rational& b);
  friend BigReal operator+(const Rational& a, const BigReal& b);
  friend BigReal operator-(const Rational& a, const BigReal& b);
  friend BigReal operator*(const Rational& a, const BigReal& b);
  friend BigReal operator/(const Rational& a, const BigReal& b);
  friend BigReal sqrt(const BigReal& a);
  friend BigReal abs(const BigReal& a);

 private:
  void init(long digits);

  mpfr_t lo_, hi_;
  long digits_;
};

mpfr_prec_t bits_for_digits(long digits);

// Backend-generic helpers used by the templated algorithms.
inline Integer floor_of(const Exact& x) { return x.floor(); }
inline Integer floor_of(const BigReal& x) { return x.floor(); }
inline int sign_of(const Exact& x) { return x.sign(); }
inline int sign_of(const BigReal& x) { return x.sign(); }
inline Exact lift(const Rational& v, const Exact&) { return Exact(v); }
inline BigReal lift(const Rational& v, const BigReal& like) { return BigReal(v, like.digits()); }
inline Exact lift(const Exact& v, const Exact&) { return v; }
inline BigReal lift(const Exact& v, const BigReal& like) { return BigReal(v, like.digits()); }
inline Exact sqrt_in(const Exact& x, const Exact& ref) {
  return sqrt_exact(x, x.is_rational() ? ref.d() : x.d());
}
inline BigReal sqrt_in(const BigReal& x, const BigReal&) { return sqrt(x); }
inline double to_double(const Exact& x) { return x.to_double(); }
inline double to_double(const BigReal& x) { return x.to_double(); }
inline Exact abs(const Exact& x) { return x.sign() < 0 ? -x : x; }
inline BigReal to_big(const Exact& x, long digits) { return BigReal(x, digits); }
inline BigReal to_big(const BigReal& x, long) { return x; }
std::string format(const Exact& x);
std::string format(const BigReal& x);

Ordering compare(const Exact& a, const Exact& b);
Ordering compare(const BigReal& a, const BigReal& b);
Ordering compare(const BigReal& a, const Rational& b);

// True when the intervals are disjoint or both are the same point, i.e. the
// sign of a - b is decided.
inline bool decided(Ordering o) { return o != Ordering::Undecidable; }

// Runs f(digits) with digits doubling from `digits` up to `max_digits` while
// it throws Undecidable or PrecisionExhausted. The final failure propagates
// as PrecisionExhausted.
template <class F>
auto escalate(long digits, long max_digits, F&& f) -> decltype(f(digits)) {
  for (;;) {
    try {
      return f(digits);
    } catch (const PrecisionExhausted& e) {
      if (digits >= max_digits) throw;
    } catch (const Undecidable& e) {
      if (digits >= max_digits) throw PrecisionExhausted(0, e.what());
    }
    digits = std::min(digits * 2, max_digits);
  }
}

// floor of a real given by an enclosure producer; nullopt when the enclosure
// still straddles an integer at max_digits.
std::optional<Integer> floor_verified(const std::function<BigReal(long)>& x, long digits,
                                      long max_digits);

// Real literal: exact ("p/q", "(p+q*sqrt(d))/r") or decimal ("~3.14@40").
struct RealLiteral {
  bool exact = true;
  Exact value;
  std::string decimal;
  long digits = 0;

  BigReal enclosure(long working_digits) const;
};

RealLiteral parse_real(const std::string& text);
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& x);

}  // namespace cfbac

#endif
