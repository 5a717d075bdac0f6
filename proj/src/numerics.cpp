#include "cfbac/numerics.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <vector>

namespace cfbac {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DistinctRadicands: return "DistinctRadicands";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OutOfRegion: return "OutOfRegion";
    case ErrorCode::UnsupportedParameter: return "UnsupportedParameter";
    case ErrorCode::ExactnessRequired: return "ExactnessRequired";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::Undecidable: return "Undecidable";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotInField: return "NotInField";
  }
  return "Error";
}

const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
    case Ordering::Undecidable: return "Undecidable";
  }
  return "?";
}

long default_digits() {
  if (const char* env = std::getenv("CFBAC_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultDigits;
}

std::pair<Integer, Integer> square_free_split(const Integer& n) {
  if (n < 0) throw Error(ErrorCode::DomainError, "square_free_split of a negative number");
  if (n == 0) return {0, 0};
  // 10^36: cube-root trial division stays around 10^12 operations beyond this.
  static const Integer kLimit("1000000000000000000000000000000000000");
  Integer rest = n;
  Integer square = 1;
  auto strip = [&](unsigned long p) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p * p)) {
      rest /= p * p;
      square *= p;
    }
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      // Remember the single factor so it can be restored after the loop.
      return true;
    }
    return false;
  };
  Integer free_part = 1;
  for (unsigned long p = 2;; p = (p == 2 ? 3 : p + 2)) {
    Integer cube = Integer(p) * p * p;
    if (cube > rest) break;
    if (rest > kLimit && p > 1000000) {
      throw Error(ErrorCode::NotInField, "radicand too large to certify square-free");
    }
    if (strip(p)) free_part *= p;
  }
  // rest has no prime factor below its cube root: 1, prime, p*q or p^2.
  if (rest > 1 && mpz_perfect_square_p(rest.get_mpz_t())) {
    Integer s = sqrt(rest);
    square *= s;
    rest = 1;
  }
  return {square, free_part * rest};
}

namespace {

bool rational_square(const Rational& x, Rational& root) {
  if (sgn(x) < 0) return false;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) {
    return false;
  }
  root = Rational(Integer(sqrt(x.get_num())), Integer(sqrt(x.get_den())));
  root.canonicalize();
  return true;
}

Integer gcd3(const Integer& a, const Integer& b, const Integer& c) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

const Integer& common_radicand(const Exact& a, const Exact& b) {
  if (a.is_rational()) return b.d();
  if (b.is_rational()) return a.d();
  if (a.d() != b.d()) {
    throw Error(ErrorCode::DistinctRadicands,
                "sqrt(" + a.d().get_str() + ") and sqrt(" + b.d().get_str() + ")");
  }
  return a.d();
}

}  // namespace

Exact::Exact(const Rational& x) : p_(x.get_num()), q_(0), d_(0), r_(x.get_den()) {}

Exact::Exact(Integer p, Integer q, Integer d, Integer r, bool do_reduce)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
  if (do_reduce) reduce();
}

void Exact::reduce() {
  if (r_ == 0) throw Error(ErrorCode::DivisionByZero, "surd with zero denominator");
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  if (q_ == 0) d_ = 0;
  Integer g = gcd3(p_, q_, r_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

Exact Exact::surd(const Integer& p, const Integer& q, const Integer& d, const Integer& r) {
  if (r == 0) throw Error(ErrorCode::DivisionByZero, "surd with zero denominator");
  if (d < 0) throw Error(ErrorCode::DomainError, "negative radicand");
  if (q == 0 || d == 0) return Exact(p, 0, 0, r, true);
  auto [s, f] = square_free_split(d);
  if (f == 1) return Exact(p + q * s, 0, 0, r, true);
  return Exact(p, q * s, f, r, true);
}

Rational Exact::rational() const {
  if (!is_rational()) throw Error(ErrorCode::ExactnessRequired, "value is not rational: " + to_string());
  Rational v(p_, r_);
  v.canonicalize();
  return v;
}

int Exact::sign() const {
  int sp = sgn(p_);
  int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  Integer lhs = p_ * p_;
  Integer rhs = q_ * q_ * d_;
  return lhs > rhs ? sp : sq;
}

Integer Exact::floor() const {
  Integer out;
  if (q_ == 0) {
    mpz_fdiv_q(out.get_mpz_t(), p_.get_mpz_t(), r_.get_mpz_t());
    return out;
  }
  // floor(q*sqrt(d)) from isqrt(q^2 d); q^2 d is never a perfect square here.
  Integer s = sqrt(Integer(q_ * q_ * d_));
  if (q_ < 0) s = -s - 1;
  Integer num = p_ + s;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), r_.get_mpz_t());
  return out;
}

Exact Exact::conjugate() const { return Exact(p_, -q_, d_, r_, false); }

Exact Exact::operator-() const { return Exact(-p_, -q_, d_, r_, false); }

Exact operator+(const Exact& a, const Exact& b) {
  if (a.is_rational() && b.is_rational()) {
    return Exact(a.p_ * b.r_ + b.p_ * a.r_, 0, 0, a.r_ * b.r_, true);
  }
  const Integer& d = common_radicand(a, b);
  return Exact(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, d, a.r_ * b.r_, true);
}

Exact operator-(const Exact& a, const Exact& b) { return a + (-b); }

Exact operator*(const Exact& a, const Exact& b) {
  if (a.is_rational() && b.is_rational()) {
    return Exact(a.p_ * b.p_, 0, 0, a.r_ * b.r_, true);
  }
  const Integer& d = common_radicand(a, b);
  return Exact(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, d, a.r_ * b.r_, true);
}

Exact operator/(const Exact& a, const Exact& b) {
  if (b.p_ == 0 && b.q_ == 0) throw Error(ErrorCode::DivisionByZero, "division by exact zero");
  if (b.is_rational()) return a * Exact(b.r_, 0, 0, b.p_, true);
  Integer norm = b.p_ * b.p_ - b.q_ * b.q_ * b.d_;
  Exact inv(b.p_ * b.r_, -b.q_ * b.r_, b.d_, norm, true);
  return a * inv;
}

std::string Exact::to_string() const {
  if (q_ == 0) {
    if (r_ == 1) return p_.get_str();
    return p_.get_str() + "/" + r_.get_str();
  }
  std::string out = "(" + p_.get_str();
  out += q_ < 0 ? "-" : "+";
  out += Integer(abs(q_)).get_str() + "*sqrt(" + d_.get_str() + "))/" + r_.get_str();
  return out;
}

double Exact::to_double() const { return BigReal(*this, 20).to_double(); }

Exact sqrt_exact(const Exact& x, const Integer& hint_radicand) {
  if (x.sign() < 0) throw Error(ErrorCode::DomainError, "square root of a negative number");
  Rational root;
  if (x.is_rational()) {
    Rational v = x.rational();
    if (rational_square(v, root)) return Exact(root);
    if (hint_radicand > 1) {
      Rational scaled = v / Rational(hint_radicand);
      if (rational_square(scaled, root)) {
        return Exact::surd(0, root.get_num(), hint_radicand, root.get_den());
      }
    }
    // sqrt(a/b) = sqrt(a*b)/b
    Integer ab = v.get_num() * v.get_den();
    auto [s, f] = square_free_split(ab);
    return Exact::surd(0, s, f, v.get_den());
  }
  // x = A + B sqrt(d); a root a + b sqrt(d) needs a^2 + d b^2 = A and 2ab = B.
  Rational A(x.p(), x.r());
  Rational B(x.q(), x.r());
  A.canonicalize();
  B.canonicalize();
  Rational dd(x.d());
  Rational norm = A * A - dd * B * B;
  Rational s;
  if (!rational_square(norm, s)) {
    throw Error(ErrorCode::NotInField, "no square root of " + x.to_string() + " in its field");
  }
  for (const Rational& t : {Rational((A + s) / 2), Rational((A - s) / 2)}) {
    Rational alpha;
    if (sgn(t) <= 0 || !rational_square(t, alpha)) continue;
    Rational beta = B / (2 * alpha);
    Exact cand = Exact(alpha) + Exact(beta) * Exact::surd(0, 1, x.d(), 1);
    if (cand * cand == x) return cand.sign() < 0 ? -cand : cand;
  }
  throw Error(ErrorCode::NotInField, "no square root of " + x.to_string() + " in its field");
}

// ---------------------------------------------------------------------------

mpfr_prec_t bits_for_digits(long digits) {
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 16;
}

void BigReal::init(long digits) {
  digits_ = digits;
  mpfr_init2(lo_, bits_for_digits(digits));
  mpfr_init2(hi_, bits_for_digits(digits));
}

BigReal::BigReal(long digits) {
  init(digits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

BigReal::BigReal(const Rational& x, long digits) {
  init(digits);
  mpfr_set_q(lo_, x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, x.get_mpq_t(), MPFR_RNDU);
}

BigReal::BigReal(const Exact& x, long digits) {
  init(digits);
  if (x.is_rational()) {
    Rational v = x.rational();
    mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
    return;
  }
  // Extra guard digits keep the enclosure tight after the few operations.
  long g = digits + 10;
  BigReal root = sqrt(BigReal(Rational(x.d()), g));
  BigReal v(g);
  if (sgn(x.p()) * sgn(x.q()) < 0) {
    // p and q sqrt(d) nearly cancel; divide the exact norm by the conjugate.
    Integer norm = x.p() * x.p() - x.q() * x.q() * x.d();
    v = Rational(norm) / ((BigReal(Rational(x.p()), g) - root * Rational(x.q())) * Rational(x.r()));
  } else {
    v = (BigReal(Rational(x.p()), g) + root * Rational(x.q())) / Rational(x.r());
  }
  mpfr_set(lo_, v.lo_, MPFR_RNDD);
  mpfr_set(hi_, v.hi_, MPFR_RNDU);
}

BigReal::BigReal(const BigReal& o) {
  init(o.digits_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

BigReal::BigReal(BigReal&& o) noexcept {
  init(o.digits_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this == &o) return *this;
  if (digits_ != o.digits_) {
    mpfr_set_prec(lo_, bits_for_digits(o.digits_));
    mpfr_set_prec(hi_, bits_for_digits(o.digits_));
    digits_ = o.digits_;
  }
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  if (this == &o) return *this;
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(digits_, o.digits_);
  return *this;
}

BigReal::~BigReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

BigReal BigReal::pi(long digits) {
  BigReal out(digits);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

BigReal BigReal::from_decimal(const std::string& s, long digits) {
  BigReal out(digits);
  char* end = nullptr;
  mpfr_strtofr(out.lo_, s.c_str(), &end, 10, MPFR_RNDD);
  if (end == s.c_str() || *end != '\0') throw Error(ErrorCode::ParseError, "bad decimal: " + s);
  mpfr_strtofr(out.hi_, s.c_str(), &end, 10, MPFR_RNDU);
  return out;
}

BigReal BigReal::hull(const BigReal& a, const BigReal& b) {
  BigReal out(std::max(a.digits_, b.digits_));
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Integer BigReal::floor() const {
  Integer a, b;
  mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
  if (a != b) throw Undecidable("enclosure straddles an integer");
  return a;
}

int BigReal::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
  throw Undecidable("enclosure contains zero");
}

bool BigReal::contains(const Rational& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool BigReal::contains(const BigReal& x) const {
  return mpfr_cmp(lo_, x.lo_) <= 0 && mpfr_cmp(hi_, x.hi_) >= 0;
}

bool BigReal::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool BigReal::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

BigReal BigReal::width() const {
  BigReal out(digits_);
  mpfr_sub(out.hi_, hi_, lo_, MPFR_RNDU);
  mpfr_sub(out.lo_, hi_, lo_, MPFR_RNDD);
  return out;
}

double BigReal::to_double() const {
  mpfr_t mid;
  mpfr_init2(mid, mpfr_get_prec(lo_) + 1);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  double v = mpfr_get_d(mid, MPFR_RNDN);
  mpfr_clear(mid);
  return v;
}

std::string BigReal::to_string(long digits) const {
  mpfr_t mid;
  mpfr_init2(mid, mpfr_get_prec(lo_) + 1);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", static_cast<int>(std::max(1L, digits) - 1), mid);
  std::string out(buf);
  mpfr_free_str(buf);
  mpfr_clear(mid);
  return out;
}

BigReal BigReal::with_digits(long digits) const {
  BigReal out(digits);
  mpfr_set(out.lo_, lo_, MPFR_RNDD);
  mpfr_set(out.hi_, hi_, MPFR_RNDU);
  return out;
}

BigReal BigReal::operator-() const {
  BigReal out(digits_);
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal out(std::max(a.digits_, b.digits_));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal out(std::max(a.digits_, b.digits_));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

namespace {

using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

void corner_hull(mpfr_ptr lo, mpfr_ptr hi, mpfr_srcptr alo, mpfr_srcptr ahi, mpfr_srcptr blo,
                 mpfr_srcptr bhi, BinOp op) {
  mpfr_srcptr as[2] = {alo, ahi};
  mpfr_srcptr bs[2] = {blo, bhi};
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(lo));
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      op(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, lo)) mpfr_set(lo, t, MPFR_RNDD);
      op(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, hi)) mpfr_set(hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
}

}  // namespace

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal out(std::max(a.digits_, b.digits_));
  corner_hull(out.lo_, out.hi_, a.lo_, a.hi_, b.lo_, b.hi_, mpfr_mul);
  return out;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  if (b.contains_zero()) {
    if (b.is_point()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    throw Undecidable("divisor enclosure contains zero");
  }
  BigReal out(std::max(a.digits_, b.digits_));
  corner_hull(out.lo_, out.hi_, a.lo_, a.hi_, b.lo_, b.hi_, mpfr_div);
  return out;
}

BigReal operator+(const BigReal& a, const Rational& b) { return a + BigReal(b, a.digits_); }
BigReal operator-(const BigReal& a, const Rational& b) { return a - BigReal(b, a.digits_); }
BigReal operator*(const BigReal& a, const Rational& b) { return a * BigReal(b, a.digits_); }
BigReal operator/(const BigReal& a, const Rational& b) { return a / BigReal(b, a.digits_); }
BigReal operator+(const Rational& a, const BigReal& b) { return BigReal(a, b.digits_) + b; }
BigReal operator-(const Rational& a, const BigReal& b) { return BigReal(a, b.digits_) - b; }
BigReal operator*(const Rational& a, const BigReal& b) { return BigReal(a, b.digits_) * b; }
BigReal operator/(const Rational& a, const BigReal& b) { return BigReal(a, b.digits_) / b; }

BigReal sqrt(const BigReal& a) {
  if (mpfr_sgn(a.hi_) < 0) throw Error(ErrorCode::DomainError, "square root of a negative enclosure");
  BigReal out(a.digits_);
  if (mpfr_sgn(a.lo_) < 0) {
    mpfr_set_zero(out.lo_, 1);
  } else {
    mpfr_sqrt(out.lo_, a.lo_, MPFR_RNDD);
  }
  mpfr_sqrt(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

BigReal abs(const BigReal& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  BigReal out(a.digits_);
  mpfr_set_zero(out.lo_, 1);
  mpfr_neg(out.hi_, a.lo_, MPFR_RNDU);
  if (mpfr_greater_p(a.hi_, out.hi_)) mpfr_set(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

std::string format(const Exact& x) { return x.to_string(); }

std::string format(const BigReal& x) { return "~" + x.to_string() + "@" + std::to_string(x.digits()); }

namespace {

Ordering from_sign(int s) { return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal); }

}  // namespace

Ordering compare(const Exact& a, const Exact& b) {
  if (!a.is_rational() && !b.is_rational() && a.d() != b.d()) {
    // a - b = X + t with X in Q(sqrt a.d) and t = -b's surd part; X + t is
    // never zero, and its sign is that of the larger of |X| and |t|.
    Rational ra(a.p(), a.r()), rb(b.p(), b.r());
    ra.canonicalize();
    rb.canonicalize();
    Exact X = Exact(Rational(ra - rb)) + Exact::surd(0, a.q(), a.d(), a.r());
    Exact t = Exact::surd(0, -b.q(), b.d(), b.r());
    int sx = X.sign(), st = t.sign();
    if (sx == st || sx == 0) return from_sign(st);
    Exact t2 = t * t;
    return from_sign((X * X - t2).sign() > 0 ? sx : st);
  }
  int s = (a - b).sign();
  return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}

Ordering compare(const BigReal& a, const BigReal& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return Ordering::Less;
  if (mpfr_greater_p(a.lo(), b.hi())) return Ordering::Greater;
  if (a.is_point() && b.is_point() && mpfr_equal_p(a.lo(), b.lo())) return Ordering::Equal;
  return Ordering::Undecidable;
}

Ordering compare(const BigReal& a, const Rational& b) {
  if (mpfr_cmp_q(a.hi(), b.get_mpq_t()) < 0) return Ordering::Less;
  if (mpfr_cmp_q(a.lo(), b.get_mpq_t()) > 0) return Ordering::Greater;
  if (a.is_point() && mpfr_cmp_q(a.lo(), b.get_mpq_t()) == 0) return Ordering::Equal;
  return Ordering::Undecidable;
}

std::optional<Integer> floor_verified(const std::function<BigReal(long)>& x, long digits,
                                      long max_digits) {
  try {
    return escalate(digits, max_digits, [&](long d) { return x(d).floor(); });
  } catch (const PrecisionExhausted&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string normalize_literal(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    // U+2212 MINUS SIGN
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out += '-';
      i += 2;
      continue;
    }
    if (!std::isspace(c)) out += static_cast<char>(c);
  }
  return out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex kRational(R"(^([+-]?\d+)(?:/([+-]?\d+))?$)");
  std::string s = normalize_literal(text);
  std::smatch m;
  if (!std::regex_match(s, m, kRational)) throw Error(ErrorCode::ParseError, "not a rational: " + text);
  Integer num(m[1].str());
  Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in " + text);
  Rational v(num, den);
  v.canonicalize();
  return v;
}

std::string format_rational(const Rational& x) { return Exact(x).to_string(); }

RealLiteral parse_real(const std::string& text) {
  std::string s = normalize_literal(text);
  RealLiteral lit;
  if (!s.empty() && s[0] == '~') {
    lit.exact = false;
    auto at = s.find('@');
    lit.decimal = s.substr(1, at == std::string::npos ? std::string::npos : at - 1);
    lit.digits = default_digits();
    if (at != std::string::npos) {
      try {
        lit.digits = std::stol(s.substr(at + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad precision in " + text);
      }
    }
    if (lit.digits <= 0) throw Error(ErrorCode::ParseError, "bad precision in " + text);
    BigReal::from_decimal(lit.decimal, lit.digits);  // validates the digits
    return lit;
  }
  if (s.find("sqrt") == std::string::npos) {
    lit.value = Exact(parse_rational(s));
    return lit;
  }
  static const std::regex kFull(R"(^\(([+-]?\d+)([+-])(\d*)\*?sqrt\((\d+)\)\)(?:/([+-]?\d+))?$)");
  static const std::regex kBare(R"(^([+-]?\d+)([+-])(\d*)\*?sqrt\((\d+)\)$)");
  static const std::regex kPure(R"(^\(?([+-]?)(\d*)\*?sqrt\((\d+)\)\)?(?:/([+-]?\d+))?$)");
  std::smatch m;
  Integer p, q, d, r(1);
  auto coeff = [](const std::string& sign, const std::string& digits) {
    Integer c = digits.empty() ? Integer(1) : Integer(digits);
    return sign == "-" ? Integer(-c) : c;
  };
  if (std::regex_match(s, m, kFull) || std::regex_match(s, m, kBare)) {
    p = Integer(m[1].str());
    q = coeff(m[2].str(), m[3].str());
    d = Integer(m[4].str());
    if (m.size() > 5 && m[5].matched) r = Integer(m[5].str());
  } else if (std::regex_match(s, m, kPure)) {
    p = 0;
    q = coeff(m[1].str(), m[2].str());
    d = Integer(m[3].str());
    if (m[4].matched) r = Integer(m[4].str());
  } else {
    throw Error(ErrorCode::ParseError, "not a real literal: " + text);
  }
  lit.value = Exact::surd(p, q, d, r);
  return lit;
}

BigReal RealLiteral::enclosure(long working_digits) const {
  if (exact) return BigReal(value, working_digits);
  return BigReal::from_decimal(decimal, std::max(working_digits, digits));
}

}  // namespace cfbac
