#include "cfbac/expansion.hpp"

#include <algorithm>

namespace cfbac {

Params Params::make(int m, const Rational& k) {
  if (m != 0 && m != 1) throw Error(ErrorCode::DomainError, "m must be 0 or 1");
  if (sgn(k) <= 0) throw Error(ErrorCode::DomainError, "k must be positive");
  if (m == 1 && k < 1) throw Error(ErrorCode::UnsupportedParameter, "m = 1 needs k >= 1");
  Params p;
  p.m = m;
  p.k = k;
  p.k.canonicalize();
  return p;
}

std::string Params::label() const { return "(m=" + std::to_string(m) + ", k=" + format_rational(k) + ")"; }

bool operator==(const Params& a, const Params& b) { return a.m == b.m && a.k == b.k; }

const char* status_name(ExpansionStatus s) {
  switch (s) {
    case ExpansionStatus::Terminated: return "terminated";
    case ExpansionStatus::MaxSteps: return "max_steps";
    case ExpansionStatus::PrecisionExhausted: return "precision_exhausted";
  }
  return "?";
}

namespace {

void check_unit_interval(const Exact& x) {
  if (x.sign() < 0 || compare(x, Exact(1)) != Ordering::Less) {
    throw Error(ErrorCode::DomainError, "x outside [0,1): " + x.to_string());
  }
}

void check_unit_interval(const BigReal& x) {
  if (compare(x, Rational(0)) == Ordering::Less || compare(x, Rational(1)) == Ordering::Greater ||
      compare(x, Rational(1)) == Ordering::Equal) {
    throw Error(ErrorCode::DomainError, "x outside [0,1): " + format(x));
  }
}

bool is_zero(const Exact& x) { return x.sign() == 0; }

bool is_zero(const BigReal& x) { return x.sign() == 0; }

}  // namespace

template <class R>
R apply_A(const Params& params, const R& x) {
  check_unit_interval(x);
  if (params.m == 0) {
    if (is_zero(x)) return x;
    return params.k * (Rational(1) - x) / x;
  }
  return params.k * x / (Rational(1) - x);
}

template <class R>
std::pair<Integer, R> step_T(const Params& params, const R& x) {
  R r = apply_A(params, x);
  Integer a = floor_of(r);
  R future = r - Rational(a);
  return {a, future};
}

template <class R>
Expansion<R> expand(const Params& params, const R& x0, std::size_t max_steps) {
  Expansion<R> e{params, x0, {}, {}, {}, ExpansionStatus::MaxSteps};
  R x = x0;
  try {
    if (is_zero(x)) {
      e.status = ExpansionStatus::Terminated;
      return e;
    }
    while (e.digits.size() < max_steps) {
      R r = apply_A(params, x);
      Integer a = floor_of(r);
      x = r - Rational(a);
      e.digits.push_back(a);
      e.remainders.push_back(r);
      e.futures.push_back(x);
      if (is_zero(x)) {
        e.status = ExpansionStatus::Terminated;
        return e;
      }
    }
  } catch (const Undecidable&) {
    e.status = ExpansionStatus::PrecisionExhausted;
  }
  return e;
}

Expansion<BigReal> expand_escalating(const Params& params, const std::function<BigReal(long)>& seed,
                                     std::size_t max_steps, long digits, long max_digits) {
  for (;;) {
    Expansion<BigReal> e = expand(params, seed(digits), max_steps);
    if (e.status != ExpansionStatus::PrecisionExhausted || digits >= max_digits) return e;
    digits = std::min(digits * 2, max_digits);
  }
}

template <class R>
R evaluate(const Params& params, const Digits& digits, const R& tail) {
  R x = tail;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    Rational shift = Rational(*it) + params.k;
    if (params.m == 0) {
      x = params.k / (x + shift);
    } else {
      x = Rational(1) - params.k / (x + shift);
    }
  }
  return x;
}

Exact evaluate(const Params& params, const Digits& digits) { return evaluate(params, digits, Exact(0)); }

std::vector<Convergent> convergents(const Params& params, const Digits& digits, bool reduced) {
  const Integer& s = params.k.get_num();
  const Integer& t = params.k.get_den();
  // Running product [[a, b], [c, d]] of the integerized digit matrices.
  Integer a = 1, b = 0, c = 0, d = 1;
  std::vector<Convergent> out;
  for (const Integer& digit : digits) {
    Integer ma, mb, mc, md;
    if (params.m == 0) {
      ma = 0, mb = s, mc = t, md = digit * t + s;
    } else {
      ma = t, mb = digit * t, mc = t, md = digit * t + s;
    }
    Integer na = a * ma + b * mc, nb = a * mb + b * md;
    Integer nc = c * ma + d * mc, nd = c * mb + d * md;
    a = na, b = nb, c = nc, d = nd;
    Convergent cv{b, d, a * d - b * c};
    if (reduced) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), cv.p.get_mpz_t(), cv.q.get_mpz_t());
      if (g > 1) {
        cv.p /= g;
        cv.q /= g;
      }
    }
    out.push_back(cv);
  }
  return out;
}

Rational past_Y(const Params& params, const Digits& prefix) {
  Rational base = Rational(params.m) - params.k;
  if (prefix.empty()) return base;
  Rational y = base - Rational(prefix.back());
  if (prefix.size() == 1) return y;
  Digits rev(prefix.rbegin() + 1, prefix.rend());
  return y - evaluate(params, rev).rational();
}

template <class R>
R theta_def(const Expansion<R>& e, std::size_t n) {
  if (n < 1 || n > e.digits.size()) throw Error(ErrorCode::DomainError, "theta_def index out of range");
  Digits prefix(e.digits.begin(), e.digits.begin() + static_cast<long>(n));
  Convergent cv = convergents(e.params, prefix).back();
  Rational conv(cv.p, cv.q);
  conv.canonicalize();
  Integer det = abs(cv.det);
  Rational scale = Rational(cv.q * cv.q) / (e.params.k * Rational(det));
  return abs(e.x0 - conv) * scale;
}

template <class R>
R theta_perron(const Expansion<R>& e, std::size_t n) {
  if (n < 1 || n > e.digits.size()) throw Error(ErrorCode::DomainError, "theta_perron index out of range");
  Digits prefix(e.digits.begin(), e.digits.begin() + static_cast<long>(n));
  Rational y = past_Y(e.params, prefix);
  return Rational(1) / (e.futures[n - 1] - y);
}

bool Cylinder::contains(const Rational& x) const {
  bool above = lo_open ? x > lo : x >= lo;
  bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

Cylinder cylinder(const Params& params, const Digits& digits) {
  Cylinder c;
  if (digits.empty()) {
    c.lo = 0;
    c.hi = 1;
    return c;
  }
  Rational at_zero = evaluate(params, digits, Exact(0)).rational();
  Rational at_one = evaluate(params, digits, Exact(1)).rational();
  // The tail-0 endpoint carries exactly these digits unless the last digit is
  // 0, in which case its expansion is shorter.
  bool zero_closed = digits.back() != 0;
  if (at_zero < at_one) {
    c.lo = at_zero, c.hi = at_one;
    c.lo_open = !zero_closed;
    c.hi_open = true;
  } else {
    c.lo = at_one, c.hi = at_zero;
    c.lo_open = true;
    c.hi_open = !zero_closed;
  }
  return c;
}

std::optional<std::size_t> is_mk_rational(const Params& params, const Exact& x, std::size_t max_rank) {
  Exact v = x;
  for (std::size_t rank = 0;; ++rank) {
    if (v.sign() == 0) return rank;
    if (rank == max_rank || !v.is_rational()) return std::nullopt;
    v = step_T(params, v).second;
  }
}

std::optional<std::size_t> is_mk_rational(const Params&, const BigReal&, std::size_t) {
  throw Error(ErrorCode::ExactnessRequired, "rationality can only be certified on exact input");
}

Exact periodic_point(const Params& params, const Digits& period) {
  if (period.empty()) return Exact(0);
  Rational a = 1, b = 0, c = 0, d = 1;
  for (const Integer& digit : period) {
    Rational ma, mb, mc, md;
    Rational shift = Rational(digit) + params.k;
    if (params.m == 0) {
      ma = 0, mb = params.k, mc = 1, md = shift;
    } else {
      ma = 1, mb = Rational(digit), mc = 1, md = shift;
    }
    Rational na = a * ma + b * mc, nb = a * mb + b * md;
    Rational nc = c * ma + d * mc, nd = c * mb + d * md;
    a = na, b = nb, c = nc, d = nd;
  }
  // Fixed points of (a x + b)/(c x + d): c x^2 + (d - a) x - b = 0. The wanted
  // one attracts under the contracting inverse branch: (c x + d)^2 > |det|.
  Rational det = abs(Rational(a * d - b * c));
  std::vector<Exact> roots;
  if (c == 0) {
    roots.push_back(Exact(Rational(b / (d - a))));
  } else {
    Rational disc = (d - a) * (d - a) + 4 * b * c;
    Exact root = sqrt_exact(Exact(disc));
    roots.push_back((Exact(Rational(a - d)) + root) / Exact(Rational(2 * c)));
    roots.push_back((Exact(Rational(a - d)) - root) / Exact(Rational(2 * c)));
  }
  for (const Exact& x : roots) {
    if (x.sign() < 0 || compare(x, Exact(1)) != Ordering::Less) continue;
    Exact slope = Exact(c) * x + Exact(d);
    if (compare(slope * slope, Exact(det)) == Ordering::Greater) return x;
  }
  throw Error(ErrorCode::DomainError, "no attracting periodic point in [0,1)");
}

Exact DigitStream::value(const Params& params) const {
  return evaluate(params, prefix, periodic_point(params, period));
}

Integer DigitStream::digit(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::DomainError, "digit streams start at index 1");
  if (n <= prefix.size()) return prefix[n - 1];
  if (period.empty()) return 0;
  return period[(n - 1 - prefix.size()) % period.size()];
}

template Exact apply_A(const Params&, const Exact&);
template BigReal apply_A(const Params&, const BigReal&);
template std::pair<Integer, Exact> step_T(const Params&, const Exact&);
template std::pair<Integer, BigReal> step_T(const Params&, const BigReal&);
template Expansion<Exact> expand(const Params&, const Exact&, std::size_t);
template Expansion<BigReal> expand(const Params&, const BigReal&, std::size_t);
template Exact evaluate(const Params&, const Digits&, const Exact&);
template BigReal evaluate(const Params&, const Digits&, const BigReal&);
template Exact theta_def(const Expansion<Exact>&, std::size_t);
template BigReal theta_def(const Expansion<BigReal>&, std::size_t);
template Exact theta_perron(const Expansion<Exact>&, std::size_t);
template BigReal theta_perron(const Expansion<BigReal>&, std::size_t);

}  // namespace cfbac
