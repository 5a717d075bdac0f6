#include "cfbac/bac.hpp"

#include <algorithm>

#include "cfbac/geometry.hpp"

namespace cfbac {

void require_arithmetic(const Params& params) {
  if (params.m == 0 && params.k < 1) {
    throw Error(ErrorCode::UnsupportedParameter, "digit recovery needs k >= 1 when m = 0");
  }
  if (params.m == 1 && params.k <= 1) {
    throw Error(ErrorCode::UnsupportedParameter, "digit recovery needs k > 1 when m = 1");
  }
}

template <class R>
ApproxPair<R> psi(const DynamicPair<R>& p) {
  R u = Rational(1) / (p.x - p.y);
  R v = p.params.m == 0 ? -(p.x * p.y * u) / p.params.k
                        : (Rational(1) - p.x) * (Rational(1) - p.y) * u / p.params.k;
  return {p.params, u, v, p.n};
}

template <class R>
R discriminant(const Params& params, const R& u, const R& v) {
  R kuv = Rational(4 * params.k) * u * v;
  R t = params.m == 0 ? Rational(1) - kuv : Rational(1) + kuv;
  if (compare(t, lift(Rational(0), t)) == Ordering::Less) {
    throw Error(ErrorCode::OutOfRegion, "4kuv exceeds 1");
  }
  return sqrt_in(t, u);
}

template <class R>
DynamicPair<R> psi_inv(const Params& params, const R& u, const R& v, long n) {
  if (params.m == 0 && params.k < 1) {
    throw Error(ErrorCode::UnsupportedParameter, "Psi is not injective for m = 0, k < 1");
  }
  if (contains(gamma_prime(params), u, v) == Membership::Outside) {
    throw Error(ErrorCode::OutOfRegion, "approximation pair outside gamma prime");
  }
  R D = discriminant(params, u, v);
  R two_u = Rational(2) * u;
  if (params.m == 0) return {params, (Rational(1) - D) / two_u, -(Rational(1) + D) / two_u, n};
  return {params, Rational(1) + (Rational(1) - D) / two_u, Rational(1) - (Rational(1) + D) / two_u, n};
}

namespace {

// (1 + D)/(2u) - k is m - k - y, whose floor is a_n; 2kv/(1-D) and
// 2kv/(D-1) reduce to this form.
template <class R>
Integer digit_from(const Params& params, const R& D, const R& w) {
  try {
    Integer a = floor_of((Rational(1) + D) / (Rational(2) * w) - params.k);
    if (a < 0) throw Error(ErrorCode::OutOfRegion, "negative digit recovered");
    return a;
  } catch (const Undecidable& e) {
    throw PrecisionExhausted(0, e.what());
  }
}

}  // namespace

template <class R>
DigitPair recover_digits(const Params& params, const R& u, const R& v) {
  require_arithmetic(params);
  R D = discriminant(params, u, v);
  return {digit_from(params, D, u), digit_from(params, D, v)};
}

template <class R>
Integer classical_digit(const R& u, const R& v) {
  return recover_digits(Params::make(0, 1), u, v).a_next + 1;
}

template <class R>
R g(const Params& params, const Integer& a, const R& u, const R& v) {
  R D = discriminant(params, u, v);
  const Rational& k = params.k;
  if (params.m == 0) {
    Rational s = Rational(a) + k;
    return u + D * Rational(s / k) - v * Rational(s * s / k);
  }
  Rational s = Rational(a) + k + 1;
  return u - D * Rational(s / k) + v * Rational(s * s / k);
}

template <class R>
std::pair<R, R> extend_forward(const Params& params, const R& u, const R& v) {
  Integer a = recover_digits(params, u, v).a_next;
  R w = g(params, a, u, v);
  if (recover_digits(params, v, w).a_n != a) {
    throw PrecisionExhausted(0, "forward extension lost the digit " + a.get_str());
  }
  return {v, w};
}

template <class R>
std::pair<R, R> extend_backward(const Params& params, const R& u, const R& v) {
  Integer a = recover_digits(params, u, v).a_n;
  R w = g(params, a, v, u);
  if (recover_digits(params, w, u).a_next != a) {
    throw PrecisionExhausted(0, "backward extension lost the digit " + a.get_str());
  }
  return {w, u};
}

namespace {

template <class R>
void annotate(BACSegment<R>& seg) {
  seg.digits.clear();
  seg.eta.clear();
  for (std::size_t i = 0; i + 1 < seg.theta.size(); ++i) {
    DigitPair d = recover_digits(seg.params, seg.theta[i], seg.theta[i + 1]);
    seg.digits.push_back(d.a_n);
    if (i + 2 == seg.theta.size()) seg.digits.push_back(d.a_next);
    seg.eta.push_back(abs(seg.theta[i + 1] - seg.theta[i]));
  }
}

}  // namespace

template <class R>
BACSegment<R> reconstruct_bac(const Params& params, const R& u, const R& v, long n, std::size_t n_back,
                              std::size_t n_fwd) {
  require_arithmetic(params);
  std::vector<R> back, fwd;
  std::size_t done = 0;
  try {
    std::pair<R, R> cur{u, v};
    for (std::size_t i = 0; i < n_back; ++i, ++done) {
      cur = extend_backward(params, cur.first, cur.second);
      back.push_back(cur.first);
    }
    cur = {u, v};
    for (std::size_t i = 0; i < n_fwd; ++i, ++done) {
      cur = extend_forward(params, cur.first, cur.second);
      fwd.push_back(cur.second);
    }
  } catch (const PrecisionExhausted& e) {
    throw PrecisionExhausted(done, e.what());
  }
  BACSegment<R> seg{params, n - 1 - static_cast<long>(n_back), {}, {}, {}};
  seg.theta.assign(back.rbegin(), back.rend());
  seg.theta.push_back(u);
  seg.theta.push_back(v);
  seg.theta.insert(seg.theta.end(), fwd.begin(), fwd.end());
  annotate(seg);
  return seg;
}

template <class R>
BACSegment<R> bac_from_orbit(const Orbit<R>& orbit) {
  const auto& pairs = orbit.pairs;
  BACSegment<R> seg{pairs.front().params, pairs.front().n - 1, {}, {}, {}};
  for (const auto& p : pairs) seg.theta.push_back(theta_dynamic(p));
  seg.theta.push_back(psi(pairs.back()).v);
  seg.digits.push_back(backward_digit(pairs.front()));
  for (long j = orbit.digits.first(); j <= orbit.digits.last(); ++j) seg.digits.push_back(orbit.digits.at(j));
  seg.digits.push_back(forward_digit(pairs.back()));
  for (std::size_t i = 0; i + 1 < seg.theta.size(); ++i) seg.eta.push_back(abs(seg.theta[i + 1] - seg.theta[i]));
  return seg;
}

template <class R>
DynamicPair<R> one_sided_pair(const Expansion<R>& e, std::size_t n) {
  if (n < 1 || n > e.digits.size()) throw Error(ErrorCode::DomainError, "one-sided index out of range");
  Digits prefix(e.digits.begin(), e.digits.begin() + static_cast<long>(n));
  const R& x = e.futures[n - 1];
  return {e.params, x, lift(past_Y(e.params, prefix), x), static_cast<long>(n)};
}

Exact xi_constant(const Params& params, const Integer& a) {
  if (a < 0) throw Error(ErrorCode::DomainError, "digit must be non-negative");
  Rational b = params.m == 0 ? Rational(a + params.k) : Rational(a + params.k - 1);
  Rational c = params.m == 0 ? params.k : Rational(a);
  Exact root = sqrt_exact(Exact(Rational(b * b + 4 * c)));
  return (root - Exact(b)) / Exact(2);
}

Exact c_constant(const Params& params, const std::optional<Integer>& a) {
  if (!a) {
    if (params.m == 0) throw Error(ErrorCode::DomainError, "C_infinity exists only for m = 1");
    return Exact(0);
  }
  if (*a < 0) throw Error(ErrorCode::DomainError, "digit must be non-negative");
  Rational s = Rational(*a) + params.k;
  Rational t = params.m == 0 ? Rational(s * s + 4 * params.k) : Rational((s + 1) * (s + 1) - 4 * params.k);
  if (t == 0) throw Error(ErrorCode::UnsupportedParameter, "C_0 is unbounded for m = k = 1");
  return Exact(1) / sqrt_exact(Exact(t));
}

std::pair<Exact, Exact> markoff_constants(const Params& params) {
  if (params.m != 0) throw Error(ErrorCode::DomainError, "Markoff constants are defined for m = 0");
  if (params.k < 1) throw Error(ErrorCode::UnsupportedParameter, "Markoff constants need k >= 1");
  const Rational& k = params.k;
  return {Exact(1) / sqrt_exact(Exact(Rational(k * k + 4 * k))),
          Exact(1) / sqrt_exact(Exact(Rational(k * k + 6 * k + 1)))};
}

template <class R>
TripleReport check_triple(const Params& params, const R& prev, const R& cur, const R& next,
                          const Integer& a_next) {
  require_arithmetic(params);
  R c = lift(c_constant(params, a_next), cur);
  TripleReport rep;
  rep.constant = compare(prev, cur) == Ordering::Equal && compare(cur, next) == Ordering::Equal;
  auto margin = [](const R& a, const R& b) { return to_double(a) - to_double(b); };
  // Away from constant orbits the bounds are strict.
  auto exceeds = [&](const R& a, const R& b) {
    Ordering o = compare(a, b);
    return o == Ordering::Greater || (o == Ordering::Equal && !rep.constant);
  };
  if (params.m == 0) {
    const R& lo = std::min({prev, cur, next}, [](const R& a, const R& b) { return compare(a, b) == Ordering::Less; });
    const R& hi = std::max({prev, cur, next}, [](const R& a, const R& b) { return compare(a, b) == Ordering::Less; });
    if (exceeds(lo, c)) {
      throw Error(ErrorCode::TheoremViolation, "min of triple " + format(lo) + " reaches C_" + a_next.get_str());
    }
    if (exceeds(c, hi)) {
      throw Error(ErrorCode::TheoremViolation, "max of triple " + format(hi) + " is not above C_" + a_next.get_str());
    }
    rep.low_margin = margin(c, lo);
    rep.high_margin = margin(hi, c);
    return rep;
  }
  auto below = [](const R& a, const R& b) { return compare(a, b) == Ordering::Less; };
  bool is_max = !below(cur, prev) && !below(cur, next);
  bool is_min = !below(prev, cur) && !below(next, cur);
  if (is_max) {
    if (exceeds(cur, c)) {
      throw Error(ErrorCode::TheoremViolation, "local maximum " + format(cur) + " reaches C_" + a_next.get_str());
    }
    rep.high_margin = margin(c, cur);
  }
  if (is_min) {
    if (exceeds(c, cur)) {
      throw Error(ErrorCode::TheoremViolation, "local minimum " + format(cur) + " reaches C_" + a_next.get_str());
    }
    rep.low_margin = margin(cur, c);
  }
  return rep;
}

std::pair<Exact, Exact> renyi_bounds(const Params& params, const Integer& l, const std::optional<Integer>& L) {
  if (params.m != 1 || params.k <= 1) throw Error(ErrorCode::DomainError, "Renyi bounds need m = 1, k > 1");
  if (l < 0 || (L && l > *L)) throw Error(ErrorCode::DomainError, "need 0 <= l <= L");
  return {c_constant(params, L), c_constant(params, l)};
}

Rational eta_bound(const Params& params, const Integer& a, const Integer& A, const Integer& b,
                   const Integer& B) {
  if (params.renyi_limit()) return 1;
  require_arithmetic(params);
  return cell_diameter(params, a, A, b, B);
}

Exact classical_eta_corollary(const Integer& b) {
  if (b < 1) throw Error(ErrorCode::DomainError, "classical digits are positive");
  return Exact::surd(0, 1, 2, b * b + 3 * b + 4);
}

template <class R>
R digit_identity(const Params& params, const R& prev, const R& cur, const R& next) {
  R sum = discriminant(params, prev, cur) + discriminant(params, cur, next);
  return sum / (Rational(2) * cur) - Rational(params.k + params.m);
}

#define CFBAC_INSTANTIATE(R)                                                                          \
  template ApproxPair<R> psi(const DynamicPair<R>&);                                                \
  template DynamicPair<R> psi_inv(const Params&, const R&, const R&, long);                         \
  template R discriminant(const Params&, const R&, const R&);                                       \
  template DigitPair recover_digits(const Params&, const R&, const R&);                             \
  template Integer classical_digit(const R&, const R&);                                             \
  template R g(const Params&, const Integer&, const R&, const R&);                                  \
  template std::pair<R, R> extend_forward(const Params&, const R&, const R&);                       \
  template std::pair<R, R> extend_backward(const Params&, const R&, const R&);                      \
  template BACSegment<R> reconstruct_bac(const Params&, const R&, const R&, long, std::size_t,      \
                                         std::size_t);                                              \
  template BACSegment<R> bac_from_orbit(const Orbit<R>&);                                           \
  template DynamicPair<R> one_sided_pair(const Expansion<R>&, std::size_t);                         \
  template TripleReport check_triple(const Params&, const R&, const R&, const R&, const Integer&);   \
  template R digit_identity(const Params&, const R&, const R&, const R&);

CFBAC_INSTANTIATE(Exact)
CFBAC_INSTANTIATE(BigReal)

#undef CFBAC_INSTANTIATE

}  // namespace cfbac
