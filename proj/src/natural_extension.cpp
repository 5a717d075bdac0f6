#include "cfbac/natural_extension.hpp"

#include <algorithm>

namespace cfbac {

const Integer& DigitBisequence::at(long i) const {
  if (i > center) return forward.at(static_cast<std::size_t>(i - center - 1));
  return backward.at(static_cast<std::size_t>(center - i));
}

namespace {

Rational edge(const Params& params) { return Rational(params.m) - params.k; }

}  // namespace

template <class R>
Integer forward_digit(const DynamicPair<R>& p) {
  return floor_of(apply_A(p.params, p.x));
}

template <class R>
Integer backward_digit(const DynamicPair<R>& p) {
  return floor_of(edge(p.params) - p.y);
}

template <class R>
DynamicPair<R> step_forward(const DynamicPair<R>& p) {
  const Rational& k = p.params.k;
  Rational a(forward_digit(p));
  Rational shift = k + a;
  DynamicPair<R> q{p.params, p.x, p.y, p.n + 1};
  if (p.params.m == 0) {
    q.x = k / p.x - shift;
    q.y = k / p.y - shift;
  } else {
    q.x = k * p.x / (Rational(1) - p.x) - a;
    q.y = k * p.y / (Rational(1) - p.y) - a;
  }
  return q;
}

template <class R>
DynamicPair<R> step_backward(const DynamicPair<R>& p) {
  const Rational& k = p.params.k;
  Rational a(backward_digit(p));
  Rational shift = k + a;
  DynamicPair<R> q{p.params, p.x, p.y, p.n - 1};
  if (p.params.m == 0) {
    q.x = k / (p.x + shift);
    q.y = k / (p.y + shift);
  } else {
    q.x = (p.x + a) / (p.x + shift);
    q.y = (p.y + a) / (p.y + shift);
  }
  return q;
}

template <class R>
R theta_dynamic(const DynamicPair<R>& p) {
  return Rational(1) / (p.x - p.y);
}

bool in_omega(const DynamicPair<Exact>& p, std::size_t max_rank) {
  if (p.x.sign() <= 0 || compare(p.x, Exact(1)) != Ordering::Less) return false;
  Exact s = Exact(edge(p.params)) - p.y;
  if (s.sign() <= 0) return false;
  Exact past = s - Exact(Rational(s.floor()));
  return !is_mk_rational(p.params, p.x, max_rank) && !is_mk_rational(p.params, past, max_rank);
}

bool in_omega(const DynamicPair<BigReal>& p, std::size_t) {
  return compare(p.x, Rational(0)) == Ordering::Greater && compare(p.x, Rational(1)) == Ordering::Less &&
         compare(p.y, edge(p.params)) == Ordering::Less;
}

namespace {

DigitStream drop_first(const DigitStream& s) {
  DigitStream t = s;
  if (!t.prefix.empty()) {
    t.prefix.erase(t.prefix.begin());
  } else if (!t.period.empty()) {
    std::rotate(t.period.begin(), t.period.begin() + 1, t.period.end());
  }
  return t;
}

}  // namespace

DynamicPair<Exact> seed_from_digits(const Params& params, const DigitStream& forward,
                                    const DigitStream& backward) {
  Exact x = forward.value(params);
  Exact y = Exact(Rational(edge(params) - backward.digit(1))) - drop_first(backward).value(params);
  return {params, x, y, 0};
}

DynamicPair<BigReal> seed_from_digits(const Params& params, const Digits& forward, const Digits& backward,
                                      long digits) {
  if (backward.empty()) throw Error(ErrorCode::DomainError, "the backward stream needs a_0");
  BigReal unknown = BigReal::hull(BigReal(Rational(0), digits), BigReal(Rational(1), digits));
  BigReal x = evaluate(params, forward, unknown);
  Digits rest(backward.begin() + 1, backward.end());
  BigReal y = Rational(edge(params) - backward.front()) - evaluate(params, rest, unknown);
  return {params, x, y, 0};
}

template <class R>
DynamicPair<R> reflection_seed(const Params& params, const R& x0) {
  auto [a1, x1] = step_T(params, x0);
  R y = Rational(edge(params) - a1) - x1;
  return {params, x0, y, 0};
}

template <class R>
Orbit<R> orbit(const DynamicPair<R>& p, std::size_t n_back, std::size_t n_fwd) {
  Orbit<R> o;
  o.digits.center = p.n;
  std::vector<DynamicPair<R>> back;
  DynamicPair<R> cur = p;
  try {
    for (std::size_t i = 0; i < n_back; ++i) {
      Integer a = backward_digit(cur);
      cur = step_backward(cur);
      o.digits.backward.push_back(a);
      back.push_back(cur);
    }
    o.pairs.assign(back.rbegin(), back.rend());
    o.pairs.push_back(p);
    cur = p;
    for (std::size_t i = 0; i < n_fwd; ++i) {
      Integer a = forward_digit(cur);
      cur = step_forward(cur);
      o.digits.forward.push_back(a);
      o.pairs.push_back(cur);
    }
  } catch (const Undecidable& e) {
    throw PrecisionExhausted(o.digits.backward.size() + o.digits.forward.size(), e.what());
  }
  return o;
}

template <class R>
DigitBisequence digit_bisequence(const DynamicPair<R>& p, std::size_t n_back, std::size_t n_fwd) {
  return orbit(p, n_back, n_fwd).digits;
}

#define CFBAC_INSTANTIATE(R)                                                                   \
  template Integer forward_digit(const DynamicPair<R>&);                                     \
  template Integer backward_digit(const DynamicPair<R>&);                                    \
  template DynamicPair<R> step_forward(const DynamicPair<R>&);                               \
  template DynamicPair<R> step_backward(const DynamicPair<R>&);                              \
  template R theta_dynamic(const DynamicPair<R>&);                                           \
  template DynamicPair<R> reflection_seed(const Params&, const R&);                          \
  template Orbit<R> orbit(const DynamicPair<R>&, std::size_t, std::size_t);                  \
  template DigitBisequence digit_bisequence(const DynamicPair<R>&, std::size_t, std::size_t);

CFBAC_INSTANTIATE(Exact)
CFBAC_INSTANTIATE(BigReal)

#undef CFBAC_INSTANTIATE

}  // namespace cfbac
