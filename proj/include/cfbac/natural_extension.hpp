#ifndef CFBAC_NATURAL_EXTENSION_HPP
#define CFBAC_NATURAL_EXTENSION_HPP

#include <cstddef>
#include <vector>

#include "cfbac/expansion.hpp"

namespace cfbac {

// (x_n, y_n) with x in (0,1) and y < m - k.
template <class R>
struct DynamicPair {
  Params params;
  R x;
  R y;
  long n = 0;
};

// backward holds a_center, a_center-1, ...; forward holds a_center+1, ...
struct DigitBisequence {
  long center = 0;
  Digits backward;
  Digits forward;

  // Digit a_i for center - |backward| < i <= center + |forward|.
  const Integer& at(long i) const;
  long first() const { return center - static_cast<long>(backward.size()) + 1; }
  long last() const { return center + static_cast<long>(forward.size()); }
};

// a_{n+1} = floor(A(x_n)).
template <class R>
Integer forward_digit(const DynamicPair<R>& p);

// a_n, the unique a >= 0 with m - k - a - y_n in [0, 1).
template <class R>
Integer backward_digit(const DynamicPair<R>& p);

template <class R>
DynamicPair<R> step_forward(const DynamicPair<R>& p);

template <class R>
DynamicPair<R> step_backward(const DynamicPair<R>& p);

// 1 / (x - y).
template <class R>
R theta_dynamic(const DynamicPair<R>& p);

// x in (0,1), y < m - k, and on the exact backend neither x nor the
// fractional part m - k - y is an (m,k)-rational of rank <= max_rank.
bool in_omega(const DynamicPair<Exact>& p, std::size_t max_rank = 256);
bool in_omega(const DynamicPair<BigReal>& p, std::size_t max_rank = 256);

// x = [forward], y = m - k - a_0 - [a_-1, a_-2, ...] for eventually periodic
// streams, where backward lists a_0, a_-1, ...
DynamicPair<Exact> seed_from_digits(const Params& params, const DigitStream& forward,
                                    const DigitStream& backward);

// Truncated seed: both unknown tails are enclosed by [0, 1].
DynamicPair<BigReal> seed_from_digits(const Params& params, const Digits& forward,
                                      const Digits& backward, long digits);

// (x0, m - k - a_1 - T(x0)): the past mirrors the future.
template <class R>
DynamicPair<R> reflection_seed(const Params& params, const R& x0);

// Digits read off by stepping n_back times backwards and n_fwd times forwards.
// On the interval backend an undecidable digit raises PrecisionExhausted with
// the number of digits certified so far.
template <class R>
DigitBisequence digit_bisequence(const DynamicPair<R>& p, std::size_t n_back, std::size_t n_fwd);

// Visited pairs in increasing time order together with the digits between them.
template <class R>
struct Orbit {
  std::vector<DynamicPair<R>> pairs;
  DigitBisequence digits;

  const DynamicPair<R>& at(long n) const { return pairs.at(static_cast<std::size_t>(n - pairs.front().n)); }
};

template <class R>
Orbit<R> orbit(const DynamicPair<R>& p, std::size_t n_back, std::size_t n_fwd);

}  // namespace cfbac

#endif
