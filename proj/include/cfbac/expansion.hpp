#ifndef CFBAC_EXPANSION_HPP
#define CFBAC_EXPANSION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfbac/numerics.hpp"

namespace cfbac {

using Digits = std::vector<Integer>;

// Selects the map family: m = 0 for the Gauss-like maps, m = 1 for the
// Renyi-like maps, with k a positive rational.
struct Params {
  int m = 0;
  Rational k = 1;

  // Validates m in {0, 1}, k > 0 and k >= 1 when m = 1.
  static Params make(int m, const Rational& k);
  // m = k = 1, the classical backwards map with its restricted toolset.
  bool renyi_limit() const { return m == 1 && k == 1; }
  std::string label() const;
};

bool operator==(const Params& a, const Params& b);

enum class ExpansionStatus { Terminated, MaxSteps, PrecisionExhausted };

const char* status_name(ExpansionStatus s);

template <class R>
struct Expansion {
  Params params;
  R x0;
  Digits digits;          // a_1, a_2, ...
  std::vector<R> futures;     // x_1, x_2, ...
  std::vector<R> remainders;  // r_1, r_2, ...
  ExpansionStatus status = ExpansionStatus::MaxSteps;

  bool terminated() const { return status == ExpansionStatus::Terminated; }
  // Termination time N when terminated, else the number of certified steps.
  std::size_t steps() const { return digits.size(); }
};

template <class R>
R apply_A(const Params& params, const R& x);

// One step of T: (floor(A(x)), frac(A(x))).
template <class R>
std::pair<Integer, R> step_T(const Params& params, const R& x);

// Iterates T from x0 until x_n = 0 or max_steps. On the interval backend an
// undecidable floor ends the run with status PrecisionExhausted.
template <class R>
Expansion<R> expand(const Params& params, const R& x0, std::size_t max_steps);

// Reruns the expansion of an enclosure producer with doubling precision until
// max_steps are certified or max_digits is reached.
Expansion<BigReal> expand_escalating(const Params& params, const std::function<BigReal(long)>& seed,
                                     std::size_t max_steps, long digits, long max_digits);

// Folds x <- m + (-1)^m k / (a + k + x) from the right.
template <class R>
R evaluate(const Params& params, const Digits& digits, const R& tail);
Exact evaluate(const Params& params, const Digits& digits);

// Integerized product of the per-digit matrices; ratio p/q equals the
// convergent, det is the determinant of the integer product.
struct Convergent {
  Integer p;
  Integer q;
  Integer det;
};

std::vector<Convergent> convergents(const Params& params, const Digits& digits, bool reduced = false);

// Y_n for the prefix a_1..a_n.
Rational past_Y(const Params& params, const Digits& prefix);

// theta_n = q_n^2 |x0 - p_n/q_n| with q_n scaled by k |det M_n|, the
// normalization under which it agrees with theta_perron(n + 1) when m = 0.
template <class R>
R theta_def(const Expansion<R>& e, std::size_t n);

// theta_{n-1} = 1 / (x_n - Y_n).
template <class R>
R theta_perron(const Expansion<R>& e, std::size_t n);

struct Cylinder {
  Rational lo;
  Rational hi;
  bool lo_open = true;
  bool hi_open = true;

  bool contains(const Rational& x) const;
};

Cylinder cylinder(const Params& params, const Digits& digits);

// Smallest rank N <= max_rank with T^N(x) = 0.
std::optional<std::size_t> is_mk_rational(const Params& params, const Exact& x, std::size_t max_rank);
std::optional<std::size_t> is_mk_rational(const Params& params, const BigReal& x, std::size_t max_rank);

// The point of [0,1) whose expansion repeats `period` forever.
Exact periodic_point(const Params& params, const Digits& period);

// Eventually periodic digit stream; an empty period means the stream stops.
struct DigitStream {
  Digits prefix;
  Digits period;

  Exact value(const Params& params) const;
  // Digit n >= 1 of the stream; zero past the end of a terminating stream.
  Integer digit(std::size_t n) const;
};

}  // namespace cfbac

#endif
