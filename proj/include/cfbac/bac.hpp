#ifndef CFBAC_BAC_HPP
#define CFBAC_BAC_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cfbac/natural_extension.hpp"

namespace cfbac {

// (theta_{n-1}, theta_n) = Psi(x_n, y_n).
template <class R>
struct ApproxPair {
  Params params;
  R u;
  R v;
  long n = 0;
};

// Raises UnsupportedParameter unless m = 0, k >= 1 or m = 1, k > 1.
void require_arithmetic(const Params& params);

template <class R>
ApproxPair<R> psi(const DynamicPair<R>& p);

template <class R>
DynamicPair<R> psi_inv(const Params& params, const R& u, const R& v, long n = 0);

// sqrt(1 - 4kuv) for m = 0, sqrt(1 + 4kuv) for m = 1.
template <class R>
R discriminant(const Params& params, const R& u, const R& v);

struct DigitPair {
  Integer a_n;
  Integer a_next;
};

// Digits a_n, a_{n+1} of the pair (theta_{n-1}, theta_n).
template <class R>
DigitPair recover_digits(const Params& params, const R& u, const R& v);

// Classical regular continued fraction digit b_{n+1} from (theta_{n-1}, theta_n).
template <class R>
Integer classical_digit(const R& u, const R& v);

template <class R>
R g(const Params& params, const Integer& a, const R& u, const R& v);

// (theta_{n-1}, theta_n) -> (theta_n, theta_{n+1}).
template <class R>
std::pair<R, R> extend_forward(const Params& params, const R& u, const R& v);

// (theta_{n-1}, theta_n) -> (theta_{n-2}, theta_{n-1}).
template <class R>
std::pair<R, R> extend_backward(const Params& params, const R& u, const R& v);

// theta[i] = theta_{start+i}; digits[i] = a_{start+i+1}; eta[i] = eta_{start+i+1}.
template <class R>
struct BACSegment {
  Params params;
  long start = 0;
  std::vector<R> theta;
  Digits digits;
  std::vector<R> eta;

  const R& at(long n) const { return theta.at(static_cast<std::size_t>(n - start)); }
};

// Whole window around the pair (theta_{n-1}, theta_n) = (u, v), obtained by
// n_fwd forward and n_back backward extensions.
template <class R>
BACSegment<R> reconstruct_bac(const Params& params, const R& u, const R& v, long n, std::size_t n_back,
                              std::size_t n_fwd);

// theta_j for j in [first, last] read directly off an orbit through Psi.
template <class R>
BACSegment<R> bac_from_orbit(const Orbit<R>& orbit);

// (x_n, Y_n): the one-sided pair whose theta values use the finite past.
template <class R>
DynamicPair<R> one_sided_pair(const Expansion<R>& e, std::size_t n);

// Positive root of xi^2 + (a+k) xi - k (m = 0) or xi^2 + (a+k-1) xi - a (m = 1).
Exact xi_constant(const Params& params, const Integer& a);

// C_a; nullopt stands for a = infinity (m = 1 only), where C = 0.
Exact c_constant(const Params& params, const std::optional<Integer>& a);

// (1/sqrt(k^2+4k), 1/sqrt(k^2+6k+1)) for m = 0.
std::pair<Exact, Exact> markoff_constants(const Params& params);

struct TripleReport {
  bool constant = false;
  // C - min and max - C for m = 0. For m = 1 the distance of a local minimum
  // above C (low) or a local maximum below C (high), unset elsewhere.
  std::optional<double> low_margin;
  std::optional<double> high_margin;
};

// Raises TheoremViolation when the triple breaks the min/max bound (m = 0) or
// the local-extremum bound (m = 1), or meets C on a non-constant orbit.
template <class R>
TripleReport check_triple(const Params& params, const R& prev, const R& cur, const R& next,
                          const Integer& a_next);

// (C_L, C_l); nullopt for L = infinity.
std::pair<Exact, Exact> renyi_bounds(const Params& params, const Integer& l, const std::optional<Integer>& L);

// Bound on eta_N^2 + eta_{N+1}^2 when a <= a_N, a_{N+1} <= A and
// b <= a_{N+1}, a_{N+2} <= B. For m = k = 1 it is the uniform bound 1 on each
// eta_n instead.
Rational eta_bound(const Params& params, const Integer& a, const Integer& A, const Integer& b,
                   const Integer& B);

// The printed classical bound sqrt(2)/(b^2+3b+4) on |theta_n - theta_{n-1}|
// when b_n = b_{n+1} = b.
Exact classical_eta_corollary(const Integer& b);

// (D_n + D_{n+1}) / (2 theta_n) - k - m, which equals a_{n+1}.
template <class R>
R digit_identity(const Params& params, const R& prev, const R& cur, const R& next);

}  // namespace cfbac

#endif
