#ifndef CFBAC_VERIFY_HPP
#define CFBAC_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfbac/bac.hpp"
#include "cfbac/geometry.hpp"

namespace cfbac {

struct SuiteConfig {
  // Restricts a suite to one parameter pair; otherwise each suite runs its
  // own default list.
  std::optional<Params> params;
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  long digits = kDefaultDigits;
};

struct CheckResult {
  std::string name;
  std::string params;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;
  std::optional<double> min_margin;
  std::optional<double> max_margin;

  bool passed() const { return failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

// Names accepted by run_suite, in execution order ("all" is not included).
const std::vector<std::string>& suite_names();

// Deterministic for a fixed config. Unknown names raise DomainError.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

// Two-sided sequence given digit by digit: a(i) for every integer i.
using DigitFunction = std::function<Integer(long)>;

// (x_n, y_n) from the digits a_{n+1}, ..., a_{n+depth} and a_n, ..., a_{n-depth},
// both remaining tails enclosed by [0, 1].
DynamicPair<BigReal> pair_from_digits(const Params& params, const DigitFunction& a, long n, std::size_t depth,
                                      long digits);

// Digits hi at n = 2, 4, 8, ... and lo elsewhere for n >= 1, reflected to
// a(n) = a(1 - n) for n <= 0.
DigitFunction power_of_two_digits(const Integer& lo, const Integer& hi);

// Indices [first, last] beyond the first local extremum on each side of the
// centre: forward from `forward_from`, backward from `backward_from`. theta[i]
// is theta_{start+i}. nullopt when a side never turns inside the window.
struct SettledWindow {
  long forward_first;
  long backward_last;
};

std::optional<SettledWindow> settling_window(const std::vector<BigReal>& theta, long start, long forward_from,
                                             long backward_from);

}  // namespace cfbac

#endif
