#ifndef CFBAC_SAMPLING_HPP
#define CFBAC_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "cfbac/natural_extension.hpp"

namespace cfbac {

// splitmix64 finalizer; trial i of a suite draws from rng_for(seed, suite, i)
// so every trial is reproducible on its own.
std::uint64_t mix64(std::uint64_t x);
std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct SampleOptions {
  int max_digit = 6;
  int max_prefix = 4;
};

// A non-rational exact pair in Q(sqrt d) for a random square-free d: both the
// future and the past are random digit prefixes followed by a fractional
// part of a random surd.
DynamicPair<Exact> random_exact_pair(const Params& params, std::mt19937_64& rng,
                                     const SampleOptions& opts = {});

// Uniform digits in [lo, hi].
Digits random_digits(std::mt19937_64& rng, std::size_t n, int lo, int hi);

}  // namespace cfbac

#endif
