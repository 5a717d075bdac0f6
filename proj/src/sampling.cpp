#include "cfbac/sampling.hpp"

#include <array>

namespace cfbac {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return std::mt19937_64(mix64(mix64(mix64(seed) ^ stream) ^ index));
}

Digits random_digits(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Digits out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(dist(rng));
  return out;
}

namespace {

constexpr std::array<int, 12> kRadicands = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19};

// frac((p + q sqrt d) / r) for random p, q, r.
Exact random_tail(std::mt19937_64& rng, const Integer& d) {
  std::uniform_int_distribution<int> qd(1, 30), rd(1, 7);
  int r = rd(rng);
  int p = std::uniform_int_distribution<int>(0, r - 1)(rng);
  Exact t = Exact::surd(p, qd(rng), d, r);
  return t - Exact(Rational(t.floor()));
}

}  // namespace

DynamicPair<Exact> random_exact_pair(const Params& params, std::mt19937_64& rng, const SampleOptions& opts) {
  Integer d = kRadicands[std::uniform_int_distribution<std::size_t>(0, kRadicands.size() - 1)(rng)];
  std::uniform_int_distribution<int> len(0, opts.max_prefix);
  Digits fwd = random_digits(rng, static_cast<std::size_t>(len(rng)), 0, opts.max_digit);
  Digits bwd = random_digits(rng, static_cast<std::size_t>(len(rng)), 0, opts.max_digit);
  Integer a0 = std::uniform_int_distribution<int>(0, opts.max_digit)(rng);
  Exact x = evaluate(params, fwd, random_tail(rng, d));
  Exact s = evaluate(params, bwd, random_tail(rng, d));
  Exact y = Exact(Rational(Rational(params.m) - params.k - a0)) - s;
  return {params, x, y, 0};
}

}  // namespace cfbac
