// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Tolerances and sample sizes are fixed here.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cfbac/bac.hpp"
#include "cfbac/geometry.hpp"
#include "cfbac/sampling.hpp"
#include "cfbac/verify.hpp"

using namespace cfbac;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kSeeds = 1000;
constexpr std::size_t kSteps = 30;
constexpr std::size_t kPartitionPairs = 10000;
constexpr std::size_t kTriples = 1000;
constexpr long kReconDigits = 64;

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit_s = 0;  // zero: no runtime bound
};

Exact ex(const Rational& r) { return Exact(r); }

bool less(const Exact& a, const Exact& b) { return compare(a, b) == Ordering::Less; }

Rational pow10_inv(unsigned e) {
  Integer d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, e);
  return Rational(Integer(1), d);
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

void note(Outcome& o, bool ok, const std::string& what) {
  if (ok) return;
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what;
}

const std::vector<Params>& suite_params() {
  static const std::vector<Params> ps = {Params::make(0, 1), Params::make(0, 2), Params::make(1, 2)};
  return ps;
}

// Orbits shared by criteria 4, 5, 8 and 9.
struct SeedOrbit {
  Params params;
  Orbit<Exact> orbit;
};

std::vector<SeedOrbit>& shared_orbits() {
  static std::vector<SeedOrbit> v;
  return v;
}

// ---------------------------------------------------------------- 1

Outcome pi_reproduction() {
  Outcome o{true, "", 1.0};
  Params p = Params::make(0, 1);
  auto e = expand_escalating(p, [](long d) { return BigReal::pi(d) - Rational(3); }, 4, 64, 256);
  if (e.steps() < 4) {
    note(o, false, "only " + std::to_string(e.steps()) + " digits certified");
    return o;
  }
  auto conv = convergents(p, e.digits, true);
  const long expect[4][2] = {{22, 7}, {333, 106}, {355, 113}, {103993, 33102}};
  for (int n = 0; n < 4; ++n) {
    bool ok = conv[n].p + 3 * conv[n].q == expect[n][0] && conv[n].q == expect[n][1];
    note(o, ok, "convergent " + std::to_string(n + 1) + " is " + Integer(conv[n].p + 3 * conv[n].q).get_str() + "/" +
                    conv[n].q.get_str());
  }
  const Rational bounds[4] = {Rational(612, 10000), Rational(9351, 10000), Rational(341, 100000),
                              Rational(6333, 10000)};
  std::string thetas;
  for (int n = 1; n <= 4; ++n) {
    BigReal t = theta_def(e, n);
    thetas += (n > 1 ? ", " : "") + t.to_string(8);
    note(o, compare(t, bounds[n - 1]) == Ordering::Less,
         "theta_" + std::to_string(n) + " = " + t.to_string(8) + " is not below " + fmt(bounds[n - 1].get_d()));
  }
  BigReal t3 = theta_def(e, 3);
  note(o, compare(t3, Rational(340, 100000)) != Ordering::Less && compare(t3, Rational(341, 100000)) != Ordering::Greater,
       "theta_3 outside [0.00340, 0.00341]");
  o.detail = "theta_1..4 = " + thetas + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// ---------------------------------------------------------------- 2

Outcome terminating_examples() {
  Outcome o;
  struct Case {
    int m;
    Digits digits;
    Rational value;
  };
  for (const Case& c : {Case{0, {0, 1, 2}, Rational(7, 10)}, Case{1, {0, 1, 2}, Rational(5, 13)},
                        Case{1, {1, 1}, Rational(3, 5)}}) {
    Params p = Params::make(c.m, 1);
    auto e = expand(p, Exact(c.value), 50);
    bool ok = e.terminated() && e.digits == c.digits && evaluate(p, c.digits) == Exact(c.value);
    note(o, ok, p.label() + " " + c.value.get_str());
  }
  if (o.pass) o.detail = "7/10, 5/13, 3/5 exact";
  return o;
}

// ---------------------------------------------------------------- 3

Outcome constant_bac() {
  Outcome o{true, "", 5.0};
  std::vector<Params> ps = {Params::make(0, 1),  Params::make(0, 2), Params::make(0, Rational(5, 2)),
                            Params::make(1, Rational(3, 2)), Params::make(1, 2), Params::make(1, 3)};
  std::size_t checked = 0;
  for (const Params& p : ps) {
    for (int a = 0; a <= 2; ++a) {
      std::string where = p.label() + " a=" + std::to_string(a);
      try {
        Exact C = c_constant(p, Integer(a));
        Exact xi = xi_constant(p, a);
        DynamicPair<Exact> seed{p, xi, ex(Rational(p.m) - p.k - a) - xi, 0};
        // theta_{n-1} sits on pair n, so pairs -24..26 cover |n| <= 25.
        Orbit<Exact> orb = orbit(seed, 24, 26);
        for (long n = -25; n <= 25; ++n) {
          note(o, theta_dynamic(orb.at(n + 1)) == C, where + " theta_" + std::to_string(n));
          ++checked;
        }
        BACSegment<Exact> r = reconstruct_bac(p, C, C, 0, 25, 25);
        bool flat = std::all_of(r.theta.begin(), r.theta.end(), [&](const Exact& t) { return t == C; }) &&
                    std::all_of(r.digits.begin(), r.digits.end(), [&](const Integer& d) { return d == a; });
        note(o, flat, where + " reconstruction not constant");
      } catch (const Error& e) {
        note(o, false, where + ": " + e.what());
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " orbit values equal C_a exactly, 18 constant reconstructions";
  return o;
}

// ---------------------------------------------------------------- 4

Outcome conjugacy() {
  Outcome o{true, "", 60.0};
  std::size_t steps = 0, failures = 0;
  std::string first;
  auto& store = shared_orbits();
  store.clear();
  for (std::size_t pi = 0; pi < suite_params().size(); ++pi) {
    const Params& p = suite_params()[pi];
    for (std::size_t i = 0; i < kSeeds; ++i) {
      auto rng = rng_for(kSeed, 4 + pi, i);
      DynamicPair<Exact> start = random_exact_pair(p, rng);
      try {
        Orbit<Exact> orb = orbit(start, kSteps, kSteps);
        std::vector<ApproxPair<Exact>> ap;
        ap.reserve(orb.pairs.size());
        for (const auto& q : orb.pairs) ap.push_back(psi(q));
        for (std::size_t j = 0; j < orb.pairs.size(); ++j) {
          const auto& q = orb.pairs[j];
          bool ok = true;
          if (j + 1 < orb.pairs.size()) {
            auto f = extend_forward(p, ap[j].u, ap[j].v);
            auto b = extend_backward(p, ap[j + 1].u, ap[j + 1].v);
            ok = f.first == ap[j + 1].u && f.second == ap[j + 1].v && b.first == ap[j].u && b.second == ap[j].v;
            ++steps;
          }
          DigitPair d = recover_digits(p, ap[j].u, ap[j].v);
          ok = ok && d.a_n == backward_digit(q) && d.a_next == forward_digit(q);
          if (!ok && failures++ == 0) first = p.label() + " seed " + std::to_string(i) + " n=" + std::to_string(q.n);
        }
        store.push_back({p, std::move(orb)});
      } catch (const Error& e) {
        if (failures++ == 0) first = p.label() + " seed " + std::to_string(i) + ": " + e.what();
      }
    }
  }
  note(o, failures == 0, std::to_string(failures) + " failures, first " + first);
  if (o.pass) o.detail = std::to_string(store.size()) + " seeds, " + std::to_string(steps) + " exact steps";
  return o;
}

// ---------------------------------------------------------------- 5

bool bigreal_reconstruction(const Params& p, const Exact& u, const Exact& v, const std::vector<Exact>& direct,
                            long digits, const BigReal& tol) {
  try {
    BACSegment<BigReal> r = reconstruct_bac(p, BigReal(u, digits), BigReal(v, digits), 10, 9, 10);
    for (long j = 0; j <= 20; ++j) {
      BigReal d = abs(r.at(j) - BigReal(direct[static_cast<std::size_t>(j)], digits + 20));
      if (compare(d, tol) != Ordering::Less) return false;
    }
    return true;
  } catch (const Undecidable&) {
    return false;
  } catch (const Error&) {
    return false;
  }
}

Outcome reconstruction_fidelity() {
  Outcome o;
  const auto& store = shared_orbits();
  note(o, !store.empty(), "no orbits from criterion 4");
  BigReal tol(pow10_inv(30), 80);
  std::size_t exact_fail = 0, big_fail = 0;
  long max_digits = kReconDigits;
  for (const SeedOrbit& s : store) {
    std::vector<Exact> direct;
    for (long j = 0; j <= 20; ++j) direct.push_back(theta_dynamic(s.orbit.at(j + 1)));
    ApproxPair<Exact> a = psi(s.orbit.at(10));
    try {
      BACSegment<Exact> r = reconstruct_bac(s.params, a.u, a.v, 10, 9, 10);
      bool ok = true;
      for (long j = 0; j <= 20; ++j) ok = ok && r.at(j) == direct[static_cast<std::size_t>(j)];
      if (!ok) ++exact_fail;
    } catch (const Error&) {
      ++exact_fail;
    }
    bool ok = false;
    for (long d = kReconDigits; d <= 256 && !ok; d *= 2) {
      ok = bigreal_reconstruction(s.params, a.u, a.v, direct, d, tol);
      if (ok) max_digits = std::max(max_digits, d);
    }
    if (!ok) ++big_fail;
  }
  note(o, exact_fail == 0, std::to_string(exact_fail) + " exact mismatches");
  note(o, big_fail == 0, std::to_string(big_fail) + " interval reconstructions off by 1e-30 or more");
  if (o.pass) {
    o.detail = std::to_string(store.size()) + " seeds, theta_0..theta_20 exact and within 1e-30 at <= " +
               std::to_string(max_digits) + " digits";
  }
  return o;
}

// ---------------------------------------------------------------- 6

Outcome triple_bounds() {
  Outcome o;
  std::size_t constant_hits = 0;
  for (const Rational& k : {Rational(1), Rational(2)}) {
    Params p = Params::make(0, k);
    std::size_t triples = 0, i = 0;
    while (triples < kTriples) {
      auto rng = rng_for(kSeed, 6, i++);
      DynamicPair<Exact> start = random_exact_pair(p, rng);
      BACSegment<Exact> s = bac_from_orbit(orbit(start, 3, 3));
      for (std::size_t t = 1; t + 1 < s.theta.size() && triples < kTriples; ++t, ++triples) {
        const Exact &a = s.theta[t - 1], &b = s.theta[t], &c = s.theta[t + 1];
        Exact C = c_constant(p, s.digits[t]);
        Exact lo = less(a, b) ? a : b, hi = less(a, b) ? b : a;
        lo = less(c, lo) ? c : lo;
        hi = less(hi, c) ? c : hi;
        std::string where = p.label() + " seed " + std::to_string(i - 1) + " t=" + std::to_string(t);
        note(o, less(lo, C) && less(C, hi), where + " C_a not strictly inside [min, max]");
        try {
          TripleReport r = check_triple(p, a, b, c, s.digits[t]);
          note(o, !r.constant, where + " reported constant");
        } catch (const Error& e) {
          note(o, false, where + ": " + e.what());
        }
      }
    }
    // Equality on the constant orbits.
    for (int a = 0; a <= 2; ++a) {
      Exact C = c_constant(p, Integer(a));
      try {
        TripleReport r = check_triple(p, C, C, C, Integer(a));
        note(o, r.constant, p.label() + " constant orbit a=" + std::to_string(a) + " not flagged");
        constant_hits += r.constant;
      } catch (const Error& e) {
        note(o, false, p.label() + " constant orbit: " + e.what());
      }
    }
  }
  Params classical = Params::make(0, 1);
  auto [m1, m2] = markoff_constants(classical);
  note(o, m1 == Exact::surd(0, 1, 5, 5) && m2 == Exact::surd(0, 1, 2, 4), "Markoff constants not 1/sqrt5, 1/sqrt8");
  BigReal tol(pow10_inv(30), 60);
  BigReal r5 = BigReal::from_decimal("0.4472135954999579392818347337462552470881236719223", 60);
  BigReal r8 = BigReal::from_decimal("0.35355339059327376220042218105242451964241796884424", 60);
  note(o, compare(abs(BigReal(m1, 60) - r5), tol) == Ordering::Less, "1/sqrt5 off at 30 digits");
  note(o, compare(abs(BigReal(m2, 60) - r8), tol) == Ordering::Less, "1/sqrt8 off at 30 digits");
  if (o.pass) {
    o.detail = std::to_string(2 * kTriples) + " triples strict, " + std::to_string(constant_hits) +
               " constant orbits attain C_a; Markoff " + BigReal(m1, 40).to_string(30) + ", " +
               BigReal(m2, 40).to_string(30);
  }
  return o;
}

// ---------------------------------------------------------------- 7

Outcome renyi() {
  Outcome o;
  SuiteConfig cfg;
  cfg.params = Params::make(1, 2);
  cfg.seed = kSeed;
  cfg.trials = 100;
  SuiteReport r = run_suite("renyi-bounds", cfg);
  std::size_t cases = 0;
  double closest = 1;
  for (const CheckResult& c : r.checks) {
    cases += c.cases;
    note(o, c.passed(), c.name + " " + c.params + (c.counterexamples.empty() ? "" : " " + c.counterexamples.front()));
    if (c.name.rfind("construction_", 0) == 0 && c.name != "construction_route" && c.max_margin) {
      closest = std::min(closest, *c.max_margin);
    }
  }
  if (o.pass) {
    o.detail = std::to_string(cases) + " cases over (l,L) = (0,1), (1,3); construction distance <= " + fmt(closest);
  }
  return o;
}

// ---------------------------------------------------------------- 8

Outcome eta_bounds() {
  Outcome o;
  const auto& store = shared_orbits();
  note(o, !store.empty(), "no orbits from criterion 4");
  std::size_t windows = 0, corollary_cases = 0, corollary_fail = 0;
  Exact corollary = classical_eta_corollary(1);
  double worst = 0;
  for (const SeedOrbit& s : store) {
    const Params& p = s.params;
    const auto& pairs = s.orbit.pairs;
    std::vector<Exact> theta;
    for (const auto& q : pairs) theta.push_back(theta_dynamic(q));
    for (std::size_t t = 1; t + 1 < theta.size(); ++t) {
      Integer aN = backward_digit(pairs[t - 1]), aN1 = forward_digit(pairs[t - 1]), aN2 = forward_digit(pairs[t]);
      Exact e1 = theta[t] - theta[t - 1], e2 = theta[t + 1] - theta[t];
      Rational bound = eta_bound(p, std::min(aN, aN1), std::max(aN, aN1), std::min(aN1, aN2), std::max(aN1, aN2));
      note(o, !less(ex(bound), e1 * e1 + e2 * e2), p.label() + " eta window bound at n=" + std::to_string(pairs[t].n));
      ++windows;
    }
    if (p.m == 0 && p.k == 1) {
      // Psi(pair n) = (theta_{n-1}, theta_n) carries a_n, a_{n+1}; b = a + 1.
      for (const auto& q : pairs) {
        if (backward_digit(q) != 0 || forward_digit(q) != 0) continue;
        ApproxPair<Exact> a = psi(q);
        Exact eta = abs(a.v - a.u);
        ++corollary_cases;
        worst = std::max(worst, eta.to_double());
        if (!less(eta, corollary)) ++corollary_fail;
      }
    }
  }
  note(o, corollary_fail == 0,
       "b_n = b_(n+1) = 1: " + std::to_string(corollary_fail) + " of " + std::to_string(corollary_cases) +
           " differences reach 1/(4 sqrt 2) = " + fmt(corollary.to_double()) + ", max " + fmt(worst));
  Params limit = Params::make(1, 1);
  std::size_t limit_steps = 0;
  for (std::size_t i = 0; i < kSeeds; ++i) {
    auto rng = rng_for(kSeed, 8, i);
    Orbit<Exact> orb = orbit(random_exact_pair(limit, rng), kSteps, kSteps);
    for (std::size_t t = 1; t < orb.pairs.size(); ++t) {
      Exact eta = abs(theta_dynamic(orb.pairs[t]) - theta_dynamic(orb.pairs[t - 1]));
      note(o, less(eta, ex(1)), "m=k=1 eta reaches 1 on seed " + std::to_string(i));
      ++limit_steps;
    }
  }
  std::string summary = std::to_string(windows) + " windows within the diameter bound, " +
                        std::to_string(limit_steps) + " eta_n < 1 at m=k=1";
  o.detail = o.pass ? summary : summary + "; " + o.detail;
  return o;
}

// ---------------------------------------------------------------- 9

std::vector<Point> derived_gamma_vertices(const Params& p) {
  const Rational& k = p.k;
  // Corners where u = 0, v = 0 and u = v meet the edges k u + v = 1 and
  // u + k v = 1 (m = 0) or their (k - 1) analogues (m = 1).
  Rational diag = p.m == 0 ? Rational(1 / (k + 1)) : Rational(1 / (k - 1));
  if (p.m == 0 && k == 1) return {Point{0, 0}, Point{1, 0}, Point{0, 1}};
  return {Point{0, 0}, Point{1 / k, 0}, Point{diag, diag}, Point{0, 1 / k}};
}

Outcome region_partition() {
  Outcome o;
  const auto& store = shared_orbits();
  note(o, !store.empty(), "no orbits from criterion 4");
  std::size_t pairs = 0, per_orbit = 4;
  for (std::size_t s = 0; s < store.size() && pairs < kPartitionPairs; ++s) {
    const Params& p = store[s].params;
    for (long n = 0; n < static_cast<long>(per_orbit) && pairs < kPartitionPairs; ++n, ++pairs) {
      const auto& q = store[s].orbit.at(n);
      ApproxPair<Exact> a = psi(q);
      std::string where = p.label() + " orbit " + std::to_string(s) + " n=" + std::to_string(n);
      try {
        std::vector<Integer> P = claimants_P(p, a.u, a.v), F = claimants_F(p, a.u, a.v);
        Classification c = classify_pair(p, a.u, a.v);
        DigitPair d = recover_digits(p, a.u, a.v);
        bool ok = P.size() == 1 && F.size() == 1 && P[0] == backward_digit(q) && F[0] == forward_digit(q) &&
                  c.status == ClassifyStatus::Ok && c.a == P[0] && c.b == F[0] && d.a_n == P[0] && d.a_next == F[0];
        note(o, ok, where + " claimed by " + std::to_string(P.size()) + " P and " + std::to_string(F.size()) + " F");
      } catch (const Error& e) {
        note(o, false, where + ": " + e.what());
      }
    }
  }
  note(o, pairs >= kPartitionPairs, "only " + std::to_string(pairs) + " pairs");
  std::vector<Params> ps = suite_params();
  ps.push_back(Params::make(0, 3));
  ps.push_back(Params::make(1, 3));
  for (const Params& p : ps) {
    RegionSpec g = gamma_prime(p);
    note(o, g.pieces.size() == 1 && polygon_vertices(g.pieces[0]) == derived_gamma_vertices(p),
         "Gamma' vertices at " + p.label());
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs in exactly one P_a and F_b; Gamma' vertices at 5 parameters";
  return o;
}

// ---------------------------------------------------------------- 10

Outcome perron_decay() {
  Outcome o;
  double worst = 0;
  std::size_t seeds = 0;
  for (const Params& p : {Params::make(0, 1), Params::make(1, 2)}) {
    for (std::size_t i = 0; i < 10; ++i) {
      auto rng = rng_for(kSeed, 10, i + (p.m == 0 ? 0 : 100));
      Digits period;
      do {
        period = random_digits(rng, 2 + i % 2, 0, 4);
      } while (std::set<Integer>(period.begin(), period.end()).size() < 2);
      DigitStream forward{random_digits(rng, 1 + i % 4, 0, 4), period};
      DigitStream backward{random_digits(rng, 1 + (i + 2) % 4, 0, 4), period};
      std::string where = p.label() + " seed " + std::to_string(i);
      try {
        DynamicPair<Exact> seed = seed_from_digits(p, forward, backward);
        Orbit<Exact> orb = orbit(seed, 0, 61);
        auto e = expand(p, seed.x, 61);
        Exact diff = abs(theta_perron(e, 60) - theta_dynamic(orb.at(60)));
        worst = std::max(worst, diff.to_double());
        note(o, less(diff, ex(pow10_inv(20))), where + " difference " + fmt(diff.to_double()) + " at n=60");
        ++seeds;
      } catch (const Error& err) {
        note(o, false, where + ": " + err.what());
      }
    }
  }
  if (o.pass) o.detail = std::to_string(seeds) + " seeds, max difference at n=60 is " + fmt(worst);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"classical pi reproduction", pi_reproduction},
      {"terminating examples", terminating_examples},
      {"constant BAC equivalence", constant_bac},
      {"conjugacy suite", conjugacy},
      {"reconstruction fidelity", reconstruction_fidelity},
      {"triple bounds", triple_bounds},
      {"Renyi bounds", renyi},
      {"eta bounds", eta_bounds},
      {"region partition", region_partition},
      {"Perron decay", perron_decay},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("uncaught: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.limit_s > 0 && secs >= out.limit_s) {
      out.pass = false;
      out.detail += "; runtime " + fmt(secs) + " s over " + fmt(out.limit_s) + " s";
    }
    all = all && out.pass;
    std::printf("%s %2zu %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
