#include "cfbac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cfbac/sampling.hpp"

namespace cfbac {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"expansion", "extension", "conjugacy", "regions",
                                                 "triples",   "constants", "renyi-bounds", "eta"};
  return names;
}

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

class Check {
 public:
  Check(std::string name, std::string params) {
    r_.name = std::move(name);
    r_.params = std::move(params);
  }
  Check(std::string name, const Params& params) : Check(std::move(name), params.label()) {}

  void pass() { ++r_.cases; }
  void fail(const std::string& why) {
    ++r_.cases;
    ++r_.failures;
    if (r_.counterexamples.size() < kMaxCounterexamples) r_.counterexamples.push_back(why);
  }
  template <class F>
  void expect(bool ok, F&& why) {
    if (ok) {
      pass();
    } else {
      fail(why());
    }
  }
  void margin(double m) {
    r_.min_margin = r_.min_margin ? std::min(*r_.min_margin, m) : m;
    r_.max_margin = r_.max_margin ? std::max(*r_.max_margin, m) : m;
  }
  // Runs one trial; a library error counts as a failure of the trial.
  template <class F>
  void trial(const std::string& where, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      fail(where + ": " + e.what());
    }
  }
  CheckResult result() const { return r_; }

 private:
  CheckResult r_;
};

// FNV-1a, so stream ids do not depend on the standard library's hash.
std::uint64_t stream_id(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

std::mt19937_64 trial_rng(const SuiteConfig& cfg, const std::string& check, const Params& p, std::size_t i) {
  return rng_for(cfg.seed, stream_id(check + "/" + p.label()), i);
}

std::vector<Params> params_or(const SuiteConfig& cfg, const std::vector<std::pair<int, Rational>>& defaults) {
  if (cfg.params) return {*cfg.params};
  std::vector<Params> out;
  for (const auto& [m, k] : defaults) out.push_back(Params::make(m, k));
  return out;
}

bool arithmetic(const Params& p) { return (p.m == 0 && p.k >= 1) || (p.m == 1 && p.k > 1); }

bool less(const Exact& a, const Exact& b) { return compare(a, b) == Ordering::Less; }

std::string str(const Integer& a) { return a.get_str(); }

std::string digits_str(const Digits& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + d[i].get_str();
  return s + "]";
}

std::string pair_str(const DynamicPair<Exact>& p) { return "(" + p.x.to_string() + ", " + p.y.to_string() + ")"; }

Exact ex(const Rational& r) { return Exact(r); }

// Weak version of a region: every relation made non-strict.
RegionSpec closure(RegionSpec r) {
  for (RegionPiece& piece : r.pieces) {
    for (HalfPlane& h : piece.half_planes) {
      if (h.rel == Rel::Less) h.rel = Rel::LessEq;
      if (h.rel == Rel::Greater) h.rel = Rel::GreaterEq;
    }
    if (piece.hyperbola) piece.hyperbola->strict = false;
  }
  return r;
}

// Open interior of a union; the seams between its pieces stay as they are.
RegionSpec interior(RegionSpec r) {
  for (RegionPiece& piece : r.pieces) {
    for (HalfPlane& h : piece.half_planes) {
      if (h.label == "seam") continue;
      if (h.rel == Rel::LessEq) h.rel = Rel::Less;
      if (h.rel == Rel::GreaterEq) h.rel = Rel::Greater;
    }
    if (piece.hyperbola) piece.hyperbola->strict = true;
  }
  return r;
}

// ---------------------------------------------------------------- expansion

void expansion_suite(const SuiteConfig& cfg, SuiteReport& rep) {
  for (const Params& p : params_or(cfg, {{0, 1}, {0, 2}, {0, Rational(5, 2)}, {0, Rational(1, 2)}, {1, 1}, {1, 2},
                                         {1, Rational(5, 2)}})) {
    {
      // Every word of length <= 5 over {0..3} ending in a nonzero digit.
      Check c("round_trip", p);
      for (int len = 1; len <= 5; ++len) {
        long count = 1;
        for (int i = 0; i < len; ++i) count *= 4;
        for (long code = 0; code < count; ++code) {
          Digits w;
          for (long t = code, i = 0; i < len; ++i, t /= 4) w.push_back(t % 4);
          if (w.back() == 0) continue;
          c.trial(digits_str(w), [&] {
            Exact x = evaluate(p, w);
            Expansion<Exact> e = expand(p, x, 8);
            c.expect(e.terminated() && e.digits == w, [&] { return digits_str(w) + " -> " + digits_str(e.digits); });
          });
        }
      }
      rep.checks.push_back(c.result());
    }
    Check shift("shift", p), theta("theta_def_vs_perron", p), decay("cylinder_decay", p);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      auto rng = trial_rng(cfg, "expansion", p, i);
      Exact x = random_exact_pair(p, rng).x;
      shift.trial(x.to_string(), [&] {
        Expansion<Exact> e = expand(p, x, 20);
        for (std::size_t n = 1; n <= e.steps(); ++n) {
          Digits prefix(e.digits.begin(), e.digits.begin() + static_cast<long>(n));
          shift.expect(evaluate(p, prefix, e.futures[n - 1]) == x, [&] { return x.to_string() + " n=" + std::to_string(n); });
        }
      });
      if (p.m == 0) {
        theta.trial(x.to_string(), [&] {
          Expansion<Exact> e = expand(p, x, 30);
          for (std::size_t n = 1; n + 1 <= e.steps(); ++n) {
            theta.expect(theta_def(e, n) == theta_perron(e, n + 1), [&] { return x.to_string() + " n=" + std::to_string(n); });
          }
        });
      }
      decay.trial(x.to_string(), [&] {
        Expansion<Exact> e = expand(p, x, 25);
        std::vector<Convergent> conv = convergents(p, e.digits);
        std::optional<Rational> last;
        for (std::size_t n = 1; n <= e.steps(); ++n) {
          Cylinder cyl = cylinder(p, Digits(e.digits.begin(), e.digits.begin() + static_cast<long>(n)));
          Rational len = cyl.hi - cyl.lo;
          Rational pq(conv[n - 1].p, conv[n - 1].q);
          pq.canonicalize();
          Exact err = abs(x - ex(pq));
          bool ok = less(ex(cyl.lo), x) && less(x, ex(cyl.hi)) && !less(ex(len), err) && (pq == cyl.lo || pq == cyl.hi) &&
                    (!last || len < *last);
          decay.expect(ok, [&] { return x.to_string() + " n=" + std::to_string(n); });
          last = len;
        }
      });
    }
    rep.checks.push_back(shift.result());
    if (p.m == 0) rep.checks.push_back(theta.result());
    rep.checks.push_back(decay.result());

    Check part("cylinder_partition", p);
    for (std::size_t i = 0; i < cfg.trials * 100; ++i) {
      auto rng = trial_rng(cfg, "cylinder", p, i);
      long den = std::uniform_int_distribution<long>(2, 1000)(rng);
      Rational x(std::uniform_int_distribution<long>(1, den - 1)(rng), den);
      x.canonicalize();
      part.trial(format_rational(x), [&] {
        Expansion<Exact> e = expand(p, Exact(x), 3);
        Digits d = e.digits;
        bool ok = cylinder(p, d).contains(x);
        for (int delta : {-1, 1}) {
          Digits s = d;
          s.back() += delta;
          if (s.back() >= 0 && cylinder(p, s).contains(x)) ok = false;
        }
        part.expect(ok, [&] { return format_rational(x) + " " + digits_str(d); });
      });
    }
    rep.checks.push_back(part.result());
  }
}

// ---------------------------------------------------------------- extension

DigitStream random_stream(std::mt19937_64& rng, const Params& p, int min_prefix) {
  DigitStream s;
  s.prefix = random_digits(rng, static_cast<std::size_t>(std::uniform_int_distribution<int>(min_prefix, 4)(rng)), 0, 5);
  do {
    s.period = random_digits(rng, static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 2)(rng)), 0, 5);
  } while (p.m == 1 && std::all_of(s.period.begin(), s.period.end(), [](const Integer& a) { return a == 0; }));
  return s;
}

void extension_suite(const SuiteConfig& cfg, SuiteReport& rep) {
  for (const Params& p : params_or(cfg, {{0, 1}, {0, 2}, {0, Rational(1, 2)}, {1, 1}, {1, 2}})) {
    Check inv("invertibility", p), omega("omega_preserved", p), pos("theta_bounds", p), shift("bisequence_shift", p),
        seed("seed_round_trip", p);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      auto rng = trial_rng(cfg, "extension", p, i);
      DynamicPair<Exact> start = random_exact_pair(p, rng);
      DynamicPair<Exact> q = start;
      inv.trial(pair_str(start), [&] {
        for (int j = 0; j < 8; ++j) {
          DynamicPair<Exact> f = step_forward(q), b = step_backward(q);
          DynamicPair<Exact> fb = step_backward(f), bf = step_forward(b);
          inv.expect(fb.x == q.x && fb.y == q.y && fb.n == q.n && bf.x == q.x && bf.y == q.y,
                     [&] { return pair_str(q); });
          omega.expect(in_omega(q, 64), [&] { return pair_str(q); });
          Exact t = theta_dynamic(q);
          bool ok = t.sign() > 0;
          if (p.m == 1 && p.k > 1) ok = ok && less(t, ex(Rational(1) / (p.k - 1)));
          pos.expect(ok, [&] { return pair_str(q) + " theta=" + t.to_string(); });
          q = f;
        }
      });
      shift.trial(pair_str(start), [&] {
        DigitBisequence b0 = digit_bisequence(start, 6, 6);
        DigitBisequence b1 = digit_bisequence(step_forward(start), 6, 6);
        bool ok = b1.center == b0.center + 1;
        for (long j = std::max(b0.first(), b1.first()); j <= std::min(b0.last(), b1.last()); ++j) {
          ok = ok && b0.at(j) == b1.at(j);
        }
        shift.expect(ok, [&] { return pair_str(start); });
      });
      DigitStream fwd = random_stream(rng, p, 0), bwd = random_stream(rng, p, 1);
      seed.trial(digits_str(fwd.prefix) + digits_str(fwd.period) + " | " + digits_str(bwd.prefix) + digits_str(bwd.period), [&] {
        DynamicPair<Exact> s = seed_from_digits(p, fwd, bwd);
        DigitBisequence b = digit_bisequence(s, 8, 8);
        bool ok = true;
        for (long j = 1; j <= 8; ++j) ok = ok && b.at(j) == fwd.digit(static_cast<std::size_t>(j));
        for (long j = 0; j < 8; ++j) ok = ok && b.at(-j) == bwd.digit(static_cast<std::size_t>(j + 1));
        seed.expect(ok, [&] { return digits_str(b.forward) + " / " + digits_str(b.backward); });
      });
    }
    for (Check* c : {&inv, &omega, &pos, &shift, &seed}) rep.checks.push_back(c->result());
  }
}

// ---------------------------------------------------------------- conjugacy

constexpr std::size_t kSuiteSteps = 15;

void conjugacy_suite(const SuiteConfig& cfg, SuiteReport& rep) {
  for (const Params& p : params_or(cfg, {{0, 1}, {0, 2}, {1, 2}, {1, Rational(3, 2)}})) {
    require_arithmetic(p);
    Check comm("psi_commutes", p), rec("digit_recovery", p), ident("digit_identity", p), inv("psi_inverse", p),
        recon("reconstruction", p), big("interval_route", p);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      auto rng = trial_rng(cfg, "conjugacy", p, i);
      DynamicPair<Exact> start = random_exact_pair(p, rng);
      Orbit<Exact> o;
      try {
        o = orbit(start, kSuiteSteps, kSuiteSteps);
      } catch (const Error& e) {
        comm.fail(pair_str(start) + ": " + e.what());
        continue;
      }
      std::vector<ApproxPair<Exact>> ap;
      for (const auto& q : o.pairs) ap.push_back(psi(q));
      for (std::size_t j = 0; j < o.pairs.size(); ++j) {
        const auto& q = o.pairs[j];
        const auto& a = ap[j];
        if (j + 1 < o.pairs.size()) {
          comm.trial(pair_str(q), [&] {
            auto f = extend_forward(p, a.u, a.v);
            auto b = extend_backward(p, ap[j + 1].u, ap[j + 1].v);
            comm.expect(f.first == ap[j + 1].u && f.second == ap[j + 1].v && b.first == a.u && b.second == a.v,
                        [&] { return pair_str(q) + " n=" + std::to_string(q.n); });
          });
          ident.trial(pair_str(q), [&] {
            Exact id = digit_identity(p, a.u, a.v, ap[j + 1].v);
            ident.expect(id == ex(Rational(forward_digit(q))), [&] { return pair_str(q) + " got " + id.to_string(); });
          });
        }
        rec.trial(pair_str(q), [&] {
          DigitPair d = recover_digits(p, a.u, a.v);
          rec.expect(d.a_n == backward_digit(q) && d.a_next == forward_digit(q), [&] {
            return pair_str(q) + " recovered (" + str(d.a_n) + "," + str(d.a_next) + ")";
          });
        });
        inv.trial(pair_str(q), [&] {
          DynamicPair<Exact> back = psi_inv(p, a.u, a.v);
          inv.expect(back.x == q.x && back.y == q.y, [&] { return pair_str(q); });
        });
      }
      recon.trial(pair_str(start), [&] {
        BACSegment<Exact> seg = bac_from_orbit(o);
        BACSegment<Exact> r = reconstruct_bac(p, seg.at(-1), seg.at(0), 0, kSuiteSteps - 2, kSuiteSteps - 2);
        bool ok = true;
        for (long n = r.start; n < r.start + static_cast<long>(r.theta.size()); ++n) ok = ok && r.at(n) == seg.at(n);
        for (std::size_t t = 0; t < r.digits.size(); ++t) {
          ok = ok && r.digits[t] == seg.digits[static_cast<std::size_t>(r.start - seg.start) + t];
        }
        recon.expect(ok, [&] { return pair_str(start); });
      });
      big.trial(pair_str(start), [&] {
        DynamicPair<BigReal> b{p, BigReal(start.x, cfg.digits), BigReal(start.y, cfg.digits), 0};
        ApproxPair<BigReal> ab = psi(b);
        ApproxPair<Exact> ae = psi(start);
        DigitPair d = recover_digits(p, ab.u, ab.v);
        big.expect(ab.u.contains(BigReal(ae.u, cfg.digits)) && ab.v.contains(BigReal(ae.v, cfg.digits)) &&
                       d.a_n == backward_digit(start) && d.a_next == forward_digit(start),
                   [&] { return pair_str(start); });
      });
    }
    for (Check* c : {&comm, &rec, &ident, &inv, &recon, &big}) rep.checks.push_back(c->result());
  }
}

// ---------------------------------------------------------------- regions

std::vector<Point> expected_gamma_vertices(const Params& p) {
  const Rational& k = p.k;
  if (p.m == 0) {
    if (k == 1) return {Point{0, 0}, Point{1, 0}, Point{0, 1}};
    return {Point{0, 0}, Point{1 / k, 0}, Point{1 / (k + 1), 1 / (k + 1)}, Point{0, 1 / k}};
  }
  return {Point{0, 0}, Point{1 / k, 0}, Point{1 / (k - 1), 1 / (k - 1)}, Point{0, 1 / k}};
}

void regions_suite(const SuiteConfig& cfg, SuiteReport& rep) {
  for (const Params& p : params_or(cfg, {{0, 1}, {0, 2}, {1, 2}, {1, Rational(3, 2)}, {0, Rational(1, 2)}})) {
    bool full = arithmetic(p);
    bool capped = p.m == 0 && p.k < 1;
    RegionSpec gamma = capped ? tilde_gamma(p.k) : gamma_prime(p);
    Check orb("orbit_partition", p), grid("grid_partition", p), refl("reflection", p), vert("vertex_containment", p),
        gv("gamma_vertices", p);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      auto rng = trial_rng(cfg, "regions", p, i);
      DynamicPair<Exact> start = random_exact_pair(p, rng);
      orb.trial(pair_str(start), [&] {
        Orbit<Exact> o = orbit(start, 8, 8);
        for (const auto& q : o.pairs) {
          ApproxPair<Exact> a = psi(q);
          Integer an = backward_digit(q), an1 = forward_digit(q);
          bool ok = contains(gamma, a.u, a.v) == Membership::Inside &&
                    claimants_P(p, a.u, a.v) == std::vector<Integer>{an};
          if (full) {
            Classification c = classify_pair(p, a.u, a.v);
            ok = ok && claimants_F(p, a.u, a.v) == std::vector<Integer>{an1} && c.status == ClassifyStatus::Ok &&
                 c.a == an && c.b == an1;
          }
          orb.expect(ok, [&] { return pair_str(q); });
        }
      });
    }

    // Rational grid over the bounding box of the range, checked off its edges.
    RegionSpec open_gamma = interior(gamma);
    Rational umax = 0, vmax = 0;
    for (const RegionPiece& piece : gamma.pieces) {
      if (piece.hyperbola) continue;
      for (const Point& pt : polygon_vertices(piece)) {
        umax = std::max(umax, pt[0]);
        vmax = std::max(vmax, pt[1]);
      }
    }
    for (std::size_t i = 0; i < cfg.trials * 100; ++i) {
      auto rng = trial_rng(cfg, "grid", p, i);
      long den = std::uniform_int_distribution<long>(1, 60)(rng);
      auto coord = [&](const Rational& max) {
        Rational hi = max * den;
        Integer top;
        mpz_cdiv_q(top.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        Rational r(std::uniform_int_distribution<long>(0, top.get_si())(rng), den);
        r.canonicalize();
        return r;
      };
      Exact u = ex(coord(umax)), v = ex(coord(vmax));
      std::string where = "(" + u.to_string() + ", " + v.to_string() + ")";
      grid.trial(where, [&] {
        if (contains(open_gamma, u, v) != Membership::Inside) return;
        auto cp = claimants_P(p, u, v);
        bool ok = cp.size() == 1;
        if (full) {
          auto cf = claimants_F(p, u, v);
          Classification c = classify_pair(p, u, v);
          ok = ok && cf.size() == 1 && c.status == ClassifyStatus::Ok && c.a == cp[0] && c.b == cf[0];
        }
        grid.expect(ok, [&] { return where; });
      });
      if (full) {
        refl.trial(where, [&] {
          bool ok = contains(gamma, u, v) == contains(gamma, v, u);
          for (int b = 0; b <= 3; ++b) ok = ok && contains(region_F(p, b), u, v) == contains(region_P(p, b), v, u);
          refl.expect(ok, [&] { return where; });
        });
      }
    }
    if (full) {
      RegionSpec hull = closure(gamma);
      for (int a = 0; a <= 4; ++a) {
        for (int b = 0; b <= 4; ++b) {
          vert.trial("cell " + std::to_string(a) + "," + std::to_string(b), [&] {
            Quadrangle q = cell_vertices(p, a, b);
            bool ok = true;
            for (const Point& pt : q.vertices) ok = ok && contains(hull, ex(pt[0]), ex(pt[1])) == Membership::Inside;
            vert.expect(ok, [&] { return "cell " + std::to_string(a) + "," + std::to_string(b); });
          });
        }
      }
      gv.trial("gamma", [&] {
        std::vector<Point> got = polygon_vertices(gamma.pieces.at(0));
        gv.expect(gamma.pieces.size() == 1 && got == expected_gamma_vertices(p), [&] {
          std::string s;
          for (const Point& pt : got) s += "(" + format_rational(pt[0]) + "," + format_rational(pt[1]) + ")";
          return s;
        });
      });
    }
    rep.checks.push_back(orb.result());
    rep.checks.push_back(grid.result());
    if (full) {
      for (Check* c : {&refl, &vert, &gv}) rep.checks.push_back(c->result());
    }
  }
}

// ---------------------------------------------------------------- triples

void triples_suite(const SuiteConfig& cfg, SuiteReport& rep) {
  for (const Params& p : params_or(cfg, {{0, 1}, {0, 2}, {1, 2}})) {
    require_arithmetic(p);
    bool classical = p.m == 0 && p.k == 1;
    RegionSpec gamma = gamma_prime(p);
    Check tri("triple_bound", p), mem("gamma_membership", p), vahlen("vahlen", p), borel("borel", p),
        sum("pair_sum", p);
    Exact half = ex(Rational(1, 2)), hurwitz = c_constant(p, Integer(0));
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      auto rng = trial_rng(cfg, "triples", p, i);
      DynamicPair<Exact> start = random_exact_pair(p, rng);
      tri.trial(pair_str(start), [&] {
        BACSegment<Exact> s = bac_from_orbit(orbit(start, 10, 10));
        for (std::size_t t = 1; t + 1 < s.theta.size(); ++t) {
          const Exact &a = s.theta[t - 1], &b = s.theta[t], &c = s.theta[t + 1];
          try {
            TripleReport r = check_triple(p, a, b, c, s.digits[t]);
            tri.pass();
            if (r.low_margin) tri.margin(*r.low_margin);
            if (r.high_margin) tri.margin(*r.high_margin);
          } catch (const Error& e) {
            tri.fail(pair_str(start) + " n=" + std::to_string(s.start + static_cast<long>(t)) + ": " + e.what());
          }
          if (classical) {
            Exact lo2 = less(a, b) ? a : b;
            Exact lo3 = less(c, lo2) ? c : lo2;
            vahlen.expect(less(lo2, half), [&] { return pair_str(start); });
            borel.expect(less(lo3, hurwitz), [&] { return pair_str(start); });
            sum.expect(less(a + b, ex(1)), [&] { return pair_str(start); });
          }
        }
        for (std::size_t t = 0; t + 1 < s.theta.size(); ++t) {
          mem.expect(contains(gamma, s.theta[t], s.theta[t + 1]) == Membership::Inside, [&] { return pair_str(start); });
        }
      });
    }
    rep.checks.push_back(tri.result());
    rep.checks.push_back(mem.result());
    if (classical) {
      for (Check* c : {&vahlen, &borel, &sum}) rep.checks.push_back(c->result());
    }
  }
}

// ---------------------------------------------------------------- constants

void constants_suite(const SuiteConfig& cfg, SuiteReport& rep) {
  std::vector<Params> ps = params_or(cfg, {{0, 1}, {0, 2}, {0, Rational(5, 2)}, {1, Rational(3, 2)}, {1, 2}, {1, 3}});
  for (const Params& p : ps) {
    require_arithmetic(p);
    Check orb("constant_orbit", p), recon("constant_reconstruction", p), formula("c_formula", p), mono("c_decreasing", p);
    for (int a = 0; a <= 2; ++a) {
      std::string where = "a=" + std::to_string(a);
      Exact C = c_constant(p, Integer(a));
      orb.trial(where, [&] {
        Exact xi = xi_constant(p, a);
        DynamicPair<Exact> seed{p, xi, ex(Rational(p.m) - p.k - a) - xi, 0};
        Orbit<Exact> o = orbit(seed, 12, 12);
        BACSegment<Exact> s = bac_from_orbit(o);
        bool ok = std::all_of(s.theta.begin(), s.theta.end(), [&](const Exact& t) { return t == C; }) &&
                  std::all_of(s.digits.begin(), s.digits.end(), [&](const Integer& d) { return d == a; });
        orb.expect(ok, [&] { return where; });
      });
      recon.trial(where, [&] {
        BACSegment<Exact> s = reconstruct_bac(p, C, C, 0, 12, 12);
        bool ok = std::all_of(s.theta.begin(), s.theta.end(), [&](const Exact& t) { return t == C; }) &&
                  std::all_of(s.digits.begin(), s.digits.end(), [&](const Integer& d) { return d == a; });
        recon.expect(ok, [&] { return where; });
      });
    }
    for (int a = 0; a <= 10; ++a) {
      std::string where = "a=" + std::to_string(a);
      formula.trial(where, [&] {
        Exact xi = xi_constant(p, a);
        Exact alt = ex(1) / (ex(2) * xi + ex(Rational(a) + p.k - p.m));
        Rational s = Rational(a) + p.k;
        Exact sq = ex(p.m == 0 ? Rational(s * s + 4 * p.k) : Rational((s + 1) * (s + 1) - 4 * p.k));
        Exact C = c_constant(p, Integer(a));
        formula.expect(C == alt && C * C * sq == ex(1) && C.sign() > 0, [&] { return where; });
      });
      mono.trial(where, [&] {
        mono.expect(less(c_constant(p, Integer(a + 1)), c_constant(p, Integer(a))), [&] { return where; });
      });
    }
    for (Check* c : {&orb, &recon, &formula, &mono}) rep.checks.push_back(c->result());
    if (p.m == 0) {
      Check mk("markoff", p);
      mk.trial("markoff", [&] {
        auto [m1, m2] = markoff_constants(p);
        const Rational& k = p.k;
        bool ok = m1 == c_constant(p, Integer(0)) && m1 * m1 == ex(1 / (k * k + 4 * k)) &&
                  m2 * m2 == ex(1 / (k * k + 6 * k + 1)) && m2.sign() > 0 && less(m2, m1);
        if (k == 1) ok = ok && m1 == Exact::surd(0, 1, 5, 5) && m2 == Exact::surd(0, 1, 2, 4);
        mk.expect(ok, [&] { return m1.to_string() + ", " + m2.to_string(); });
      });
      rep.checks.push_back(mk.result());
    } else {
      Check rb("renyi_constants", p);
      rb.trial("renyi", [&] {
        auto [CL, Cl] = renyi_bounds(p, 1, Integer(3));
        auto [Cinf, C0] = renyi_bounds(p, 0, std::nullopt);
        rb.expect(CL == c_constant(p, Integer(3)) && Cl == c_constant(p, Integer(1)) && Cinf == ex(0) &&
                      C0 == ex(1 / (p.k - 1)),
                  [&] { return CL.to_string() + ", " + Cl.to_string(); });
      });
      rep.checks.push_back(rb.result());
    }
  }
}

// ---------------------------------------------------------------- renyi-bounds

constexpr long kRenyiWindow = 100;
constexpr std::size_t kRenyiDepth = 400;
constexpr long kRenyiDigits = 160;
constexpr int kConstructionLevels = 40;

void renyi_suite(const SuiteConfig& cfg, SuiteReport& rep) {
  for (const Params& p : params_or(cfg, {{1, 2}})) {
    if (p.m != 1 || p.k <= 1) throw Error(ErrorCode::UnsupportedParameter, "renyi-bounds needs m = 1, k > 1");
    for (auto [l, L] : std::vector<std::pair<int, int>>{{0, 1}, {1, 3}}) {
      std::string tag = p.label() + " l=" + std::to_string(l) + " L=" + std::to_string(L);
      auto [CL, Cl] = renyi_bounds(p, l, Integer(L));
      BigReal lo = BigReal(CL, kRenyiDigits) - Rational("1/1000000000000");
      BigReal hi = BigReal(Cl, kRenyiDigits) + Rational("1/1000000000000");
      Check win("settled_bounds", tag), cons_l("construction_upper", tag), cons_L("construction_lower", tag),
          route("construction_route", tag);
      std::size_t seeds = std::max<std::size_t>(3, cfg.trials / 10);
      for (std::size_t i = 0; i < seeds; ++i) {
        auto rng = trial_rng(cfg, "renyi/" + tag, p, i);
        Digits fwd = random_digits(rng, kRenyiDepth, l, L), bwd = random_digits(rng, kRenyiDepth, l, L);
        win.trial("seed " + std::to_string(i), [&] {
          DynamicPair<BigReal> s = seed_from_digits(p, fwd, bwd, kRenyiDigits);
          BACSegment<BigReal> seg = bac_from_orbit(orbit(s, kRenyiWindow - 1, kRenyiWindow));
          auto w = settling_window(seg.theta, seg.start, 1, 0);
          if (!w) {
            win.fail("seed " + std::to_string(i) + ": no turning point");
            return;
          }
          for (long n = -kRenyiWindow; n <= kRenyiWindow; ++n) {
            if (n < w->forward_first && n > w->backward_last) continue;
            const BigReal& t = seg.at(n);
            win.margin(std::min((t - lo).to_double(), (hi - t).to_double()));
            win.expect(compare(lo, t) != Ordering::Greater && compare(t, hi) != Ordering::Greater,
                       [&] { return "seed " + std::to_string(i) + " n=" + std::to_string(n) + " theta=" + t.to_string(20); });
          }
        });
      }
      // Digits L at powers of two push theta towards C_l; the swapped
      // construction pushes it towards C_L.
      for (bool upper : {true, false}) {
        Check& c = upper ? cons_l : cons_L;
        DigitFunction a = upper ? power_of_two_digits(l, L) : power_of_two_digits(L, l);
        BigReal target(upper ? Cl : CL, kRenyiDigits);
        c.trial(upper ? "upper" : "lower", [&] {
          double dist = 0;
          for (int j = 1; j <= kConstructionLevels; ++j) {
            long N = 1L << j;
            long n = N + j + 1;
            BigReal t = theta_dynamic(pair_from_digits(p, a, n, 200, kRenyiDigits));
            dist = std::fabs((t - target).to_double());
            bool inside = compare(lo, t) != Ordering::Greater && compare(t, hi) != Ordering::Greater;
            c.expect(inside, [&] { return "j=" + std::to_string(j) + " theta=" + t.to_string(20); });
          }
          c.margin(dist);
          c.expect(dist < 1e-6, [&] { return "final distance " + std::to_string(dist); });
        });
        route.trial(upper ? "upper" : "lower", [&] {
          DynamicPair<BigReal> s = pair_from_digits(p, a, 0, kRenyiDepth, kRenyiDigits);
          Orbit<BigReal> o = orbit(s, 0, 40);
          for (long n = 1; n <= 40; ++n) {
            BigReal direct = theta_dynamic(pair_from_digits(p, a, n, 200, kRenyiDigits));
            BigReal iterated = theta_dynamic(o.at(n));
            route.expect(compare(direct, iterated) == Ordering::Undecidable || compare(direct, iterated) == Ordering::Equal,
                         [&] { return "n=" + std::to_string(n); });
          }
        });
      }
      for (Check* c : {&win, &cons_l, &cons_L, &route}) rep.checks.push_back(c->result());
    }
  }
}

// ---------------------------------------------------------------- eta

void eta_suite(const SuiteConfig& cfg, SuiteReport& rep) {
  for (const Params& p : params_or(cfg, {{0, 1}, {0, 2}, {1, 2}, {1, 1}})) {
    Check c("eta_bound", p);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      auto rng = trial_rng(cfg, "eta", p, i);
      DynamicPair<Exact> start = random_exact_pair(p, rng);
      c.trial(pair_str(start), [&] {
        Orbit<Exact> o = orbit(start, 10, 10);
        std::vector<Exact> theta;
        for (const auto& q : o.pairs) theta.push_back(theta_dynamic(q));
        // Psi(pair t) = (theta[t], theta[t+1]) carries the digits (a_n, a_{n+1}).
        if (p.renyi_limit()) {
          for (std::size_t t = 1; t < theta.size(); ++t) {
            Exact eta = abs(theta[t] - theta[t - 1]);
            c.margin(1 - eta.to_double());
            c.expect(less(eta, ex(1)), [&] { return pair_str(start) + " eta=" + eta.to_string(); });
          }
          return;
        }
        for (std::size_t t = 1; t + 1 < theta.size(); ++t) {
          Integer aN = backward_digit(o.pairs[t - 1]), aN1 = forward_digit(o.pairs[t - 1]), aN2 = forward_digit(o.pairs[t]);
          Exact e1 = theta[t] - theta[t - 1], e2 = theta[t + 1] - theta[t];
          Exact lhs = e1 * e1 + e2 * e2;
          Rational bound = eta_bound(p, std::min(aN, aN1), std::max(aN, aN1), std::min(aN1, aN2), std::max(aN1, aN2));
          c.margin(bound.get_d() - lhs.to_double());
          c.expect(!less(ex(bound), lhs), [&] { return pair_str(start) + " t=" + std::to_string(t); });
        }
      });
    }
    rep.checks.push_back(c.result());
    if (p.m == 1 && p.k > 1) {
      Check d("diameter_formula", p);
      for (int l = 0; l <= 3; ++l) {
        for (int L = l; L <= 3; ++L) {
          std::string where = "window " + std::to_string(l) + ".." + std::to_string(L);
          d.trial(where, [&] {
            const Rational& k = p.k;
            Rational s = Rational(l) + k, t = Rational(L) + k + 1;
            Rational diff = s / (s * s - k) - t / (t * t - k);
            Rational want = 2 * diff * diff;
            Rational got = cell_diameter(p, l, L, l, L);
            d.expect(got == want, [&] { return where + " got " + format_rational(got) + " want " + format_rational(want); });
          });
        }
      }
      rep.checks.push_back(d.result());
    }
  }
}

}  // namespace

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  static const std::map<std::string, void (*)(const SuiteConfig&, SuiteReport&)> suites = {
      {"expansion", expansion_suite}, {"extension", extension_suite}, {"conjugacy", conjugacy_suite},
      {"regions", regions_suite},     {"triples", triples_suite},     {"constants", constants_suite},
      {"renyi-bounds", renyi_suite},  {"eta", eta_suite}};
  auto it = suites.find(name);
  if (it == suites.end()) throw Error(ErrorCode::DomainError, "unknown suite " + name);
  SuiteReport rep{name, {}};
  it->second(config, rep);
  return rep;
}

DynamicPair<BigReal> pair_from_digits(const Params& params, const DigitFunction& a, long n, std::size_t depth,
                                      long digits) {
  Digits future, past;
  for (std::size_t i = 1; i <= depth; ++i) {
    future.push_back(a(n + static_cast<long>(i)));
    past.push_back(a(n - static_cast<long>(i)));
  }
  BigReal unit = BigReal::hull(BigReal(Rational(0), digits), BigReal(Rational(1), digits));
  BigReal x = evaluate(params, future, unit);
  BigReal y = Rational(Rational(params.m) - params.k - a(n)) - evaluate(params, past, unit);
  return {params, x, y, n};
}

DigitFunction power_of_two_digits(const Integer& lo, const Integer& hi) {
  return [lo, hi](long n) {
    if (n <= 0) n = 1 - n;
    bool power = n >= 2 && (n & (n - 1)) == 0;
    return power ? hi : lo;
  };
}

std::optional<SettledWindow> settling_window(const std::vector<BigReal>& theta, long start, long forward_from,
                                             long backward_from) {
  auto at = [&](long n) -> const BigReal& { return theta.at(static_cast<std::size_t>(n - start)); };
  long first = start, last = start + static_cast<long>(theta.size()) - 1;
  auto turning = [&](long n) {
    Ordering l = compare(at(n), at(n - 1)), r = compare(at(n), at(n + 1));
    return (l == Ordering::Greater && r == Ordering::Greater) || (l == Ordering::Less && r == Ordering::Less);
  };
  std::optional<long> f, b;
  for (long n = std::max(forward_from, first + 1); n < last && !f; ++n) {
    if (turning(n)) f = n;
  }
  for (long n = std::min(backward_from, last - 1); n > first && !b; --n) {
    if (turning(n)) b = n;
  }
  if (!f || !b) return std::nullopt;
  return SettledWindow{*f, *b};
}

}  // namespace cfbac
