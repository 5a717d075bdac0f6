#include "cfbac/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cfbac/io.hpp"

namespace cfbac {

namespace {

struct RunConfig {
  std::optional<int> m;
  std::optional<std::string> k;
  std::string backend = "exact";
  long precision = 0;
  long max_precision = 0;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string output;

  Params params() const { return Params::make(m.value_or(0), parse_rational(k.value_or("1"))); }
  std::optional<Params> explicit_params() const {
    if (!m && !k) return std::nullopt;
    return params();
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Digits parse_digits(const std::string& s) {
  Digits out;
  for (const std::string& d : split(s, ',')) {
    Integer a;
    if (a.set_str(d, 10) != 0 || a < 0) throw Error(ErrorCode::ParseError, "bad digit " + d);
    out.push_back(a);
  }
  return out;
}

// "prefix;period", e.g. "1,2;3" for 1,2,3,3,3,...
DigitStream parse_stream(const std::string& s) {
  auto semi = s.find(';');
  DigitStream d;
  d.prefix = parse_digits(s.substr(0, semi));
  if (semi != std::string::npos) d.period = parse_digits(s.substr(semi + 1));
  return d;
}

// Real literals plus the "pi-3" shorthand.
std::function<BigReal(long)> enclosure_of(const std::string& text) {
  if (text == "pi-3" || text == "pi - 3") return [](long d) { return BigReal::pi(d) - Rational(3); };
  if (text == "pi") return [](long d) { return BigReal::pi(d); };
  RealLiteral lit = parse_real(text);
  return [lit](long d) { return lit.enclosure(d); };
}

std::optional<Exact> exact_literal(const std::string& text) {
  if (text.rfind("pi", 0) == 0) return std::nullopt;
  RealLiteral lit = parse_real(text);
  if (!lit.exact) return std::nullopt;
  return lit.value;
}

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& out) : out_(&out) {
    if (!cfg.output.empty()) {
      file_.open(cfg.output);
      if (!file_) throw Error(ErrorCode::DomainError, "cannot open " + cfg.output);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit(const RunConfig& cfg, std::ostream& out, const Json& j) {
  Output o(cfg, out);
  o.stream() << j.dump(2) << '\n';
}

void emit_csv(const RunConfig& cfg, std::ostream& out, const std::string& csv) {
  Output o(cfg, out);
  o.stream() << csv;
}

int cmd_expand(const RunConfig& cfg, const std::string& x0, std::size_t steps, std::ostream& out) {
  Params p = cfg.params();
  std::optional<Exact> exact = cfg.backend == "exact" ? exact_literal(x0) : std::nullopt;
  if (exact) {
    emit(cfg, out, to_json(expand(p, *exact, steps)));
    return kExitOk;
  }
  Expansion<BigReal> e = expand_escalating(p, enclosure_of(x0), steps, cfg.precision, cfg.max_precision);
  Json j = to_json(e);
  if (!e.digits.empty()) {
    Json conv = Json::array();
    for (const Convergent& c : convergents(p, e.digits, true)) conv.push_back({c.p.get_str(), c.q.get_str()});
    j["convergents"] = conv;
    Json theta = Json::array();
    for (std::size_t n = 1; n <= e.steps(); ++n) theta.push_back(format(theta_def(e, n)));
    j["theta"] = theta;
  }
  emit(cfg, out, j);
  return e.status == ExpansionStatus::PrecisionExhausted ? kExitPrecision : kExitOk;
}

struct BacArgs {
  std::string from_pair;
  std::string pair;
  std::string x0;
  std::string forward;
  std::string backward;
  std::optional<long> constant;
  long n = 0;
  std::size_t back = 10;
  std::size_t fwd = 10;
  bool one_sided = false;
};

template <class R>
Json bac_json(const Params& p, const R& u, const R& v, const BacArgs& a) {
  return to_json(reconstruct_bac(p, u, v, a.n, a.back, a.fwd));
}

// Exact values whose square roots leave their field fall back to intervals.
template <class E, class B>
auto exact_or_big(bool try_exact, E&& exact, B&& big) {
  if (try_exact) {
    try {
      return exact();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInField && e.code() != ErrorCode::DistinctRadicands) throw;
    }
  }
  return big();
}

int cmd_bac(const RunConfig& cfg, const BacArgs& a, std::ostream& out) {
  Params p = cfg.params();
  long digits = cfg.precision;
  bool big = cfg.backend == "big";
  if (!a.from_pair.empty()) {
    auto parts = split(a.from_pair, ',');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "--from-pair expects u,v");
    auto u = exact_literal(parts[0]), v = exact_literal(parts[1]);
    Json j = exact_or_big(
        u && v && !big, [&] { return bac_json(p, *u, *v, a); },
        [&] {
          return escalate(digits, cfg.max_precision, [&](long d) {
            return bac_json(p, enclosure_of(parts[0])(d), enclosure_of(parts[1])(d), a);
          });
        });
    emit(cfg, out, j);
    return kExitOk;
  }
  if (!a.x0.empty() && a.one_sided) {
    Expansion<BigReal> e = expand_escalating(p, enclosure_of(a.x0), a.fwd + 1, digits, cfg.max_precision);
    Json theta = Json::array();
    for (std::size_t n = 1; n <= e.steps(); ++n) theta.push_back(format(theta_perron(e, n)));
    Json j = {{"x0", format(e.x0)}, {"digits", digits_json(e.digits)}, {"start", 0}, {"theta", theta},
              {"status", status_name(e.status)}};
    emit(cfg, out, j);
    return e.status == ExpansionStatus::PrecisionExhausted ? kExitPrecision : kExitOk;
  }
  auto segment = [&](const auto& seed) { return to_json(bac_from_orbit(orbit(seed, a.back, a.fwd))); };
  auto from_pair = [&](const auto& seed) {
    emit(cfg, out, segment(seed));
    return kExitOk;
  };
  if (a.constant) {
    Integer c = *a.constant;
    Exact xi = xi_constant(p, c);
    DynamicPair<Exact> seed{p, xi, Exact(Rational(Rational(p.m) - p.k - c)) - xi, 0};
    if (big) return from_pair(DynamicPair<BigReal>{p, BigReal(seed.x, digits), BigReal(seed.y, digits), 0});
    return from_pair(seed);
  }
  if (!a.pair.empty()) {
    auto parts = split(a.pair, ',');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "--pair expects x,y");
    auto x = exact_literal(parts[0]), y = exact_literal(parts[1]);
    emit(cfg, out, exact_or_big(
                       x && y && !big, [&] { return segment(DynamicPair<Exact>{p, *x, *y, 0}); },
                       [&] {
                         return escalate(digits, cfg.max_precision, [&](long d) {
                           return segment(DynamicPair<BigReal>{p, enclosure_of(parts[0])(d), enclosure_of(parts[1])(d), 0});
                         });
                       }));
    return kExitOk;
  }
  if (!a.x0.empty()) {
    auto x = exact_literal(a.x0);
    if (x && !big) return from_pair(reflection_seed(p, *x));
    return escalate(digits, cfg.max_precision,
                    [&](long d) { return from_pair(reflection_seed(p, enclosure_of(a.x0)(d))); });
  }
  if (!a.forward.empty() || !a.backward.empty()) {
    DigitStream f = parse_stream(a.forward), b = parse_stream(a.backward);
    bool finite = f.period.empty() || b.period.empty();
    if (!finite && !big) {
      try {
        return from_pair(seed_from_digits(p, f, b));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DistinctRadicands && e.code() != ErrorCode::NotInField) throw;
      }
    }
    Digits fd = f.prefix, bd = b.prefix;
    for (std::size_t i = 0; !f.period.empty() && fd.size() < 400; ++i) fd.push_back(f.period[i % f.period.size()]);
    for (std::size_t i = 0; !b.period.empty() && bd.size() < 400; ++i) bd.push_back(b.period[i % b.period.size()]);
    return escalate(digits, cfg.max_precision, [&](long d) { return from_pair(seed_from_digits(p, fd, bd, d)); });
  }
  throw Error(ErrorCode::ParseError, "bac needs one of --from-pair, --pair, --x0, --constant, --forward/--backward");
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::size_t trials, std::ostream& out) {
  SuiteConfig sc;
  sc.params = cfg.explicit_params();
  sc.seed = cfg.seed;
  sc.trials = trials;
  sc.digits = cfg.precision;
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  Json reports = Json::array();
  bool ok = true;
  for (const std::string& name : names) {
    SuiteReport r = run_suite(name, sc);
    ok = ok && r.passed();
    reports.push_back(to_json(r));
  }
  emit(cfg, out, {{"status", ok ? "PASS" : "FAIL"}, {"seed", cfg.seed}, {"trials", trials}, {"suites", reports}});
  return ok ? kExitOk : kExitViolation;
}

struct RegionArgs {
  bool gamma = false;
  bool tilde = false;
  std::vector<long> cell;
  std::optional<long> P;
  std::optional<long> F;
  int resolution = 64;
};

int cmd_regions(const RunConfig& cfg, const RegionArgs& a, std::ostream& out) {
  Params p = cfg.params();
  bool json = cfg.format == "json";
  if (!a.cell.empty()) {
    Quadrangle q = cell_vertices(p, a.cell.at(0), a.cell.at(1));
    if (json) {
      emit(cfg, out, to_json(q));
    } else {
      emit_csv(cfg, out, to_csv(cell_rows(q, a.cell.at(0), a.cell.at(1))));
    }
    return kExitOk;
  }
  RegionSpec region;
  if (a.tilde) {
    region = tilde_gamma(p.k);
  } else if (a.P) {
    region = region_P(p, *a.P);
  } else if (a.F) {
    region = region_F(p, *a.F);
  } else {
    region = gamma_prime(p);
  }
  if (json) {
    Json j = to_json(region);
    Json verts = Json::array();
    for (const RegionPiece& piece : region.pieces) {
      Json pv = Json::array();
      try {
        for (const Point& pt : polygon_vertices(piece)) pv.push_back({format_rational(pt[0]), format_rational(pt[1])});
      } catch (const Error&) {
        pv = nullptr;
      }
      verts.push_back(pv);
    }
    j["vertices"] = verts;
    emit(cfg, out, j);
  } else {
    emit_csv(cfg, out, to_csv(emit_region(region, a.resolution)));
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"(m,k)-continued fractions and their approximation coefficients"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.precision = default_digits();
  cfg.max_precision = std::max(kDefaultMaxDigits, cfg.precision * 4);

  auto common = [&](CLI::App* sub, bool with_params) {
    if (with_params) {
      sub->add_option("--m", cfg.m, "map family, 0 or 1")->check(CLI::IsMember({0, 1}));
      sub->add_option("--k", cfg.k, "positive rational parameter");
    }
    sub->add_option("--backend", cfg.backend, "exact or big")->check(CLI::IsMember({"exact", "big"}));
    sub->add_option("--precision", cfg.precision, "working precision in decimal digits")->check(CLI::PositiveNumber);
    sub->add_option("--max-precision", cfg.max_precision, "escalation ceiling in decimal digits")
        ->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output, "write data to this file instead of stdout");
  };

  auto* expand_cmd = app.add_subcommand("expand", "digits and futures of x0");
  std::string x0;
  std::size_t steps = 20;
  common(expand_cmd, true);
  expand_cmd->add_option("--x0", x0, "p/q, (p+q*sqrt(d))/r, ~decimal@digits or pi-3")->required();
  expand_cmd->add_option("--steps", steps, "maximum number of steps");

  auto* bac_cmd = app.add_subcommand("bac", "approximation coefficients around a seed");
  BacArgs bac;
  common(bac_cmd, true);
  bac_cmd->add_option("--from-pair", bac.from_pair, "u,v = (theta_{n-1}, theta_n)");
  bac_cmd->add_option("--n", bac.n, "index n of the pair given by --from-pair");
  bac_cmd->add_option("--pair", bac.pair, "x,y dynamic pair");
  bac_cmd->add_option("--x0", bac.x0, "future x0; the past is its reflection");
  bac_cmd->add_flag("--one-sided", bac.one_sided, "with --x0: use the finite past Y_n");
  bac_cmd->add_option("--constant", bac.constant, "constant digit a");
  bac_cmd->add_option("--forward", bac.forward, "future digits a_1,a_2,...;period");
  bac_cmd->add_option("--backward", bac.backward, "past digits a_0,a_-1,...;period");
  bac_cmd->add_option("--back", bac.back, "backward steps");
  bac_cmd->add_option("--fwd", bac.fwd, "forward steps");

  auto* verify_cmd = app.add_subcommand("verify", "theorem verification suites");
  std::string suite;
  std::size_t trials = SuiteConfig{}.trials;
  common(verify_cmd, true);
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  verify_cmd->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(allowed));
  verify_cmd->add_option("--seed", cfg.seed, "random seed");
  verify_cmd->add_option("--trials", trials, "random trials per parameter set")->check(CLI::PositiveNumber);

  auto* regions_cmd = app.add_subcommand("regions", "boundary data of the approximation regions");
  RegionArgs reg;
  common(regions_cmd, true);
  regions_cmd->add_flag("--gamma", reg.gamma, "the range gamma prime (default)");
  regions_cmd->add_flag("--tilde", reg.tilde, "the capped region for m = 0, 0 < k < 1");
  regions_cmd->add_option("--cell", reg.cell, "cell P_a cap F_b")->expected(2);
  regions_cmd->add_option("--P", reg.P, "region P_a");
  regions_cmd->add_option("--F", reg.F, "region F_a");
  regions_cmd->add_option("--resolution", reg.resolution, "arc samples")->check(CLI::Range(8, 100000));
  regions_cmd->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cfg.format = "csv";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }
  try {
    if (*expand_cmd) return cmd_expand(cfg, x0, steps, out);
    if (*bac_cmd) return cmd_bac(cfg, bac, out);
    if (*verify_cmd) return cmd_verify(cfg, suite, trials, out);
    if (*regions_cmd) return cmd_regions(cfg, reg, out);
  } catch (const PrecisionExhausted& e) {
    err << e.what() << '\n';
    return kExitPrecision;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace cfbac
