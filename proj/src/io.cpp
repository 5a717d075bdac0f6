#include "cfbac/io.hpp"

#include <algorithm>
#include <sstream>

namespace cfbac {

Json digit_json(const Integer& a) {
  if (a.fits_slong_p()) return a.get_si();
  return a.get_str();
}

Json digits_json(const Digits& digits) {
  Json out = Json::array();
  for (const Integer& a : digits) out.push_back(digit_json(a));
  return out;
}

namespace {

template <class R>
Json values_json(const std::vector<R>& values) {
  Json out = Json::array();
  for (const R& v : values) out.push_back(format(v));
  return out;
}

}  // namespace

template <class R>
Json to_json(const Expansion<R>& e) {
  Json j;
  j["m"] = e.params.m;
  j["k"] = format_rational(e.params.k);
  j["x0"] = format(e.x0);
  j["digits"] = digits_json(e.digits);
  j["futures"] = values_json(e.futures);
  j["terminated"] = e.terminated();
  j["N"] = e.terminated() ? Json(e.steps()) : Json(nullptr);
  j["status"] = status_name(e.status);
  return j;
}

template <class R>
Json to_json(const Orbit<R>& o) {
  Json j;
  Json pairs = Json::array();
  for (const auto& p : o.pairs) pairs.push_back({{"n", p.n}, {"x", format(p.x)}, {"y", format(p.y)}});
  j["pairs"] = pairs;
  j["digits"] = {{"backward", digits_json(o.digits.backward)}, {"forward", digits_json(o.digits.forward)}};
  return j;
}

template <class R>
Json to_json(const BACSegment<R>& s) {
  Json j;
  j["start"] = s.start;
  j["theta"] = values_json(s.theta);
  j["digits"] = digits_json(s.digits);
  j["eta"] = values_json(s.eta);
  return j;
}

Json to_json(const RegionSpec& region) {
  Json pieces = Json::array();
  for (const RegionPiece& piece : region.pieces) {
    Json hps = Json::array();
    for (const HalfPlane& h : piece.half_planes) {
      hps.push_back({{"alpha", format_rational(h.alpha)},
                     {"beta", format_rational(h.beta)},
                     {"gamma", format_rational(h.gamma)},
                     {"rel", rel_name(h.rel)},
                     {"label", h.label}});
    }
    Json p = {{"half_planes", hps}};
    if (piece.hyperbola) {
      p["hyperbola"] = {{"k", format_rational(piece.hyperbola->k)}, {"strict", piece.hyperbola->strict}};
    } else {
      p["hyperbola"] = nullptr;
    }
    pieces.push_back(p);
  }
  return {{"name", region.name}, {"pieces", pieces}};
}

Json to_json(const Quadrangle& cell) {
  Json vertices = Json::array();
  for (const Point& pt : cell.vertices) vertices.push_back({format_rational(pt[0]), format_rational(pt[1])});
  Json edges = Json::array();
  for (bool e : cell.edge_included) edges.push_back(e);
  return {{"vertices", vertices}, {"edge_included", edges}};
}

std::vector<BoundaryRow> cell_rows(const Quadrangle& cell, const Integer& a, const Integer& b) {
  const std::string labels[4] = {"p_" + a.get_str(), "f_" + Integer(b + 1).get_str(), "p_" + Integer(a + 1).get_str(),
                                 "f_" + b.get_str()};
  std::vector<BoundaryRow> rows;
  for (std::size_t i = 0; i <= 4; ++i) {
    const Point& pt = cell.vertices[i % 4];
    std::size_t edge = std::min<std::size_t>(i, 3);
    rows.push_back({format_rational(pt[0]), format_rational(pt[1]), labels[edge], cell.edge_included[edge]});
  }
  return rows;
}

Json to_json(const CheckResult& check) {
  Json j = {{"name", check.name},
            {"params", check.params},
            {"status", check.passed() ? "PASS" : "FAIL"},
            {"cases", check.cases},
            {"failures", check.failures}};
  j["min_margin"] = check.min_margin ? Json(*check.min_margin) : Json(nullptr);
  j["max_margin"] = check.max_margin ? Json(*check.max_margin) : Json(nullptr);
  j["counterexamples"] = check.counterexamples;
  return j;
}

Json to_json(const SuiteReport& report) {
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) checks.push_back(to_json(c));
  return {{"suite", report.suite}, {"status", report.passed() ? "PASS" : "FAIL"}, {"checks", checks}};
}

std::string to_csv(const std::vector<BoundaryRow>& rows) {
  std::ostringstream out;
  out << "u,v,segment_id,included\n";
  for (const BoundaryRow& r : rows) out << r.u << ',' << r.v << ',' << r.segment_id << ',' << (r.included ? 1 : 0) << '\n';
  return out.str();
}

template Json to_json(const Expansion<Exact>&);
template Json to_json(const Expansion<BigReal>&);
template Json to_json(const Orbit<Exact>&);
template Json to_json(const Orbit<BigReal>&);
template Json to_json(const BACSegment<Exact>&);
template Json to_json(const BACSegment<BigReal>&);

}  // namespace cfbac
