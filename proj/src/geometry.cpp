#include "cfbac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cfbac {

const char* rel_name(Rel r) {
  switch (r) {
    case Rel::Less: return "<";
    case Rel::LessEq: return "<=";
    case Rel::Greater: return ">";
    case Rel::GreaterEq: return ">=";
  }
  return "?";
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::Outside: return "outside";
    case Membership::Inside: return "inside";
    case Membership::Borderline: return "borderline";
  }
  return "?";
}

namespace {

std::string term(const Rational& c, const char* var, bool first) {
  if (c == 0) return "";
  std::string s;
  if (c < 0) {
    s = "-";
  } else if (!first) {
    s = "+";
  }
  Rational mag = abs(c);
  if (mag != 1) s += format_rational(mag);
  return s + var;
}

std::string line_label(const Rational& alpha, const Rational& beta, const Rational& gamma) {
  std::string lhs = term(alpha, "u", true);
  lhs += term(beta, "v", lhs.empty());
  return lhs + "=" + format_rational(gamma);
}

HalfPlane make_hp(const Rational& alpha, const Rational& beta, const Rational& gamma, Rel rel,
                  std::string label = "") {
  if (label.empty()) label = line_label(alpha, beta, gamma);
  return {alpha, beta, gamma, rel, label};
}

std::string index_label(char family, const Integer& a) { return std::string(1, family) + "_" + a.get_str(); }

void require_k(const Params& params, const char* what) {
  if (params.m == 0 && params.k < 1) {
    throw Error(ErrorCode::UnsupportedParameter, std::string(what) + " needs k >= 1 when m = 0");
  }
  if (params.m == 1 && params.k <= 1) {
    throw Error(ErrorCode::UnsupportedParameter, std::string(what) + " needs k > 1 when m = 1");
  }
}

// Boundary line p_a: (a+k)^2 u + s k v = a + k with s = +1 (m = 0) or -1 (m = 1).
HalfPlane p_line(const Params& params, const Integer& a, Rel rel) {
  Rational ak = Rational(a) + params.k;
  Rational beta = params.m == 0 ? Rational(params.k) : Rational(-params.k);
  return make_hp(ak * ak, beta, ak, rel, index_label('p', a));
}

}  // namespace

HalfPlane HalfPlane::swapped() const {
  HalfPlane h{beta, alpha, gamma, rel, label};
  if (label.size() > 2 && label[1] == '_' && (label[0] == 'p' || label[0] == 'f')) {
    h.label[0] = label[0] == 'p' ? 'f' : 'p';
  } else {
    h.label = line_label(h.alpha, h.beta, h.gamma);
  }
  return h;
}

RegionSpec RegionSpec::swapped() const {
  RegionSpec r{name, {}};
  for (const RegionPiece& piece : pieces) {
    RegionPiece q;
    for (const HalfPlane& h : piece.half_planes) q.half_planes.push_back(h.swapped());
    q.hyperbola = piece.hyperbola;
    r.pieces.push_back(q);
  }
  return r;
}

namespace {

enum class Tri { False, True, Unknown };

template <class R>
Tri holds(const HalfPlane& h, const R& u, const R& v) {
  int s;
  try {
    s = sign_of(h.alpha * u + h.beta * v - h.gamma);
  } catch (const Undecidable&) {
    return Tri::Unknown;
  }
  bool ok = false;
  switch (h.rel) {
    case Rel::Less: ok = s < 0; break;
    case Rel::LessEq: ok = s <= 0; break;
    case Rel::Greater: ok = s > 0; break;
    case Rel::GreaterEq: ok = s >= 0; break;
  }
  return ok ? Tri::True : Tri::False;
}

template <class R>
Tri holds(const Hyperbola& h, const R& u, const R& v) {
  int s;
  try {
    s = sign_of(Rational(4 * h.k) * u * v - Rational(1));
  } catch (const Undecidable&) {
    return Tri::Unknown;
  }
  bool ok = h.strict ? s < 0 : s <= 0;
  return ok ? Tri::True : Tri::False;
}

template <class R>
Tri holds(const RegionPiece& piece, const R& u, const R& v) {
  Tri result = Tri::True;
  for (const HalfPlane& h : piece.half_planes) {
    Tri t = holds(h, u, v);
    if (t == Tri::False) return Tri::False;
    if (t == Tri::Unknown) result = Tri::Unknown;
  }
  if (piece.hyperbola) {
    Tri t = holds(*piece.hyperbola, u, v);
    if (t == Tri::False) return Tri::False;
    if (t == Tri::Unknown) result = Tri::Unknown;
  }
  return result;
}

}  // namespace

template <class R>
Membership contains(const RegionSpec& region, const R& u, const R& v) {
  bool unknown = false;
  for (const RegionPiece& piece : region.pieces) {
    Tri t = holds(piece, u, v);
    if (t == Tri::True) return Membership::Inside;
    if (t == Tri::Unknown) unknown = true;
  }
  return unknown ? Membership::Borderline : Membership::Outside;
}

RegionSpec gamma_prime(const Params& params) {
  const Rational& k = params.k;
  RegionPiece piece;
  if (params.m == 0) {
    if (sgn(k) <= 0) throw Error(ErrorCode::DomainError, "k must be positive");
    piece.half_planes = {
        make_hp(1, 0, 0, Rel::Greater),
        make_hp(0, 1, 0, Rel::Greater),
        make_hp(k, 1, 1, k < 1 ? Rel::LessEq : Rel::Less),
        make_hp(1, k, 1, Rel::Less),
    };
  } else if (params.renyi_limit()) {
    piece.half_planes = {
        make_hp(1, 0, 0, Rel::Greater),
        make_hp(0, 1, 0, Rel::GreaterEq),
        make_hp(-1, 1, 1, Rel::Less),
        make_hp(1, -1, 1, Rel::LessEq),
    };
  } else {
    piece.half_planes = {
        make_hp(1, 0, 0, Rel::Greater),
        make_hp(0, 1, 0, Rel::Greater),
        make_hp(k, -1, 1, Rel::Less),
        make_hp(-1, k, 1, Rel::Less),
    };
  }
  return {"gamma_prime", {piece}};
}

namespace {

constexpr const char* kSeam = "seam";

// Region under u + kv = 1 for u <= 1/2, under 4kuv = 1 for 1/2 < u < 1/(2k)
// and under ku + v = 1 beyond, for 0 < k < 1. The lines touch the hyperbola
// at the two split points, which are the images of the fold x + y = 0. The
// edge ku + v = 1 is the image of y = -k, which P_0 excludes and the range keeps.
std::vector<RegionPiece> capped_pieces(const Rational& k, const HalfPlane& left, Rel right_edge) {
  HalfPlane v_pos = make_hp(0, 1, 0, Rel::Greater);
  Rational half(1, 2), tangent = 1 / (2 * k);
  return {
      {{v_pos, left, make_hp(1, k, 1, Rel::Less), make_hp(1, 0, half, Rel::LessEq, kSeam)}, std::nullopt},
      {{v_pos, left, make_hp(1, 0, half, Rel::Greater, kSeam), make_hp(1, 0, tangent, Rel::Less, kSeam)},
       Hyperbola{k, false, "4kuv=1"}},
      {{v_pos, left, make_hp(k, 1, 1, right_edge), make_hp(1, 0, tangent, Rel::GreaterEq, kSeam)}, std::nullopt},
  };
}

}  // namespace

RegionSpec tilde_gamma(const Rational& k) {
  if (sgn(k) <= 0 || k >= 1) throw Error(ErrorCode::DomainError, "tilde gamma needs 0 < k < 1");
  RegionSpec r{"tilde_gamma", capped_pieces(k, make_hp(1, 0, 0, Rel::Greater), Rel::LessEq)};
  return r;
}

RegionSpec region_P(const Params& params, const Integer& a) {
  if (a < 0) throw Error(ErrorCode::DomainError, "digit must be non-negative");
  const Rational& k = params.k;
  RegionSpec r{"P_" + a.get_str(), {}};
  HalfPlane far = p_line(params, a + 1, Rel::Greater);
  if (params.m == 0) {
    HalfPlane v_pos = make_hp(0, 1, 0, Rel::Greater);
    HalfPlane top = make_hp(1, k, 1, Rel::Less);
    if (a > 0) {
      r.pieces.push_back({{v_pos, p_line(params, a, Rel::LessEq), far, top}, std::nullopt});
    } else if (k >= 1) {
      r.pieces.push_back({{v_pos, p_line(params, 0, Rel::Less), far, top}, std::nullopt});
    } else {
      r.pieces = capped_pieces(k, far, Rel::Less);
    }
  } else {
    HalfPlane v_pos = make_hp(0, 1, 0, Rel::Greater);
    HalfPlane left = make_hp(-1, k, 1, Rel::Less);
    Rel near = a > 0 ? Rel::LessEq : Rel::Less;
    r.pieces.push_back({{v_pos, p_line(params, a, near), far, left}, std::nullopt});
  }
  return r;
}

RegionSpec region_F(const Params& params, const Integer& a) {
  require_k(params, "F regions");
  RegionSpec r = region_P(params, a).swapped();
  r.name = "F_" + a.get_str();
  return r;
}

namespace {

std::optional<Point> intersect(const HalfPlane& h, const HalfPlane& g) {
  Rational det = h.alpha * g.beta - h.beta * g.alpha;
  if (det == 0) return std::nullopt;
  Rational u = (h.gamma * g.beta - h.beta * g.gamma) / det;
  Rational v = (h.alpha * g.gamma - h.gamma * g.alpha) / det;
  return Point{u, v};
}

bool in_closure(const HalfPlane& h, const Point& p) {
  Rational s = h.alpha * p[0] + h.beta * p[1] - h.gamma;
  return (h.rel == Rel::Less || h.rel == Rel::LessEq) ? s <= 0 : s >= 0;
}

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<Point> convex_vertices(const std::vector<HalfPlane>& hps) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < hps.size(); ++i) {
    for (std::size_t j = i + 1; j < hps.size(); ++j) {
      auto p = intersect(hps[i], hps[j]);
      if (!p) continue;
      bool ok = std::all_of(hps.begin(), hps.end(), [&](const HalfPlane& h) { return in_closure(h, *p); });
      if (ok && std::find(pts.begin(), pts.end(), *p) == pts.end()) pts.push_back(*p);
    }
  }
  if (pts.size() < 3) return pts;
  double cu = 0, cv = 0;
  for (const Point& p : pts) {
    cu += p[0].get_d();
    cv += p[1].get_d();
  }
  cu /= static_cast<double>(pts.size());
  cv /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
    return std::atan2(a[1].get_d() - cv, a[0].get_d() - cu) < std::atan2(b[1].get_d() - cv, b[0].get_d() - cu);
  });
  // Start at the lowest-leftmost corner so the order is canonical.
  auto start = std::min_element(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
  });
  std::rotate(pts.begin(), start, pts.end());
  std::vector<Point> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& prev = pts[(i + pts.size() - 1) % pts.size()];
    const Point& next = pts[(i + 1) % pts.size()];
    if (cross(prev, pts[i], next) != 0) out.push_back(pts[i]);
  }
  return out;
}

}  // namespace

std::vector<Point> polygon_vertices(const RegionPiece& piece) { return convex_vertices(piece.half_planes); }

Quadrangle cell_vertices(const Params& params, const Integer& a, const Integer& b) {
  require_k(params, "cells");
  if (a < 0 || b < 0) throw Error(ErrorCode::DomainError, "digits must be non-negative");
  // p_a and f_b meet at ((b+k), (a+k)) / ((a+k)(b+k) + k) for m = 0 and
  // over (a+k)(b+k) - k for m = 1; for m = 0, k = 1 the lines p_0 and f_0
  // coincide and this is the midpoint of their common edge.
  auto corner = [&](const Integer& i, const Integer& j) {
    Rational s = Rational(i) + params.k, t = Rational(j) + params.k;
    Rational den = params.m == 0 ? Rational(s * t + params.k) : Rational(s * t - params.k);
    return Point{t / den, s / den};
  };
  Quadrangle q;
  q.vertices = {corner(a, b), corner(a, b + 1), corner(a + 1, b + 1), corner(a + 1, b)};
  q.edge_included = {a > 0, false, false, b > 0};
  return q;
}

namespace {

Rational dist2(const Point& p, const Point& q) {
  Rational du = p[0] - q[0], dv = p[1] - q[1];
  return du * du + dv * dv;
}

}  // namespace

Rational cell_diameter(const Params& params, const Integer& a, const Integer& A, const Integer& b,
                       const Integer& B) {
  if (a > A || b > B) throw Error(ErrorCode::DomainError, "window bounds out of order");
  // The union of the window's cells is the quadrangle cut out by p_a, p_A+1,
  // f_b and f_B+1; its diameter is attained between two corners.
  Quadrangle lo = cell_vertices(params, a, b);
  Quadrangle hi = cell_vertices(params, A, B);
  std::array<Point, 4> corners = {lo.vertices[0], cell_vertices(params, a, B).vertices[1], hi.vertices[2],
                                  cell_vertices(params, A, b).vertices[3]};
  Rational best = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) best = std::max(best, dist2(corners[i], corners[j]));
  }
  return best;
}

namespace {

// Digits a with (u, v) possibly in P_a: the boundary lines force
// (1 - k|v|)/u - k - 1 < a + 1 and a + k <= (1 + k|v|)/u.
template <class R>
std::pair<Integer, Integer> scan_range(const Params& params, const R& u, const R& v) {
  double ud = to_double(u), kv = params.k.get_d() * std::fabs(to_double(v));
  double k = params.k.get_d();
  double lo = std::max(0.0, std::floor((1 - kv) / ud - k) - 3);
  double hi = std::ceil((1 + kv) / ud - k) + 2;
  return {Integer(lo), Integer(hi)};
}

template <class R>
std::vector<Integer> claimants(const Params& params, const R& u, const R& v, bool future) {
  const R& first = future ? v : u;
  const R& second = future ? u : v;
  std::vector<Integer> out;
  auto [lo, hi] = scan_range(params, first, second);
  for (Integer a = lo; a <= hi; ++a) {
    if (contains(region_P(params, a), first, second) != Membership::Outside) out.push_back(a);
  }
  return out;
}

}  // namespace

template <class R>
std::vector<Integer> claimants_P(const Params& params, const R& u, const R& v) {
  return claimants(params, u, v, false);
}

template <class R>
std::vector<Integer> claimants_F(const Params& params, const R& u, const R& v) {
  require_k(params, "F regions");
  return claimants(params, u, v, true);
}

namespace {

template <class R>
std::optional<Integer> locate(const Params& params, const R& u, const R& v, bool& borderline) {
  // The digit formula proposes a candidate; membership decides.
  std::vector<Integer> candidates;
  try {
    R kuv = Rational(4 * params.k) * u * v;
    R D = sqrt_in(params.m == 0 ? Rational(1) - kuv : Rational(1) + kuv, u);
    Integer a = floor_of((Rational(1) + D) / (Rational(2) * u) - params.k);
    candidates = {a, a - 1, a + 1};
  } catch (const Error&) {
  }
  for (const Integer& a : candidates) {
    if (a < 0) continue;
    Membership mem = contains(region_P(params, a), u, v);
    if (mem == Membership::Inside) return a;
    if (mem == Membership::Borderline) borderline = true;
  }
  for (const Integer& a : claimants(params, u, v, false)) {
    Membership mem = contains(region_P(params, a), u, v);
    if (mem == Membership::Inside) return a;
    borderline = true;
  }
  return std::nullopt;
}

}  // namespace

template <class R>
Classification classify_pair(const Params& params, const R& u, const R& v) {
  require_k(params, "classification");
  Membership in = contains(gamma_prime(params), u, v);
  if (in == Membership::Outside) throw Error(ErrorCode::OutOfRegion, "point outside gamma prime");
  Classification c;
  bool borderline = in == Membership::Borderline;
  auto a = locate(params, u, v, borderline);
  auto b = locate(params, v, u, borderline);
  if (!a || !b) {
    if (!borderline) throw Error(ErrorCode::OutOfRegion, "no region claims the point");
    c.status = ClassifyStatus::Borderline;
    return c;
  }
  c.a = *a;
  c.b = *b;
  if (borderline) c.status = ClassifyStatus::Borderline;
  return c;
}

namespace {

std::string decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Fragment {
  double u0, v0, u1, v1;
  Point exact_start;
  bool exact = false;
  std::string id;
  bool included = false;
  bool arc = false;
};

Rational clip_size(const RegionSpec& region) {
  Rational size = 4;
  for (const RegionPiece& piece : region.pieces) {
    for (const HalfPlane& h : piece.half_planes) {
      for (const Rational* c : {&h.alpha, &h.beta}) {
        if (*c != 0) size = std::max(size, Rational(4 * abs(h.gamma / *c)));
      }
    }
    if (piece.hyperbola) size = std::max(size, Rational(4 / piece.hyperbola->k));
  }
  return size;
}

}  // namespace

std::vector<BoundaryRow> emit_region(const RegionSpec& region, int resolution) {
  if (resolution < 8) throw Error(ErrorCode::DomainError, "resolution must be at least 8");
  std::vector<BoundaryRow> rows;
  std::vector<Fragment> all;
  Rational box = clip_size(region);
  for (const RegionPiece& piece : region.pieces) {
    std::vector<HalfPlane> hps = piece.half_planes;
    hps.push_back(make_hp(1, 0, box, Rel::LessEq, "clip"));
    hps.push_back(make_hp(0, 1, box, Rel::LessEq, "clip"));
    hps.push_back(make_hp(1, 0, -box, Rel::GreaterEq, "clip"));
    hps.push_back(make_hp(0, 1, -box, Rel::GreaterEq, "clip"));
    std::vector<Point> poly = convex_vertices(hps);
    auto edge_of = [&](const Point& p, const Point& q) -> const HalfPlane* {
      const HalfPlane* found = nullptr;
      for (const HalfPlane& h : hps) {
        if (h.alpha * p[0] + h.beta * p[1] == h.gamma && h.alpha * q[0] + h.beta * q[1] == h.gamma) {
          if (!found || found->label == "clip") found = &h;
        }
      }
      return found;
    };
    std::vector<Fragment> frags;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % poly.size()];
      const HalfPlane* h = edge_of(p, q);
      Fragment f{p[0].get_d(), p[1].get_d(), q[0].get_d(), q[1].get_d(), p, true, h->label, h->weak()};
      if (!piece.hyperbola) {
        frags.push_back(f);
        continue;
      }
      // Keep the parts of the edge with 4k u v <= 1.
      double c = 4 * piece.hyperbola->k.get_d();
      double du = f.u1 - f.u0, dv = f.v1 - f.v0;
      double qa = c * du * dv, qb = c * (f.u0 * dv + f.v0 * du), qc = c * f.u0 * f.v0 - 1;
      std::vector<double> ts = {0.0, 1.0};
      if (std::fabs(qa) > 1e-300) {
        double disc = qb * qb - 4 * qa * qc;
        if (disc >= 0) {
          for (double t : {(-qb - std::sqrt(disc)) / (2 * qa), (-qb + std::sqrt(disc)) / (2 * qa)}) {
            if (t > 0 && t < 1) ts.push_back(t);
          }
        }
      } else if (std::fabs(qb) > 1e-300) {
        double t = -qc / qb;
        if (t > 0 && t < 1) ts.push_back(t);
      }
      std::sort(ts.begin(), ts.end());
      for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
        double tm = (ts[j] + ts[j + 1]) / 2;
        if (c * (f.u0 + tm * du) * (f.v0 + tm * dv) > 1) continue;
        Fragment g = f;
        g.u0 = f.u0 + ts[j] * du, g.v0 = f.v0 + ts[j] * dv;
        g.u1 = f.u0 + ts[j + 1] * du, g.v1 = f.v0 + ts[j + 1] * dv;
        g.exact = ts[j] == 0.0;
        frags.push_back(g);
      }
    }
    for (std::size_t i = 0; i < frags.size(); ++i) {
      const Fragment& f = frags[i];
      if (f.id != kSeam) all.push_back(f);
      if (!piece.hyperbola) continue;
      const Fragment& g = frags[(i + 1) % frags.size()];
      if (std::fabs(f.u1 - g.u0) + std::fabs(f.v1 - g.v0) < 1e-12) continue;
      // Follow v = 1/(4ku) from the end of this fragment to the next one.
      double c = 4 * piece.hyperbola->k.get_d();
      for (int s = 0; s + 1 < resolution; ++s) {
        double ua = f.u1 + (g.u0 - f.u1) * s / (resolution - 1);
        double ub = f.u1 + (g.u0 - f.u1) * (s + 1) / (resolution - 1);
        all.push_back({ua, 1 / (c * ua), ub, 1 / (c * ub), {}, false, piece.hyperbola->label,
                       !piece.hyperbola->strict, true});
      }
    }
  }

  // Chain fragments end to start so that pieces sharing a seam form one loop.
  std::vector<bool> used(all.size(), false);
  const Fragment* prev = nullptr;
  for (std::size_t done = 0; done < all.size(); ++done) {
    std::size_t next = all.size();
    if (prev) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (!used[j] && std::fabs(all[j].u0 - prev->u1) + std::fabs(all[j].v0 - prev->v1) < 1e-12) {
          next = j;
          break;
        }
      }
    }
    if (next == all.size()) {
      prev = nullptr;
      next = static_cast<std::size_t>(std::find(used.begin(), used.end(), false) - used.begin());
    }
    used[next] = true;
    const Fragment& f = all[next];
    bool continues = prev && !f.arc && !prev->arc && prev->id == f.id;
    prev = &f;
    if (continues) continue;
    if (f.exact) {
      rows.push_back({format_rational(f.exact_start[0]), format_rational(f.exact_start[1]), f.id, f.included});
    } else {
      rows.push_back({decimal(f.u0), decimal(f.v0), f.id, f.included});
    }
  }
  return rows;
}

template Membership contains(const RegionSpec&, const Exact&, const Exact&);
template Membership contains(const RegionSpec&, const BigReal&, const BigReal&);
template Classification classify_pair(const Params&, const Exact&, const Exact&);
template Classification classify_pair(const Params&, const BigReal&, const BigReal&);
template std::vector<Integer> claimants_P(const Params&, const Exact&, const Exact&);
template std::vector<Integer> claimants_P(const Params&, const BigReal&, const BigReal&);
template std::vector<Integer> claimants_F(const Params&, const Exact&, const Exact&);
template std::vector<Integer> claimants_F(const Params&, const BigReal&, const BigReal&);

}  // namespace cfbac
