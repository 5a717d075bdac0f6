#ifndef CFBAC_GEOMETRY_HPP
#define CFBAC_GEOMETRY_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cfbac/expansion.hpp"

namespace cfbac {

enum class Rel { Less, LessEq, Greater, GreaterEq };

const char* rel_name(Rel r);

// alpha u + beta v (rel) gamma.
struct HalfPlane {
  Rational alpha;
  Rational beta;
  Rational gamma;
  Rel rel = Rel::Less;
  std::string label;

  bool weak() const { return rel == Rel::LessEq || rel == Rel::GreaterEq; }
  HalfPlane swapped() const;
};

// 4 k u v <= 1 (or < 1 when strict).
struct Hyperbola {
  Rational k;
  bool strict = false;
  std::string label;
};

struct RegionPiece {
  std::vector<HalfPlane> half_planes;
  std::optional<Hyperbola> hyperbola;
};

// Union of pieces, each an intersection of half-planes and an optional
// hyperbolic cap.
struct RegionSpec {
  std::string name;
  std::vector<RegionPiece> pieces;

  RegionSpec swapped() const;
};

enum class Membership { Outside, Inside, Borderline };

const char* membership_name(Membership m);

template <class R>
Membership contains(const RegionSpec& region, const R& u, const R& v);

using Point = std::array<Rational, 2>;

RegionSpec gamma_prime(const Params& params);
RegionSpec tilde_gamma(const Rational& k);
RegionSpec region_P(const Params& params, const Integer& a);
RegionSpec region_F(const Params& params, const Integer& a);

// Corner points of a bounded polygonal piece in counter-clockwise order,
// collinear corners dropped.
std::vector<Point> polygon_vertices(const RegionPiece& piece);

// P_a^# cap F_b^#. Vertices in the order p_a.f_b, p_a.f_b+1, p_a+1.f_b+1,
// p_a+1.f_b; edge i joins vertex i to vertex i+1 and lies on p_a, f_b+1,
// p_a+1, f_b respectively.
struct Quadrangle {
  std::array<Point, 4> vertices;
  std::array<bool, 4> edge_included{};
};

Quadrangle cell_vertices(const Params& params, const Integer& a, const Integer& b);

// Squared diameter of the union of the cells P_i cap F_j for a <= i <= A and
// b <= j <= B.
Rational cell_diameter(const Params& params, const Integer& a, const Integer& A, const Integer& b,
                       const Integer& B);

enum class ClassifyStatus { Ok, Borderline };

struct Classification {
  ClassifyStatus status = ClassifyStatus::Ok;
  Integer a;
  Integer b;
};

// The unique (a, b) with (u, v) in P_a^# cap F_b^#. Raises OutOfRegion when
// the point is outside Gamma'.
template <class R>
Classification classify_pair(const Params& params, const R& u, const R& v);

// Every a with (u, v) in P_a^# (resp. F_a^#), found by scanning all digits
// the region could admit.
template <class R>
std::vector<Integer> claimants_P(const Params& params, const R& u, const R& v);
template <class R>
std::vector<Integer> claimants_F(const Params& params, const R& u, const R& v);

// Boundary polyline row: exact vertices carry rational strings, hyperbola
// samples carry decimals.
struct BoundaryRow {
  std::string u;
  std::string v;
  std::string segment_id;
  bool included = false;
};

// Boundary of every piece walked counter-clockwise, with pieces that meet
// along edges labelled "seam" joined into one loop. Unbounded pieces are cut
// by a box whose edges are labelled "clip"; arcs are sampled at `resolution`
// points. A row starts the segment that runs to the next row.
std::vector<BoundaryRow> emit_region(const RegionSpec& region, int resolution);

}  // namespace cfbac

#endif
