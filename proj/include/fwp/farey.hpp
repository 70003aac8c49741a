/// \file farey.hpp
/// Combinatorics of the Farey tessellation, its dual tree and the
/// PSL(2,Z) action, in the upper half-plane model.
#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "fwp/vertex.hpp"

namespace fwp {

/// Unordered Farey edge, stored with a < b in the extended-real order.
class Edge {
 public:
  /// Throws Error(kNotAnEdge) unless |p_a q_b - p_b q_a| = 1.
  Edge(Vertex x, Vertex y);
  static Edge root() { return Edge(Vertex(0), Vertex::infinity()); }
  static Edge parse(std::string_view a, std::string_view b) {
    return Edge(Vertex::parse(a), Vertex::parse(b));
  }

  const Vertex& a() const { return a_; }
  const Vertex& b() const { return b_; }
  bool has(const Vertex& v) const { return v == a_ || v == b_; }
  const Vertex& other(const Vertex& v) const { return v == a_ ? b_ : a_; }
  bool is_root() const;
  std::string str() const { return "(" + a_.str() + "," + b_.str() + ")"; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend std::strong_ordering operator<=>(const Edge& x, const Edge& y) {
    if (auto c = x.a_ <=> y.a_; c != 0) return c;
    return x.b_ <=> y.b_;
  }

 private:
  Vertex a_;
  Vertex b_;
};

/// Quadrilateral formed by the two triangles on a diagonal (a, c).
/// Vertices (a, b, c, d) are in counterclockwise order with a = e.a().
struct Quad {
  Vertex a, b, c, d;
  Edge diagonal() const { return Edge(a, c); }
  std::array<Vertex, 4> vertices() const { return {a, b, c, d}; }
  /// Boundary edges (a,b), (b,c), (c,d), (d,a).
  std::array<Edge, 4> sides() const;
};

struct IntegerMobius {
  Integer a = 1, b = 0, c = 0, d = 1;

  Vertex operator()(const Vertex& v) const;
  Complex operator()(Complex z) const;
  IntegerMobius inverse() const { return {d, -b, -c, a}; }
  IntegerMobius operator*(const IntegerMobius& o) const;
  Integer determinant() const { return a * d - b * c; }
  /// Projective equality (up to sign).
  friend bool operator==(const IntegerMobius& x, const IntegerMobius& y);
};

bool is_edge(const Vertex& x, const Vertex& y);

/// Higher-generation vertex of the triangle on e (for the root edge, 1).
Vertex mediant(const Vertex& x, const Vertex& y);
inline Vertex mediant(const Edge& e) { return mediant(e.a(), e.b()); }

/// The other apex (p_a - p_b)/(q_a - q_b), with infinity as 1/0.
Vertex comediant(const Edge& e);

Quad farey_quad(const Edge& e);

/// Number of generations needed for v to appear (0 for 0 and infinity).
unsigned vertex_generation(const Vertex& v);
/// Dual-tree distance from the root edge (0, infinity).
unsigned generation(const Edge& e);

/// The children edges (a, m), (m, b) of a non-root edge; for the root,
/// the four edges of its quad.
std::vector<Edge> children(const Edge& e);

/// All edges of generation <= max_gen, ordered by generation and then by key.
std::vector<Edge> edges_up_to(unsigned max_gen);
/// Edges of generation exactly n, ordered by key.
std::vector<Edge> edges_of_generation(unsigned n);

/// Which parent of v anchors fan index 0. The default is the parent of
/// smaller extended-real value; the alternative exists to test that nothing
/// downstream depends on the choice.
enum class FanBase { kSmallerParent, kLargerParent };

/// The two endpoints of the edge whose child is v (v of generation >= 1).
std::array<Vertex, 2> parents(const Vertex& v);

/// The other endpoint of fan index 0 at v.
Vertex fan_base_partner(const Vertex& v, FanBase base = FanBase::kSmallerParent);

/// A in PSL(2,Z) with A(v) = infinity and A(fan edge 0) = (0, infinity).
IntegerMobius to_infinity(const Vertex& v, FanBase base = FanBase::kSmallerParent);

/// Fan edges e_lo..e_hi at v; e_n is mapped to (n, infinity) by to_infinity(v).
std::vector<Edge> fan(const Vertex& v, long long lo, long long hi,
                      FanBase base = FanBase::kSmallerParent);

/// Index of e in fan(v).
Integer fan_index(const Vertex& v, const Edge& e, FanBase base = FanBase::kSmallerParent);

/// Counterclockwise neighbours of e in fan(v): indices -1 and +1 relative to e.
std::array<Edge, 2> fan_neighbours(const Vertex& v, const Edge& e);

/// Cross-ratio (b-a)(d-c)/((c-b)(d-a)); infinity handled as a limit.
/// Throws Error(kDegeneratePoints) when two points coincide.
double cross_ratio(const Vertex& a, const Vertex& b, const Vertex& c, const Vertex& d);
/// Same on the real line, with +-inf allowed.
double cross_ratio(double a, double b, double c, double d);
/// Same on the Riemann sphere; points with infinite real part act as infinity.
Complex cross_ratio(Complex a, Complex b, Complex c, Complex d);

/// Ford circle diameter 1/q^2, or the horocycle height 1 at infinity.
double ford_diameter(const Vertex& v);

/// Length of the shorter disk arc between the endpoints (the arc through
/// the child); pi for the root.
double farey_arclength(const Edge& e);

/// z -> -i(z+1)/(z-1), from the disk to the upper half-plane. z = 1 maps to a
/// value with infinite real part.
Complex cayley(Complex z);
/// w -> (w-i)/(w+i); infinite input maps to 1.
Complex cayley_inv(Complex w);

}  // namespace fwp
