/// \file develop.hpp
/// Circle homeomorphisms from coordinates and coordinates from circle
/// homeomorphisms, in the disk model.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fwp/coords.hpp"
#include "fwp/farey.hpp"
#include "fwp/mobius.hpp"

namespace fwp {

/// Which one-sided limit to take at a breakpoint. kPlus is the arc that
/// starts at the point and runs counterclockwise.
enum class Side { kMinus, kPlus };

struct Breakpoint {
  double angle;                 // in (-2pi, 0]
  std::optional<Vertex> exact;  // preimage, when known exactly
  Complex point() const { return std::polar(1.0, angle); }
};

/// A circle homeomorphism that is a Moebius map on each arc between
/// consecutive counterclockwise breakpoints. Arc i runs from breakpoint i to
/// breakpoint i+1, the last arc wrapping around. Without breakpoints the map
/// is a single global Moebius transformation.
class PiecewiseMobiusHomeo {
 public:
  PiecewiseMobiusHomeo() : maps_{Mobius()} {}
  explicit PiecewiseMobiusHomeo(const Mobius& global) : maps_{global} {}
  /// breakpoints sorted by angle, one map per arc.
  PiecewiseMobiusHomeo(std::vector<Breakpoint> breakpoints, std::vector<Mobius> maps);

  const std::vector<Breakpoint>& breakpoints() const { return bps_; }
  const std::vector<Mobius>& maps() const { return maps_; }
  /// True when every breakpoint has an exact preimage.
  bool exact() const { return exact_; }

  size_t arc_at(double angle, Side side = Side::kPlus) const;
  size_t arc_at(const Vertex& v, Side side = Side::kPlus) const;

  Complex operator()(Complex z) const;
  Complex operator()(const Vertex& v) const;
  /// Derivative of the induced map of angles.
  double derivative(Complex z, Side side = Side::kPlus) const;
  double derivative(const Vertex& v, Side side) const;

  PiecewiseMobiusHomeo post_compose(const Mobius& m) const;

  /// Largest jump |M_i(v) - M_{i-1}(v)| at a breakpoint.
  double max_discontinuity() const;
  /// Largest |log h'(v+) - log h'(v-)| at a breakpoint.
  double max_c1_defect() const;

  /// [{"vertex": "p/q" or angle, "alpha": [re, im], "beta": [re, im]}, ...]
  std::string breakpoints_json() const;

 private:
  std::vector<Breakpoint> bps_;
  std::vector<Mobius> maps_;
  bool exact_ = true;
};

/// Identity on the arc from y to x, the shear of amount t on the arc from x
/// to y (both counterclockwise).
PiecewiseMobiusHomeo single_shear_homeo(Complex x, Complex y, double t);

/// The diamond shear on the counterclockwise quad (q0, q1, q2, q3) with
/// diagonal (q0, q2). Throws Error(kDegenerateQuad) unless the vertices are
/// distinct and counterclockwise.
PiecewiseMobiusHomeo single_diamond_homeo(const std::array<Complex, 4>& q, double t);

/// Post-composes the Moebius map fixing h(1) -> 1, h(i) -> i, h(-1) -> -1.
PiecewiseMobiusHomeo normalize(const PiecewiseMobiusHomeo& h);

/// Composes diamond shears in the given order onto the Farey tessellation,
/// then normalizes.
PiecewiseMobiusHomeo develop_diamond_sequence(const std::vector<std::pair<Edge, double>>& steps);

/// Support edges in increasing generation, ties by key.
PiecewiseMobiusHomeo develop_diamond(const CoordFn& theta);

/// Images of all vertices of generation <= max_gen, normalized so the base
/// triangle (infinity, -1, 0) stays at (1, i, -1).
struct VertexImageMap {
  std::map<Vertex, Complex> images;
  unsigned max_gen = 0;
  Complex operator()(const Vertex& v) const;
};

/// Solves one cross-ratio equation per edge over the dual tree. Throws
/// Error(kMonotonicityViolation) if the images fail to be strictly
/// counterclockwise.
VertexImageMap develop_vertices(const EdgeFunction<double>& s, unsigned max_gen);
inline VertexImageMap develop_vertices(const CoordFn& s, unsigned max_gen) {
  return develop_vertices([&s](const Edge& e) { return s(e); }, max_gen);
}

/// A circle homeomorphism given by a lift of angles, F(x + 2pi) = F(x) + 2pi.
/// Without dlift, derivatives come from a Richardson-extrapolated central
/// difference.
struct AngleHomeo {
  std::function<double(double)> lift;
  std::function<double(double)> dlift;
  double derivative(double x) const;
};

/// The diffeomorphism with lift x + eps sin x; its derivative is 1 + eps cos x.
AngleHomeo perturbed_rotation(double eps);

/// Log cross-ratio of the image of the Farey quad of e. Throws
/// Error(kDegenerateImage) if image points are closer than 1e-13.
double extract_shear(const PiecewiseMobiusHomeo& h, const Edge& e);
double extract_shear(const AngleHomeo& h, const Edge& e);
double extract_shear(const VertexImageMap& h, const Edge& e);
/// Upper half-plane version for maps of the real line fixing infinity.
double extract_shear_line(const std::function<double(double)>& phi, const Edge& e);

/// (1/2) log h'(a) h'(b) - log |h(a) - h(b)| / |a - b| in the disk. Throws
/// Error(kNotDifferentiable) at a corner (one-sided log-derivatives
/// differing by more than 1e-9).
double extract_diamond(const PiecewiseMobiusHomeo& h, const Edge& e);
double extract_diamond(const AngleHomeo& h, const Edge& e);

/// Horocycle sizes of the fixed section in the upper half-plane picture:
/// diameter |phi'(p/q)|/q^2 at phi(p/q), height 1/phi'(infinity) at infinity.
struct Decoration {
  std::map<Vertex, double> size;
  std::map<Vertex, double> position;  // phi(v), +inf for infinity
};

/// h is normalized first. Vertices of generation <= max_gen.
Decoration decoration(const PiecewiseMobiusHomeo& h, unsigned max_gen);

/// Log lambda-length of the decorated edge, from horocycle sizes.
double log_lambda(const PiecewiseMobiusHomeo& h, const Edge& e);

/// Samples (angle_in, angle_out) on a uniform grid of n angles in [0, 2pi);
/// angle_out is continuous along the grid.
std::vector<std::pair<double, double>> sample_homeo(const PiecewiseMobiusHomeo& h, size_t n);
std::string samples_csv(const std::vector<std::pair<double, double>>& samples);
/// Piecewise-linear lift through CSV samples.
AngleHomeo homeo_from_samples(const std::vector<std::pair<double, double>>& samples);
std::vector<std::pair<double, double>> parse_samples_csv(const std::string& text);

}  // namespace fwp
