/// \file reports.hpp
/// Whole-task entry points behind the command-line tool and the C API. Each
/// returns a JSON (or CSV/SVG) document and a pass flag.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fwp/coords.hpp"
#include "fwp/develop.hpp"

namespace fwp {

struct Report {
  std::string text;
  bool pass = true;
};

/// A circle homeomorphism from any supported source.
class Homeo {
 public:
  /// Diamond input and finite balanced shear input are developed exactly;
  /// other shear input is developed vertex by vertex up to max_gen.
  static Homeo from_coords(const CoordFn& f, unsigned max_gen);
  static Homeo from_samples(const std::string& csv);
  /// "perturbed:EPS" for perturbed_rotation(EPS). Throws Error(kParse).
  static Homeo builtin(const std::string& spec);

  /// "developed", "vertices", "samples" or "analytic".
  const char* kind() const;
  /// Image of a vertex on the unit circle. Throws Error(kInvalidArgument)
  /// for vertices beyond the generation of a vertex-developed map.
  Complex operator()(const Vertex& v) const;
  /// The developed map, if there is one.
  const PiecewiseMobiusHomeo* developed() const { return std::get_if<PiecewiseMobiusHomeo>(&rep_); }
  const VertexImageMap* vertices() const { return std::get_if<VertexImageMap>(&rep_); }
  const AngleHomeo* analytic() const { return std::get_if<AngleHomeo>(&rep_); }
  /// Whether diamond shears can be read off (the map is C^1 at the vertices).
  bool has_diamond() const { return !samples_ && !vertices(); }

 private:
  std::variant<PiecewiseMobiusHomeo, VertexImageMap, AngleHomeo> rep_;
  bool samples_ = false;
};

/// Psi(Phi(theta)) = theta for diamond input, Phi(Psi(s)) = s on all edges of
/// generation <= max_gen for shear input, both in exact arithmetic. Balanced
/// shear input is also checked in the other direction. The same identities
/// are evaluated in floating point and must hold within tol.
Report roundtrip_report(const CoordFn& f, unsigned max_gen, double tol = 1e-9);

/// angle_in,angle_out samples on a uniform grid of n angles, or
/// vertex,angle_out rows for a vertex-developed map.
std::string develop_csv(const Homeo& h, size_t n);

/// Shear (and, when available, diamond) values on edges of generation
/// <= max_gen: {"maxGen", "source", "shear": coords, "diamond": coords|null}.
Report extract_report(const Homeo& h, unsigned max_gen);

/// {"metric", "symplectic", "symplectic_direct", "method", "tolerances"}.
/// The metric is taken at the base homeomorphism developed from base; the
/// direct symplectic value is computed on the deformed quads and its
/// distance from the combinatorial value is reported, not asserted.
Report wp_report(const CoordFn& theta1, const CoordFn& theta2, const CoordFn& base);

/// estimate_json of the extension; fails unless sup |mu| < 1.
Report qc_report(const CoordFn& f, unsigned max_gen);

struct SvgOptions {
  unsigned max_gen = 8;
  bool dual = false;
  bool ford = false;
  int size = 800;
};

/// The tessellation (or its image under h) in the disk, as SVG 1.1. Ford
/// circles need a developed homeomorphism.
std::string render_svg(const SvgOptions& opt, const Homeo* h = nullptr);

/// Names accepted by run_verify, in report order, without "all".
const std::vector<std::string>& verify_suites();

/// Runs one suite or "all" in parallel and reports
/// {"suites": [{"name", "pass", "checks": [...]}], "pass"}. Throws
/// Error(kInvalidArgument) for an unknown suite.
Report run_verify(const std::string& suite, std::uint64_t seed);

}  // namespace fwp
