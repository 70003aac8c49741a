#include "fwp/reports.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "fwp/coords_io.hpp"
#include "fwp/error.hpp"
#include "fwp/qcext.hpp"
#include "fwp/wpgeom.hpp"

namespace fwp {

using nlohmann::json;

namespace {

double balance_tol(const CoordFn& s) {
  double scale = 1.0;
  for (const auto& [e, x] : s.entries()) scale += std::abs(x);
  return 1e-12 * scale;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json check(const std::string& name, bool pass, json detail) {
  return {{"name", name}, {"pass", pass}, {"detail", std::move(detail)}};
}

// Diamond input as is; finite balanced shear input through Psi.
CoordFn as_diamond(const CoordFn& f) {
  if (f.kind() == CoordKind::kDiamond) return f;
  if (!check_finite_balanced(f, balance_tol(f)))
    throw Error(ErrorCode::kNotInP, "shear input must be finite and balanced to have diamond coordinates");
  return psi(f);
}

}  // namespace

Homeo Homeo::from_coords(const CoordFn& f, unsigned max_gen) {
  Homeo out;
  if (f.kind() == CoordKind::kDiamond) {
    out.rep_ = develop_diamond(f);
  } else if (check_finite_balanced(f, balance_tol(f))) {
    out.rep_ = develop_diamond(psi(f));
  } else {
    // One generation more than asked, so that the quads of all edges up to
    // max_gen are covered.
    out.rep_ = develop_vertices(f, max_gen + 1);
  }
  return out;
}

Homeo Homeo::from_samples(const std::string& csv) {
  Homeo out;
  out.rep_ = homeo_from_samples(parse_samples_csv(csv));
  out.samples_ = true;
  return out;
}

Homeo Homeo::builtin(const std::string& spec) {
  const std::string prefix = "perturbed:";
  if (spec.rfind(prefix, 0) != 0) throw Error(ErrorCode::kParse, "unknown homeomorphism '" + spec + "'");
  double eps = 0.0;
  const char* first = spec.data() + prefix.size();
  const char* last = spec.data() + spec.size();
  auto res = std::from_chars(first, last, eps);
  if (res.ec != std::errc() || res.ptr != last) throw Error(ErrorCode::kParse, "bad parameter in '" + spec + "'");
  if (!(std::abs(eps) < 1.0)) throw Error(ErrorCode::kInvalidArgument, "perturbed rotation needs |eps| < 1");
  Homeo out;
  out.rep_ = perturbed_rotation(eps);
  return out;
}

const char* Homeo::kind() const {
  if (developed()) return "developed";
  if (vertices()) return "vertices";
  return samples_ ? "samples" : "analytic";
}

Complex Homeo::operator()(const Vertex& v) const {
  if (const auto* h = developed()) return (*h)(v);
  if (const auto* h = vertices()) return (*h)(v);
  return std::polar(1.0, analytic()->lift(v.disk_angle()));
}

Report roundtrip_report(const CoordFn& f, unsigned max_gen, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "roundtrip tolerance must be positive");
  const ExactCoordFn x = to_exact(f);
  json checks = json::array();
  bool pass = true;
  if (f.kind() == CoordKind::kDiamond) {
    ExactCoordFn s = phi(x);
    bool balanced = check_finite_balanced(s);
    bool same = psi(s).entries() == x.entries();
    checks.push_back(check("phi_is_balanced", balanced, {{"edges", s.size()}}));
    checks.push_back(check("psi_phi_identity", same, {{"edges", x.size()}}));
    double err = 0.0;
    const CoordFn back = psi(phi(f));
    for (const auto& [e, v] : f.entries()) err = std::max(err, std::abs(back(e) - v));
    for (const auto& [e, v] : back.entries()) err = std::max(err, std::abs(f(e) - v));
    checks.push_back(check("psi_phi_double", err <= tol, {{"max_error", err}, {"tol", tol}}));
    pass = balanced && same && err <= tol;
  } else {
    PsiFn<Rational> ps(x);
    const EdgeFunction<Rational> theta = ps.as_function();
    size_t checked = 0, mismatches = 0;
    for (const Edge& e : edges_up_to(max_gen)) {
      ++checked;
      if (phi_at(theta, e) != x(e)) ++mismatches;
    }
    checks.push_back(check("phi_psi_identity", mismatches == 0,
                           {{"edges", checked}, {"mismatches", mismatches}, {"maxGen", max_gen}}));
    PsiFn<double> pd(f);
    const EdgeFunction<double> theta_d = pd.as_function();
    double err = 0.0;
    for (const Edge& e : edges_up_to(max_gen)) err = std::max(err, std::abs(phi_at(theta_d, e) - f(e)));
    checks.push_back(check("phi_psi_double", err <= tol, {{"max_error", err}, {"tol", tol}}));
    pass = mismatches == 0 && err <= tol;
    if (check_finite_balanced(x)) {
      ExactCoordFn theta_fin = ps.materialize();
      ExactCoordFn again = phi(theta_fin);
      bool same = again.entries() == x.entries();
      checks.push_back(check("phi_psi_identity_full", same, {{"diamond_edges", theta_fin.size()}}));
      pass = pass && same;
    }
  }
  json doc{{"kind", kind_name(f.kind())}, {"arithmetic", "exact"}, {"checks", std::move(checks)}, {"pass", pass}};
  return {dump(doc), pass};
}

std::string develop_csv(const Homeo& h, size_t n) {
  if (const auto* dev = h.developed()) return samples_csv(sample_homeo(*dev, n));
  if (const auto* vm = h.vertices()) {
    std::string out = "vertex,angle_out\n";
    char buf[64];
    for (const auto& [v, w] : vm->images) {
      std::snprintf(buf, sizeof buf, ",%.17g\n", circle_angle(w));
      out += v.str() + buf;
    }
    return out;
  }
  std::vector<std::pair<double, double>> samples;
  samples.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    double in = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    samples.emplace_back(in, h.analytic()->lift(in));
  }
  return samples_csv(samples);
}

Report extract_report(const Homeo& h, unsigned max_gen) {
  const std::vector<Edge> edges = edges_up_to(max_gen);
  CoordFn shear(CoordKind::kShear);
  for (const Edge& e : edges) {
    if (const auto* dev = h.developed()) shear.set(e, extract_shear(*dev, e));
    else if (const auto* vm = h.vertices()) shear.set(e, extract_shear(*vm, e));
    else shear.set(e, extract_shear(*h.analytic(), e));
  }
  json diamond = nullptr;
  if (h.has_diamond()) {
    CoordFn theta(CoordKind::kDiamond);
    for (const Edge& e : edges) {
      if (const auto* dev = h.developed()) theta.set(e, extract_diamond(*dev, e));
      else theta.set(e, extract_diamond(*h.analytic(), e));
    }
    diamond = json::parse(coords_to_json(theta));
  }
  json doc{{"maxGen", max_gen},
           {"source", h.kind()},
           {"shear", json::parse(coords_to_json(shear))},
           {"diamond", std::move(diamond)}};
  return {dump(doc), true};
}

Report wp_report(const CoordFn& theta1_in, const CoordFn& theta2_in, const CoordFn& base_in) {
  const CoordFn theta1 = as_diamond(theta1_in);
  const CoordFn theta2 = as_diamond(theta2_in);
  const CoordFn base = as_diamond(base_in);
  const double metric = full_metric(theta1, theta2, base);
  const double omega = static_cast<double>(symplectic(to_exact(theta1), to_exact(theta2)));

  const PiecewiseMobiusHomeo h = develop_diamond(base);
  auto image = [&h](const Edge& e) {
    const Quad q = farey_quad(e);
    return QuadOnCircle({h(q.a), h(q.b), h(q.c), h(q.d)});
  };
  double direct = 0.0;
  for (const auto& [e1, x1] : theta1.entries()) {
    const QuadOnCircle q1 = image(e1);
    for (const auto& [e2, x2] : theta2.entries()) direct += x1 * x2 * symplectic_direct(q1, image(e2));
  }
  const double agreement_tol = 1e-5;
  const double gap = std::abs(direct - omega);
  // Away from the identity the agreement is not known, so it is only reported.
  const bool asserted = base.empty();
  const bool pass = std::isfinite(metric) && (!asserted || gap <= agreement_tol);
  json doc{{"metric", metric},
           {"symplectic", omega},
           {"symplectic_direct", direct},
           {"symplectic_discrepancy", gap},
           {"discrepancy_asserted", asserted},
           {"method", "closed_form"},
           {"tolerances", {{"symplectic_agreement", agreement_tol}}},
           {"pass", pass}};
  return {dump(doc), pass};
}

Report qc_report(const CoordFn& f, unsigned max_gen) {
  const CoordFn s = f.kind() == CoordKind::kDiamond ? phi(f) : f;
  BeltramiEstimate est = extension_l2(s, max_gen);
  return {estimate_json(est), est.sup_mu < 1.0 && std::isfinite(est.l2_hyp)};
}

}  // namespace fwp
