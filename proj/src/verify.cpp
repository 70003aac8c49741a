#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <json.hpp>

#include "fwp/error.hpp"
#include "fwp/qcext.hpp"
#include "fwp/reports.hpp"
#include "fwp/wpgeom.hpp"
#include "kahan.hpp"

namespace fwp {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}

  void near(const std::string& name, double measured, double expected, double tol) {
    bool ok = std::abs(measured - expected) <= tol;
    add({{"name", name}, {"measured", measured}, {"expected", expected}, {"tol", tol}, {"pass", ok}}, ok);
  }
  void at_most(const std::string& name, double measured, double bound) {
    bool ok = measured <= bound;
    add({{"name", name}, {"measured", measured}, {"bound", bound}, {"pass", ok}}, ok);
  }
  void within(const std::string& name, double lo_measured, double hi_measured, double lo, double hi) {
    bool ok = lo_measured >= lo && hi_measured <= hi;
    add({{"name", name}, {"measured", {lo_measured, hi_measured}}, {"expected", {lo, hi}}, {"pass", ok}}, ok);
  }
  void holds(const std::string& name, bool ok, json detail = json::object()) {
    add({{"name", name}, {"detail", std::move(detail)}, {"pass", ok}}, ok);
  }
  bool pass() const { return pass_; }
  json to_json() const { return {{"name", name_}, {"pass", pass_}, {"checks", checks_}}; }

 private:
  void add(json c, bool ok) {
    checks_.push_back(std::move(c));
    pass_ = pass_ && ok;
  }
  std::string name_;
  json checks_ = json::array();
  bool pass_ = true;
};

CoordFn random_diamond(std::mt19937_64& rng, size_t max_edges, unsigned max_gen) {
  static const std::vector<Edge> pool = edges_up_to(8);
  const size_t limit = max_gen >= 8 ? pool.size() : edges_up_to(max_gen).size();
  std::uniform_int_distribution<size_t> count(1, max_edges), pick(0, limit - 1);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  CoordFn out(CoordKind::kDiamond);
  const size_t n = count(rng);
  while (out.size() < n) out.set(pool[pick(rng)], value(rng));
  return out;
}

CoordFn random_shear(std::mt19937_64& rng, size_t max_edges, unsigned max_gen) {
  const CoordFn theta = random_diamond(rng, max_edges, max_gen);
  CoordFn out(CoordKind::kShear);
  for (const auto& [e, x] : theta.entries()) out.set(e, x);
  return out;
}

CoordFn delta(const Edge& e, double t, CoordKind kind = CoordKind::kDiamond) {
  CoordFn out(kind);
  out.set(e, t);
  return out;
}

Complex random_unit(std::mt19937_64& rng) {
  return std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng));
}

QuadOnCircle random_quad(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  std::array<double, 4> t{u(rng), u(rng), u(rng), u(rng)};
  std::sort(t.begin(), t.end());
  for (size_t j = 0; j + 1 < 4; ++j) {
    if (t[j + 1] - t[j] < 1e-3) t[j + 1] = t[j] + 1e-3;
  }
  return QuadOnCircle({std::polar(1.0, t[0]), std::polar(1.0, t[1]), std::polar(1.0, t[2]), std::polar(1.0, t[3])});
}

Mobius random_disk_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r(0.0, 0.8);
  Complex a = std::polar(r(rng), std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng));
  Complex rot = random_unit(rng);
  // rot (z - a) / (1 - conj(a) z)
  return Mobius(rot, -rot * a, -std::conj(a), 1.0);
}

unsigned support_generation(const CoordFn& f) {
  unsigned g = 0;
  for (const auto& [e, x] : f.entries()) g = std::max(g, generation(e));
  return g;
}

json suite_farey(std::uint64_t) {
  Suite s("farey");
  double worst = 0.0;
  bool counts = true;
  for (unsigned n = 1; n <= 12; ++n) {
    const std::vector<Edge> gen = edges_of_generation(n);
    counts = counts && gen.size() == (size_t{1} << (n + 1));
    detail::KahanSum sum;
    for (const Edge& e : gen) sum += farey_arclength(e);
    worst = std::max(worst, std::abs(sum.value() - 2.0 * kPi));
  }
  s.near("generation_arclength_sums_1_to_12", worst, 0.0, 1e-9);
  s.near("generation_0_arclength", farey_arclength(Edge::root()), kPi, 1e-15);
  s.holds("generation_edge_counts", counts);

  std::vector<double> partial;
  detail::KahanSum l2;
  for (unsigned n = 0; n <= 14; ++n) {
    for (const Edge& e : edges_of_generation(n)) l2 += std::pow(farey_arclength(e), 2);
    partial.push_back(l2.value());
  }
  double worst_ratio = 0.0;
  json ratios = json::array();
  for (unsigned n = 7; n <= 14; ++n) {
    double r = (partial[n] - partial[n - 1]) / (partial[n - 1] - partial[n - 2]);
    ratios.push_back(r);
    worst_ratio = std::max(worst_ratio, r);
  }
  s.at_most("l2_increment_ratio_beyond_6", worst_ratio, 1.0);
  s.holds("l2_increment_ratios", true, {{"ratios", ratios}, {"partial_sum_14", partial.back()}});

  double tangency = 0.0;
  for (const Edge& e : edges_up_to(8)) {
    if (e.b().is_infinite()) {
      tangency = std::max(tangency, std::abs(ford_diameter(e.a()) - ford_diameter(e.b())));
      continue;
    }
    const double ra = 0.5 * ford_diameter(e.a()), rb = 0.5 * ford_diameter(e.b());
    const double dx = e.b().to_double() - e.a().to_double(), dy = ra - rb;
    tangency = std::max(tangency, std::abs(std::hypot(dx, dy) - (ra + rb)) / (ra + rb));
  }
  s.near("ford_circles_tangent_along_edges", tangency, 0.0, 1e-12);
  return s.to_json();
}

json suite_coords(std::uint64_t seed) {
  Suite s("coords");
  std::mt19937_64 rng(seed);
  size_t bad = 0;
  for (int k = 0; k < 200; ++k) {
    ExactCoordFn theta = to_exact(random_diamond(rng, 20, 6));
    if (psi(phi(theta)).entries() != theta.entries()) ++bad;
  }
  s.holds("psi_phi_identity_exact", bad == 0, {{"samples", 200}, {"mismatches", bad}});

  bad = 0;
  size_t checked = 0;
  for (int k = 0; k < 5; ++k) {
    ExactCoordFn sh = to_exact(random_shear(rng, 8, 4));
    PsiFn<Rational> ps(sh);
    const EdgeFunction<Rational> f = ps.as_function();
    for (const Edge& e : edges_up_to(6)) {
      ++checked;
      if (phi_at(f, e) != sh(e)) ++bad;
    }
  }
  s.holds("phi_psi_edgewise_exact", bad == 0, {{"edges", checked}, {"mismatches", bad}});

  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    auto [lhs, rhs] = h_identity_check(random_diamond(rng, 10, 5));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  s.near("h_identity", worst, 0.0, 1e-12);

  const ExactCoordFn sh = to_exact(random_shear(rng, 10, 4));
  PsiFn<Rational> a(sh, FanBase::kSmallerParent), b(sh, FanBase::kLargerParent);
  bad = 0;
  for (const Edge& e : edges_up_to(6)) bad += a(e) != b(e);
  s.holds("psi_fan_base_independent", bad == 0, {{"mismatches", bad}});

  const CoordFn d0 = delta(Edge::root(), 1.0);
  s.holds("phi_of_diamond_is_balanced", check_finite_balanced(phi(d0)));
  s.holds("single_shear_is_unbalanced", !check_finite_balanced(delta(Edge::root(), 1.0, CoordKind::kShear)));
  s.near("phi_delta_l2", l2_norm(phi(d0)), 4.0, 0.0);
  return s.to_json();
}

json suite_sigma(std::uint64_t seed) {
  Suite s("sigma");
  const double log2 = std::log(2.0);
  s.near("sigma_1_1", sigma(1.0, 1.0).real(), 0.25, 0.0);
  s.near("sigma_1_1_imag", sigma(1.0, 1.0).imag(), 0.0, 0.0);
  s.near("sigma_1_m1", std::abs(sigma(1.0, -1.0) - (1.25 - 2.0 * log2)), 0.0, 1e-12);
  const Complex si1((3.0 - kPi) / 4.0, -(log2 - 1.0) / 2.0);
  s.near("sigma_i_1", std::abs(sigma(kI, 1.0) - si1), 0.0, 1e-10);
  const size_t n = 100000;
  const double bound = sigma_tail_bound(n);
  std::mt19937_64 rng(seed);
  double worst = std::abs(sigma_series(kI, 1.0, n) - sigma(kI, 1.0));
  for (int k = 0; k < 20; ++k) {
    Complex a = random_unit(rng), b = random_unit(rng);
    worst = std::max(worst, std::abs(sigma_series(a, b, n) - sigma(a, b)));
  }
  s.at_most("series_vs_closed_form_n_1e5", worst, bound + 1e-14);
  return s.to_json();
}

json suite_wp(std::uint64_t seed) {
  Suite s("wp");
  std::mt19937_64 rng(seed);
  const double norm = 8.0 * std::log(2.0) / kPi;
  const QuadOnCircle standard({1.0, kI, -1.0, -kI});
  s.near("standard_quad_norm", metric_pairing(standard, standard), norm, 1e-12);
  const CoordFn d0 = delta(Edge::root(), 1.0);
  s.near("full_metric_unit_diamond", full_metric(d0, d0), norm, 1e-12);
  s.near("full_metric_zero", full_metric(d0, CoordFn(CoordKind::kDiamond)), 0.0, 0.0);

  double asym = 0.0, moved = 0.0;
  for (int k = 0; k < 20; ++k) {
    QuadOnCircle q1 = random_quad(rng), q2 = random_quad(rng);
    double g = metric_pairing(q1, q2);
    asym = std::max(asym, std::abs(g - metric_pairing(q2, q1)));
    Mobius m = random_disk_map(rng);
    moved = std::max(moved, std::abs(g - metric_pairing(q1.transformed(m), q2.transformed(m))));
  }
  s.near("metric_symmetry", asym, 0.0, 1e-12);
  s.near("metric_moebius_invariance", moved, 0.0, 1e-10);

  std::vector<Edge> pool = edges_up_to(3);
  std::shuffle(pool.begin(), pool.end(), rng);
  Eigen::Matrix<double, 5, 5> gram;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) gram(i, j) = metric_pairing(QuadOnCircle::farey(pool[i]), QuadOnCircle::farey(pool[j]));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 5, 5>> eig(gram);
  s.holds("gram_positive_definite", eig.eigenvalues().minCoeff() > 0.0, {{"min_eigenvalue", eig.eigenvalues().minCoeff()}});

  double single = 0.0;
  for (Complex z : {Complex(0.3, -0.7), Complex(-2.0, -0.1), Complex(5.0, -3.0)}) {
    Complex want = kI / (2.0 * kPi) / (z * z);
    single = std::max(single, std::abs(bers_phi({{0.0, INFINITY, 1.0}}, z) - want) / std::abs(want));
  }
  s.near("bers_single_edge_at_infinity", single, 0.0, 1e-14);

  double simple = 0.0;
  for (int k = 0; k < 10; ++k) {
    auto c = random_quad(rng).half_plane();
    QuadDifferential phi = diamond_differential(c);
    Complex z(std::normal_distribution<double>()(rng), -std::exp(std::normal_distribution<double>()(rng)));
    simple = std::max(simple, std::abs(bers_phi_diamond(c, z) - phi(z)) / std::abs(phi(z)));
  }
  s.near("bers_partial_fractions", simple, 0.0, 1e-9);

  const std::array<double, 4> finite{-0.5, 0.5, 1.0, 3.0};
  auto z4 = [&finite](double r) { return std::abs(std::pow(Complex(0.0, -r), 4) * bers_phi_diamond(finite, Complex(0.0, -r))); };
  s.near("bers_decay_z4", std::abs(z4(1000.0) / z4(100.0) - 1.0), 0.0, 1e-2);

  QuadDifferential phi = diamond_differential(finite);
  auto ratio = [&phi](double y) { return std::abs(harmonic_beltrami(phi, Complex(0.7, y))) / (y * y); };
  s.near("beltrami_vanishes_like_y2", std::abs(ratio(1e-4) / ratio(1e-3) - 1.0), 0.0, 1e-2);

  s.near("zygmund_interval", zygmund_field(0.0, 1.0)(0.5), 0.25, 0.0);
  s.near("zygmund_ray", zygmund_field(1.0, INFINITY)(3.0), 2.0, 0.0);
  s.near("zygmund_outside", zygmund_field(0.0, 1.0)(1.5), 0.0, 0.0);
  return s.to_json();
}

json suite_symplectic(std::uint64_t seed) {
  Suite s("symplectic");
  const std::vector<Edge> edges = edges_up_to(4);
  size_t bad = 0, adjacent = 0;
  double direct = 0.0;
  for (const Edge& e1 : edges) {
    const QuadOnCircle q1 = QuadOnCircle::farey(e1);
    for (const Edge& e2 : edges) {
      ExactCoordFn a(CoordKind::kDiamond), b(CoordKind::kDiamond);
      a.set(e1, 1);
      b.set(e2, 1);
      const Rational w = symplectic(a, b);
      // Quads overlap in a triangle exactly when the edges are consecutive
      // in the fan of a common vertex.
      int want = 0;
      for (const Vertex& v : {e1.a(), e1.b()}) {
        if (!e2.has(v) || e1 == e2) continue;
        auto nb = fan_neighbours(v, e1);
        if (nb[1] == e2) want = 1;
        if (nb[0] == e2) want = -1;
      }
      adjacent += want != 0;
      if (w != want) ++bad;
      direct = std::max(direct, std::abs(static_cast<double>(w) - symplectic_direct(q1, QuadOnCircle::farey(e2))));
    }
  }
  s.holds("combinatorial_adjacency_values", bad == 0,
          {{"pairs", edges.size() * edges.size()}, {"adjacent_pairs", adjacent}, {"mismatches", bad}});
  s.near("combinatorial_vs_direct", direct, 0.0, 1e-5);

  const QuadOnCircle q1({1.0, kI, -1.0, -kI});
  double special = 0.0;
  for (double th : {kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
    const QuadOnCircle q2({1.0, std::polar(1.0, th), kI, -1.0});
    special = std::max(special, std::abs(symplectic_direct(q1, q2) + 1.0));
  }
  s.near("special_case_minus_one", special, 0.0, 1e-6);

  std::mt19937_64 rng(seed);
  bool anti = true;
  for (int k = 0; k < 20; ++k) {
    ExactCoordFn a = to_exact(random_diamond(rng, 10, 4)), b = to_exact(random_diamond(rng, 10, 4));
    anti = anti && symplectic(a, b) + symplectic(b, a) == 0 && symplectic(a, a) == 0;
  }
  s.holds("antisymmetric_exact", anti);
  return s.to_json();
}

json suite_develop(std::uint64_t seed) {
  Suite s("develop");
  const double t = 0.5;
  const PiecewiseMobiusHomeo h = develop_diamond(delta(Edge::root(), t));
  double dev = 0.0;
  for (const Vertex& v : {Vertex::infinity(), Vertex(0)}) {
    for (Side side : {Side::kMinus, Side::kPlus}) dev = std::max(dev, std::abs(h.derivative(v, side) - std::exp(t)));
  }
  for (const Vertex& v : {Vertex(1), Vertex(-1)}) {
    for (Side side : {Side::kMinus, Side::kPlus}) dev = std::max(dev, std::abs(h.derivative(v, side) - std::exp(-t)));
  }
  s.near("standard_diamond_derivatives", dev, 0.0, 1e-12);

  const PiecewiseMobiusHomeo sh = single_shear_homeo(-1.0, 1.0, t);
  double one_sided = std::abs(sh.derivative(Complex(-1.0, 0.0), Side::kMinus) - 1.0);
  one_sided = std::max(one_sided, std::abs(sh.derivative(Complex(-1.0, 0.0), Side::kPlus) - std::exp(t)));
  one_sided = std::max(one_sided, std::abs(sh.derivative(Complex(1.0, 0.0), Side::kMinus) - std::exp(-t)));
  one_sided = std::max(one_sided, std::abs(sh.derivative(Complex(1.0, 0.0), Side::kPlus) - 1.0));
  s.near("single_shear_one_sided_derivatives", one_sided, 0.0, 1e-12);

  double shear_err = 0.0;
  for (const Edge& e : edges_up_to(3)) shear_err = std::max(shear_err, std::abs(extract_shear(sh, e) - (e.is_root() ? t : 0.0)));
  s.near("single_shear_extracts_delta", shear_err, 0.0, 1e-12);

  s.near("log_lambda_standard", log_lambda(h, Edge::root()), -t, 1e-12);
  double ford = 0.0;
  Decoration deco = decoration(PiecewiseMobiusHomeo(), 6);
  for (const auto& [v, size] : deco.size) ford = std::max(ford, std::abs(size - ford_diameter(v)) / ford_diameter(v));
  s.near("identity_decoration_is_ford", ford, 0.0, 1e-14);

  double group = 0.0;
  const std::array<Complex, 4> quad{1.0, kI, -1.0, -kI};
  const PiecewiseMobiusHomeo ha = single_diamond_homeo(quad, 0.3), hb = single_diamond_homeo(quad, 0.4),
                             hab = single_diamond_homeo(quad, 0.7);
  for (int k = 0; k < 256; ++k) {
    const Complex z = std::polar(1.0, 2.0 * kPi * k / 256.0);
    group = std::max(group, std::abs(ha(hb(z)) - hab(z)));
  }
  s.near("diamond_group_law", group, 0.0, 1e-10);

  std::mt19937_64 rng(seed);
  double round = 0.0, c1 = 0.0, order = 0.0, vertices = 0.0;
  for (int k = 0; k < 20; ++k) {
    const CoordFn theta = random_diamond(rng, 15, 5);
    const PiecewiseMobiusHomeo hk = develop_diamond(theta);
    for (const Edge& e : edges_up_to(support_generation(theta) + 1))
      round = std::max(round, std::abs(extract_diamond(hk, e) - theta(e)));
    c1 = std::max(c1, hk.max_c1_defect());

    std::vector<std::pair<Edge, double>> steps(theta.entries().begin(), theta.entries().end());
    std::stable_sort(steps.begin(), steps.end(), [](const auto& x, const auto& y) {
      return generation(x.first) < generation(y.first);
    });
    // Reverse the order inside each generation.
    for (auto it = steps.begin(); it != steps.end();) {
      auto end = std::find_if(it, steps.end(), [&](const auto& p) { return generation(p.first) != generation(it->first); });
      std::reverse(it, end);
      it = end;
    }
    const PiecewiseMobiusHomeo hr = develop_diamond_sequence(steps);
    for (int j = 0; j < 256; ++j) {
      const Complex z = std::polar(1.0, 2.0 * kPi * j / 256.0);
      order = std::max(order, std::abs(hk(z) - hr(z)));
    }
    if (k < 5) {
      const VertexImageMap vm = develop_vertices(phi(theta), 8);
      for (const auto& [v, w] : vm.images) vertices = std::max(vertices, std::abs(w - hk(v)));
    }
  }
  s.near("diamond_roundtrip", round, 0.0, 1e-9);
  s.near("c1_defect", c1, 0.0, 1e-10);
  s.near("same_generation_order_independence", order, 0.0, 1e-10);
  s.near("vertex_developing_agrees", vertices, 0.0, 1e-10);
  return s.to_json();
}

json suite_qc(std::uint64_t) {
  Suite s("qc");
  BeltramiEstimate id = extension_l2(CoordFn(CoordKind::kShear), 6);
  s.near("identity_sup", id.sup_mu, 0.0, 0.0);
  s.near("identity_l2", id.l2_hyp, 0.0, 0.0);
  s.near("unit_geodesic_length", StripGeom(1.0, 1.0).ell, std::log(3.0), 1e-15);

  double fd = 0.0;
  for (double rho : {0.5, 1.0, 2.0}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      StripGeom g(rho, lambda);
      for (double x : {-0.4, -0.1, 0.2, 0.45}) {
        const double h = 1e-6;
        double num = (alpha_beta(g, x + h).alpha - alpha_beta(g, x - h).alpha) / (2.0 * h);
        fd = std::max(fd, std::abs(num - alpha_beta(g, x).dalpha));
      }
    }
  }
  s.near("alpha_derivative_finite_difference", fd, 0.0, 1e-7);

  std::map<double, double> l2;
  for (double t : {0.125, 0.25, 0.5, 1.0}) {
    const CoordFn sh = phi(delta(Edge::root(), t));
    double drift = 0.0, sup = 0.0, last = extension_l2(sh, 6).l2_hyp;
    for (unsigned g = 1; g <= 5; ++g) {
      BeltramiEstimate est = extension_l2(sh, g);
      drift = std::max(drift, std::abs(est.l2_hyp - last));
      sup = std::max(sup, est.sup_mu);
    }
    l2[t] = last;
    char name[64];
    std::snprintf(name, sizeof name, "delta_t%g_sup_below_one", t);
    s.at_most(name, sup, 1.0 - 1e-12);
    std::snprintf(name, sizeof name, "delta_t%g_l2_stable", t);
    s.near(name, drift, 0.0, 1e-8);
  }
  const double ratio = (l2[0.25] / 0.0625) / (l2[0.125] / 0.015625);
  s.near("small_t_scaling", ratio, 1.0, 0.1);

  const CoordFn sh = phi(delta(Edge::root(), 0.5));
  QcExtension f(sh);
  double radial = 0.0;
  for (Complex w : {kI, Complex(-1.0, 0.0), std::polar(1.0, 0.4)}) radial = std::max(radial, std::abs(f((1.0 - 1e-8) * w) - f.boundary()(w)));
  s.near("radial_limits_match_boundary", radial, 0.0, 1e-6);
  return s.to_json();
}

json suite_hoelder(std::uint64_t) {
  Suite s("hoelder");
  const AngleHomeo h = perturbed_rotation(0.3);
  std::vector<double> partial;
  detail::KahanSum l2;
  double k_fit = 0.0;
  std::vector<std::pair<double, double>> ratios;
  for (unsigned n = 0; n <= 12; ++n) {
    for (const Edge& e : edges_of_generation(n)) {
      const double th = extract_diamond(h, e);
      l2 += th * th;
      const double r = std::abs(th) / farey_arclength(e);
      if (n <= 6) k_fit = std::max(k_fit, r);
      ratios.emplace_back(r, n);
    }
    partial.push_back(l2.value());
  }
  s.at_most("l2_growth_last_two_generations", (partial[12] - partial[10]) / partial[10], 0.05);
  size_t violations = 0;
  for (const auto& [r, n] : ratios) violations += r > k_fit;
  s.holds("farey_length_bound", violations == 0, {{"K", k_fit}, {"edges", ratios.size()}, {"violations", violations}});
  return s.to_json();
}

double counterexample_map(double x) {
  const double ax = std::abs(x);
  if (ax <= 2.0) return x * std::log(2.0);
  return std::copysign(ax * std::log(ax) - ax + 2.0, x);
}

json suite_counterexample(std::uint64_t) {
  Suite s("counterexample");
  const long long top = 10000;
  std::vector<double> sh(top + 1, 0.0);
  for (long long n = 1; n <= top; ++n) sh[n] = extract_shear_line(counterexample_map, Edge(Vertex(n), Vertex::infinity()));
  double lo = INFINITY, hi = -INFINITY;
  for (long long n = 1000; n <= top; ++n) {
    const double v = sh[n] * static_cast<double>(n) * std::log(static_cast<double>(n));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  s.within("n_log_n_scaling_1e3_1e4", lo, hi, 0.8, 1.2);
  detail::KahanSum sum, sq;
  bool monotone = true;
  double sq_half = 0.0;
  json decades = json::array();
  for (long long n = 1; n <= top; ++n) {
    monotone = monotone && sh[n] >= 0.0;
    sum += sh[n];
    sq += sh[n] * sh[n];
    if (n == top / 2) sq_half = sq.value();
    if (n == 10 || n == 100 || n == 1000 || n == 10000) decades.push_back(sum.value());
  }
  bool growing = true;
  for (size_t k = 1; k < decades.size(); ++k) growing = growing && decades[k].get<double>() > decades[k - 1].get<double>();
  s.holds("partial_sums_increase", monotone && growing, {{"sums_at_decades", decades}});
  s.at_most("square_sums_stabilize", (sq.value() - sq_half) / sq.value(), 0.01);
  return s.to_json();
}

using SuiteFn = json (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"farey", suite_farey},     {"coords", suite_coords},           {"sigma", suite_sigma},
      {"wp", suite_wp},           {"symplectic", suite_symplectic},   {"develop", suite_develop},
      {"qc", suite_qc},           {"hoelder", suite_hoelder},         {"counterexample", suite_counterexample},
  };
  return r;
}

json run_guarded(const std::string& name, SuiteFn fn, std::uint64_t seed) {
  try {
    return fn(seed);
  } catch (const std::exception& e) {
    Suite s(name);
    s.holds("suite_completed", false, {{"error", e.what()}});
    return s.to_json();
  }
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

Report run_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<std::pair<std::string, SuiteFn>> chosen;
  for (const auto& entry : registry()) {
    if (suite == "all" || suite == entry.first) chosen.push_back(entry);
  }
  if (chosen.empty()) throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + suite + "'");
  std::vector<std::future<json>> running;
  for (const auto& [name, fn] : chosen) running.push_back(std::async(std::launch::async, run_guarded, name, fn, seed));
  json suites = json::array();
  bool pass = true;
  for (auto& f : running) {
    json r = f.get();
    pass = pass && r["pass"].get<bool>();
    suites.push_back(std::move(r));
  }
  json doc{{"seed", seed}, {"suites", std::move(suites)}, {"pass", pass}};
  return {doc.dump(2) + "\n", pass};
}

}  // namespace fwp
