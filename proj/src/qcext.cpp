#include "fwp/qcext.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "fwp/error.hpp"
#include "kahan.hpp"

namespace fwp {

namespace {

const double kLog3 = std::log(3.0);

double local_u(double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }

bool trivial(double rho, double lambda) { return rho == 1.0 && lambda == 1.0; }

}  // namespace

double boundary_u(double x) { return local_u(x - std::round(x)); }

StripGeom::StripGeom(double rho_, double lambda_) : rho(rho_), lambda(lambda_) {
  if (!(rho > 0.0) || !(lambda > 0.0)) throw Error(ErrorCode::kInvalidArgument, "strip gaps must be positive");
  r = std::sqrt(lambda * lambda - lambda * rho + rho * rho);
  ell = std::log((rho + lambda + r) / (rho + lambda - r));
  K = (2.0 * r + 2.0 * lambda - rho) / (std::sqrt(3.0) * rho);
}

AlphaBeta alpha_beta(const StripGeom& g, double x) {
  const Complex I(0.0, 1.0);
  const double P = g.r + g.lambda - g.rho;
  const double Q = g.r - g.lambda + g.rho;
  const double kappa = g.ell / (2.0 * kLog3);
  const double w = std::exp(0.5 * g.ell) * std::pow((1.0 + x) / (1.0 - x), kappa);
  const Complex den = I * w + g.K;
  const Complex F = (P * I * w - g.K * Q) / den;
  const double dw = w * g.ell / (kLog3 * (1.0 - x * x));
  const Complex dF = 2.0 * I * g.r * g.K * dw / (den * den);
  return {F.real(), F.imag(), dF.real(), dF.imag()};
}

Complex strip_mu(const StripGeom& g, double x) {
  if (trivial(g.rho, g.lambda)) return {0.0, 0.0};
  AlphaBeta ab = alpha_beta(g, x);
  double du = -x / local_u(x);
  Complex num(ab.dalpha - 1.0, ab.dbeta - du);
  Complex den(ab.dalpha + 1.0, ab.dbeta - du);
  return num / den;
}

double strip_l2(double rho, double lambda) {
  if (trivial(rho, lambda)) return 0.0;
  StripGeom g(rho, lambda);
  auto f = [&g](double x) { return std::norm(strip_mu(g, x)) / local_u(x); };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, -0.5, 0.5, 15, 1e-12, &err);
}

double strip_sup(double rho, double lambda) {
  if (trivial(rho, lambda)) return 0.0;
  StripGeom g(rho, lambda);
  double best = 0.0;
  constexpr int kGrid = 1024;
  for (int k = 0; k <= kGrid; ++k) best = std::max(best, std::abs(strip_mu(g, -0.5 + static_cast<double>(k) / kGrid)));
  return best;
}

double CellAtlas::gap(long long n) const {
  if (n < lo || n >= lo + static_cast<long long>(gaps.size())) return 1.0;
  return gaps[static_cast<size_t>(n - lo)];
}

double CellAtlas::position(long long n) const {
  // phi(n) = n + C(n) - C(0) with C(n) = sum_{k < n} (gap(k) - 1).
  auto excess = [this](long long m) {
    long long top = std::clamp(m, lo, lo + static_cast<long long>(gaps.size()));
    detail::KahanSum acc;
    for (long long k = lo; k < top; ++k) acc += gaps[static_cast<size_t>(k - lo)] - 1.0;
    return acc.value();
  };
  return static_cast<double>(n) + excess(n) - excess(0);
}

CellAtlas cell_atlas(const FanIndex<double>& s, const Vertex& v) {
  CellAtlas out;
  out.v = v;
  auto it = s.fans().find(v);
  if (it == s.fans().end()) return out;
  const auto& fan = it->second;
  double total = fan.prefix.back();
  double scale = 1.0;
  for (double x : fan.value) scale += std::abs(x);
  if (std::abs(total) > 1e-12 * scale)
    throw Error(ErrorCode::kNotInP, "fan of " + v.str() + " is not balanced");
  const Integer limit(1000000000LL);
  if (fan.index.front() < -limit || fan.index.back() > limit)
    throw Error(ErrorCode::kInvalidArgument, "fan window at " + v.str() + " is too wide");
  const long long lo = fan.index.front().convert_to<long long>();
  const long long hi = fan.index.back().convert_to<long long>();
  out.lo = lo;
  out.gaps.reserve(static_cast<size_t>(hi - lo));
  // Walk n from lo to hi - 1 keeping sum_{k > n} s(e_k).
  size_t j = 0;
  double tail = total;
  for (long long n = lo; n < hi; ++n) {
    while (j < fan.index.size() && fan.index[j] <= n) tail = total - fan.prefix[++j];
    out.gaps.push_back(std::exp(-tail));
  }
  out.shift = s.sums(v, Integer(-1)).p_plus;
  return out;
}

double cell_l2(const CellAtlas& atlas, long long window) {
  detail::KahanSum acc;
  for (long long n = -window; n <= window; ++n) acc += strip_l2(atlas.gap(n - 1), atlas.gap(n));
  return acc.value();
}

BeltramiEstimate extension_l2(const CoordFn& s, unsigned max_gen) {
  double scale = 1.0;
  for (const auto& [e, x] : s.entries()) scale += std::abs(x);
  if (!check_finite_balanced(s, 1e-12 * scale))
    throw Error(ErrorCode::kNotInP, "the extension needs a finite balanced shear function");
  FanIndex<double> index(s);
  BeltramiEstimate out;
  out.max_gen = max_gen;
  detail::KahanSum total;
  for (const auto& [v, fan] : index.fans()) {
    if (vertex_generation(v) > max_gen) continue;
    CellAtlas atlas = cell_atlas(index, v);
    detail::KahanSum l2;
    double sup = 0.0;
    const long long end = atlas.lo + static_cast<long long>(atlas.gaps.size());
    for (long long n = atlas.lo; n <= end; ++n) {
      double rho = atlas.gap(n - 1), lambda = atlas.gap(n);
      l2 += strip_l2(rho, lambda);
      sup = std::max(sup, strip_sup(rho, lambda));
    }
    if (l2.value() == 0.0 && sup == 0.0) continue;
    out.cells.push_back({v, l2.value(), sup});
    total += l2.value();
    out.sup_mu = std::max(out.sup_mu, sup);
  }
  out.l2_hyp = total.value();
  return out;
}

std::string estimate_json(const BeltramiEstimate& est) {
  nlohmann::json cells = nlohmann::json::array();
  for (const CellEstimate& c : est.cells) cells.push_back({{"vertex", c.v.str()}, {"l2", c.l2}, {"sup", c.sup}});
  nlohmann::json doc{{"sup_mu", est.sup_mu}, {"l2_hyp", est.l2_hyp}, {"cells", std::move(cells)}, {"maxGen", est.max_gen}};
  return doc.dump(2) + "\n";
}

namespace {

CoordFn checked_balanced(const CoordFn& s) {
  double scale = 1.0;
  for (const auto& [e, x] : s.entries()) scale += std::abs(x);
  if (!check_finite_balanced(s, 1e-12 * scale))
    throw Error(ErrorCode::kNotInP, "the extension needs a finite balanced shear function");
  return s;
}

// Whether w lies on the same closed side of the geodesic (x, y) as the
// boundary point o.
bool same_side(Complex w, const Edge& side, const Vertex& o) {
  const double xa = side.a().to_double();
  if (side.b().is_infinite()) {
    double sw = w.real() - xa, so = o.to_double() - xa;
    return sw * so >= 0.0;
  }
  const double xb = side.b().to_double();
  const double c = 0.5 * (xa + xb), R = 0.5 * (xb - xa);
  const double d = std::norm(w - c) - R * R;
  if (std::abs(d) <= 1e-14 * R * R) return true;
  const bool o_inside = !o.is_infinite() && o > side.a() && o < side.b();
  return (d < 0.0) == o_inside;
}

}  // namespace

QcExtension::QcExtension(const CoordFn& s) : index_(checked_balanced(s)), h_(develop_diamond(psi(s))) {}

QcExtension::Located QcExtension::locate(Complex z) const {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::kInvalidArgument, "extension is evaluated inside the disk");
  const Complex w = cayley(z);
  std::array<Vertex, 3> tri{Vertex(-1), Vertex(0), Vertex::infinity()};
  for (int step = 0;; ++step) {
    if (step > 100000) throw Error(ErrorCode::kInternal, "triangle search did not terminate");
    bool moved = false;
    for (int k = 0; k < 3 && !moved; ++k) {
      const Vertex& o = tri[k];
      Edge side(tri[(k + 1) % 3], tri[(k + 2) % 3]);
      if (same_side(w, side, o)) continue;
      Quad q = farey_quad(side);
      tri[k] = q.b == o ? q.d : q.b;
      moved = true;
    }
    if (!moved) break;
  }
  Located best{tri[0], {}};
  double margin = -std::numeric_limits<double>::infinity();
  for (const Vertex& v : tri) {
    Complex wv = to_infinity(v)(w);
    double m = wv.imag() - boundary_u(wv.real());
    if (m > margin) {
      margin = m;
      best = {v, wv};
    }
  }
  return best;
}

Vertex QcExtension::cell_of(Complex z) const { return locate(z).v; }

const CellAtlas& QcExtension::atlas(const Vertex& v) const {
  std::lock_guard lock(mu_);
  auto it = atlases_.find(v);
  if (it == atlases_.end()) it = atlases_.emplace(v, std::make_unique<CellAtlas>(cell_atlas(index_, v))).first;
  return *it->second;
}

Complex QcExtension::operator()(Complex z) const {
  const Located loc = locate(z);
  const CellAtlas& at = atlas(loc.v);
  const double x = loc.w.real(), y = loc.w.imag();
  const long long n = std::llround(x);
  const double rho = at.gap(n - 1), lambda = at.gap(n);
  const double xl = x - static_cast<double>(n);
  double alpha = xl, beta = local_u(xl);
  if (!trivial(rho, lambda)) {
    AlphaBeta ab = alpha_beta(rho, lambda, xl);
    alpha = ab.alpha;
    beta = ab.beta;
  }
  const Complex psi(at.position(n) + alpha, beta - local_u(xl) + y);

  std::vector<Edge> f = fan(loc.v, -1, 0);
  const Vertex& u_m1 = f[0].other(loc.v);
  const Vertex& u_0 = f[1].other(loc.v);
  Mobius back = Mobius::from_triples(Complex(1.0, 0.0), Complex(-1.0, 0.0), Complex(0.0, 1.0), h_(loc.v), h_(u_0),
                                     h_(u_m1));
  return back(cayley_inv(std::exp(at.shift) * psi));
}

}  // namespace fwp
