#include "fwp/develop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "fwp/error.hpp"

namespace fwp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (x - i)/(x + i) at x = p/q, in extended precision.
Mobius::Wide wide_disk_point(const Vertex& v) {
  if (v.is_infinite()) return {1.0L, 0.0L};
  long double p = static_cast<long double>(v.num());
  long double q = static_cast<long double>(v.den());
  const long double s = std::max(std::abs(p), q);
  p /= s;
  q /= s;
  const long double n = p * p + q * q;
  return {(p * p - q * q) / n, -2.0L * p * q / n};
}

double wrap_angle(double a) {
  while (a > 0.0) a -= kTwoPi;
  while (a <= -kTwoPi) a += kTwoPi;
  return a;
}

}  // namespace

PiecewiseMobiusHomeo::PiecewiseMobiusHomeo(std::vector<Breakpoint> breakpoints, std::vector<Mobius> maps)
    : bps_(std::move(breakpoints)), maps_(std::move(maps)) {
  if (maps_.size() != std::max<size_t>(1, bps_.size()))
    throw Error(ErrorCode::kInvalidArgument, "need one Moebius map per arc");
  for (size_t i = 1; i < bps_.size(); ++i) {
    if (!(bps_[i - 1].angle < bps_[i].angle))
      throw Error(ErrorCode::kInvalidArgument, "breakpoints must be strictly counterclockwise");
  }
  for (const Breakpoint& b : bps_) exact_ = exact_ && b.exact.has_value();
}

size_t PiecewiseMobiusHomeo::arc_at(double angle, Side side) const {
  const size_t n = bps_.size();
  if (n == 0) return 0;
  angle = wrap_angle(angle);
  auto it = std::upper_bound(bps_.begin(), bps_.end(), angle,
                             [](double a, const Breakpoint& b) { return a < b.angle; });
  size_t i = it == bps_.begin() ? n - 1 : static_cast<size_t>(it - bps_.begin()) - 1;
  if (side == Side::kMinus && std::abs(bps_[i].angle - angle) <= 1e-15) i = (i + n - 1) % n;
  return i;
}

size_t PiecewiseMobiusHomeo::arc_at(const Vertex& v, Side side) const {
  const size_t n = bps_.size();
  if (n == 0) return 0;
  if (!exact_) return arc_at(v.disk_angle(), side);
  auto it = std::upper_bound(bps_.begin(), bps_.end(), v,
                             [](const Vertex& x, const Breakpoint& b) { return x < *b.exact; });
  size_t i = it == bps_.begin() ? n - 1 : static_cast<size_t>(it - bps_.begin()) - 1;
  if (side == Side::kMinus && *bps_[i].exact == v) i = (i + n - 1) % n;
  return i;
}

Complex PiecewiseMobiusHomeo::operator()(Complex z) const { return maps_[arc_at(circle_angle(z))](z); }

Complex PiecewiseMobiusHomeo::operator()(const Vertex& v) const { return maps_[arc_at(v)](v.disk_point()); }

double PiecewiseMobiusHomeo::derivative(Complex z, Side side) const {
  return maps_[arc_at(circle_angle(z), side)].circle_derivative(z);
}

double PiecewiseMobiusHomeo::derivative(const Vertex& v, Side side) const {
  return maps_[arc_at(v, side)].circle_derivative(v.disk_point());
}

PiecewiseMobiusHomeo PiecewiseMobiusHomeo::post_compose(const Mobius& m) const {
  PiecewiseMobiusHomeo out = *this;
  for (Mobius& x : out.maps_) x = (m * x).project_psu();
  return out;
}

double PiecewiseMobiusHomeo::max_discontinuity() const {
  double worst = 0.0;
  const size_t n = bps_.size();
  for (size_t i = 0; i < n; ++i) {
    Complex p = bps_[i].exact ? bps_[i].exact->disk_point() : bps_[i].point();
    worst = std::max(worst, std::abs(maps_[i](p) - maps_[(i + n - 1) % n](p)));
  }
  return worst;
}

double PiecewiseMobiusHomeo::max_c1_defect() const {
  double worst = 0.0;
  const size_t n = bps_.size();
  for (size_t i = 0; i < n; ++i) {
    const Mobius::Wide p = bps_[i].exact ? wide_disk_point(*bps_[i].exact) : Mobius::Wide(bps_[i].point());
    const long double plus = maps_[i].circle_derivative(p);
    const long double minus = maps_[(i + n - 1) % n].circle_derivative(p);
    worst = std::max(worst, static_cast<double>(std::abs(std::log(plus / minus))));
  }
  return worst;
}

std::string PiecewiseMobiusHomeo::breakpoints_json() const {
  nlohmann::json out = nlohmann::json::array();
  auto arc = [](const Mobius& m, nlohmann::json vertex) {
    Complex al = m.alpha(), be = m.beta();
    return nlohmann::json{{"vertex", std::move(vertex)},
                          {"alpha", {al.real(), al.imag()}},
                          {"beta", {be.real(), be.imag()}}};
  };
  if (bps_.empty()) out.push_back(arc(maps_[0], nullptr));
  for (size_t i = 0; i < bps_.size(); ++i) {
    nlohmann::json v = bps_[i].exact ? nlohmann::json(bps_[i].exact->str()) : nlohmann::json(bps_[i].angle);
    out.push_back(arc(maps_[i], std::move(v)));
  }
  return out.dump(2) + "\n";
}

PiecewiseMobiusHomeo single_shear_homeo(Complex x, Complex y, double t) {
  Mobius piece = shear_piece(x, y, t);
  Breakpoint bx{circle_angle(x), std::nullopt}, by{circle_angle(y), std::nullopt};
  if (bx.angle < by.angle) return PiecewiseMobiusHomeo({bx, by}, {piece, Mobius()});
  return PiecewiseMobiusHomeo({by, bx}, {Mobius(), piece});
}

namespace {

// Counterclockwise positions of q1, q2, q3 relative to q0 must increase.
void check_ccw(const std::array<Complex, 4>& q) {
  double prev = 0.0;
  for (int k = 1; k < 4; ++k) {
    if (std::abs(q[k] - q[k - 1]) < 1e-13 || std::abs(q[k] - q[0]) < 1e-13)
      throw Error(ErrorCode::kDegenerateQuad, "quad has coincident vertices");
    double rel = std::arg(q[k] / q[0]);
    if (rel < 0.0) rel += kTwoPi;
    if (!(rel > prev)) throw Error(ErrorCode::kDegenerateQuad, "quad vertices are not counterclockwise");
    prev = rel;
  }
}

std::array<Mobius, 4> diamond_pieces(const std::array<Complex, 4>& q, double t) {
  return {shear_piece(q[0], q[1], t), shear_piece(q[1], q[2], -t), shear_piece(q[2], q[3], t),
          shear_piece(q[3], q[0], -t)};
}

// H_{h(Q), h(e), t} o h, refining h's breakpoints by the quad vertices.
PiecewiseMobiusHomeo apply_diamond(const PiecewiseMobiusHomeo& h, const Quad& quad, double t) {
  const std::array<Vertex, 4> qv = quad.vertices();
  std::array<Complex, 4> img;
  for (int k = 0; k < 4; ++k) img[k] = h(qv[k]);
  check_ccw(img);
  std::array<Mobius, 4> pieces = diamond_pieces(img, t);
  // The result is renormalized afterwards, so any Moebius post-composition
  // is free. Making the longest image arc the identity keeps the pieces with
  // nearby fixed points (and large entries) off most of the breakpoints.
  size_t longest = 0;
  double longest_span = -1.0;
  for (size_t k = 0; k < 4; ++k) {
    double span = std::arg(img[(k + 1) % 4] / img[k]);
    if (span <= 0.0) span += kTwoPi;
    if (span > longest_span) {
      longest_span = span;
      longest = k;
    }
  }
  const Mobius undo = pieces[longest].inverse();
  for (size_t k = 0; k < 4; ++k) pieces[k] = k == longest ? Mobius() : (undo * pieces[k]).project_psu();

  std::vector<Vertex> cuts;
  for (const Breakpoint& b : h.breakpoints()) cuts.push_back(*b.exact);
  cuts.insert(cuts.end(), qv.begin(), qv.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Breakpoint> bps;
  std::vector<Mobius> maps;
  bps.reserve(cuts.size());
  maps.reserve(cuts.size());
  for (const Vertex& x : cuts) {
    int j = 0;
    while (!on_arc(x, qv[j], qv[(j + 1) % 4])) ++j;
    const Mobius& old = h.maps()[h.arc_at(x)];
    bps.push_back({x.disk_angle(), x});
    maps.push_back((pieces[j] * old).project_psu());
  }
  return PiecewiseMobiusHomeo(std::move(bps), std::move(maps));
}

}  // namespace

PiecewiseMobiusHomeo single_diamond_homeo(const std::array<Complex, 4>& q, double t) {
  check_ccw(q);
  std::array<Mobius, 4> pieces = diamond_pieces(q, t);
  std::vector<std::pair<Breakpoint, Mobius>> arcs;
  for (int k = 0; k < 4; ++k) arcs.push_back({{circle_angle(q[k]), std::nullopt}, pieces[k]});
  std::sort(arcs.begin(), arcs.end(), [](const auto& l, const auto& r) { return l.first.angle < r.first.angle; });
  std::vector<Breakpoint> bps;
  std::vector<Mobius> maps;
  for (auto& [b, m] : arcs) {
    bps.push_back(b);
    maps.push_back(m);
  }
  return PiecewiseMobiusHomeo(std::move(bps), std::move(maps));
}

PiecewiseMobiusHomeo normalize(const PiecewiseMobiusHomeo& h) {
  Complex one, i, minus_one;
  if (h.exact()) {
    one = h(Vertex::infinity());
    i = h(Vertex(-1));
    minus_one = h(Vertex(0));
  } else {
    one = h(Complex(1.0, 0.0));
    i = h(Complex(0.0, 1.0));
    minus_one = h(Complex(-1.0, 0.0));
  }
  Mobius n = Mobius::from_triples(one, i, minus_one, Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(-1.0, 0.0));
  return h.post_compose(n.project_psu());
}

PiecewiseMobiusHomeo develop_diamond_sequence(const std::vector<std::pair<Edge, double>>& steps) {
  // Renormalizing after every step keeps the maps well conditioned; the
  // result is unchanged because N o H_{Q,t} o N^{-1} = H_{N(Q),t}.
  PiecewiseMobiusHomeo h;
  for (const auto& [e, t] : steps) {
    if (t == 0.0) continue;
    h = normalize(apply_diamond(h, farey_quad(e), t));
  }
  return h;
}

PiecewiseMobiusHomeo develop_diamond(const CoordFn& theta) {
  std::vector<std::pair<Edge, double>> steps(theta.entries().begin(), theta.entries().end());
  std::stable_sort(steps.begin(), steps.end(),
                   [](const auto& l, const auto& r) { return generation(l.first) < generation(r.first); });
  return develop_diamond_sequence(steps);
}

Complex VertexImageMap::operator()(const Vertex& v) const {
  auto it = images.find(v);
  if (it == images.end()) throw Error(ErrorCode::kInvalidArgument, v.str() + " is beyond the developed generation");
  return it->second;
}

VertexImageMap develop_vertices(const EdgeFunction<double>& s, unsigned max_gen) {
  VertexImageMap out;
  out.max_gen = max_gen;
  out.images.emplace(Vertex::infinity(), Complex(1.0, 0.0));
  out.images.emplace(Vertex(-1), Complex(0.0, 1.0));
  out.images.emplace(Vertex(0), Complex(-1.0, 0.0));
  if (max_gen == 0) return out;

  const Complex h_inf(1.0, 0.0), h_m1(0.0, 1.0), h_0(-1.0, 0.0);
  for (const Edge& e : edges_up_to(max_gen - 1)) {
    Quad q = farey_quad(e);
    Vertex child = mediant(e);
    // Rotate the labels so the unknown vertex comes last; cr is invariant
    // under (a, b, c, d) -> (c, d, a, b).
    std::array<Vertex, 4> v = q.vertices();
    if (child == q.b) v = {q.c, q.d, q.a, q.b};
    Mobius n = Mobius::from_triples(out(v[0]), out(v[1]), out(v[2]), h_inf, h_m1, h_0);
    Complex w = n.inverse()(cayley_inv(Complex(std::exp(s(e)), 0.0)));
    out.images.emplace(child, w / std::abs(w));
  }

  const Vertex* prev = nullptr;
  double prev_angle = -kTwoPi;
  for (const auto& [v, z] : out.images) {
    double a = v.is_infinite() ? 0.0 : circle_angle(z);
    if (!(a > prev_angle) || (v.is_infinite() && !(std::abs(z - h_inf) < 1e-9)))
      throw Error(ErrorCode::kMonotonicityViolation,
                  "vertex images out of counterclockwise order at " + v.str() +
                      (prev ? " (after " + prev->str() + ")" : std::string()));
    prev = &v;
    prev_angle = a;
  }
  return out;
}

}  // namespace fwp
