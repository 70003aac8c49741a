#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "fwp/develop.hpp"
#include "fwp/error.hpp"

namespace fwp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinSeparation = 1e-13;

double log_cr_of_images(const std::array<Complex, 4>& w) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(w[i] - w[j]) < kMinSeparation)
        throw Error(ErrorCode::kDegenerateImage, "image points collide numerically");
    }
  }
  Complex cr = (w[1] - w[0]) * (w[3] - w[2]) / ((w[2] - w[1]) * (w[3] - w[0]));
  if (!(cr.real() > 0.0)) throw Error(ErrorCode::kDegenerateImage, "image quad is not counterclockwise");
  return std::log(cr.real());
}

template <class F>
double shear_from(const F& image, const Edge& e) {
  Quad q = farey_quad(e);
  std::array<Complex, 4> w;
  std::array<Vertex, 4> v = q.vertices();
  for (int k = 0; k < 4; ++k) w[k] = image(v[k]);
  return log_cr_of_images(w);
}

double chord(const Edge& e) { return 2.0 * std::sin(0.5 * farey_arclength(e)); }

}  // namespace

double AngleHomeo::derivative(double x) const {
  if (dlift) return dlift(x);
  auto central = [&](double h) { return (lift(x + h) - lift(x - h)) / (2.0 * h); };
  const double h = 1e-6;
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

AngleHomeo perturbed_rotation(double eps) {
  return {[eps](double x) { return x + eps * std::sin(x); }, [eps](double x) { return 1.0 + eps * std::cos(x); }};
}

double extract_shear(const PiecewiseMobiusHomeo& h, const Edge& e) {
  return shear_from([&h](const Vertex& v) { return h(v); }, e);
}

double extract_shear(const AngleHomeo& h, const Edge& e) {
  return shear_from([&h](const Vertex& v) { return std::polar(1.0, h.lift(v.disk_angle())); }, e);
}

double extract_shear(const VertexImageMap& h, const Edge& e) {
  return shear_from([&h](const Vertex& v) { return h(v); }, e);
}

double extract_shear_line(const std::function<double(double)>& phi, const Edge& e) {
  Quad q = farey_quad(e);
  auto img = [&phi](const Vertex& v) {
    return v.is_infinite() ? std::numeric_limits<double>::infinity() : phi(v.to_double());
  };
  double cr = cross_ratio(img(q.a), img(q.b), img(q.c), img(q.d));
  if (!(cr > 0.0)) throw Error(ErrorCode::kDegenerateImage, "image quad is not ordered");
  return std::log(cr);
}

namespace {

double smooth_derivative(const PiecewiseMobiusHomeo& h, const Vertex& v) {
  double plus = h.derivative(v, Side::kPlus);
  double minus = h.derivative(v, Side::kMinus);
  if (std::abs(std::log(plus) - std::log(minus)) > 1e-9)
    throw Error(ErrorCode::kNotDifferentiable, "homeomorphism has a corner at " + v.str());
  return plus;
}

}  // namespace

double extract_diamond(const PiecewiseMobiusHomeo& h, const Edge& e) {
  double da = smooth_derivative(h, e.a());
  double db = smooth_derivative(h, e.b());
  double img = std::abs(h(e.a()) - h(e.b()));
  if (img < kMinSeparation) throw Error(ErrorCode::kDegenerateImage, "edge endpoints collide");
  return 0.5 * std::log(da * db) - std::log(img / chord(e));
}

double extract_diamond(const AngleHomeo& h, const Edge& e) {
  double ta = e.a().disk_angle(), tb = e.b().disk_angle();
  double da = h.derivative(ta), db = h.derivative(tb);
  double img = std::abs(std::polar(1.0, h.lift(ta)) - std::polar(1.0, h.lift(tb)));
  if (img < kMinSeparation) throw Error(ErrorCode::kDegenerateImage, "edge endpoints collide");
  return 0.5 * std::log(da * db) - std::log(img / chord(e));
}

namespace {

struct Horocycle {
  double position;
  double size;
};

// In the half-plane picture phi = c o h o c^{-1} has phi'(x) = h'(1 + phi^2)/(1 + x^2).
Horocycle horocycle(const PiecewiseMobiusHomeo& h, const Vertex& v) {
  double d = smooth_derivative(h, v);
  if (v.is_infinite()) return {std::numeric_limits<double>::infinity(), 1.0 / d};
  double phi = cayley(h(v)).real();
  Integer n2 = v.num() * v.num() + v.den() * v.den();
  return {phi, d * (1.0 + phi * phi) / n2.convert_to<double>()};
}

}  // namespace

Decoration decoration(const PiecewiseMobiusHomeo& h, unsigned max_gen) {
  PiecewiseMobiusHomeo hn = normalize(h);
  std::set<Vertex> verts;
  for (const Edge& e : edges_up_to(max_gen)) {
    verts.insert(e.a());
    verts.insert(e.b());
  }
  Decoration out;
  for (const Vertex& v : verts) {
    Horocycle c = horocycle(hn, v);
    out.size.emplace(v, c.size);
    out.position.emplace(v, c.position);
  }
  return out;
}

double log_lambda(const PiecewiseMobiusHomeo& h, const Edge& e) {
  PiecewiseMobiusHomeo hn = normalize(h);
  Horocycle x = horocycle(hn, e.a());
  Horocycle y = horocycle(hn, e.b());
  if (e.b().is_infinite()) return 0.5 * std::log(y.size / x.size);
  return std::log(std::abs(x.position - y.position)) - 0.5 * std::log(x.size * y.size);
}

std::vector<std::pair<double, double>> sample_homeo(const PiecewiseMobiusHomeo& h, size_t n) {
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  double prev = 0.0;
  for (size_t k = 0; k < n; ++k) {
    double in = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    double raw = std::arg(h(std::polar(1.0, in)));
    double val;
    if (k == 0) {
      val = raw + kTwoPi * std::round((in - raw) / kTwoPi);
    } else {
      double step = std::remainder(raw - prev, kTwoPi);
      if (step < 0.0) step += kTwoPi;
      val = prev + step;
    }
    out.emplace_back(in, val);
    prev = val;
  }
  return out;
}

std::string samples_csv(const std::vector<std::pair<double, double>>& samples) {
  std::string out = "angle_in,angle_out\n";
  char buf[64];
  for (const auto& [x, y] : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, y);
    out += buf;
  }
  return out;
}

AngleHomeo homeo_from_samples(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two samples");
  auto pts = std::make_shared<std::vector<std::pair<double, double>>>(samples);
  pts->push_back({samples.front().first + kTwoPi, samples.front().second + kTwoPi});
  AngleHomeo out;
  out.lift = [pts](double x) {
    const double x0 = pts->front().first;
    double turns = std::floor((x - x0) / kTwoPi);
    double r = x - turns * kTwoPi;
    auto it = std::upper_bound(pts->begin(), pts->end(), r,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    if (it == pts->begin()) it = std::next(it);
    if (it == pts->end()) it = std::prev(it);
    const auto& [x1, y1] = *std::prev(it);
    const auto& [x2, y2] = *it;
    return y1 + (y2 - y1) * (r - x1) / (x2 - x1) + turns * kTwoPi;
  };
  return out;
}

std::vector<std::pair<double, double>> parse_samples_csv(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  auto bad = [&lineno](const std::string& msg) {
    throw Error(ErrorCode::kParse, "samples line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "angle_in,angle_out") continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos) bad("expected two comma-separated numbers");
    double x = 0.0, y = 0.0;
    auto r1 = std::from_chars(line.data(), line.data() + comma, x);
    auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), y);
    if (r1.ec != std::errc() || r1.ptr != line.data() + comma || r2.ec != std::errc() ||
        r2.ptr != line.data() + line.size())
      bad("malformed number");
    if (!std::isfinite(x) || !std::isfinite(y)) bad("non-finite value");
    if (!out.empty() && !(x > out.back().first && y > out.back().second)) bad("samples must increase strictly");
    out.emplace_back(x, y);
  }
  if (out.size() < 2) throw Error(ErrorCode::kParse, "samples: need at least two rows");
  if (out.back().first - out.front().first >= kTwoPi || out.back().second - out.front().second >= kTwoPi)
    throw Error(ErrorCode::kParse, "samples must cover less than one turn");
  return out;
}

}  // namespace fwp
