#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>

#include "fwp/error.hpp"
#include "fwp/reports.hpp"

namespace fwp {

namespace {

constexpr double kPi = std::numbers::pi;
// Longest circular arc drawn by a single cubic; the radial error of the
// standard cubic at 45 degrees is below 5e-6 of the radius.
constexpr double kMaxSegment = kPi / 4.0;

class PathWriter {
 public:
  void move(Complex p) {
    out_ += "M";
    point(p);
  }
  void line(Complex p) {
    out_ += " L";
    point(p);
  }
  // Arc of the circle (c, r) starting at angle a0 and sweeping by sweep.
  void arc(Complex c, double r, double a0, double sweep) {
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / kMaxSegment - 1e-12)));
    const double step = sweep / n;
    const double k = 4.0 / 3.0 * std::tan(step / 4.0);
    for (int i = 0; i < n; ++i) {
      const double t0 = a0 + i * step, t1 = t0 + step;
      const Complex p0 = c + std::polar(r, t0), p3 = c + std::polar(r, t1);
      const Complex d0 = Complex(-std::sin(t0), std::cos(t0)) * (k * r);
      const Complex d1 = Complex(-std::sin(t1), std::cos(t1)) * (k * r);
      out_ += " C";
      point(p0 + d0);
      out_ += " ";
      point(p3 - d1);
      out_ += " ";
      point(p3);
    }
  }
  std::string take() { return std::move(out_); }

 private:
  void point(Complex p) {
    char buf[64];
    // SVG's y axis points down.
    std::snprintf(buf, sizeof buf, "%.6f %.6f", p.real() + 0.0, -p.imag() + 0.0);
    out_ += buf;
  }
  std::string out_;
};

std::optional<Complex> circumcenter(Complex a, Complex b, Complex c) {
  const Complex u = b - a, v = c - a;
  const double d = 2.0 * (u.real() * v.imag() - u.imag() * v.real());
  if (std::abs(d) < 1e-12 * std::norm(u) * std::abs(v)) return std::nullopt;
  const double nu = std::norm(u), nv = std::norm(v);
  return a + Complex((v.imag() * nu - u.imag() * nv) / d, (u.real() * nv - v.real() * nu) / d);
}

// Geodesic between two points of the unit circle.
std::string ideal_geodesic(Complex p, Complex q) {
  PathWriter w;
  w.move(p);
  const double delta = std::abs(std::arg(q / p));
  if (kPi - delta < 1e-9) {
    w.line(q);
    return w.take();
  }
  const Complex mid = std::polar(1.0, std::arg(p) + 0.5 * std::arg(q / p));
  const Complex c = mid / std::cos(0.5 * delta);
  const double r = std::tan(0.5 * delta);
  const double a0 = std::arg(p - c);
  w.arc(c, r, a0, std::remainder(std::arg(q - c) - a0, 2.0 * kPi));
  return w.take();
}

// Geodesic segment between two points inside the disk.
std::string interior_geodesic(Complex p, Complex q) {
  PathWriter w;
  w.move(p);
  const Complex mirror = std::norm(p) > 1e-24 ? 1.0 / std::conj(p) : Complex(0.0, 0.0);
  const auto c = std::norm(p) > 1e-24 ? circumcenter(p, q, mirror) : std::nullopt;
  if (!c) {
    w.line(q);
    return w.take();
  }
  const double r = std::abs(p - *c);
  const double a0 = std::arg(p - *c);
  auto ccw = [a0](double a) {
    double s = std::fmod(a - a0, 2.0 * kPi);
    return s < 0.0 ? s + 2.0 * kPi : s;
  };
  double sweep = ccw(std::arg(q - *c));
  if (ccw(std::arg(mirror - *c)) < sweep) sweep -= 2.0 * kPi;
  w.arc(*c, r, a0, sweep);
  return w.take();
}

Complex triangle_center(Complex u, Complex v, Complex w) {
  const Complex om = std::polar(1.0, 2.0 * kPi / 3.0);
  return Mobius::from_triples(Complex(1.0, 0.0), om, om * om, u, v, w)(Complex(0.0, 0.0));
}

struct Circle {
  Complex c;
  double r;
};

// Image in the disk of the half-plane horocycle based at x (or at infinity)
// with the given Euclidean diameter (or height).
std::optional<Circle> horocycle_in_disk(double x, double size) {
  const Complex I(0.0, 1.0);
  std::array<Complex, 3> pts;
  if (std::isinf(x)) pts = {size * I, 1.0 + size * I, -1.0 + size * I};
  else pts = {x + size * I, x + 0.5 * size + 0.5 * size * I, x - 0.5 * size + 0.5 * size * I};
  for (Complex& p : pts) p = cayley_inv(p);
  auto c = circumcenter(pts[0], pts[1], pts[2]);
  if (!c) return std::nullopt;
  return Circle{*c, std::abs(pts[0] - *c)};
}

double stroke(unsigned gen) { return 0.006 * std::pow(0.8, static_cast<double>(gen)); }

}  // namespace

std::string render_svg(const SvgOptions& opt, const Homeo* h) {
  auto image = [h](const Vertex& v) { return h ? (*h)(v) : v.disk_point(); };
  if (opt.ford && h && !h->developed())
    throw Error(ErrorCode::kInvalidArgument, "Ford circles need a homeomorphism developed from balanced coordinates");
  const std::vector<Edge> edges = edges_up_to(opt.max_gen);

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" "
                "viewBox=\"-1.02 -1.02 2.04 2.04\">\n",
                opt.size, opt.size);
  out += buf;
  out += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.006\"/>\n";

  out += "<g id=\"tessellation\" fill=\"none\" stroke=\"black\">\n";
  for (const Edge& e : edges) {
    std::snprintf(buf, sizeof buf, "<path class=\"edge\" stroke-width=\"%.6f\" d=\"", stroke(generation(e)));
    out += buf;
    out += ideal_geodesic(image(e.a()), image(e.b()));
    out += "\"/>\n";
  }
  out += "</g>\n";

  if (opt.dual) {
    out += "<g id=\"dual\" fill=\"none\" stroke=\"red\">\n";
    for (const Edge& e : edges) {
      const Quad q = farey_quad(e);
      const Complex a = image(q.a), b = image(q.b), c = image(q.c), d = image(q.d);
      std::snprintf(buf, sizeof buf, "<path class=\"dual\" stroke-width=\"%.6f\" d=\"", stroke(generation(e)));
      out += buf;
      out += interior_geodesic(triangle_center(a, b, c), triangle_center(c, d, a));
      out += "\"/>\n";
    }
    out += "</g>\n";
  }

  if (opt.ford) {
    std::set<Vertex> verts;
    for (const Edge& e : edges) {
      verts.insert(e.a());
      verts.insert(e.b());
    }
    std::optional<Decoration> deco;
    if (h) deco = decoration(*h->developed(), opt.max_gen);
    out += "<g id=\"ford\" fill=\"none\" stroke=\"blue\">\n";
    for (const Vertex& v : verts) {
      const double x = deco ? deco->position.at(v) : v.to_double();
      const double size = deco ? deco->size.at(v) : ford_diameter(v);
      auto circ = horocycle_in_disk(x, size);
      if (!circ) continue;
      std::snprintf(buf, sizeof buf, "<circle class=\"ford\" cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\" stroke-width=\"%.6f\"/>\n",
                    circ->c.real() + 0.0, -circ->c.imag() + 0.0, circ->r, stroke(vertex_generation(v)));
      out += buf;
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fwp
