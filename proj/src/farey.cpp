#include "fwp/farey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "fwp/error.hpp"

namespace fwp {

using boost::multiprecision::abs;

namespace {

double ratio_to_double(const Integer& num, const Integer& den) {
  // Scale both so the conversion neither overflows nor loses the quotient.
  int shift = std::max<int>(0, static_cast<int>(std::max(msb(abs(num) + 1), msb(abs(den) + 1))) - 1000);
  if (shift == 0) return static_cast<double>(num) / static_cast<double>(den);
  return static_cast<double>(Integer(num >> shift)) / static_cast<double>(Integer(den >> shift));
}

}  // namespace

Edge::Edge(Vertex x, Vertex y) {
  if (!is_edge(x, y)) throw Error(ErrorCode::kNotAnEdge, "(" + x.str() + "," + y.str() + ") is not a Farey edge");
  if (y < x) std::swap(x, y);
  a_ = std::move(x);
  b_ = std::move(y);
}

bool Edge::is_root() const { return a_ == Vertex(0) && b_.is_infinite(); }

std::array<Edge, 4> Quad::sides() const { return {Edge(a, b), Edge(b, c), Edge(c, d), Edge(d, a)}; }

Vertex IntegerMobius::operator()(const Vertex& v) const {
  return Vertex(a * v.num() + b * v.den(), c * v.num() + d * v.den());
}

Complex IntegerMobius::operator()(Complex z) const {
  const double fa = static_cast<double>(a), fb = static_cast<double>(b);
  const double fc = static_cast<double>(c), fd = static_cast<double>(d);
  if (std::isinf(z.real())) {
    if (fc == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
    return {fa / fc, 0.0};
  }
  Complex den = fc * z + fd;
  if (den == Complex(0.0, 0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
  return (fa * z + fb) / den;
}

IntegerMobius IntegerMobius::operator*(const IntegerMobius& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

bool operator==(const IntegerMobius& x, const IntegerMobius& y) {
  bool same = x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  bool neg = x.a == -y.a && x.b == -y.b && x.c == -y.c && x.d == -y.d;
  return same || neg;
}

bool is_edge(const Vertex& x, const Vertex& y) {
  Integer d = det(x, y);
  return d == 1 || d == -1;
}

Vertex mediant(const Vertex& x, const Vertex& y) {
  if (!is_edge(x, y)) throw Error(ErrorCode::kNotAnEdge, "(" + x.str() + "," + y.str() + ") is not a Farey edge");
  if (x.is_infinite() || y.is_infinite()) {
    const Vertex& n = x.is_infinite() ? y : x;
    return n.num() >= 0 ? Vertex(n.num() + 1, Integer(1)) : Vertex(n.num() - 1, Integer(1));
  }
  return Vertex(x.num() + y.num(), x.den() + y.den());
}

Vertex comediant(const Edge& e) {
  Vertex m = mediant(e);
  Vertex s(e.a().num() + e.b().num(), e.a().den() + e.b().den());
  Vertex t(e.a().num() - e.b().num(), e.a().den() - e.b().den());
  return s == m ? t : s;
}

Quad farey_quad(const Edge& e) {
  Vertex b = mediant(e);
  Vertex d = comediant(e);
  if (orientation(e.a(), b, e.b()) < 0) std::swap(b, d);
  return {e.a(), b, e.b(), d};
}

unsigned vertex_generation(const Vertex& v) {
  Integer x = abs(v.num());
  Integer y = v.den();
  Integer sum = 0;
  while (y != 0) {
    Integer q, r;
    divide_qr(x, y, q, r);
    sum += q;
    x = std::move(y);
    y = std::move(r);
  }
  return static_cast<unsigned>(sum);
}

unsigned generation(const Edge& e) {
  if (e.is_root()) return 0;
  return std::max(vertex_generation(e.a()), vertex_generation(e.b()));
}

std::vector<Edge> children(const Edge& e) {
  if (e.is_root()) {
    Quad q = farey_quad(e);
    auto s = q.sides();
    std::vector<Edge> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  Vertex m = mediant(e);
  return {Edge(e.a(), m), Edge(m, e.b())};
}

std::vector<Edge> edges_of_generation(unsigned n) {
  std::vector<Edge> layer{Edge::root()};
  for (unsigned g = 0; g < n; ++g) {
    std::vector<Edge> next;
    next.reserve(layer.size() * 2 + 4);
    for (const Edge& e : layer) {
      for (Edge& c : children(e)) next.push_back(std::move(c));
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::vector<Edge> edges_up_to(unsigned max_gen) {
  std::vector<Edge> out;
  std::vector<Edge> layer{Edge::root()};
  for (unsigned g = 0;; ++g) {
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
    if (g == max_gen) break;
    std::vector<Edge> next;
    next.reserve(layer.size() * 2 + 4);
    for (const Edge& e : layer) {
      for (Edge& c : children(e)) next.push_back(std::move(c));
    }
    layer = std::move(next);
  }
  return out;
}

namespace {

// x^{-1} mod m for gcd(x, m) = 1 and m >= 2, in [1, m).
Integer mod_inverse(const Integer& x, const Integer& m) {
  Integer r0 = m, r1 = ((x % m) + m) % m;
  Integer t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    Integer t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return ((t0 % m) + m) % m;
}

}  // namespace

std::array<Vertex, 2> parents(const Vertex& v) {
  if (v.is_infinite() || v.num() == 0)
    throw Error(ErrorCode::kInvalidArgument, v.str() + " has generation 0 and no parents");
  if (v.is_integer()) {
    Vertex n = v.num() > 0 ? Vertex(v.num() - 1, Integer(1)) : Vertex(v.num() + 1, Integer(1));
    return {n, Vertex::infinity()};
  }
  const Integer& p = v.num();
  const Integer& q = v.den();
  Integer s1 = mod_inverse(p, q);
  Integer r1 = (p * s1 - 1) / q;
  return {Vertex(r1, s1), Vertex(p - r1, q - s1)};
}

Vertex fan_base_partner(const Vertex& v, FanBase base) {
  const bool smaller = base == FanBase::kSmallerParent;
  if (v.is_infinite()) return smaller ? Vertex(0) : Vertex(1);
  if (v.num() == 0) return smaller ? Vertex::infinity() : Vertex(1);
  auto ps = parents(v);
  return smaller ? ps[0] : ps[1];
}

IntegerMobius to_infinity(const Vertex& v, FanBase base) {
  Vertex u = fan_base_partner(v, base);
  // M = [[alpha p_v, p_u], [alpha q_v, q_u]] sends infinity to v and 0 to u.
  Integer alpha = det(v, u);
  return {u.den(), -u.num(), -alpha * v.den(), alpha * v.num()};
}

std::vector<Edge> fan(const Vertex& v, long long lo, long long hi, FanBase base) {
  IntegerMobius m = to_infinity(v, base).inverse();
  std::vector<Edge> out;
  out.reserve(static_cast<size_t>(std::max(0LL, hi - lo + 1)));
  for (long long n = lo; n <= hi; ++n) out.emplace_back(v, m(Vertex(n)));
  return out;
}

Integer fan_index(const Vertex& v, const Edge& e, FanBase base) {
  if (!e.has(v)) throw Error(ErrorCode::kInvalidArgument, e.str() + " is not in fan(" + v.str() + ")");
  Vertex n = to_infinity(v, base)(e.other(v));
  return n.num();
}

std::array<Edge, 2> fan_neighbours(const Vertex& v, const Edge& e) {
  const Vertex& u = e.other(v);
  Quad q = farey_quad(e);
  const Vertex& w1 = q.b;
  const Vertex& w2 = q.d;
  if (orientation(v, u, w1) > 0) return {Edge(v, w2), Edge(v, w1)};
  return {Edge(v, w1), Edge(v, w2)};
}

double cross_ratio(const Vertex& a, const Vertex& b, const Vertex& c, const Vertex& d) {
  // Homogeneous form: the denominators q cancel, so infinity needs no case.
  Integer n = det(b, a) * det(d, c);
  Integer m = det(c, b) * det(d, a);
  if (n == 0 || m == 0) throw Error(ErrorCode::kDegeneratePoints, "cross-ratio of coincident points");
  return ratio_to_double(n, m);
}

double cross_ratio(double a, double b, double c, double d) {
  auto deg = [] { return Error(ErrorCode::kDegeneratePoints, "cross-ratio of coincident points"); };
  int infs = std::isinf(a) + std::isinf(b) + std::isinf(c) + std::isinf(d);
  if (infs > 1) throw deg();
  double r;
  if (std::isinf(a)) r = (d - c) / (c - b);
  else if (std::isinf(b)) r = -(d - c) / (d - a);
  else if (std::isinf(c)) r = -(b - a) / (d - a);
  else if (std::isinf(d)) r = (b - a) / (c - b);
  else r = (b - a) * (d - c) / ((c - b) * (d - a));
  if (!std::isfinite(r) || r == 0.0) throw deg();
  return r;
}

Complex cross_ratio(Complex a, Complex b, Complex c, Complex d) {
  auto inf = [](Complex z) { return std::isinf(z.real()) || std::isinf(z.imag()); };
  auto deg = [] { return Error(ErrorCode::kDegeneratePoints, "cross-ratio of coincident points"); };
  int infs = inf(a) + inf(b) + inf(c) + inf(d);
  if (infs > 1) throw deg();
  Complex r;
  if (inf(a)) r = (d - c) / (c - b);
  else if (inf(b)) r = -(d - c) / (d - a);
  else if (inf(c)) r = -(b - a) / (d - a);
  else if (inf(d)) r = (b - a) / (c - b);
  else r = (b - a) * (d - c) / ((c - b) * (d - a));
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || r == Complex(0.0, 0.0)) throw deg();
  return r;
}

double ford_diameter(const Vertex& v) {
  if (v.is_infinite()) return 1.0;
  double q = static_cast<double>(v.den());
  return 1.0 / (q * q);
}

double farey_arclength(const Edge& e) {
  // Half the arc is the angle between the integer vectors (q, p); their cross
  // product is +-1, so the shorter arc is 2 atan(1/|dot|) with no cancellation.
  Integer dot = e.a().num() * e.b().num() + e.a().den() * e.b().den();
  return 2.0 * std::atan2(1.0, std::abs(static_cast<double>(dot)));
}

Complex cayley(Complex z) {
  if (z == Complex(1.0, 0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
  const Complex i(0.0, 1.0);
  return -i * (z + 1.0) / (z - 1.0);
}

Complex cayley_inv(Complex w) {
  if (std::isinf(w.real()) || std::isinf(w.imag())) return {1.0, 0.0};
  const Complex i(0.0, 1.0);
  return (w - i) / (w + i);
}

}  // namespace fwp
