#include "fwp/wpgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fwp/develop.hpp"
#include "fwp/error.hpp"
#include "kahan.hpp"

namespace fwp {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

void require_lower(Complex z) {
  if (!(z.imag() < 0.0)) throw Error(ErrorCode::kInvalidArgument, "Bers differentials are evaluated in the lower half-plane");
}

// 1 / (x - y), with 0 when either point is infinite.
double inv_diff(double x, double y) {
  if (std::isinf(x) || std::isinf(y)) return 0.0;
  return 1.0 / (x - y);
}

// The coefficient of sigma(a_j, .) in the kernel, up to the sign (-1)^j.
Complex kernel_coefficient(const QuadOnCircle& q, size_t j) {
  const Complex& a = q[j];
  const Complex& next = q[(j + 1) % 4];
  const Complex& prev = q[(j + 3) % 4];
  return a * a * (next - prev) / ((next - a) * (a - prev));
}

}  // namespace

Complex sigma(Complex a, Complex b) {
  const Complex bb = std::conj(b);
  const Complex w = (b - a) * bb;
  if (w == Complex(0.0, 0.0)) return {0.25, 0.0};
  const Complex z = a * bb;
  return -w * w * std::log(w) / (2.0 * z * z) + 0.75 - 0.5 / z;
}

Complex sigma_series(Complex a, Complex b, size_t n) {
  const Complex z = a * std::conj(b);
  detail::KahanSum re, im;
  Complex power = z;
  for (size_t p = 0; p < n; ++p) {
    const double k = static_cast<double>(p);
    const Complex term = power / ((k + 1.0) * (k + 2.0) * (k + 3.0));
    re += term.real();
    im += term.imag();
    power *= z;
  }
  return {re.value(), im.value()};
}

double sigma_tail_bound(size_t n) {
  const double k = static_cast<double>(n);
  return 1.0 / (2.0 * (k + 1.0) * (k + 2.0));
}

SigmaValue sigma_value(Complex a, Complex b, SigmaMethod method, double tol) {
  SigmaValue out;
  out.z = a * std::conj(b);
  out.method = method;
  if (method == SigmaMethod::kClosedForm) {
    out.value = sigma(a, b);
    return out;
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "series evaluation of sigma needs a positive tolerance");
  size_t n = static_cast<size_t>(std::max(0.0, std::ceil(0.5 * (std::sqrt(1.0 + 2.0 / tol) - 3.0))));
  while (n > 0 && sigma_tail_bound(n - 1) <= tol) --n;
  while (sigma_tail_bound(n) > tol) ++n;
  out.terms = n;
  out.value = sigma_series(a, b, n);
  return out;
}

QuadOnCircle::QuadOnCircle(std::array<Complex, 4> a) : a_(a) {
  for (const Complex& z : a_) {
    if (!(std::abs(std::abs(z) - 1.0) <= 1e-12))
      throw Error(ErrorCode::kDegenerateQuad, "quad vertices must lie on the unit circle");
  }
  double turn = 0.0;
  for (size_t j = 0; j < 4; ++j) {
    const Complex& x = a_[j];
    const Complex& y = a_[(j + 1) % 4];
    if (std::abs(x - y) == 0.0) throw Error(ErrorCode::kDegenerateQuad, "quad vertices must be distinct");
    double step = std::arg(y / x);
    if (step <= 0.0) step += 2.0 * kPi;
    turn += step;
  }
  if (std::abs(turn - 2.0 * kPi) > 1e-9) throw Error(ErrorCode::kDegenerateQuad, "quad vertices are not counterclockwise");
}

QuadOnCircle QuadOnCircle::farey(const Edge& e) {
  const Quad q = farey_quad(e);
  return QuadOnCircle({q.a.disk_point(), q.b.disk_point(), q.c.disk_point(), q.d.disk_point()});
}

QuadOnCircle QuadOnCircle::other_diagonal() const { return QuadOnCircle({a_[1], a_[2], a_[3], a_[0]}); }

QuadOnCircle QuadOnCircle::transformed(const Mobius& m) const {
  std::array<Complex, 4> b;
  for (size_t j = 0; j < 4; ++j) {
    const Complex w = m(a_[j]);
    b[j] = w / std::abs(w);
  }
  return QuadOnCircle(b);
}

std::array<double, 4> QuadOnCircle::half_plane() const {
  std::array<double, 4> c;
  for (size_t j = 0; j < 4; ++j) {
    const Complex w = cayley(a_[j]);
    c[j] = std::isfinite(w.real()) ? w.real() : std::numeric_limits<double>::infinity();
  }
  return c;
}

Complex wp_kernel(const QuadOnCircle& q1, const QuadOnCircle& q2) {
  std::array<Complex, 4> c1, c2;
  for (size_t j = 0; j < 4; ++j) {
    c1[j] = kernel_coefficient(q1, j);
    c2[j] = std::conj(kernel_coefficient(q2, j));
  }
  Complex acc(0.0, 0.0);
  for (size_t j = 0; j < 4; ++j) {
    for (size_t k = 0; k < 4; ++k) {
      const double sign = (j + k) % 2 == 0 ? 1.0 : -1.0;
      acc += sign * c1[j] * c2[k] * sigma(q1[j], q2[k]);
    }
  }
  return acc;
}

double metric_pairing(const QuadOnCircle& q1, const QuadOnCircle& q2) {
  return 2.0 / kPi * wp_kernel(q1, q2).real();
}

double symplectic_direct(const QuadOnCircle& q1, const QuadOnCircle& q2) {
  return -2.0 / kPi * wp_kernel(q1, q2).imag();
}

double full_metric(const CoordFn& theta1, const CoordFn& theta2, const CoordFn& base) {
  if (theta1.empty() || theta2.empty()) return 0.0;
  const PiecewiseMobiusHomeo h = develop_diamond(base);
  auto image = [&h](const Edge& e) {
    const Quad q = farey_quad(e);
    return QuadOnCircle({h(q.a), h(q.b), h(q.c), h(q.d)});
  };
  std::vector<std::pair<QuadOnCircle, double>> first, second;
  for (const auto& [e, x] : theta1.entries()) first.emplace_back(image(e), x);
  for (const auto& [e, x] : theta2.entries()) second.emplace_back(image(e), x);
  detail::KahanSum acc;
  for (const auto& [q1, x1] : first) {
    for (const auto& [q2, x2] : second) acc += x1 * x2 * metric_pairing(q1, q2);
  }
  return acc.value();
}

template <class T>
T symplectic(const BasicCoordFn<T>& theta1, const BasicCoordFn<T>& theta2) {
  const EdgeFunction<T> f = [&theta2](const Edge& e) { return theta2(e); };
  T acc(0);
  for (const auto& [e, x] : theta1.entries()) acc += x * phi_at(f, e);
  return acc;
}

template double symplectic(const CoordFn&, const CoordFn&);
template Rational symplectic(const ExactCoordFn&, const ExactCoordFn&);

Complex QuadDifferential::operator()(Complex z) const {
  Complex acc(0.0, 0.0);
  for (const BersTerm& t : terms) {
    const bool ia = std::isinf(t.a), ib = std::isinf(t.b);
    if (ia && ib) throw Error(ErrorCode::kInvalidArgument, "a Bers term needs a finite endpoint");
    if (ia || ib) {
      const Complex d = z - (ia ? t.b : t.a);
      acc += t.weight / (d * d);
    } else {
      const Complex da = z - t.a, db = z - t.b;
      const double s = t.a - t.b;
      acc += t.weight * s * s / (da * da * db * db);
    }
  }
  return kI / (2.0 * kPi) * acc;
}

QuadDifferential diamond_differential(const std::array<double, 4>& c, double weight) {
  QuadDifferential out;
  for (size_t j = 0; j < 4; ++j) out.terms.push_back({c[j], c[(j + 1) % 4], j % 2 == 0 ? weight : -weight});
  return out;
}

Complex bers_phi(const std::vector<BersTerm>& support, Complex z) {
  require_lower(z);
  return QuadDifferential{support}(z);
}

Complex bers_phi_diamond(const std::array<double, 4>& c, Complex z) {
  require_lower(z);
  Complex acc(0.0, 0.0);
  for (size_t j = 0; j < 4; ++j) {
    if (std::isinf(c[j])) continue;
    const double next = c[(j + 1) % 4], prev = c[(j + 3) % 4];
    const double coef = inv_diff(next, c[j]) + inv_diff(c[j], prev);
    acc += (j % 2 == 0 ? coef : -coef) / (z - c[j]);
  }
  return kI / kPi * acc;
}

Complex harmonic_beltrami(const QuadDifferential& phi, Complex z) {
  if (!(z.imag() > 0.0)) throw Error(ErrorCode::kInvalidArgument, "harmonic Beltrami differentials live in the upper half-plane");
  return -2.0 * z.imag() * z.imag() * phi(std::conj(z));
}

Complex disk_harmonic_beltrami(const QuadOnCircle& q, Complex zeta) {
  const double r2 = std::norm(zeta);
  if (!(r2 < 1.0)) throw Error(ErrorCode::kInvalidArgument, "disk Beltrami differentials are evaluated inside the disk");
  const Complex zb = std::conj(zeta);
  Complex acc(0.0, 0.0);
  for (size_t j = 0; j < 4; ++j) {
    const Complex& a = q[j];
    const Complex& next = q[(j + 1) % 4];
    const Complex& prev = q[(j + 3) % 4];
    const Complex term = a * a * (1.0 / (next - a) + 1.0 / (a - prev)) * a / (1.0 - a * zb);
    acc += j % 2 == 0 ? -term : term;
  }
  return kI / (2.0 * kPi) * (1.0 - r2) * (1.0 - r2) * acc;
}

ZygmundField::ZygmundField(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) throw Error(ErrorCode::kInvalidArgument, "a Zygmund field needs a finite endpoint");
  if (!(a != b)) throw Error(ErrorCode::kInvalidArgument, "a Zygmund field needs distinct endpoints");
  if (std::isinf(a)) std::swap(a, b);
  if (std::isinf(b)) {
    a_ = a;
    b_ = std::numeric_limits<double>::infinity();
    if (a >= 0.0) {
      shape_ = Shape::kRightRay;
      lo_ = a;
      hi_ = b_;
    } else if (a <= -1.0) {
      shape_ = Shape::kLeftRay;
      lo_ = -b_;
      hi_ = a;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "no normalized field for a ray starting in (-1, 0)");
    }
    return;
  }
  if (a > b) std::swap(a, b);
  if ((a < -1.0 && -1.0 < b) || (a < 0.0 && 0.0 < b))
    throw Error(ErrorCode::kInvalidArgument, "the support of a normalized field cannot contain -1 or 0");
  shape_ = Shape::kInterval;
  a_ = lo_ = a;
  b_ = hi_ = b;
}

double ZygmundField::operator()(double x) const {
  if (!(x > lo_ && x < hi_)) return 0.0;
  switch (shape_) {
    case Shape::kRightRay:
      return x - a_;
    case Shape::kLeftRay:
      return a_ - x;
    case Shape::kInterval:
      break;
  }
  return (x - a_) * (x - b_) / (a_ - b_);
}

}  // namespace fwp
