#include "fwp/mobius.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "fwp/error.hpp"

namespace fwp {

using Wide = Mobius::Wide;

Mobius::Mobius(Wide a, Wide b, Wide c, Wide d) {
  Wide det = a * d - b * c;
  if (std::abs(det) == 0.0L || !std::isfinite(std::abs(det)))
    throw Error(ErrorCode::kDegeneratePoints, "singular Moebius matrix");
  Wide s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

Mobius Mobius::to_zero_one_infinity(Complex z1, Complex z2, Complex z3) {
  if (z1 == z2 || z2 == z3 || z1 == z3) throw Error(ErrorCode::kDegeneratePoints, "coincident points");
  // (z - z1)(z2 - z3) / ((z - z3)(z2 - z1))
  Wide w1(z1), w2(z2), w3(z3);
  Wide u = w2 - w3, v = w2 - w1;
  return Mobius(u, -w1 * u, v, -w3 * v);
}

Mobius Mobius::from_triples(Complex z1, Complex z2, Complex z3, Complex w1, Complex w2, Complex w3) {
  return to_zero_one_infinity(w1, w2, w3).inverse() * to_zero_one_infinity(z1, z2, z3);
}

Mobius Mobius::from_psu(Complex alpha, Complex beta) {
  return Mobius(alpha, beta, std::conj(beta), std::conj(alpha));
}

Mobius Mobius::operator*(const Mobius& o) const {
  return Mobius(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

Complex Mobius::derivative(Complex z) const {
  Wide w = c_ * Wide(z) + d_;
  return Complex(1.0L / (w * w));
}

double Mobius::circle_derivative(Complex z) const {
  return static_cast<double>(1.0L / std::norm(c_ * Wide(z) + d_));
}

Mobius Mobius::project_psu() const {
  Wide al = 0.5L * (a_ + std::conj(d_));
  Wide be = 0.5L * (b_ + std::conj(c_));
  return Mobius(al, be, std::conj(be), std::conj(al));
}

namespace {

std::pair<Wide, Wide> psu_parameters(Wide a, Wide b, Wide c, Wide d) {
  Wide al = 0.5L * (a + std::conj(d));
  Wide be = 0.5L * (b + std::conj(c));
  long double n = std::sqrt(std::norm(al) - std::norm(be));
  al /= n;
  be /= n;
  if (al.real() < 0.0L || (al.real() == 0.0L && al.imag() < 0.0L)) {
    al = -al;
    be = -be;
  }
  return {al, be};
}

}  // namespace

Complex Mobius::alpha() const { return Complex(psu_parameters(a_, b_, c_, d_).first); }

Complex Mobius::beta() const { return Complex(psu_parameters(a_, b_, c_, d_).second); }

Mobius hyperbolic_translation(double t) {
  long double ch = std::cosh(0.5L * t), sh = std::sinh(0.5L * t);
  return Mobius(Wide(ch), Wide(sh), Wide(sh), Wide(ch));
}

double circle_angle(Complex z) {
  double th = std::atan2(z.imag(), z.real());
  return th > 0.0 ? th - 2.0 * std::numbers::pi : th;
}

Mobius disk_frame(Complex x, Complex y) {
  if (std::abs(x - y) == 0.0) throw Error(ErrorCode::kDegeneratePoints, "coincident geodesic endpoints");
  double ax = std::arg(x);
  double span = std::arg(y / x);
  if (span <= 0.0) span += 2.0 * std::numbers::pi;
  Complex m = std::polar(1.0, ax + 0.5 * span);
  // x, m, y counterclockwise go to -1, -i, 1.
  return Mobius::from_triples(x, m, y, Complex(-1.0, 0.0), Complex(0.0, -1.0), Complex(1.0, 0.0)).project_psu();
}

Mobius shear_piece(Complex x, Complex y, double t) {
  // Equal to A^{-1} T_t A for A = disk_frame(x, y), written as S D S^{-1}
  // with S = (x y; 1 1) so that the fixed points are exact.
  if (std::abs(x - y) == 0.0) throw Error(ErrorCode::kDegeneratePoints, "coincident geodesic endpoints");
  long double ep = std::exp(0.5L * t), em = std::exp(-0.5L * t);
  Wide wx(x), wy(y);
  Wide k = 1.0L / (wx - wy);
  return Mobius(k * (wx * em - wy * ep), -k * wx * wy * (em - ep), k * (em - ep), k * (wx * ep - wy * em))
      .project_psu();
}

}  // namespace fwp
