/// \file mobius.hpp
/// Complex Moebius transformations, normalized to determinant 1.
#pragma once

#include <complex>

namespace fwp {

using Complex = std::complex<double>;

/// Entries are kept in extended precision; long products of disk automorphisms
/// with nearby fixed points otherwise lose too many digits.
class Mobius {
 public:
  using Wide = std::complex<long double>;

  Mobius() = default;
  /// Rescales so that ad - bc = 1. Throws Error(kDegeneratePoints) if singular.
  Mobius(Complex a, Complex b, Complex c, Complex d) : Mobius(Wide(a), Wide(b), Wide(c), Wide(d)) {}
  Mobius(Wide a, Wide b, Wide c, Wide d);

  /// The map sending z1, z2, z3 to 0, 1, infinity.
  static Mobius to_zero_one_infinity(Complex z1, Complex z2, Complex z3);
  /// The map sending z_k to w_k.
  static Mobius from_triples(Complex z1, Complex z2, Complex z3, Complex w1, Complex w2, Complex w3);
  /// PSU(1,1) form (alpha beta; conj(beta) conj(alpha)).
  static Mobius from_psu(Complex alpha, Complex beta);

  Complex a() const { return Complex(a_); }
  Complex b() const { return Complex(b_); }
  Complex c() const { return Complex(c_); }
  Complex d() const { return Complex(d_); }

  Complex operator()(Complex z) const { return Complex(eval(Wide(z))); }
  Wide eval(Wide z) const { return (a_ * z + b_) / (c_ * z + d_); }
  Mobius operator*(const Mobius& o) const;
  Mobius inverse() const { return Mobius(d_, -b_, -c_, a_); }

  /// Complex derivative 1/(cz+d)^2.
  Complex derivative(Complex z) const;
  /// |M'(z)|; for a circle-preserving map at |z| = 1 this is the derivative
  /// of the induced map of angles.
  double circle_derivative(Complex z) const;
  long double circle_derivative(Wide z) const { return 1.0L / std::norm(c_ * z + d_); }

  /// Nearest PSU(1,1) matrix; removes drift accumulated by long products of
  /// disk automorphisms.
  Mobius project_psu() const;
  /// PSU(1,1) parameters, sign chosen with Re(alpha) >= 0.
  Complex alpha() const;
  Complex beta() const;

 private:
  Wide a_{1.0L}, b_{0.0L}, c_{0.0L}, d_{1.0L};
};

/// z -> (cosh(t/2) z + sinh(t/2)) / (sinh(t/2) z + cosh(t/2)), fixing -1 and 1.
Mobius hyperbolic_translation(double t);

/// A disk automorphism sending x to -1 and y to 1 (x != y on the circle).
/// Unique up to the translations along (-1, 1), which commute with
/// hyperbolic_translation.
Mobius disk_frame(Complex x, Complex y);

/// A^{-1} T_t A with A = disk_frame(x, y): the non-trivial half of the
/// single shear of amount t along the geodesic (x, y), valid on the
/// counterclockwise arc from x to y.
Mobius shear_piece(Complex x, Complex y, double t);

/// Angle of z in (-2pi, 0].
double circle_angle(Complex z);

}  // namespace fwp
