/// \file wpgeom.hpp
/// Weil-Petersson metric and symplectic form on unit infinitesimal diamond
/// shears, the infinitesimal Bers embedding of finite shears and the
/// harmonic Beltrami differentials they determine.
///
/// Metric pairings are normalized so that the WP norm of a harmonic Beltrami
/// differential mu is the integral of |mu|^2 against the hyperbolic area
/// 4 dA / (1 - |z|^2)^2 of the disk (dA / y^2 in the half-plane).
#pragma once

#include <array>
#include <vector>

#include "fwp/coords.hpp"
#include "fwp/farey.hpp"
#include "fwp/mobius.hpp"

namespace fwp {

enum class SigmaMethod { kClosedForm, kSeries };

struct SigmaValue {
  Complex z;  // a conj(b)
  Complex value;
  SigmaMethod method = SigmaMethod::kClosedForm;
  size_t terms = 0;  // series terms summed, 0 for the closed form
};

/// sum_{p >= 0} (a conj(b))^{p+1} / ((p+1)(p+2)(p+3)) for |a| = |b| = 1, by
/// the closed form -w^2 log(w) / (2z^2) + 3/4 - 1/(2z) with z = a conj(b) and
/// w = (b - a) conj(b) = 1 - z. At w = 0 the value is exactly 1/4.
Complex sigma(Complex a, Complex b);

/// The partial sum over p < n, with compensated summation.
Complex sigma_series(Complex a, Complex b, size_t n);

/// Bound on the tail dropped by sigma_series(a, b, n).
double sigma_tail_bound(size_t n);

/// sigma by the chosen method. The series stops at the first n whose tail
/// bound is at most tol (tol must be positive for kSeries).
SigmaValue sigma_value(Complex a, Complex b, SigmaMethod method = SigmaMethod::kClosedForm, double tol = 0.0);

/// Four distinct unit complex numbers in counterclockwise order with the
/// diagonal (a[0], a[2]).
class QuadOnCircle {
 public:
  /// Throws Error(kDegenerateQuad) unless the points are on the unit circle
  /// (to 1e-12), distinct and counterclockwise.
  explicit QuadOnCircle(std::array<Complex, 4> a);
  /// The disk image of farey_quad(e).
  static QuadOnCircle farey(const Edge& e);

  const std::array<Complex, 4>& vertices() const { return a_; }
  const Complex& operator[](size_t j) const { return a_[j]; }
  /// The same quad with diagonal (a[1], a[3]).
  QuadOnCircle other_diagonal() const;
  /// Image under a disk automorphism.
  QuadOnCircle transformed(const Mobius& m) const;
  /// Cayley images on the extended real line, +inf for the point 1.
  std::array<double, 4> half_plane() const;

 private:
  std::array<Complex, 4> a_;
};

/// The Hermitian double sum whose real part gives the metric and imaginary
/// part gives the symplectic form (both scaled by 2/pi, up to sign).
Complex wp_kernel(const QuadOnCircle& q1, const QuadOnCircle& q2);

/// <u1, u2>_WP for the unit infinitesimal diamond shears on q1 and q2.
double metric_pairing(const QuadOnCircle& q1, const QuadOnCircle& q2);

/// omega(u1, u2) = -(2/pi) Im wp_kernel(q1, q2).
double symplectic_direct(const QuadOnCircle& q1, const QuadOnCircle& q2);

/// sum_{e1, e2} theta1(e1) theta2(e2) g(h(Q_e1), h(Q_e2)) for the
/// homeomorphism h developed from the finite diamond function base.
double full_metric(const CoordFn& theta1, const CoordFn& theta2, const CoordFn& base = CoordFn(CoordKind::kDiamond));

/// sum_e theta1(e) Phi(theta2)(e). Exact for rational input.
template <class T>
T symplectic(const BasicCoordFn<T>& theta1, const BasicCoordFn<T>& theta2);

/// A weighted edge (a, b) of a deformed tessellation in the half-plane
/// model; either endpoint may be +-inf.
struct BersTerm {
  double a;
  double b;
  double weight;
};

/// The rational quadratic differential
/// (i / 2pi) sum_j w_j (a_j - b_j)^2 / ((z - a_j)^2 (z - b_j)^2),
/// with 1 / (z - a)^2 when b is infinite.
struct QuadDifferential {
  std::vector<BersTerm> terms;
  Complex operator()(Complex z) const;
};

/// The unit diamond shear (+1, -1, +1, -1 on the sides (c0,c1), (c1,c2),
/// (c2,c3), (c3,c0)) as a quadratic differential.
QuadDifferential diamond_differential(const std::array<double, 4>& c, double weight = 1.0);

/// Infinitesimal Bers embedding of a finite shear. Throws
/// Error(kInvalidArgument) unless Im z < 0.
Complex bers_phi(const std::vector<BersTerm>& support, Complex z);

/// The partial-fraction form of diamond_differential(c):
/// (i / pi) sum_j (-1)^j (1/(c_{j+1} - c_j) + 1/(c_j - c_{j-1})) / (z - c_j),
/// indices mod 4 and 0-based. Infinite c_j drop out. Throws
/// Error(kInvalidArgument) unless Im z < 0.
Complex bers_phi_diamond(const std::array<double, 4>& c, Complex z);

/// -2 y^2 phi(conj z) for z = x + iy. Throws Error(kInvalidArgument) unless
/// Im z > 0.
Complex harmonic_beltrami(const QuadDifferential& phi, Complex z);

/// The harmonic Beltrami differential of the unit diamond shear on q in the
/// disk model. Throws Error(kInvalidArgument) unless |zeta| < 1.
Complex disk_harmonic_beltrami(const QuadOnCircle& q, Complex zeta);

/// The infinitesimal single shear on (a, b), normalized to vanish at -1, 0
/// and infinity: (x - a)(x - b)/(a - b) on the supporting interval, x - a on
/// (a, inf) for a >= 0, a - x on (-inf, a) for a <= -1, and 0 elsewhere.
class ZygmundField {
 public:
  enum class Shape { kInterval, kRightRay, kLeftRay };
  /// b = +inf selects a ray. Throws Error(kInvalidArgument) when a == b or
  /// the support would contain -1 or 0.
  ZygmundField(double a, double b);
  Shape shape() const { return shape_; }
  /// Support (lo, hi), with infinite ends for rays.
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double operator()(double x) const;

 private:
  Shape shape_;
  double a_, b_;
  double lo_, hi_;
};

inline ZygmundField zygmund_field(double a, double b) { return ZygmundField(a, b); }

}  // namespace fwp
