/// \file vertex.hpp
/// Points of the extended rational line, the vertex set of the Farey
/// tessellation in the upper half-plane model.
#pragma once

#include <compare>
#include <complex>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fwp {

using Integer = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// p/q in lowest terms with q >= 0. Infinity is stored as 1/0 and zero as 0/1.
class Vertex {
 public:
  Vertex() : p_(0), q_(1) {}
  Vertex(long long p) : p_(p), q_(1) {}  // NOLINT(google-explicit-constructor)
  Vertex(Integer p, Integer q);

  static Vertex infinity() { return Vertex(Integer(1), Integer(0)); }

  /// Accepts "p/q", "n", "1/0", "-1/0", "inf". Throws Error(kParse).
  static Vertex parse(std::string_view text);

  const Integer& num() const { return p_; }
  const Integer& den() const { return q_; }
  bool is_infinite() const { return q_ == 0; }
  bool is_integer() const { return q_ == 1; }

  /// Canonical key, e.g. "-3/5", "0/1", "1/0".
  std::string str() const;

  /// +inf for infinity.
  double to_double() const;

  /// Angle of the Cayley preimage on the unit circle, in (-2pi, 0].
  /// Increasing in the extended-real order, with infinity at 0.
  double disk_angle() const;
  Complex disk_point() const;

  friend bool operator==(const Vertex& a, const Vertex& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  /// Extended-real order, infinity greatest.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b);

 private:
  Integer p_;
  Integer q_;
};

/// p_a q_b - p_b q_a, with infinity as 1/0.
Integer det(const Vertex& a, const Vertex& b);

/// +1 if (x, y, z) is in counterclockwise cyclic order on the circle, -1 if
/// clockwise, 0 if two coincide.
int orientation(const Vertex& x, const Vertex& y, const Vertex& z);

/// Whether x lies on the half-open counterclockwise arc [from, to).
bool on_arc(const Vertex& x, const Vertex& from, const Vertex& to);

}  // namespace fwp
