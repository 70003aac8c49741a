#include "fwp/vertex.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "fwp/error.hpp"

namespace fwp {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kNotAnEdge: return "NotAnEdge";
    case ErrorCode::kDegeneratePoints: return "DegeneratePoints";
    case ErrorCode::kDegenerateQuad: return "DegenerateQuad";
    case ErrorCode::kDegenerateImage: return "DegenerateImage";
    case ErrorCode::kMonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::kNotDifferentiable: return "NotDifferentiable";
    case ErrorCode::kNotInP: return "NotInP";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

Vertex::Vertex(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_ == 0 && q_ == 0) throw Error(ErrorCode::kInvalidArgument, "0/0 is not a vertex");
  if (q_ < 0) {
    p_ = -p_;
    q_ = -q_;
  }
  if (q_ == 0) {
    p_ = 1;
    return;
  }
  if (p_ == 0) {
    q_ = 1;
    return;
  }
  Integer g = boost::multiprecision::gcd(p_, q_);
  if (g != 1) {
    p_ /= g;
    q_ /= g;
  }
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw Error(ErrorCode::kParse, "bad vertex '" + std::string(whole) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error(ErrorCode::kParse, "bad vertex '" + std::string(whole) + "'");
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Vertex Vertex::parse(std::string_view text) {
  if (text == "inf" || text == "\xE2\x88\x9E") return infinity();
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Vertex(parse_integer(text, text), Integer(1));
  Integer p = parse_integer(text.substr(0, slash), text);
  Integer q = parse_integer(text.substr(slash + 1), text);
  if (q < 0) throw Error(ErrorCode::kParse, "negative denominator in '" + std::string(text) + "'");
  if (q == 0 && p != 1 && p != -1) throw Error(ErrorCode::kParse, "bad infinity '" + std::string(text) + "'");
  if (q != 0 && boost::multiprecision::gcd(p, q) != 1)
    throw Error(ErrorCode::kParse, "vertex not in lowest terms '" + std::string(text) + "'");
  return Vertex(std::move(p), std::move(q));
}

std::string Vertex::str() const { return p_.str() + "/" + q_.str(); }

double Vertex::to_double() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(p_) / static_cast<double>(q_);
}

double Vertex::disk_angle() const {
  if (is_infinite()) return 0.0;
  return 2.0 * std::atan2(static_cast<double>(p_), static_cast<double>(q_)) - std::numbers::pi;
}

Complex Vertex::disk_point() const {
  if (is_infinite()) return {1.0, 0.0};
  // (x - i)/(x + i) with x = p/q, written homogeneously.
  double p = static_cast<double>(p_);
  double q = static_cast<double>(q_);
  double s = std::max(std::abs(p), q);
  p /= s;
  q /= s;
  double n = p * p + q * q;
  return {(p * p - q * q) / n, -2.0 * p * q / n};
}

std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
  // q >= 0 on both sides, so cross-multiplication preserves order, and
  // infinity = 1/0 compares greater than every finite value.
  if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
  Integer lhs = a.p_ * b.q_;
  Integer rhs = b.p_ * a.q_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Integer det(const Vertex& a, const Vertex& b) { return a.num() * b.den() - b.num() * a.den(); }

int orientation(const Vertex& x, const Vertex& y, const Vertex& z) {
  // det(u, w) = q_u q_w (w - u) has the sign of w - u in the extended order.
  int s1 = det(y, x).sign();
  int s2 = det(z, y).sign();
  int s3 = det(z, x).sign();
  return s1 * s2 * s3;
}

bool on_arc(const Vertex& x, const Vertex& from, const Vertex& to) {
  if (x == from) return true;
  if (from == to) return true;
  if (x == to) return false;
  return orientation(from, x, to) > 0;
}

}  // namespace fwp
