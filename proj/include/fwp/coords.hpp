/// \file coords.hpp
/// Sparse shear and diamond-shear functions on Farey edges and the linear
/// maps Phi (diamond -> shear) and Psi (shear -> diamond).
///
/// Dual edges are identified with edges throughout. Every template here is
/// explicitly instantiated for double and for the exact Rational type.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fwp/farey.hpp"

namespace fwp {

using Rational = boost::multiprecision::cpp_rational;

enum class CoordKind { kShear, kDiamond };

const char* kind_name(CoordKind k);

template <class T>
class BasicCoordFn {
 public:
  using value_type = T;

  explicit BasicCoordFn(CoordKind kind = CoordKind::kShear) : kind_(kind) {}

  CoordKind kind() const { return kind_; }
  T operator()(const Edge& e) const {
    auto it = entries_.find(e);
    return it == entries_.end() ? T(0) : it->second;
  }
  /// Assigning zero removes the entry.
  void set(const Edge& e, T v);
  void add(const Edge& e, const T& v) { set(e, (*this)(e) + v); }

  const std::map<Edge, T>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const BasicCoordFn& x, const BasicCoordFn& y) {
    return x.kind_ == y.kind_ && x.entries_ == y.entries_;
  }

 private:
  CoordKind kind_;
  std::map<Edge, T> entries_;
};

using CoordFn = BasicCoordFn<double>;
using ExactCoordFn = BasicCoordFn<Rational>;

/// Every double is a dyadic rational, so this conversion is exact.
ExactCoordFn to_exact(const CoordFn& f);
CoordFn to_double(const ExactCoordFn& f);

template <class T>
using EdgeFunction = std::function<T(const Edge&)>;

/// Phi at a single edge for any edge-queryable diamond function:
/// the sum over both endpoints v of theta(next in fan(v)) - theta(prev).
template <class T>
T phi_at(const EdgeFunction<T>& theta, const Edge& e);

/// Phi of a finitely supported diamond function (finite support result).
template <class T>
BasicCoordFn<T> phi(const BasicCoordFn<T>& theta);

/// One-sided fan tails p_{s,v}(e+) and p_{s,v}(e-).
template <class T>
struct FanSums {
  T p_plus;
  T p_minus;
};

/// Support of a finite shear function grouped by vertex, with fan indices
/// and prefix sums. Immutable after construction.
template <class T>
class FanIndex {
 public:
  explicit FanIndex(const BasicCoordFn<T>& s, FanBase base = FanBase::kSmallerParent);

  FanBase base() const { return base_; }
  /// Tails at v for the fan edge with the given index.
  FanSums<T> sums(const Vertex& v, const Integer& index) const;
  FanSums<T> sums(const Vertex& v, const Edge& e) const;
  /// Total shear in fan(v).
  T total(const Vertex& v) const;
  bool touches(const Vertex& v) const { return fans_.count(v) != 0; }

  struct Fan {
    std::vector<Integer> index;  // increasing
    std::vector<T> value;
    std::vector<T> prefix;  // prefix[k] = value[0] + ... + value[k-1]
  };
  const std::map<Vertex, Fan>& fans() const { return fans_; }

 private:
  FanBase base_;
  std::map<Vertex, Fan> fans_;
};

/// Lazy Psi(s) for a finitely supported shear function. Queries are
/// memoized; concurrent queries are safe and idempotent.
template <class T>
class PsiFn {
 public:
  explicit PsiFn(const BasicCoordFn<T>& s, FanBase base = FanBase::kSmallerParent);

  T operator()(const Edge& e) const;
  EdgeFunction<T> as_function() const {
    return [this](const Edge& e) { return (*this)(e); };
  }
  const FanIndex<T>& fan_index() const { return *index_; }

  /// Finite support of Psi(s). Throws Error(kNotInP) unless s is balanced,
  /// since otherwise the support is infinite.
  BasicCoordFn<T> materialize() const;

 private:
  std::shared_ptr<const FanIndex<T>> index_;
  mutable std::shared_mutex mu_;
  mutable std::map<Edge, T> cache_;
};

template <class T>
BasicCoordFn<T> psi(const BasicCoordFn<T>& s) {
  return PsiFn<T>(s).materialize();
}

template <class T>
FanSums<T> fan_partial_sums(const BasicCoordFn<T>& s, const Vertex& v, const Edge& e);

/// True iff every fan sums to zero (|sum| <= tol for doubles).
template <class T>
bool check_finite_balanced(const BasicCoordFn<T>& s, double tol = 0.0);

/// (sum_v sum_e p_{s,v}(e+)^2, 2 sum theta^2 + sum over fan-adjacent pairs
/// of (theta(e) - theta(e'))^2) for s = Phi(theta).
template <class T>
std::pair<T, T> h_identity_check(const BasicCoordFn<T>& theta);

/// The quasisymmetry ratio s(k, n; v) of exponential fan sums.
double qs_ratio(const CoordFn& s, const Vertex& v, long long k, long long n);

template <class T>
T l2_norm(const BasicCoordFn<T>& f);

/// Psi at e for an arbitrary edge-queryable shear function, summing only fan
/// edges of generation <= cutoff. tail is the largest |s| on the outermost
/// summed fan edges, a crude indicator of how much was dropped.
struct TruncatedValue {
  double value;
  double tail;
};
TruncatedValue psi_truncated(const EdgeFunction<double>& s, const Edge& e, unsigned cutoff);

/// Partial sums of f(e)^2 over generations 0..max_gen.
std::vector<double> l2_by_generation(const EdgeFunction<double>& f, unsigned max_gen);

struct ClassReport {
  bool finite_balanced = false;
  double l2_shear = 0.0;
  std::optional<double> l2_diamond;  // exact for finite balanced shears
  double max_fan_window_sum = 0.0;
  double qs_min = 1.0;
  double qs_max = 1.0;
};

/// Diagnostics for a finite shear function. qs ratios are sampled for
/// n in [0, qs_n] at every support fan position.
ClassReport classify(const CoordFn& s, long long qs_n = 8);

}  // namespace fwp
