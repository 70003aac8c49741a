#include "fwp/coords.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include "fwp/error.hpp"

namespace fwp {

const char* kind_name(CoordKind k) { return k == CoordKind::kShear ? "shear" : "diamond"; }

namespace {

double magnitude(double x) { return std::abs(x); }
double magnitude(const Rational& x) { return std::abs(static_cast<double>(x)); }

template <class T>
bool is_zero(const T& x, double tol) {
  if constexpr (std::is_same_v<T, double>) return std::abs(x) <= tol;
  else return tol > 0.0 ? magnitude(x) <= tol : x == 0;
}

}  // namespace

template <class T>
void BasicCoordFn<T>::set(const Edge& e, T v) {
  if (v == 0) {
    entries_.erase(e);
    return;
  }
  entries_.insert_or_assign(e, std::move(v));
}

ExactCoordFn to_exact(const CoordFn& f) {
  ExactCoordFn out(f.kind());
  for (const auto& [e, v] : f.entries()) out.set(e, Rational(v));
  return out;
}

CoordFn to_double(const ExactCoordFn& f) {
  CoordFn out(f.kind());
  for (const auto& [e, v] : f.entries()) out.set(e, static_cast<double>(v));
  return out;
}

template <class T>
T phi_at(const EdgeFunction<T>& theta, const Edge& e) {
  T s(0);
  for (const Vertex* v : {&e.a(), &e.b()}) {
    auto nb = fan_neighbours(*v, e);
    s += theta(nb[1]);
    s -= theta(nb[0]);
  }
  return s;
}

template <class T>
BasicCoordFn<T> phi(const BasicCoordFn<T>& theta) {
  // Scatter each diamond: with Q = (a, b, c, d) counterclockwise on the
  // diagonal (a, c), it adds +t on (a,b), (c,d) and -t on (b,c), (d,a).
  std::map<Edge, T> acc;
  for (const auto& [g, t] : theta.entries()) {
    Quad q = farey_quad(g);
    acc[Edge(q.a, q.b)] += t;
    acc[Edge(q.c, q.d)] += t;
    acc[Edge(q.b, q.c)] -= t;
    acc[Edge(q.d, q.a)] -= t;
  }
  BasicCoordFn<T> out(CoordKind::kShear);
  for (auto& [e, v] : acc) out.set(e, std::move(v));
  return out;
}

template <class T>
FanIndex<T>::FanIndex(const BasicCoordFn<T>& s, FanBase base) : base_(base) {
  std::map<Vertex, std::vector<std::pair<Integer, T>>> raw;
  for (const auto& [e, v] : s.entries()) {
    for (const Vertex* x : {&e.a(), &e.b()}) raw[*x].emplace_back(fan_index(*x, e, base), v);
  }
  for (auto& [v, items] : raw) {
    std::sort(items.begin(), items.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    Fan f;
    f.prefix.push_back(T(0));
    for (auto& [i, val] : items) {
      f.index.push_back(i);
      f.prefix.push_back(f.prefix.back() + val);
      f.value.push_back(std::move(val));
    }
    fans_.emplace(v, std::move(f));
  }
}

template <class T>
FanSums<T> FanIndex<T>::sums(const Vertex& v, const Integer& index) const {
  auto it = fans_.find(v);
  if (it == fans_.end()) return {T(0), T(0)};
  const Fan& f = it->second;
  size_t lo = std::lower_bound(f.index.begin(), f.index.end(), index) - f.index.begin();
  size_t hi = std::upper_bound(f.index.begin(), f.index.end(), index) - f.index.begin();
  return {f.prefix.back() - f.prefix[hi], f.prefix[lo]};
}

template <class T>
FanSums<T> FanIndex<T>::sums(const Vertex& v, const Edge& e) const {
  if (!touches(v)) return {T(0), T(0)};
  return sums(v, fan_index(v, e, base_));
}

template <class T>
T FanIndex<T>::total(const Vertex& v) const {
  auto it = fans_.find(v);
  return it == fans_.end() ? T(0) : it->second.prefix.back();
}

template <class T>
PsiFn<T>::PsiFn(const BasicCoordFn<T>& s, FanBase base)
    : index_(std::make_shared<const FanIndex<T>>(s, base)) {}

template <class T>
T PsiFn<T>::operator()(const Edge& e) const {
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
  }
  T acc(0);
  for (const Vertex* v : {&e.a(), &e.b()}) {
    if (!index_->touches(*v)) continue;
    FanSums<T> p = index_->sums(*v, e);
    acc += p.p_minus;
    acc -= p.p_plus;
  }
  acc /= 4;
  std::unique_lock lock(mu_);
  return cache_.emplace(e, acc).first->second;
}

template <class T>
BasicCoordFn<T> PsiFn<T>::materialize() const {
  double scale = 0.0;
  for (const auto& [v, f] : index_->fans()) {
    for (const auto& x : f.value) scale += magnitude(x);
  }
  const double tol = std::is_same_v<T, double> ? 1e-12 * (1.0 + scale) : 0.0;
  for (const auto& [v, f] : index_->fans()) {
    if (!is_zero(f.prefix.back(), tol))
      throw Error(ErrorCode::kNotInP, "shear function is not balanced at " + v.str() +
                                          "; Psi has infinite support");
  }
  BasicCoordFn<T> out(CoordKind::kDiamond);
  for (const auto& [v, f] : index_->fans()) {
    long long lo = static_cast<long long>(f.index.front());
    long long hi = static_cast<long long>(f.index.back());
    for (const Edge& e : fan(v, lo, hi, index_->base())) {
      T val = (*this)(e);
      if (!is_zero(val, tol)) out.set(e, val);
    }
  }
  return out;
}

template <class T>
FanSums<T> fan_partial_sums(const BasicCoordFn<T>& s, const Vertex& v, const Edge& e) {
  return FanIndex<T>(s).sums(v, e);
}

template <class T>
bool check_finite_balanced(const BasicCoordFn<T>& s, double tol) {
  FanIndex<T> idx(s);
  for (const auto& [v, f] : idx.fans()) {
    if (!is_zero(f.prefix.back(), tol)) return false;
  }
  return true;
}

template <class T>
std::pair<T, T> h_identity_check(const BasicCoordFn<T>& theta) {
  BasicCoordFn<T> s = phi(theta);
  FanIndex<T> idx(s);
  T lhs(0);
  for (const auto& [v, f] : idx.fans()) {
    Integer lo = f.index.front() - 1;
    Integer hi = f.index.back();
    for (Integer n = lo; n <= hi; ++n) {
      T p = idx.sums(v, n).p_plus;
      lhs += p * p;
    }
  }
  T rhs(0);
  std::set<std::pair<Edge, Edge>> pairs;
  for (const auto& [g, t] : theta.entries()) {
    rhs += 2 * t * t;
    for (const Vertex* v : {&g.a(), &g.b()}) {
      for (const Edge& h : fan_neighbours(*v, g)) pairs.insert(std::minmax(g, h));
    }
  }
  for (const auto& [e1, e2] : pairs) {
    T d = theta(e1) - theta(e2);
    rhs += d * d;
  }
  return {lhs, rhs};
}

double qs_ratio(const CoordFn& s, const Vertex& v, long long k, long long n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "qs_ratio needs n >= 0");
  std::vector<Edge> es = fan(v, k - n, k + n);
  auto sv = [&](long long i) { return s(es[static_cast<size_t>(i - (k - n))]); };
  double num = 0.0, acc = 0.0;
  for (long long j = 0; j <= n; ++j) {
    acc += sv(k + j);
    num += std::exp(acc);
  }
  double den = 1.0;
  acc = 0.0;
  for (long long j = 1; j <= n; ++j) {
    acc += sv(k - j);
    den += std::exp(-acc);
  }
  return num / den;
}

template <class T>
T l2_norm(const BasicCoordFn<T>& f) {
  T acc(0);
  for (const auto& [e, v] : f.entries()) acc += v * v;
  return acc;
}

TruncatedValue psi_truncated(const EdgeFunction<double>& s, const Edge& e, unsigned cutoff) {
  double acc = 0.0, tail = 0.0;
  const long long w = static_cast<long long>(cutoff) + 2;
  for (const Vertex* v : {&e.a(), &e.b()}) {
    long long self = static_cast<long long>(fan_index(*v, e));
    double plus = 0.0, minus = 0.0, edge_lo = 0.0, edge_hi = 0.0;
    bool seen_lo = false;
    long long lo = std::min(-w, self), hi = std::max(w, self);
    std::vector<Edge> es = fan(*v, lo, hi);
    for (long long n = lo; n <= hi; ++n) {
      const Edge& f = es[static_cast<size_t>(n - lo)];
      if (n == self || generation(f) > cutoff) continue;
      double x = s(f);
      if (n > self) {
        plus += x;
        edge_hi = std::abs(x);
      } else {
        minus += x;
        if (!seen_lo) edge_lo = std::abs(x);
        seen_lo = true;
      }
    }
    acc += minus - plus;
    tail = std::max({tail, edge_lo, edge_hi});
  }
  return {acc / 4.0, tail};
}

std::vector<double> l2_by_generation(const EdgeFunction<double>& f, unsigned max_gen) {
  std::vector<double> out;
  double acc = 0.0;
  for (unsigned g = 0; g <= max_gen; ++g) {
    for (const Edge& e : edges_of_generation(g)) {
      double x = f(e);
      acc += x * x;
    }
    out.push_back(acc);
  }
  return out;
}

ClassReport classify(const CoordFn& s, long long qs_n) {
  ClassReport r;
  r.finite_balanced = check_finite_balanced(s, 1e-12);
  r.l2_shear = l2_norm(s);
  if (r.finite_balanced) r.l2_diamond = l2_norm(psi(s));
  FanIndex<double> idx(s);
  for (const auto& [v, f] : idx.fans()) {
    double mx = 0.0, mn = 0.0;
    for (double p : f.prefix) {
      mx = std::max(mx, p);
      mn = std::min(mn, p);
    }
    r.max_fan_window_sum = std::max(r.max_fan_window_sum, mx - mn);
    long long lo = static_cast<long long>(f.index.front()) - qs_n;
    long long hi = static_cast<long long>(f.index.back()) + qs_n;
    for (long long k = lo; k <= hi; ++k) {
      for (long long n = 0; n <= qs_n; ++n) {
        double q = qs_ratio(s, v, k, n);
        r.qs_min = std::min(r.qs_min, q);
        r.qs_max = std::max(r.qs_max, q);
      }
    }
  }
  return r;
}

#define FWP_INSTANTIATE(T)                                                              \
  template class BasicCoordFn<T>;                                                       \
  template T phi_at<T>(const EdgeFunction<T>&, const Edge&);                           \
  template BasicCoordFn<T> phi<T>(const BasicCoordFn<T>&);                              \
  template class FanIndex<T>;                                                           \
  template class PsiFn<T>;                                                              \
  template FanSums<T> fan_partial_sums<T>(const BasicCoordFn<T>&, const Vertex&, const Edge&); \
  template bool check_finite_balanced<T>(const BasicCoordFn<T>&, double);               \
  template std::pair<T, T> h_identity_check<T>(const BasicCoordFn<T>&);                 \
  template T l2_norm<T>(const BasicCoordFn<T>&);

FWP_INSTANTIATE(double)
FWP_INSTANTIATE(Rational)

#undef FWP_INSTANTIATE

}  // namespace fwp
