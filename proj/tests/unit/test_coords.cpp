#include <cmath>
#include <random>

#include "doctest.h"
#include "fwp/coords.hpp"
#include "fwp/coords_io.hpp"
#include "fwp/develop.hpp"
#include "fwp/error.hpp"
#include "fwp/farey.hpp"
#include "oracle/farey_oracle.hpp"

using namespace fwp;
using doctest::Approx;

namespace {

oracle::Frac frac(const Vertex& v) {
  return {static_cast<long long>(v.num()), static_cast<long long>(v.den())};
}

Vertex vtx(long long p, long long q) { return Vertex(Integer(p), Integer(q)); }

CoordFn random_coords(CoordKind kind, std::mt19937_64& rng, size_t n, unsigned gen, double bound = 1.0) {
  const auto pool = edges_up_to(gen);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> val(-bound, bound);
  CoordFn f(kind);
  while (f.size() < n) f.set(pool[pick(rng)], val(rng));
  return f;
}

CoordFn delta(CoordKind kind, const Edge& e, double t = 1.0) {
  CoordFn f(kind);
  f.set(e, t);
  return f;
}

}  // namespace

TEST_SUITE("coords") {
  TEST_CASE("setting zero erases") {
    CoordFn f(CoordKind::kDiamond);
    f.set(Edge::root(), 2.0);
    f.add(Edge::root(), -2.0);
    CHECK(f.empty());
  }

  TEST_CASE("phi of a single diamond") {
    const CoordFn s = phi(delta(CoordKind::kDiamond, Edge::root()));
    CHECK(s.size() == 4);
    // Disk labels (1, i), (-1, -i) carry +1; (i, -1), (-i, 1) carry -1.
    CHECK(s(Edge(Vertex(-1), Vertex::infinity())) == 1.0);
    CHECK(s(Edge(Vertex(0), Vertex(1))) == 1.0);
    CHECK(s(Edge(Vertex(-1), Vertex(0))) == -1.0);
    CHECK(s(Edge(Vertex(1), Vertex::infinity())) == -1.0);
    CHECK(l2_norm(s) == 4.0);
    CHECK(phi(CoordFn(CoordKind::kDiamond)).empty());
  }

  TEST_CASE("constant diamond shear is in the kernel on interior edges") {
    CoordFn theta(CoordKind::kDiamond);
    for (const Edge& e : edges_up_to(5)) theta.set(e, 0.75);
    const CoordFn s = phi(theta);
    for (const Edge& e : edges_up_to(4)) CHECK(s(e) == 0.0);
  }

  TEST_CASE("phi matches cross ratios of the oracle development") {
    std::mt19937_64 rng(11);
    std::vector<oracle::Frac> points;
    for (const Edge& e : edges_up_to(6)) {
      points.push_back(frac(e.a()));
      points.push_back(frac(e.b()));
    }
    for (int trial = 0; trial < 5; ++trial) {
      const CoordFn theta = random_coords(CoordKind::kDiamond, rng, 5, 3);
      std::vector<std::pair<Edge, double>> order(theta.entries().begin(), theta.entries().end());
      std::stable_sort(order.begin(), order.end(),
                       [](const auto& x, const auto& y) { return generation(x.first) < generation(y.first); });
      std::vector<std::pair<std::array<oracle::Frac, 4>, double>> steps;
      for (const auto& [e, t] : order) steps.push_back({oracle::quad_of(frac(e.a()), frac(e.b())), t});
      const auto img = oracle::develop_points(steps, points);
      const CoordFn s = phi(theta);
      for (const Edge& e : edges_up_to(5)) {
        const auto q = oracle::quad_of(frac(e.a()), frac(e.b()));
        const double shear = oracle::log_cross_ratio(img.at(q[0]), img.at(q[1]), img.at(q[2]), img.at(q[3]));
        CHECK(std::abs(shear - s(e)) < 1e-10);
      }
    }
  }

  TEST_CASE("psi of a single shear") {
    const CoordFn s = delta(CoordKind::kShear, Edge::root());
    const PsiFn<double> psi_s(s);
    for (long long n = 1; n <= 5; ++n) {
      const Edge right = fan(Vertex::infinity(), n, n)[0], left = fan(Vertex::infinity(), -n, -n)[0];
      CHECK(std::abs(psi_s(right)) == 0.25);
      CHECK(psi_s(right) == -psi_s(left));
      const Edge r0 = fan(Vertex(0), n, n)[0], l0 = fan(Vertex(0), -n, -n)[0];
      CHECK(std::abs(psi_s(r0)) == 0.25);
      CHECK(psi_s(r0) == -psi_s(l0));
    }
    CHECK(psi_s(Edge(vtx(1, 2), Vertex(1))) == 0.0);
    CHECK_THROWS_AS(psi_s.materialize(), Error);
    for (const Edge& e : edges_up_to(6)) CHECK(phi_at<double>(psi_s.as_function(), e) == s(e));
    CHECK(psi(CoordFn(CoordKind::kShear)).empty());
  }

  TEST_CASE("psi is a right inverse of phi, exactly") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const ExactCoordFn theta = to_exact(random_coords(CoordKind::kDiamond, rng, 8, 5));
      const ExactCoordFn s = phi(theta);
      CHECK(check_finite_balanced(s));
      CHECK(psi(s) == theta);
      CHECK(phi(psi(s)) == s);
    }
  }

  TEST_CASE("psi does not depend on the fan base") {
    std::mt19937_64 rng(6);
    const CoordFn s = random_coords(CoordKind::kShear, rng, 6, 4);
    const PsiFn<double> lo(s), hi(s, FanBase::kLargerParent);
    for (const Edge& e : edges_up_to(6)) CHECK(lo(e) == Approx(hi(e)).epsilon(1e-14));
  }

  TEST_CASE("fan partial sums") {
    const CoordFn s = delta(CoordKind::kShear, Edge::root());
    const FanSums<double> at = fan_partial_sums(s, Vertex::infinity(), Edge(Vertex(-1), Vertex::infinity()));
    CHECK(at.p_plus == 1.0);
    CHECK(at.p_minus == 0.0);

    std::mt19937_64 rng(3);
    const CoordFn b = phi(random_coords(CoordKind::kDiamond, rng, 6, 4));
    const FanIndex<double> index(b);
    for (const auto& [v, f] : index.fans()) {
      for (long long n = -3; n <= 3; ++n) {
        const long long k = f.index.front().convert_to<long long>() + n;
        const Edge e = fan(v, k, k)[0];
        const Edge next = fan_neighbours(v, e)[1];
        const FanSums<double> here = index.sums(v, e), there = index.sums(v, next);
        CHECK(here.p_plus - there.p_plus == Approx(b(next)).epsilon(1e-13));
        CHECK(std::abs(here.p_plus + b(e) + here.p_minus) < 1e-13);
      }
      CHECK(std::abs(index.total(v)) < 1e-13);
    }
  }

  TEST_CASE("balance classification") {
    std::mt19937_64 rng(8);
    CHECK(check_finite_balanced(phi(random_coords(CoordKind::kDiamond, rng, 7, 5)), 1e-12));
    CHECK_FALSE(check_finite_balanced(delta(CoordKind::kShear, Edge::root())));
    CHECK(check_finite_balanced(CoordFn(CoordKind::kShear)));
    const ClassReport r = classify(phi(delta(CoordKind::kDiamond, Edge::root())));
    CHECK(r.finite_balanced);
    REQUIRE(r.l2_diamond.has_value());
    CHECK(*r.l2_diamond == Approx(1.0));
    CHECK(r.l2_shear == Approx(4.0));
    CHECK_FALSE(classify(delta(CoordKind::kShear, Edge::root())).finite_balanced);
  }

  TEST_CASE("sum of squares identity") {
    auto [lhs, rhs] = h_identity_check(delta(CoordKind::kDiamond, Edge::root()));
    CHECK(lhs == Approx(rhs));
    auto [z1, z2] = h_identity_check(CoordFn(CoordKind::kDiamond));
    CHECK(z1 == 0.0);
    CHECK(z2 == 0.0);
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 10; ++trial) {
      const CoordFn theta = random_coords(CoordKind::kDiamond, rng, 10, 5);
      auto [l, r] = h_identity_check(theta);
      CHECK(std::abs(l - r) <= 1e-12 * std::max(1.0, std::abs(r)));
      auto [le, re] = h_identity_check(to_exact(theta));
      CHECK(le == re);
    }
  }

  TEST_CASE("quasisymmetry ratios") {
    const CoordFn zero(CoordKind::kShear);
    for (long long n = 0; n <= 6; ++n) CHECK(qs_ratio(zero, Vertex::infinity(), 0, n) == Approx(1.0));
    const CoordFn d = delta(CoordKind::kShear, Edge::root());
    for (long long k = -4; k <= 4; ++k)
      for (long long n = 0; n <= 6; ++n) {
        const double r = qs_ratio(d, Vertex::infinity(), k, n);
        CHECK(r <= std::exp(1.0) + 1e-12);
        CHECK(r >= std::exp(-1.0) - 1e-12);
      }
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const CoordFn s = random_coords(CoordKind::kShear, rng, 5, 3, 0.3);
      double total = 0.0;
      for (const auto& [e, x] : s.entries()) total += std::abs(x);
      for (long long n = 0; n <= 5; ++n) {
        const double r = qs_ratio(s, Vertex(0), 0, n);
        CHECK(r <= std::exp(total) + 1e-12);
        CHECK(r >= std::exp(-total) - 1e-12);
      }
    }
    CHECK_THROWS_AS(qs_ratio(zero, Vertex(0), 0, -1), Error);
  }

  TEST_CASE("l2 norms") {
    CHECK(l2_norm(delta(CoordKind::kShear, Edge::root())) == 1.0);
    const auto d = delta(CoordKind::kShear, Edge::root(), 0.5);
    const auto sums = l2_by_generation([&](const Edge& e) { return d(e); }, 4);
    REQUIRE(sums.size() == 5);
    for (double x : sums) CHECK(x == 0.25);
  }

  TEST_CASE("truncated diamond shears of a smooth map are monotone and bounded") {
    const AngleHomeo h = perturbed_rotation(0.3);
    const auto theta = [&](const Edge& e) { return extract_diamond(h, e); };
    const auto sums = l2_by_generation(theta, 9);
    for (size_t n = 1; n < sums.size(); ++n) CHECK(sums[n] >= sums[n - 1]);
    CHECK(sums[9] - sums[8] < 1e-3 * sums[9]);
    CHECK(sums[9] < 1.01 * sums[5]);
  }

  TEST_CASE("truncated psi") {
    std::mt19937_64 rng(13);
    const CoordFn s = phi(random_coords(CoordKind::kDiamond, rng, 4, 3));
    const CoordFn theta = psi(s);
    for (const Edge& e : edges_up_to(4)) {
      const TruncatedValue t = psi_truncated([&](const Edge& f) { return s(f); }, e, 10);
      CHECK(std::abs(t.value - theta(e)) < 1e-13);
      CHECK(t.tail == 0.0);
    }
  }

  TEST_CASE("json round trip") {
    std::mt19937_64 rng(14);
    const CoordFn f = random_coords(CoordKind::kDiamond, rng, 12, 6);
    const CoordFn g = coords_from_json(coords_to_json(f));
    CHECK(g == f);
    CHECK(coords_to_json(g) == coords_to_json(f));
    const CoordFn inf = coords_from_json(
        R"({"kind":"shear","model":"H","entries":[{"edge":["0/1","inf"],"value":1.5}]})");
    CHECK(inf.kind() == CoordKind::kShear);
    CHECK(inf(Edge::root()) == 1.5);
  }

  TEST_CASE("json errors") {
    auto code = [](const char* text) {
      try {
        coords_from_json(text);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::kOk;
    };
    CHECK(code(R"({"kind":"shear","entries":[)") == ErrorCode::kParse);
    CHECK(code(R"({"kind":"other","entries":[]})") == ErrorCode::kParse);
    CHECK(code(R"({"kind":"shear","entries":[],"extra":1})") == ErrorCode::kParse);
    CHECK(code(R"({"kind":"shear","entries":[{"edge":["0/1","2/1"],"value":1}]})") == ErrorCode::kParse);
    CHECK(code(R"({"kind":"shear","entries":[{"edge":["0/1","1/0"],"value":1},{"edge":["inf","0"],"value":2}]})") ==
          ErrorCode::kParse);
    CHECK(code(R"({"kind":"shear","entries":[{"edge":["0/1","1/0"],"value":"x"}]})") == ErrorCode::kParse);
    CHECK_THROWS_AS(load_coords("/nonexistent/coords.json"), Error);
  }
}
