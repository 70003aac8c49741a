#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fwp/coords.hpp"
#include "fwp/develop.hpp"
#include "fwp/error.hpp"
#include "fwp/farey.hpp"
#include "oracle/farey_oracle.hpp"

using namespace fwp;
using doctest::Approx;

namespace {

const Complex kI(0.0, 1.0);

oracle::Frac frac(const Vertex& v) {
  return {static_cast<long long>(v.num()), static_cast<long long>(v.den())};
}

Vertex vtx(long long p, long long q) { return Vertex(Integer(p), Integer(q)); }

CoordFn random_diamond(std::mt19937_64& rng, size_t n, unsigned gen) {
  const auto pool = edges_up_to(gen);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  CoordFn f(CoordKind::kDiamond);
  while (f.size() < n) f.set(pool[pick(rng)], val(rng));
  return f;
}

CoordFn delta(CoordKind kind, const Edge& e, double t = 1.0) {
  CoordFn f(kind);
  f.set(e, t);
  return f;
}

std::vector<Complex> circle_samples(size_t n) {
  std::vector<Complex> z;
  for (size_t k = 0; k < n; ++k) z.push_back(std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.37) / n));
  return z;
}

const std::array<Complex, 4> kStandard{Complex(1.0, 0.0), kI, Complex(-1.0, 0.0), -kI};

}  // namespace

TEST_SUITE("develop") {
  TEST_CASE("identity") {
    const PiecewiseMobiusHomeo id;
    for (Complex z : circle_samples(16)) {
      CHECK(std::abs(id(z) - z) < 1e-15);
      CHECK(id.derivative(z) == Approx(1.0));
    }
    CHECK(develop_diamond(CoordFn(CoordKind::kDiamond)).breakpoints().empty());
  }

  TEST_CASE("single shear in the half-plane picture") {
    for (double t : {-0.7, 0.4, 1.5}) {
      const PiecewiseMobiusHomeo h = single_shear_homeo(Complex(-1.0, 0.0), Complex(1.0, 0.0), t);
      for (double x : {-3.0, -0.5, 0.25, 1.0, 4.0}) {
        const double y = cayley(h(cayley_inv(Complex(x, 0.0)))).real();
        CHECK(y == Approx(x <= 0.0 ? x : std::exp(t) * x).epsilon(1e-12));
      }
      // At -1 (the point 0 of the line) the sheared side starts.
      CHECK(h.derivative(Vertex(0), Side::kPlus) == Approx(std::exp(t)));
      CHECK(h.derivative(Vertex(0), Side::kMinus) == Approx(1.0));
      CHECK(extract_shear(h, Edge::root()) == Approx(t).epsilon(1e-12));
      for (const Edge& e : edges_up_to(4))
        if (!e.is_root()) CHECK(std::abs(extract_shear(h, e)) < 1e-12);
    }
    const PiecewiseMobiusHomeo zero = single_shear_homeo(Complex(-1.0, 0.0), Complex(1.0, 0.0), 0.0);
    for (Complex z : circle_samples(16)) CHECK(std::abs(zero(z) - z) < 1e-15);
  }

  TEST_CASE("standard diamond") {
    for (double t : {0.25, 0.5, 1.0}) {
      const PiecewiseMobiusHomeo h = single_diamond_homeo(kStandard, t);
      for (Complex q : kStandard) CHECK(std::abs(h(q) - q) < 1e-14);
      CHECK(h.derivative(Complex(1.0, 0.0)) == Approx(std::exp(t)));
      CHECK(h.derivative(Complex(-1.0, 0.0)) == Approx(std::exp(t)));
      CHECK(h.derivative(kI) == Approx(std::exp(-t)));
      CHECK(h.derivative(-kI) == Approx(std::exp(-t)));
      CHECK(h.max_c1_defect() < 1e-12);
      CHECK(h.max_discontinuity() < 1e-14);
    }
    for (Complex z : circle_samples(16)) CHECK(std::abs(single_diamond_homeo(kStandard, 0.0)(z) - z) < 1e-15);
  }

  TEST_CASE("standard diamonds form a one-parameter group") {
    const double s = 0.3, t = 0.45;
    const PiecewiseMobiusHomeo hs = single_diamond_homeo(kStandard, s), ht = single_diamond_homeo(kStandard, t),
                               hst = single_diamond_homeo(kStandard, s + t);
    for (Complex z : circle_samples(64)) CHECK(std::abs(hs(ht(z)) - hst(z)) < 1e-10);
  }

  TEST_CASE("degenerate quads are rejected") {
    CHECK_THROWS_AS(single_diamond_homeo({kStandard[0], kStandard[3], kStandard[2], kStandard[1]}, 1.0), Error);
    CHECK_THROWS_AS(single_diamond_homeo({kStandard[0], kStandard[0], kStandard[2], kStandard[3]}, 1.0), Error);
  }

  TEST_CASE("developing one diamond on the root gives the standard map") {
    const PiecewiseMobiusHomeo h = develop_diamond(delta(CoordKind::kDiamond, Edge::root(), 0.8));
    const PiecewiseMobiusHomeo s = single_diamond_homeo(kStandard, 0.8);
    for (Complex z : circle_samples(64)) CHECK(std::abs(h(z) - s(z)) < 1e-13);
  }

  TEST_CASE("frozen vertex images of the unit diamond on the root") {
    // From the pointwise oracle development.
    const PiecewiseMobiusHomeo h = develop_diamond(delta(CoordKind::kDiamond, Edge::root(), 1.0));
    const std::vector<std::pair<Vertex, Complex>> expect{
        {vtx(-1, 3), {-0.50160221153549744, 0.86509838826731045}},
        {vtx(1, 2), {-0.30340146137410895, -0.95286281973642728}},
        {vtx(3, 2), {0.16726112493933554, -0.98591263106019078}},
        {Vertex(2), {0.30340146137410895, -0.95286281973642728}},
        {Vertex(1), -kI},
        {Vertex(-1), kI},
        {Vertex(0), {-1.0, 0.0}},
        {Vertex::infinity(), {1.0, 0.0}},
    };
    for (const auto& [v, w] : expect) CHECK(std::abs(h(v) - w) < 1e-13);
  }

  TEST_CASE("random developments agree with the pointwise oracle") {
    std::mt19937_64 rng(7);
    std::vector<oracle::Frac> points;
    for (const Edge& e : edges_up_to(6)) {
      points.push_back(frac(e.a()));
      points.push_back(frac(e.b()));
    }
    for (int trial = 0; trial < 10; ++trial) {
      const CoordFn theta = random_diamond(rng, 6, 4);
      std::vector<std::pair<Edge, double>> order(theta.entries().begin(), theta.entries().end());
      std::stable_sort(order.begin(), order.end(),
                       [](const auto& x, const auto& y) { return generation(x.first) < generation(y.first); });
      std::vector<std::pair<std::array<oracle::Frac, 4>, double>> steps;
      for (const auto& [e, t] : order) steps.push_back({oracle::quad_of(frac(e.a()), frac(e.b())), t});
      const auto img = oracle::develop_points(steps, points);
      const PiecewiseMobiusHomeo h = develop_diamond(theta);
      for (const auto& [f, z] : img) {
        const Vertex v = f.q == 0 ? Vertex::infinity() : vtx(f.p, f.q);
        CHECK(std::abs(h(v) - z) < 1e-11);
      }
    }
  }

  TEST_CASE("developed maps are C1 and recover their diamond shears") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 5; ++trial) {
      const CoordFn theta = random_diamond(rng, 15, 5);
      const PiecewiseMobiusHomeo h = develop_diamond(theta);
      CHECK(h.exact());
      CHECK(h.max_c1_defect() < 1e-9);
      const CoordFn s = phi(theta);
      for (const Edge& e : edges_up_to(6)) {
        CHECK(std::abs(extract_diamond(h, e) - theta(e)) < 1e-9);
        CHECK(std::abs(extract_shear(h, e) - s(e)) < 1e-9);
      }
    }
  }

  TEST_CASE("vertex development") {
    const VertexImageMap id = develop_vertices(CoordFn(CoordKind::kShear), 6);
    for (const auto& [v, z] : id.images) CHECK(std::abs(z - v.disk_point()) < 1e-14);

    for (double t : {-1.0, 0.5, 2.0}) {
      const VertexImageMap h = develop_vertices(delta(CoordKind::kShear, Edge::root(), t), 4);
      CHECK(std::abs(h(Vertex(1)) - cayley_inv(Complex(std::exp(t), 0.0))) < 1e-14);
      CHECK(extract_shear(h, Edge::root()) == Approx(t).epsilon(1e-12));
    }

    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 5; ++trial) {
      const CoordFn theta = random_diamond(rng, 6, 4);
      const CoordFn s = phi(theta);
      const VertexImageMap vm = develop_vertices(s, 7);
      const PiecewiseMobiusHomeo h = develop_diamond(psi(s));
      for (const auto& [v, z] : vm.images) CHECK(std::abs(z - h(v)) < 1e-10);
    }

    CHECK_THROWS_AS(develop_vertices(delta(CoordKind::kShear, Edge::root(), 800.0), 1), Error);
    CHECK_THROWS_AS(develop_vertices(CoordFn(CoordKind::kShear), 3)(vtx(1, 5)), Error);
  }

  TEST_CASE("shear extraction") {
    const PiecewiseMobiusHomeo id;
    for (const Edge& e : edges_up_to(5)) {
      CHECK(std::abs(extract_shear(id, e)) < 1e-12);
      CHECK(std::abs(extract_diamond(id, e)) < 1e-12);
      CHECK(std::abs(log_lambda(id, e)) < 1e-12);
    }
    for (double t : {0.25, 1.0}) {
      const PiecewiseMobiusHomeo h = develop_diamond(delta(CoordKind::kDiamond, Edge::root(), t));
      CHECK(extract_diamond(h, Edge::root()) == Approx(t).epsilon(1e-12));
      CHECK(log_lambda(h, Edge::root()) == Approx(-t).epsilon(1e-12));
    }
    const PiecewiseMobiusHomeo corner = single_shear_homeo(Complex(-1.0, 0.0), Complex(1.0, 0.0), 1.0);
    CHECK_THROWS_AS(extract_diamond(corner, Edge(Vertex(0), Vertex(1))), Error);
  }

  TEST_CASE("line extraction") {
    for (const Edge& e : edges_up_to(4)) {
      if (e.b().is_infinite()) continue;
      CHECK(std::abs(extract_shear_line([](double x) { return 3.0 * x - 2.0; }, e)) < 1e-12);
    }
  }

  TEST_CASE("ford circles of the identity") {
    const Decoration d = decoration(PiecewiseMobiusHomeo(), 5);
    for (const auto& [v, size] : d.size) {
      CHECK(size == Approx(ford_diameter(v)).epsilon(1e-12));
      if (!v.is_infinite()) CHECK(d.position.at(v) == Approx(v.to_double()).epsilon(1e-12));
    }
  }

  TEST_CASE("smooth maps") {
    const AngleHomeo h = perturbed_rotation(0.2);
    for (double x : {0.0, 1.0, 2.5}) {
      CHECK(h.lift(x) == Approx(x + 0.2 * std::sin(x)));
      CHECK(h.derivative(x) == Approx(1.0 + 0.2 * std::cos(x)));
    }
    AngleHomeo numeric{h.lift, nullptr};
    for (double x : {0.3, 2.0, 5.0}) CHECK(numeric.derivative(x) == Approx(h.derivative(x)).epsilon(1e-9));
    for (const Edge& e : edges_up_to(3)) CHECK(std::isfinite(extract_shear(h, e)));
  }

  TEST_CASE("samples round trip") {
    const PiecewiseMobiusHomeo h = develop_diamond(delta(CoordKind::kDiamond, Edge::root(), 0.5));
    const auto samples = sample_homeo(h, 256);
    REQUIRE(samples.size() == 256);
    for (size_t k = 1; k < samples.size(); ++k) CHECK(samples[k].second > samples[k - 1].second);
    const auto back = parse_samples_csv(samples_csv(samples));
    REQUIRE(back.size() == samples.size());
    for (size_t k = 0; k < back.size(); ++k) {
      CHECK(back[k].first == samples[k].first);
      CHECK(back[k].second == samples[k].second);
    }
    const AngleHomeo g = homeo_from_samples(back);
    CHECK(g.lift(samples[10].first) == Approx(samples[10].second));
    CHECK_THROWS_AS(parse_samples_csv("angle_in,angle_out\n0,x\n"), Error);

    const auto id = sample_homeo(PiecewiseMobiusHomeo(), 32);
    for (const auto& [x, y] : id) CHECK(y == Approx(x).epsilon(1e-14));
  }
}
