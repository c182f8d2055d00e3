#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "htl/quadrature.hpp"

using namespace htl;

TEST_CASE("gauss-legendre 16 integrates polynomials up to degree 31 exactly") {
  const NodeSet& gl = gauss_legendre(16);
  REQUIRE(gl.size() == 16);
  for (int deg = 0; deg <= 31; ++deg) {
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.size(); ++i)
      acc += gl.w[i] * std::pow(gl.x[i], deg);
    const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
    CHECK(std::abs(acc - exact) < 1e-14);
  }
}

TEST_CASE("gauss-legendre nodes are symmetric and weights positive") {
  for (int p : {2, 5, 16, 40}) {
    const NodeSet& gl = gauss_legendre(p);
    REQUIRE(gl.size() == std::size_t(p));
    double wsum = 0.0;
    for (int i = 0; i < p; ++i) {
      CHECK(gl.w[i] > 0.0);
      CHECK(gl.x[i] == doctest::Approx(-gl.x[p - 1 - i]).epsilon(1e-15));
      CHECK(gl.w[i] == doctest::Approx(gl.w[p - 1 - i]).epsilon(1e-15));
      if (i > 0) CHECK(gl.x[i] > gl.x[i - 1]);
      wsum += gl.w[i];
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(gauss_legendre(1), std::invalid_argument);
}

TEST_CASE("panel_nodes maps the rule onto [a, b]") {
  NodeSet ns = panel_nodes(2.0, 5.0);
  double acc = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    CHECK(ns.x[i] > 2.0);
    CHECK(ns.x[i] < 5.0);
    acc += ns.w[i] * ns.x[i] * ns.x[i];
    wsum += ns.w[i];
  }
  CHECK(acc == doctest::Approx((125.0 - 8.0) / 3.0).epsilon(1e-14));
  CHECK(wsum == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("graded_mesh tiles the interval and respects ratio and floor") {
  const double a = 0.0, b = 3.0, floor_rel = 1e-10;

  SUBCASE("toward a, closed") {
    std::vector<Panel> mesh = graded_mesh(a, b, true, 0.5, floor_rel, true);
    // Emitted coarse-to-fine; the closing sliver [a, floor] comes last.
    CHECK(mesh.front().hi == b);
    CHECK(mesh.back().lo == a);
    CHECK(mesh.back().hi <= floor_rel * (b - a) * (1.0 + 1e-12));
    double covered = 0.0;
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
      CHECK(mesh[i].lo == doctest::Approx(mesh[i + 1].hi).epsilon(1e-15));
      covered += mesh[i].hi - mesh[i].lo;
    }
    covered += mesh.back().hi - mesh.back().lo;
    CHECK(covered == doctest::Approx(b - a).epsilon(1e-12));
    // Each interior boundary is half the previous one.
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i)
      CHECK(mesh[i].lo == doctest::Approx(0.5 * mesh[i].hi).epsilon(1e-15));
  }

  SUBCASE("toward b mirrors toward a") {
    std::vector<Panel> ma = graded_mesh(a, b, true, 0.5, floor_rel, true);
    std::vector<Panel> mb = graded_mesh(a, b, false, 0.5, floor_rel, true);
    REQUIRE(ma.size() == mb.size());
    for (std::size_t i = 0; i < ma.size(); ++i) {
      CHECK(mb[i].lo == doctest::Approx(b - ma[i].hi).epsilon(1e-15));
      CHECK(mb[i].hi == doctest::Approx(b - ma[i].lo).epsilon(1e-15));
    }
  }

  SUBCASE("open mesh drops the sliver") {
    std::vector<Panel> closed = graded_mesh(a, b, true, 0.5, floor_rel, true);
    std::vector<Panel> open = graded_mesh(a, b, true, 0.5, floor_rel, false);
    CHECK(open.size() + 1 == closed.size());
    CHECK(open.back().lo > a);
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(graded_mesh(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(graded_mesh(0.0, 1.0, true, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(graded_mesh(0.0, 1.0, true, 0.5, 2.0),
                    std::invalid_argument);
  }
}

TEST_CASE("graded quadrature integrates the log singularity") {
  // int_0^1 ln x dx = -1; the integrand is integrable but unbounded at 0.
  std::vector<Panel> mesh = graded_mesh(0.0, 1.0, true);
  double v = integrate(mesh, [](double x) { return std::log(x); });
  CHECK(v == doctest::Approx(-1.0).epsilon(1e-12));

  // int_0^1 du / (1 - ln u): bounded, slowly varying near 0.
  double w = integrate(mesh, [](double u) { return 1.0 / (1.0 - std::log(u)); });
  CHECK(w == doctest::Approx(0.596347362323194).epsilon(1e-12));
}

TEST_CASE("halving the mesh floor is a Cauchy test for the log integral") {
  auto value = [](double floor_rel) {
    std::vector<Panel> mesh = graded_mesh(0.0, 1.0, true, 0.5, floor_rel, true);
    return integrate(mesh, [](double x) { return std::log(x); });
  };
  double v14 = value(1e-14);
  double v07 = value(0.5e-14);
  CHECK(std::abs(v14 - v07) < 1e-8);
}

TEST_CASE("composite_nodes concatenates panel rules in order") {
  std::vector<Panel> mesh = graded_mesh(0.0, 1.0, true, 0.5, 1e-3, true);
  NodeSet ns = composite_nodes(mesh);
  REQUIRE(ns.size() == mesh.size() * 16);
  double wsum = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) wsum += ns.w[i];
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  // node block i sits inside panel i
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    for (int i = 0; i < 16; ++i) {
      double x = ns.x[p * 16 + i];
      CHECK(x > mesh[p].lo);
      CHECK(x < mesh[p].hi);
    }
  }
}
