#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "htl/hardy.hpp"
#include "htl/random.hpp"
#include "htl/serialize.hpp"
#include "htl/symbol.hpp"

using htl::cplx;
using htl::CirclePoint;
using htl::FourierCoeffs;

namespace {

// Evaluate a coefficient vector as a trigonometric polynomial.
cplx eval_poly(const FourierCoeffs& c, double theta) {
  cplx acc(0.0, 0.0);
  for (int k = -c.N; k <= c.N; ++k)
    acc += c.at(k) * std::polar(1.0, k * theta);
  return acc;
}

FourierCoeffs random_coeffs(int N, htl::Rng& rng) {
  FourierCoeffs c(N);
  for (int k = -N; k <= N; ++k)
    c.at(k) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return c;
}

}  // namespace

TEST_CASE("plain transform is exact for band-limited data") {
  auto f3 = [](const CirclePoint& p) { return std::polar(1.0, 3.0 * p.theta); };
  auto g = htl::sample_circle(f3, 64, 0.0);
  auto c = htl::fourier_coeffs(g, 8);
  for (int k = -8; k <= 8; ++k) {
    cplx want = (k == 3) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    CHECK(std::abs(c.at(k) - want) < 1e-12);
  }

  auto g5 = htl::sample_circle(
      [](const CirclePoint&) { return cplx(5.0, 0.0); }, 32, 0.0);
  auto c5 = htl::fourier_coeffs(g5, 4);
  CHECK(std::abs(c5.at(0) - cplx(5.0, 0.0)) < 1e-12);
  for (int k = 1; k <= 4; ++k) {
    CHECK(std::abs(c5.at(k)) < 1e-13);
    CHECK(std::abs(c5.at(-k)) < 1e-13);
  }
}

TEST_CASE("refined transform recovers the analytic factor's Taylor series") {
  auto g = htl::sample_circle(
      [](const CirclePoint& p) { return htl::a_plus_circle(p.vartheta); },
      1 << 16, 1e-5);
  auto c = htl::fourier_coeffs(
      g, 64, [](const CirclePoint& p) { return htl::a_plus_circle(p.vartheta); });
  // a+(z) = 1 - Log(1+z) has Taylor coefficients 1, -1, 1/2, -1/3, 1/4, ...
  for (int k = 0; k <= 32; ++k) {
    double want = (k == 0) ? 1.0 : (k % 2 == 0 ? 1.0 : -1.0) / k;
    CHECK(std::abs(c.at(k) - cplx(want, 0.0)) < 1e-6);
  }
  // The analytic factor has no co-analytic part.
  for (int k = 1; k <= 32; ++k) CHECK(std::abs(c.at(-k)) < 1e-6);
}

TEST_CASE("riesz projections split and annihilate") {
  htl::Rng rng(7);
  auto c = random_coeffs(12, rng);
  auto p = htl::riesz_P(c);
  auto q = htl::riesz_Q(c);
  for (int k = -12; k <= 12; ++k) {
    // P + Q reassembles the input exactly.
    CHECK(p.at(k) + q.at(k) == c.at(k));
    // Index 0 belongs to P.
    if (k >= 0) {
      CHECK(p.at(k) == c.at(k));
      CHECK(q.at(k) == cplx(0.0, 0.0));
    } else {
      CHECK(p.at(k) == cplx(0.0, 0.0));
      CHECK(q.at(k) == c.at(k));
    }
  }
  // Projections are idempotent and mutually annihilating.
  auto pp = htl::riesz_P(p);
  auto pq = htl::riesz_P(q);
  for (int k = -12; k <= 12; ++k) {
    CHECK(pp.at(k) == p.at(k));
    CHECK(pq.at(k) == cplx(0.0, 0.0));
  }
}

TEST_CASE("coefficients of a pointwise product are the convolution") {
  htl::Rng rng(11);
  auto a = random_coeffs(5, rng);
  auto b = random_coeffs(4, rng);
  auto prod = [&](const CirclePoint& p) {
    return eval_poly(a, p.theta) * eval_poly(b, p.theta);
  };
  auto g = htl::sample_circle(prod, 64, 0.0);
  auto c = htl::fourier_coeffs(g, 9);
  for (int k = -9; k <= 9; ++k) {
    cplx want(0.0, 0.0);
    for (int j = -5; j <= 5; ++j) {
      int m = k - j;
      if (m >= -4 && m <= 4) want += a.at(j) * b.at(m);
    }
    CHECK(std::abs(c.at(k) - want) < 1e-10);
  }
}

TEST_CASE("real-valued data has Hermitian coefficients") {
  auto g = htl::sample_circle(
      [](const CirclePoint& p) {
        return cplx(1.0 + 0.5 * std::cos(2.0 * p.theta) - 0.3 * std::sin(5.0 * p.theta),
                    0.0);
      },
      128, 0.0);
  auto c = htl::fourier_coeffs(g, 16);
  for (int k = 0; k <= 16; ++k)
    CHECK(std::abs(c.at(-k) - std::conj(c.at(k))) < 1e-13);
}

TEST_CASE("winding number counts argument turns") {
  auto make = [](int k, double scale) {
    return htl::sample_circle(
        [k, scale](const CirclePoint& p) {
          return scale * std::polar(1.0, k * p.theta) + cplx(0.0, 0.0);
        },
        4096, 0.0);
  };
  CHECK(htl::winding_number(make(0, 1.0)) == 0);
  CHECK(htl::winding_number(make(1, 1.0)) == 1);
  CHECK(htl::winding_number(make(-2, 1.0)) == -2);
  // Positive scaling does not move the argument.
  CHECK(htl::winding_number(make(1, 137.0)) == 1);
  CHECK(htl::winding_number(make(-2, 1e-3)) == -2);

  SUBCASE("offset curve that does not enclose the origin") {
    auto g = htl::sample_circle(
        [](const CirclePoint& p) {
          return cplx(3.0, 0.0) + std::polar(1.0, p.theta);
        },
        4096, 0.0);
    CHECK(htl::winding_number(g) == 0);
  }
}

TEST_CASE("co-analytic factor coefficients mirror the analytic ones") {
  auto refine = [](const htl::CircleFn& f) {
    auto g = htl::sample_circle(f, 1 << 14, 1e-4);
    return htl::fourier_coeffs(g, 32, f);
  };
  auto cp = refine([](const CirclePoint& p) { return htl::a_plus_circle(p.vartheta); });
  auto cm = refine([](const CirclePoint& p) { return htl::a_minus_circle(p.vartheta); });
  // a-(z) = conj(a+(z)) on the circle, so (a-)_{-k} = conj((a+)_k).
  for (int k = 0; k <= 32; ++k)
    CHECK(std::abs(cm.at(-k) - std::conj(cp.at(k))) < 1e-5);
}

TEST_CASE("toeplitz truncation layout") {
  SUBCASE("constant symbol gives the identity") {
    FourierCoeffs c(3);
    c.at(0) = cplx(1.0, 0.0);
    auto t = htl::toeplitz_truncation(c, 4);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        CHECK(t.entry(j, k) == (j == k ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));
  }
  SUBCASE("shift symbol fills the subdiagonal") {
    FourierCoeffs c(3);
    c.at(1) = cplx(1.0, 0.0);
    auto t = htl::toeplitz_truncation(c, 4);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        CHECK(t.entry(j, k) == (j == k + 1 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));
  }
  SUBCASE("entries read c_{j-k}") {
    htl::Rng rng(3);
    auto c = random_coeffs(2, rng);
    auto t = htl::toeplitz_truncation(c, 3);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(t.entry(j, k) == c.at(j - k));
  }
  SUBCASE("insufficient coefficients name the required index") {
    FourierCoeffs c(2);
    CHECK_THROWS_WITH_AS(htl::toeplitz_truncation(c, 4),
                         doctest::Contains("need N >= 3"),
                         std::invalid_argument);
    CHECK_THROWS_AS(htl::toeplitz_truncation(c, 0), std::invalid_argument);
  }
}

TEST_CASE("h1 surrogate is the boundary L1 mean") {
  auto one = htl::sample_circle(
      [](const CirclePoint&) { return cplx(1.0, 0.0); }, 64, 0.0);
  CHECK(htl::h1_surrogate(one) == doctest::Approx(1.0).epsilon(1e-14));

  auto wave = htl::sample_circle(
      [](const CirclePoint& p) { return std::polar(1.0, 7.0 * p.theta); },
      128, 0.0);
  CHECK(htl::h1_surrogate(wave) == doctest::Approx(1.0).epsilon(1e-14));

  // Flagging every sample leaves nothing to average over.
  htl::GridFunction empty;
  empty.n = 16;
  empty.window = 10.0;
  empty.values.assign(16, cplx(1.0, 0.0));
  empty.flagged.assign(16, 1);
  CHECK_THROWS_AS(htl::h1_surrogate(empty), std::domain_error);
}

TEST_CASE("sampling failures report the sample index") {
  // With no exclusion window, sample 0 sits at z = -1 where the analytic
  // factor's boundary value is singular.
  CHECK_THROWS_WITH_AS(
      htl::sample_circle(
          [](const CirclePoint& p) { return htl::a_plus_circle(p.vartheta); },
          16, 0.0),
      doctest::Contains("sample 0"), std::runtime_error);
}

TEST_CASE("winding number rejects bad inputs") {
  SUBCASE("coarse grid") {
    auto g = htl::sample_circle(
        [](const CirclePoint&) { return cplx(1.0, 0.0); }, 1024, 0.0);
    CHECK_THROWS_AS(htl::winding_number(g), std::invalid_argument);
  }
  SUBCASE("degenerate symbol") {
    auto g = htl::sample_circle(
        [](const CirclePoint&) { return cplx(1e-9, 0.0); }, 4096, 0.0);
    CHECK_THROWS_AS(htl::winding_number(g), std::domain_error);
  }
  SUBCASE("under-resolved argument") {
    // Index 1200 steps the argument by 1200 * 2 pi / 4096 > pi / 2 per sample.
    auto g = htl::sample_circle(
        [](const CirclePoint& p) { return std::polar(1.0, 1200.0 * p.theta); },
        4096, 0.0);
    CHECK_THROWS_AS(htl::winding_number(g), std::runtime_error);
  }
}

TEST_CASE("transform and container guard rails") {
  auto g = htl::sample_circle(
      [](const CirclePoint&) { return cplx(1.0, 0.0); }, 32, 0.0);
  CHECK_THROWS_AS(htl::fourier_coeffs(g, 16), std::invalid_argument);
  CHECK_NOTHROW(htl::fourier_coeffs(g, 15));

  FourierCoeffs c(4);
  CHECK_THROWS_AS(c.at(5), std::out_of_range);
  CHECK_THROWS_AS(c.at(-5), std::out_of_range);
  CHECK_THROWS_AS(FourierCoeffs(-1), std::invalid_argument);

  CHECK_THROWS_AS(htl::sample_circle(
                      [](const CirclePoint&) { return cplx(1.0, 0.0); }, 24, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(htl::sample_circle(
                      [](const CirclePoint&) { return cplx(1.0, 0.0); }, 32, -1.0),
                  std::invalid_argument);

  std::vector<cplx> odd(3, cplx(0.0, 0.0));
  CHECK_THROWS_AS(htl::fft_pow2(odd, false), std::invalid_argument);
}

TEST_CASE("analytic degree scans the analytic side") {
  FourierCoeffs c(6);
  CHECK(c.analytic_degree() == 0);
  c.at(-4) = cplx(1.0, 0.0);
  CHECK(c.analytic_degree() == 0);
  c.at(3) = cplx(0.0, 2.0);
  CHECK(c.analytic_degree() == 3);
}

TEST_CASE("coefficient JSON round-trips exactly") {
  htl::Rng rng(19);
  auto c = random_coeffs(6, rng);
  c.at(2) = cplx(1.0 / 3.0, -1e-17);

  auto j = htl::coeffs_to_json(c);
  CHECK(j.at("schema_version") == "1");
  CHECK(j.at("max_index") == 6);

  // In-memory round trip is bitwise.
  auto back = htl::coeffs_from_json(j);
  REQUIRE(back.N == c.N);
  for (int k = -6; k <= 6; ++k) CHECK(back.at(k) == c.at(k));

  // Through text as well: dumps carry enough digits.
  auto reparsed = htl::coeffs_from_json(
      htl::ordered_json::parse(j.dump()));
  for (int k = -6; k <= 6; ++k) CHECK(reparsed.at(k) == c.at(k));

  // Mismatched payloads are rejected.
  auto broken = j;
  broken["coefficients"].erase(0);
  CHECK_THROWS_AS(htl::coeffs_from_json(broken), std::invalid_argument);
}
