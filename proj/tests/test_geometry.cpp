#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "idcp/geometry.hpp"
#include "idcp/meshes.hpp"

using namespace idcp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("edge length formula") {
  Surface s = meshes::tetrahedron();
  SUBCASE("unit radii, zero inversive distance") {
    Vec l = edge_lengths(s, Vec::Zero(6), Vec::Ones(4));
    for (int e = 0; e < 6; ++e)
      CHECK(l[e] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("pythagorean radii") {
    Vec r(4);
    r << 3.0, 4.0, 1.0, 1.0;
    Vec l = edge_lengths(s, Vec::Zero(6), r);
    CHECK(l[s.edge_index(0, 1)] == doctest::Approx(5.0).epsilon(1e-14));
  }
  SUBCASE("unit radii, inversive distance one") {
    Vec l = edge_lengths(s, Vec::Ones(6), Vec::Ones(4));
    for (int e = 0; e < 6; ++e)
      CHECK(l[e] == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("non-positive radius rejected") {
    Vec r = Vec::Ones(4);
    r[2] = 0.0;
    CHECK_THROWS_AS(edge_lengths(s, Vec::Zero(6), r), NonPositiveRadiusError);
  }
}

TEST_CASE("lambda clamp") {
  CHECK(lambda_clamp(-2.0) == kPi);
  CHECK(lambda_clamp(-1.0) == kPi);
  CHECK(lambda_clamp(0.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(lambda_clamp(0.5) == doctest::Approx(kPi / 3).epsilon(1e-15));
  CHECK(lambda_clamp(1.5) == 0.0);
  // weakly decreasing
  double prev = kPi + 1;
  for (double x = -2.0; x <= 2.0; x += 0.01) {
    double v = lambda_clamp(x);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    CHECK(v <= kPi);
    prev = v;
  }
}

TEST_CASE("extended angles") {
  SUBCASE("equilateral") {
    auto a = extended_angles(1.0, 1.0, 1.0);
    for (double t : a) CHECK(t == doctest::Approx(kPi / 3).epsilon(1e-14));
  }
  SUBCASE("degenerate branch snaps to (pi, 0, 0)") {
    auto a = extended_angles(3.0, 1.0, 1.0);
    CHECK(a[0] == kPi);
    CHECK(a[1] == 0.0);
    CHECK(a[2] == 0.0);
  }
  SUBCASE("thin isoceles against the arcsin oracle") {
    double base = std::sqrt(2.0), leg = std::sqrt(101.0);
    auto a = extended_angles(base, leg, leg);
    double expect = 2.0 * std::asin(base / (2.0 * leg));
    CHECK(a[0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(a[0] + a[1] + a[2] == doctest::Approx(kPi).epsilon(1e-14));
  }
  SUBCASE("angle sum is pi in both branches") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.05, 3.0);
    for (int k = 0; k < 500; ++k) {
      auto a = extended_angles(dist(rng), dist(rng), dist(rng));
      CHECK(a[0] + a[1] + a[2] == doctest::Approx(kPi).epsilon(1e-12));
    }
  }
  SUBCASE("non-positive length rejected") {
    CHECK_THROWS_AS(extended_angles(0.0, 1.0, 1.0), NonPositiveLengthError);
  }
}

TEST_CASE("curvature report on symmetric instances") {
  SUBCASE("tetrahedron: constant curvature pi at alpha 0") {
    Surface s = meshes::tetrahedron();
    auto rep = curvature_report(s, Vec::Zero(6), Vec::Ones(4), 0.0);
    CHECK(rep.in_omega);
    for (int i = 0; i < 4; ++i) {
      CHECK(rep.curvature[i] == doctest::Approx(kPi).epsilon(1e-13));
      CHECK(rep.alpha_curvature[i] == doctest::Approx(kPi).epsilon(1e-13));
    }
    CHECK(rep.s_alpha == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(rep.gauss_bonnet_sum == doctest::Approx(4 * kPi).epsilon(1e-13));
  }
  SUBCASE("torus-7: flat for any uniform inversive distance") {
    Surface s = meshes::torus7();
    for (double c : {0.0, 0.5, 2.0}) {
      auto rep = curvature_report(s, Vec::Constant(21, c), Vec::Ones(7), 1.0);
      CHECK(rep.in_omega);
      CHECK(rep.s_alpha == 0.0);
      for (int i = 0; i < 7; ++i)
        CHECK(rep.curvature[i] == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  SUBCASE("huge inversive distance on one edge leaves Omega") {
    Surface s = meshes::tetrahedron();
    Vec inv = Vec::Zero(6);
    inv[s.edge_index(0, 1)] = 100.0;
    auto rep = curvature_report(s, inv, Vec::Ones(4), 0.0);
    CHECK_FALSE(rep.in_omega);
    int bad = 0;
    for (char a : rep.face_admissible)
      if (!a) ++bad;
    CHECK(bad == 2);
    CHECK(rep.gauss_bonnet_sum == doctest::Approx(4 * kPi).epsilon(1e-12));
  }
}

TEST_CASE("omega membership diagnostics") {
  Surface s = meshes::tetrahedron();
  SUBCASE("randomized admissible sweep with I in [0,1]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> rdist(0.2, 5.0);
    std::uniform_real_distribution<double> idist(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      Vec r(4), inv(6);
      for (int i = 0; i < 4; ++i) r[i] = rdist(rng);
      for (int e = 0; e < 6; ++e) inv[e] = idist(rng);
      auto om = omega_membership(s, inv, r);
      // slack oracle
      Vec l = edge_lengths(s, inv, r);
      double min_slack = 1e30;
      for (int f = 0; f < s.face_count(); ++f) {
        auto fe = s.face_edges(f);
        double a = l[fe[0]], b = l[fe[1]], c = l[fe[2]];
        min_slack = std::min(
            {min_slack, b + c - a, a + c - b, a + b - c});
      }
      CHECK(om.min_slack == doctest::Approx(min_slack).epsilon(1e-14));
      CHECK(om.in_omega == (min_slack > 0.0));
    }
  }
  SUBCASE("violating faces flagged") {
    Vec inv = Vec::Zero(6);
    inv[s.edge_index(0, 1)] = 100.0;
    auto om = omega_membership(s, inv, Vec::Ones(4));
    CHECK_FALSE(om.in_omega);
    CHECK(om.violating_faces.size() == 2);
  }
  SUBCASE("equilateral slack equals side length") {
    auto om = omega_membership(s, Vec::Zero(6), Vec::Ones(4));
    CHECK(om.min_slack == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("extended Gauss-Bonnet over random generalized metrics") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> udist(-3.0, 3.0);
  std::uniform_real_distribution<double> idist(0.0, 5.0);
  for (const Surface& s : {meshes::tetrahedron(), meshes::torus7()}) {
    double target = 2.0 * kPi * s.euler_characteristic();
    for (int k = 0; k < 200; ++k) {
      Vec u(s.vertex_count()), inv(s.edge_count());
      for (int i = 0; i < u.size(); ++i) u[i] = udist(rng);
      for (int e = 0; e < inv.size(); ++e) inv[e] = idist(rng);
      auto rep = curvature_report(s, inv, u.array().exp().matrix(), 0.0);
      CHECK(std::abs(rep.gauss_bonnet_sum - target) < 1e-9);
    }
  }
}

TEST_CASE("scale invariance of curvature, covariance of alpha-curvature") {
  Surface s = meshes::octahedron();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> udist(-0.5, 0.5);
  Vec u(6), inv = Vec::Constant(12, 0.3);
  for (int i = 0; i < 6; ++i) u[i] = udist(rng);
  Vec r = u.array().exp().matrix();
  for (double alpha : {-1.0, 0.0, 2.0}) {
    auto base = curvature_report(s, inv, r, alpha);
    for (double lam : {0.5, 3.0}) {
      auto scaled = curvature_report(s, inv, lam * r, alpha);
      double factor = std::pow(lam, -alpha);
      for (int i = 0; i < 6; ++i) {
        CHECK(scaled.curvature[i] ==
              doctest::Approx(base.curvature[i]).epsilon(1e-12));
        CHECK(scaled.alpha_curvature[i] ==
              doctest::Approx(factor * base.alpha_curvature[i])
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("angle continuity approaching a degenerate face") {
  // lengths (2 - eps, 1, 1): the big angle approaches pi like 2 sqrt(eps).
  for (double eps : {1e-3, 1e-4, 1e-5, 1e-6}) {
    auto a = extended_angles(2.0 - eps, 1.0, 1.0);
    CHECK(std::abs(a[0] - kPi) <= 3.0 * std::sqrt(eps));
    CHECK(a[0] + a[1] + a[2] == doctest::Approx(kPi).epsilon(1e-12));
  }
}

TEST_CASE("classical curvature bounds inside Omega") {
  Surface s = meshes::icosahedron();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> udist(-0.2, 0.2);
  int checked = 0;
  while (checked < 20) {
    Vec u(12);
    for (int i = 0; i < 12; ++i) u[i] = udist(rng);
    Vec r = u.array().exp().matrix();
    auto rep = curvature_report(s, Vec::Constant(30, 0.2), r, 0.0);
    if (!rep.in_omega) continue;
    ++checked;
    for (int i = 0; i < 12; ++i) {
      CHECK(rep.curvature[i] > (2.0 - s.vertex_degrees()[i]) * kPi);
      CHECK(rep.curvature[i] < 2.0 * kPi);
    }
  }
}
