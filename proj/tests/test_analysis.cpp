#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "idcp/analysis.hpp"
#include "idcp/meshes.hpp"

using namespace idcp;
constexpr double kPi = std::numbers::pi;

namespace {

// Central finite differences of the extended curvature in u; the test-side
// oracle for the analytic Jacobian.
Mat jacobian_fd(const Surface& s, const Vec& inv, const Vec& u, double h) {
  const int n = s.vertex_count();
  Mat J(n, n);
  for (int j = 0; j < n; ++j) {
    Vec up = u, um = u;
    up[j] += h;
    um[j] -= h;
    Vec kp = curvature_report(s, inv, up.array().exp().matrix(), 0.0)
                 .curvature;
    Vec km = curvature_report(s, inv, um.array().exp().matrix(), 0.0)
                 .curvature;
    J.col(j) = (kp - km) / (2.0 * h);
  }
  return J;
}

Vec random_admissible_u(const Surface& s, const Vec& inv, std::mt19937_64& rng,
                        double spread = 0.2) {
  std::uniform_real_distribution<double> dist(-spread, spread);
  while (true) {
    Vec u(s.vertex_count());
    for (int i = 0; i < u.size(); ++i) u[i] = dist(rng);
    if (omega_membership(s, inv, u.array().exp().matrix()).in_omega) return u;
  }
}

}  // namespace

TEST_CASE("curvature jacobian matches finite differences") {
  std::mt19937_64 rng(21);
  for (const Surface& s : {meshes::tetrahedron(), meshes::torus7()}) {
    Vec inv = Vec::Constant(s.edge_count(), 0.4);
    for (int k = 0; k < 5; ++k) {
      Vec u = random_admissible_u(s, inv, rng);
      Vec r = u.array().exp().matrix();
      Mat L = curvature_jacobian(s, inv, r);
      Mat fd = jacobian_fd(s, inv, u, 1e-5);
      double scale = fd.cwiseAbs().maxCoeff();
      CHECK((L - fd).cwiseAbs().maxCoeff() / scale < 1e-6);
      CHECK((L - L.transpose()).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((L * Vec::Ones(s.vertex_count())).lpNorm<Eigen::Infinity>() <
            1e-10);
    }
  }
}

TEST_CASE("jacobian spectrum: PSD with rank N-1") {
  std::mt19937_64 rng(22);
  Surface s = meshes::octahedron();
  Vec inv = Vec::Constant(12, 0.7);
  for (int k = 0; k < 5; ++k) {
    Vec u = random_admissible_u(s, inv, rng);
    Mat L = curvature_jacobian(s, inv, u.array().exp().matrix());
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (L + L.transpose()));
    int near_zero = 0;
    for (int i = 0; i < 6; ++i) {
      if (std::abs(es.eigenvalues()[i]) < 1e-8)
        ++near_zero;
      else
        CHECK(es.eigenvalues()[i] > 0.0);
    }
    CHECK(near_zero == 1);
  }
}

TEST_CASE("tetrahedron jacobian has the symmetric a, -b structure") {
  Surface s = meshes::tetrahedron();
  Mat L = curvature_jacobian(s, Vec::Zero(6), Vec::Ones(4));
  double a = L(0, 0), b = -L(0, 1);
  CHECK(a == doctest::Approx(3.0 * b).epsilon(1e-12));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(L(i, j) == doctest::Approx(i == j ? a : -b).epsilon(1e-12));
  // magnitude pinned by the finite-difference oracle
  Mat fd = jacobian_fd(s, Vec::Zero(6), Vec::Zero(4), 1e-5);
  CHECK(a == doctest::Approx(fd(0, 0)).epsilon(1e-6));
}

TEST_CASE("jacobian refuses non-admissible metrics") {
  Surface s = meshes::tetrahedron();
  Vec inv = Vec::Zero(6);
  inv[0] = 100.0;
  CHECK_THROWS_AS(curvature_jacobian(s, inv, Vec::Ones(4)), NotInOmegaError);
}

TEST_CASE("spectral report") {
  SUBCASE("torus: s_alpha = 0 so the margin is lambda1") {
    Surface s = meshes::torus7();
    for (double alpha : {-1.0, 0.0, 3.0}) {
      auto rep = spectral_report(s, Vec::Constant(21, 0.5), Vec::Ones(7),
                                 alpha);
      CHECK(rep.s_alpha == 0.0);
      CHECK(rep.stability_margin == rep.lambda1);
      CHECK(rep.lambda1 > 0.0);
      CHECK(std::abs(rep.eigenvalues[0]) < 1e-8);
      CHECK(rep.kernel_cosine > 1.0 - 1e-8);
    }
  }
  SUBCASE("unit radii make Lambda_alpha independent of alpha") {
    Surface s = meshes::tetrahedron();
    auto a0 = spectral_report(s, Vec::Zero(6), Vec::Ones(4), 0.0);
    auto a2 = spectral_report(s, Vec::Zero(6), Vec::Ones(4), 2.0);
    for (int i = 0; i < 4; ++i)
      CHECK(a0.eigenvalues[i] ==
            doctest::Approx(a2.eigenvalues[i]).epsilon(1e-12));
    CHECK(a0.stability_margin == doctest::Approx(a0.lambda1));
  }
  SUBCASE("lambda1 is scale invariant at alpha 0") {
    Surface s = meshes::octahedron();
    std::mt19937_64 rng(30);
    Vec inv = Vec::Constant(12, 0.3);
    Vec u = random_admissible_u(s, inv, rng);
    Vec r = u.array().exp().matrix();
    auto a = spectral_report(s, inv, r, 0.0);
    auto b = spectral_report(s, inv, 2.5 * r, 0.0);
    CHECK(a.lambda1 == doctest::Approx(b.lambda1).epsilon(1e-10));
  }
}

TEST_CASE("potential value and gradient") {
  Surface s = meshes::tetrahedron();
  Vec inv = Vec::Constant(6, 0.25);
  Vec u0 = Vec::Zero(4);

  SUBCASE("zero at the base point") {
    CHECK(potential(s, inv, u0, 1.0, u0).value == 0.0);
  }

  SUBCASE("translation invariance") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-0.3, 0.3);
    Vec u(4);
    for (int i = 0; i < 4; ++i) u[i] = dist(rng);
    for (double alpha : {0.0, 1.0, -2.0}) {
      double base = potential(s, inv, u, alpha, u0).value;
      for (double t : {-1.0, -0.5, 0.5, 1.0}) {
        double shifted = potential(s, inv, u.array() + t, alpha, u0).value;
        CHECK(std::abs(shifted - base) < 1e-9);
      }
    }
  }

  SUBCASE("gradient matches finite differences of the quadrature value") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> dist(-0.25, 0.25);
    const double h = 1e-3;
    for (int k = 0; k < 5; ++k) {
      Vec u(4);
      for (int i = 0; i < 4; ++i) u[i] = dist(rng);
      for (double alpha : {0.0, 1.5}) {
        Vec grad = potential(s, inv, u, alpha, u0).gradient;
        CHECK(std::abs(grad.sum()) < 1e-10);  // Gauss-Bonnet
        for (int i = 0; i < 4; ++i) {
          Vec up = u, um = u;
          up[i] += h;
          um[i] -= h;
          double fd = (potential(s, inv, up, alpha, u0).value -
                       potential(s, inv, um, alpha, u0).value) /
                      (2.0 * h);
          CHECK(std::abs(grad[i] - fd) /
                    std::max(1.0, std::abs(grad[i])) <
                1e-5);
        }
      }
    }
  }

  SUBCASE("gradient vanishes at a constant alpha-curvature metric") {
    Vec grad = potential(s, Vec::Zero(6), u0, 0.0, u0).gradient;
    CHECK(grad.lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("potential convexity sampling when alpha chi <= 0") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  Surface s = meshes::tetrahedron();
  Vec inv = Vec::Constant(6, 0.4);
  Vec u0 = Vec::Zero(4);
  const double alpha = -1.0;  // alpha chi = -2 <= 0
  for (int k = 0; k < 40; ++k) {
    Vec a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = dist(rng);
      b[i] = dist(rng);
    }
    double fa = potential(s, inv, a, alpha, u0).value;
    double fb = potential(s, inv, b, alpha, u0).value;
    double fm = potential(s, inv, 0.5 * (a + b), alpha, u0).value;
    CHECK(fm <= 0.5 * (fa + fb) + 1e-9);
  }
}

TEST_CASE("per-face angle integral is concave on R^3") {
  // F_ijk alone, via a one-face potential value with A and B terms removed:
  // use a single generalized triangle by probing a tetrahedron face and
  // checking midpoint concavity of the angle-form integral directly.
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  Surface s = meshes::tetrahedron();
  Vec inv = Vec::Constant(6, 0.4);
  Vec u0 = Vec::Zero(4);
  // Isolate the face sum: F_faces(u) = A(u) - B_alpha(u) - F~(u) with
  // alpha = 0; each face term is concave, so the sum must be concave.
  auto face_sum = [&](const Vec& u) {
    double chi = s.euler_characteristic();
    double a_term = 2.0 * kPi * (u.sum() - u0.sum());
    double b_term = 2.0 * kPi * chi * (u.mean() - u0.mean());
    return a_term - b_term - potential(s, inv, u, 0.0, u0).value;
  };
  for (int k = 0; k < 40; ++k) {
    Vec a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = dist(rng);
      b[i] = dist(rng);
    }
    double fa = face_sum(a), fb = face_sum(b);
    double fm = face_sum(0.5 * (a + b));
    CHECK(fm >= 0.5 * (fa + fb) - 1e-9);
  }
}

TEST_CASE("hessian structure") {
  Surface s = meshes::tetrahedron();
  Vec inv = Vec::Constant(6, 0.3);
  std::mt19937_64 rng(35);
  Vec u = random_admissible_u(s, inv, rng);
  Vec r = u.array().exp().matrix();

  SUBCASE("alpha 0 reduces to the jacobian") {
    Mat h = hessian(s, inv, u, 0.0);
    Mat L = curvature_jacobian(s, inv, r);
    CHECK((h - L).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("kernel contains the all-ones vector") {
    for (double alpha : {-1.0, 2.0}) {
      Mat h = hessian(s, inv, u, alpha);
      CHECK((h * Vec::Ones(4)).lpNorm<Eigen::Infinity>() < 1e-10);
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("PSD rank N-1 in the convexity regime alpha chi <= 0") {
    Mat h = hessian(s, inv, u, -2.0);  // chi = 2
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
    CHECK(std::abs(es.eigenvalues()[0]) < 1e-8);
    for (int i = 1; i < 4; ++i) CHECK(es.eigenvalues()[i] > 0.0);
  }

  SUBCASE("matches the jacobian of the analytic gradient") {
    const double h_step = 1e-5;
    double alpha = 1.0;
    Mat H = hessian(s, inv, u, alpha);
    Mat fd(4, 4);
    for (int j = 0; j < 4; ++j) {
      Vec up = u, um = u;
      up[j] += h_step;
      um[j] -= h_step;
      fd.col(j) = (potential(s, inv, up, alpha, Vec::Zero(4)).gradient -
                   potential(s, inv, um, alpha, Vec::Zero(4)).gradient) /
                  (2.0 * h_step);
    }
    CHECK((H - fd).cwiseAbs().maxCoeff() / fd.cwiseAbs().maxCoeff() < 1e-5);
  }

  SUBCASE("refuses metrics outside ln Omega") {
    Vec bad_inv = Vec::Zero(6);
    bad_inv[0] = 100.0;
    CHECK_THROWS_AS(hessian(s, bad_inv, Vec::Zero(4), 1.0), NotInOmegaError);
  }
}
