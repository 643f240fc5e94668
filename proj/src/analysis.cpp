#include "idcp/analysis.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace idcp {

namespace {
constexpr double kPi = std::numbers::pi;

// 10-point Gauss-Legendre on [-1, 1].
constexpr int kGL = 5;
constexpr double kGLx[kGL] = {0.1488743389816312, 0.4333953941292472,
                              0.6794095682990244, 0.8650633666889845,
                              0.9739065285171717};
constexpr double kGLw[kGL] = {0.2955242247147529, 0.2692667193099963,
                              0.2190863625159820, 0.1494513491505806,
                              0.0666713443086881};

double gl10(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kGL; ++i)
    s += kGLw[i] * (f(c - h * kGLx[i]) + f(c + h * kGLx[i]));
  return s * h;
}

// Adaptive bisection with a whole-vs-halves error estimate. Unresolved error
// at max depth is accumulated and reported by the caller.
double adaptive_gl(const std::function<double(double)>& f, double a, double b,
                   double whole, double tol, int depth, int max_depth,
                   double& unresolved) {
  double m = 0.5 * (a + b);
  double left = gl10(f, a, m), right = gl10(f, m, b);
  double err = std::abs(left + right - whole);
  if (err <= tol || depth >= max_depth) {
    if (err > tol) unresolved += err;
    return left + right;
  }
  return adaptive_gl(f, a, m, left, 0.5 * tol, depth + 1, max_depth,
                     unresolved) +
         adaptive_gl(f, m, b, right, 0.5 * tol, depth + 1, max_depth,
                     unresolved);
}

double logsumexp(const Vec& x) {
  double m = x.maxCoeff();
  return m + std::log((x.array() - m).exp().sum());
}

// B_alpha(u) - B_alpha(u0), with the analytic alpha -> 0 limit.
double b_alpha_diff(const Surface& surface, const Vec& u, const Vec& u0,
                    double alpha) {
  double chi = surface.euler_characteristic();
  if (alpha == 0.0)
    return 2.0 * kPi * chi * (u.mean() - u0.mean());
  return (2.0 * kPi * chi / alpha) *
         (logsumexp(alpha * u) - logsumexp(alpha * u0));
}

}  // namespace

Mat curvature_jacobian(const Surface& surface, const Vec& inv_dist,
                       const Vec& r) {
  auto omega = omega_membership(surface, inv_dist, r);
  if (!omega.in_omega)
    throw NotInOmegaError("curvature_jacobian requires an admissible metric");

  const int n = surface.vertex_count();
  Vec l = edge_lengths(surface, inv_dist, r);
  Mat L = Mat::Zero(n, n);

  for (int f = 0; f < surface.face_count(); ++f) {
    const auto& tri = surface.faces()[f];
    const auto& fe = surface.face_edges(f);
    double len[3] = {l[fe[0]], l[fe[1]], l[fe[2]]};  // len[p] opposite tri[p]
    auto ang = extended_angles(len[0], len[1], len[2]);

    // d theta_p / d len_m for the three sides.
    double dtheta[3][3];
    for (int p = 0; p < 3; ++p) {
      int q = (p + 1) % 3, s = (p + 2) % 3;
      double denom = len[q] * len[s] * std::sin(ang[p]);
      dtheta[p][p] = len[p] / denom;
      dtheta[p][q] = -len[p] * std::cos(ang[s]) / denom;
      dtheta[p][s] = -len[p] * std::cos(ang[q]) / denom;
    }

    // d len_m / d u_v: side m joins the two vertices other than tri[m].
    double dlen[3][3] = {};
    for (int m = 0; m < 3; ++m) {
      int a = (m + 1) % 3, b = (m + 2) % 3;
      double ra = r[tri[a]], rb = r[tri[b]];
      double I = inv_dist[fe[m]];
      dlen[m][a] = ra * (ra + rb * I) / len[m];
      dlen[m][b] = rb * (rb + ra * I) / len[m];
    }

    // K_i = 2 pi - sum theta, so the Jacobian gets minus the angle response.
    for (int p = 0; p < 3; ++p)
      for (int v = 0; v < 3; ++v) {
        double d = 0.0;
        for (int m = 0; m < 3; ++m) d += dtheta[p][m] * dlen[m][v];
        L(tri[p], tri[v]) -= d;
      }
  }
  return L;
}

SpectralReport spectral_report(const Surface& surface, const Vec& inv_dist,
                               const Vec& r, double alpha) {
  Mat L = curvature_jacobian(surface, inv_dist, r);  // checks Omega
  Vec scale = pow_alpha(r, -alpha / 2.0);
  Mat lam = scale.asDiagonal() * L * scale.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (lam + lam.transpose()));
  SpectralReport out;
  out.alpha = alpha;
  out.eigenvalues = es.eigenvalues();
  out.lambda1 = out.eigenvalues[1];
  out.s_alpha = s_alpha_of(surface, r, alpha);
  out.stability_margin = out.lambda1 - alpha * out.s_alpha;
  out.margin_automatic = alpha * surface.euler_characteristic() <= 0.0;

  Vec kernel_dir = pow_alpha(r, alpha / 2.0).normalized();
  out.kernel_cosine = std::abs(es.eigenvectors().col(0).dot(kernel_dir));
  return out;
}

PotentialValue potential(const Surface& surface, const Vec& inv_dist,
                         const Vec& u, double alpha, const Vec& u_base,
                         bool with_hessian, const QuadratureOptions& opts) {
  if (u.size() != surface.vertex_count() ||
      u_base.size() != surface.vertex_count())
    throw InvalidInputError("log-radius vector length != vertex count");

  const double chi = surface.euler_characteristic();
  (void)chi;
  double value = 2.0 * kPi * (u - u_base).sum();       // A(u)
  value -= b_alpha_diff(surface, u, u_base, alpha);    // B_alpha(u)

  // Per-face line integral of the extended angle 1-form along the segment.
  Vec du = u - u_base;
  for (int f = 0; f < surface.face_count(); ++f) {
    const auto& tri = surface.faces()[f];
    const auto& fe = surface.face_edges(f);
    double d0 = du[tri[0]], d1 = du[tri[1]], d2 = du[tri[2]];
    if (d0 == 0.0 && d1 == 0.0 && d2 == 0.0) continue;

    double I0 = inv_dist[fe[0]], I1 = inv_dist[fe[1]], I2 = inv_dist[fe[2]];
    double u00 = u_base[tri[0]], u01 = u_base[tri[1]], u02 = u_base[tri[2]];
    auto integrand = [&](double t) {
      double r0 = std::exp(u00 + t * d0);
      double r1 = std::exp(u01 + t * d1);
      double r2 = std::exp(u02 + t * d2);
      // Side p is opposite vertex p (matching face_edges order).
      double l0 = std::sqrt(r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * I0);
      double l1 = std::sqrt(r0 * r0 + r2 * r2 + 2.0 * r0 * r2 * I1);
      double l2 = std::sqrt(r0 * r0 + r1 * r1 + 2.0 * r0 * r1 * I2);
      auto ang = extended_angles(l0, l1, l2);
      return ang[0] * d0 + ang[1] * d1 + ang[2] * d2;
    };

    double unresolved = 0.0;
    double whole = gl10(integrand, 0.0, 1.0);
    double integral = adaptive_gl(integrand, 0.0, 1.0, whole, opts.abs_tol, 0,
                                  opts.max_depth, unresolved);
    if (unresolved > 100.0 * opts.abs_tol)
      throw QuadratureFailureError(
          "face integral tolerance not met after max refinement");
    value -= integral;
  }

  PotentialValue out;
  out.value = value;
  Vec r = u.array().exp().matrix();
  auto report = curvature_report(surface, inv_dist, r, alpha);
  out.gradient = report.curvature - report.s_alpha * pow_alpha(r, alpha);
  if (with_hessian && report.in_omega)
    out.hessian = hessian(surface, inv_dist, u, alpha);
  return out;
}

Mat hessian(const Surface& surface, const Vec& inv_dist, const Vec& u,
            double alpha) {
  Vec r = u.array().exp().matrix();
  Mat L = curvature_jacobian(surface, inv_dist, r);  // throws NotInOmega
  if (alpha == 0.0) return L;
  Vec ra = pow_alpha(r, alpha);
  double s = 2.0 * kPi * surface.euler_characteristic() / ra.sum();
  Mat correction = Mat(ra.asDiagonal()) - (ra * ra.transpose()) / ra.sum();
  return L - alpha * s * correction;
}

}  // namespace idcp
