#pragma once

#include <optional>

#include "idcp/geometry.hpp"

namespace idcp {

using Mat = Eigen::MatrixXd;

/// L = d(K_1..K_N)/d(u_1..u_N) assembled analytically per triangle.
/// Symmetric, row sums zero, positive semi-definite with rank N-1 on Omega.
/// Throws NotInOmegaError outside the admissible space.
Mat curvature_jacobian(const Surface& surface, const Vec& inv_dist,
                       const Vec& r);

struct SpectralReport {
  Vec eigenvalues;           // of Lambda_alpha, ascending
  double lambda1 = 0.0;      // second-smallest (first positive)
  double s_alpha = 0.0;
  double stability_margin = 0.0;  // lambda1 - alpha * s_alpha
  bool margin_automatic = false;  // alpha * chi(M) <= 0 forces margin > 0
  double kernel_cosine = 0.0;     // |<v0, r^{alpha/2}>| / norms
  double alpha = 0.0;
};

/// Eigen-decomposition of Lambda_alpha = S^{-a/2} L S^{-a/2}; dense symmetric.
SpectralReport spectral_report(const Surface& surface, const Vec& inv_dist,
                               const Vec& r, double alpha);

struct QuadratureOptions {
  double abs_tol = 1e-11;  // per-face absolute tolerance
  int max_depth = 14;      // up to 2^14 panels
};

struct PotentialValue {
  double value = 0.0;
  Vec gradient;  // K~ - s_alpha r^alpha, analytic
  std::optional<Mat> hessian;
};

/// Extended potential F~(u) relative to the base point u_base: the linear
/// term 2 pi sum(u - u0), minus the alpha log-sum-exp term, minus per-face
/// line integrals of the extended angle 1-form along the straight segment
/// from u_base to u (path independence makes the segment choice free).
/// Defined for any real u; value at u_base is 0.
/// Throws QuadratureFailureError when the tolerance is unreachable.
PotentialValue potential(const Surface& surface, const Vec& inv_dist,
                         const Vec& u, double alpha, const Vec& u_base,
                         bool with_hessian = false,
                         const QuadratureOptions& opts = {});

/// Hess F~ = L - alpha s_alpha (diag(r^alpha) - r^alpha (r^alpha)^T / |r|_a^a).
/// Only defined inside ln Omega; throws NotInOmegaError.
Mat hessian(const Surface& surface, const Vec& inv_dist, const Vec& u,
            double alpha);

}  // namespace idcp
