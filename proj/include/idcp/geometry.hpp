#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "idcp/surface.hpp"

namespace idcp {

using Vec = Eigen::VectorXd;

/// l_ij = sqrt(r_i^2 + r_j^2 + 2 r_i r_j I_ij), in canonical edge order.
/// Throws NonPositiveRadiusError; inv_dist entries must be >= 0.
Vec edge_lengths(const Surface& surface, const Vec& inv_dist, const Vec& r);

/// Clamped arccos: pi for x <= -1, arccos(x) in between, 0 for x >= 1.
double lambda_clamp(double x);

/// Inner angles of a generalized triangle with side lengths (x1, x2, x3),
/// angle p opposite side x_p. Degenerate configurations yield (pi, 0, 0)
/// style angles; the sum is always pi. Throws NonPositiveLengthError.
std::array<double, 3> extended_angles(double x1, double x2, double x3);

struct OmegaReport {
  bool in_omega = false;
  std::vector<char> face_admissible;
  Vec face_min_slack;              // min of the three inequality slacks
  double min_slack = 0.0;
  std::vector<int> violating_faces;
};

/// Strict triangle inequalities on every face; r must be positive.
OmegaReport omega_membership(const Surface& surface, const Vec& inv_dist,
                             const Vec& r);

struct CurvatureReport {
  Vec edge_lengths;
  std::vector<char> face_admissible;
  bool in_omega = false;
  Vec curvature;        // extended angle defect; classical K on Omega
  double alpha = 0.0;
  Vec alpha_curvature;  // K_i / r_i^alpha
  double s_alpha = 0.0; // 2 pi chi / sum_i r_i^alpha
  double gauss_bonnet_sum = 0.0;  // sum of curvature entries
  double min_slack = 0.0;
};

CurvatureReport curvature_report(const Surface& surface, const Vec& inv_dist,
                                 const Vec& r, double alpha);

/// 2 pi chi(M) / sum_i r_i^alpha.
double s_alpha_of(const Surface& surface, const Vec& r, double alpha);

/// Elementwise r_i^alpha computed as exp(alpha * ln r_i).
Vec pow_alpha(const Vec& r, double alpha);

}  // namespace idcp
