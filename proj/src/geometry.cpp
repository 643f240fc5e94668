#include "idcp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace idcp {

namespace {
constexpr double kPi = std::numbers::pi;

void check_metric(const Surface& surface, const Vec& inv_dist, const Vec& r) {
  if (r.size() != surface.vertex_count())
    throw InvalidInputError("radius vector length != vertex count");
  if (inv_dist.size() != surface.edge_count())
    throw InvalidInputError("inversive distance length != edge count");
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (!(r[i] > 0.0))
      throw NonPositiveRadiusError("radius at vertex " + std::to_string(i) +
                                   " is not positive");
  for (Eigen::Index e = 0; e < inv_dist.size(); ++e)
    if (!(inv_dist[e] >= 0.0))
      throw InvalidInputError("inversive distance at edge " +
                              std::to_string(e) + " is negative");
}
}  // namespace

Vec edge_lengths(const Surface& surface, const Vec& inv_dist, const Vec& r) {
  check_metric(surface, inv_dist, r);
  Vec l(surface.edge_count());
  const auto& edges = surface.edges();
  for (int e = 0; e < surface.edge_count(); ++e) {
    double ri = r[edges[e][0]], rj = r[edges[e][1]];
    l[e] = std::sqrt(ri * ri + rj * rj + 2.0 * ri * rj * inv_dist[e]);
  }
  return l;
}

double lambda_clamp(double x) {
  if (x <= -1.0) return kPi;
  if (x >= 1.0) return 0.0;
  return std::acos(x);
}

std::array<double, 3> extended_angles(double x1, double x2, double x3) {
  if (!(x1 > 0.0) || !(x2 > 0.0) || !(x3 > 0.0))
    throw NonPositiveLengthError("triangle side lengths must be positive");
  const double x[3] = {x1, x2, x3};
  // Degenerate branch: one side dominates, angles snap to (pi, 0, 0).
  for (int p = 0; p < 3; ++p) {
    int q = (p + 1) % 3, s = (p + 2) % 3;
    if (x[p] >= x[q] + x[s]) {
      std::array<double, 3> out{0.0, 0.0, 0.0};
      out[p] = kPi;
      return out;
    }
  }
  std::array<double, 3> out;
  for (int p = 0; p < 3; ++p) {
    int q = (p + 1) % 3, s = (p + 2) % 3;
    out[p] = lambda_clamp(
        (x[q] * x[q] + x[s] * x[s] - x[p] * x[p]) / (2.0 * x[q] * x[s]));
  }
  return out;
}

OmegaReport omega_membership(const Surface& surface, const Vec& inv_dist,
                             const Vec& r) {
  Vec l = edge_lengths(surface, inv_dist, r);
  OmegaReport out;
  out.face_admissible.resize(surface.face_count());
  out.face_min_slack.resize(surface.face_count());
  out.in_omega = true;
  out.min_slack = std::numeric_limits<double>::infinity();
  for (int f = 0; f < surface.face_count(); ++f) {
    const auto& fe = surface.face_edges(f);
    double a = l[fe[0]], b = l[fe[1]], c = l[fe[2]];
    double slack = std::min({b + c - a, a + c - b, a + b - c});
    out.face_min_slack[f] = slack;
    out.face_admissible[f] = slack > 0.0;
    out.min_slack = std::min(out.min_slack, slack);
    if (!(slack > 0.0)) {
      out.in_omega = false;
      out.violating_faces.push_back(f);
    }
  }
  return out;
}

Vec pow_alpha(const Vec& r, double alpha) {
  if (alpha == 0.0) return Vec::Ones(r.size());
  return (alpha * r.array().log()).exp().matrix();
}

double s_alpha_of(const Surface& surface, const Vec& r, double alpha) {
  return 2.0 * kPi * surface.euler_characteristic() /
         pow_alpha(r, alpha).sum();
}

CurvatureReport curvature_report(const Surface& surface, const Vec& inv_dist,
                                 const Vec& r, double alpha) {
  CurvatureReport out;
  out.alpha = alpha;
  out.edge_lengths = edge_lengths(surface, inv_dist, r);
  out.face_admissible.resize(surface.face_count());
  out.in_omega = true;
  out.min_slack = std::numeric_limits<double>::infinity();

  out.curvature = Vec::Constant(surface.vertex_count(), 2.0 * kPi);
  const Vec& l = out.edge_lengths;
  for (int f = 0; f < surface.face_count(); ++f) {
    const auto& tri = surface.faces()[f];
    const auto& fe = surface.face_edges(f);
    double a = l[fe[0]], b = l[fe[1]], c = l[fe[2]];
    double slack = std::min({b + c - a, a + c - b, a + b - c});
    out.face_admissible[f] = slack > 0.0;
    out.min_slack = std::min(out.min_slack, slack);
    if (!(slack > 0.0)) out.in_omega = false;
    auto ang = extended_angles(a, b, c);
    for (int p = 0; p < 3; ++p) out.curvature[tri[p]] -= ang[p];
  }

  Vec ra = pow_alpha(r, alpha);
  out.s_alpha = 2.0 * kPi * surface.euler_characteristic() / ra.sum();
  out.alpha_curvature = (out.curvature.array() / ra.array()).matrix();
  out.gauss_bonnet_sum = out.curvature.sum();
  return out;
}

}  // namespace idcp
