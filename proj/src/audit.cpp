#include "idcp/audit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

namespace idcp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kExhaustiveBudget = 22;

struct MaskTables {
  std::vector<std::uint32_t> edge_masks;
  std::vector<std::uint32_t> face_masks;
  // For faces: the (pi - Lambda(I_e)) weight of the edge opposite each vertex.
  std::vector<std::array<double, 3>> face_weights;
  std::vector<std::array<std::uint32_t, 3>> face_vertex_bits;
};

MaskTables build_tables(const Surface& surface, const Vec& inv_dist) {
  MaskTables t;
  t.edge_masks.reserve(surface.edge_count());
  for (const auto& e : surface.edges())
    t.edge_masks.push_back((1u << e[0]) | (1u << e[1]));
  t.face_masks.reserve(surface.face_count());
  for (int f = 0; f < surface.face_count(); ++f) {
    const auto& tri = surface.faces()[f];
    const auto& fe = surface.face_edges(f);
    t.face_masks.push_back((1u << tri[0]) | (1u << tri[1]) | (1u << tri[2]));
    std::array<double, 3> w;
    std::array<std::uint32_t, 3> bits;
    for (int p = 0; p < 3; ++p) {
      w[p] = kPi - lambda_clamp(inv_dist[fe[p]]);
      bits[p] = 1u << tri[p];
    }
    t.face_weights.push_back(w);
    t.face_vertex_bits.push_back(bits);
  }
  return t;
}

SubsetRow evaluate_subset(const Surface& surface, const MaskTables& tables,
                          const Vec& x, std::uint32_t mask) {
  SubsetRow row;
  row.mask = mask;
  int vertices = std::popcount(mask);
  int edges = 0, faces = 0;
  for (auto em : tables.edge_masks)
    if ((em & mask) == em) ++edges;
  double link_sum = 0.0;
  for (std::size_t f = 0; f < tables.face_masks.size(); ++f) {
    std::uint32_t inside = tables.face_masks[f] & mask;
    int count = std::popcount(inside);
    if (count == 3) ++faces;
    if (count == 1) {
      // The lone A-vertex pairs with its opposite edge in Lk(A).
      for (int p = 0; p < 3; ++p)
        if (tables.face_vertex_bits[f][p] == inside) {
          link_sum += tables.face_weights[f][p];
          row.link_size++;
        }
    }
  }
  row.chi_subcomplex = vertices - edges + faces;
  row.rhs = -link_sum + 2.0 * kPi * row.chi_subcomplex;
  double lhs = 0.0;
  for (int v = 0; v < surface.vertex_count(); ++v)
    if (mask & (1u << v)) lhs += x[v];
  row.lhs = lhs;
  row.margin = lhs - row.rhs;
  return row;
}

void keep_worst(std::vector<SubsetRow>& worst, const SubsetRow& row) {
  worst.push_back(row);
  std::sort(worst.begin(), worst.end(),
            [](const SubsetRow& a, const SubsetRow& b) {
              return a.margin < b.margin;
            });
  if (worst.size() > 10) worst.resize(10);
}

std::vector<std::uint32_t> sampled_masks(int n, int sample_count,
                                         std::uint64_t seed) {
  std::vector<std::uint32_t> masks;
  const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1u);
  for (int v = 0; v < n; ++v) {
    masks.push_back(1u << v);
    masks.push_back(all & ~(1u << v));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(1u, all - 1u);
  for (int k = 0; k < sample_count; ++k) masks.push_back(dist(rng));
  return masks;
}

}  // namespace

ObstructionReport audit_curvature_vector(const Surface& surface,
                                         const Vec& inv_dist, const Vec& x,
                                         const AuditOptions& options) {
  const int n = surface.vertex_count();
  if (x.size() != n)
    throw InvalidInputError("curvature vector length != vertex count");
  if (options.exhaustive && n > kExhaustiveBudget)
    throw SubsetBudgetExceededError(
        "exhaustive audit limited to N <= " +
        std::to_string(kExhaustiveBudget) + " vertices");
  if (!options.exhaustive && n > 31)
    throw SubsetBudgetExceededError("subset masks limited to N <= 31");

  MaskTables tables = build_tables(surface, inv_dist);

  ObstructionReport report;
  report.exhaustive = options.exhaustive;
  report.gauss_bonnet_check = std::abs(
      x.sum() - 2.0 * kPi * surface.euler_characteristic());
  report.hyperplane_ok = report.gauss_bonnet_check < options.tolerance;

  double min_margin = std::numeric_limits<double>::infinity();
  auto consume = [&](std::uint32_t mask) {
    SubsetRow row = evaluate_subset(surface, tables, x, mask);
    min_margin = std::min(min_margin, row.margin);
    keep_worst(report.worst, row);
    if (options.keep_full_table) report.full.push_back(row);
    if (row.margin < -options.tolerance)
      report.violated_subsets.push_back(mask);
    report.subsets_examined++;
  };

  if (options.exhaustive) {
    const std::uint32_t all = (1u << n) - 1u;
    for (std::uint32_t mask = 1; mask < all; ++mask) consume(mask);
  } else {
    for (auto mask : sampled_masks(n, options.sample_count, options.seed))
      consume(mask);
  }

  if (!report.hyperplane_ok || !report.violated_subsets.empty())
    report.verdict = AuditVerdict::Violated;
  else if (min_margin > options.tolerance)
    report.verdict = AuditVerdict::InY;
  else
    report.verdict = AuditVerdict::OnBoundary;
  return report;
}

ObstructionReport audit_constant_curvature_candidate(
    const Surface& surface, const Vec& inv_dist, const Vec& r, double alpha,
    const AuditOptions& options) {
  // The constant alpha-curvature value of K is s_alpha r_i^alpha; note the
  // exponent (the half-space test is the curvature-vector one applied to it).
  double s = s_alpha_of(surface, r, alpha);
  Vec x = s * pow_alpha(r, alpha);
  ObstructionReport report = audit_curvature_vector(surface, inv_dist, x,
                                                    options);
  report.metric_in_omega = omega_membership(surface, inv_dist, r).in_omega;
  report.note = report.metric_in_omega
                    ? "admissible metric: strict half-space conditions apply"
                    : "generalized metric: closure conditions apply "
                      "(OnBoundary is acceptable)";
  return report;
}

FeasibilityReport sign_feasibility(const Surface& surface, const Vec& inv_dist,
                                   int iterations, std::uint64_t seed) {
  const int n = surface.vertex_count();
  if (n > kExhaustiveBudget)
    throw SubsetBudgetExceededError("sign_feasibility needs N <= 22");
  (void)seed;

  MaskTables tables = build_tables(surface, inv_dist);
  const int chi = surface.euler_characteristic();
  const std::uint32_t all = (1u << n) - 1u;

  // Precompute rhs per subset; it depends only on (A, I).
  std::vector<double> rhs(all, 0.0);
  {
    Vec zero = Vec::Zero(n);
    for (std::uint32_t mask = 1; mask < all; ++mask)
      rhs[mask] = evaluate_subset(surface, tables, zero, mask).rhs;
  }

  FeasibilityReport report;
  report.chi = chi;

  auto min_margin = [&](const Vec& x, std::uint32_t* argmin) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < all; ++mask) {
      double lhs = 0.0;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) lhs += x[v];
      double m = lhs - rhs[mask];
      if (m < best) {
        best = m;
        if (argmin) *argmin = mask;
      }
    }
    return best;
  };

  if (chi == 0) {
    Vec zero = Vec::Zero(n);
    std::uint32_t worst_mask = 0;
    report.best_min_margin = min_margin(zero, &worst_mask);
    for (std::uint32_t mask = 1; mask < all; ++mask)
      keep_worst(report.worst, evaluate_subset(surface, tables, zero, mask));
    if (report.best_min_margin > 0.0) {
      report.status = Feasibility::Feasible;
      report.witness = zero;
      report.note = "x = 0 satisfies every Y_A condition strictly";
    } else {
      report.status = Feasibility::Infeasible;
      report.blocking_subset = worst_mask;
      report.note = "x = 0 violates some Y_A condition (chi = 0 leaves no "
                    "other candidate on the hyperplane)";
    }
    return report;
  }

  const double sign = chi > 0 ? 1.0 : -1.0;
  const double target = 2.0 * kPi * chi;

  // Certificate: with all x_i of the fixed sign on the hyperplane, any proper
  // subset sum stays strictly between 0 and 2 pi chi (order depends on sign).
  for (std::uint32_t mask = 1; mask < all; ++mask) {
    bool blocked = chi > 0 ? rhs[mask] >= target : rhs[mask] >= 0.0;
    if (blocked) {
      report.status = Feasibility::Infeasible;
      report.blocking_subset = mask;
      report.note = "rhs bound excludes every sign-constrained x on the "
                    "Gauss-Bonnet hyperplane (heuristic certificate)";
      return report;
    }
  }

  // Projected subgradient ascent of min_A margin(A) over the hyperplane with
  // the sign constraint |x_i| >= eps.
  const double eps = 1e-6;
  Vec x = Vec::Constant(n, target / n);
  Vec best_x = x;
  double best = -std::numeric_limits<double>::infinity();
  std::uint32_t best_block = 0;
  for (int it = 0; it < iterations; ++it) {
    std::uint32_t worst_mask = 0;
    double m = min_margin(x, &worst_mask);
    if (m > best) {
      best = m;
      best_x = x;
      best_block = worst_mask;
      if (best > 0.0) break;  // strict witness found
    }
    Vec g = Vec::Zero(n);
    for (int v = 0; v < n; ++v)
      if (worst_mask & (1u << v)) g[v] = 1.0;
    double step = 0.5 * kPi / std::sqrt(static_cast<double>(it + 1));
    x += step * g;
    // Coarse re-projection: hyperplane first, then the sign constraint.
    x.array() += (target - x.sum()) / n;
    for (int v = 0; v < n; ++v)
      if (sign * x[v] < eps) x[v] = sign * eps;
    x.array() += (target - x.sum()) / n;
  }

  report.best_min_margin = best;
  bool sign_ok = true;
  for (int v = 0; v < n; ++v)
    if (!(sign * best_x[v] > 0.0)) sign_ok = false;
  if (best > 0.0 && sign_ok) {
    report.status = Feasibility::Feasible;
    report.witness = best_x;
    report.note = "strictly sign-constrained witness found by subgradient "
                  "probe";
  } else {
    report.status = Feasibility::Unresolved;
    report.blocking_subset = best_block;
    report.note = "probe found no witness; the sign condition may still be "
                  "satisfiable (heuristic search only)";
  }
  return report;
}

}  // namespace idcp
