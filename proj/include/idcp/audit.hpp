#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idcp/geometry.hpp"

namespace idcp {

/// One half-space condition: sum_{i in A} x_i > rhs(A), where
/// rhs = -sum_{(e,v) in Lk(A)} (pi - Lambda(I_e)) + 2 pi chi(F_A).
struct SubsetRow {
  std::uint32_t mask = 0;  // bit i set iff vertex i in A
  int chi_subcomplex = 0;
  int link_size = 0;
  double rhs = 0.0;
  double lhs = 0.0;
  double margin = 0.0;  // lhs - rhs
};

enum class AuditVerdict { InY, OnBoundary, Violated };

struct ObstructionReport {
  AuditVerdict verdict = AuditVerdict::Violated;
  double gauss_bonnet_check = 0.0;  // |sum x - 2 pi chi(M)|
  bool hyperplane_ok = false;
  std::vector<SubsetRow> worst;     // 10 smallest margins, ascending
  std::vector<SubsetRow> full;      // populated only on request
  std::vector<std::uint32_t> violated_subsets;
  std::size_t subsets_examined = 0;
  bool exhaustive = true;
  bool metric_in_omega = true;   // candidate audits: strict vs closure reading
  std::string note;
};

struct AuditOptions {
  bool exhaustive = true;
  int sample_count = 0;        // sampled mode: random subsets on top of
                               // singletons and their complements
  double tolerance = 1e-9;     // boundary band for margins and Gauss-Bonnet
  bool keep_full_table = false;
  std::uint64_t seed = 0;
};

/// Checks x against the Gauss-Bonnet hyperplane and every (selected) Y_A
/// half-space. Exhaustive mode requires N <= 22 (SubsetBudgetExceededError).
ObstructionReport audit_curvature_vector(const Surface& surface,
                                         const Vec& inv_dist, const Vec& x,
                                         const AuditOptions& options = {});

/// Audits the curvature vector x_i = s_alpha r_i^alpha that a constant
/// alpha-curvature metric with these radii would have.
ObstructionReport audit_constant_curvature_candidate(
    const Surface& surface, const Vec& inv_dist, const Vec& r, double alpha,
    const AuditOptions& options = {});

enum class Feasibility { Feasible, Infeasible, Unresolved };

struct FeasibilityReport {
  Feasibility status = Feasibility::Unresolved;
  int chi = 0;
  Vec witness;                 // valid when Feasible
  double best_min_margin = 0.0;
  std::optional<std::uint32_t> blocking_subset;
  std::vector<SubsetRow> worst;  // chi == 0: margins of x = 0
  std::string note;
};

/// Heuristic probe for the sign conditions: chi > 0 looks for a strictly
/// positive x in Y (projected subgradient on the Gauss-Bonnet hyperplane),
/// chi < 0 for a strictly negative one, chi == 0 tests x = 0 directly.
FeasibilityReport sign_feasibility(const Surface& surface, const Vec& inv_dist,
                                   int iterations = 10000,
                                   std::uint64_t seed = 0);

}  // namespace idcp
