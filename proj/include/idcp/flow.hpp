#pragma once

#include <optional>
#include <vector>

#include "idcp/analysis.hpp"

namespace idcp {

enum class FlowMethod { Rk4, Euler };
enum class FlowStatus { Converged, MaxTimeReached, StepFailure };

struct FlowConfig {
  double alpha = 0.0;
  double step_size = 0.05;
  double max_time = 500.0;
  double residual_tolerance = 1e-10;  // on |K~ - s_alpha r^alpha|_inf
  double max_step_change = 0.5;       // |du|_inf guard, triggers halving
  bool normalize_every_step = true;   // re-project sum(u) to its start value
  FlowMethod method = FlowMethod::Rk4;
  int sample_every = 1;     // trace row every k accepted steps
  bool record_u = false;    // keep u snapshots in the trace
  bool record_potential = true;
};

struct DecayFit {
  double rate = 0.0;       // positive means decay
  double r_squared = 0.0;
  bool exponential = false;
};

struct FlowSample {
  double t = 0.0;
  double residual = 0.0;
  double potential = 0.0;
  double min_slack = 0.0;
  double drift = 0.0;  // |sum u(t) - sum u(0)| before re-projection
  Vec u;               // empty unless record_u
};

struct FlowTrace {
  std::vector<FlowSample> rows;
  FlowStatus status = FlowStatus::MaxTimeReached;
  int velocity_bound_violations = 0;
  int boundary_crossings = 0;  // min face slack sign changes
  std::optional<DecayFit> decay;
};

struct FlowResult {
  FlowTrace trace;
  Vec u_final;
  Vec r_final;
  double final_residual = 0.0;
  double max_alpha_curvature_deviation = 0.0;  // max |R_alpha,i - s_alpha|
};

/// Integrates du_i/dt = s_alpha r_i^alpha - K~_i from u0 (any real vector;
/// the extended angles accept generalized metrics).
FlowResult run_flow(const Surface& surface, const Vec& inv_dist, const Vec& u0,
                    const FlowConfig& config);

struct NewtonOptions {
  double alpha = 0.0;
  double grad_tolerance = 1e-10;  // on |grad F~|_inf
  int max_iterations = 100;
  double armijo_c = 1e-4;
  int max_backtracks = 50;
};

struct NewtonIteration {
  int iter = 0;
  double grad_norm = 0.0;
  double potential = 0.0;
  double step = 0.0;
  bool gradient_fallback = false;
};

struct NewtonResult {
  Vec u_final;
  Vec r_final;
  std::vector<NewtonIteration> iterations;
  bool convexity_guaranteed = false;  // alpha * chi(M) <= 0
  double final_grad_norm = 0.0;
};

/// Damped Newton descent of F~ on the zero-mean hyperplane; u0 must lie in
/// ln Omega. Iterates that leave ln Omega fall back to gradient steps.
/// Throws LineSearchFailureError, MaxIterationsError, NotInOmegaError.
NewtonResult newton_minimize(const Surface& surface, const Vec& inv_dist,
                             const Vec& u0, const NewtonOptions& options);

/// Max over trace rows of the pre-projection drift |sum u(t) - sum u(0)|.
double verify_conservation(const FlowTrace& trace);

/// Least-squares slope of ln(residual) vs t over the trace tail; requires
/// at least 20 tail samples with residual > 1e-13 (InsufficientTailError).
DecayFit fit_decay_rate(const FlowTrace& trace, double tail_fraction = 0.5);

}  // namespace idcp
