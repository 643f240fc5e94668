#include "idcp/flow.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

namespace idcp {

namespace {
constexpr double kPi = std::numbers::pi;

struct FieldEval {
  Vec velocity;       // s_alpha r^alpha - K~
  double residual;    // |velocity|_inf
  double min_slack;
};

FieldEval eval_field(const Surface& surface, const Vec& inv_dist,
                     const Vec& u, double alpha) {
  Vec r = u.array().exp().matrix();
  auto report = curvature_report(surface, inv_dist, r, alpha);
  FieldEval out;
  out.velocity = report.s_alpha * pow_alpha(r, alpha) - report.curvature;
  out.residual = out.velocity.lpNorm<Eigen::Infinity>();
  out.min_slack = report.min_slack;
  return out;
}

Vec project_zero_mean(const Vec& v) {
  return v.array() - v.mean();
}

}  // namespace

FlowResult run_flow(const Surface& surface, const Vec& inv_dist, const Vec& u0,
                    const FlowConfig& config) {
  if (u0.size() != surface.vertex_count())
    throw InvalidInputError("initial log-radius length != vertex count");
  if (!u0.allFinite()) throw NonFiniteStateError("initial state is not finite");
  if (!(config.step_size > 0.0) || !(config.residual_tolerance > 0.0))
    throw InvalidInputError("step_size and residual_tolerance must be > 0");

  const double alpha = config.alpha;
  // |du_i/dt| <= 2 pi |chi| + max(d pi - 2 pi, 2 pi) + 2 pi from the
  // curvature bounds (2 - d_i) pi <= K~_i <= 2 pi and |s r_i^a| <= 2 pi |chi|.
  const double velocity_bound =
      2.0 * kPi * std::abs(surface.euler_characteristic()) +
      std::max(surface.max_degree() * kPi - 2.0 * kPi, 2.0 * kPi) + 2.0 * kPi;

  FlowResult result;
  FlowTrace& trace = result.trace;
  Vec u = u0;
  const double sum0 = u0.sum();
  double t = 0.0;
  double drift = 0.0;
  int accepted_steps = 0;
  double prev_slack_sign = 0.0;

  auto field = [&](const Vec& state) {
    FieldEval fe = eval_field(surface, inv_dist, state, alpha);
    if (fe.velocity.lpNorm<Eigen::Infinity>() > velocity_bound + 1e-9)
      trace.velocity_bound_violations++;
    return fe;
  };

  auto sample = [&](const FieldEval& fe) {
    FlowSample row;
    row.t = t;
    row.residual = fe.residual;
    row.min_slack = fe.min_slack;
    row.drift = drift;
    if (config.record_potential)
      row.potential = potential(surface, inv_dist, u, alpha, u0).value;
    if (config.record_u) row.u = u;
    trace.rows.push_back(std::move(row));
  };

  FieldEval fe = field(u);
  sample(fe);
  prev_slack_sign = fe.min_slack > 0.0 ? 1.0 : -1.0;

  while (true) {
    if (fe.residual < config.residual_tolerance) {
      trace.status = FlowStatus::Converged;
      break;
    }
    if (t >= config.max_time) {
      trace.status = FlowStatus::MaxTimeReached;
      break;
    }

    double dt = std::min(config.step_size, config.max_time - t);
    bool accepted = false;
    for (int halving = 0; halving < 20 && !accepted; ++halving) {
      Vec du;
      if (config.method == FlowMethod::Euler) {
        du = dt * fe.velocity;
      } else {
        Vec k1 = fe.velocity;
        Vec k2 = field(u + 0.5 * dt * k1).velocity;
        Vec k3 = field(u + 0.5 * dt * k2).velocity;
        Vec k4 = field(u + dt * k3).velocity;
        du = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      if (!du.allFinite() ||
          du.lpNorm<Eigen::Infinity>() > config.max_step_change) {
        dt *= 0.5;
        continue;
      }
      u += du;
      t += dt;
      accepted = true;
    }
    if (!accepted) {
      trace.status = FlowStatus::StepFailure;
      break;
    }

    drift = std::abs(u.sum() - sum0);
    if (config.normalize_every_step)
      u.array() += (sum0 - u.sum()) / u.size();

    fe = field(u);
    ++accepted_steps;

    double slack_sign = fe.min_slack > 0.0 ? 1.0 : -1.0;
    if (slack_sign != prev_slack_sign) trace.boundary_crossings++;
    prev_slack_sign = slack_sign;

    bool due = accepted_steps % config.sample_every == 0;
    bool terminal = fe.residual < config.residual_tolerance ||
                    t >= config.max_time;
    if (due || terminal) sample(fe);
  }

  result.u_final = u;
  result.r_final = u.array().exp().matrix();
  result.final_residual = fe.residual;
  auto report = curvature_report(surface, inv_dist, result.r_final, alpha);
  result.max_alpha_curvature_deviation =
      (report.alpha_curvature.array() - report.s_alpha).abs().maxCoeff();

  if (trace.status == FlowStatus::Converged) {
    try {
      trace.decay = fit_decay_rate(trace);
    } catch (const InsufficientTailError&) {
      // short runs carry no rate estimate
    }
  }
  return result;
}

NewtonResult newton_minimize(const Surface& surface, const Vec& inv_dist,
                             const Vec& u0, const NewtonOptions& options) {
  const int n = surface.vertex_count();
  if (u0.size() != n)
    throw InvalidInputError("initial log-radius length != vertex count");
  {
    Vec r0 = u0.array().exp().matrix();
    if (!omega_membership(surface, inv_dist, r0).in_omega)
      throw NotInOmegaError("newton_minimize requires u0 in ln Omega");
  }

  NewtonResult result;
  result.convexity_guaranteed =
      options.alpha * surface.euler_characteristic() <= 0.0;

  Vec u = u0;
  PotentialValue pot = potential(surface, inv_dist, u, options.alpha, u0);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double gnorm = pot.gradient.lpNorm<Eigen::Infinity>();
    if (gnorm < options.grad_tolerance) {
      result.final_grad_norm = gnorm;
      result.u_final = u;
      result.r_final = u.array().exp().matrix();
      return result;
    }

    Vec r = u.array().exp().matrix();
    bool in_omega = omega_membership(surface, inv_dist, r).in_omega;
    Vec direction;
    bool fallback = !in_omega;
    if (in_omega) {
      // Pin the mean by shifting the rank-deficient Hessian along 1 1^T.
      Mat H = hessian(surface, inv_dist, u, options.alpha);
      Mat shifted = H + Mat::Constant(n, n, 1.0 / n);
      Eigen::LDLT<Mat> ldlt(shifted);
      direction = project_zero_mean(ldlt.solve(-pot.gradient));
      if (!direction.allFinite() || direction.dot(pot.gradient) >= 0.0)
        fallback = true;
    }
    if (fallback) direction = project_zero_mean(-pot.gradient);

    double slope = pot.gradient.dot(direction);
    // Potential values carry quadrature noise of about abs_tol per face;
    // without this slack the Armijo test starves once the true decrease
    // falls below the noise floor.
    double noise =
        10.0 * QuadratureOptions{}.abs_tol * surface.face_count() +
        1e-14 * std::abs(pot.value);
    double step = 1.0;
    PotentialValue trial;
    bool ok = false;
    for (int bt = 0; bt < options.max_backtracks; ++bt) {
      trial = potential(surface, inv_dist, u + step * direction, options.alpha,
                        u0);
      if (trial.value <= pot.value + options.armijo_c * step * slope + noise) {
        ok = true;
        break;
      }
      step *= 0.5;
    }
    if (!ok) throw LineSearchFailureError("Armijo backtracking exhausted");

    u += step * direction;
    pot = trial;
    result.iterations.push_back(
        {iter, gnorm, pot.value, step, fallback});
  }
  throw MaxIterationsError("newton_minimize did not converge");
}

double verify_conservation(const FlowTrace& trace) {
  if (trace.rows.empty()) throw InvalidInputError("empty flow trace");
  double max_drift = 0.0;
  for (const auto& row : trace.rows)
    max_drift = std::max(max_drift, row.drift);
  return max_drift;
}

DecayFit fit_decay_rate(const FlowTrace& trace, double tail_fraction) {
  std::vector<std::pair<double, double>> pts;  // (t, ln residual)
  for (const auto& row : trace.rows)
    if (row.residual > 1e-13)
      pts.emplace_back(row.t, std::log(row.residual));

  auto tail_start = pts.size() -
      static_cast<std::size_t>(tail_fraction * static_cast<double>(pts.size()));
  std::vector<std::pair<double, double>> tail(pts.begin() + tail_start,
                                              pts.end());
  if (tail.size() < 20)
    throw InsufficientTailError("fewer than 20 usable tail samples");

  double n = static_cast<double>(tail.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : tail) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  double intercept = (sy - slope * sx) / n;
  for (auto [x, y] : tail) {
    double e = y - (intercept + slope * x);
    ss_res += e * e;
  }

  DecayFit fit;
  fit.rate = -slope;
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  fit.exponential = fit.rate > 1e-6 && fit.r_squared > 0.5;
  return fit;
}

}  // namespace idcp
