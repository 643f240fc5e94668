// Command-line front end: curvature / flow / audit / spectrum / feasibility.
//
// Exit codes: 0 success (flow Converged), 2 validation error,
// 3 flow MaxTimeReached, 4 flow StepFailure.

#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "idcp/audit.hpp"
#include "idcp/flow.hpp"
#include "idcp/io.hpp"

namespace {

using idcp::Vec;

struct InstanceArgs {
  std::string mesh;
  std::string inv_dist = "0";
  std::string radii = "ones";
  double alpha = 0.0;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args,
                          bool needs_radii = true) {
  cmd->add_option("--mesh", args.mesh, "mesh file (.off or .json)")
      ->required();
  cmd->add_option("--inv-dist", args.inv_dist,
                  "per-edge inversive distance: scalar, 'ones', or file");
  if (needs_radii)
    cmd->add_option("--radii", args.radii,
                    "per-vertex radii: scalar, 'ones', or file");
  cmd->add_option("--alpha", args.alpha, "curvature order alpha");
}

struct LoadedInstance {
  idcp::Surface surface;
  Vec inv_dist;
  Vec radii;
};

LoadedInstance load_instance(const InstanceArgs& args) {
  idcp::Surface surface = idcp::io::load_mesh(args.mesh);
  Vec inv_dist = idcp::io::load_values(args.inv_dist, surface.edge_count(),
                                       "inversive distance");
  Vec radii =
      idcp::io::load_values(args.radii, surface.vertex_count(), "radii");
  return {std::move(surface), std::move(inv_dist), std::move(radii)};
}

void emit(const idcp::io::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    idcp::io::write_json(out_path, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inversive distance circle packing alpha-flow toolkit"};
  app.require_subcommand(1);

  InstanceArgs curvature_args;
  std::string curvature_out;
  auto* cmd_curvature = app.add_subcommand(
      "curvature", "edge lengths, curvature, and alpha-curvature report");
  add_instance_options(cmd_curvature, curvature_args);
  cmd_curvature->add_option("--out", curvature_out, "output JSON path");

  InstanceArgs flow_args;
  idcp::FlowConfig flow_config;
  std::string flow_method = "rk4";
  std::string trace_out, final_out, u_out;
  double perturb = 0.0;
  std::uint64_t seed = 0;
  bool pre_normalize = false;
  double newton_tol = 1e-10;
  auto* cmd_flow = app.add_subcommand(
      "flow", "run the extended alpha-flow (or the Newton minimizer)");
  add_instance_options(cmd_flow, flow_args);
  cmd_flow->add_option("--dt", flow_config.step_size, "initial step size");
  cmd_flow->add_option("--max-time", flow_config.max_time, "time horizon");
  cmd_flow->add_option("--tol", flow_config.residual_tolerance,
                       "residual tolerance on |K - s r^a|_inf");
  cmd_flow->add_option("--method", flow_method, "rk4 | euler | newton");
  cmd_flow->add_option("--max-step-change", flow_config.max_step_change,
                       "per-step |du|_inf cap");
  cmd_flow->add_flag("--normalize,!--no-normalize",
                     flow_config.normalize_every_step,
                     "re-project sum(u) each step");
  cmd_flow->add_flag("--pre-normalize", pre_normalize,
                     "rescale the input radii to product 1 first");
  cmd_flow->add_option("--sample-every", flow_config.sample_every,
                       "trace sampling stride (steps)");
  cmd_flow->add_option("--perturb", perturb,
                       "add a seeded zero-mean perturbation of this size");
  cmd_flow->add_option("--seed", seed, "seed for --perturb");
  cmd_flow->add_option("--trace-out", trace_out, "trace CSV path");
  cmd_flow->add_option("--final-out", final_out, "terminal metric JSON path");
  cmd_flow->add_option("--u-out", u_out, "JSON-lines u snapshots path");
  cmd_flow->add_option("--newton-tol", newton_tol,
                       "gradient tolerance for --method newton");

  InstanceArgs audit_args;
  std::string audit_x, audit_curv_from, audit_out;
  bool audit_exhaustive = false, audit_full = false, audit_candidate = false;
  int audit_sampled = 0;
  double audit_tol = 1e-9;
  auto* cmd_audit = app.add_subcommand(
      "audit", "combinatorial-topological obstruction audit");
  add_instance_options(cmd_audit, audit_args);
  cmd_audit->add_option("--x", audit_x,
                        "audit this curvature vector (file or scalar)");
  cmd_audit->add_option("--curvature-from-radii", audit_curv_from,
                        "audit the curvature of these radii");
  cmd_audit->add_flag("--candidate", audit_candidate,
                      "audit --radii as a constant-curvature candidate");
  cmd_audit->add_flag("--exhaustive", audit_exhaustive, "all proper subsets");
  cmd_audit->add_option("--sampled", audit_sampled, "random subset count");
  cmd_audit->add_option("--tol", audit_tol, "boundary tolerance");
  cmd_audit->add_flag("--full-table", audit_full, "emit every subset row");
  cmd_audit->add_option("--out", audit_out, "output JSON path");

  InstanceArgs spectrum_args;
  std::string spectrum_out;
  auto* cmd_spectrum = app.add_subcommand(
      "spectrum", "alpha-Laplacian spectrum and stability margin");
  add_instance_options(cmd_spectrum, spectrum_args);
  cmd_spectrum->add_option("--out", spectrum_out, "output JSON path");

  InstanceArgs feas_args;
  std::string feas_out;
  int feas_iterations = 10000;
  auto* cmd_feas = app.add_subcommand(
      "feasibility", "sign-condition probe for Y (by Euler characteristic)");
  add_instance_options(cmd_feas, feas_args, /*needs_radii=*/false);
  cmd_feas->add_option("--iterations", feas_iterations,
                       "subgradient probe iterations");
  cmd_feas->add_option("--out", feas_out, "output JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_curvature) {
      auto inst = load_instance(curvature_args);
      auto report = idcp::curvature_report(inst.surface, inst.inv_dist,
                                           inst.radii, curvature_args.alpha);
      emit(idcp::io::curvature_report_json(inst.surface, report),
           curvature_out);
      return 0;
    }

    if (*cmd_flow) {
      auto inst = load_instance(flow_args);
      Vec u0 = inst.radii.array().log().matrix();
      if (pre_normalize) u0.array() -= u0.mean();
      if (perturb > 0.0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> dist(-perturb, perturb);
        Vec noise(u0.size());
        for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = dist(rng);
        noise.array() -= noise.mean();
        double norm = noise.lpNorm<Eigen::Infinity>();
        if (norm > perturb) noise *= perturb / norm;
        u0 += noise;
      }

      if (flow_method == "newton") {
        idcp::NewtonOptions opts;
        opts.alpha = flow_args.alpha;
        opts.grad_tolerance = newton_tol;
        auto result =
            idcp::newton_minimize(inst.surface, inst.inv_dist, u0, opts);
        auto j = idcp::io::vector_json(inst.surface, "radii", result.r_final);
        j["method"] = "newton";
        j["iterations"] = result.iterations.size();
        j["final_grad_norm"] = result.final_grad_norm;
        j["convexity_guaranteed"] = result.convexity_guaranteed;
        if (!result.convexity_guaranteed)
          j["warning"] = "uniqueness/convexity not guaranteed (alpha chi > 0)";
        emit(j, final_out);
        return 0;
      }

      flow_config.alpha = flow_args.alpha;
      flow_config.method = flow_method == "euler" ? idcp::FlowMethod::Euler
                                                  : idcp::FlowMethod::Rk4;
      flow_config.record_u = !u_out.empty();
      auto result = idcp::run_flow(inst.surface, inst.inv_dist, u0,
                                   flow_config);
      if (!trace_out.empty())
        idcp::io::write_trace_csv(trace_out, inst.surface, result.trace);
      if (!u_out.empty()) idcp::io::write_trace_u_jsonl(u_out, result.trace);
      auto j = idcp::io::vector_json(inst.surface, "radii", result.r_final);
      j["residual"] = result.final_residual;
      j["max_alpha_curvature_deviation"] =
          result.max_alpha_curvature_deviation;
      j["velocity_bound_violations"] = result.trace.velocity_bound_violations;
      j["boundary_crossings"] = result.trace.boundary_crossings;
      switch (result.trace.status) {
        case idcp::FlowStatus::Converged: j["status"] = "Converged"; break;
        case idcp::FlowStatus::MaxTimeReached:
          j["status"] = "MaxTimeReached";
          break;
        case idcp::FlowStatus::StepFailure: j["status"] = "StepFailure"; break;
      }
      if (result.trace.decay) {
        j["decay_rate"] = result.trace.decay->rate;
        j["decay_r_squared"] = result.trace.decay->r_squared;
      }
      emit(j, final_out);
      if (result.trace.status == idcp::FlowStatus::MaxTimeReached) return 3;
      if (result.trace.status == idcp::FlowStatus::StepFailure) return 4;
      return 0;
    }

    if (*cmd_audit) {
      auto inst = load_instance(audit_args);
      idcp::AuditOptions opts;
      opts.exhaustive = audit_exhaustive || audit_sampled == 0;
      opts.sample_count = audit_sampled;
      if (audit_sampled > 0) opts.exhaustive = audit_exhaustive;
      opts.tolerance = audit_tol;
      opts.keep_full_table = audit_full;

      idcp::ObstructionReport report;
      if (!audit_x.empty()) {
        Vec x = idcp::io::load_values(audit_x, inst.surface.vertex_count(),
                                      "curvature vector");
        report = idcp::audit_curvature_vector(inst.surface, inst.inv_dist, x,
                                              opts);
      } else if (!audit_curv_from.empty()) {
        Vec r = idcp::io::load_values(
            audit_curv_from, inst.surface.vertex_count(), "radii");
        auto curv = idcp::curvature_report(inst.surface, inst.inv_dist, r,
                                           audit_args.alpha);
        report = idcp::audit_curvature_vector(inst.surface, inst.inv_dist,
                                              curv.curvature, opts);
      } else if (audit_candidate) {
        report = idcp::audit_constant_curvature_candidate(
            inst.surface, inst.inv_dist, inst.radii, audit_args.alpha, opts);
      } else {
        throw idcp::InvalidInputError(
            "audit needs --x, --curvature-from-radii, or --candidate");
      }
      emit(idcp::io::obstruction_report_json(inst.surface, report), audit_out);
      return 0;
    }

    if (*cmd_spectrum) {
      auto inst = load_instance(spectrum_args);
      auto report = idcp::spectral_report(inst.surface, inst.inv_dist,
                                          inst.radii, spectrum_args.alpha);
      auto j = idcp::io::spectral_report_json(inst.surface, report);
      std::cerr << "stability margin lambda1 - alpha*s_alpha = "
                << report.stability_margin << " ("
                << (report.stability_margin > 0 ? "yes" : "no") << ")\n";
      emit(j, spectrum_out);
      return 0;
    }

    if (*cmd_feas) {
      idcp::Surface surface = idcp::io::load_mesh(feas_args.mesh);
      Vec inv_dist = idcp::io::load_values(
          feas_args.inv_dist, surface.edge_count(), "inversive distance");
      auto report = idcp::sign_feasibility(surface, inv_dist,
                                           feas_iterations);
      emit(idcp::io::feasibility_report_json(surface, report), feas_out);
      return 0;
    }
  } catch (const idcp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
