#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "idcp/audit.hpp"
#include "idcp/flow.hpp"
#include "idcp/meshes.hpp"

namespace py = pybind11;
using namespace idcp;

namespace {

py::dict curvature_dict(const CurvatureReport& r) {
  py::dict d;
  d["edge_lengths"] = r.edge_lengths;
  d["curvature"] = r.curvature;
  d["alpha"] = r.alpha;
  d["alpha_curvature"] = r.alpha_curvature;
  d["s_alpha"] = r.s_alpha;
  d["in_omega"] = r.in_omega;
  d["min_slack"] = r.min_slack;
  d["gauss_bonnet"] = r.gauss_bonnet_sum;
  std::vector<bool> adm(r.face_admissible.begin(), r.face_admissible.end());
  d["face_admissible"] = adm;
  return d;
}

py::dict trace_dict(const FlowTrace& trace) {
  py::dict d;
  std::vector<double> t, residual, potential, min_slack, drift;
  for (const auto& row : trace.rows) {
    t.push_back(row.t);
    residual.push_back(row.residual);
    potential.push_back(row.potential);
    min_slack.push_back(row.min_slack);
    drift.push_back(row.drift);
  }
  d["t"] = t;
  d["residual"] = residual;
  d["potential"] = potential;
  d["min_slack"] = min_slack;
  d["drift"] = drift;
  d["velocity_bound_violations"] = trace.velocity_bound_violations;
  d["boundary_crossings"] = trace.boundary_crossings;
  if (trace.decay) {
    d["decay_rate"] = trace.decay->rate;
    d["decay_r_squared"] = trace.decay->r_squared;
  }
  return d;
}

const char* status_name(FlowStatus s) {
  switch (s) {
    case FlowStatus::Converged: return "Converged";
    case FlowStatus::MaxTimeReached: return "MaxTimeReached";
    default: return "StepFailure";
  }
}

std::vector<int> mask_to_subset(std::uint32_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (mask & (1u << v)) out.push_back(v);
  return out;
}

py::dict obstruction_dict(const Surface& surface,
                          const ObstructionReport& r) {
  py::dict d;
  switch (r.verdict) {
    case AuditVerdict::InY: d["verdict"] = "InY"; break;
    case AuditVerdict::OnBoundary: d["verdict"] = "OnBoundary"; break;
    default: d["verdict"] = "Violated"; break;
  }
  d["gauss_bonnet_check"] = r.gauss_bonnet_check;
  d["subsets_examined"] = r.subsets_examined;
  d["metric_in_omega"] = r.metric_in_omega;
  py::list worst;
  for (const auto& row : r.worst) {
    py::dict w;
    w["subset"] = mask_to_subset(row.mask, surface.vertex_count());
    w["chi_subcomplex"] = row.chi_subcomplex;
    w["link_size"] = row.link_size;
    w["lhs"] = row.lhs;
    w["rhs"] = row.rhs;
    w["margin"] = row.margin;
    worst.append(w);
  }
  d["worst_margins"] = worst;
  return d;
}

}  // namespace

PYBIND11_MODULE(_idcp, m) {
  m.doc() = "inversive distance circle packing alpha-flow core";

  py::register_exception<Error>(m, "IdcpError");

  py::class_<Surface>(m, "Surface")
      .def_property_readonly("vertex_count", &Surface::vertex_count)
      .def_property_readonly("edge_count", &Surface::edge_count)
      .def_property_readonly("face_count", &Surface::face_count)
      .def_property_readonly("euler_characteristic",
                             &Surface::euler_characteristic)
      .def_property_readonly("faces", [](const Surface& s) {
        return s.faces();
      })
      .def_property_readonly("edges", [](const Surface& s) {
        return s.edges();
      })
      .def_property_readonly("vertex_degrees", [](const Surface& s) {
        return s.vertex_degrees();
      })
      .def("edge_index", &Surface::edge_index);

  m.def("build_surface",
        [](const std::vector<FaceTriple>& faces, int vertex_count) {
          return Surface::from_faces(faces, vertex_count);
        },
        py::arg("faces"), py::arg("vertex_count") = -1);

  m.def("tetrahedron", &meshes::tetrahedron);
  m.def("octahedron", &meshes::octahedron);
  m.def("icosahedron", &meshes::icosahedron);
  m.def("torus7", &meshes::torus7);
  m.def("grid_torus", &meshes::grid_torus, py::arg("m"), py::arg("n"));

  m.def("subcomplex_summary",
        [](const Surface& s, const std::vector<int>& subset) {
          auto r = subcomplex_summary(s, subset);
          py::dict d;
          d["subset"] = r.subset;
          d["induced_vertex_count"] = r.induced_vertex_count;
          d["induced_edge_count"] = r.induced_edge_count;
          d["induced_face_count"] = r.induced_face_count;
          d["euler_characteristic"] = r.euler_characteristic;
          d["link_pairs"] = r.link_pairs;
          return d;
        });

  m.def("edge_lengths", &edge_lengths);
  m.def("lambda_clamp", &lambda_clamp);
  m.def("extended_angles", &extended_angles);
  m.def("curvature_report",
        [](const Surface& s, const Vec& inv, const Vec& r, double alpha) {
          return curvature_dict(curvature_report(s, inv, r, alpha));
        });
  m.def("omega_membership",
        [](const Surface& s, const Vec& inv, const Vec& r) {
          auto o = omega_membership(s, inv, r);
          py::dict d;
          d["in_omega"] = o.in_omega;
          d["min_slack"] = o.min_slack;
          d["violating_faces"] = o.violating_faces;
          d["face_min_slack"] = o.face_min_slack;
          return d;
        });

  m.def("curvature_jacobian", &curvature_jacobian);
  m.def("hessian", &hessian);
  m.def("spectral_report",
        [](const Surface& s, const Vec& inv, const Vec& r, double alpha) {
          auto rep = spectral_report(s, inv, r, alpha);
          py::dict d;
          d["eigenvalues"] = rep.eigenvalues;
          d["lambda1"] = rep.lambda1;
          d["s_alpha"] = rep.s_alpha;
          d["stability_margin"] = rep.stability_margin;
          d["margin_automatic"] = rep.margin_automatic;
          d["kernel_cosine"] = rep.kernel_cosine;
          return d;
        });
  m.def("potential",
        [](const Surface& s, const Vec& inv, const Vec& u, double alpha,
           const Vec& u_base) {
          auto p = potential(s, inv, u, alpha, u_base);
          py::dict d;
          d["value"] = p.value;
          d["gradient"] = p.gradient;
          return d;
        });

  m.def("run_flow",
        [](const Surface& s, const Vec& inv, const Vec& u0, double alpha,
           double step_size, double max_time, double residual_tolerance,
           bool normalize_every_step, const std::string& method,
           int sample_every) {
          FlowConfig cfg;
          cfg.alpha = alpha;
          cfg.step_size = step_size;
          cfg.max_time = max_time;
          cfg.residual_tolerance = residual_tolerance;
          cfg.normalize_every_step = normalize_every_step;
          cfg.method =
              method == "euler" ? FlowMethod::Euler : FlowMethod::Rk4;
          cfg.sample_every = sample_every;
          auto result = run_flow(s, inv, u0, cfg);
          py::dict d;
          d["status"] = status_name(result.trace.status);
          d["u_final"] = result.u_final;
          d["r_final"] = result.r_final;
          d["residual"] = result.final_residual;
          d["trace"] = trace_dict(result.trace);
          return d;
        },
        py::arg("surface"), py::arg("inv_dist"), py::arg("u0"),
        py::arg("alpha") = 0.0, py::arg("step_size") = 0.05,
        py::arg("max_time") = 500.0, py::arg("residual_tolerance") = 1e-10,
        py::arg("normalize_every_step") = true, py::arg("method") = "rk4",
        py::arg("sample_every") = 1);

  m.def("newton_minimize",
        [](const Surface& s, const Vec& inv, const Vec& u0, double alpha,
           double grad_tolerance, int max_iterations) {
          NewtonOptions opts;
          opts.alpha = alpha;
          opts.grad_tolerance = grad_tolerance;
          opts.max_iterations = max_iterations;
          auto result = newton_minimize(s, inv, u0, opts);
          py::dict d;
          d["u_final"] = result.u_final;
          d["r_final"] = result.r_final;
          d["iterations"] = result.iterations.size();
          d["final_grad_norm"] = result.final_grad_norm;
          d["convexity_guaranteed"] = result.convexity_guaranteed;
          return d;
        },
        py::arg("surface"), py::arg("inv_dist"), py::arg("u0"),
        py::arg("alpha") = 0.0, py::arg("grad_tolerance") = 1e-10,
        py::arg("max_iterations") = 100);

  m.def("audit_curvature_vector",
        [](const Surface& s, const Vec& inv, const Vec& x, bool exhaustive,
           int sample_count, double tolerance) {
          AuditOptions opts;
          opts.exhaustive = exhaustive;
          opts.sample_count = sample_count;
          opts.tolerance = tolerance;
          return obstruction_dict(s,
                                  audit_curvature_vector(s, inv, x, opts));
        },
        py::arg("surface"), py::arg("inv_dist"), py::arg("x"),
        py::arg("exhaustive") = true, py::arg("sample_count") = 0,
        py::arg("tolerance") = 1e-9);

  m.def("audit_constant_curvature_candidate",
        [](const Surface& s, const Vec& inv, const Vec& r, double alpha,
           bool exhaustive, int sample_count, double tolerance) {
          AuditOptions opts;
          opts.exhaustive = exhaustive;
          opts.sample_count = sample_count;
          opts.tolerance = tolerance;
          return obstruction_dict(
              s, audit_constant_curvature_candidate(s, inv, r, alpha, opts));
        },
        py::arg("surface"), py::arg("inv_dist"), py::arg("r"),
        py::arg("alpha") = 0.0, py::arg("exhaustive") = true,
        py::arg("sample_count") = 0, py::arg("tolerance") = 1e-9);

  m.def("sign_feasibility",
        [](const Surface& s, const Vec& inv, int iterations) {
          auto r = sign_feasibility(s, inv, iterations);
          py::dict d;
          switch (r.status) {
            case Feasibility::Feasible: d["status"] = "Feasible"; break;
            case Feasibility::Infeasible: d["status"] = "Infeasible"; break;
            default: d["status"] = "Unresolved"; break;
          }
          d["chi"] = r.chi;
          d["best_min_margin"] = r.best_min_margin;
          if (r.witness.size() > 0) d["witness"] = r.witness;
          d["note"] = r.note;
          return d;
        },
        py::arg("surface"), py::arg("inv_dist"),
        py::arg("iterations") = 10000);
}
