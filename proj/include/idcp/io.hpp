#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "idcp/audit.hpp"
#include "idcp/flow.hpp"

namespace idcp::io {

using json = nlohmann::json;

/// OFF file: vertex coordinates are parsed and discarded, faces must be
/// triangles. Comments (#) and blank lines allowed.
Surface parse_off(std::istream& in);

/// {"vertex_count": N, "faces": [[i,j,k], ...]} with 0-based indices.
Surface parse_mesh_json(const json& j);

/// Dispatch by extension: .off / .json.
Surface load_mesh(const std::filesystem::path& path);

/// Per-vertex or per-edge value specs: "ones", a numeric literal (uniform),
/// or a path to a JSON array, a JSON object with "values", or an
/// "index,value" CSV file. `expected` is the required length.
Vec load_values(const std::string& spec, Eigen::Index expected,
                const std::string& what);

std::string mesh_hash_hex(const Surface& surface);

/// Common file header: {"schema": 1, "vertex_count", "edge_count",
/// "face_count", "euler_characteristic", "mesh_hash"}.
json file_header(const Surface& surface);

json curvature_report_json(const Surface& surface,
                           const CurvatureReport& report);
json spectral_report_json(const Surface& surface, const SpectralReport& report);
json obstruction_report_json(const Surface& surface,
                             const ObstructionReport& report);
json feasibility_report_json(const Surface& surface,
                             const FeasibilityReport& report);
json vector_json(const Surface& surface, const std::string& kind,
                 const Vec& values);

/// CSV columns: t,residual,potential,min_slack,drift; '#' header lines carry
/// the mesh identity. Optional JSON-lines u snapshots written alongside.
void write_trace_csv(const std::filesystem::path& path, const Surface& surface,
                     const FlowTrace& trace);
void write_trace_u_jsonl(const std::filesystem::path& path,
                         const FlowTrace& trace);

void write_json(const std::filesystem::path& path, const json& j);

}  // namespace idcp::io
