#include "idcp/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace idcp::io {

namespace {

std::string read_token(std::istream& in) {
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return tok;
  }
  throw InvalidInputError("unexpected end of OFF file");
}

int to_int(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw InvalidInputError("bad integer in mesh file: '" + s + "'");
  return v;
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

Surface parse_off(std::istream& in) {
  std::string magic = read_token(in);
  if (magic != "OFF") throw InvalidInputError("missing OFF header");
  int nv = to_int(read_token(in));
  int nf = to_int(read_token(in));
  read_token(in);  // edge count, ignored
  for (int v = 0; v < 3 * nv; ++v) read_token(in);  // coordinates, ignored
  std::vector<FaceTriple> faces;
  faces.reserve(nf);
  for (int f = 0; f < nf; ++f) {
    int arity = to_int(read_token(in));
    if (arity != 3)
      throw InvalidInputError("OFF face with " + std::to_string(arity) +
                              " vertices; only triangles supported");
    int a = to_int(read_token(in));
    int b = to_int(read_token(in));
    int c = to_int(read_token(in));
    faces.push_back({a, b, c});
  }
  return Surface::from_faces(faces, nv);
}

Surface parse_mesh_json(const json& j) {
  if (!j.contains("faces")) throw InvalidInputError("mesh JSON lacks 'faces'");
  std::vector<FaceTriple> faces;
  for (const auto& f : j.at("faces")) {
    if (!f.is_array() || f.size() != 3)
      throw InvalidInputError("mesh JSON face is not a triple");
    faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
  }
  int n = j.value("vertex_count", -1);
  return Surface::from_faces(faces, n);
}

Surface load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open mesh file " + path.string());
  if (path.extension() == ".off" || path.extension() == ".OFF")
    return parse_off(in);
  if (path.extension() == ".json") {
    json j;
    in >> j;
    return parse_mesh_json(j);
  }
  throw InvalidInputError("unknown mesh format " + path.string() +
                          " (expected .off or .json)");
}

Vec load_values(const std::string& spec, Eigen::Index expected,
                const std::string& what) {
  if (spec == "ones") return Vec::Ones(expected);
  double uniform = 0.0;
  if (parse_double(spec, uniform)) return Vec::Constant(expected, uniform);

  std::filesystem::path path(spec);
  std::ifstream in(path);
  if (!in)
    throw InvalidInputError("cannot open " + what + " file " + spec);

  Vec out;
  if (path.extension() == ".csv") {
    out = Vec::Constant(expected, std::numeric_limits<double>::quiet_NaN());
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto comma = line.find(',');
      if (comma == std::string::npos)
        throw InvalidInputError("bad CSV row in " + spec + ": '" + line + "'");
      int idx = to_int(line.substr(0, comma));
      double val = 0.0;
      if (!parse_double(line.substr(comma + 1), val))
        throw InvalidInputError("bad CSV value in " + spec);
      if (idx < 0 || idx >= expected)
        throw InvalidInputError("CSV index out of range in " + spec);
      out[idx] = val;
    }
    if (!out.allFinite())
      throw InvalidInputError(what + " CSV " + spec + " leaves entries unset");
    return out;
  }

  json j;
  in >> j;
  const json* arr = &j;
  if (j.is_object()) {
    if (j.contains("values"))
      arr = &j.at("values");
    else
      throw InvalidInputError(what + " JSON " + spec +
                              " has no 'values' array");
  }
  if (!arr->is_array())
    throw InvalidInputError(what + " JSON " + spec + " is not an array");
  if (static_cast<Eigen::Index>(arr->size()) != expected)
    throw InvalidInputError(what + " length " + std::to_string(arr->size()) +
                            " != expected " + std::to_string(expected));
  out.resize(expected);
  for (Eigen::Index i = 0; i < expected; ++i)
    out[i] = (*arr)[static_cast<std::size_t>(i)].get<double>();
  return out;
}

std::string mesh_hash_hex(const Surface& surface) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0')
     << surface.content_hash();
  return os.str();
}

json file_header(const Surface& surface) {
  return json{{"schema", 1},
              {"vertex_count", surface.vertex_count()},
              {"edge_count", surface.edge_count()},
              {"face_count", surface.face_count()},
              {"euler_characteristic", surface.euler_characteristic()},
              {"mesh_hash", mesh_hash_hex(surface)}};
}

namespace {
json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json subset_rows_json(const Surface& surface,
                      const std::vector<SubsetRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json subset = json::array();
    for (int v = 0; v < surface.vertex_count(); ++v)
      if (row.mask & (1u << v)) subset.push_back(v);
    out.push_back({{"subset", subset},
                   {"chi_subcomplex", row.chi_subcomplex},
                   {"link_size", row.link_size},
                   {"lhs", row.lhs},
                   {"rhs", row.rhs},
                   {"margin", row.margin}});
  }
  return out;
}

const char* verdict_name(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::InY: return "InY";
    case AuditVerdict::OnBoundary: return "OnBoundary";
    default: return "Violated";
  }
}
}  // namespace

json curvature_report_json(const Surface& surface,
                           const CurvatureReport& report) {
  json j = file_header(surface);
  j["alpha"] = report.alpha;
  j["s_alpha"] = report.s_alpha;
  j["in_omega"] = report.in_omega;
  j["min_slack"] = report.min_slack;
  j["curvature"] = vec_to_json(report.curvature);
  j["alpha_curvature"] = vec_to_json(report.alpha_curvature);
  j["edge_lengths"] = vec_to_json(report.edge_lengths);
  j["gauss_bonnet"] = report.gauss_bonnet_sum;
  j["face_admissible"] = json::array();
  for (char a : report.face_admissible)
    j["face_admissible"].push_back(static_cast<bool>(a));
  return j;
}

json spectral_report_json(const Surface& surface,
                          const SpectralReport& report) {
  json j = file_header(surface);
  j["alpha"] = report.alpha;
  j["eigenvalues"] = vec_to_json(report.eigenvalues);
  j["lambda1"] = report.lambda1;
  j["s_alpha"] = report.s_alpha;
  j["stability_margin"] = report.stability_margin;
  j["stability_verdict"] = report.stability_margin > 0.0;
  j["margin_automatic"] = report.margin_automatic;
  j["kernel_cosine"] = report.kernel_cosine;
  return j;
}

json obstruction_report_json(const Surface& surface,
                             const ObstructionReport& report) {
  json j = file_header(surface);
  j["verdict"] = verdict_name(report.verdict);
  j["gauss_bonnet_check"] = report.gauss_bonnet_check;
  j["hyperplane_ok"] = report.hyperplane_ok;
  j["subsets_examined"] = report.subsets_examined;
  j["exhaustive"] = report.exhaustive;
  j["metric_in_omega"] = report.metric_in_omega;
  j["worst_margins"] = subset_rows_json(surface, report.worst);
  if (!report.full.empty())
    j["full_table"] = subset_rows_json(surface, report.full);
  if (!report.note.empty()) j["note"] = report.note;
  // The candidate audit uses x_i = s_alpha r_i^alpha (exponent alpha on r),
  // the curvature value a constant alpha-curvature metric must carry.
  j["candidate_exponent"] = "alpha";
  return j;
}

json feasibility_report_json(const Surface& surface,
                             const FeasibilityReport& report) {
  json j = file_header(surface);
  j["chi"] = report.chi;
  switch (report.status) {
    case Feasibility::Feasible: j["status"] = "Feasible"; break;
    case Feasibility::Infeasible: j["status"] = "Infeasible"; break;
    default: j["status"] = "Unresolved"; break;
  }
  j["best_min_margin"] = report.best_min_margin;
  if (report.witness.size() > 0) j["witness"] = vec_to_json(report.witness);
  if (report.blocking_subset) {
    json subset = json::array();
    for (int v = 0; v < surface.vertex_count(); ++v)
      if (*report.blocking_subset & (1u << v)) subset.push_back(v);
    j["blocking_subset"] = subset;
  }
  if (!report.worst.empty())
    j["worst_margins"] = subset_rows_json(surface, report.worst);
  j["note"] = report.note;
  return j;
}

json vector_json(const Surface& surface, const std::string& kind,
                 const Vec& values) {
  json j = file_header(surface);
  j["kind"] = kind;
  j["values"] = vec_to_json(values);
  return j;
}

void write_trace_csv(const std::filesystem::path& path, const Surface& surface,
                     const FlowTrace& trace) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write " + path.string());
  out << "# schema=1 vertex_count=" << surface.vertex_count()
      << " edge_count=" << surface.edge_count()
      << " mesh_hash=" << mesh_hash_hex(surface) << "\n";
  out << "t,residual,potential,min_slack,drift\n";
  out << std::setprecision(17);
  for (const auto& row : trace.rows)
    out << row.t << ',' << row.residual << ',' << row.potential << ','
        << row.min_slack << ',' << row.drift << "\n";
}

void write_trace_u_jsonl(const std::filesystem::path& path,
                         const FlowTrace& trace) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write " + path.string());
  for (const auto& row : trace.rows) {
    if (row.u.size() == 0) continue;
    json j{{"t", row.t}, {"u", vec_to_json(row.u)}};
    out << j.dump() << "\n";
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write " + path.string());
  out << std::setw(2) << j << "\n";
}

}  // namespace idcp::io
