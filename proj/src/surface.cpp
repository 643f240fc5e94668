#include "idcp/surface.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace idcp {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

Surface Surface::from_faces(const std::vector<FaceTriple>& faces,
                            int vertex_count) {
  if (faces.empty()) throw InvalidInputError("face list is empty");

  int max_index = -1;
  for (const auto& f : faces)
    for (int v : f) {
      if (v < 0) throw InvalidInputError("negative vertex index");
      max_index = std::max(max_index, v);
    }
  int n = vertex_count < 0 ? max_index + 1 : vertex_count;
  if (max_index >= n)
    throw InvalidInputError("vertex index " + std::to_string(max_index) +
                            " out of range for vertex_count " +
                            std::to_string(n));

  // Reject repeated vertices within a face and duplicate face vertex sets.
  std::vector<FaceTriple> sorted_faces;
  sorted_faces.reserve(faces.size());
  for (const auto& f : faces) {
    FaceTriple s = f;
    std::sort(s.begin(), s.end());
    if (s[0] == s[1] || s[1] == s[2])
      throw DegenerateFaceError("face with repeated vertex");
    sorted_faces.push_back(s);
  }
  {
    auto dup = sorted_faces;
    std::sort(dup.begin(), dup.end());
    if (std::adjacent_find(dup.begin(), dup.end()) != dup.end())
      throw DegenerateFaceError("two faces share the same vertex set");
  }

  // Canonical edge set with incidence counts.
  std::unordered_map<std::uint64_t, int> edge_face_count;
  for (const auto& f : sorted_faces) {
    edge_face_count[edge_key(f[0], f[1])]++;
    edge_face_count[edge_key(f[0], f[2])]++;
    edge_face_count[edge_key(f[1], f[2])]++;
  }
  for (const auto& [key, count] : edge_face_count) {
    if (count != 2) {
      int a = static_cast<int>(key >> 32);
      int b = static_cast<int>(key & 0xffffffff);
      throw NonManifoldError("edge {" + std::to_string(a) + "," +
                             std::to_string(b) + "} lies in " +
                             std::to_string(count) + " faces (expected 2)");
    }
  }

  Surface s;
  s.vertex_count_ = n;
  s.faces_ = faces;

  s.edges_.reserve(edge_face_count.size());
  for (const auto& [key, count] : edge_face_count)
    s.edges_.push_back({static_cast<int>(key >> 32),
                        static_cast<int>(key & 0xffffffff)});
  std::sort(s.edges_.begin(), s.edges_.end());
  for (int e = 0; e < static_cast<int>(s.edges_.size()); ++e)
    s.edge_lookup_[edge_key(s.edges_[e][0], s.edges_[e][1])] = e;

  s.face_edges_.reserve(faces.size());
  for (const auto& f : faces)
    s.face_edges_.push_back({s.edge_index(f[1], f[2]),   // opposite f[0]
                             s.edge_index(f[0], f[2]),   // opposite f[1]
                             s.edge_index(f[0], f[1])}); // opposite f[2]

  s.degrees_.assign(n, 0);
  for (const auto& e : s.edges_) {
    s.degrees_[e[0]]++;
    s.degrees_[e[1]]++;
  }
  s.max_degree_ = *std::max_element(s.degrees_.begin(), s.degrees_.end());

  // Connectivity of the 1-skeleton; isolated vertices count as disconnected.
  {
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : s.edges_) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
    }
    if (reached != n)
      throw DisconnectedError("1-skeleton is not connected (" +
                              std::to_string(reached) + " of " +
                              std::to_string(n) + " vertices reachable)");
  }

  s.euler_characteristic_ =
      n - static_cast<int>(s.edges_.size()) + static_cast<int>(faces.size());

  std::sort(sorted_faces.begin(), sorted_faces.end());
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(h, static_cast<std::uint64_t>(n));
  for (const auto& f : sorted_faces)
    for (int v : f) h = fnv1a(h, static_cast<std::uint64_t>(v));
  s.hash_ = h;

  return s;
}

int Surface::edge_index(int a, int b) const {
  auto it = edge_lookup_.find(edge_key(a, b));
  if (it == edge_lookup_.end())
    throw InvalidInputError("no edge {" + std::to_string(a) + "," +
                            std::to_string(b) + "}");
  return it->second;
}

SubcomplexSummary subcomplex_summary(const Surface& surface,
                                     const std::vector<int>& subset) {
  const int n = surface.vertex_count();
  std::vector<char> in_a(n, 0);
  int count = 0;
  for (int v : subset) {
    if (v < 0 || v >= n) throw InvalidInputError("subset vertex out of range");
    if (!in_a[v]) {
      in_a[v] = 1;
      ++count;
    }
  }
  if (count == 0 || count == n)
    throw EmptyOrFullSubsetError("subset must be nonempty and proper");

  SubcomplexSummary out;
  out.subset.reserve(count);
  for (int v = 0; v < n; ++v)
    if (in_a[v]) out.subset.push_back(v);
  out.induced_vertex_count = count;

  for (const auto& e : surface.edges())
    if (in_a[e[0]] && in_a[e[1]]) out.induced_edge_count++;

  const auto& faces = surface.faces();
  for (int f = 0; f < surface.face_count(); ++f) {
    const auto& tri = faces[f];
    int inside = static_cast<int>(in_a[tri[0]]) + in_a[tri[1]] + in_a[tri[2]];
    if (inside == 3) out.induced_face_count++;
    if (inside == 1) {
      // Exactly one vertex in A: that vertex paired with its opposite edge
      // is a link pair (both endpoints of the edge lie outside A).
      for (int p = 0; p < 3; ++p)
        if (in_a[tri[p]])
          out.link_pairs.emplace_back(surface.face_edges(f)[p], tri[p]);
    }
  }
  std::sort(out.link_pairs.begin(), out.link_pairs.end());

  out.euler_characteristic = out.induced_vertex_count -
                             out.induced_edge_count + out.induced_face_count;
  return out;
}

}  // namespace idcp
