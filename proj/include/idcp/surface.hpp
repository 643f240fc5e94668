#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idcp/errors.hpp"

namespace idcp {

using FaceTriple = std::array<int, 3>;
using EdgePair = std::array<int, 2>;  // sorted: first < second

/// Immutable combinatorial closed triangulated surface.
///
/// Edges are indexed canonically: the set of sorted vertex pairs occurring in
/// faces, ordered lexicographically. All per-edge arrays in the library follow
/// this order, so emitted files are reproducible bit-for-bit.
class Surface {
 public:
  /// Validates and builds a surface from a face list. Vertex indices are
  /// 0-based; vertex_count < 0 means "deduce as max index + 1".
  /// Throws DegenerateFaceError, NonManifoldError, DisconnectedError.
  static Surface from_faces(const std::vector<FaceTriple>& faces,
                            int vertex_count = -1);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int euler_characteristic() const { return euler_characteristic_; }

  const std::vector<FaceTriple>& faces() const { return faces_; }
  const std::vector<EdgePair>& edges() const { return edges_; }
  const std::vector<int>& vertex_degrees() const { return degrees_; }
  int max_degree() const { return max_degree_; }

  /// Canonical index of edge {a, b}; throws InvalidInputError if absent.
  int edge_index(int a, int b) const;

  /// Edge indices of face f, position p holding the edge opposite vertex p.
  const std::array<int, 3>& face_edges(int f) const { return face_edges_[f]; }

  /// FNV-1a hash of the canonicalized face list; stable across runs.
  std::uint64_t content_hash() const { return hash_; }

 private:
  Surface() = default;

  int vertex_count_ = 0;
  int euler_characteristic_ = 0;
  int max_degree_ = 0;
  std::vector<FaceTriple> faces_;
  std::vector<EdgePair> edges_;
  std::vector<std::array<int, 3>> face_edges_;
  std::vector<int> degrees_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
  std::uint64_t hash_ = 0;
};

/// Induced subcomplex data for a nonempty proper vertex subset A, together
/// with the link pairs Lk(A): pairs (edge e, vertex v) where both endpoints
/// of e lie outside A, v lies in A, and e and v span a face.
struct SubcomplexSummary {
  std::vector<int> subset;
  int induced_vertex_count = 0;
  int induced_edge_count = 0;
  int induced_face_count = 0;
  int euler_characteristic = 0;
  std::vector<std::pair<int, int>> link_pairs;  // (edge index, vertex index)
};

/// Throws EmptyOrFullSubsetError when A is empty or all of V.
SubcomplexSummary subcomplex_summary(const Surface& surface,
                                     const std::vector<int>& subset);

}  // namespace idcp
