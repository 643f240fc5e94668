#include "idcp/meshes.hpp"

namespace idcp::meshes {

Surface tetrahedron() {
  return Surface::from_faces({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

Surface octahedron() {
  return Surface::from_faces({{0, 1, 2},
                              {0, 2, 3},
                              {0, 3, 4},
                              {0, 4, 1},
                              {5, 2, 1},
                              {5, 3, 2},
                              {5, 4, 3},
                              {5, 1, 4}});
}

Surface icosahedron() {
  std::vector<FaceTriple> faces;
  auto up = [](int k) { return 1 + (k % 5); };
  auto low = [](int k) { return 6 + (k % 5); };
  for (int k = 0; k < 5; ++k) {
    faces.push_back({0, up(k), up(k + 1)});
    faces.push_back({up(k), low(k), up(k + 1)});
    faces.push_back({up(k + 1), low(k), low(k + 1)});
    faces.push_back({11, low(k + 1), low(k)});
  }
  return Surface::from_faces(faces);
}

Surface torus7() {
  std::vector<FaceTriple> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return Surface::from_faces(faces);
}

Surface grid_torus(int m, int n) {
  if (m < 3 || n < 3) throw InvalidInputError("grid_torus needs m, n >= 3");
  auto id = [n](int i, int j) { return i * n + j; };
  std::vector<FaceTriple> faces;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      int a = id(i, j);
      int b = id((i + 1) % m, j);
      int c = id((i + 1) % m, (j + 1) % n);
      int d = id(i, (j + 1) % n);
      faces.push_back({a, b, c});
      faces.push_back({a, c, d});
    }
  return Surface::from_faces(faces, m * n);
}

}  // namespace idcp::meshes
