#pragma once

#include "idcp/surface.hpp"

namespace idcp::meshes {

/// Boundary of the tetrahedron: N=4, |E|=6, |F|=4, chi=2.
Surface tetrahedron();

/// Octahedron: N=6, |E|=12, |F|=8, chi=2.
Surface octahedron();

/// Icosahedron: N=12, |E|=30, |F|=20, chi=2, all degrees 5.
Surface icosahedron();

/// The 7-vertex regular torus triangulation (Moebius-Kantor): N=7, |E|=21,
/// |F|=14, chi=0, every vertex degree 6.
Surface torus7();

/// m x n grid torus with diagonal splits; N = m*n, chi = 0. Needs m, n >= 3.
Surface grid_torus(int m, int n);

}  // namespace idcp::meshes
