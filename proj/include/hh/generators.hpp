#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hh/simplicial_complex.hpp"

namespace hh {

/// Boundary of the m-gon: the cycle 1-2-...-m-1 as a 1-sphere, m >= 3.
inline SimplicialComplex gen_cycle(int m) {
  if (m < 3) throw std::invalid_argument("gen_cycle: need at least 3 vertices");
  std::vector<VertexSet> facets;
  facets.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i < m; ++i) facets.push_back({i, i + 1});
  facets.push_back({1, m});
  return SimplicialComplex::from_facets(m, std::move(facets));
}

/// Boundary of the n-simplex: all n-subsets of {1..n+1}, an (n-1)-sphere.
inline SimplicialComplex gen_simplex_boundary(int n) {
  if (n < 1) throw std::invalid_argument("gen_simplex_boundary: need n >= 1");
  if (n + 1 > VertexSet::max_vertices)
    throw std::invalid_argument("gen_simplex_boundary: vertex count exceeds " +
                                std::to_string(VertexSet::max_vertices));
  int m = n + 1;
  std::vector<VertexSet> facets;
  VertexSet full = VertexSet::full(m);
  for (int v = m; v >= 1; --v) facets.push_back(full.without(v));
  return SimplicialComplex::from_facets(m, std::move(facets));
}

/**
 * Bicapped antiprism sphere: h stacked n-gonal antiprism bands capped by
 * cones at both ends.  Ring r (r = 0..h) holds vertices r*n+1 .. r*n+n; the
 * top cap vertex is n*(h+1)+1, the bottom cap vertex n*(h+1)+2.  Band r has
 * the triangles {c^r_i, c^r_{i+1}, c^{r+1}_i} and
 * {c^r_{i+1}, c^{r+1}_i, c^{r+1}_{i+1}} with i cyclic; this orientation of
 * the band diagonals is part of the generator's contract.
 * 2n(h+1) facets on n(h+1)+2 vertices; (n,h) = (5,1) triangulates the same
 * sphere as gen_icosahedron with a different labeling.
 */
inline SimplicialComplex gen_bicapped_antiprism(int n, int h) {
  if (n < 3) throw std::invalid_argument("gen_bicapped_antiprism: ring size must be >= 3");
  if (h < 1) throw std::invalid_argument("gen_bicapped_antiprism: need at least one band");
  int m = n * (h + 1) + 2;
  if (m > VertexSet::max_vertices)
    throw std::invalid_argument("gen_bicapped_antiprism: vertex count " + std::to_string(m) +
                                " exceeds " + std::to_string(VertexSet::max_vertices));
  auto ring = [n](int r, int i) {  // i is 1-based and cyclic
    return r * n + ((i - 1) % n) + 1;
  };
  int top = n * (h + 1) + 1, bottom = n * (h + 1) + 2;
  std::vector<VertexSet> facets;
  facets.reserve(static_cast<std::size_t>(2 * n * (h + 1)));
  for (int i = 1; i <= n; ++i) facets.push_back({top, ring(0, i), ring(0, i + 1)});
  for (int r = 0; r < h; ++r)
    for (int i = 1; i <= n; ++i) {
      facets.push_back({ring(r, i), ring(r, i + 1), ring(r + 1, i)});
      facets.push_back({ring(r, i + 1), ring(r + 1, i), ring(r + 1, i + 1)});
    }
  for (int i = 1; i <= n; ++i) facets.push_back({bottom, ring(h, i), ring(h, i + 1)});
  return SimplicialComplex::from_facets(m, std::move(facets));
}

/**
 * The icosahedron as a 20-facet literal in planar-diagram labeling: vertex 1
 * coned to the inner pentagon 2..6, outer pentagon 7..11, vertex 12 coned to
 * the outer pentagon.  Same sphere as gen_bicapped_antiprism(5, 1) under a
 * vertex relabeling; keeping both constructions independent makes the
 * isomorphism-grade cross-checks in the test suite meaningful.
 */
inline SimplicialComplex gen_icosahedron() {
  static const int faces[20][3] = {
      {1, 2, 3},  {1, 3, 4},  {1, 4, 5},   {1, 5, 6},   {1, 6, 2},
      {2, 7, 3},  {3, 7, 8},  {3, 8, 4},   {4, 8, 9},   {4, 9, 5},
      {5, 9, 10}, {5, 10, 6}, {6, 10, 11}, {6, 11, 2},  {2, 11, 7},
      {7, 12, 8}, {8, 12, 9}, {9, 12, 10}, {10, 12, 11}, {11, 12, 7}};
  std::vector<VertexSet> facets;
  facets.reserve(20);
  for (auto& f : faces) facets.push_back({f[0], f[1], f[2]});
  return SimplicialComplex::from_facets(12, std::move(facets));
}

/**
 * Validating stub for the 16-vertex augmented icosahedron: no canonical
 * facet list is bundled, the caller supplies one (e.g. from a ComplexFile).
 * Only the basic complex invariants are enforced here; structural claims
 * about the triangulation stay the caller's responsibility.
 */
inline SimplicialComplex gen_augmented_icosahedron(int m, std::vector<VertexSet> facets) {
  SimplicialComplex k = SimplicialComplex::from_facets(m, std::move(facets));
  if (k.dimension() != 2)
    throw std::invalid_argument("gen_augmented_icosahedron: facet list is not a 2-complex");
  return k;
}

}  // namespace hh
