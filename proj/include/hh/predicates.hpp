#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hh/simplicial_complex.hpp"

namespace hh {

/// All facets share one dimension; the empty complex is trivially pure.
inline bool is_pure(const SimplicialComplex& k) {
  int size = k.facets().front().size();
  for (VertexSet f : k.facets())
    if (f.size() != size) return false;
  return true;
}

namespace detail {

/// Disjoint set union over facet indices.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t component_count() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i)
      if (find(i) == i) ++n;
    return n;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/**
 * Pure, every ridge (codimension-1 face) lies in exactly two facets, and the
 * facet adjacency graph along ridges is connected.  Dimension 0 works out to
 * exactly two points (both share the ridge {}), so S^0 qualifies.
 */
inline bool is_pseudomanifold(const SimplicialComplex& k) {
  if (k.dimension() < 0) return false;
  if (!is_pure(k)) return false;
  const auto& facets = k.facets();
  std::map<std::uint64_t, std::vector<std::size_t>> ridge_owners;
  for (std::size_t fi = 0; fi < facets.size(); ++fi) {
    VertexSet f = facets[fi];
    if (f.size() == 1) {
      ridge_owners[0].push_back(fi);  // the ridge of a vertex is {}
      continue;
    }
    for (int v : f.to_vector()) ridge_owners[f.without(v).bits()].push_back(fi);
  }
  detail::UnionFind uf(facets.size());
  for (const auto& [ridge, owners] : ridge_owners) {
    if (owners.size() != 2) return false;
    uf.unite(owners[0], owners[1]);
  }
  return uf.component_count() == 1;
}

/// Every (p+1)-subset of the vertex set is a face; p = 0 just says no ghosts.
inline bool is_p_neighborly(const SimplicialComplex& k, int p) {
  if (p < 0) throw std::invalid_argument("is_p_neighborly: negative p");
  int m = k.vertex_count();
  if (p == 0) return !k.has_ghosts();
  if (p + 1 > m) return true;
  // Enumerate (p+1)-subsets of {1..m}; contains() prunes via the facet list.
  std::vector<int> pick(static_cast<std::size_t>(p) + 1);
  std::iota(pick.begin(), pick.end(), 1);
  while (true) {
    VertexSet s;
    for (int v : pick) s = s.with(v);
    if (!k.contains(s)) return false;
    int j = p;
    while (j >= 0 && pick[static_cast<std::size_t>(j)] == m - p + j) --j;
    if (j < 0) return true;
    ++pick[static_cast<std::size_t>(j)];
    for (int i = j + 1; i <= p; ++i)
      pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
  }
}

/// Largest p with K p-neighborly; the full simplex gives m.
inline int max_neighborliness(const SimplicialComplex& k) {
  if (k.has_ghosts()) return -1;
  int m = k.vertex_count();
  for (int p = 1; p <= m; ++p)
    if (!is_p_neighborly(k, p)) return p - 1;
  return m;
}

/**
 * Wedge-decomposability along a face sigma: K = K1 union K2 with
 * K1 /\ K2 = the full simplex on sigma and sigma a proper face of both.
 * Criterion: on the facets other than sigma itself, draw an edge whenever
 * two facets share a face not inside sigma; K is decomposable along sigma
 * iff that graph has at least two components.  (Both halves are then the
 * component closures plus the sigma-simplex.)
 */
inline bool is_wedge_decomposable_along(const SimplicialComplex& k, VertexSet sigma) {
  if (!k.contains(sigma))
    throw std::invalid_argument("is_wedge_decomposable_along: {" + sigma.to_string() +
                                "} is not a face");
  std::vector<VertexSet> nodes;
  for (VertexSet f : k.facets())
    if (f != sigma) nodes.push_back(f);
  if (nodes.size() < 2) return false;
  detail::UnionFind uf(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (!sigma.contains_all(nodes[i] & nodes[j])) uf.unite(i, j);
  return uf.component_count() >= 2;
}

}  // namespace hh
