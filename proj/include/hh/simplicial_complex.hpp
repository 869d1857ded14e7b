#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hh/detail/sha256.hpp"
#include "hh/vertex_set.hpp"

namespace hh {

/// f_vector(K)[i] = number of i-dimensional faces; empty for the empty complex.
using FVector = std::vector<long long>;

/**
 * Abstract simplicial complex on vertices {1, ..., m}, m <= 63, held in
 * canonical form: the list of maximal faces (facets), deduplicated and
 * sorted lexicographically by ascending vertex sequence.
 *
 * Canonical complexes have no ghost vertices (every vertex lies in a facet).
 * Restriction and link intentionally keep the ambient vertex set and their
 * results may contain ghosts; see from_facets' ghost_policy.
 *
 * The empty complex is m = 0 with the single facet {}; a complex whose only
 * face is {} keeps that representation for any ambient m.
 */
class SimplicialComplex {
 public:
  enum class ghost_policy { reject, allow };

  SimplicialComplex() : m_(0), facets_{VertexSet{}} {}

  static SimplicialComplex from_facets(int m, std::vector<VertexSet> facets,
                                       ghost_policy ghosts = ghost_policy::reject) {
    if (m < 0 || m > VertexSet::max_vertices)
      throw std::invalid_argument("vertex count out of range: " + std::to_string(m));
    VertexSet ambient = VertexSet::full(m);
    VertexSet support;
    for (VertexSet f : facets) {
      if (!ambient.contains_all(f))
        throw std::invalid_argument("facet {" + f.to_string() + "} exceeds vertex set 1.." +
                                    std::to_string(m));
      support = support | f;
    }
    if (ghosts == ghost_policy::reject && support != ambient)
      throw std::invalid_argument("ghost vertices {" + (ambient - support).to_string() +
                                  "}: every vertex must lie in a facet");
    SimplicialComplex k;
    k.m_ = m;
    k.facets_ = maximalize(std::move(facets));
    return k;
  }

  int vertex_count() const { return m_; }

  /// Max facet dimension; -1 when the only face is {}.
  int dimension() const {
    int best = 0;
    for (VertexSet f : facets_) best = std::max(best, f.size());
    return best - 1;
  }

  const std::vector<VertexSet>& facets() const { return facets_; }
  std::size_t facet_count() const { return facets_.size(); }

  /// Union of all facets; equals {1..m} exactly when there are no ghosts.
  VertexSet support() const {
    VertexSet s;
    for (VertexSet f : facets_) s = s | f;
    return s;
  }
  bool has_ghosts() const { return support() != VertexSet::full(m_); }

  /// Face test: sigma is a face iff it lies in some facet ({} always is).
  bool contains(VertexSet sigma) const {
    for (VertexSet f : facets_)
      if (f.contains_all(sigma)) return true;
    return false;
  }

  bool is_facet(VertexSet sigma) const {
    return std::find(facets_.begin(), facets_.end(), sigma) != facets_.end();
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.m_ == b.m_ && a.facets_ == b.facets_;
  }

  /**
   * SHA-256 of the canonical serialization "m\n" followed by one facet line
   * per facet in canonical order.  Stable across runs and platforms; used as
   * the cache key and in result documents.
   */
  std::string canonical_hash() const {
    std::string data = std::to_string(m_) + "\n";
    for (VertexSet f : facets_) {
      data += f.to_string();
      data += '\n';
    }
    return detail::sha256_hex(data);
  }

 private:
  /// Drop duplicates and non-maximal faces; empty input becomes {{}}.
  static std::vector<VertexSet> maximalize(std::vector<VertexSet> faces) {
    std::sort(faces.begin(), faces.end(),
              [](VertexSet a, VertexSet b) { return a.size() > b.size(); });
    std::vector<VertexSet> out;
    for (VertexSet f : faces) {
      bool dominated = false;
      for (VertexSet g : out)
        if (g.contains_all(f)) {
          dominated = true;
          break;
        }
      if (!dominated) out.push_back(f);
    }
    if (out.empty()) out.push_back(VertexSet{});
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }

  int m_;
  std::vector<VertexSet> facets_;
};

/// All size-s faces lying inside `within`, sorted lexicographically.
/// s == 0 yields {{}}: the empty simplex is a face of every complex.
inline std::vector<VertexSet> faces_of_size(const SimplicialComplex& k, VertexSet within, int s) {
  if (s == 0) return {VertexSet{}};
  if (s < 0) return {};
  // Maximal faces of the restriction; subsets get enumerated per face.
  std::vector<VertexSet> maximal;
  for (VertexSet f : k.facets()) {
    VertexSet r = f & within;
    if (r.size() < s) continue;
    bool dominated = false;
    for (VertexSet g : maximal)
      if (g.contains_all(r)) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(r);
  }
  std::vector<VertexSet> out;
  std::vector<int> verts, pick(static_cast<std::size_t>(s));
  for (VertexSet r : maximal) {
    verts = r.to_vector();
    int n = static_cast<int>(verts.size());
    // Index combinations n choose s in ascending order.
    for (int i = 0; i < s; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      VertexSet face;
      for (int i = 0; i < s; ++i)
        face = face.with(verts[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]);
      out.push_back(face);
      int j = s - 1;
      while (j >= 0 && pick[static_cast<std::size_t>(j)] == n - s + j) --j;
      if (j < 0) break;
      ++pick[static_cast<std::size_t>(j)];
      for (int i = j + 1; i < s; ++i)
        pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// All faces of every dimension, including {}.
inline std::vector<VertexSet> all_faces(const SimplicialComplex& k) {
  std::unordered_set<std::uint64_t> seen;
  for (VertexSet f : k.facets()) {
    // Subset enumeration of each facet mask, standard descending-submask walk.
    std::uint64_t bits = f.bits();
    std::uint64_t sub = bits;
    while (true) {
      seen.insert(sub);
      if (sub == 0) break;
      sub = (sub - 1) & bits;
    }
  }
  std::vector<VertexSet> out;
  out.reserve(seen.size());
  for (std::uint64_t s : seen) out.push_back(VertexSet::from_bits(s));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

inline FVector f_vector(const SimplicialComplex& k) {
  FVector f(static_cast<std::size_t>(k.dimension() + 1), 0);
  for (VertexSet face : all_faces(k))
    if (!face.empty()) ++f[static_cast<std::size_t>(face.size() - 1)];
  return f;
}

/**
 * Full subcomplex K_J = { sigma in K : sigma within J }.  Keeps the ambient
 * vertex set and original labels, so vertices outside J become ghosts; the
 * no-ghost rule is waived for restrictions.  Satisfies
 * restrict(restrict(K, J), I) == restrict(K, I & J).
 */
inline SimplicialComplex restrict(const SimplicialComplex& k, VertexSet j) {
  if (!VertexSet::full(k.vertex_count()).contains_all(j))
    throw std::invalid_argument("restrict: J exceeds the vertex set");
  std::vector<VertexSet> facets;
  facets.reserve(k.facet_count());
  for (VertexSet f : k.facets()) facets.push_back(f & j);
  return SimplicialComplex::from_facets(k.vertex_count(), std::move(facets),
                                        SimplicialComplex::ghost_policy::allow);
}

/// Link of a face: { tau : tau disjoint from sigma, tau | sigma in K }.
/// Ambient vertex set kept, ghost rule waived (like restrict).
inline SimplicialComplex link(const SimplicialComplex& k, VertexSet sigma) {
  if (!k.contains(sigma)) throw std::invalid_argument("link: {" + sigma.to_string() + "} is not a face");
  std::vector<VertexSet> facets;
  for (VertexSet f : k.facets())
    if (f.contains_all(sigma)) facets.push_back(f - sigma);
  return SimplicialComplex::from_facets(k.vertex_count(), std::move(facets),
                                        SimplicialComplex::ghost_policy::allow);
}

/// d-skeleton: all faces of dimension <= d.
inline SimplicialComplex skeleton(const SimplicialComplex& k, int d) {
  if (d < -1) throw std::invalid_argument("skeleton: dimension below -1");
  if (d >= k.dimension()) return k;
  std::vector<VertexSet> facets;
  for (VertexSet f : k.facets()) {
    if (f.size() - 1 <= d) {
      facets.push_back(f);
    } else {
      for (VertexSet s : faces_of_size(k, f, d + 1)) facets.push_back(s);
    }
  }
  // d == -1 with m > 0 would ghost every vertex; callers get the ambient-kept form.
  return SimplicialComplex::from_facets(k.vertex_count(), std::move(facets),
                                        SimplicialComplex::ghost_policy::allow);
}

namespace detail {
inline VertexSet shift_labels(VertexSet s, int by) {
  return VertexSet::from_bits(s.bits() << by);
}
}  // namespace detail

/**
 * Simplicial join.  Vertices of k2 are relabeled to m1+1, ..., m1+m2 in
 * ascending order; facets are all unions of a k1 facet with a k2 facet.
 * The empty complex is the unit.
 */
inline SimplicialComplex join(const SimplicialComplex& k1, const SimplicialComplex& k2) {
  int m = k1.vertex_count() + k2.vertex_count();
  if (m > VertexSet::max_vertices)
    throw std::invalid_argument("join: combined vertex count exceeds " +
                                std::to_string(VertexSet::max_vertices));
  std::vector<VertexSet> facets;
  facets.reserve(k1.facet_count() * k2.facet_count());
  for (VertexSet f1 : k1.facets())
    for (VertexSet f2 : k2.facets())
      facets.push_back(f1 | detail::shift_labels(f2, k1.vertex_count()));
  return SimplicialComplex::from_facets(m, std::move(facets));
}

/**
 * Connected sum along facets sigma1 of k1 and sigma2 of k2 (equal size).
 * sigma2's i-th smallest vertex is identified with sigma1's i-th smallest;
 * k2's remaining vertices are relabeled to m1+1, ... preserving order.  The
 * shared facet is removed, everything else unioned.
 */
inline SimplicialComplex connected_sum(const SimplicialComplex& k1, VertexSet sigma1,
                                       const SimplicialComplex& k2, VertexSet sigma2) {
  if (!k1.is_facet(sigma1))
    throw std::invalid_argument("connected_sum: {" + sigma1.to_string() + "} is not a facet");
  if (!k2.is_facet(sigma2))
    throw std::invalid_argument("connected_sum: {" + sigma2.to_string() + "} is not a facet");
  if (sigma1.size() != sigma2.size())
    throw std::invalid_argument("connected_sum: facet sizes differ");
  int m1 = k1.vertex_count();
  int m = m1 + k2.vertex_count() - sigma2.size();
  if (m > VertexSet::max_vertices)
    throw std::invalid_argument("connected_sum: combined vertex count exceeds " +
                                std::to_string(VertexSet::max_vertices));
  std::vector<int> image(static_cast<std::size_t>(k2.vertex_count()) + 1, 0);
  std::vector<int> s1 = sigma1.to_vector(), s2 = sigma2.to_vector();
  for (std::size_t i = 0; i < s2.size(); ++i) image[static_cast<std::size_t>(s2[i])] = s1[i];
  int next = m1;
  for (int v = 1; v <= k2.vertex_count(); ++v)
    if (!sigma2.contains(v)) image[static_cast<std::size_t>(v)] = ++next;
  std::vector<VertexSet> facets;
  for (VertexSet f : k1.facets())
    if (f != sigma1) facets.push_back(f);
  for (VertexSet f : k2.facets()) {
    if (f == sigma2) continue;
    VertexSet g;
    for (int v : f.to_vector()) g = g.with(image[static_cast<std::size_t>(v)]);
    facets.push_back(g);
  }
  return SimplicialComplex::from_facets(m, std::move(facets));
}

/// Adds sigma (and its subsets) as faces; sigma must fit the ambient vertex set.
inline SimplicialComplex add_face(const SimplicialComplex& k, VertexSet sigma) {
  if (!VertexSet::full(k.vertex_count()).contains_all(sigma))
    throw std::invalid_argument("add_face: {" + sigma.to_string() + "} exceeds the vertex set");
  std::vector<VertexSet> facets = k.facets();
  facets.push_back(sigma);
  return SimplicialComplex::from_facets(k.vertex_count(), std::move(facets),
                                        SimplicialComplex::ghost_policy::allow);
}

/**
 * Removes one maximal face: the result's faces are exactly faces(K) minus f.
 * Boundary subsets of f that stop being covered become facets.  Removing a
 * singleton facet would orphan its vertex and is an error.
 */
inline SimplicialComplex remove_facet(const SimplicialComplex& k, VertexSet f) {
  if (!k.is_facet(f)) throw std::invalid_argument("remove_facet: {" + f.to_string() + "} is not a facet");
  if (f.size() <= 1)
    throw std::invalid_argument("remove_facet: removing facet {" + f.to_string() +
                                "} would leave a ghost vertex");
  std::vector<VertexSet> facets;
  for (VertexSet g : k.facets())
    if (g != f) facets.push_back(g);
  for (int v : f.to_vector()) facets.push_back(f.without(v));
  return SimplicialComplex::from_facets(k.vertex_count(), std::move(facets));
}

/// Number of edges containing vertex v.
inline int degree(const SimplicialComplex& k, int v) {
  if (v < 1 || v > k.vertex_count())
    throw std::invalid_argument("degree: vertex " + std::to_string(v) + " out of range");
  VertexSet neighbors;
  for (VertexSet f : k.facets())
    if (f.contains(v)) neighbors = neighbors | f;
  return (neighbors - VertexSet::single(v)).size();
}

/// Minimum vertex degree over the support (ghost vertices don't count).
inline int min_degree(const SimplicialComplex& k) {
  VertexSet support = k.support();
  if (support.empty()) throw std::invalid_argument("min_degree: complex has no vertices");
  int best = -1;
  for (int v : support.to_vector()) {
    int d = degree(k, v);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

}  // namespace hh
