#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hh/fields.hpp"
#include "hh/linalg.hpp"
#include "hh/matrix.hpp"
#include "hh/parallel.hpp"
#include "hh/simplicial_complex.hpp"

namespace hh {

/// Default vertex-count cap for the exhaustive 2^m drivers.
inline constexpr int kDefaultMaxM = 26;

/**
 * Invokes fn with the scalar field object matching a runtime FieldSpec.
 * Only usable when fn returns the same type for every field.
 */
template <typename Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  switch (spec.kind) {
    case FieldSpec::Kind::gf2: return fn(Gf2{});
    case FieldSpec::Kind::gfp: return fn(Gfp{spec.p});
    case FieldSpec::Kind::rational: return fn(Rational{});
  }
  throw std::logic_error("unhandled field kind");
}

/**
 * Ordered basis of the degree-`degree` chain group of the full subcomplex
 * K_J: faces of cardinality degree+1 contained in J, lexicographic by
 * ascending vertex sequence.  Degree -1 is spanned by the empty simplex
 * alone; the chain complex is augmented, so homology comes out reduced.
 */
struct ChainBasis {
  int degree = -1;
  std::vector<VertexSet> simplices;

  int size() const { return static_cast<int>(simplices.size()); }

  /// Position of a simplex in the basis, or -1.
  int index_of(VertexSet s) const {
    auto it = std::lower_bound(simplices.begin(), simplices.end(), s, lex_less);
    if (it == simplices.end() || !(*it == s)) return -1;
    return static_cast<int>(it - simplices.begin());
  }
};

inline ChainBasis chain_basis(const SimplicialComplex& k, VertexSet j, int degree) {
  ChainBasis b;
  b.degree = degree;
  if (degree >= -1) b.simplices = faces_of_size(k, j, degree + 1);
  return b;
}

/**
 * Boundary matrix from `cols` to `rows` (degrees p and p-1): the column of
 * [v_0..v_p] has (-1)^i at the row of [v_0..v^_i..v_p], vertices ascending.
 * Every face below must be present in `rows`; chain bases of a complex
 * satisfy this by downward closure.
 */
template <typename F>
MatrixOf<F> boundary_matrix(F field, const ChainBasis& rows, const ChainBasis& cols) {
  if (rows.degree != cols.degree - 1)
    throw std::invalid_argument("boundary_matrix: row degree must be column degree - 1");
  MatrixOf<F> d(field, rows.size(), cols.size());
  for (int c = 0; c < cols.size(); ++c) {
    std::vector<int> verts = cols.simplices[static_cast<std::size_t>(c)].to_vector();
    long long sign = 1;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      VertexSet face = cols.simplices[static_cast<std::size_t>(c)].without(verts[i]);
      int r = rows.index_of(face);
      if (r < 0) throw std::logic_error("boundary_matrix: face below is missing from basis");
      d.set(r, c, field.from_int(sign));
      sign = -sign;
    }
  }
  return d;
}

/**
 * Reduced homology of K_J in one degree, with enough structure to push
 * classes through inclusions: explicit cycle representatives and a solver
 * that rewrites any cycle as boundary + representative combination.
 */
template <typename F>
struct HomologyBasis {
  using Mat = MatrixOf<F>;
  using Value = typename Mat::Value;

  VertexSet subset;
  int degree = 0;
  ChainBasis chain;    // basis the coordinates below refer to
  Mat representatives; // chain.size() x dim, columns are cycles
  int boundary_rank = 0;
  Solver<Mat> decomposer; // factorization of [boundary basis | representatives]

  int dim() const { return representatives.cols(); }

  /// Coordinates of a cycle's class in this basis.  Throws if the vector is
  /// not a cycle of K_J (only reachable through a caller bug).
  std::vector<Value> decompose(const std::vector<Value>& cycle) const {
    auto x = decomposer.solve(cycle);
    if (!x) throw std::logic_error("HomologyBasis::decompose: vector is not a cycle here");
    return std::vector<Value>(x->end() - dim(), x->end());
  }
};

/**
 * H~_degree(K_J; F).  One tracked column reduction of the boundary above
 * yields the image basis; kernel columns that extend it become the stored
 * representatives, and the combined solver answers membership queries.
 * Convention: H~_{-1} is F for the empty restriction and 0 otherwise.
 */
template <typename F>
HomologyBasis<F> reduced_homology(const SimplicialComplex& k, VertexSet j, int degree, F field) {
  using Mat = MatrixOf<F>;
  ChainBasis below = chain_basis(k, j, degree - 1);
  ChainBasis chain = chain_basis(k, j, degree);
  ChainBasis above = chain_basis(k, j, degree + 1);

  Mat d_down = boundary_matrix(field, below, chain);
  Mat d_up = boundary_matrix(field, chain, above);

  Mat cycles = kernel_basis(std::move(d_down));
  ColumnReduction<Mat> red = reduce_columns_tracked(d_up);
  Mat boundaries = first_columns(red.reduced, red.rank);

  // Pivot columns of [boundaries | cycles] beyond the boundary block pick
  // out cycles that are independent modulo boundaries.
  std::vector<int> rep_cols;
  {
    Mat probe = hstack(boundaries, cycles);
    EchelonInfo info = rref_in_place(probe);
    for (int p : info.pivot_cols)
      if (p >= red.rank) rep_cols.push_back(p - red.rank);
  }
  Mat reps = columns_of(cycles, rep_cols);
  if (reps.cols() != cycles.cols() - red.rank)
    throw std::logic_error("reduced_homology: boundaries escaped the cycle space");

  Solver<Mat> dec(hstack(boundaries, reps));
  return HomologyBasis<F>{j, degree, std::move(chain), std::move(reps), red.rank, std::move(dec)};
}

/**
 * Matrix of the map H~_degree(K_J) -> H~_degree(K_{J+x}) induced by
 * inclusion: each source representative, read verbatim as a chain of the
 * larger restriction, is decomposed in the target basis.  No signs enter;
 * simplices keep their vertex order.
 */
template <typename F>
MatrixOf<F> induced_map(const SimplicialComplex& k, VertexSet j, int x, int degree, F field,
                        const HomologyBasis<F>& src, const HomologyBasis<F>& dst) {
  (void)k;
  if (j.contains(x)) throw std::invalid_argument("induced_map: vertex already in subset");
  if (!(src.subset == j) || !(dst.subset == j.with(x)) || src.degree != degree ||
      dst.degree != degree)
    throw std::invalid_argument("induced_map: bases do not match (J, x, degree)");

  MatrixOf<F> phi(field, dst.dim(), src.dim());
  std::vector<typename MatrixOf<F>::Value> chain_in_dst;
  for (int c = 0; c < src.dim(); ++c) {
    chain_in_dst.assign(static_cast<std::size_t>(dst.chain.size()), field.zero());
    for (int r = 0; r < src.chain.size(); ++r) {
      auto v = src.representatives.get(r, c);
      if (field.is_zero(v)) continue;
      int pos = dst.chain.index_of(src.chain.simplices[static_cast<std::size_t>(r)]);
      if (pos < 0) throw std::logic_error("induced_map: source simplex missing in target");
      chain_in_dst[static_cast<std::size_t>(pos)] = v;
    }
    auto coords = dst.decompose(chain_in_dst);
    for (int r = 0; r < dst.dim(); ++r) phi.set(r, c, coords[static_cast<std::size_t>(r)]);
  }
  return phi;
}

/**
 * All reduced Betti numbers of K_J in one pass: one rank per boundary map.
 * Returns the nonzero (degree, dim) pairs, degree ascending from -1.
 */
template <typename F>
std::vector<std::pair<int, long long>> restriction_betti(const SimplicialComplex& k, VertexSet j,
                                                         F field) {
  int top = k.dimension();
  std::vector<ChainBasis> bases;
  bases.reserve(static_cast<std::size_t>(top + 2));
  for (int c = 0; c <= top + 1; ++c) bases.push_back(chain_basis(k, j, c - 1));

  // r[c] = rank of the cardinality c -> c-1 boundary; r[0] and r[top+2] are 0.
  std::vector<int> r(static_cast<std::size_t>(top + 3), 0);
  for (int c = 1; c <= top + 1; ++c) {
    const ChainBasis& hi = bases[static_cast<std::size_t>(c)];
    const ChainBasis& lo = bases[static_cast<std::size_t>(c - 1)];
    if (hi.size() == 0 || lo.size() == 0) continue;
    r[static_cast<std::size_t>(c)] = rank(boundary_matrix(field, lo, hi));
  }

  std::vector<std::pair<int, long long>> out;
  for (int p = -1; p <= top; ++p) {
    long long n = bases[static_cast<std::size_t>(p + 1)].size();
    long long d = n - r[static_cast<std::size_t>(p + 1)] - r[static_cast<std::size_t>(p + 2)];
    if (d != 0) out.emplace_back(p, d);
  }
  return out;
}

/**
 * Sparse table of every nonzero reduced Betti number over all 2^m subsets.
 * This is the bulk input to the Hochster table and the cache payload.
 */
struct BettiProfile {
  struct Entry {
    VertexSet subset;
    int degree;
    long long dim;
  };

  int m = 0;
  FieldSpec field;
  std::vector<Entry> entries; // sorted by (subset bitmask value, degree)

  long long dim_at(VertexSet j, int degree) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{j.bits(), degree},
                               [](const Entry& e, const std::pair<std::uint64_t, int>& key) {
                                 return e.subset.bits() != key.first
                                            ? e.subset.bits() < key.first
                                            : e.degree < key.second;
                               });
    if (it == entries.end() || !(it->subset == j) || it->degree != degree) return 0;
    return it->dim;
  }
};

inline void require_within_cap(const SimplicialComplex& k, int max_m, const char* what) {
  if (k.vertex_count() > max_m)
    throw std::invalid_argument(std::string(what) + ": m = " + std::to_string(k.vertex_count()) +
                                " exceeds the cap of " + std::to_string(max_m) +
                                " (raise the cap explicitly to proceed)");
}

inline BettiProfile betti_profile(const SimplicialComplex& k, FieldSpec field, int jobs = 1,
                                  int max_m = kDefaultMaxM) {
  require_within_cap(k, max_m, "betti_profile");
  BettiProfile profile;
  profile.m = k.vertex_count();
  profile.field = field;

  const std::uint64_t n_subsets = std::uint64_t{1} << k.vertex_count();
  const std::uint64_t chunk = std::min<std::uint64_t>(n_subsets, 4096);
  const std::uint64_t n_chunks = (n_subsets + chunk - 1) / chunk;
  std::vector<std::vector<BettiProfile::Entry>> parts(static_cast<std::size_t>(n_chunks));

  with_field(field, [&](auto f) {
    parallel_for(static_cast<long long>(n_chunks), jobs, [&](long long ci) {
      auto& slot = parts[static_cast<std::size_t>(ci)];
      std::uint64_t lo = static_cast<std::uint64_t>(ci) * chunk;
      std::uint64_t hi = std::min(n_subsets, lo + chunk);
      for (std::uint64_t bits = lo; bits < hi; ++bits) {
        VertexSet j = VertexSet::from_bits(bits);
        for (auto [degree, dim] : restriction_betti(k, j, f))
          slot.push_back({j, degree, dim});
      }
    });
  });

  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  profile.entries.reserve(total);
  for (auto& p : parts)
    profile.entries.insert(profile.entries.end(), p.begin(), p.end());
  return profile;
}

}  // namespace hh
