#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hh/homology.hpp"

namespace hh {

/// Sign attached to the inclusion K_J -> K_{J+x}: (-1)^{#{y in J : y < x}}.
inline int epsilon(VertexSet j, int x) {
  if (x < 1 || x > VertexSet::max_vertices)
    throw std::invalid_argument("epsilon: vertex out of range");
  if (j.contains(x)) throw std::invalid_argument("epsilon: vertex already in subset");
  std::uint64_t below = j.bits() & ((std::uint64_t{1} << (x - 1)) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

/**
 * Bigraded dimension table keyed by (k <= 0, l); the displayed bidegree is
 * (k, 2l) and the stratum view is j = l + k.  Zero entries are never stored,
 * so tables compare by their entry maps.  Iteration order is (l, k).
 */
struct BigradedTable {
  enum class Kind { hochster, ch, hh };

  Kind kind = Kind::hochster;
  int m = 0;
  FieldSpec field;
  std::string complex_hash;
  std::map<std::pair<int, int>, long long> entries; // (l, k) -> dim

  void add(int k, int l, long long dim) {
    if (dim == 0) return;
    auto key = std::pair{l, k};
    auto it = entries.find(key);
    if (it == entries.end()) {
      entries.emplace(key, dim);
      return;
    }
    it->second += dim;
    if (it->second == 0) entries.erase(it);
  }

  long long at(int k, int l) const {
    auto it = entries.find({l, k});
    return it == entries.end() ? 0 : it->second;
  }

  /// Stratum view: entry of the j-stratum at level l.
  long long at_jl(int j, int l) const { return at(j - l, l); }

  long long total() const {
    long long s = 0;
    for (const auto& [key, dim] : entries) s += dim;
    return s;
  }
};

inline BigradedTable hochster_table_from_profile(const BettiProfile& profile) {
  BigradedTable t;
  t.kind = BigradedTable::Kind::hochster;
  t.m = profile.m;
  t.field = profile.field;
  for (const auto& e : profile.entries) {
    int l = e.subset.size();
    t.add(e.degree + 1 - l, l, e.dim);
  }
  return t;
}

inline BigradedTable hochster_table(const SimplicialComplex& k, FieldSpec field, int jobs = 1,
                                    int max_m = kDefaultMaxM) {
  BigradedTable t = hochster_table_from_profile(betti_profile(k, field, jobs, max_m));
  t.complex_hash = k.canonical_hash();
  return t;
}

/**
 * Materialized j-stratum: one level per subset cardinality, holding only the
 * blocks with nonzero homology, plus dense differential matrices.  This is
 * the direct form used by the structural tests; the table engine below
 * computes the same ranks without ever holding a full stratum.
 */
template <typename F>
struct ChStratum {
  struct Level {
    std::vector<VertexSet> subsets; // ascending bitmask value
    std::vector<int> dims;          // per subset, all positive
    std::vector<int> offsets;       // prefix sums of dims
    int total = 0;
  };

  int j = 0;
  std::vector<Level> levels;    // index l = 0..m
  std::vector<MatrixOf<F>> d;   // d[l] : level l -> level l+1, l = 0..m-1
};

namespace detail {

/// Support of the j-stratum read off a Betti profile: per level l, the
/// subsets with nonzero H~_{j-1} and their dimensions, ascending by bitmask.
struct StratumSupport {
  std::vector<std::vector<VertexSet>> subsets;
  std::vector<std::vector<long long>> dims;
  std::vector<long long> level_total;

  StratumSupport(const BettiProfile& profile, int j) {
    subsets.resize(static_cast<std::size_t>(profile.m) + 1);
    dims.resize(static_cast<std::size_t>(profile.m) + 1);
    level_total.assign(static_cast<std::size_t>(profile.m) + 1, 0);
    for (const auto& e : profile.entries) {
      if (e.degree != j - 1) continue;
      auto l = static_cast<std::size_t>(e.subset.size());
      subsets[l].push_back(e.subset);
      dims[l].push_back(e.dim);
      level_total[l] += e.dim;
    }
  }

  int index_of(int l, VertexSet s) const {
    const auto& v = subsets[static_cast<std::size_t>(l)];
    auto it = std::lower_bound(v.begin(), v.end(), s, mask_value_less);
    if (it == v.end() || !(*it == s)) return -1;
    return static_cast<int>(it - v.begin());
  }
};

template <typename F>
using SparseEntry = std::pair<int, typename F::Value>;

/// dst += c * src on sparse columns with strictly ascending row indices.
template <typename F>
void add_scaled_into(F field, std::vector<SparseEntry<F>>& dst,
                     const std::vector<SparseEntry<F>>& src, const typename F::Value& c) {
  std::vector<SparseEntry<F>> out;
  out.reserve(dst.size() + src.size());
  std::size_t a = 0, b = 0;
  while (a < dst.size() || b < src.size()) {
    if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
      out.push_back(dst[a++]);
    } else if (a == dst.size() || src[b].first < dst[a].first) {
      auto v = field.mul(c, src[b].second);
      if (!field.is_zero(v)) out.emplace_back(src[b].first, std::move(v));
      ++b;
    } else {
      auto v = field.add(dst[a].second, field.mul(c, src[b].second));
      if (!field.is_zero(v)) out.emplace_back(dst[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  dst = std::move(out);
}

/**
 * Rank by sparse column reduction: columns are eliminated against earlier
 * columns sharing the same lowest (largest-index) row, the usual boundary
 * reduction.  Destroys the input columns.
 */
template <typename F>
long long sparse_column_rank(F field, std::vector<std::vector<SparseEntry<F>>>& cols,
                             long long nrows) {
  std::vector<int> owner(static_cast<std::size_t>(nrows), -1);
  long long rank = 0;
  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    auto& col = cols[ci];
    while (!col.empty()) {
      int low = col.back().first;
      int own = owner[static_cast<std::size_t>(low)];
      if (own < 0) break;
      const auto& piv = cols[static_cast<std::size_t>(own)];
      auto factor =
          field.neg(field.mul(col.back().second, field.inv(piv.back().second)));
      add_scaled_into(field, col, piv, factor);
    }
    if (!col.empty()) {
      owner[static_cast<std::size_t>(col.back().first)] = static_cast<int>(ci);
      ++rank;
    }
  }
  return rank;
}

}  // namespace detail

template <typename F>
ChStratum<F> build_ch_stratum(const SimplicialComplex& k, int j, F field, int jobs = 1,
                              int max_m = kDefaultMaxM) {
  require_within_cap(k, max_m, "build_ch_stratum");
  const int m = k.vertex_count();
  BettiProfile profile = betti_profile(k, spec_of(field), jobs, max_m);
  detail::StratumSupport support(profile, j);

  ChStratum<F> st;
  st.j = j;
  st.levels.resize(static_cast<std::size_t>(m) + 1);

  using HB = HomologyBasis<F>;
  std::vector<std::vector<std::optional<HB>>> bases(static_cast<std::size_t>(m) + 1);

  for (int l = 0; l <= m; ++l) {
    auto& level = st.levels[static_cast<std::size_t>(l)];
    level.subsets = support.subsets[static_cast<std::size_t>(l)];
    auto& slot = bases[static_cast<std::size_t>(l)];
    slot.resize(level.subsets.size());
    parallel_for(static_cast<long long>(level.subsets.size()), jobs, [&](long long i) {
      slot[static_cast<std::size_t>(i)].emplace(
          reduced_homology(k, level.subsets[static_cast<std::size_t>(i)], j - 1, field));
    });
    for (std::size_t i = 0; i < level.subsets.size(); ++i) {
      int d = slot[i]->dim();
      if (d != support.dims[static_cast<std::size_t>(l)][i])
        throw std::logic_error("build_ch_stratum: basis dimension disagrees with profile");
      level.offsets.push_back(level.total);
      level.dims.push_back(d);
      level.total += d;
    }
  }

  for (int l = 0; l < m; ++l) {
    const auto& src_level = st.levels[static_cast<std::size_t>(l)];
    const auto& dst_level = st.levels[static_cast<std::size_t>(l + 1)];
    MatrixOf<F> dl(field, dst_level.total, src_level.total);
    for (std::size_t si = 0; si < src_level.subsets.size(); ++si) {
      VertexSet sub = src_level.subsets[si];
      const HB& src = *bases[static_cast<std::size_t>(l)][si];
      for (int x = 1; x <= m; ++x) {
        if (sub.contains(x)) continue;
        int ti = support.index_of(l + 1, sub.with(x));
        if (ti < 0) continue;
        const HB& dst = *bases[static_cast<std::size_t>(l + 1)][static_cast<std::size_t>(ti)];
        auto phi = induced_map(k, sub, x, j - 1, field, src, dst);
        int sign = epsilon(sub, x);
        for (int c = 0; c < phi.cols(); ++c)
          for (int r = 0; r < phi.rows(); ++r) {
            auto v = phi.get(r, c);
            if (field.is_zero(v)) continue;
            if (sign < 0) v = field.neg(v);
            dl.set(dst_level.offsets[static_cast<std::size_t>(ti)] + r,
                   src_level.offsets[si] + c, std::move(v));
          }
      }
    }
    st.d.push_back(std::move(dl));
  }
  return st;
}

/// Level dimensions and differential ranks of one j-stratum; everything the
/// table assembly needs, and what the cache stores per stratum.
struct StratumRanks {
  int j = 0;
  std::vector<long long> dims;  // dims[l] = dim CH_j^l, l = 0..m
  std::vector<long long> ranks; // ranks[l] = rank d^l, l = 0..m (ranks[m] = 0)
};

namespace detail {

/**
 * Ranks of one stratum's differentials without materializing the stratum:
 * bases live only for the two levels flanking the differential under
 * reduction, and its columns are assembled sparsely per source subset.
 */
template <typename F>
StratumRanks stratum_ranks(const SimplicialComplex& k, const BettiProfile& profile, int j,
                           F field, int jobs) {
  const int m = k.vertex_count();
  StratumSupport support(profile, j);

  StratumRanks out;
  out.j = j;
  out.dims.assign(static_cast<std::size_t>(m) + 1, 0);
  out.ranks.assign(static_cast<std::size_t>(m) + 1, 0);
  for (int l = 0; l <= m; ++l)
    out.dims[static_cast<std::size_t>(l)] = support.level_total[static_cast<std::size_t>(l)];

  using HB = HomologyBasis<F>;
  using Cols = std::vector<std::vector<SparseEntry<F>>>;

  auto compute_level = [&](int l) {
    const auto& subs = support.subsets[static_cast<std::size_t>(l)];
    std::vector<std::optional<HB>> slot(subs.size());
    parallel_for(static_cast<long long>(subs.size()), jobs, [&](long long i) {
      slot[static_cast<std::size_t>(i)].emplace(
          reduced_homology(k, subs[static_cast<std::size_t>(i)], j - 1, field));
    });
    return slot;
  };
  auto offsets_of = [&](int l) {
    std::vector<long long> off;
    long long total = 0;
    for (long long d : support.dims[static_cast<std::size_t>(l)]) {
      off.push_back(total);
      total += d;
    }
    return off;
  };

  std::vector<std::optional<HB>> cur;
  int cur_level = -1; // level whose bases `cur` holds
  for (int l = 0; l < m; ++l) {
    if (out.dims[static_cast<std::size_t>(l)] == 0 ||
        out.dims[static_cast<std::size_t>(l + 1)] == 0)
      continue; // rank 0; no bases needed for this differential
    if (cur_level != l) cur = compute_level(l);
    std::vector<std::optional<HB>> nxt = compute_level(l + 1);

    const auto& src_subs = support.subsets[static_cast<std::size_t>(l)];
    std::vector<long long> src_off = offsets_of(l);
    std::vector<long long> dst_off = offsets_of(l + 1);

    Cols cols(static_cast<std::size_t>(out.dims[static_cast<std::size_t>(l)]));
    parallel_for(static_cast<long long>(src_subs.size()), jobs, [&](long long si) {
      VertexSet sub = src_subs[static_cast<std::size_t>(si)];
      const HB& src = *cur[static_cast<std::size_t>(si)];
      long long coff = src_off[static_cast<std::size_t>(si)];
      for (int x = 1; x <= m; ++x) {
        if (sub.contains(x)) continue;
        int ti = support.index_of(l + 1, sub.with(x));
        if (ti < 0) continue;
        const HB& dst = *nxt[static_cast<std::size_t>(ti)];
        auto phi = induced_map(k, sub, x, j - 1, field, src, dst);
        int sign = std::is_same_v<F, Gf2> ? 1 : epsilon(sub, x);
        for (int c = 0; c < phi.cols(); ++c)
          for (int r = 0; r < phi.rows(); ++r) {
            auto v = phi.get(r, c);
            if (field.is_zero(v)) continue;
            if (sign < 0) v = field.neg(v);
            // x ascends, so target offsets ascend: rows arrive sorted
            cols[static_cast<std::size_t>(coff + c)].emplace_back(
                static_cast<int>(dst_off[static_cast<std::size_t>(ti)]) + r, std::move(v));
          }
      }
    });

    out.ranks[static_cast<std::size_t>(l)] =
        sparse_column_rank(field, cols, out.dims[static_cast<std::size_t>(l + 1)]);
    cur = std::move(nxt);
    cur_level = l + 1;
  }
  return out;
}

}  // namespace detail

/// Full run over one complex: the profile, both tables, and the per-stratum
/// rank summaries (the recomputation-free payload for the cache).
struct HhComputation {
  BettiProfile profile;
  BigradedTable hochster;
  BigradedTable hh;
  std::vector<StratumRanks> strata;
};

inline BigradedTable hh_table_from_summaries(int m, FieldSpec field,
                                             const std::vector<StratumRanks>& strata) {
  BigradedTable t;
  t.kind = BigradedTable::Kind::hh;
  t.m = m;
  t.field = field;
  for (const auto& sr : strata) {
    long long prev = 0;
    for (int l = 0; l <= m; ++l) {
      long long d = sr.dims[static_cast<std::size_t>(l)] - sr.ranks[static_cast<std::size_t>(l)] -
                    prev;
      if (d < 0) throw std::logic_error("hh_table_from_summaries: negative dimension");
      t.add(sr.j - l, l, d);
      prev = sr.ranks[static_cast<std::size_t>(l)];
    }
  }
  return t;
}

/// Second half of hh_compute, reusable when the profile is already known.
inline HhComputation hh_compute_from_profile(const SimplicialComplex& k, BettiProfile profile,
                                             int jobs = 1) {
  HhComputation out;
  out.profile = std::move(profile);
  FieldSpec field = out.profile.field;
  std::string hash = k.canonical_hash();
  out.hochster = hochster_table_from_profile(out.profile);
  out.hochster.complex_hash = hash;

  for (int j = 0; j <= k.dimension() + 1; ++j)
    out.strata.push_back(with_field(field, [&](auto f) {
      return detail::stratum_ranks(k, out.profile, j, f, jobs);
    }));

  out.hh = hh_table_from_summaries(k.vertex_count(), field, out.strata);
  out.hh.complex_hash = hash;
  return out;
}

inline HhComputation hh_compute(const SimplicialComplex& k, FieldSpec field, int jobs = 1,
                                int max_m = kDefaultMaxM) {
  return hh_compute_from_profile(k, betti_profile(k, field, jobs, max_m), jobs);
}

inline BigradedTable hh_table(const SimplicialComplex& k, FieldSpec field, int jobs = 1,
                              int max_m = kDefaultMaxM) {
  return hh_compute(k, field, jobs, max_m).hh;
}

inline long long hh_total_rank(const SimplicialComplex& k, FieldSpec field, int jobs = 1,
                               int max_m = kDefaultMaxM) {
  return hh_table(k, field, jobs, max_m).total();
}

}  // namespace hh
