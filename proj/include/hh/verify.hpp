#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hh/bigraded.hpp"
#include "hh/predicates.hpp"

namespace hh {

struct SphereProxy {
  bool is_sphere = false;
  int dim = -1;
};

/**
 * Homology-sphere proxy: pure, every ridge in exactly two facets, strongly
 * connected, and reduced homology equal to that of S^n over both GF(2) and
 * the rationals.  Exact for dimension <= 2; in higher dimensions a homology
 * sphere could slip through, which callers accept by using this predicate.
 */
inline SphereProxy is_sphere_proxy(const SimplicialComplex& k) {
  int n = k.dimension();
  if (k.vertex_count() < 2 || n < 0 || k.has_ghosts()) return {false, n};
  if (!is_pseudomanifold(k)) return {false, n};
  VertexSet full = VertexSet::full(k.vertex_count());
  for (FieldSpec spec : {FieldSpec::gf2(), FieldSpec::rational()}) {
    auto dims = with_field(spec, [&](auto f) { return restriction_betti(k, full, f); });
    if (dims != std::vector<std::pair<int, long long>>{{n, 1}}) return {false, n};
  }
  return {true, n};
}

/**
 * A sphere is non-primitive exactly when some missing facet S (|S| = dim+1,
 * S absent, boundary of S present) splits K + S into two wedge summands
 * along S; identifying S recovers the connected-sum decomposition.
 */
inline bool is_primitive_sphere(const SimplicialComplex& k) {
  SphereProxy proxy = is_sphere_proxy(k);
  if (!proxy.is_sphere)
    throw std::invalid_argument("is_primitive_sphere: input is not a sphere proxy");
  VertexSet full = VertexSet::full(k.vertex_count());
  SimplicialComplex simplex = SimplicialComplex::from_facets(k.vertex_count(), {full});
  for (VertexSet s : faces_of_size(simplex, full, proxy.dim + 1)) {
    if (k.contains(s)) continue;
    bool boundary_present = true;
    for (int v : s.to_vector())
      if (!k.contains(s.without(v))) {
        boundary_present = false;
        break;
      }
    if (!boundary_present) continue;
    if (is_wedge_decomposable_along(add_face(k, s), s)) return false;
  }
  return true;
}

struct VerificationReport {
  enum class Status { pass, fail, skipped };

  std::string check;
  std::string complex_hash;
  FieldSpec field;
  Status status = Status::skipped;
  std::string reason;  // machine-readable skip token, empty otherwise
  std::string witness; // discrepancy details; always set on fail

  bool passed() const { return status == Status::pass; }
  bool failed() const { return status == Status::fail; }

  std::string status_string() const {
    switch (status) {
      case Status::pass: return "pass";
      case Status::fail: return "fail";
      case Status::skipped: return "skipped";
    }
    return "?";
  }
};

namespace detail {

inline VerificationReport make_report(const char* check, const SimplicialComplex& k,
                                      FieldSpec field) {
  VerificationReport r;
  r.check = check;
  r.complex_hash = k.canonical_hash();
  r.field = field;
  return r;
}

inline std::string entry_list(const BigradedTable& t) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, dim] : t.entries) {
    if (!first) os << ", ";
    first = false;
    os << "(" << key.second << "," << 2 * key.first << "):" << dim;
  }
  return os.str();
}

}  // namespace detail

/**
 * Bigraded Poincare duality for sphere proxies: entries must pair off as
 * (k, l) <-> (n+1-m-k, m-l) with equal dimensions.
 */
inline VerificationReport check_duality(const SimplicialComplex& k, FieldSpec field, int jobs = 1,
                                        int max_m = kDefaultMaxM) {
  VerificationReport r = detail::make_report("duality", k, field);
  SphereProxy proxy = is_sphere_proxy(k);
  if (!proxy.is_sphere) {
    r.reason = "not-a-sphere";
    return r;
  }
  int m = k.vertex_count(), n = proxy.dim;
  BigradedTable t = hh_table(k, field, jobs, max_m);
  for (const auto& [key, dim] : t.entries) {
    int l = key.first, kk = key.second;
    int dual_k = n + 1 - m - kk, dual_l = m - l;
    long long dual_dim = t.at(dual_k, dual_l);
    if (dual_dim != dim) {
      r.status = VerificationReport::Status::fail;
      std::ostringstream os;
      os << "entry (" << kk << "," << 2 * l << ") has dim " << dim << " but its dual ("
         << dual_k << "," << 2 * dual_l << ") has dim " << dual_dim;
      r.witness = os.str();
      return r;
    }
  }
  r.status = VerificationReport::Status::pass;
  r.witness = "all " + std::to_string(t.entries.size()) + " entries self-dual";
  return r;
}

/**
 * Non-primitive sphere proxies must have the four-entry table
 * {(0,0):1, (-1,4):1, (n-m+2,2m-4):1, (n-m+1,2m):1}, merged when bidegrees
 * coincide.  Primitive spheres and non-spheres are skipped.
 */
inline VerificationReport check_nonprimitive_sphere_table(const SimplicialComplex& k,
                                                          FieldSpec field, int jobs = 1,
                                                          int max_m = kDefaultMaxM) {
  VerificationReport r = detail::make_report("nonprimitive-sphere", k, field);
  SphereProxy proxy = is_sphere_proxy(k);
  if (!proxy.is_sphere) {
    r.reason = "not-a-sphere";
    return r;
  }
  if (is_primitive_sphere(k)) {
    r.reason = "primitive-sphere";
    return r;
  }
  int m = k.vertex_count(), n = proxy.dim;
  BigradedTable expect;
  expect.add(0, 0, 1);
  expect.add(-1, 2, 1);
  expect.add(n - m + 2, m - 2, 1);
  expect.add(n + 1 - m, m, 1);

  BigradedTable t = hh_table(k, field, jobs, max_m);
  if (t.entries != expect.entries) {
    r.status = VerificationReport::Status::fail;
    r.witness = "expected {" + detail::entry_list(expect) + "} but computed {" +
                detail::entry_list(t) + "}";
    return r;
  }
  r.status = VerificationReport::Status::pass;
  r.witness = "table is {" + detail::entry_list(t) + "}";
  return r;
}

struct FacetRemovalRecord {
  VertexSet facet;
  long long rank_before = 0;
  long long rank_after = 0;
  // Some vertex of the facet has a non-neighbor in the complex; this is the
  // observed-but-not-asserted companion signal for rank drops.
  bool vertex_with_nonneighbor = false;
};

struct FacetRemovalScan {
  VerificationReport report;
  std::vector<FacetRemovalRecord> records;
};

/**
 * Removes each facet in turn and records the total-rank change.  Asserted
 * dichotomy: every delta lies in {0, -2}; a neighborly sphere shows only 0,
 * a non-neighborly one shows at least one -2.  The per-facet non-neighbor
 * flag is reported alongside for correlation, never asserted.
 */
inline FacetRemovalScan facet_removal_scan(const SimplicialComplex& k, FieldSpec field,
                                           int jobs = 1, int max_m = kDefaultMaxM) {
  FacetRemovalScan out;
  out.report = detail::make_report("facet-removal", k, field);
  SphereProxy proxy = is_sphere_proxy(k);
  if (!proxy.is_sphere) {
    out.report.reason = "not-a-sphere";
    return out;
  }
  if (proxy.dim == 0) {
    out.report.reason = "dimension-zero";
    return out;
  }

  long long before = hh_total_rank(k, field, jobs, max_m);
  VertexSet support = k.support();
  for (VertexSet facet : k.facets()) {
    FacetRemovalRecord rec;
    rec.facet = facet;
    rec.rank_before = before;
    rec.rank_after = hh_total_rank(remove_facet(k, facet), field, jobs, max_m);
    for (int v : facet.to_vector()) {
      for (int u : support.to_vector())
        if (u != v && !k.contains(VertexSet{u, v})) {
          rec.vertex_with_nonneighbor = true;
          break;
        }
      if (rec.vertex_with_nonneighbor) break;
    }
    out.records.push_back(rec);
  }

  bool neighborly = is_p_neighborly(k, 1);
  bool saw_drop = false;
  long long correlated = 0;
  for (const auto& rec : out.records) {
    long long delta = rec.rank_after - rec.rank_before;
    if (delta != 0 && delta != -2) {
      out.report.status = VerificationReport::Status::fail;
      out.report.witness = "facet {" + rec.facet.to_string() + "} changed total rank " +
                           std::to_string(rec.rank_before) + " -> " +
                           std::to_string(rec.rank_after) + ", outside {0, -2}";
      return out;
    }
    if (delta == -2) {
      saw_drop = true;
      if (neighborly) {
        out.report.status = VerificationReport::Status::fail;
        out.report.witness = "neighborly complex lost rank on facet {" + rec.facet.to_string() +
                             "}: " + std::to_string(rec.rank_before) + " -> " +
                             std::to_string(rec.rank_after);
        return out;
      }
    }
    if ((delta == -2) == rec.vertex_with_nonneighbor) ++correlated;
  }
  if (!neighborly && !saw_drop) {
    out.report.status = VerificationReport::Status::fail;
    out.report.witness = "complex is not neighborly but no facet removal dropped the rank";
    return out;
  }
  out.report.status = VerificationReport::Status::pass;
  out.report.witness = "facets: " + std::to_string(out.records.size()) +
                       ", non-neighbor correlation " + std::to_string(correlated) + "/" +
                       std::to_string(out.records.size());
  return out;
}

/**
 * Neighborliness criterion: for each p >= 1 such that K is (p-1)-neighborly,
 * K is p-neighborly exactly when the HH entry at (-1, 2p+2) vanishes.
 */
inline VerificationReport check_neighborliness_criterion(const SimplicialComplex& k,
                                                         FieldSpec field, int jobs = 1,
                                                         int max_m = kDefaultMaxM) {
  VerificationReport r = detail::make_report("neighborliness", k, field);
  BigradedTable t = hh_table(k, field, jobs, max_m);
  int checked = 0;
  for (int p = 1; p <= k.vertex_count() + 1 && is_p_neighborly(k, p - 1); ++p) {
    bool neighborly = is_p_neighborly(k, p);
    long long entry = t.at(-1, p + 1);
    if (neighborly != (entry == 0)) {
      r.status = VerificationReport::Status::fail;
      std::ostringstream os;
      os << "p = " << p << ": is_p_neighborly = " << (neighborly ? "true" : "false")
         << " but HH(-1," << 2 * p + 2 << ") = " << entry;
      r.witness = os.str();
      return r;
    }
    ++checked;
  }
  r.status = VerificationReport::Status::pass;
  r.witness = "criterion holds for p = 1.." + std::to_string(checked);
  return r;
}

/**
 * Total rank 2 characterizes simplex boundaries among sphere proxies, in
 * both directions.
 */
inline VerificationReport check_rank2_characterization(const SimplicialComplex& k,
                                                       FieldSpec field, int jobs = 1,
                                                       int max_m = kDefaultMaxM) {
  VerificationReport r = detail::make_report("rank2", k, field);
  SphereProxy proxy = is_sphere_proxy(k);
  if (!proxy.is_sphere) {
    r.reason = "not-a-sphere";
    return r;
  }
  int m = k.vertex_count();
  bool is_simplex_boundary = false;
  if (m == proxy.dim + 2) {
    std::vector<VertexSet> expect;
    for (int v = 1; v <= m; ++v) expect.push_back(VertexSet::full(m).without(v));
    std::sort(expect.begin(), expect.end(), lex_less);
    is_simplex_boundary = k.facets() == expect;
  }
  long long total = hh_total_rank(k, field, jobs, max_m);
  if ((total == 2) != is_simplex_boundary) {
    r.status = VerificationReport::Status::fail;
    r.witness = "total rank " + std::to_string(total) + " but complex is " +
                (is_simplex_boundary ? "" : "not ") + "a simplex boundary";
    return r;
  }
  r.status = VerificationReport::Status::pass;
  r.witness = "total rank " + std::to_string(total) +
              (is_simplex_boundary ? ", simplex boundary" : ", not a simplex boundary");
  return r;
}

/// One induced cycle found as a full subcomplex; reported, never asserted.
struct InducedCycle {
  VertexSet subset;
  int length = 0;
};

/**
 * Scan over all vertex subsets for induced cycles (full subcomplexes that
 * are polygon triangulations of S^1).  Observation aid for the structure of
 * 2-spheres; lengths congruent to 1 mod 3 are the interesting ones.
 */
inline std::vector<InducedCycle> induced_cycle_scan(const SimplicialComplex& k,
                                                    int max_m = kDefaultMaxM) {
  require_within_cap(k, max_m, "induced_cycle_scan");
  std::vector<InducedCycle> out;
  int m = k.vertex_count();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    VertexSet j = VertexSet::from_bits(bits);
    if (j.size() < 3) continue;
    SimplicialComplex kj = restrict(k, j);
    if (kj.dimension() != 1) continue;
    bool cycle = true;
    for (int v : j.to_vector()) {
      int deg = 0;
      for (int u : j.to_vector())
        if (u != v && kj.contains(VertexSet{u, v})) ++deg;
      if (deg != 2) {
        cycle = false;
        break;
      }
    }
    if (!cycle) continue;
    // dimension 1 with all degrees 2: a disjoint union of cycles; connected
    // exactly when H~_0 vanishes
    if (restriction_betti(k, j, Gf2{}) !=
        std::vector<std::pair<int, long long>>{{1, 1}})
      continue;
    out.push_back({j, j.size()});
  }
  return out;
}

}  // namespace hh
