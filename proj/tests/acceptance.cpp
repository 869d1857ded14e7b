// Acceptance suite: one pass/fail line per criterion, wall-clock budgets
// enforced where a criterion carries one.  Exit 0 only when all pass.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hh/generators.hpp"
#include "hh/verify.hpp"
#include "reference.hpp"

using namespace hh;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(std::string s) { g_notes.push_back(std::move(s)); }

bool expect(bool cond, const std::string& what) {
  if (!cond) note(what);
  return cond;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
void criterion(int idx, const std::string& name, double budget_s, Fn&& fn) {
  g_notes.clear();
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    note(std::string("exception: ") + e.what());
  }
  double secs = seconds_since(t0);
  if (ok && budget_s > 0 && secs > budget_s) {
    ok = false;
    note("exceeded wall-clock budget of " + std::to_string(budget_s) + " s");
  }
  std::printf("[%2d/11] %-64s %s (%.2f s)\n", idx, name.c_str(), ok ? "PASS" : "FAIL", secs);
  if (!ok) {
    for (const auto& n : g_notes) std::printf("        - %s\n", n.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

SimplicialComplex s0() { return gen_simplex_boundary(1); }

SimplicialComplex octahedron() { return join(s0(), join(s0(), s0())); }

SimplicialComplex two_octahedra() {
  auto oct = octahedron();
  VertexSet f = oct.facets().front();
  return connected_sum(oct, f, oct, f);
}

SimplicialComplex self_sum(const SimplicialComplex& k) {
  VertexSet f = k.facets().front();
  return connected_sum(k, f, k, f);
}

SimplicialComplex random_complex(std::mt19937_64& rng, int m, int max_facets, int max_size) {
  std::uniform_int_distribution<int> nf(1, max_facets), sz(1, max_size), vx(1, m);
  while (true) {
    std::vector<VertexSet> facets;
    for (int i = nf(rng); i > 0; --i) {
      VertexSet f;
      for (int s = sz(rng); s > 0; --s) f = f.with(vx(rng));
      facets.push_back(f);
    }
    VertexSet support;
    for (VertexSet f : facets) support = support | f;
    if (support != VertexSet::full(m)) continue;
    return SimplicialComplex::from_facets(m, std::move(facets));
  }
}

refimpl::Complex to_ref(const SimplicialComplex& k) {
  refimpl::Complex r;
  r.m = k.vertex_count();
  for (VertexSet f : k.facets()) r.facets.push_back(f.bits());
  return r;
}

refimpl::Table to_ref_table(const BigradedTable& t) {
  refimpl::Table out;
  for (const auto& [key, dim] : t.entries) out[{key.second, key.first}] = dim;
  return out;
}

BigradedTable convolve(const BigradedTable& a, const BigradedTable& b) {
  BigradedTable out;
  for (const auto& [ka, da] : a.entries)
    for (const auto& [kb, db] : b.entries)
      out.add(ka.second + kb.second, ka.first + kb.first, da * db);
  return out;
}

template <typename Mat>
bool is_zero_matrix(const Mat& m) {
  auto f = m.field();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!f.is_zero(m.get(i, j))) return false;
  return true;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Cycle boundaries, three fields, exact merged four-entry tables.
bool crit_cycles() {
  bool ok = true;
  for (FieldSpec f : {FieldSpec::gf2(), FieldSpec::gfp(3), FieldSpec::rational()})
    for (int m = 4; m <= 8; ++m) {
      BigradedTable e;
      e.add(0, 0, 1);
      e.add(-1, 2, 1);
      e.add(3 - m, m - 2, 1);
      e.add(2 - m, m, 1);
      auto t = hh_table(gen_cycle(m), f);
      ok &= expect(t.entries == e.entries,
                   "cycle m=" + std::to_string(m) + " over " + f.to_string() + " mismatch");
    }
  return ok;
}

// 2. Simplex boundaries on m = n+2 vertices: rank 2 at the pinned bidegrees.
bool crit_simplex_boundaries() {
  bool ok = true;
  for (int n = 1; n <= 5; ++n) {
    auto k = gen_simplex_boundary(n + 1);
    int m = n + 2;
    ok &= expect(k.vertex_count() == m, "unexpected vertex count");
    auto t = hh_table(k, FieldSpec::gf2());
    ok &= expect(t.total() == 2 && t.at(0, 0) == 1 && t.at(-1, m) == 1,
                 "simplex boundary n=" + std::to_string(n) + " table mismatch");
  }
  return ok;
}

// 3. Icosahedron over gf2: the exact six-entry table, both worker counts.
bool crit_icosahedron() {
  BigradedTable e;
  e.add(0, 0, 1);
  e.add(-1, 2, 1);
  e.add(-4, 5, 10);
  e.add(-5, 7, 10);
  e.add(-8, 10, 1);
  e.add(-9, 12, 1);

  bool ok = true;
  auto ico = gen_icosahedron();
  auto t0 = std::chrono::steady_clock::now();
  auto one = hh_table(ico, FieldSpec::gf2(), 1);
  double d1 = seconds_since(t0);
  auto t1 = std::chrono::steady_clock::now();
  auto eight = hh_table(ico, FieldSpec::gf2(), 8);
  double d8 = seconds_since(t1);

  ok &= expect(one.entries == e.entries && one.total() == 24, "single-worker table mismatch");
  ok &= expect(eight.entries == e.entries, "8-worker table mismatch");
  ok &= expect(d1 < 30.0, "single worker took " + std::to_string(d1) + " s, budget 30 s");
  ok &= expect(d8 < 10.0, "8 workers took " + std::to_string(d8) + " s, budget 10 s");
  return ok;
}

// 4. Bicapped antiprism ranks and suspended cycles, gf2, 8 workers.
bool crit_antiprisms() {
  bool ok = true;
  struct Row {
    int n, h;
    long long rank;
  };
  for (Row row : {Row{4, 1, 12}, Row{4, 2, 20}, Row{6, 1, 32}, Row{7, 1, 32}, Row{8, 1, 36}}) {
    auto k = gen_bicapped_antiprism(row.n, row.h);
    auto t0 = std::chrono::steady_clock::now();
    long long rank = hh_total_rank(k, FieldSpec::gf2(), 8);
    double secs = seconds_since(t0);
    ok &= expect(rank == row.rank, "antiprism n=" + std::to_string(row.n) + " h=" +
                                       std::to_string(row.h) + " rank " + std::to_string(rank) +
                                       ", expected " + std::to_string(row.rank));
    if (k.vertex_count() == 18)
      ok &= expect(secs < 600.0, "m=18 instance took " + std::to_string(secs) + " s");
  }
  for (int m = 4; m <= 6; ++m) {
    long long rank = hh_total_rank(join(gen_cycle(m), s0()), FieldSpec::gf2(), 8);
    ok &= expect(rank == 8, "suspended cycle m=" + std::to_string(m) + " rank " +
                                std::to_string(rank) + ", expected 8");
  }
  return ok;
}

// 5. Non-primitive spheres: pinned two-octahedra tables over three fields,
//    then the four-entry table check on every generated non-primitive sphere.
bool crit_nonprimitive() {
  bool ok = true;
  BigradedTable e;
  e.add(0, 0, 1);
  e.add(-1, 2, 1);
  e.add(-5, 7, 1);
  e.add(-6, 9, 1);
  for (FieldSpec f : {FieldSpec::gf2(), FieldSpec::gfp(3), FieldSpec::rational()}) {
    auto t = hh_table(two_octahedra(), f);
    ok &= expect(t.entries == e.entries,
                 "two-octahedron table over " + f.to_string() + " mismatch");
  }

  std::vector<SimplicialComplex> suite;
  for (int m = 4; m <= 12; ++m) suite.push_back(gen_cycle(m));
  suite.push_back(self_sum(gen_simplex_boundary(3)));
  suite.push_back(self_sum(gen_simplex_boundary(4)));
  auto oct = octahedron();
  auto tetra = gen_simplex_boundary(3);
  suite.push_back(connected_sum(oct, oct.facets().front(), tetra, tetra.facets().front()));
  suite.push_back(two_octahedra());
  for (const auto& k : suite) {
    std::string tag = "m=" + std::to_string(k.vertex_count()) + " with " +
                      std::to_string(k.facets().size()) + " facets";
    ok &= expect(is_sphere_proxy(k).is_sphere, tag + ": not a sphere proxy");
    ok &= expect(!is_primitive_sphere(k), tag + ": unexpectedly primitive");
    for (FieldSpec f : {FieldSpec::gf2(), FieldSpec::rational()})
      ok &= expect(check_nonprimitive_sphere_table(k, f).passed(),
                   tag + " over " + f.to_string() + ": table check failed");
  }
  return ok;
}

// 6. Duality on every sphere proxy of the generator suite, gf2 and q.
bool crit_duality() {
  std::vector<SimplicialComplex> suite;
  for (int m = 3; m <= 14; ++m) suite.push_back(gen_cycle(m));
  for (int n = 1; n <= 6; ++n) suite.push_back(gen_simplex_boundary(n));
  suite.push_back(octahedron());
  suite.push_back(join(gen_simplex_boundary(2), gen_simplex_boundary(2)));
  suite.push_back(join(gen_cycle(5), s0()));
  suite.push_back(join(gen_cycle(6), s0()));
  suite.push_back(join(gen_cycle(4), gen_cycle(6)));
  suite.push_back(join(gen_simplex_boundary(3), gen_simplex_boundary(2)));
  suite.push_back(two_octahedra());
  suite.push_back(self_sum(gen_simplex_boundary(3)));
  suite.push_back(gen_bicapped_antiprism(4, 1));
  suite.push_back(gen_bicapped_antiprism(5, 1));
  suite.push_back(gen_bicapped_antiprism(4, 2));
  suite.push_back(gen_bicapped_antiprism(6, 1));
  suite.push_back(gen_icosahedron());

  bool ok = true;
  int checked = 0;
  for (const auto& k : suite) {
    std::string tag = "m=" + std::to_string(k.vertex_count()) + " with " +
                      std::to_string(k.facets().size()) + " facets";
    ok &= expect(k.vertex_count() <= 14, tag + ": outside the m cap");
    // every member must actually be recognized, so no check passes vacuously
    ok &= expect(is_sphere_proxy(k).is_sphere, tag + ": not a sphere proxy");
    for (FieldSpec f : {FieldSpec::gf2(), FieldSpec::rational()}) {
      auto r = check_duality(k, f);
      ok &= expect(r.passed(), tag + " over " + f.to_string() + ": " + r.witness);
      ++checked;
    }
  }
  ok &= expect(checked == static_cast<int>(suite.size()) * 2, "unexpected check count");
  return ok;
}

// 7. Facet-removal dichotomy: all deltas in {0, -2}, zero on neighborly
//    spheres, at least one drop on the octahedron (8 -> 6).
bool crit_facet_removal() {
  bool ok = true;

  auto neighborly = facet_removal_scan(join(gen_simplex_boundary(2), gen_simplex_boundary(2)),
                                       FieldSpec::gf2());
  ok &= expect(neighborly.report.passed(), "join scan failed: " + neighborly.report.witness);
  for (const auto& rec : neighborly.records)
    ok &= expect(rec.rank_after == rec.rank_before, "join scan produced a nonzero delta");

  auto oct = facet_removal_scan(octahedron(), FieldSpec::gf2());
  ok &= expect(oct.report.passed(), "octahedron scan failed: " + oct.report.witness);
  bool drop = false;
  for (const auto& rec : oct.records) {
    ok &= expect(rec.rank_before == 8, "octahedron rank is not 8");
    if (rec.rank_after == 6) drop = true;
  }
  ok &= expect(drop, "octahedron never dropped 8 -> 6");

  std::vector<SimplicialComplex> rest = {gen_cycle(5), gen_cycle(6), gen_simplex_boundary(3),
                                         two_octahedra(), gen_icosahedron()};
  std::vector<FacetRemovalScan> scans = {neighborly, oct};
  for (const auto& k : rest) {
    scans.push_back(facet_removal_scan(k, FieldSpec::gf2()));
    ok &= expect(scans.back().report.passed(),
                 "scan failed on m=" + std::to_string(k.vertex_count()) + ": " +
                     scans.back().report.witness);
  }
  for (const auto& scan : scans)
    for (const auto& rec : scan.records) {
      long long delta = rec.rank_after - rec.rank_before;
      ok &= expect(delta == 0 || delta == -2, "delta " + std::to_string(delta) + " outside {0,-2}");
    }
  return ok;
}

// 8. Neighborliness criterion on the pinned suite over gf2 and q.
bool crit_neighborliness() {
  std::vector<SimplicialComplex> suite;
  suite.push_back(gen_cycle(5));
  for (int m = 1; m <= 8; ++m)
    suite.push_back(SimplicialComplex::from_facets(m, {VertexSet::full(m)}));
  suite.push_back(join(gen_simplex_boundary(2), gen_simplex_boundary(2)));
  suite.push_back(octahedron());
  suite.push_back(gen_icosahedron());

  bool ok = true;
  for (const auto& k : suite)
    for (FieldSpec f : {FieldSpec::gf2(), FieldSpec::rational()}) {
      auto r = check_neighborliness_criterion(k, f);
      ok &= expect(r.passed(), "m=" + std::to_string(k.vertex_count()) + " over " +
                                   f.to_string() + ": " + r.witness);
    }
  return ok;
}

// 9. Structural suite: d^2 = 0 on every stratum, per-stratum Euler
//    characteristic preserved, join convolution, and skeleton agreement
//    after add_face against the naive reference.
bool crit_structural() {
  bool ok = true;
  std::mt19937_64 rng(2026);

  std::vector<SimplicialComplex> suite = {gen_cycle(4), gen_cycle(6), gen_simplex_boundary(3),
                                          octahedron(),
                                          join(gen_simplex_boundary(2), gen_simplex_boundary(2))};
  for (int trial = 0; trial < 2; ++trial) suite.push_back(random_complex(rng, 6, 6, 4));

  for (const auto& k : suite)
    for (FieldSpec spec : {FieldSpec::gf2(), FieldSpec::gfp(3), FieldSpec::rational()}) {
      with_field(spec, [&](auto f) {
        for (int j = 0; j <= k.dimension() + 1; ++j) {
          auto st = build_ch_stratum(k, j, f);
          for (std::size_t l = 0; l + 1 < st.d.size(); ++l)
            ok &= expect(is_zero_matrix(matrix_product(st.d[l + 1], st.d[l])),
                         "d^2 != 0 at j=" + std::to_string(j) + " l=" + std::to_string(l));
        }
        return 0;
      });
      auto comp = hh_compute(k, spec);
      for (const auto& sr : comp.strata) {
        long long ch = 0, hh_sum = 0;
        for (int l = 0; l <= k.vertex_count(); ++l) {
          long long sign = l % 2 == 0 ? 1 : -1;
          ch += sign * sr.dims[static_cast<std::size_t>(l)];
          hh_sum += sign * comp.hh.at_jl(sr.j, l);
        }
        ok &= expect(ch == hh_sum, "euler characteristic changed in stratum j=" +
                                       std::to_string(sr.j));
      }
    }

  for (FieldSpec f : {FieldSpec::gf2(), FieldSpec::rational()}) {
    auto point = hh_table(s0(), f);
    auto oct3 = hh_table(octahedron(), f);
    ok &= expect(oct3.entries == convolve(convolve(point, point), point).entries,
                 "octahedron is not the triple convolution over " + f.to_string());
    auto joined = hh_table(join(gen_cycle(5), s0()), f);
    ok &= expect(joined.entries == convolve(hh_table(gen_cycle(5), f), point).entries,
                 "suspended pentagon convolution mismatch over " + f.to_string());
  }

  int found = 0;
  while (found < 5) {
    int m = 5 + static_cast<int>(rng() % 6);
    auto k = random_complex(rng, m, m, 4);
    std::vector<VertexSet> candidates;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
      VertexSet s = VertexSet::from_bits(bits);
      if (s.size() < 2 || k.contains(s)) continue;
      bool boundary = true;
      for (int v : s.to_vector())
        if (!k.contains(s.without(v))) {
          boundary = false;
          break;
        }
      if (boundary) candidates.push_back(s);
    }
    if (candidates.empty()) continue;
    VertexSet s = candidates[rng() % candidates.size()];
    auto grown = add_face(k, s);
    ++found;

    FieldSpec f = FieldSpec::gf2();
    auto before = hh_table(k, f), after = hh_table(grown, f);
    ok &= expect(to_ref_table(before) == refimpl::hh_table(to_ref(k), f),
                 "engine disagrees with reference before add_face");
    ok &= expect(to_ref_table(after) == refimpl::hh_table(to_ref(grown), f),
                 "engine disagrees with reference after add_face");
    // strata below the new face's dimension cannot move
    for (const auto& table : {before, after})
      for (const auto& [key, dim] : table.entries) {
        int j = key.first + key.second;
        if (j <= s.size() - 2)
          ok &= expect(before.at(key.second, key.first) == after.at(key.second, key.first),
                       "stratum j=" + std::to_string(j) + " moved under add_face");
      }
  }
  return ok;
}

// 10. Full agreement with the naive reference on every corpus complex,
//     gf2 / gfp:3 / gfp:5 / q, both tables.
bool crit_reference_agreement() {
  std::mt19937_64 rng(404);
  std::vector<SimplicialComplex> corpus;
  for (int m = 3; m <= 8; ++m) corpus.push_back(gen_cycle(m));
  for (int n = 1; n <= 7; ++n) corpus.push_back(gen_simplex_boundary(n));
  corpus.push_back(octahedron());
  corpus.push_back(join(gen_simplex_boundary(2), gen_simplex_boundary(2)));
  corpus.push_back(join(gen_cycle(5), s0()));
  corpus.push_back(join(gen_cycle(6), s0()));
  corpus.push_back(self_sum(gen_simplex_boundary(3)));
  for (int m = 2; m <= 5; ++m)
    corpus.push_back(SimplicialComplex::from_facets(m, {VertexSet::full(m)}));
  auto oct = octahedron();
  corpus.push_back(remove_facet(oct, oct.facets().front()));
  corpus.push_back(SimplicialComplex::from_facets(5, {VertexSet{1, 2, 3}, VertexSet{3, 4, 5}}));
  for (int m = 4; m <= 8; ++m)
    for (int trial = 0; trial < 2; ++trial) corpus.push_back(random_complex(rng, m, m + 2, 4));

  bool ok = true;
  int pairs = 0;
  for (const auto& k : corpus) {
    auto ref = to_ref(k);
    ok &= expect(k.vertex_count() <= 8, "corpus member above m = 8");
    for (FieldSpec f :
         {FieldSpec::gf2(), FieldSpec::gfp(3), FieldSpec::gfp(5), FieldSpec::rational()}) {
      auto comp = hh_compute(k, f);
      std::string tag = "m=" + std::to_string(k.vertex_count()) + " with " +
                        std::to_string(k.facets().size()) + " facets over " + f.to_string();
      ok &= expect(to_ref_table(comp.hochster) == refimpl::hochster(ref, f),
                   tag + ": hochster tables differ");
      ok &= expect(to_ref_table(comp.hh) == refimpl::hh_table(ref, f),
                   tag + ": hh tables differ");
      ++pairs;
    }
  }
  ok &= expect(pairs == static_cast<int>(corpus.size()) * 4, "unexpected pair count");
  return ok;
}

// 11. Byte-identical JSON from the installed binary across --jobs 1/4/8.
bool crit_determinism() {
  std::string bin = HHCALC_PATH;
  auto dir = std::filesystem::temp_directory_path() / "hh_acceptance_jobs";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto ico = (dir / "ico.cplx").string();

  bool ok = expect(std::system((bin + " gen icosahedron > " + ico).c_str()) == 0,
                   "gen icosahedron failed");
  std::vector<std::string> outputs;
  for (int jobs : {1, 4, 8}) {
    auto out = (dir / ("jobs" + std::to_string(jobs) + ".json")).string();
    std::string cmd =
        bin + " hh " + ico + " --coeff gf2 --format json --jobs " + std::to_string(jobs) +
        " > " + out;
    ok &= expect(std::system(cmd.c_str()) == 0, "hh --jobs " + std::to_string(jobs) + " failed");
    outputs.push_back(read_file(out));
  }
  ok &= expect(!outputs.empty() && !outputs.front().empty(), "empty JSON output");
  for (const auto& text : outputs)
    ok &= expect(text == outputs.front(), "outputs differ between --jobs runs");
  std::filesystem::remove_all(dir);
  return ok;
}

}  // namespace

int main() {
  std::printf("acceptance: bigraded double homology engine\n");
  criterion(1, "cycle spheres m=4..8: exact merged tables, three fields", 1.0, crit_cycles);
  criterion(2, "simplex boundaries n=1..5: total rank 2 at pinned bidegrees", 1.0,
            crit_simplex_boundaries);
  criterion(3, "icosahedron over gf2: exact six-entry table, 1 and 8 workers", 0,
            crit_icosahedron);
  criterion(4, "bicapped antiprisms and suspended cycles: pinned total ranks", 0,
            crit_antiprisms);
  criterion(5, "non-primitive spheres m<=12: four-entry table, exact", 120.0, crit_nonprimitive);
  criterion(6, "duality on every suite sphere m<=14 over gf2 and q", 900.0, crit_duality);
  criterion(7, "facet-removal dichotomy: deltas in {0,-2}, octahedron 8->6", 0,
            crit_facet_removal);
  criterion(8, "neighborliness criterion on the pinned suite, gf2 and q", 0,
            crit_neighborliness);
  criterion(9, "structural suite: d^2=0, euler, convolution, added faces", 0, crit_structural);
  criterion(10, "naive-reference agreement m<=8, both tables, four fields", 0,
            crit_reference_agreement);
  criterion(11, "byte-identical json across --jobs 1/4/8 on the icosahedron", 0,
            crit_determinism);

  std::printf("%d/11 criteria passed\n", 11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
