#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hh/cache.hpp"
#include "hh/generators.hpp"
#include "hh/io.hpp"
#include "hh/verify.hpp"

namespace hh {
namespace detail {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline SimplicialComplex load_input(const std::string& path) {
  if (path.empty() || path == "-") return read_complex(std::cin);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_complex(in);
}

inline void check_cap(const SimplicialComplex& k, int max_m) {
  if (max_m > kDefaultMaxM)
    std::cerr << "warning: vertex cap raised to " << max_m << "; full tables enumerate 2^m"
              << " subcomplexes\n";
  if (k.vertex_count() > max_m)
    throw CapExceeded("m = " + std::to_string(k.vertex_count()) + " exceeds the cap " +
                      std::to_string(max_m) + " (override with --max-m)");
}

inline VertexSet parse_vertices(const std::string& text) {
  std::istringstream in(text);
  VertexSet s;
  int v = 0;
  while (in >> v) {
    if (v < 1 || v > VertexSet::max_vertices)
      throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    s = s.with(v);
  }
  if (!in.eof() || s.empty()) throw std::invalid_argument("expected vertex numbers: " + text);
  return s;
}

/// "4..8" or a single "4".
inline std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  std::size_t used = 0;
  int lo = 0, hi = 0;
  if (dots == std::string::npos) {
    lo = hi = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad range: " + text);
  } else {
    lo = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("bad range: " + text);
    hi = std::stoi(text.substr(dots + 2), &used);
    if (used != text.size() - dots - 2) throw std::invalid_argument("bad range: " + text);
  }
  if (lo > hi) throw std::invalid_argument("empty range: " + text);
  return {lo, hi};
}

inline bool power_of_two(long long r) { return r > 0 && (r & (r - 1)) == 0; }

inline long long us_between(std::chrono::steady_clock::time_point a,
                            std::chrono::steady_clock::time_point b) {
  return std::chrono::duration_cast<std::chrono::microseconds>(b - a).count();
}

struct EngineOpts {
  std::string input = "-";
  std::string coeff = "gf2";
  int jobs = 1;
  int max_m = kDefaultMaxM;
};

inline void add_engine_opts(CLI::App* cmd, EngineOpts& o, bool with_input = true) {
  if (with_input)
    cmd->add_option("input", o.input, "facet file, or - for stdin")->capture_default_str();
  cmd->add_option("--coeff", o.coeff, "coefficient field: gf2, gfp:<prime>, or q")
      ->capture_default_str()
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            try {
              FieldSpec::parse(s);
              return {};
            } catch (const std::exception& e) {
              return e.what();
            }
          },
          "FIELD"));
  cmd->add_option("--jobs", o.jobs, "worker threads")->capture_default_str()
      ->check(CLI::Range(1, 256));
  cmd->add_option("--max-m", o.max_m, "vertex-count cap")->capture_default_str()
      ->check(CLI::Range(1, static_cast<int>(VertexSet::max_vertices)));
}

struct HhOpts : EngineOpts {
  std::string format = "table";
  std::string cache_dir;
  bool timings = false;
};

inline int run_hh(const HhOpts& o) {
  SimplicialComplex k = load_input(o.input);
  check_cap(k, o.max_m);
  FieldSpec field = FieldSpec::parse(o.coeff);

  using clock = std::chrono::steady_clock;
  auto start = clock::now();
  std::optional<HhComputation> c;
  long long homology_us = 0, ranks_us = 0;
  if (!o.cache_dir.empty()) {
    c = cache_get(o.cache_dir, k, field);
    if (c) homology_us = us_between(start, clock::now());
  }
  if (!c) {
    auto t0 = clock::now();
    BettiProfile profile = betti_profile(k, field, o.jobs, o.max_m);
    auto t1 = clock::now();
    c = hh_compute_from_profile(k, std::move(profile), o.jobs);
    auto t2 = clock::now();
    homology_us = us_between(t0, t1);
    ranks_us = us_between(t1, t2);
    if (!o.cache_dir.empty()) cache_put(o.cache_dir, k, field, *c);
  }

  ResultDocument doc = make_result_document(k, *c);
  if (o.timings)
    doc.timings = ResultTimings{homology_us, ranks_us, us_between(start, clock::now())};
  if (o.format == "json")
    std::cout << to_json(doc).dump(2) << '\n';
  else
    std::cout << render_table(doc);
  return 0;
}

struct VerifyOpts : EngineOpts {
  std::string check = "all";
};

inline void print_report(const VerificationReport& r) {
  std::cout << r.check << ": " << r.status_string();
  if (r.status == VerificationReport::Status::skipped && !r.reason.empty())
    std::cout << " (" << r.reason << ")";
  else if (!r.witness.empty())
    std::cout << " (" << r.witness << ")";
  std::cout << '\n';
}

inline int run_verify(const VerifyOpts& o) {
  SimplicialComplex k = load_input(o.input);
  check_cap(k, o.max_m);
  FieldSpec field = FieldSpec::parse(o.coeff);

  static const std::vector<std::string> all = {"duality", "nonprimitive-sphere", "facet-removal",
                                               "neighborliness", "rank2"};
  std::vector<std::string> todo = o.check == "all" ? all : std::vector<std::string>{o.check};
  bool any_fail = false;
  for (const std::string& name : todo) {
    VerificationReport r;
    if (name == "duality") {
      r = check_duality(k, field, o.jobs, o.max_m);
    } else if (name == "nonprimitive-sphere") {
      r = check_nonprimitive_sphere_table(k, field, o.jobs, o.max_m);
    } else if (name == "neighborliness") {
      r = check_neighborliness_criterion(k, field, o.jobs, o.max_m);
    } else if (name == "rank2") {
      r = check_rank2_characterization(k, field, o.jobs, o.max_m);
    } else {
      FacetRemovalScan scan = facet_removal_scan(k, field, o.jobs, o.max_m);
      print_report(scan.report);
      for (const auto& rec : scan.records)
        std::cout << "  {" << rec.facet.to_string() << "}: rank " << rec.rank_before << " -> "
                  << rec.rank_after
                  << (rec.vertex_with_nonneighbor ? ", has vertex with non-neighbor" : "")
                  << '\n';
      any_fail = any_fail || scan.report.failed();
      continue;
    }
    print_report(r);
    any_fail = any_fail || r.failed();
  }
  return any_fail ? 3 : 0;
}

struct SearchOpts : EngineOpts {
  std::string emit_dir;
  std::string n_range = "4..8";
  std::string h_range = "1";
  std::string input_b;
};

/// One search result line; writes the facet file when the rank is exotic.
inline void emit_search_line(const SearchOpts& o, const std::string& params,
                             const SimplicialComplex& k, long long rank,
                             const std::string& file_tag) {
  bool exotic = !power_of_two(rank);
  std::cout << params << " m=" << k.vertex_count() << " rank=" << rank
            << " exotic=" << (exotic ? "yes" : "no");
  if (exotic && !o.emit_dir.empty()) {
    std::filesystem::create_directories(o.emit_dir);
    std::filesystem::path path = std::filesystem::path(o.emit_dir) / (file_tag + ".cplx");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_complex(out, k);
    std::cout << " file=" << path.string();
  }
  std::cout << '\n';
}

inline int run_search_antiprism(const SearchOpts& o) {
  FieldSpec field = FieldSpec::parse(o.coeff);
  auto [n_lo, n_hi] = parse_range(o.n_range);
  auto [h_lo, h_hi] = parse_range(o.h_range);
  for (int n = n_lo; n <= n_hi; ++n)
    for (int h = h_lo; h <= h_hi; ++h) {
      std::string params = "n=" + std::to_string(n) + " h=" + std::to_string(h);
      try {
        SimplicialComplex k = gen_bicapped_antiprism(n, h);
        check_cap(k, o.max_m);
        long long rank = hh_total_rank(k, field, o.jobs, o.max_m);
        emit_search_line(o, params, k, rank,
                         "exotic-bicapped-antiprism-n" + std::to_string(n) + "-h" +
                             std::to_string(h));
      } catch (const std::exception& e) {
        std::cerr << "error: " << params << ": " << e.what() << '\n';
      }
    }
  return 0;
}

inline std::string dashed(VertexSet s) {
  std::string out;
  for (int v : s.to_vector()) {
    if (!out.empty()) out += '-';
    out += std::to_string(v);
  }
  return out;
}

inline int run_search_facet_deletions(const SearchOpts& o) {
  FieldSpec field = FieldSpec::parse(o.coeff);
  SimplicialComplex k = load_input(o.input);
  check_cap(k, o.max_m);
  for (VertexSet f : k.facets()) {
    std::string params = "facet={" + f.to_string() + "}";
    try {
      SimplicialComplex removed = remove_facet(k, f);
      long long rank = hh_total_rank(removed, field, o.jobs, o.max_m);
      emit_search_line(o, params, removed, rank, "exotic-facet-deletion-" + dashed(f));
    } catch (const std::exception& e) {
      std::cerr << "error: " << params << ": " << e.what() << '\n';
    }
  }
  return 0;
}

inline int run_search_connected_sums(const SearchOpts& o) {
  FieldSpec field = FieldSpec::parse(o.coeff);
  SimplicialComplex a = load_input(o.input);
  SimplicialComplex b = load_input(o.input_b);
  for (VertexSet fa : a.facets())
    for (VertexSet fb : b.facets()) {
      if (fa.size() != fb.size()) continue;
      std::string params = "facet_a={" + fa.to_string() + "} facet_b={" + fb.to_string() + "}";
      try {
        SimplicialComplex sum = connected_sum(a, fa, b, fb);
        check_cap(sum, o.max_m);
        long long rank = hh_total_rank(sum, field, o.jobs, o.max_m);
        emit_search_line(o, params, sum, rank,
                         "exotic-connected-sum-" + dashed(fa) + "-" + dashed(fb));
      } catch (const std::exception& e) {
        std::cerr << "error: " << params << ": " << e.what() << '\n';
      }
    }
  return 0;
}

}  // namespace detail

inline int run_cli(int argc, char** argv) {
  CLI::App app{"bigraded double homology of moment-angle complexes"};
  app.require_subcommand(1);
  int rc = 0;

  // gen: emit generator and composite complexes as facet lists
  auto* gen = app.add_subcommand("gen", "generate a complex and print its facet list");
  gen->require_subcommand(1);

  int cycle_m = 0;
  auto* gen_cycle_cmd = gen->add_subcommand("cycle", "boundary of an m-gon");
  gen_cycle_cmd->add_option("m", cycle_m, "number of vertices, at least 3")->required();
  gen_cycle_cmd->callback([&] { write_complex(std::cout, gen_cycle(cycle_m)); });

  int simplex_n = 0;
  auto* gen_simplex_cmd = gen->add_subcommand("simplex-boundary", "boundary of the n-simplex");
  gen_simplex_cmd->add_option("n", simplex_n, "simplex dimension, at least 1")->required();
  gen_simplex_cmd->callback([&] { write_complex(std::cout, gen_simplex_boundary(simplex_n)); });

  auto* gen_ico_cmd = gen->add_subcommand("icosahedron", "the icosahedron surface");
  gen_ico_cmd->callback([&] { write_complex(std::cout, gen_icosahedron()); });

  int anti_n = 0, anti_h = 1;
  auto* gen_anti_cmd =
      gen->add_subcommand("bicapped-antiprism", "bicapped n-gonal h-antiprism sphere");
  gen_anti_cmd->add_option("n", anti_n, "gon count, at least 3")->required();
  gen_anti_cmd->add_option("height", anti_h, "band count, at least 1")->capture_default_str();
  gen_anti_cmd->callback([&] { write_complex(std::cout, gen_bicapped_antiprism(anti_n, anti_h)); });

  std::string file_a, file_b, facet_a, facet_b, face_arg;
  auto* gen_join_cmd = gen->add_subcommand("join", "join of two complexes");
  gen_join_cmd->add_option("a", file_a, "first facet file")->required();
  gen_join_cmd->add_option("b", file_b, "second facet file")->required();
  gen_join_cmd->callback([&] {
    write_complex(std::cout, join(detail::load_input(file_a), detail::load_input(file_b)));
  });

  auto* gen_sum_cmd = gen->add_subcommand("connected-sum", "connected sum along two facets");
  gen_sum_cmd->add_option("a", file_a, "first facet file")->required();
  gen_sum_cmd->add_option("b", file_b, "second facet file")->required();
  gen_sum_cmd->add_option("--facet-a", facet_a, "facet of a, e.g. \"1 2 3\" (default: first)");
  gen_sum_cmd->add_option("--facet-b", facet_b, "facet of b (default: first of matching size)");
  gen_sum_cmd->callback([&] {
    SimplicialComplex a = detail::load_input(file_a);
    SimplicialComplex b = detail::load_input(file_b);
    VertexSet fa = facet_a.empty() ? a.facets().front() : detail::parse_vertices(facet_a);
    VertexSet fb;
    if (!facet_b.empty()) {
      fb = detail::parse_vertices(facet_b);
    } else {
      auto it = std::find_if(b.facets().begin(), b.facets().end(),
                             [&](VertexSet f) { return f.size() == fa.size(); });
      if (it == b.facets().end())
        throw std::invalid_argument("no facet of b matches the size of the chosen facet of a");
      fb = *it;
    }
    write_complex(std::cout, connected_sum(a, fa, b, fb));
  });

  auto* gen_rm_cmd = gen->add_subcommand("remove-facet", "delete one facet");
  gen_rm_cmd->add_option("input", file_a, "facet file")->required();
  gen_rm_cmd->add_option("--facet", face_arg, "facet to delete, e.g. \"1 2 3\"")->required();
  gen_rm_cmd->callback([&] {
    write_complex(std::cout,
                  remove_facet(detail::load_input(file_a), detail::parse_vertices(face_arg)));
  });

  auto* gen_add_cmd = gen->add_subcommand("add-face", "insert a face whose boundary is present");
  gen_add_cmd->add_option("input", file_a, "facet file")->required();
  gen_add_cmd->add_option("--face", face_arg, "face to insert, e.g. \"1 2 3\"")->required();
  gen_add_cmd->callback([&] {
    write_complex(std::cout,
                  add_face(detail::load_input(file_a), detail::parse_vertices(face_arg)));
  });

  // hh: the main computation
  detail::HhOpts hh_opts;
  auto* hh_cmd = app.add_subcommand("hh", "compute the Hochster and double-homology tables");
  detail::add_engine_opts(hh_cmd, hh_opts);
  hh_cmd->add_option("--format", hh_opts.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"table", "json"}));
  hh_cmd->add_option("--cache", hh_opts.cache_dir, "cache directory for reuse across runs");
  hh_cmd->add_flag("--timings", hh_opts.timings, "include phase timings in the output");
  hh_cmd->callback([&] { rc = detail::run_hh(hh_opts); });

  // verify: structural checks with pass/fail/skip reports
  detail::VerifyOpts verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "run structural checks against the tables");
  detail::add_engine_opts(verify_cmd, verify_opts);
  verify_cmd
      ->add_option("--check", verify_opts.check, "which check to run")
      ->capture_default_str()
      ->check(CLI::IsMember({"duality", "nonprimitive-sphere", "facet-removal", "neighborliness",
                             "rank2", "all"}));
  verify_cmd->callback([&] { rc = detail::run_verify(verify_opts); });

  // search: batch rank exploration
  auto* search = app.add_subcommand("search", "stream total ranks over a family");
  search->require_subcommand(1);

  detail::SearchOpts anti_opts;
  auto* search_anti = search->add_subcommand("bicapped-antiprism", "sweep n and h ranges");
  detail::add_engine_opts(search_anti, anti_opts, false);
  search_anti->add_option("--n", anti_opts.n_range, "gon range, e.g. 4..8")->capture_default_str();
  search_anti->add_option("--height", anti_opts.h_range, "band range, e.g. 1..2")
      ->capture_default_str();
  search_anti->add_option("--emit-exotic", anti_opts.emit_dir,
                          "write facet files for non-power-of-2 ranks into this directory");
  search_anti->callback([&] { rc = detail::run_search_antiprism(anti_opts); });

  detail::SearchOpts del_opts;
  auto* search_del = search->add_subcommand("facet-deletions", "delete each facet in turn");
  detail::add_engine_opts(search_del, del_opts);
  search_del->add_option("--emit-exotic", del_opts.emit_dir,
                         "write facet files for non-power-of-2 ranks into this directory");
  search_del->callback([&] { rc = detail::run_search_facet_deletions(del_opts); });

  detail::SearchOpts sum_opts;
  auto* search_sum = search->add_subcommand("connected-sums", "sum along every facet pair");
  detail::add_engine_opts(search_sum, sum_opts);
  search_sum->add_option("b", sum_opts.input_b, "second facet file")->required();
  search_sum->add_option("--emit-exotic", sum_opts.emit_dir,
                         "write facet files for non-power-of-2 ranks into this directory");
  search_sum->callback([&] { rc = detail::run_search_connected_sums(sum_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const detail::CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}

}  // namespace hh
