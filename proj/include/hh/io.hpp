#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hh/bigraded.hpp"

namespace hh {

using json = nlohmann::ordered_json;

/**
 * Facet-list text format: one facet per line as 1-based vertex numbers
 * separated by spaces, an optional leading header "m <int>" fixing the
 * vertex count, "#" starting a comment, blank lines skipped.  Without a
 * header m is the largest vertex mentioned.  Ghost vertices are rejected.
 */
inline SimplicialComplex read_complex(std::istream& in) {
  std::optional<int> declared_m;
  std::vector<VertexSet> facets;
  std::string line;
  int lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "m") {
      if (!header_allowed)
        throw std::runtime_error("line " + std::to_string(lineno) + ": header after facets");
      int v = 0;
      std::string extra;
      if (!(tokens >> v) || v < 1 || (tokens >> extra))
        throw std::runtime_error("line " + std::to_string(lineno) + ": malformed header");
      declared_m = v;
      header_allowed = false;
      continue;
    }
    header_allowed = false;
    VertexSet f;
    tokens.clear();
    tokens.seekg(0);
    int v = 0;
    while (tokens >> v) {
      if (v < 1 || v > VertexSet::max_vertices)
        throw std::runtime_error("line " + std::to_string(lineno) + ": vertex " +
                                 std::to_string(v) + " out of range");
      f = f.with(v);
    }
    if (!tokens.eof())
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected vertex numbers");
    facets.push_back(f);
  }
  int m = 0;
  if (declared_m) {
    m = *declared_m;
  } else {
    for (VertexSet f : facets) m = std::max(m, f.empty() ? 0 : f.to_vector().back());
  }
  if (facets.empty()) throw std::runtime_error("no facets in input");
  return SimplicialComplex::from_facets(m, std::move(facets));
}

inline SimplicialComplex read_complex_string(const std::string& text) {
  std::istringstream in(text);
  return read_complex(in);
}

/// Canonical facet lines, one per facet in the complex's canonical order.
inline void write_complex(std::ostream& out, const SimplicialComplex& k) {
  for (VertexSet f : k.facets()) {
    bool first = true;
    for (int v : f.to_vector()) {
      if (!first) out << ' ';
      first = false;
      out << v;
    }
    out << '\n';
  }
}

inline std::string write_complex_string(const SimplicialComplex& k) {
  std::ostringstream out;
  write_complex(out, k);
  return out.str();
}

struct ResultTimings {
  long long homology_us = 0; // Betti profile of every full subcomplex
  long long ranks_us = 0;    // second-differential ranks per stratum
  long long total_us = 0;
};

/// Full outcome of one table computation, ready for rendering.
struct ResultDocument {
  static constexpr int schema_version = 1;

  int m = 0;
  int dim = -1;
  long long facet_count = 0;
  std::string hash;
  FieldSpec field;
  BigradedTable hochster;
  BigradedTable hh;
  long long hh_total_rank = 0;
  std::optional<ResultTimings> timings;
};

inline ResultDocument make_result_document(const SimplicialComplex& k, const HhComputation& c) {
  ResultDocument d;
  d.m = k.vertex_count();
  d.dim = k.dimension();
  d.facet_count = static_cast<long long>(k.facets().size());
  d.hash = k.canonical_hash();
  d.field = c.profile.field;
  d.hochster = c.hochster;
  d.hh = c.hh;
  d.hh_total_rank = c.hh.total();
  return d;
}

namespace detail {

inline json table_to_json(const BigradedTable& t) {
  json arr = json::array();
  // map order is (l, k) ascending, the documented entry order
  for (const auto& [key, dim] : t.entries)
    arr.push_back({{"k", key.second}, {"l", key.first}, {"dim", dim}});
  return arr;
}

inline void table_from_json(const json& arr, BigradedTable& t) {
  for (const auto& e : arr) {
    long long dim = e.at("dim").get<long long>();
    if (dim < 1) throw std::runtime_error("table entry with dim < 1");
    t.add(e.at("k").get<int>(), e.at("l").get<int>(), dim);
  }
}

}  // namespace detail

inline json to_json(const ResultDocument& d) {
  json j;
  j["schema_version"] = ResultDocument::schema_version;
  j["complex"] = {{"m", d.m}, {"dim", d.dim}, {"facet_count", d.facet_count}, {"hash", d.hash}};
  j["field"] = d.field.to_string();
  j["hochster"] = detail::table_to_json(d.hochster);
  j["hh"] = detail::table_to_json(d.hh);
  j["hh_total_rank"] = d.hh_total_rank;
  if (d.timings)
    j["timings"] = {{"homology_us", d.timings->homology_us},
                    {"ranks_us", d.timings->ranks_us},
                    {"total_us", d.timings->total_us}};
  return j;
}

inline ResultDocument result_document_from_json(const json& j) {
  if (j.at("schema_version").get<int>() != ResultDocument::schema_version)
    throw std::runtime_error("unsupported schema_version");
  ResultDocument d;
  const json& c = j.at("complex");
  d.m = c.at("m").get<int>();
  d.dim = c.at("dim").get<int>();
  d.facet_count = c.at("facet_count").get<long long>();
  d.hash = c.at("hash").get<std::string>();
  d.field = FieldSpec::parse(j.at("field").get<std::string>());
  d.hochster.kind = BigradedTable::Kind::hochster;
  d.hh.kind = BigradedTable::Kind::hh;
  for (BigradedTable* t : {&d.hochster, &d.hh}) {
    t->m = d.m;
    t->field = d.field;
    t->complex_hash = d.hash;
  }
  detail::table_from_json(j.at("hochster"), d.hochster);
  detail::table_from_json(j.at("hh"), d.hh);
  d.hh_total_rank = j.at("hh_total_rank").get<long long>();
  if (j.contains("timings")) {
    ResultTimings t;
    t.homology_us = j["timings"].at("homology_us").get<long long>();
    t.ranks_us = j["timings"].at("ranks_us").get<long long>();
    t.total_us = j["timings"].at("total_us").get<long long>();
    d.timings = t;
  }
  return d;
}

namespace detail {

inline void render_bigraded(std::ostream& out, const char* name, const BigradedTable& t) {
  out << name << " (bidegree (k, 2l) : dim):\n";
  if (t.entries.empty()) {
    out << "  (empty)\n";
    return;
  }
  for (const auto& [key, dim] : t.entries)
    out << "  (" << key.second << ", " << 2 * key.first << ") : " << dim << '\n';
}

}  // namespace detail

/// Human-oriented rendering; scripts should consume the JSON form instead.
inline std::string render_table(const ResultDocument& d) {
  std::ostringstream out;
  out << "complex: m=" << d.m << " dim=" << d.dim << " facets=" << d.facet_count << '\n';
  out << "hash: " << d.hash << '\n';
  out << "field: " << d.field.to_string() << '\n';
  detail::render_bigraded(out, "hochster", d.hochster);
  detail::render_bigraded(out, "hh", d.hh);
  out << "hh total rank: " << d.hh_total_rank << '\n';
  if (d.timings)
    out << "timings: homology " << d.timings->homology_us << "us, ranks " << d.timings->ranks_us
        << "us, total " << d.timings->total_us << "us\n";
  return out.str();
}

}  // namespace hh
