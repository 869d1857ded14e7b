#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "hh/bigraded.hpp"

namespace hh {

inline std::filesystem::path cache_path(const std::filesystem::path& dir, const std::string& hash,
                                        FieldSpec field) {
  return dir / (hash + "." + field.file_token() + ".cache");
}

namespace detail {

inline nlohmann::ordered_json cache_payload(const HhComputation& c) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["m"] = c.profile.m;
  j["field"] = c.profile.field.to_string();
  j["hash"] = c.hh.complex_hash;
  auto profile = nlohmann::ordered_json::array();
  for (const auto& e : c.profile.entries)
    profile.push_back({e.subset.bits(), e.degree, e.dim});
  j["profile"] = std::move(profile);
  auto strata = nlohmann::ordered_json::array();
  for (const auto& s : c.strata)
    strata.push_back({{"j", s.j}, {"dims", s.dims}, {"ranks", s.ranks}});
  j["strata"] = std::move(strata);
  return j;
}

inline HhComputation computation_from_cache(const nlohmann::ordered_json& j,
                                            const SimplicialComplex& k, FieldSpec field) {
  if (j.at("schema_version").get<int>() != 1) throw std::runtime_error("schema mismatch");
  int m = k.vertex_count();
  std::string hash = k.canonical_hash();
  if (j.at("m").get<int>() != m || j.at("hash").get<std::string>() != hash ||
      !(FieldSpec::parse(j.at("field").get<std::string>()) == field))
    throw std::runtime_error("cache entry is for a different computation");

  HhComputation c;
  c.profile.m = m;
  c.profile.field = field;
  std::uint64_t prev_bits = 0;
  int prev_degree = 0;
  for (const auto& row : j.at("profile")) {
    BettiProfile::Entry e;
    e.subset = VertexSet::from_bits(row.at(0).get<std::uint64_t>());
    e.degree = row.at(1).get<int>();
    e.dim = row.at(2).get<long long>();
    if (e.dim < 1 || (e.subset.bits() >> m) != 0)
      throw std::runtime_error("bad profile row");
    if (!c.profile.entries.empty() &&
        (e.subset.bits() < prev_bits ||
         (e.subset.bits() == prev_bits && e.degree <= prev_degree)))
      throw std::runtime_error("profile rows out of order");
    prev_bits = e.subset.bits();
    prev_degree = e.degree;
    c.profile.entries.push_back(e);
  }
  for (const auto& row : j.at("strata")) {
    StratumRanks s;
    s.j = row.at("j").get<int>();
    s.dims = row.at("dims").get<std::vector<long long>>();
    s.ranks = row.at("ranks").get<std::vector<long long>>();
    if (s.dims.size() != static_cast<std::size_t>(m + 1) || s.ranks.size() != s.dims.size())
      throw std::runtime_error("bad stratum row");
    c.strata.push_back(std::move(s));
  }
  c.hochster = hochster_table_from_profile(c.profile);
  c.hochster.complex_hash = hash;
  c.hh = hh_table_from_summaries(m, field, c.strata); // throws on inconsistent summaries
  c.hh.complex_hash = hash;
  return c;
}

}  // namespace detail

/**
 * Loads a previously stored computation.  Missing entries return nullopt
 * silently; unreadable or inconsistent entries warn on stderr and return
 * nullopt so the caller recomputes.
 */
inline std::optional<HhComputation> cache_get(const std::filesystem::path& dir,
                                              const SimplicialComplex& k, FieldSpec field) {
  std::filesystem::path path = cache_path(dir, k.canonical_hash(), field);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("unreadable");
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
    return detail::computation_from_cache(j, k, field);
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring corrupt cache entry " << path.string() << " (" << e.what()
              << ")\n";
    return std::nullopt;
  }
}

/// Stores a computation; write goes through a temp file then a rename.
inline void cache_put(const std::filesystem::path& dir, const SimplicialComplex& k,
                      FieldSpec field, const HhComputation& c) {
  std::filesystem::create_directories(dir);
  std::filesystem::path path = cache_path(dir, k.canonical_hash(), field);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << detail::cache_payload(c).dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hh
