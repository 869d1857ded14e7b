#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace hh {

/**
 * Subset of a vertex set {1, ..., m} stored as a 64-bit mask.
 *
 * Bit (v - 1) represents vertex v; labels are 1-based in every interface,
 * including file formats and diagnostics.  At most 63 vertices, so masks
 * stay inside one word and subset enumeration is plain integer arithmetic.
 */
class VertexSet {
 public:
  static constexpr int max_vertices = 63;

  constexpr VertexSet() = default;

  static constexpr VertexSet from_bits(std::uint64_t bits) {
    VertexSet s;
    s.bits_ = bits;
    return s;
  }

  static VertexSet single(int v) {
    check_label(v);
    return from_bits(std::uint64_t{1} << (v - 1));
  }

  /// {1, ..., m}; m == 0 gives the empty set.
  static VertexSet full(int m) {
    if (m < 0 || m > max_vertices)
      throw std::invalid_argument("VertexSet::full: bad vertex count " + std::to_string(m));
    return m == 0 ? VertexSet{} : from_bits(~std::uint64_t{0} >> (64 - m));
  }

  VertexSet(std::initializer_list<int> verts) {
    for (int v : verts) {
      check_label(v);
      bits_ |= std::uint64_t{1} << (v - 1);
    }
  }

  constexpr std::uint64_t bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }

  bool contains(int v) const {
    return v >= 1 && v <= max_vertices && (bits_ >> (v - 1)) & 1u;
  }
  bool contains_all(VertexSet o) const { return (o.bits_ & ~bits_) == 0; }
  bool subset_of(VertexSet o) const { return o.contains_all(*this); }
  bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  /// Smallest vertex label; set must be nonempty.
  int lowest() const {
    if (empty()) throw std::logic_error("VertexSet::lowest on empty set");
    return std::countr_zero(bits_) + 1;
  }

  VertexSet with(int v) const {
    check_label(v);
    return from_bits(bits_ | (std::uint64_t{1} << (v - 1)));
  }
  VertexSet without(int v) const {
    check_label(v);
    return from_bits(bits_ & ~(std::uint64_t{1} << (v - 1)));
  }

  friend VertexSet operator|(VertexSet a, VertexSet b) { return from_bits(a.bits_ | b.bits_); }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return from_bits(a.bits_ & b.bits_); }
  /// Set difference.
  friend VertexSet operator-(VertexSet a, VertexSet b) { return from_bits(a.bits_ & ~b.bits_); }

  friend bool operator==(VertexSet a, VertexSet b) { return a.bits_ == b.bits_; }
  friend bool operator!=(VertexSet a, VertexSet b) { return a.bits_ != b.bits_; }

  /// Ascending vertex labels.
  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t rest = bits_; rest; rest &= rest - 1)
      out.push_back(std::countr_zero(rest) + 1);
    return out;
  }

  /// Position of vertex v among the set's ascending labels (0-based); v must be present.
  int index_of(int v) const {
    if (!contains(v)) throw std::logic_error("VertexSet::index_of: vertex not present");
    return std::popcount(bits_ & ((std::uint64_t{1} << (v - 1)) - 1));
  }

  /// Space-separated ascending labels; "-" for the empty set.
  std::string to_string() const {
    if (empty()) return "-";
    std::string out;
    for (int v : to_vector()) {
      if (!out.empty()) out += ' ';
      out += std::to_string(v);
    }
    return out;
  }

 private:
  static void check_label(int v) {
    if (v < 1 || v > max_vertices)
      throw std::invalid_argument("vertex label out of range: " + std::to_string(v));
  }

  std::uint64_t bits_ = 0;
};

/// Numeric mask order; used for subset-level block ordering.
inline bool mask_value_less(VertexSet a, VertexSet b) { return a.bits() < b.bits(); }

/**
 * Lexicographic order on ascending vertex sequences, e.g.
 * {1} < {1,4} < {2,3}.  Used for facet lists and chain bases.
 */
inline bool lex_less(VertexSet a, VertexSet b) {
  if (a == b) return false;
  std::uint64_t ab = a.bits(), bb = b.bits();
  std::uint64_t diff = ab ^ bb;
  std::uint64_t low = diff & (~diff + 1);
  if (ab & low) return (bb >> std::countr_zero(low)) != 0;  // a owns the first differing vertex
  return (ab >> std::countr_zero(low)) == 0;                // b owns it; a wins only as a prefix
}

}  // namespace hh
