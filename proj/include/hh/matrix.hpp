#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hh/fields.hpp"

namespace hh {

/**
 * Dense row-major matrix over an explicit field object.  Entry access plus
 * the elementary row operations the elimination templates need; everything
 * at the scale of subcomplex boundary matrices, so no blocking tricks.
 */
template <typename F>
class DenseMatrix {
 public:
  using Field = F;
  using Value = typename F::Value;

  DenseMatrix(F field, int rows, int cols)
      : field_(field), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), field.zero()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static DenseMatrix identity(F field, int n) {
    DenseMatrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, field.one());
    return m;
  }

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Value& get(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, Value v) { a_[idx(i, j)] = std::move(v); }

  void row_swap(int r1, int r2) {
    if (r1 == r2) return;
    for (int j = 0; j < cols_; ++j) std::swap(a_[idx(r1, j)], a_[idx(r2, j)]);
  }
  void row_scale(int r, const Value& c) {
    for (int j = 0; j < cols_; ++j) a_[idx(r, j)] = field_.mul(a_[idx(r, j)], c);
  }
  /// row dst += c * row src
  void row_axpy(int dst, int src, const Value& c) {
    if (field_.is_zero(c)) return;
    for (int j = 0; j < cols_; ++j)
      a_[idx(dst, j)] = field_.add(a_[idx(dst, j)], field_.mul(c, a_[idx(src, j)]));
  }

  DenseMatrix transpose() const {
    DenseMatrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.set(j, i, get(i, j));
    return t;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
  }

  Field field_;
  int rows_, cols_;
  std::vector<Value> a_;
};

/**
 * GF(2) matrix with rows packed 64 entries per word.  Row operations are
 * word XORs; this is the fast path for everything over GF(2).
 */
class Gf2Matrix {
 public:
  using Field = Gf2;
  using Value = int;

  Gf2Matrix(Gf2 field, int rows, int cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
        words_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(wpr_), 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    (void)field;
  }

  static Gf2Matrix identity(Gf2 field, int n) {
    Gf2Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  Gf2 field() const { return {}; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Value get(int i, int j) const {
    return static_cast<Value>((word(i, j >> 6) >> (j & 63)) & 1u);
  }
  void set(int i, int j, Value v) {
    std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (v & 1)
      word(i, j >> 6) |= mask;
    else
      word(i, j >> 6) &= ~mask;
  }

  void row_swap(int r1, int r2) {
    if (r1 == r2) return;
    for (int w = 0; w < wpr_; ++w) std::swap(word(r1, w), word(r2, w));
  }
  void row_scale(int, const Value& c) {
    if ((c & 1) == 0) throw std::domain_error("GF(2) row scale by zero");
  }
  void row_axpy(int dst, int src, const Value& c) {
    if ((c & 1) == 0) return;
    for (int w = 0; w < wpr_; ++w) word(dst, w) ^= word(src, w);
  }

  /// Index of the first set entry in row r at column >= from, or -1.
  int row_first_set(int r, int from = 0) const {
    for (int w = from >> 6; w < wpr_; ++w) {
      std::uint64_t bits = word(r, w);
      if (w == (from >> 6)) bits &= ~std::uint64_t{0} << (from & 63);
      if (bits) return w * 64 + std::countr_zero(bits);
    }
    return -1;
  }

  Gf2Matrix transpose() const {
    Gf2Matrix t({}, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = row_first_set(i, 0); j >= 0; j = (j + 1 < cols_) ? row_first_set(i, j + 1) : -1)
        t.set(j, i, 1);
    return t;
  }

  /// Packed row words; row r spans [r*words_per_row(), ...).
  int words_per_row() const { return wpr_; }
  const std::uint64_t* row_words(int r) const {
    return words_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(wpr_);
  }

  friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
  }

 private:
  std::uint64_t& word(int r, int w) {
    return words_[static_cast<std::size_t>(r) * static_cast<std::size_t>(wpr_) +
                  static_cast<std::size_t>(w)];
  }
  const std::uint64_t& word(int r, int w) const {
    return words_[static_cast<std::size_t>(r) * static_cast<std::size_t>(wpr_) +
                  static_cast<std::size_t>(w)];
  }

  int rows_, cols_, wpr_;
  std::vector<std::uint64_t> words_;
};

/// Field object -> matrix type used for it.
template <typename F>
struct MatrixFor {
  using type = DenseMatrix<F>;
};
template <>
struct MatrixFor<Gf2> {
  using type = Gf2Matrix;
};
template <typename F>
using MatrixOf = typename MatrixFor<F>::type;

template <typename Mat>
Mat matrix_product(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  auto field = a.field();
  Mat c(field, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      auto aik = a.get(i, k);
      if (field.is_zero(aik)) continue;
      for (int j = 0; j < b.cols(); ++j) {
        auto bkj = b.get(k, j);
        if (field.is_zero(bkj)) continue;
        c.set(i, j, field.add(c.get(i, j), field.mul(aik, bkj)));
      }
    }
  return c;
}

template <typename Mat>
std::vector<typename Mat::Value> matrix_apply(const Mat& a,
                                              const std::vector<typename Mat::Value>& x) {
  if (static_cast<int>(x.size()) != a.cols())
    throw std::invalid_argument("matrix apply shape mismatch");
  auto field = a.field();
  std::vector<typename Mat::Value> y(static_cast<std::size_t>(a.rows()), field.zero());
  for (int i = 0; i < a.rows(); ++i) {
    auto acc = field.zero();
    for (int j = 0; j < a.cols(); ++j) {
      auto aij = a.get(i, j);
      if (field.is_zero(aij)) continue;
      acc = field.add(acc, field.mul(aij, x[static_cast<std::size_t>(j)]));
    }
    y[static_cast<std::size_t>(i)] = std::move(acc);
  }
  return y;
}

/// Packed overload: y_i = parity(row_i & x).
inline std::vector<int> matrix_apply(const Gf2Matrix& a, const std::vector<int>& x) {
  if (static_cast<int>(x.size()) != a.cols())
    throw std::invalid_argument("matrix apply shape mismatch");
  int wpr = a.words_per_row();
  std::vector<std::uint64_t> packed(static_cast<std::size_t>(wpr), 0);
  for (int j = 0; j < a.cols(); ++j)
    if (x[static_cast<std::size_t>(j)] & 1)
      packed[static_cast<std::size_t>(j >> 6)] |= std::uint64_t{1} << (j & 63);
  std::vector<int> y(static_cast<std::size_t>(a.rows()), 0);
  for (int i = 0; i < a.rows(); ++i) {
    const std::uint64_t* row = a.row_words(i);
    int parity = 0;
    for (int w = 0; w < wpr; ++w) parity ^= std::popcount(row[w] & packed[static_cast<std::size_t>(w)]) & 1;
    y[static_cast<std::size_t>(i)] = parity;
  }
  return y;
}

}  // namespace hh
