#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hh/matrix.hpp"

namespace hh {

struct EchelonInfo {
  int rank = 0;
  std::vector<int> pivot_cols;
};

/**
 * In-place reduced row echelon form.  Pivot search takes the first nonzero
 * row (lowest index), so the result and every downstream basis are
 * deterministic.  When `track` is given the same row operations are applied
 * to it; starting it at the identity yields T with T * input = output.
 */
template <typename Mat>
EchelonInfo rref_in_place(Mat& m, Mat* track = nullptr) {
  auto field = m.field();
  EchelonInfo info;
  int r = 0;
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!field.is_zero(m.get(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.row_swap(piv, r);
    if (track) track->row_swap(piv, r);
    auto v = m.get(r, col);
    if (!(v == field.one())) {
      auto c = field.inv(v);
      m.row_scale(r, c);
      if (track) track->row_scale(r, c);
    }
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      auto c = m.get(i, col);
      if (field.is_zero(c)) continue;
      auto nc = field.neg(c);
      m.row_axpy(i, r, nc);
      if (track) track->row_axpy(i, r, nc);
    }
    info.pivot_cols.push_back(col);
    ++r;
  }
  info.rank = r;
  return info;
}

template <typename Mat>
int rank(Mat m) {
  return rref_in_place(m).rank;
}

/**
 * Basis of the right null space as matrix columns, one per free column of
 * the RREF, in ascending free-column order.
 */
template <typename Mat>
Mat kernel_basis(Mat m) {
  auto field = m.field();
  EchelonInfo info = rref_in_place(m);
  std::vector<int> free_cols;
  {
    std::size_t next_pivot = 0;
    for (int j = 0; j < m.cols(); ++j) {
      if (next_pivot < info.pivot_cols.size() && info.pivot_cols[next_pivot] == j)
        ++next_pivot;
      else
        free_cols.push_back(j);
    }
  }
  Mat k(field, m.cols(), static_cast<int>(free_cols.size()));
  for (int f = 0; f < static_cast<int>(free_cols.size()); ++f) {
    int j = free_cols[static_cast<std::size_t>(f)];
    k.set(j, f, field.one());
    for (int i = 0; i < info.rank; ++i)
      k.set(info.pivot_cols[static_cast<std::size_t>(i)], f, field.neg(m.get(i, j)));
  }
  return k;
}

/**
 * Repeated-solve factorization: T * A = R with R in RREF.  solve(b) returns
 * the particular solution with free variables zero, or nullopt when
 * inconsistent.
 */
template <typename Mat>
class Solver {
 public:
  using Value = typename Mat::Value;

  explicit Solver(Mat a)
      : rref_(std::move(a)), t_(Mat::identity(rref_.field(), rref_.rows())) {
    info_ = rref_in_place(rref_, &t_);
  }

  int rank() const { return info_.rank; }
  int rows() const { return rref_.rows(); }
  int cols() const { return rref_.cols(); }

  std::optional<std::vector<Value>> solve(const std::vector<Value>& b) const {
    if (static_cast<int>(b.size()) != rref_.rows())
      throw std::invalid_argument("solve: rhs length mismatch");
    auto field = rref_.field();
    std::vector<Value> y = matrix_apply(t_, b);
    for (int i = info_.rank; i < rref_.rows(); ++i)
      if (!field.is_zero(y[static_cast<std::size_t>(i)])) return std::nullopt;
    std::vector<Value> x(static_cast<std::size_t>(rref_.cols()), field.zero());
    for (int i = 0; i < info_.rank; ++i)
      x[static_cast<std::size_t>(info_.pivot_cols[static_cast<std::size_t>(i)])] =
          y[static_cast<std::size_t>(i)];
    return x;
  }

 private:
  Mat rref_;
  Mat t_;
  EchelonInfo info_;
};

/// One-shot linear solve; see Solver for the repeated-use form.
template <typename Mat>
std::optional<std::vector<typename Mat::Value>> solve(const Mat& a,
                                                      const std::vector<typename Mat::Value>& b) {
  return Solver<Mat>(a).solve(b);
}

/**
 * Column echelon reduction with operation tracking:
 * reduced = m * ops, ops invertible, nonzero columns of `reduced` leading and
 * forming a basis of the column space.
 */
template <typename Mat>
struct ColumnReduction {
  Mat reduced;
  Mat ops;
  int rank;
};

template <typename Mat>
ColumnReduction<Mat> reduce_columns_tracked(const Mat& m) {
  Mat mt = m.transpose();
  Mat t = Mat::identity(m.field(), m.cols());
  EchelonInfo info = rref_in_place(mt, &t);
  return {mt.transpose(), t.transpose(), info.rank};
}

/// First k columns as a new matrix.
template <typename Mat>
Mat first_columns(const Mat& m, int k) {
  Mat out(m.field(), m.rows(), k);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < k; ++j) out.set(i, j, m.get(i, j));
  return out;
}

/// Horizontal concatenation [a | b].
template <typename Mat>
Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row count mismatch");
  Mat out(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.get(i, j));
    for (int j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b.get(i, j));
  }
  return out;
}

/// Selected columns, in the given order.
template <typename Mat>
Mat columns_of(const Mat& m, const std::vector<int>& idx) {
  Mat out(m.field(), m.rows(), static_cast<int>(idx.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < static_cast<int>(idx.size()); ++j)
      out.set(i, j, m.get(i, idx[static_cast<std::size_t>(j)]));
  return out;
}

/// Column j as a plain vector.
template <typename Mat>
std::vector<typename Mat::Value> column_vector(const Mat& m, int j) {
  std::vector<typename Mat::Value> v(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = m.get(i, j);
  return v;
}

}  // namespace hh
