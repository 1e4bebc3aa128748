#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kqj2/errors.hpp"
#include "kqj2/field.hpp"

namespace kqj2 {

/// Dense row-major matrix over an exact field. 0 x n and n x 0 shapes are
/// legal and behave as identities for the block constructions.
template <class Field>
class Matrix {
 public:
  using field_type = Field;
  using value_type = typename Field::value_type;

  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<value_type> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DomainError(ErrorCode::Mismatch, "matrix data length does not match its shape");
    }
  }

  /// Integer literal convenience, e.g. `Matrix<F>::from_rows(f, {{1, 2}, {3, 4}})`.
  static Matrix from_rows(Field field, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix out(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DomainError(ErrorCode::Mismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) out(i, j++) = field.from_int(v);
      ++i;
    }
    return out;
  }

  static Matrix identity(Field field, std::size_t n) {
    Matrix out(field, n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = out.field_.one();
    return out;
  }

  static Matrix zero(Field field, std::size_t rows, std::size_t cols) { return Matrix(std::move(field), rows, cols); }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<value_type>& data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const value_type& v) { return field_.is_zero(v); });
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto& v = (*this)(i, j);
        if (i == j ? !field_.is_one(v) : !field_.is_zero(v)) return false;
      }
    }
    return true;
  }

  Matrix transpose() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  Matrix block(std::size_t row0, std::size_t nrows, std::size_t col0, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) {
      throw DomainError(ErrorCode::Mismatch, "submatrix out of range");
    }
    Matrix out(field_, nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
    }
    return out;
  }

  void set_block(std::size_t row0, std::size_t col0, const Matrix& src) {
    if (row0 + src.rows_ > rows_ || col0 + src.cols_ > cols_) {
      throw DomainError(ErrorCode::Mismatch, "block placement out of range");
    }
    for (std::size_t i = 0; i < src.rows_; ++i) {
      for (std::size_t j = 0; j < src.cols_; ++j) (*this)(row0 + i, col0 + j) = src(i, j);
    }
  }

  Matrix column(std::size_t j) const { return block(0, rows_, j, 1); }

  bool operator==(const Matrix& other) const {
    return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

namespace detail {

template <class Field>
void require_same_field(const Matrix<Field>& a, const Matrix<Field>& b) {
  if (!(a.field() == b.field())) throw DomainError(ErrorCode::Mismatch, "matrices over different fields");
}

}  // namespace detail

template <class Field>
Matrix<Field> operator+(const Matrix<Field>& a, const Matrix<Field>& b) {
  detail::require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError(ErrorCode::Mismatch, "shape mismatch in +");
  Matrix<Field> out(a.field(), a.rows(), a.cols());
  const auto& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
  }
  return out;
}

template <class Field>
Matrix<Field> operator-(const Matrix<Field>& a) {
  Matrix<Field> out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().neg(a(i, j));
  }
  return out;
}

template <class Field>
Matrix<Field> operator-(const Matrix<Field>& a, const Matrix<Field>& b) {
  detail::require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError(ErrorCode::Mismatch, "shape mismatch in -");
  Matrix<Field> out(a.field(), a.rows(), a.cols());
  const auto& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.sub(a(i, j), b(i, j));
  }
  return out;
}

template <class Field>
Matrix<Field> operator*(const Matrix<Field>& a, const Matrix<Field>& b) {
  detail::require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw DomainError(ErrorCode::Mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                               std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                                               std::to_string(b.cols()));
  }
  const auto& f = a.field();
  Matrix<Field> out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (f.is_zero(b(k, j))) continue;
        out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
      }
    }
  }
  return out;
}

template <class Field>
Matrix<Field> scale(const typename Field::value_type& c, const Matrix<Field>& a) {
  Matrix<Field> out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().mul(c, a(i, j));
  }
  return out;
}

template <class Field>
std::ostream& operator<<(std::ostream& os, const Matrix<Field>& a) {
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ',';
      os << a.field().format(a(i, j));
    }
    os << ']';
  }
  return os << ']';
}

/// Assembles a block matrix. Row heights are taken from the first column and
/// column widths from the first row; every block must agree.
template <class Field>
Matrix<Field> block_matrix(const Field& field, const std::vector<std::vector<Matrix<Field>>>& blocks) {
  if (blocks.empty()) return Matrix<Field>(field, 0, 0);
  std::vector<std::size_t> heights, widths;
  for (const auto& row : blocks) heights.push_back(row.at(0).rows());
  for (const auto& b : blocks.front()) widths.push_back(b.cols());
  std::size_t total_r = 0, total_c = 0;
  for (auto h : heights) total_r += h;
  for (auto w : widths) total_c += w;
  Matrix<Field> out(field, total_r, total_c);
  std::size_t r0 = 0;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    if (blocks[bi].size() != widths.size()) throw DomainError(ErrorCode::Mismatch, "ragged block matrix");
    std::size_t c0 = 0;
    for (std::size_t bj = 0; bj < widths.size(); ++bj) {
      const auto& b = blocks[bi][bj];
      if (b.rows() != heights[bi] || b.cols() != widths[bj]) {
        throw DomainError(ErrorCode::Mismatch, "inconsistent block sizes");
      }
      out.set_block(r0, c0, b);
      c0 += widths[bj];
    }
    r0 += heights[bi];
  }
  return out;
}

template <class Field>
Matrix<Field> direct_sum(const Matrix<Field>& a, const Matrix<Field>& b) {
  detail::require_same_field(a, b);
  Matrix<Field> out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

template <class Field>
Matrix<Field> hstack(const Matrix<Field>& a, const Matrix<Field>& b) {
  detail::require_same_field(a, b);
  if (a.rows() != b.rows()) throw DomainError(ErrorCode::Mismatch, "hstack row mismatch");
  Matrix<Field> out(a.field(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

template <class Field>
Matrix<Field> vstack(const Matrix<Field>& a, const Matrix<Field>& b) {
  detail::require_same_field(a, b);
  if (a.cols() != b.cols()) throw DomainError(ErrorCode::Mismatch, "vstack column mismatch");
  Matrix<Field> out(a.field(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

namespace detail {

/// In-place Gauss-Jordan elimination. The pivot in each column is the first
/// nonzero entry at or below the current row. Row operations are mirrored on
/// `companion` when given. Returns the pivot columns.
template <class Field>
std::vector<std::size_t> gauss_jordan(Matrix<Field>& a, Matrix<Field>* companion, bool back_substitute = true) {
  const Field f = a.field();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;

  auto swap_rows = [](Matrix<Field>& m, std::size_t r1, std::size_t r2) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r1, j), m(r2, j));
  };
  auto scale_row = [&](Matrix<Field>& m, std::size_t r, const typename Field::value_type& c) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!f.is_zero(m(r, j))) m(r, j) = f.mul(c, m(r, j));
    }
  };
  // row[target] -= c * row[source]
  auto eliminate = [&](Matrix<Field>& m, std::size_t target, std::size_t source, const typename Field::value_type& c,
                       std::size_t from_col) {
    for (std::size_t j = from_col; j < m.cols(); ++j) {
      if (f.is_zero(m(source, j))) continue;
      m(target, j) = f.sub(m(target, j), f.mul(c, m(source, j)));
    }
  };

  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && f.is_zero(a(p, c))) ++p;
    if (p == rows) continue;
    if (p != rank) {
      swap_rows(a, p, rank);
      if (companion) swap_rows(*companion, p, rank);
    }
    auto inv = f.inv(a(rank, c));
    if (!f.is_one(inv)) {
      scale_row(a, rank, inv);
      if (companion) scale_row(*companion, rank, inv);
    }
    for (std::size_t r = back_substitute ? 0 : rank + 1; r < rows; ++r) {
      if (r == rank || f.is_zero(a(r, c))) continue;
      auto factor = a(r, c);
      eliminate(a, r, rank, factor, c);
      if (companion) eliminate(*companion, r, rank, factor, 0);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace detail

template <class Field>
struct RrefResult {
  Matrix<Field> reduced;
  std::vector<std::size_t> pivots;
  Matrix<Field> transform;  ///< invertible, with reduced == transform * input

  std::size_t rank() const { return pivots.size(); }
};

template <class Field>
RrefResult<Field> rref(const Matrix<Field>& a) {
  Matrix<Field> r = a;
  Matrix<Field> t = Matrix<Field>::identity(a.field(), a.rows());
  auto pivots = detail::gauss_jordan(r, &t);
  return {std::move(r), std::move(pivots), std::move(t)};
}

template <class Field>
std::size_t rank(const Matrix<Field>& a) {
  Matrix<Field> r = a;
  return detail::gauss_jordan<Field>(r, nullptr, false).size();
}

/// Columns form a basis of {x : a x = 0}, one per non-pivot column, with a 1
/// in that free coordinate.
template <class Field>
Matrix<Field> kernel_basis(const Matrix<Field>& a) {
  const auto& f = a.field();
  Matrix<Field> r = a;
  auto pivots = detail::gauss_jordan<Field>(r, nullptr);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix<Field> out(f, a.cols(), a.cols() - pivots.size());
  std::size_t k = 0;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    out(free, k) = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) out(pivots[i], k) = f.neg(r(i, free));
    ++k;
  }
  return out;
}

/// The pivot columns of `a` itself, a basis of its column space.
template <class Field>
Matrix<Field> image_basis(const Matrix<Field>& a) {
  Matrix<Field> r = a;
  auto pivots = detail::gauss_jordan<Field>(r, nullptr, false);
  Matrix<Field> out(a.field(), a.rows(), pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, k) = a(i, pivots[k]);
  }
  return out;
}

/// Some x with a x = b, or nullopt when the system is inconsistent.
template <class Field>
std::optional<std::vector<typename Field::value_type>> solve(const Matrix<Field>& a,
                                                             const std::vector<typename Field::value_type>& b) {
  if (b.size() != a.rows()) throw DomainError(ErrorCode::Mismatch, "right-hand side length mismatch");
  const auto& f = a.field();
  Matrix<Field> aug(f, a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  auto pivots = detail::gauss_jordan<Field>(aug, nullptr);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<typename Field::value_type> x(a.cols(), f.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

template <class Field>
Matrix<Field> inverse(const Matrix<Field>& a) {
  if (a.rows() != a.cols()) throw DomainError(ErrorCode::Mismatch, "inverse of a non-square matrix");
  Matrix<Field> r = a;
  Matrix<Field> t = Matrix<Field>::identity(a.field(), a.rows());
  auto pivots = detail::gauss_jordan(r, &t);
  if (pivots.size() != a.rows()) throw DomainError(ErrorCode::Singular, "matrix is singular");
  return t;
}

template <class Field>
bool is_invertible(const Matrix<Field>& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

}  // namespace kqj2
