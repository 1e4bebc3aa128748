#pragma once

#include <cstddef>
#include <vector>

#include "kqj2/matrix.hpp"

namespace kqj2 {

/// Builds the coefficient matrix of a linear map whose unknowns and values are
/// tuples of matrices. Every term has the shape `L * X * R` for an unknown
/// block X, with L or R omitted meaning the identity.
template <class Field>
class LinearSystem {
 public:
  using Mat = Matrix<Field>;

  struct Block {
    std::size_t offset;
    std::size_t rows;
    std::size_t cols;
  };

  explicit LinearSystem(Field field) : field_(std::move(field)) {}

  std::size_t add_unknown(std::size_t rows, std::size_t cols) {
    unknowns_.push_back({unknown_count_, rows, cols});
    unknown_count_ += rows * cols;
    return unknowns_.size() - 1;
  }

  std::size_t add_equation(std::size_t rows, std::size_t cols) {
    equations_.push_back({equation_count_, rows, cols});
    equation_count_ += rows * cols;
    return equations_.size() - 1;
  }

  std::size_t unknown_count() const { return unknown_count_; }
  std::size_t equation_count() const { return equation_count_; }

  /// equation += sign * left * unknown * right
  void add_term(std::size_t equation, std::size_t unknown, const Mat* left, const Mat* right, bool negate = false) {
    const Block& e = equations_.at(equation);
    const Block& u = unknowns_.at(unknown);
    std::size_t lr = left ? left->rows() : u.rows, lc = left ? left->cols() : u.rows;
    std::size_t rr = right ? right->rows() : u.cols, rc = right ? right->cols() : u.cols;
    if (lr != e.rows || lc != u.rows || rr != u.cols || rc != e.cols) {
      throw DomainError(ErrorCode::Mismatch, "linear term does not fit its equation block");
    }
    const auto one = field_.one();
    for (std::size_t r = 0; r < e.rows; ++r) {
      for (std::size_t k = 0; k < u.rows; ++k) {
        const auto& lv = left ? (*left)(r, k) : (r == k ? one : field_.zero());
        if (field_.is_zero(lv)) continue;
        for (std::size_t c = 0; c < e.cols; ++c) {
          for (std::size_t l = 0; l < u.cols; ++l) {
            const auto& rv = right ? (*right)(l, c) : (l == c ? one : field_.zero());
            if (field_.is_zero(rv)) continue;
            auto coeff = field_.mul(lv, rv);
            if (negate) coeff = field_.neg(coeff);
            triplets_.push_back({e.offset + r * e.cols + c, u.offset + k * u.cols + l, std::move(coeff)});
          }
        }
      }
    }
  }

  void add_left(std::size_t eq, std::size_t unk, const Mat& left, bool negate = false) {
    add_term(eq, unk, &left, nullptr, negate);
  }
  void add_right(std::size_t eq, std::size_t unk, const Mat& right, bool negate = false) {
    add_term(eq, unk, nullptr, &right, negate);
  }
  void add_identity(std::size_t eq, std::size_t unk, bool negate = false) {
    add_term(eq, unk, nullptr, nullptr, negate);
  }

  Mat matrix() const {
    Mat out(field_, equation_count_, unknown_count_);
    for (const auto& t : triplets_) out(t.row, t.col) = field_.add(out(t.row, t.col), t.value);
    return out;
  }

  /// Splits a solution vector (or a column of a kernel basis) into blocks.
  std::vector<Mat> unpack(const Mat& vectors, std::size_t column) const {
    std::vector<Mat> out;
    for (const auto& u : unknowns_) {
      Mat m(field_, u.rows, u.cols);
      for (std::size_t i = 0; i < u.rows; ++i) {
        for (std::size_t j = 0; j < u.cols; ++j) m(i, j) = vectors(u.offset + i * u.cols + j, column);
      }
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    typename Field::value_type value;
  };

  Field field_;
  std::vector<Block> unknowns_;
  std::vector<Block> equations_;
  std::vector<Triplet> triplets_;
  std::size_t unknown_count_ = 0;
  std::size_t equation_count_ = 0;
};

}  // namespace kqj2
