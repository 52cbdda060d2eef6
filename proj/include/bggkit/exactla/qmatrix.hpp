#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bggkit/exactla/rational.hpp"

namespace bggkit::exactla {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major matrix of exact rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
  static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  QVector row(std::size_t r) const;
  QVector column(std::size_t c) const;

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& rhs) const;
  QVector operator*(const QVector& v) const;
  QMatrix operator+(const QMatrix& rhs) const;
  QMatrix operator-(const QMatrix& rhs) const;
  QMatrix scaled(const Rational& s) const;

  bool is_zero() const;
  bool operator==(const QMatrix& rhs) const;

  // Horizontal / vertical concatenation.
  static QMatrix hstack(const QMatrix& a, const QMatrix& b);
  static QMatrix vstack(const QMatrix& a, const QMatrix& b);

  // Submatrix from explicit row / column index lists.
  QMatrix select(const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Sparse matrix kept as sorted per-column entry lists.  Chain maps are
// assembled in this form and densified per weight block.
class SparseQMatrix {
 public:
  struct Entry {
    std::size_t row;
    Rational value;
  };

  SparseQMatrix() = default;
  SparseQMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  // Accumulates into (r, c); zero sums are dropped by finalize().
  void add(std::size_t r, std::size_t c, const Rational& v);
  void finalize();

  const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }
  std::size_t nonzeros() const;

  Rational at(std::size_t r, std::size_t c) const;
  QVector apply(const QVector& v) const;
  QMatrix to_dense() const;
  QMatrix block(const std::vector<std::size_t>& rows,
                const std::vector<std::size_t>& cols) const;

  SparseQMatrix operator*(const SparseQMatrix& rhs) const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

}  // namespace bggkit::exactla
