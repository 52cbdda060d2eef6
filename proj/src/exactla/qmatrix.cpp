#include "bggkit/exactla/qmatrix.hpp"

#include <algorithm>

namespace bggkit::exactla {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ShapeError("from_rows: ragged row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw ShapeError("from_columns: ragged column");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeError("matrix product: inner dimensions differ");
  QMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        const Rational& b = rhs(k, c);
        if (sgn(b) != 0) out(r, c) += a * b;
      }
    }
  }
  return out;
}

QVector QMatrix::operator*(const QVector& v) const {
  if (cols_ != v.size()) throw ShapeError("matrix-vector product: size mismatch");
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(v[c]) != 0) out[r] += a * v[c];
    }
  }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix sum: shape mismatch");
  QMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix difference: shape mismatch");
  QMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

QMatrix QMatrix::scaled(const Rational& s) const {
  QMatrix out = *this;
  for (auto& q : out.data_) q *= s;
  return out;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool QMatrix::operator==(const QMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

QMatrix QMatrix::hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_) throw ShapeError("hstack: row counts differ");
  QMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
  }
  return out;
}

QMatrix QMatrix::vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.cols_) throw ShapeError("vstack: column counts differ");
  QMatrix out(a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
  return out;
}

QMatrix QMatrix::select(const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) const {
  QMatrix out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = (*this)(rows[r], cols[c]);
  return out;
}

SparseQMatrix::SparseQMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), columns_(cols) {}

void SparseQMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw ShapeError("sparse add: index out of range");
  if (sgn(v) == 0) return;
  columns_[c].push_back({r, v});
}

void SparseQMatrix::finalize() {
  for (auto& col : columns_) {
    std::stable_sort(col.begin(), col.end(),
                     [](const Entry& a, const Entry& b) { return a.row < b.row; });
    std::vector<Entry> merged;
    merged.reserve(col.size());
    for (auto& e : col) {
      if (!merged.empty() && merged.back().row == e.row) {
        merged.back().value += e.value;
      } else {
        merged.push_back(std::move(e));
      }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Entry& e) { return sgn(e.value) == 0; }),
                 merged.end());
    col = std::move(merged);
  }
}

std::size_t SparseQMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

Rational SparseQMatrix::at(std::size_t r, std::size_t c) const {
  for (const auto& e : columns_[c])
    if (e.row == r) return e.value;
  return 0;
}

QVector SparseQMatrix::apply(const QVector& v) const {
  if (v.size() != cols_) throw ShapeError("sparse apply: size mismatch");
  QVector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn(v[c]) == 0) continue;
    for (const auto& e : columns_[c]) out[e.row] += e.value * v[c];
  }
  return out;
}

QMatrix SparseQMatrix::to_dense() const {
  QMatrix m(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : columns_[c]) m(e.row, c) += e.value;
  return m;
}

QMatrix SparseQMatrix::block(const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols) const {
  std::vector<long> row_pos(rows_, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<long>(i);
  QMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& e : columns_[cols[j]]) {
      if (row_pos[e.row] >= 0) m(static_cast<std::size_t>(row_pos[e.row]), j) += e.value;
    }
  }
  return m;
}

SparseQMatrix SparseQMatrix::operator*(const SparseQMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeError("sparse product: inner dimensions differ");
  SparseQMatrix out(rows_, rhs.cols_);
  for (std::size_t c = 0; c < rhs.cols_; ++c) {
    for (const auto& e : rhs.columns_[c]) {
      for (const auto& f : columns_[e.row]) out.add(f.row, c, f.value * e.value);
    }
  }
  out.finalize();
  return out;
}

bool SparseQMatrix::is_zero() const {
  for (const auto& col : columns_)
    for (const auto& e : col)
      if (sgn(e.value) != 0) return false;
  return true;
}

}  // namespace bggkit::exactla
