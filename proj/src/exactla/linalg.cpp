#include "bggkit/exactla/linalg.hpp"

#include <algorithm>
#include <string>

namespace bggkit::exactla {

namespace {

// Rows of m multiplied by the lcm of their denominators.
std::vector<std::vector<Integer>> integer_rows(const QMatrix& m) {
  std::vector<std::vector<Integer>> out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    QVector row = m.row(r);
    Integer den = common_denominator(row);
    std::vector<Integer> ir(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (sgn(row[c]) != 0) ir[c] = row[c].get_num() * (den / row[c].get_den());
    }
    out.push_back(std::move(ir));
  }
  return out;
}

// Reduced row echelon rows (pivot entries equal to 1) from a Bareiss echelon.
std::vector<QVector> reduced_rows(const Echelon& e) {
  const std::size_t r = e.rank();
  std::vector<QVector> rows(r, QVector(e.cols));
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& piv = e.rows[i][e.pivot_columns[i]];
    for (std::size_t c = e.pivot_columns[i]; c < e.cols; ++c) {
      if (e.rows[i][c] != 0) rows[i][c] = make_rational(e.rows[i][c], piv);
    }
  }
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t pc = e.pivot_columns[i];
    for (std::size_t k = 0; k < i; ++k) {
      Rational f = rows[k][pc];
      if (sgn(f) == 0) continue;
      for (std::size_t c = pc; c < e.cols; ++c) {
        if (sgn(rows[i][c]) != 0) rows[k][c] -= f * rows[i][c];
      }
    }
  }
  return rows;
}

}  // namespace

Echelon bareiss_echelon(const QMatrix& m) {
  Echelon e;
  e.cols = m.cols();
  auto a = integer_rows(m);
  const std::size_t nr = a.size();
  const std::size_t nc = m.cols();
  Integer prev = 1;
  Integer t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && a[p][c] == 0) ++p;
    if (p == nr) continue;
    if (p != r) std::swap(a[p], a[r]);
    const Integer& piv = a[r][c];
    for (std::size_t i = r + 1; i < nr; ++i) {
      auto& row = a[i];
      const Integer lead = row[c];
      for (std::size_t j = c + 1; j < nc; ++j) {
        // row[j] = (piv * row[j] - lead * a[r][j]) / prev, exact.
        if (row[j] == 0 && (lead == 0 || a[r][j] == 0)) continue;
        t = piv * row[j];
        if (lead != 0 && a[r][j] != 0) t -= lead * a[r][j];
        if (prev != 1) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        row[j] = t;
      }
      row[c] = 0;
    }
    prev = piv;
    e.pivot_columns.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

std::size_t rank(const QMatrix& m) { return bareiss_echelon(m).rank(); }

std::vector<QVector> kernel_basis(const QMatrix& m) {
  Echelon e = bareiss_echelon(m);
  auto rows = reduced_rows(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (sgn(rows[i][f]) != 0) v[e.pivot_columns[i]] = -rows[i][f];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw ShapeError("solve: right-hand side size mismatch");
  QMatrix aug = QMatrix::hstack(m, QMatrix::from_columns({b}, m.rows()));
  Echelon e = bareiss_echelon(aug);
  if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols()) return std::nullopt;
  auto rows = reduced_rows(e);
  QVector x(m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) x[e.pivot_columns[i]] = rows[i][m.cols()];
  return x;
}

std::vector<QVector> quotient_representatives(const std::vector<QVector>& sub,
                                              std::size_t ambient_dim) {
  for (const auto& v : sub) {
    if (v.size() != ambient_dim) throw ShapeError("quotient_representatives: wrong ambient dimension");
  }
  // Rank of each prefix locates the first dependent vector.
  QMatrix m = QMatrix::from_rows(sub, ambient_dim);
  Echelon e = bareiss_echelon(m);
  if (e.rank() < sub.size()) {
    for (std::size_t k = 1; k <= sub.size(); ++k) {
      std::vector<QVector> prefix(sub.begin(), sub.begin() + static_cast<long>(k));
      if (rank(QMatrix::from_rows(prefix, ambient_dim)) < k) {
        throw LinearDependence(k - 1, "quotient_representatives: vector " + std::to_string(k - 1) +
                                          " depends on its predecessors");
      }
    }
  }
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<QVector> reps;
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    if (is_pivot[j]) continue;
    QVector v(ambient_dim);
    v[j] = 1;
    reps.push_back(std::move(v));
  }
  return reps;
}

std::vector<QVector> column_space_basis(const QMatrix& m) {
  Echelon e = bareiss_echelon(m);
  std::vector<QVector> out;
  out.reserve(e.rank());
  for (auto c : e.pivot_columns) out.push_back(m.column(c));
  return out;
}

std::vector<QVector> intersect_spans(const std::vector<QVector>& a,
                                     const std::vector<QVector>& b,
                                     std::size_t ambient_dim) {
  if (a.empty() || b.empty()) return {};
  // Solve A x = B y; the intersection is spanned by A x over the kernel.
  std::vector<QVector> cols = a;
  for (const auto& v : b) {
    QVector neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    cols.push_back(std::move(neg));
  }
  QMatrix m = QMatrix::from_columns(cols, ambient_dim);
  auto ker = kernel_basis(m);
  std::vector<QVector> span;
  for (const auto& k : ker) {
    QVector v(ambient_dim);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (sgn(k[i]) == 0) continue;
      for (std::size_t r = 0; r < ambient_dim; ++r) v[r] += k[i] * a[i][r];
    }
    span.push_back(std::move(v));
  }
  if (span.empty()) return span;
  return column_space_basis(QMatrix::from_columns(span, ambient_dim));
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse: matrix not square");
  const std::size_t n = m.rows();
  QMatrix aug = QMatrix::hstack(m, QMatrix::identity(n));
  Echelon e = bareiss_echelon(aug);
  if (e.rank() < n || e.pivot_columns[n - 1] != n - 1) return std::nullopt;
  auto rows = reduced_rows(e);
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
  return inv;
}

bool is_positive_semidefinite(const QMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("is_positive_semidefinite: matrix not square");
  if (!(m == m.transpose())) return false;
  QMatrix a = m;
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && sgn(a(i, i)) != 0) {
        p = i;
        break;
      }
    }
    if (p == n) {
      // Remaining diagonal is zero; PSD forces the remaining block to vanish.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && sgn(a(i, j)) != 0) return false;
      return true;
    }
    if (sgn(a(p, p)) < 0) return false;
    done[p] = true;
    const Rational piv = a(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(a(i, p)) == 0) continue;
      Rational f = a(i, p) / piv;
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j] && sgn(a(p, j)) != 0) a(i, j) -= f * a(p, j);
      }
    }
  }
  return true;
}

}  // namespace bggkit::exactla
