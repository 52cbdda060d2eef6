#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>

#include "bggkit/exactla/linalg.hpp"

namespace bggkit::exactla {

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// row -= factor * pivot, both sorted by column.
SparseRow axpy(const SparseRow& row, const Rational& factor, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -factor * pivot[j].second);
      ++j;
    } else {
      Rational v = row[i].second - factor * pivot[j].second;
      if (sgn(v) != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

struct SparseEchelon {
  std::vector<SparseRow> rows;  // pivot rows, leading entry 1
  std::vector<std::size_t> pivot_columns;
};

SparseEchelon eliminate(const SparseQMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c))
      if (sgn(e.value) != 0) rows[e.row].emplace_back(c, e.value);
  std::vector<std::vector<SparseRow>> bucket(m.cols());
  for (auto& r : rows)
    if (!r.empty()) bucket[r.front().first].push_back(std::move(r));
  SparseEchelon e;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto& b = bucket[c];
    if (b.empty()) continue;
    auto best = std::min_element(b.begin(), b.end(),
                                 [](const SparseRow& x, const SparseRow& y) { return x.size() < y.size(); });
    SparseRow pivot = std::move(*best);
    b.erase(best);
    const Rational inv = 1 / pivot.front().second;
    for (auto& [col, v] : pivot) v *= inv;
    for (auto& r : b) {
      const Rational factor = r.front().second;
      SparseRow next = axpy(r, factor, pivot);
      if (!next.empty()) bucket[next.front().first].push_back(std::move(next));
    }
    b.clear();
    b.shrink_to_fit();
    e.pivot_columns.push_back(c);
    e.rows.push_back(std::move(pivot));
  }
  return e;
}

std::vector<QVector> exact_kernel(const SparseQMatrix& m) {
  const SparseEchelon e = eliminate(m);
  std::vector<long> pivot_row(m.cols(), -1);
  for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) pivot_row[e.pivot_columns[i]] = static_cast<long>(i);
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (pivot_row[f] >= 0) continue;
    QVector v(m.cols());
    v[f] = 1;
    // Pivot rows only involve columns at or after their pivot, so pivots
    // beyond f stay zero.
    const std::size_t below = std::lower_bound(e.pivot_columns.begin(), e.pivot_columns.end(), f) -
                              e.pivot_columns.begin();
    for (std::size_t i = below; i-- > 0;) {
      const auto& row = e.rows[i];
      Rational s = 0;
      for (std::size_t t = 1; t < row.size(); ++t)
        if (sgn(v[row[t].first]) != 0) s += row[t].second * v[row[t].first];
      v[e.pivot_columns[i]] = -s;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kPrime = (std::uint64_t(1) << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(z & kPrime) + static_cast<std::uint64_t>(z >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t inv_mod(std::uint64_t a) {
  std::uint64_t result = 1, base = a, e = kPrime - 2;
  while (e) {
    if (e & 1) result = mul_mod(result, base);
    base = mul_mod(base, base);
    e >>= 1;
  }
  return result;
}

std::optional<std::uint64_t> to_mod(const Rational& x) {
  const std::uint64_t den = mpz_fdiv_ui(x.get_den_mpz_t(), kPrime);
  if (den == 0) return std::nullopt;
  const std::uint64_t num = mpz_fdiv_ui(x.get_num_mpz_t(), kPrime);
  return den == 1 ? num : mul_mod(num, inv_mod(den));
}

// r/s with |r|, s below 2^30 and r = a s mod p, if one exists.
std::optional<Rational> reconstruct(std::uint64_t a) {
  if (a == 0) return Rational(0);
  const __int128 bound = __int128(1) << 30;
  __int128 r0 = kPrime, r1 = a, s0 = 0, s1 = 1;
  while (r1 >= bound) {
    const __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || s1 >= bound || -s1 >= bound) return std::nullopt;
  if (s1 < 0) {
    s1 = -s1;
    r1 = -r1;
  }
  return make_rational(Integer(static_cast<long>(r1)), Integer(static_cast<long>(s1)));
}

using ModRow = std::vector<std::pair<std::size_t, std::uint64_t>>;

ModRow axpy_mod(const ModRow& row, std::uint64_t factor, const ModRow& pivot) {
  ModRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, sub_mod(0, mul_mod(factor, pivot[j].second)));
      ++j;
    } else {
      const std::uint64_t v = sub_mod(row[i].second, mul_mod(factor, pivot[j].second));
      if (v != 0) out.emplace_back(row[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// Kernel mod p lifted to Q and verified exactly; nullopt if any step fails.
// The lifted vectors are independent (unit at their free column) and there
// are n - rank_p >= dim ker_Q of them, so passing the check proves they span
// the rational kernel.
std::optional<std::vector<QVector>> modular_kernel(const SparseQMatrix& m) {
  std::vector<ModRow> rows(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) {
      auto v = to_mod(e.value);
      if (!v) return std::nullopt;
      if (*v != 0) rows[e.row].emplace_back(c, *v);
    }
  std::vector<std::vector<ModRow>> bucket(m.cols());
  for (auto& r : rows)
    if (!r.empty()) bucket[r.front().first].push_back(std::move(r));
  std::vector<ModRow> pivots;
  std::vector<std::size_t> pivot_columns;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto& b = bucket[c];
    if (b.empty()) continue;
    auto best = std::min_element(b.begin(), b.end(),
                                 [](const ModRow& x, const ModRow& y) { return x.size() < y.size(); });
    ModRow pivot = std::move(*best);
    b.erase(best);
    const std::uint64_t inv = inv_mod(pivot.front().second);
    for (auto& [col, v] : pivot) v = mul_mod(v, inv);
    for (auto& r : b) {
      ModRow next = axpy_mod(r, r.front().second, pivot);
      if (!next.empty()) bucket[next.front().first].push_back(std::move(next));
    }
    b.clear();
    b.shrink_to_fit();
    pivot_columns.push_back(c);
    pivots.push_back(std::move(pivot));
  }

  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivot_columns) is_pivot[c] = true;
  std::vector<QVector> basis;
  std::vector<std::uint64_t> v(m.cols());
  std::vector<Rational> image(m.rows());
  std::vector<std::size_t> touched;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[f] = 1;
    const std::size_t below =
        std::lower_bound(pivot_columns.begin(), pivot_columns.end(), f) - pivot_columns.begin();
    for (std::size_t i = below; i-- > 0;) {
      const auto& row = pivots[i];
      std::uint64_t s = 0;
      for (std::size_t t = 1; t < row.size(); ++t)
        if (v[row[t].first] != 0) s = (s + mul_mod(row[t].second, v[row[t].first])) % kPrime;
      v[pivot_columns[i]] = sub_mod(0, s);
    }
    QVector q(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (v[j] == 0) continue;
      auto x = reconstruct(v[j]);
      if (!x) return std::nullopt;
      q[j] = std::move(*x);
    }
    touched.clear();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(q[j]) == 0) continue;
      for (const auto& e : m.column(j)) {
        if (sgn(image[e.row]) == 0) touched.push_back(e.row);
        image[e.row] += e.value * q[j];
      }
    }
    bool zero = true;
    for (std::size_t r : touched) {
      if (sgn(image[r]) != 0) zero = false;
      image[r] = 0;
    }
    if (!zero) return std::nullopt;
    basis.push_back(std::move(q));
  }
  return basis;
}

}  // namespace

std::vector<QVector> kernel_basis(const SparseQMatrix& m) {
  if (auto k = modular_kernel(m)) return std::move(*k);
  return exact_kernel(m);
}

std::vector<QVector> kernel_basis_exact(const SparseQMatrix& m) { return exact_kernel(m); }

std::size_t rank(const SparseQMatrix& m) { return m.cols() - kernel_basis(m).size(); }

}  // namespace bggkit::exactla
