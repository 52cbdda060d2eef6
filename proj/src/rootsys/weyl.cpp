#include "bggkit/rootsys/weyl.hpp"

#include <algorithm>
#include <sstream>

namespace bggkit::rootsys {

namespace {

using IntMatrix = std::vector<std::vector<int>>;

IntMatrix simple_reflection(const RootSystem& rs, int i) {
  const int n = rs.rank();
  IntMatrix s(n, std::vector<int>(n, 0));
  for (int r = 0; r < n; ++r) s[r][r] = 1;
  for (int j = 0; j < n; ++j) s[i][j] -= rs.cartan(i, j);
  return s;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RootCoords apply_matrix(const IntMatrix& m, const RootCoords& r) {
  RootCoords out(r.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) out[i] += m[i][j] * r[j];
  return out;
}

bool is_positive(const RootCoords& r) {
  for (int c : r)
    if (c < 0) return false;
  for (int c : r)
    if (c > 0) return true;
  return false;
}

RootCoords column(const IntMatrix& m, int j) {
  RootCoords c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) c[i] = m[i][j];
  return c;
}

Weight reflect(const RootSystem& rs, const Weight& mu, int i) {
  Weight out = mu;
  const std::int64_t k = mu.coords[i];
  if (k == 0) return out;
  for (int j = 0; j < rs.rank(); ++j) out.coords[j] -= k * rs.cartan(j, i);
  return out;
}

}  // namespace

RootCoords WeylElement::apply(const RootCoords& r) const { return apply_matrix(matrix, r); }

RootCoords WeylElement::apply_inverse(const RootCoords& r) const {
  return apply_matrix(inverse_matrix, r);
}

std::string WeylElement::str() const {
  if (word.empty()) return "e";
  std::ostringstream os;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) os << ' ';
    os << 's' << word[k];
  }
  return os.str();
}

WeylElement identity_element(const RootSystem& rs) {
  const int n = rs.rank();
  WeylElement e;
  e.matrix.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) e.matrix[i][i] = 1;
  e.inverse_matrix = e.matrix;
  return e;
}

WeylElement multiply_simple_right(const RootSystem& rs, const WeylElement& w, int node) {
  const auto s = simple_reflection(rs, node - 1);
  WeylElement v;
  v.word = w.word;
  v.word.push_back(node);
  v.matrix = multiply(w.matrix, s);
  v.inverse_matrix = multiply(s, w.inverse_matrix);
  return v;
}

std::vector<RootCoords> inversion_set(const RootSystem& rs, const WeylElement& w) {
  std::vector<RootCoords> out;
  for (const auto& beta : rs.positive_roots()) {
    if (!is_positive(w.apply_inverse(beta))) out.push_back(beta);
  }
  return out;
}

std::vector<WeylElement> minimal_coset_reps(const RootSystem& rs, const NodeSet& crossed,
                                            int up_to_length) {
  const NodeSet levi = complement(rs, crossed);
  std::vector<WeylElement> out;
  std::map<IntMatrix, std::size_t> seen;
  out.push_back(identity_element(rs));
  seen[out.back().matrix] = 0;
  std::size_t level_begin = 0;
  std::size_t level_end = 1;
  int length = 0;
  while (level_begin < level_end && (up_to_length < 0 || length < up_to_length)) {
    for (std::size_t k = level_begin; k < level_end; ++k) {
      for (int i = 1; i <= rs.rank(); ++i) {
        // Length goes up iff w(alpha_i) > 0.
        if (!is_positive(column(out[k].matrix, i - 1))) continue;
        WeylElement v = multiply_simple_right(rs, out[k], i);
        if (seen.count(v.matrix)) continue;
        bool minimal = true;
        for (int j : levi) {
          if (!is_positive(column(v.inverse_matrix, j - 1))) {
            minimal = false;
            break;
          }
        }
        if (!minimal) continue;
        seen[v.matrix] = out.size();
        out.push_back(std::move(v));
      }
    }
    level_begin = level_end;
    level_end = out.size();
    ++length;
  }
  return out;
}

Weight linear_weyl_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda) {
  Weight mu = lambda;
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) mu = reflect(rs, mu, *it - 1);
  return mu;
}

Weight affine_weyl_action(const RootSystem& rs, const WeylElement& w, const Weight& lambda) {
  Weight mu = lambda;
  for (auto& c : mu.coords) c += 1;
  mu = linear_weyl_action(rs, w, mu);
  for (auto& c : mu.coords) c -= 1;
  return mu;
}

WeylElement longest_element(const RootSystem& rs, const NodeSet& nodes) {
  WeylElement w = identity_element(rs);
  bool extended = true;
  while (extended) {
    extended = false;
    for (int i : nodes) {
      if (is_positive(column(w.matrix, i - 1))) {
        w = multiply_simple_right(rs, w, i);
        extended = true;
        break;
      }
    }
  }
  return w;
}

std::vector<std::pair<std::size_t, std::size_t>> bruhat_covers(
    const RootSystem& rs, const std::vector<WeylElement>& reps) {
  std::map<IntMatrix, std::size_t> index;
  for (std::size_t k = 0; k < reps.size(); ++k) index[reps[k].matrix] = k;
  const int n = rs.rank();
  std::vector<IntMatrix> reflections;
  for (const auto& beta : rs.positive_roots()) {
    IntMatrix s(n, std::vector<int>(n, 0));
    const auto bb = rs.inner(beta, beta);
    for (int j = 0; j < n; ++j) {
      RootCoords aj(n, 0);
      aj[j] = 1;
      const exactla::Rational c = 2 * rs.inner(aj, beta) / bb;
      const int ci = static_cast<int>(c.get_num().get_si());
      for (int r = 0; r < n; ++r) s[r][j] = (r == j ? 1 : 0) - ci * beta[r];
    }
    reflections.push_back(std::move(s));
  }
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t u = 0; u < reps.size(); ++u) {
    for (const auto& s : reflections) {
      auto it = index.find(multiply(s, reps[u].matrix));
      if (it == index.end()) continue;
      if (reps[it->second].length() == reps[u].length() + 1) covers.emplace_back(u, it->second);
    }
  }
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  return covers;
}

std::vector<std::size_t> length_distribution(const std::vector<WeylElement>& elems) {
  std::vector<std::size_t> dist;
  for (const auto& w : elems) {
    if (dist.size() <= w.length()) dist.resize(w.length() + 1, 0);
    ++dist[w.length()];
  }
  return dist;
}

}  // namespace bggkit::rootsys
