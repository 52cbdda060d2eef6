#include "bggkit/rootsys/root_system.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bggkit/exactla/linalg.hpp"

namespace bggkit::rootsys {

using exactla::Integer;
using exactla::Rational;

char series_letter(Series s) {
  switch (s) {
    case Series::A: return 'A';
    case Series::B: return 'B';
    case Series::C: return 'C';
    case Series::D: return 'D';
  }
  return '?';
}

Series parse_series(char c) {
  switch (c) {
    case 'A': case 'a': return Series::A;
    case 'B': case 'b': return Series::B;
    case 'C': case 'c': return Series::C;
    case 'D': case 'd': return Series::D;
    default: break;
  }
  throw UnsupportedRootSystem(std::string("unsupported series '") + c + "'");
}

std::string Weight::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ',';
    os << coords[i];
  }
  os << ')';
  return os.str();
}

RootSystem::RootSystem(Series series, int rank) : series_(series), rank_(rank) {
  const int min_rank = series == Series::A ? 1 : (series == Series::D ? 3 : 2);
  if (rank < min_rank) {
    throw UnsupportedRootSystem(std::string(1, series_letter(series)) + std::to_string(rank) +
                                ": rank below the classical range");
  }
  if (rank > 8) {
    throw UnsupportedRootSystem("rank above 8 is not supported");
  }
  build_cartan();
  build_roots();
}

std::string RootSystem::name() const {
  return std::string(1, series_letter(series_)) + std::to_string(rank_);
}

void RootSystem::build_cartan() {
  const int n = rank_;
  cartan_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) cartan_[i][i] = 2;
  for (int i = 0; i + 1 < n; ++i) {
    cartan_[i][i + 1] = -1;
    cartan_[i + 1][i] = -1;
  }
  half_len2_.assign(n, Rational(1));
  switch (series_) {
    case Series::A:
      break;
    case Series::B:
      // alpha_n = eps_n is short.
      cartan_[n - 1][n - 2] = -2;
      half_len2_[n - 1] = Rational(1, 2);
      break;
    case Series::C:
      // alpha_n = 2 eps_n is long.
      cartan_[n - 2][n - 1] = -2;
      for (int i = 0; i + 1 < n; ++i) half_len2_[i] = Rational(1, 2);
      break;
    case Series::D:
      // alpha_n = eps_{n-1} + eps_n attaches to alpha_{n-2}.
      cartan_[n - 2][n - 1] = 0;
      cartan_[n - 1][n - 2] = 0;
      cartan_[n - 3][n - 1] = -1;
      cartan_[n - 1][n - 3] = -1;
      break;
  }
}

void RootSystem::build_roots() {
  const int n = rank_;
  std::set<RootCoords> known;
  std::vector<RootCoords> layer;
  for (int i = 0; i < n; ++i) {
    RootCoords r(n, 0);
    r[i] = 1;
    layer.push_back(r);
    known.insert(r);
  }
  std::vector<RootCoords> all = layer;
  // Height-by-height closure using alpha-strings: beta + alpha_i is a root iff
  // q > 0 where p - q = <beta, alpha_i^vee> and p counts beta - k alpha_i.
  while (!layer.empty()) {
    std::vector<RootCoords> next;
    for (const auto& beta : layer) {
      for (int i = 0; i < n; ++i) {
        int pairing = 0;
        for (int j = 0; j < n; ++j) pairing += beta[j] * cartan_[i][j];
        int p = 0;
        RootCoords down = beta;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        const int q = p - pairing;
        if (q > 0) {
          RootCoords up = beta;
          up[i] += 1;
          if (known.insert(up).second) next.push_back(up);
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const RootCoords& a, const RootCoords& b) {
    const int ha = std::accumulate(a.begin(), a.end(), 0);
    const int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  positive_ = std::move(all);
  for (std::size_t k = 0; k < positive_.size(); ++k) index_[positive_[k]] = static_cast<int>(k);
}

int RootSystem::root_index(const RootCoords& r) const {
  auto it = index_.find(r);
  return it == index_.end() ? -1 : it->second;
}

bool RootSystem::is_root(const RootCoords& r) const {
  if (root_index(r) >= 0) return true;
  RootCoords neg(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
  return root_index(neg) >= 0;
}

Weight RootSystem::root_to_weight(const RootCoords& r) const {
  Weight w;
  w.coords.assign(rank_, 0);
  for (int k = 0; k < rank_; ++k)
    for (int j = 0; j < rank_; ++j) w.coords[k] += static_cast<std::int64_t>(r[j]) * cartan_[k][j];
  return w;
}

std::vector<Rational> RootSystem::weight_to_root(const Weight& w) const {
  exactla::QMatrix a(rank_, rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) a(i, j) = cartan_[i][j];
  exactla::QVector b(rank_);
  for (int i = 0; i < rank_; ++i) b[i] = Rational(static_cast<long>(w.coords[i]));
  return *exactla::solve(a, b);
}

Weight RootSystem::rho() const {
  Weight w;
  w.coords.assign(rank_, 1);
  return w;
}

Weight RootSystem::simple_root_weight(int i) const {
  Weight w;
  w.coords.assign(rank_, 0);
  for (int k = 0; k < rank_; ++k) w.coords[k] = cartan_[k][i];
  return w;
}

Rational RootSystem::inner(const RootCoords& a, const RootCoords& b) const {
  Rational s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) {
      if (b[j] == 0 || cartan_[i][j] == 0) continue;
      s += half_len2_[i] * (a[i] * b[j] * cartan_[i][j]);
    }
  }
  return s;
}

Rational RootSystem::pair(const Weight& mu, const RootCoords& alpha) const {
  Rational s = 0;
  for (int j = 0; j < rank_; ++j) {
    if (alpha[j] != 0 && mu.coords[j] != 0)
      s += half_len2_[j] * Rational(static_cast<long>(alpha[j] * mu.coords[j]));
  }
  return s;
}

Rational RootSystem::coroot_pair(const Weight& mu, const RootCoords& alpha) const {
  return 2 * pair(mu, alpha) / inner(alpha, alpha);
}

int RootSystem::grade(const RootCoords& r, const NodeSet& crossed) const {
  int g = 0;
  for (int node : crossed) g += r[node - 1];
  return g;
}

Rational RootSystem::grade(const Weight& w, const NodeSet& crossed) const {
  auto c = weight_to_root(w);
  Rational g = 0;
  for (int node : crossed) g += c[node - 1];
  return g;
}

std::vector<RootCoords> RootSystem::positive_roots_on(const NodeSet& nodes) const {
  std::vector<RootCoords> out;
  for (const auto& r : positive_) {
    bool inside = true;
    for (int i = 0; i < rank_; ++i) {
      if (r[i] != 0 && !nodes.count(i + 1)) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(r);
  }
  return out;
}

bool RootSystem::is_dominant(const Weight& w, const NodeSet& nodes) const {
  for (int node : nodes)
    if (w.coords[node - 1] < 0) return false;
  return true;
}

RootSystem build_root_system(Series series, int rank) { return RootSystem(series, rank); }

Integer weyl_dimension(const RootSystem& rs, const Weight& lambda, const NodeSet& nodes) {
  if (!rs.is_dominant(lambda, nodes)) {
    throw std::invalid_argument("weyl_dimension: weight " + lambda.str() + " is not dominant");
  }
  // rho of the subsystem pairs to 1 with its simple coroots; only those enter.
  Weight rho_sub;
  rho_sub.coords.assign(rs.rank(), 0);
  for (int node : nodes) rho_sub.coords[node - 1] = 1;
  Weight lam_rho = lambda;
  for (int node : nodes) lam_rho.coords[node - 1] += 1;
  Rational num = 1;
  Rational den = 1;
  for (const auto& alpha : rs.positive_roots_on(nodes)) {
    num *= rs.pair(lam_rho, alpha);
    den *= rs.pair(rho_sub, alpha);
  }
  Rational d = num / den;
  if (d.get_den() != 1) throw std::logic_error("weyl_dimension: non-integral result");
  return d.get_num();
}

Integer weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  return weyl_dimension(rs, lambda, all_nodes(rs));
}

NodeSet all_nodes(const RootSystem& rs) {
  NodeSet s;
  for (int i = 1; i <= rs.rank(); ++i) s.insert(i);
  return s;
}

NodeSet complement(const RootSystem& rs, const NodeSet& nodes) {
  NodeSet s;
  for (int i = 1; i <= rs.rank(); ++i)
    if (!nodes.count(i)) s.insert(i);
  return s;
}

}  // namespace bggkit::rootsys
