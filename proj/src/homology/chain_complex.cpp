#include "bggkit/homology/chain_complex.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace bggkit::homology {

namespace {

std::uint64_t key(const Chain& c) { return (std::uint64_t(c.mask) << 32) | c.value; }

int sign_of(int parity) { return (parity & 1) ? -1 : 1; }

std::vector<int> positions(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

Terms merge(Terms t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Terms out;
  for (auto& [c, v] : t) {
    if (!out.empty() && out.back().first == c) out.back().second += v;
    else out.emplace_back(c, std::move(v));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return sgn(e.second) == 0; }),
            out.end());
  return out;
}

void add_root(RootCoords& acc, const RootCoords& r) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += r[i];
}

}  // namespace

bool operator<(const Chain& a, const Chain& b) {
  if (a.mask != b.mask) {
    const int da = std::popcount(a.mask), db = std::popcount(b.mask);
    if (da != db) return da < db;
    const std::uint32_t diff = a.mask ^ b.mask;
    return (a.mask & diff & (~diff + 1)) != 0;
  }
  return a.value < b.value;
}

int degree(const Chain& c) { return std::popcount(c.mask); }

void add_to(ChainVec& v, const Chain& c, const Rational& x) {
  if (sgn(x) == 0) return;
  auto [it, inserted] = v.try_emplace(c, x);
  if (!inserted) {
    it->second += x;
    if (sgn(it->second) == 0) v.erase(it);
  }
}

ChainComplex::ChainComplex(const GradedLieAlgebra& g) : g_(g) {
  pplus_ = g.positive_indices();
  if (pplus_.size() > 31) throw std::invalid_argument("p_+ too large for chain masks");
  position_.assign(g.dim(), -1);
  for (std::size_t p = 0; p < pplus_.size(); ++p) position_[pplus_[p]] = static_cast<int>(p);
  for (std::size_t i = 0; i < g.dim(); ++i) value_root_.push_back(g.basis(i).root);

  std::map<std::vector<int>, int> piece_ids;
  for (std::size_t p = 0; p < pplus_.size(); ++p) {
    std::vector<int> coeff;
    for (int node : g.crossed()) coeff.push_back(value_root_[pplus_[p]][node - 1]);
    auto [it, inserted] = piece_ids.try_emplace(coeff, static_cast<int>(piece_ids.size()));
    piece_.push_back(it->second);
  }
  pieces_ = static_cast<int>(piece_ids.size());

  const int P = pplus_dim();
  masks_.assign(P + 1, {});
  // Subset sums by increasing mask; each mask extends mask minus its top bit.
  std::vector<RootCoords> sum(std::size_t(1) << P);
  sum[0] = RootCoords(g.roots().rank(), 0);
  masks_[0][sum[0]].push_back(0);
  for (std::uint32_t m = 1; m < (std::uint32_t(1) << P); ++m) {
    const int top = 31 - std::countl_zero(m);
    sum[m] = sum[m & ~(std::uint32_t(1) << top)];
    add_root(sum[m], value_root_[pplus_[top]]);
    masks_[std::popcount(m)][sum[m]].push_back(m);
  }
  for (auto& by_weight : masks_)
    for (auto& [w, list] : by_weight)
      std::sort(list.begin(), list.end(), [](std::uint32_t a, std::uint32_t b) {
        return Chain{a, 0} < Chain{b, 0};
      });
}

std::size_t ChainComplex::chain_dim(int k) const {
  const int P = pplus_dim();
  if (k < 0 || k > P) return 0;
  std::size_t c = 1;
  for (int i = 0; i < k; ++i) c = c * std::size_t(P - i) / std::size_t(i + 1);
  return c * g_.dim();
}

RootCoords ChainComplex::mask_root(std::uint32_t mask) const {
  RootCoords r(g_.roots().rank(), 0);
  for (int p : positions(mask)) add_root(r, value_root_[pplus_[p]]);
  return r;
}

RootCoords ChainComplex::chain_root(const Chain& c) const {
  RootCoords r = mask_root(c.mask);
  add_root(r, value_root_[c.value]);
  return r;
}

Weight ChainComplex::chain_weight(const Chain& c) const {
  return g_.roots().root_to_weight(chain_root(c));
}

int ChainComplex::homogeneity(const Chain& c) const {
  int h = g_.basis(c.value).grade;
  for (int p : positions(c.mask)) h += g_.basis(pplus_[p]).grade;
  return h;
}

Rational ChainComplex::norm2(const Chain& c) const {
  Rational n = g_.basis(c.value).norm2;
  for (int p : positions(c.mask)) n *= g_.basis(pplus_[p]).norm2;
  return n;
}

Terms ChainComplex::codiff(const Chain& c) const {
  Terms out;
  const auto idx = positions(c.mask);
  const int k = static_cast<int>(idx.size());
  for (int t = 0; t < k; ++t) {
    const std::uint32_t rest = c.mask & ~(std::uint32_t(1) << idx[t]);
    const int s = sign_of(t + 1);
    for (const auto& [m, coef] : g_.bracket_basis(pplus_[idx[t]], c.value))
      out.emplace_back(Chain{rest, std::uint32_t(m)}, s * coef);
  }
  for (int t = 0; t < k; ++t) {
    for (int u = t + 1; u < k; ++u) {
      const std::uint32_t rest = c.mask & ~(std::uint32_t(1) << idx[t]) & ~(std::uint32_t(1) << idx[u]);
      const int s = sign_of(t + u + 2);
      for (const auto& [m, coef] : g_.bracket_basis(pplus_[idx[t]], pplus_[idx[u]])) {
        const int p = position_[m];
        if (p < 0) throw std::logic_error("bracket left p_+");
        if (rest & (std::uint32_t(1) << p)) continue;
        const int ins = sign_of(std::popcount(rest & ((std::uint32_t(1) << p) - 1)));
        out.emplace_back(Chain{rest | (std::uint32_t(1) << p), c.value}, s * ins * coef);
      }
    }
  }
  return merge(std::move(out));
}

ChainVec ChainComplex::codiff(const ChainVec& v) const {
  ChainVec out;
  for (const auto& [c, x] : v)
    for (const auto& [d, y] : codiff(c)) add_to(out, d, x * y);
  return out;
}

Terms ChainComplex::act(std::size_t x, const Chain& c) const {
  if (g_.basis(x).grade < 0) throw std::invalid_argument("act: negative-grade element does not preserve p_+");
  Terms out;
  const auto idx = positions(c.mask);
  for (int t = 0; t < static_cast<int>(idx.size()); ++t) {
    const std::uint32_t rest = c.mask & ~(std::uint32_t(1) << idx[t]);
    for (const auto& [m, coef] : g_.bracket_basis(x, pplus_[idx[t]])) {
      const int p = position_[m];
      if (rest & (std::uint32_t(1) << p)) continue;
      const int s = sign_of(t + std::popcount(rest & ((std::uint32_t(1) << p) - 1)));
      out.emplace_back(Chain{rest | (std::uint32_t(1) << p), c.value}, s * coef);
    }
  }
  for (const auto& [m, coef] : g_.bracket_basis(x, c.value))
    out.emplace_back(Chain{c.mask, std::uint32_t(m)}, coef);
  return merge(std::move(out));
}

ChainVec ChainComplex::act(std::size_t x, const ChainVec& v) const {
  ChainVec out;
  for (const auto& [c, a] : v)
    for (const auto& [d, b] : act(x, c)) add_to(out, d, a * b);
  return out;
}

std::vector<Chain> ChainComplex::degree_basis(int k) const {
  std::vector<Chain> out;
  if (k < 0 || k > pplus_dim()) return out;
  std::vector<std::uint32_t> masks;
  for (const auto& [w, list] : masks_[k]) masks.insert(masks.end(), list.begin(), list.end());
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) { return Chain{a, 0} < Chain{b, 0}; });
  for (auto m : masks)
    for (std::uint32_t i = 0; i < g_.dim(); ++i) out.push_back({m, i});
  return out;
}

std::vector<Chain> ChainComplex::block(int k, const RootCoords& weight) const {
  std::vector<Chain> out;
  if (k < 0 || k > pplus_dim()) return out;
  RootCoords target(weight.size());
  for (std::uint32_t i = 0; i < g_.dim(); ++i) {
    for (std::size_t j = 0; j < weight.size(); ++j) target[j] = weight[j] - value_root_[i][j];
    auto it = masks_[k].find(target);
    if (it == masks_[k].end()) continue;
    for (auto m : it->second) out.push_back({m, i});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RootCoords> ChainComplex::weights(int k) const {
  std::set<RootCoords> w;
  if (k < 0 || k > pplus_dim()) return {};
  for (const auto& [mw, list] : masks_[k]) {
    for (std::uint32_t i = 0; i < g_.dim(); ++i) {
      RootCoords r = mw;
      add_root(r, value_root_[i]);
      w.insert(std::move(r));
    }
  }
  return {w.begin(), w.end()};
}

std::vector<int> ChainComplex::signature(const Chain& c) const {
  std::vector<int> sig(pieces_, 0);
  for (int p : positions(c.mask)) ++sig[piece_[p]];
  for (int node : g_.crossed()) sig.push_back(value_root_[c.value][node - 1]);
  return sig;
}

exactla::QMatrix ChainComplex::codiff_matrix(const std::vector<Chain>& src, const std::vector<Chain>& dst) const {
  std::unordered_map<std::uint64_t, std::size_t> row;
  for (std::size_t i = 0; i < dst.size(); ++i) row[key(dst[i])] = i;
  exactla::QMatrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    for (const auto& [c, v] : codiff(src[j])) {
      auto it = row.find(key(c));
      if (it == row.end()) throw std::logic_error("codiff_matrix: image outside target block");
      m(it->second, j) = v;
    }
  }
  return m;
}

exactla::QMatrix ChainComplex::action_matrix(std::size_t x, const std::vector<Chain>& src,
                                             const std::vector<Chain>& dst) const {
  std::unordered_map<std::uint64_t, std::size_t> row;
  for (std::size_t i = 0; i < dst.size(); ++i) row[key(dst[i])] = i;
  exactla::QMatrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    for (const auto& [c, v] : act(x, src[j])) {
      auto it = row.find(key(c));
      if (it == row.end()) throw std::logic_error("action_matrix: image outside target block");
      m(it->second, j) = v;
    }
  }
  return m;
}

exactla::SparseQMatrix ChainComplex::codifferential(int k) const {
  auto src = degree_basis(k);
  auto dst = degree_basis(k - 1);
  std::unordered_map<std::uint64_t, std::size_t> row;
  for (std::size_t i = 0; i < dst.size(); ++i) row[key(dst[i])] = i;
  exactla::SparseQMatrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [c, v] : codiff(src[j])) m.add(row.at(key(c)), j, v);
  m.finalize();
  return m;
}

}  // namespace bggkit::homology
