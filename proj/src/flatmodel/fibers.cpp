#include "bggkit/flatmodel/fibers.hpp"

#include <algorithm>
#include <stdexcept>

#include "bggkit/exactla/linalg.hpp"

namespace bggkit::flatmodel {

using homology::Chain;
using homology::ChainVec;
using rootsys::RootCoords;

namespace {

void add_fiber(FiberVec& v, const FormKey& k, const Rational& x) {
  if (sgn(x) == 0) return;
  auto [it, fresh] = v.try_emplace(k, x);
  if (!fresh) {
    it->second += x;
    if (sgn(it->second) == 0) v.erase(it);
  }
}

// Sign of the permutation sorting `seq`.
int sort_sign(std::vector<int> seq) {
  int s = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) s = -s;
  return s;
}

// Regroups a frame form as monomial -> fiber vector.
std::map<Monomial, FiberVec> by_monomial(const PolyForm& f) {
  std::map<Monomial, FiberVec> out;
  for (const auto& [k, p] : f.coeffs)
    for (const auto& [m, c] : p.terms) out[m][k] = c;
  return out;
}

}  // namespace

FiberAlgebra::FiberAlgebra(const GradedLieAlgebra& g, int max_degree)
    : g_(g), cc_(g), max_degree_(max_degree), neg_(g.negative_indices()) {
  if (neg_.size() > static_cast<std::size_t>(kMaxVars))
    throw std::invalid_argument("FiberAlgebra: g_- has more than 15 dimensions");
  std::vector<int> pplus_pos(g.dim(), -1);
  for (std::size_t p = 0; p < cc_.pplus().size(); ++p) pplus_pos[cc_.pplus()[p]] = static_cast<int>(p);
  from_pplus_.assign(cc_.pplus().size(), -1);
  for (std::size_t a = 0; a < neg_.size(); ++a) {
    const auto& b = g.basis(neg_[a]);
    weight_.push_back(-b.grade);
    norm_.push_back(b.norm2);
    const int p = pplus_pos[b.transpose];
    if (p < 0) throw std::logic_error("FiberAlgebra: transpose of a g_- vector is not in p_+");
    to_pplus_.push_back(p);
    from_pplus_[p] = static_cast<int>(a);
  }
  max_degree_ = std::min(max_degree, vars());
  degrees_.resize(max_degree_ + 2);
  homology::HomologyOptions opt;
  opt.mode = homology::HomologyOptions::Mode::HighestWeightOnly;
  const int top = std::min(max_degree_ + 1, vars());
  auto hs = homology::homology_range(cc_, 0, top, opt);
  for (int k = 0; k <= top; ++k) {
    auto& d = degrees_[k];
    for (auto& comp : hs[k].components) {
      homology::generate_component(cc_, comp);
      HarmonicComponent hc;
      for (auto& v : comp.harmonic_basis) {
        hc.basis.push_back(d.basis.size());
        d.basis.push_back(from_chains(v));
        d.chain_basis.push_back(std::move(v));
      }
      comp.harmonic_basis.clear();
      hc.info = std::move(comp);
      d.components.push_back(std::move(hc));
    }
    for (std::size_t i = 0; i < d.chain_basis.size(); ++i)
      d.blocks[cc_.chain_root(d.chain_basis[i].begin()->first)].members.push_back(i);
    for (auto& [mu, blk] : d.blocks) {
      const std::size_t m = blk.members.size();
      QMatrix gram(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          gram(i, j) = inner(d.chain_basis[blk.members[i]], d.chain_basis[blk.members[j]]);
      auto inv = exactla::inverse(gram);
      if (!inv) throw std::logic_error("FiberAlgebra: dependent harmonic basis");
      blk.gram_inverse = std::move(*inv);
    }
  }
}

int FiberAlgebra::position(std::size_t basis_index) const {
  auto it = std::find(neg_.begin(), neg_.end(), basis_index);
  return it == neg_.end() ? -1 : static_cast<int>(it - neg_.begin());
}

int FiberAlgebra::homogeneity(const FormKey& k) const {
  int h = g_.basis(k.value).grade;
  for (int a : bits(k.mask)) h += weight_[a];
  return h;
}

ChainVec FiberAlgebra::to_chains(const FiberVec& v) const {
  ChainVec out;
  for (const auto& [k, x] : v) {
    std::vector<int> seq;
    Rational scale = x;
    std::uint32_t mask = 0;
    for (int a : bits(k.mask)) {
      seq.push_back(to_pplus_[a]);
      mask |= 1u << to_pplus_[a];
      scale /= norm_[a];
    }
    if (sort_sign(seq) < 0) scale = -scale;
    homology::add_to(out, Chain{mask, k.value}, scale);
  }
  return out;
}

FiberVec FiberAlgebra::from_chains(const ChainVec& v) const {
  FiberVec out;
  for (const auto& [c, x] : v) {
    std::vector<int> seq;
    Rational scale = x;
    std::uint32_t mask = 0;
    for (int p : bits(c.mask)) {
      const int a = from_pplus_[p];
      seq.push_back(a);
      mask |= 1u << a;
      scale *= norm_[a];
    }
    if (sort_sign(seq) < 0) scale = -scale;
    add_fiber(out, FormKey{mask, c.value}, scale);
  }
  return out;
}

FiberVec FiberAlgebra::codiff(const FiberVec& v) const { return from_chains(cc_.codiff(to_chains(v))); }

FiberVec FiberAlgebra::cobound(const FiberVec& v) const {
  FiberVec out;
  const int n = vars();
  for (const auto& [k, x] : v) {
    // sum_b e^b ^ e^A (x) [X_b, v]
    for (int b = 0; b < n; ++b) {
      const int s = wedge_sign(1u << b, k.mask);
      if (s == 0) continue;
      for (const auto& [u, y] : g_.bracket_basis(neg_[b], k.value))
        add_fiber(out, FormKey{k.mask | (1u << b), static_cast<std::uint32_t>(u)}, s * x * y);
    }
    // d(e^A) (x) v with d e^a = -sum_{b<c} c^a_{bc} e^b ^ e^c
    const auto idx = bits(k.mask);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const int aj = idx[j];
      const std::uint32_t rest = k.mask & ~(1u << aj);
      const Rational sj = (j % 2) ? Rational(-1) : Rational(1);
      for (int b = 0; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          const std::uint32_t bc = (1u << b) | (1u << c);
          const int s = wedge_sign(bc, rest);
          if (s == 0) continue;
          for (const auto& [u, y] : g_.bracket_basis(neg_[b], neg_[c]))
            if (position(u) == aj) add_fiber(out, FormKey{bc | rest, k.value}, -sj * s * x * y);
        }
    }
  }
  return out;
}

Rational FiberAlgebra::inner(const ChainVec& a, const ChainVec& b) const {
  Rational s = 0;
  for (const auto& [c, x] : a) {
    auto it = b.find(c);
    if (it != b.end()) s += x * it->second * cc_.norm2(c);
  }
  return s;
}

std::map<RootCoords, ChainVec> FiberAlgebra::split_by_weight(const ChainVec& v) const {
  std::map<RootCoords, ChainVec> out;
  for (const auto& [c, x] : v) out[cc_.chain_root(c)].emplace(c, x);
  return out;
}

const FiberAlgebra::DegreeData& FiberAlgebra::degree_data(int k) const {
  if (k < 0 || k >= static_cast<int>(degrees_.size()))
    throw std::out_of_range("FiberAlgebra: degree outside the prepared range");
  return degrees_[k];
}

QVector FiberAlgebra::harmonic_coords(const FiberVec& v, int k) const {
  const auto& d = degree_data(k);
  QVector out(d.basis.size());
  for (const auto& [mu, part] : split_by_weight(to_chains(v))) {
    auto it = d.blocks.find(mu);
    if (it == d.blocks.end()) continue;
    const auto& blk = it->second;
    QVector rhs(blk.members.size());
    for (std::size_t i = 0; i < blk.members.size(); ++i) rhs[i] = inner(d.chain_basis[blk.members[i]], part);
    const QVector c = blk.gram_inverse * rhs;
    for (std::size_t i = 0; i < blk.members.size(); ++i) out[blk.members[i]] = c[i];
  }
  return out;
}

FiberVec FiberAlgebra::project_harmonic(const FiberVec& v) const {
  if (v.empty()) return {};
  const int k = popcount(v.begin()->first.mask);
  const auto& d = degree_data(k);
  const QVector c = harmonic_coords(v, k);
  FiberVec out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    for (const auto& [key, x] : d.basis[i]) add_fiber(out, key, c[i] * x);
  }
  return out;
}

const FiberAlgebra::Q0Block& FiberAlgebra::q0_block(int k, const RootCoords& mu) const {
  std::lock_guard<std::mutex> lock(q0_mutex_);
  auto& slot = q0_cache_[{k, mu}];
  if (slot) return *slot;
  auto blk = std::make_unique<Q0Block>();
  blk->chains = cc_.block(k, mu);
  for (std::size_t i = 0; i < blk->chains.size(); ++i) blk->index[blk->chains[i]] = i;
  const auto up = cc_.block(k + 1, mu);
  if (!up.empty() && !blk->chains.empty()) {
    const QMatrix dstar = cc_.codiff_matrix(up, blk->chains);
    const auto image = exactla::column_space_basis(dstar);
    if (!image.empty()) {
      std::map<Chain, std::size_t> up_index;
      for (std::size_t i = 0; i < up.size(); ++i) up_index[up[i]] = i;
      // Columns: d* d applied to the image basis.
      QMatrix a(blk->chains.size(), image.size());
      for (std::size_t j = 0; j < image.size(); ++j) {
        ChainVec col;
        for (std::size_t i = 0; i < image[j].size(); ++i)
          if (sgn(image[j][i]) != 0) col.emplace(blk->chains[i], image[j][i]);
        const ChainVec img = cc_.codiff(to_chains(cobound(from_chains(col))));
        for (const auto& [c, x] : img) {
          auto it = blk->index.find(c);
          if (it == blk->index.end()) throw std::logic_error("q0: image left the weight block");
          a(it->second, j) = x;
        }
      }
      const auto ech = exactla::bareiss_echelon(a.transpose());
      if (ech.rank() != image.size()) throw std::logic_error("q0: d* d is not invertible on im d*");
      blk->rows = ech.pivot_columns;
      std::vector<std::size_t> all(image.size());
      for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
      auto inv = exactla::inverse(a.select(blk->rows, all));
      if (!inv) throw std::logic_error("q0: singular pivot block");
      blk->solve = QMatrix::from_columns(image, blk->chains.size()) * (*inv);
    }
  }
  slot = std::move(blk);
  return *slot;
}

FiberVec FiberAlgebra::q0(const FiberVec& e) const {
  if (e.empty()) return {};
  const int k = popcount(e.begin()->first.mask);
  ChainVec out;
  for (const auto& [mu, part] : split_by_weight(to_chains(e))) {
    const auto& blk = q0_block(k, mu);
    if (blk.rows.empty()) throw std::logic_error("q0: argument outside im d*");
    QVector rhs(blk.rows.size());
    for (std::size_t i = 0; i < blk.rows.size(); ++i) {
      auto it = part.find(blk.chains[blk.rows[i]]);
      if (it != part.end()) rhs[i] = it->second;
    }
    const QVector psi = blk.solve * rhs;
    for (std::size_t i = 0; i < psi.size(); ++i) homology::add_to(out, blk.chains[i], psi[i]);
  }
  return from_chains(out);
}

namespace {

template <class Op>
PolyForm monomialwise(const PolyForm& f, int degree, Op op) {
  if (f.rep != Rep::Frame) throw std::invalid_argument("fiber operator: frame representation expected");
  PolyForm out(f.vars, degree, Rep::Frame);
  out.precision = f.precision;
  for (const auto& [m, fv] : by_monomial(f))
    for (const auto& [k, x] : op(fv)) out.add(k.mask, k.value, m, x);
  return out;
}

}  // namespace

PolyForm FiberAlgebra::codiff(const PolyForm& f) const {
  return monomialwise(f, f.degree - 1, [&](const FiberVec& v) { return codiff(v); });
}

PolyForm FiberAlgebra::cobound(const PolyForm& f) const {
  return monomialwise(f, f.degree + 1, [&](const FiberVec& v) { return cobound(v); });
}

PolyForm FiberAlgebra::project_harmonic(const PolyForm& f) const {
  return monomialwise(f, f.degree, [&](const FiberVec& v) { return project_harmonic(v); });
}

PolyForm FiberAlgebra::q0(const PolyForm& f) const {
  return monomialwise(f, f.degree, [&](const FiberVec& v) { return q0(v); });
}

int FiberAlgebra::min_homogeneity(const PolyForm& f) const {
  int h = kExact;
  for (const auto& [k, p] : f.coeffs) h = std::min(h, homogeneity(k));
  return h;
}

}  // namespace bggkit::flatmodel
