#include "bggkit/homology/homology.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <sstream>
#include <tuple>

#include "bggkit/exactla/linalg.hpp"
#include "bggkit/parallel.hpp"

namespace bggkit::homology {

using exactla::QMatrix;

namespace {

struct BlockResult {
  std::size_t chains = 0;
  std::size_t rank_codiff = 0;
  std::size_t rank_codiff_next = 0;
  std::size_t harmonic = 0;
  std::vector<HomologyComponent> components;
};

ChainVec to_chain_vec(const std::vector<Chain>& basis, const QVector& coeffs) {
  ChainVec v;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (sgn(coeffs[i]) != 0) v.emplace(basis[i], coeffs[i]);
  return v;
}

bool levi_dominant(const GradedLieAlgebra& g, const Weight& w) {
  return g.roots().is_dominant(w, rootsys::complement(g.roots(), g.crossed()));
}

// Coordinates of chain vectors over the union of their supports.
exactla::SparseQMatrix columns_of(const std::vector<ChainVec>& vs) {
  std::map<Chain, std::size_t> row;
  for (const auto& v : vs)
    for (const auto& [c, x] : v) row.emplace(c, 0);
  std::size_t i = 0;
  for (auto& [c, r] : row) r = i++;
  exactla::SparseQMatrix m(row.size(), vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (const auto& [c, x] : vs[j]) m.add(row.at(c), j, x);
  m.finalize();
  return m;
}

ChainVec combine(const std::vector<ChainVec>& vs, const QVector& coeffs) {
  ChainVec out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    for (const auto& [c, x] : vs[i]) add_to(out, c, coeffs[i] * x);
  }
  return out;
}

// Gram matrix <a_t, b_j> for the trace inner product (rows: b, columns: a).
QMatrix gram(const ChainComplex& cc, const std::vector<ChainVec>& a, const std::vector<ChainVec>& b) {
  std::map<Chain, std::vector<std::pair<std::size_t, Rational>>> index;
  for (std::size_t t = 0; t < a.size(); ++t)
    for (const auto& [c, x] : a[t]) index[c].emplace_back(t, x);
  QMatrix q(b.size(), a.size());
  for (auto& [c, list] : index) {
    const Rational n = cc.norm2(c);
    for (auto& entry : list) entry.second *= n;
  }
  for (std::size_t j = 0; j < b.size(); ++j)
    for (const auto& [c, y] : b[j]) {
      auto it = index.find(c);
      if (it == index.end()) continue;
      for (const auto& [t, x] : it->second) q(j, t) += x * y;
    }
  return q;
}

// Basis of the vectors of weight mu in degree k killed by every Levi raising
// operator, computed separately on each g_0-invariant summand.
std::vector<ChainVec> levi_singular(const ChainComplex& cc, int k, const RootCoords& mu) {
  const auto raising = cc.algebra().levi_raising();
  std::map<std::vector<int>, std::vector<Chain>> groups;
  for (const auto& c : cc.block(k, mu)) groups[cc.signature(c)].push_back(c);
  std::vector<ChainVec> out;
  for (const auto& [sig, src] : groups) {
    // Rows are (operator, image chain) pairs; images stay inside the summand.
    std::map<std::pair<std::size_t, Chain>, std::size_t> row;
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
    for (std::size_t j = 0; j < src.size(); ++j)
      for (std::size_t t = 0; t < raising.size(); ++t)
        for (auto& [c, x] : cc.act(raising[t], src[j])) {
          auto [it, fresh] = row.try_emplace({t, c}, row.size());
          entries.emplace_back(it->second, j, std::move(x));
        }
    exactla::SparseQMatrix m(row.size(), src.size());
    for (auto& [r, j, x] : entries) m.add(r, j, x);
    m.finalize();
    for (const auto& v : exactla::kernel_basis(m)) out.push_back(to_chain_vec(src, v));
  }
  return out;
}

// Dense per-block dimension data used for the Hodge and reconciliation checks.
BlockResult block_stats(const ChainComplex& cc, int k, const RootCoords& mu) {
  BlockResult res;
  const auto src = cc.block(k, mu);
  res.chains = src.size();
  if (src.empty()) return res;
  const auto up = cc.block(k + 1, mu);
  const auto down = cc.block(k - 1, mu);
  QMatrix dk = cc.codiff_matrix(src, down);
  QMatrix dk1 = cc.codiff_matrix(up, src);
  // ker d = ker (D_{k+1}^T G_k) since d = G_{k+1}^{-1} D_{k+1}^T G_k.
  QMatrix adj(up.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Rational n = cc.norm2(src[j]);
    for (std::size_t i = 0; i < up.size(); ++i)
      if (sgn(dk1(j, i)) != 0) adj(i, j) = dk1(j, i) * n;
  }
  res.harmonic = exactla::kernel_basis(QMatrix::vstack(dk, adj)).size();
  res.rank_codiff = exactla::rank(dk);
  res.rank_codiff_next = exactla::rank(dk1);
  return res;
}

// Levi-singular chains of one degree and weight, their images under d* and
// the cycles among them.
struct Level {
  std::vector<ChainVec> singular;
  std::vector<ChainVec> images;
  std::vector<ChainVec> cycles;
};

Level make_level(const ChainComplex& cc, int k, const RootCoords& mu) {
  Level l;
  if (k < 0 || k > cc.max_degree()) return l;
  l.singular = levi_singular(cc, k, mu);
  if (l.singular.empty()) return l;
  for (const auto& v : l.singular) l.images.push_back(cc.codiff(v));
  for (const auto& c : exactla::kernel_basis(columns_of(l.images))) l.cycles.push_back(combine(l.singular, c));
  return l;
}

// Components with highest weight mu in degree k, given the levels k and k+1.
// The multiplicity is dim ker(d* on S_k) - rank d*(S_{k+1}), where the rank
// comes from rank-nullity on S_{k+1}; the harmonic representatives are the
// cycles orthogonal to d*(S_{k+1}).
std::vector<HomologyComponent> level_components(const ChainComplex& cc, int k, const RootCoords& mu,
                                                const Level& here, const Level& up) {
  const auto& g = cc.algebra();
  std::vector<HomologyComponent> comps;
  const std::size_t rank_b = up.singular.size() - up.cycles.size();
  if (rank_b > here.cycles.size()) throw std::logic_error("homology: boundaries exceed cycles");
  const std::size_t mult = here.cycles.size() - rank_b;
  if (mult == 0) return comps;

  std::vector<ChainVec> boundaries;
  for (const auto& b : up.images)
    if (!b.empty()) boundaries.push_back(b);
  std::vector<QVector> harm;
  if (boundaries.empty()) {
    for (std::size_t i = 0; i < here.cycles.size(); ++i) {
      QVector e(here.cycles.size());
      e[i] = 1;
      harm.push_back(std::move(e));
    }
  } else {
    harm = exactla::kernel_basis(gram(cc, here.cycles, boundaries));
  }
  if (harm.size() != mult) {
    std::ostringstream os;
    os << "homology: quotient multiplicity " << mult << " differs from harmonic count " << harm.size()
       << " at degree " << k << " weight " << g.roots().root_to_weight(mu).str();
    throw std::logic_error(os.str());
  }
  const Weight weight = g.roots().root_to_weight(mu);
  const auto levi = rootsys::complement(g.roots(), g.crossed());
  for (const auto& c : harm) {
    HomologyComponent comp;
    comp.degree = k;
    comp.highest_weight = weight;
    ChainVec v = combine(here.cycles, c);
    std::vector<Chain> keys;
    QVector vals;
    for (const auto& [ch, x] : v) {
      keys.push_back(ch);
      vals.push_back(x);
    }
    comp.hw_vector = to_chain_vec(keys, exactla::primitive(vals));
    auto h = homogeneity_of(cc, comp.hw_vector);
    if (!h) throw std::logic_error("homology: highest-weight vector of mixed homogeneity");
    comp.homogeneity = *h;
    comp.dim = rootsys::weyl_dimension(g.roots(), weight, levi);
    for (const auto& [chain, x] : comp.hw_vector)
      if (g.basis(chain.value).grade < 0) comp.torsion = true;
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Components at weight mu for every degree in [lo, hi]; each level is built once.
std::vector<std::vector<HomologyComponent>> weight_components(const ChainComplex& cc, const RootCoords& mu, int lo,
                                                              int hi) {
  std::vector<std::vector<HomologyComponent>> out(hi - lo + 1);
  Level here = make_level(cc, lo, mu);
  for (int k = lo; k <= hi; ++k) {
    Level up = make_level(cc, k + 1, mu);
    if (!here.cycles.empty()) out[k - lo] = level_components(cc, k, mu, here, up);
    here = std::move(up);
  }
  return out;
}

bool use_full(const ChainComplex& cc, int k, const HomologyOptions& opt) {
  return opt.mode == HomologyOptions::Mode::Full ||
         (opt.mode == HomologyOptions::Mode::Auto &&
          cc.chain_dim(k - 1) + cc.chain_dim(k) + cc.chain_dim(k + 1) <= opt.full_limit);
}

// Dense statistics over every weight block of degree k.
void add_block_stats(const ChainComplex& cc, DegreeHomology& out, const HomologyOptions& opt) {
  const auto weights = cc.weights(out.degree);
  std::vector<BlockResult> results(weights.size());
  parallel_for(static_cast<long>(weights.size()), opt.parallel,
               [&](long i) { results[i] = block_stats(cc, out.degree, weights[i]); });
  exactla::Integer weyl_total = 0;
  for (const auto& c : out.components) weyl_total += c.dim;
  for (const auto& r : results) {
    ++out.blocks;
    out.chain_dim += r.chains;
    out.rank_codiff += r.rank_codiff;
    out.rank_codiff_next += r.rank_codiff_next;
    out.harmonic_dim += r.harmonic;
    if (r.harmonic + r.rank_codiff + r.rank_codiff_next != r.chains) out.hodge_additive = false;
  }
  out.component_dims_match = (weyl_total == out.harmonic_dim);
}

void sort_components(DegreeHomology& h) {
  std::sort(h.components.begin(), h.components.end(), [](const auto& a, const auto& b) {
    return std::tie(a.homogeneity, a.highest_weight) < std::tie(b.homogeneity, b.highest_weight);
  });
}

}  // namespace

std::optional<int> homogeneity_of(const ChainComplex& cc, const ChainVec& v) {
  std::optional<int> h;
  for (const auto& [c, x] : v) {
    const int hc = cc.homogeneity(c);
    if (h && *h != hc) return std::nullopt;
    h = hc;
  }
  if (!h) return 0;
  return h;
}

std::vector<DegreeHomology> homology_range(const ChainComplex& cc, int lo, int hi, const HomologyOptions& opt) {
  lo = std::max(lo, 0);
  hi = std::min(hi, cc.max_degree());
  std::vector<DegreeHomology> out;
  if (lo > hi) return out;
  const auto& g = cc.algebra();
  std::set<RootCoords> seen;
  for (int k = lo; k <= hi; ++k)
    for (auto& w : cc.weights(k))
      if (levi_dominant(g, g.roots().root_to_weight(w))) seen.insert(std::move(w));
  const std::vector<RootCoords> weights(seen.begin(), seen.end());
  std::vector<std::vector<std::vector<HomologyComponent>>> results(weights.size());
  parallel_for(static_cast<long>(weights.size()), opt.parallel,
               [&](long i) { results[i] = weight_components(cc, weights[i], lo, hi); });

  for (int k = lo; k <= hi; ++k) {
    DegreeHomology h;
    h.degree = k;
    for (auto& r : results)
      for (auto& c : r[k - lo]) h.components.push_back(std::move(c));
    h.full = use_full(cc, k, opt);
    if (h.full) add_block_stats(cc, h, opt);
    sort_components(h);
    out.push_back(std::move(h));
  }
  return out;
}

DegreeHomology homology_components(const ChainComplex& cc, int k, const HomologyOptions& opt) {
  if (k < 0 || k > cc.max_degree()) {
    DegreeHomology out;
    out.degree = k;
    return out;
  }
  return std::move(homology_range(cc, k, k, opt).front());
}

void generate_component(const ChainComplex& cc, HomologyComponent& comp) {
  const auto& g = cc.algebra();
  const auto lowering = g.levi_lowering();
  // Per weight: independent vectors and their dense echelon for membership tests.
  std::map<RootCoords, std::vector<ChainVec>> spaces;
  auto insert = [&](const ChainVec& v) -> bool {
    if (v.empty()) return false;
    const RootCoords w = cc.chain_root(v.begin()->first);
    auto& list = spaces[w];
    std::vector<Chain> support;
    for (const auto& u : list)
      for (const auto& [c, x] : u) support.push_back(c);
    for (const auto& [c, x] : v) support.push_back(c);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    auto column = [&](const ChainVec& u) {
      QVector col(support.size());
      for (const auto& [c, x] : u) col[std::lower_bound(support.begin(), support.end(), c) - support.begin()] = x;
      return col;
    };
    std::vector<QVector> cols;
    for (const auto& u : list) cols.push_back(column(u));
    cols.push_back(column(v));
    if (exactla::rank(QMatrix::from_columns(cols, support.size())) < cols.size()) return false;
    list.push_back(v);
    return true;
  };
  std::vector<ChainVec> frontier{comp.hw_vector};
  insert(comp.hw_vector);
  while (!frontier.empty()) {
    std::vector<ChainVec> next;
    for (const auto& v : frontier)
      for (std::size_t f : lowering) {
        ChainVec u = cc.act(f, v);
        if (insert(u)) next.push_back(std::move(u));
      }
    frontier = std::move(next);
  }
  comp.harmonic_basis.clear();
  for (auto& [w, list] : spaces)
    for (auto& v : list) comp.harmonic_basis.push_back(std::move(v));
}

std::vector<KostantPrediction> kostant_oracle(const GradedLieAlgebra& g, int k) {
  const auto& rs = g.roots();
  const Weight lambda = rs.root_to_weight(rs.highest_root());
  const auto levi = rootsys::complement(rs, g.crossed());
  const auto w0 = rootsys::longest_element(rs, levi);
  std::vector<KostantPrediction> out;
  for (auto& w : rootsys::minimal_coset_reps(rs, g.crossed(), k)) {
    if (static_cast<int>(w.length()) != k) continue;
    KostantPrediction p;
    p.affine_weight = rootsys::affine_weyl_action(rs, w, lambda);
    p.highest_weight = rootsys::linear_weyl_action(rs, w0, p.affine_weight);
    for (auto& c : p.highest_weight.coords) c = -c;
    const auto h = rs.grade(p.highest_weight, g.crossed());
    if (h.get_den() != 1) throw std::logic_error("kostant_oracle: fractional homogeneity");
    p.homogeneity = static_cast<int>(h.get_num().get_si());
    p.dim = rootsys::weyl_dimension(rs, p.highest_weight, levi);
    p.w = std::move(w);
    out.push_back(std::move(p));
  }
  return out;
}

OracleComparison attach_oracle(DegreeHomology& h, const std::vector<KostantPrediction>& preds) {
  OracleComparison cmp;
  for (const auto& c : h.components) cmp.computed.push_back(c.highest_weight);
  for (const auto& p : preds) cmp.predicted.push_back(p.highest_weight);
  auto a = cmp.computed, b = cmp.predicted;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  cmp.agree = (a == b);
  if (!cmp.agree) {
    std::ostringstream os;
    os << "degree " << h.degree << ": computed {";
    for (const auto& w : a) os << ' ' << w.str();
    os << " } predicted {";
    for (const auto& w : b) os << ' ' << w.str();
    os << " }";
    cmp.diagnostics = os.str();
    return cmp;
  }
  std::vector<bool> used(preds.size(), false);
  for (auto& c : h.components) {
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (!used[i] && preds[i].highest_weight == c.highest_weight) {
        used[i] = true;
        c.oracle_index = static_cast<long>(i);
        break;
      }
    }
  }
  return cmp;
}

nlohmann::json to_json(const HomologyComponent& c) {
  nlohmann::json j;
  j["degree"] = c.degree;
  j["highest_weight"] = c.highest_weight.coords;
  j["dim"] = c.dim.get_str();
  j["homogeneity"] = c.homogeneity;
  j["torsion"] = c.torsion;
  if (c.grid_label) j["grid_label"] = {c.grid_label->first, c.grid_label->second};
  return j;
}

nlohmann::json to_json(const DegreeHomology& h) {
  nlohmann::json j;
  j["degree"] = h.degree;
  j["full"] = h.full;
  j["components"] = nlohmann::json::array();
  for (const auto& c : h.components) j["components"].push_back(to_json(c));
  if (h.full) {
    j["chain_dim"] = h.chain_dim;
    j["harmonic_dim"] = h.harmonic_dim;
    j["hodge_additive"] = h.hodge_additive;
  }
  return j;
}

}  // namespace bggkit::homology
