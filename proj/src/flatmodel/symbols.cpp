#include "bggkit/flatmodel/symbols.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "bggkit/exactla/linalg.hpp"
#include "bggkit/parallel.hpp"

namespace bggkit::flatmodel {

namespace {

std::vector<Monomial> monomials_of_degree(int n, int r) {
  std::vector<Monomial> out;
  Monomial m;
  auto rec = [&](auto& self, int var, int left) -> void {
    if (var == n - 1) {
      m.e[var] = static_cast<std::uint8_t>(left);
      out.push_back(m);
      m.e[var] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      m.e[var] = static_cast<std::uint8_t>(e);
      self(self, var + 1, left - e);
    }
    m.e[var] = 0;
  };
  if (n > 0) rec(rec, 0, r);
  return out;
}

Rational factorial_of(const Monomial& m) {
  Rational f = 1;
  for (int i = 0; i < kMaxVars; ++i)
    for (int j = 2; j <= m.e[i]; ++j) f *= j;
  return f;
}

// Image of the section p * v_i at the origin, in coordinates of the target component.
QVector probe(const CartanModel& model, int k, const HarmonicComponent& from, std::size_t i,
              const HarmonicComponent& to, const Poly& p) {
  const auto& fa = model.fibers();
  PolyForm alpha(fa.vars(), k, Rep::Frame);
  for (const auto& [key, x] : fa.harmonic_basis(k)[from.basis[i]]) alpha.add(key, p * x);
  const PolyForm image = model.bgg_operator(alpha).at_origin();
  FiberVec v;
  for (const auto& [key, q] : image.coeffs) v[key] = q.constant_term();
  const QVector all = fa.harmonic_coords(v, k + 1);
  QVector out(to.basis.size());
  for (std::size_t j = 0; j < to.basis.size(); ++j) out[j] = all[to.basis[j]];
  return out;
}

Rational power_of(const Covector& xi, const Monomial& m) {
  Rational r = 1;
  for (std::size_t a = 0; a < xi.size(); ++a)
    for (int j = 0; j < m.e[a]; ++j) r *= xi[a];
  return r;
}

}  // namespace

SymbolBlock symbol_block(const CartanModel& flat, int k, std::size_t from, std::size_t to, int order) {
  const auto& fa = flat.fibers();
  const auto& src = fa.components(k).at(from);
  const auto& dst = fa.components(k + 1).at(to);
  SymbolBlock b{k, order, from, to, monomials_of_degree(fa.vars(), order), {}, false, false};
  const std::size_t nm = b.monomials.size(), dim = src.basis.size();
  b.tables.assign(nm, QMatrix(dst.basis.size(), dim));
  parallel_for(static_cast<long>(nm * dim), true, [&](long job) {
    const std::size_t m = job / dim, i = job % dim;
    const Poly p = Poly::monomial(b.monomials[m], Rational(1) / factorial_of(b.monomials[m]));
    const QVector col = probe(flat, k, src, i, dst, p);
    for (std::size_t r = 0; r < col.size(); ++r) b.tables[m](r, i) = col[r];
  });
  if (order > 0) {
    const auto lower = monomials_of_degree(fa.vars(), order - 1);
    std::vector<char> hit(lower.size() * dim, 0);
    parallel_for(static_cast<long>(hit.size()), true, [&](long job) {
      const QVector col = probe(flat, k, src, job % dim, dst, Poly::monomial(lower[job / dim]));
      for (const auto& x : col)
        if (sgn(x) != 0) hit[job] = 1;
    });
    for (std::size_t job = 0; job < hit.size(); ++job) {
      if (!hit[job]) continue;
      int weighted = 0;
      for (int a = 0; a < fa.vars(); ++a) weighted += lower[job / dim].e[a] * fa.var_weight(a);
      (weighted < order ? b.lower_order_leading : b.weighted_lower_terms) = true;
    }
  }
  return b;
}

QMatrix evaluate(const SymbolBlock& b, const Covector& xi) {
  QMatrix out(b.tables.empty() ? 0 : b.tables[0].rows(), b.tables.empty() ? 0 : b.tables[0].cols());
  for (std::size_t m = 0; m < b.monomials.size(); ++m) {
    const Rational c = power_of(xi, b.monomials[m]);
    if (sgn(c) == 0) continue;
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t j = 0; j < out.cols(); ++j) out(r, j) += c * b.tables[m](r, j);
  }
  return out;
}

QMatrix principal_symbol(const CartanModel& flat, int k, std::size_t from, std::size_t to, int order,
                         const Covector& xi) {
  const auto& fa = flat.fibers();
  if (static_cast<int>(xi.size()) != fa.vars()) throw std::invalid_argument("principal_symbol: covector size");
  const auto& src = fa.components(k).at(from);
  const auto& dst = fa.components(k + 1).at(to);
  Poly lin;
  for (int a = 0; a < fa.vars(); ++a) lin.add(Monomial::var(a), xi[a]);
  Poly p = Poly::constant(1);
  Rational fact = 1;
  for (int j = 1; j <= order; ++j) {
    p = p * lin;
    fact *= j;
  }
  p *= Rational(1) / fact;
  QMatrix out(dst.basis.size(), src.basis.size());
  for (std::size_t i = 0; i < src.basis.size(); ++i) {
    const QVector col = probe(flat, k, src, i, dst, p);
    for (std::size_t r = 0; r < col.size(); ++r) out(r, i) = col[r];
  }
  return out;
}

std::size_t orbit_dimension(const FiberAlgebra& fa, const Covector& xi) {
  const auto& g = fa.algebra();
  std::map<std::size_t, int> var_of;
  for (int a = 0; a < fa.vars(); ++a) var_of[fa.negative_index(a)] = a;
  const auto& g0 = g.grade_indices(0);
  // Row i: the covector -xi o ad(A_i) on g_-.
  QMatrix m(g0.size(), fa.vars());
  for (std::size_t i = 0; i < g0.size(); ++i)
    for (int b = 0; b < fa.vars(); ++b)
      for (const auto& [idx, c] : g.bracket_basis(g0[i], fa.negative_index(b))) {
        auto it = var_of.find(idx);
        if (it != var_of.end()) m(i, b) -= c * xi[it->second];
      }
  return exactla::rank(m);
}

SymbolExactnessReport symbol_exactness(const liealg::StructureSpec& spec, int trials, std::uint64_t seed) {
  SymbolExactnessReport rep;
  rep.structure = spec.name;
  rep.seed = seed;
  const liealg::GradedLieAlgebra g(spec);
  const auto diagram = bggpattern::build_bgg_diagram(g);
  const auto row = bggpattern::deformation_subcomplex(g, diagram);
  rep.row = row.row;
  const int top = static_cast<int>(row.row.size()) - 1;
  const FiberAlgebra fa(g, top);
  const auto model = CartanModel::flat(fa, top + 2);

  // Row position -> (degree, component index, offset inside the node).
  struct Slot {
    int degree;
    std::size_t comp;
    std::size_t offset;
  };
  std::map<bggpattern::GridLabel, std::pair<std::size_t, Slot>> where;
  for (std::size_t j = 0; j < row.row.size(); ++j) {
    std::size_t offset = 0;
    for (const auto& label : row.row[j]) {
      auto node = diagram.find(label);
      if (!node) throw std::logic_error("symbol_exactness: row label missing from the diagram");
      const auto& bn = diagram.nodes[*node];
      std::optional<std::size_t> match;
      const auto& comps = fa.components(bn.degree);
      for (std::size_t c = 0; c < comps.size(); ++c)
        if (comps[c].info.highest_weight == bn.component.highest_weight) {
          if (match) throw std::logic_error("symbol_exactness: ambiguous component");
          match = c;
        }
      if (!match) throw std::logic_error("symbol_exactness: row component not found");
      where[label] = {j, Slot{bn.degree, *match, offset}};
      offset += comps[*match].basis.size();
    }
    rep.node_dims.push_back(offset);
  }

  struct Placed {
    SymbolBlock block;
    std::size_t step, row_offset, col_offset;
  };
  std::vector<Placed> blocks;
  for (const auto& e : row.row_edges) {
    const auto& [js, s] = where.at(e.from);
    const auto& [jt, t] = where.at(e.to);
    if (!e.order) {
      rep.findings.push_back("no standard edge for a row step; its symbol block is taken as zero");
      continue;
    }
    if (jt != js + 1) throw std::logic_error("symbol_exactness: row edge does not advance one position");
    blocks.push_back({symbol_block(model, s.degree, s.comp, t.comp, *e.order), js, t.offset, s.offset});
    std::ostringstream os;
    os << " on the step from (" << e.from.first << "," << e.from.second << ")";
    if (blocks.back().block.lower_order_leading)
      rep.findings.push_back("order mismatch: probes of weighted degree below " + std::to_string(*e.order) +
                             " reach the target" + os.str());
    if (blocks.back().block.weighted_lower_terms)
      rep.findings.push_back("weighted order: probes of degree " + std::to_string(*e.order - 1) +
                             " along higher-weight coordinates reach the target" + os.str() +
                             "; the ordinary symbol is taken at degree " + std::to_string(*e.order));
  }

  const std::size_t steps = rep.node_dims.size() - 1;
  auto run = [&](Covector xi) {
    SymbolTrial trial;
    trial.xi = std::move(xi);
    trial.orbit_dim = orbit_dimension(fa, trial.xi);
    std::vector<QMatrix> sigma;
    for (std::size_t j = 0; j < steps; ++j) sigma.emplace_back(rep.node_dims[j + 1], rep.node_dims[j]);
    for (const auto& p : blocks) {
      const QMatrix m = evaluate(p.block, trial.xi);
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) sigma[p.step](p.row_offset + r, p.col_offset + c) = m(r, c);
    }
    for (std::size_t j = 0; j + 1 < steps; ++j)
      if (!(sigma[j + 1] * sigma[j]).is_zero()) trial.composites_vanish = false;
    for (const auto& s : sigma) trial.ranks.push_back(exactla::rank(s));
    for (std::size_t j = 0; j <= steps; ++j) {
      const std::size_t in = j > 0 ? trial.ranks[j - 1] : 0;
      const std::size_t out = j < steps ? trial.ranks[j] : 0;
      if (in + out != rep.node_dims[j]) trial.failing_nodes.push_back(j);
    }
    trial.exact = trial.composites_vanish && trial.failing_nodes.empty();
    return trial;
  };

  // Generic means the G_0-orbit has the largest possible dimension; a covector
  // with huge random entries attains it (off a proper subvariety).
  std::mt19937_64 rng(seed);
  {
    std::mt19937_64 ref_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<long> big(-1000000, 1000000);
    Covector ref(fa.vars());
    for (auto& x : ref) x = big(ref_rng);
    rep.generic_orbit_dim = orbit_dimension(fa, ref);
  }
  std::uniform_int_distribution<int> coef(-3, 3);
  const int max_draws = 100 * trials + 100;
  for (int draws = 0; static_cast<int>(rep.trials.size()) < trials; ++draws) {
    if (draws == max_draws) throw std::runtime_error("symbol_exactness: too few generic covectors drawn");
    Covector xi(fa.vars());
    bool nonzero = false;
    for (auto& x : xi) {
      x = coef(rng);
      nonzero = nonzero || sgn(x) != 0;
    }
    if (!nonzero) continue;
    SymbolTrial trial = run(std::move(xi));
    rep.composites_vanish = rep.composites_vanish && trial.composites_vanish;
    if (trial.orbit_dim < rep.generic_orbit_dim) {
      rep.nongeneric.push_back(std::move(trial));
      continue;
    }
    rep.all_exact = rep.all_exact && trial.exact;
    if (!trial.exact && !rep.witness) rep.witness = trial;
    rep.trials.push_back(std::move(trial));
  }
  return rep;
}

namespace {

nlohmann::json to_json(const SymbolTrial& t) {
  nlohmann::json xi = nlohmann::json::array();
  for (const auto& x : t.xi) xi.push_back(x.get_str());
  return {{"covector", xi},
          {"composites_vanish", t.composites_vanish},
          {"exact", t.exact},
          {"orbit_dim", t.orbit_dim},
          {"ranks", t.ranks},
          {"failing_nodes", t.failing_nodes}};
}

}  // namespace

nlohmann::json to_json(const SymbolExactnessReport& r) {
  nlohmann::json row = nlohmann::json::array();
  for (const auto& pos : r.row) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& l : pos) labels.push_back({l.first, l.second});
    row.push_back(labels);
  }
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.trials) trials.push_back(to_json(t));
  nlohmann::json nongeneric = nlohmann::json::array();
  for (const auto& t : r.nongeneric) nongeneric.push_back(to_json(t));
  nlohmann::json out = {{"structure", r.structure},
                        {"seed", r.seed},
                        {"row", row},
                        {"node_dims", r.node_dims},
                        {"all_exact", r.all_exact},
                        {"composites_vanish", r.composites_vanish},
                        {"findings", r.findings},
                        {"generic_orbit_dim", r.generic_orbit_dim},
                        {"nongeneric", nongeneric},
                        {"trials", trials}};
  if (r.witness) out["witness"] = to_json(*r.witness);
  return out;
}

}  // namespace bggkit::flatmodel
