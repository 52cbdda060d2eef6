#include "bggkit/flatmodel/model.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bggkit::flatmodel {

namespace {

Poly times_tau(const Poly& p) {
  Poly q;
  q.precision = p.precision;
  for (const auto& [m, c] : p.terms) q.add(m * Monomial::tau_unit(), c);
  return q;
}

// The part of each coefficient that is free of tau and x.
bool identity_at_origin(const PolyMatrix& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m(i, j).coefficient(Monomial{}) != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

PolyForm maurer_cartan(const FiberAlgebra& fa) {
  const auto& g = fa.algebra();
  const int n = fa.vars();
  PolyForm u(n, 1);
  for (int b = 0; b < n; ++b) u.add(1u << b, fa.negative_index(b), Monomial{}, 1);
  PolyForm theta = u;
  Rational fact = 1;
  for (int j = 1; !u.is_zero(); ++j) {
    PolyForm next(n, 1);
    for (const auto& [k, p] : u.coeffs)
      for (int a = 0; a < n; ++a) {
        Poly xp = Poly::monomial(Monomial::var(a)) * p;
        for (const auto& [t, c] : g.bracket_basis(fa.negative_index(a), k.value))
          next.add(FormKey{k.mask, static_cast<std::uint32_t>(t)}, xp * (-c));
      }
    u = std::move(next);
    fact *= j + 1;
    theta += u * (Rational(1) / fact);
  }
  return theta;
}

CartanModel::CartanModel(const FiberAlgebra& fa, PolyForm omega, int truncation)
    : fa_(fa), omega_(std::move(omega)), truncation_(truncation), m_(fa.vars()) {
  const int n = fa.vars();
  if (omega_.degree != 1 || omega_.rep != Rep::Base || omega_.vars != n)
    throw std::invalid_argument("CartanModel: omega must be a base 1-form on g_-");
  if (truncation_ < omega_.max_poly_degree() + 1)
    throw std::invalid_argument("CartanModel: truncation must exceed the polynomial degree of omega");
  for (const auto& [k, p] : omega_.coeffs) {
    const int a = fa.position(k.value);
    if (a < 0) continue;
    const int b = bits(k.mask).front();
    m_(a, b) += p;
  }
  if (!identity_at_origin(m_))
    throw std::invalid_argument("CartanModel: omega is not the identity soldering at the origin");
  s_ = neumann_inverse(m_, truncation_);
  kappa_ = exterior_derivative(omega_);
  PolyForm half = bracket(omega_, omega_);
  half *= Rational(1, 2);
  kappa_ += half;
}

CartanModel CartanModel::flat(const FiberAlgebra& fa, int truncation) {
  return CartanModel(fa, maurer_cartan(fa), truncation);
}

CartanModel CartanModel::perturbed(const FiberAlgebra& fa, const PolyForm& phi0, int truncation) {
  if (!phi0.at_origin().is_zero()) throw std::invalid_argument("CartanModel: perturbation must vanish at the origin");
  return CartanModel(fa, maurer_cartan(fa) + phi0, truncation);
}

PolyForm CartanModel::bracket(const PolyForm& a, const PolyForm& b) const {
  const auto& g = fa_.algebra();
  PolyForm out(vars(), a.degree + b.degree, Rep::Base);
  out.set_precision(std::min(a.precision, b.precision));
  for (const auto& [ka, pa] : a.coeffs)
    for (const auto& [kb, pb] : b.coeffs) {
      const int s = wedge_sign(ka.mask, kb.mask);
      if (s == 0) continue;
      const auto& br = g.bracket_basis(ka.value, kb.value);
      if (br.empty()) continue;
      const Poly prod = pa * pb;
      for (const auto& [t, c] : br) out.add(FormKey{ka.mask | kb.mask, static_cast<std::uint32_t>(t)}, prod * (s * c));
    }
  return out;
}

PolyForm CartanModel::cov_ext_derivative(const PolyForm& phi) const {
  return exterior_derivative(phi) + bracket(omega_, phi);
}

std::vector<std::map<std::uint32_t, Poly>> CartanModel::underlying_vectors(const PolyForm& p) const {
  const int n = vars();
  std::vector<std::map<std::uint32_t, Poly>> out(n);
  for (const auto& [k, q] : p.coeffs) {
    const int a = fa_.position(k.value);
    if (a < 0) continue;
    for (int b = 0; b < n; ++b) {
      const Poly& sba = s_(b, a);
      if (sba.is_zero()) continue;
      out[b][k.mask] += sba * q;
    }
  }
  return out;
}

PolyForm CartanModel::insertion(const PolyForm& p, const PolyForm& f) const {
  if (p.rep != Rep::Base || f.rep != Rep::Base) throw std::invalid_argument("insertion: base representation expected");
  PolyForm out(vars(), p.degree + f.degree - 1, Rep::Base);
  out.set_precision(std::min({p.precision, f.precision, s_.precision()}));
  if (f.degree == 0) return out;
  const auto vec = underlying_vectors(p);
  for (const auto& [k, q] : f.coeffs) {
    const auto idx = bits(k.mask);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const std::uint32_t rest = k.mask & ~(1u << idx[j]);
      const int sj = j % 2 ? -1 : 1;
      for (const auto& [lmask, pv] : vec[idx[j]]) {
        const int s = wedge_sign(lmask, rest);
        if (s == 0 || pv.is_zero()) continue;
        out.add(FormKey{lmask | rest, k.value}, pv * q * Rational(s * sj));
      }
    }
  }
  return out;
}

PolyForm CartanModel::modified_ext_derivative(const PolyForm& phi) const {
  PolyForm out = cov_ext_derivative(phi);
  if (kappa_.is_zero()) return out;
  PolyForm ins = insertion(phi, kappa_);
  if (phi.degree % 2) ins *= Rational(-1);
  return out + ins;
}

const CartanModel::MinorTable& CartanModel::minors(bool inverse, int k) const {
  std::lock_guard<std::mutex> lock(minor_mutex_);
  const PolyMatrix& mat = inverse ? s_ : m_;
  const int n = vars();
  auto level = [&](int j) -> std::unique_ptr<MinorTable>& { return minor_cache_[{inverse, j}]; };
  if (!level(0)) {
    auto t = std::make_unique<MinorTable>();
    (*t)[0].emplace_back(0u, Poly::constant(1));
    level(0) = std::move(t);
  }
  for (int j = 1; j <= k; ++j) {
    if (level(j)) continue;
    const MinorTable& prev = *level(j - 1);
    std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> acc;
    for (std::uint32_t r : masks_of_size(n, j)) {
      const int r0 = std::countr_zero(r);
      auto it = prev.find(r & ~(1u << r0));
      if (it == prev.end()) continue;
      for (const auto& [cols, det] : it->second)
        for (int c = 0; c < n; ++c) {
          if (cols & (1u << c)) continue;
          const Poly& e = mat(r0, c);
          if (e.is_zero() && e.precision == kExact) continue;
          const int sign = std::popcount(cols & ((1u << c) - 1)) % 2 ? -1 : 1;
          Poly term = e * det;
          if (sign < 0) term = -term;
          auto& slot = acc[{r, cols | (1u << c)}];
          slot += term;
        }
    }
    auto t = std::make_unique<MinorTable>();
    for (auto& [rc, det] : acc)
      if (!det.is_zero() || det.precision != kExact) (*t)[rc.first].emplace_back(rc.second, std::move(det));
    level(j) = std::move(t);
  }
  return *level(k);
}

PolyForm CartanModel::to_frame(const PolyForm& f) const {
  if (f.rep != Rep::Base) throw std::invalid_argument("to_frame: base representation expected");
  PolyForm out(vars(), f.degree, Rep::Frame);
  out.set_precision(f.precision);
  const auto& table = minors(true, f.degree);
  for (const auto& [k, p] : f.coeffs) {
    auto it = table.find(k.mask);
    if (it == table.end()) continue;
    for (const auto& [cols, det] : it->second) out.add(FormKey{cols, k.value}, p * det);
  }
  return out;
}

PolyForm CartanModel::to_base(const PolyForm& f) const {
  if (f.rep != Rep::Frame) throw std::invalid_argument("to_base: frame representation expected");
  PolyForm out(vars(), f.degree, Rep::Base);
  out.set_precision(f.precision);
  const auto& table = minors(false, f.degree);
  for (const auto& [k, p] : f.coeffs) {
    auto it = table.find(k.mask);
    if (it == table.end()) continue;
    for (const auto& [cols, det] : it->second) out.add(FormKey{cols, k.value}, p * det);
  }
  return out;
}

RegularityReport CartanModel::regularity_normality() const {
  RegularityReport r;
  const PolyForm k = to_frame(kappa_);
  r.precision = k.precision;
  r.min_homogeneity = fa_.min_homogeneity(k);
  r.regular = r.min_homogeneity >= 1;
  for (const auto& [key, p] : k.coeffs)
    for (const auto& [m, c] : p.terms) {
      int h = fa_.homogeneity(key);
      for (int a = 0; a < vars(); ++a) h += m.e[a] * fa_.var_weight(a);
      r.weighted_min_homogeneity = std::min(r.weighted_min_homogeneity, h);
    }
  r.normal = fa_.codiff(k).is_zero();
  if (r.normal) r.harmonic_curvature = fa_.project_harmonic(k);
  return r;
}

PolyForm CartanModel::splitting_operator(const PolyForm& alpha, bool modified) const {
  if (alpha.rep != Rep::Frame) throw std::invalid_argument("splitting_operator: frame representation expected");
  if (!agree(fa_.project_harmonic(alpha), alpha))
    throw std::invalid_argument("splitting_operator: section is not harmonic-valued");
  auto d = [&](const PolyForm& phi) { return modified ? modified_ext_derivative(phi) : cov_ext_derivative(phi); };
  PolyForm phi = to_base(alpha);
  int last = -kExact;
  // Fiber homogeneities are bounded, so a strictly increasing defect must die.
  const auto& g = fa_.algebra();
  const int depth = g.depth();
  const int bound = 2 * depth * (alpha.degree + 2) + 2;
  for (int pass = 0;; ++pass) {
    const PolyForm e = fa_.codiff(to_frame(d(phi)));
    if (e.is_zero()) break;
    const int h = fa_.min_homogeneity(e);
    if (h <= last || pass > bound)
      throw std::runtime_error("splitting_operator: defect homogeneity does not increase (irregular model?)");
    last = h;
    phi -= to_base(fa_.q0(e));
  }
  const PolyForm frame = to_frame(phi);
  if (!fa_.codiff(frame).is_zero() || !agree(fa_.project_harmonic(frame), alpha) ||
      !fa_.codiff(to_frame(d(phi))).is_zero())
    throw std::logic_error("splitting_operator: characterizing properties violated");
  return phi;
}

PolyForm CartanModel::bgg_operator(const PolyForm& alpha, bool modified) const {
  const PolyForm phi = splitting_operator(alpha, modified);
  return fa_.project_harmonic(to_frame(modified ? modified_ext_derivative(phi) : cov_ext_derivative(phi)));
}

PolyForm CartanModel::deformation_curvature_derivative(const PolyForm& phi) const {
  if (phi.degree != 1 || phi.rep != Rep::Base) throw std::invalid_argument("deformation: base 1-form expected");
  PolyForm wt = omega_;
  for (const auto& [k, p] : phi.coeffs) wt.add(k, times_tau(p));
  wt.set_precision(std::min(omega_.precision, phi.precision));
  const CartanModel deformed(fa_, std::move(wt), truncation_);
  // Curvature function of omega_tau, differentiated at tau = 0, back through omega.
  return to_base(deformed.to_frame(deformed.curvature()).tau_part(1));
}

PolyForm CartanModel::automorphism_deformation(const PolyForm& s) const {
  if (s.degree != 0 || s.rep != Rep::Base) throw std::invalid_argument("automorphism: base 0-form expected");
  const int n = vars();
  // Horizontal part: the vector field zeta with omega(zeta) = s mod p.
  const auto vec = underlying_vectors(s);
  std::vector<Poly> zeta(n);
  int zprec = std::min(s.precision, s_.precision());
  for (int b = 0; b < n; ++b) {
    auto it = vec[b].find(0u);
    if (it != vec[b].end()) zeta[b] = it->second;
    zeta[b].set_precision(zprec);
  }
  // Vertical part f_p = s - omega(zeta), a p-valued function.
  PolyForm fp = s;
  for (const auto& [k, p] : omega_.coeffs) {
    const int b = bits(k.mask).front();
    if (zeta[b].is_zero() && zeta[b].precision == kExact) continue;
    fp.add(FormKey{0u, k.value}, -(zeta[b] * p));
  }
  for (const auto& [k, p] : fp.coeffs)
    if (fa_.position(k.value) >= 0) throw std::logic_error("automorphism: vertical part leaves p");
  // Lie derivative of omega along zeta.
  PolyForm lie(n, 1, Rep::Base);
  if (std::min(omega_.precision, zprec) != kExact) lie.set_precision(std::min(omega_.precision, zprec) - 1);
  for (const auto& [k, p] : omega_.coeffs) {
    const int c = bits(k.mask).front();
    for (int a = 0; a < n; ++a) {
      if (!zeta[a].is_zero()) lie.add(k, zeta[a] * p.derivative(a));
      const Poly dz = zeta[c].derivative(a);
      if (!dz.is_zero()) lie.add(FormKey{1u << a, k.value}, p * dz);
    }
  }
  PolyForm gauge = exterior_derivative(fp);
  gauge -= bracket(fp, omega_);
  return lie + gauge;
}

}  // namespace bggkit::flatmodel
