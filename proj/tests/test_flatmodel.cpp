#include <gtest/gtest.h>

#include <random>

#include "bggkit/exactla/linalg.hpp"
#include "bggkit/flatmodel/checks.hpp"

using namespace bggkit;
using namespace bggkit::flatmodel;
using liealg::GradedLieAlgebra;
using liealg::parse_structure;

namespace {

struct Structure {
  explicit Structure(const std::string& name, int degree = 3) : g(parse_structure(name)), fa(g, degree) {}
  GradedLieAlgebra g;
  FiberAlgebra fa;
};

Structure& grassmannian() {
  static Structure s("grassmannian:2");
  return s;
}

Structure& lagrangean() {
  static Structure s("lagrangean-contact:2");
  return s;
}

FiberVec random_fiber(const FiberAlgebra& fa, int k, std::mt19937_64& rng) {
  FiberVec v;
  std::uniform_int_distribution<int> c(-2, 2);
  for (auto m : masks_of_size(fa.vars(), k))
    for (std::size_t u = 0; u < fa.algebra().dim(); ++u)
      if (rng() % 3 == 0) {
        const Rational x = c(rng);
        if (sgn(x) != 0) v[{m, static_cast<std::uint32_t>(u)}] = x;
      }
  return v;
}

Rational chain_inner(const FiberAlgebra& fa, const FiberVec& a, const FiberVec& b) {
  const auto ca = fa.to_chains(a), cb = fa.to_chains(b);
  Rational s = 0;
  for (const auto& [c, x] : ca) {
    auto it = cb.find(c);
    if (it != cb.end()) s += x * it->second * fa.chains().norm2(c);
  }
  return s;
}

PolyForm constant_frame(const FiberVec& v, int vars, int k) {
  PolyForm f(vars, k, Rep::Frame);
  for (const auto& [key, x] : v) f.add(key.mask, key.value, Monomial{}, x);
  return f;
}

// Pointwise homogeneous part of degree h of a frame form.
PolyForm homogeneous_part(const FiberAlgebra& fa, const PolyForm& f, int h) {
  PolyForm out(f.vars, f.degree, Rep::Frame);
  for (const auto& [k, p] : f.coeffs)
    if (fa.homogeneity(k) == h) out.add(k, p);
  return out;
}

}  // namespace

TEST(PolyForm, PrecisionAndOverflow) {
  Poly p = Poly::monomial(Monomial::var(0)) + Poly::monomial(Monomial::var(0) * Monomial::var(1));
  p.set_precision(1);
  EXPECT_EQ(p.terms.size(), 1u);
  EXPECT_EQ(p.derivative(0).precision, 0);
  EXPECT_THROW(p.derivative(0).derivative(1), TruncationOverflow);
  Poly q = Poly::monomial(Monomial::var(2));
  EXPECT_EQ((p * q).precision, 2);  // known to degree 1 + lowest degree of q
  const Poly tau = Poly::monomial(Monomial::tau_unit());
  EXPECT_TRUE((tau * tau).is_zero());
}

TEST(PolyForm, ExteriorDerivativeSquaresToZero) {
  auto& s = grassmannian();
  std::mt19937_64 rng(3);
  for (int k = 0; k <= 2; ++k) {
    const PolyForm f = random_form(s.fa, k, 0, 3, 8, rng);
    EXPECT_TRUE(exterior_derivative(exterior_derivative(f)).is_zero());
  }
}

TEST(PolyForm, NeumannInverse) {
  PolyMatrix m = PolyMatrix::identity(2);
  m(0, 1) = Poly::monomial(Monomial::var(0));
  m(1, 0) = Poly::monomial(Monomial::var(1));
  const PolyMatrix s = neumann_inverse(m, 5);
  EXPECT_EQ(s.precision(), 5);
  const PolyMatrix id = m * s;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Poly e = id(i, j);
      if (i == j) e -= Poly::constant(1);
      EXPECT_TRUE(e.is_zero());
    }
  PolyMatrix nil = PolyMatrix::identity(2);
  nil(0, 1) = Poly::monomial(Monomial::var(0));
  EXPECT_EQ(neumann_inverse(nil, 5).precision(), kExact);
}

TEST(FiberAlgebra, DifferentialsAndAdjointness) {
  for (Structure* s : {&grassmannian(), &lagrangean()}) {
    std::mt19937_64 rng(5);
    for (int k = 0; k <= 2; ++k)
      for (int t = 0; t < 4; ++t) {
        const FiberVec v = random_fiber(s->fa, k, rng), w = random_fiber(s->fa, k + 1, rng);
        EXPECT_TRUE(s->fa.cobound(s->fa.cobound(v)).empty());
        // With the trace form the codifferential is minus the adjoint of d.
        EXPECT_EQ(chain_inner(s->fa, s->fa.cobound(v), w), -chain_inner(s->fa, v, s->fa.codiff(w)));
        const FiberVec e = s->fa.codiff(w);
        EXPECT_EQ(s->fa.codiff(s->fa.cobound(s->fa.q0(e))), e);
        EXPECT_TRUE(s->fa.project_harmonic(e).empty());
      }
  }
}

TEST(FiberAlgebra, HarmonicBasis) {
  auto& s = grassmannian();
  const std::size_t expected[] = {4, 9, 10};  // H_0 = g/p; then from the Kostant count
  for (int k = 0; k <= 2; ++k) {
    EXPECT_EQ(s.fa.harmonic_basis(k).size(), expected[k]);
    for (const auto& b : s.fa.harmonic_basis(k)) {
      EXPECT_TRUE(s.fa.codiff(b).empty());
      EXPECT_TRUE(s.fa.cobound(b).empty());
      EXPECT_EQ(s.fa.project_harmonic(b), b);
    }
  }
}

TEST(MaurerCartan, MatchesMatrixExponential) {
  for (Structure* s : {&grassmannian(), &lagrangean()}) {
    const auto& g = s->g;
    const int n = s->fa.vars(), N = g.matrix_size();
    // X(x) = sum x_a X_a as a matrix of polynomials.
    PolyMatrix x(N);
    for (int a = 0; a < n; ++a)
      for (const auto& e : g.basis(s->fa.negative_index(a)).matrix.entries)
        x(e.row, e.col) += Poly::monomial(Monomial::var(a), e.value);
    auto expo = [&](const PolyMatrix& m) {
      PolyMatrix sum = PolyMatrix::identity(N), power = PolyMatrix::identity(N);
      Rational fact = 1;
      for (int j = 1; j <= 2 * N; ++j) {
        power = power * m;
        fact *= j;
        for (std::size_t i = 0; i < sum.entries.size(); ++i) sum.entries[i] += power.entries[i] * (Rational(1) / fact);
      }
      return sum;
    };
    PolyMatrix minus_x = x;
    for (auto& e : minus_x.entries) e = -e;
    const PolyMatrix ex = expo(x), emx = expo(minus_x);
    const PolyForm theta = maurer_cartan(s->fa);
    for (int b = 0; b < n; ++b) {
      PolyMatrix dex(N);
      for (std::size_t i = 0; i < dex.entries.size(); ++i) dex.entries[i] = ex.entries[i].derivative(b);
      const PolyMatrix tb = emx * dex;
      for (std::size_t i = 0; i < g.dim(); ++i) {
        // Coefficient on b_i: tr(tb b_i^T) / |b_i|^2.
        Poly c;
        for (const auto& e : g.basis(i).matrix.entries) c += tb(e.row, e.col) * e.value;
        c *= Rational(1) / g.basis(i).norm2;
        Poly mine;
        auto it = theta.coeffs.find(FormKey{1u << b, static_cast<std::uint32_t>(i)});
        if (it != theta.coeffs.end()) mine = it->second;
        EXPECT_TRUE((c - mine).is_zero()) << "dx" << b << " value " << i;
      }
    }
  }
}

TEST(MaurerCartan, FlatAndIdentityAtOrigin) {
  for (const char* name : {"grassmannian:2", "lagrangean-contact:2", "contact-projective:2", "projective:3"}) {
    Structure s(name, 1);
    const CartanModel m = CartanModel::flat(s.fa, 4);
    EXPECT_TRUE(m.curvature().is_zero()) << name;
    const PolyForm origin = m.omega().at_origin();
    EXPECT_EQ(origin.coeffs.size(), static_cast<std::size_t>(s.fa.vars()));
    for (int a = 0; a < s.fa.vars(); ++a)
      EXPECT_EQ(origin.coeffs.at(FormKey{1u << a, static_cast<std::uint32_t>(s.fa.negative_index(a))}).constant_term(),
                1);
    if (s.g.depth() == 1) EXPECT_EQ(m.omega().max_poly_degree(), 0) << name;
  }
}

TEST(CovariantDerivative, LowestPartIsLieAlgebraDifferential) {
  for (Structure* s : {&grassmannian(), &lagrangean()}) {
    const CartanModel m = CartanModel::flat(s->fa, 4);
    std::mt19937_64 rng(9);
    for (int k = 0; k <= 2; ++k) {
      const PolyForm f = constant_frame(random_fiber(s->fa, k, rng), s->fa.vars(), k);
      const PolyForm d = m.to_frame(m.cov_ext_derivative(m.to_base(f))).at_origin();
      EXPECT_TRUE(agree(d, s->fa.cobound(f)));
    }
  }
}

TEST(CovariantDerivative, SquareIsCurvatureAction) {
  for (Structure* s : {&grassmannian(), &lagrangean()}) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 3; ++t) {
      const CartanModel m = CartanModel::perturbed(s->fa, random_form(s->fa, 1, 1, 2, 6, rng), 5);
      const PolyForm phi = random_form(s->fa, 1, 0, 2, 6, rng);
      EXPECT_TRUE(agree(m.cov_ext_derivative(m.cov_ext_derivative(phi)), m.bracket(m.curvature(), phi)));
      EXPECT_TRUE(m.cov_ext_derivative(m.curvature()).is_zero());
    }
  }
}

TEST(ModifiedDerivative, MatchesInvariantFormulaOnOneForms) {
  auto& s = lagrangean();
  std::mt19937_64 rng(17);
  const int n = s.fa.vars();
  for (int t = 0; t < 3; ++t) {
    const CartanModel m = CartanModel::perturbed(s.fa, random_form(s.fa, 1, 1, 1, 6, rng), 5);
    const PolyForm phi = random_form(s.fa, 1, 0, 2, 6, rng);
    // d~phi(d_i, d_j) = d phi(d_i, d_j) + kappa(Pi phi_j, d_i) - kappa(Pi phi_i, d_j)
    PolyForm expected = m.cov_ext_derivative(phi);
    auto kappa = [&](int b, int i, std::uint32_t v) -> Poly {
      if (b == i) return {};
      auto it = m.curvature().coeffs.find(FormKey{(1u << b) | (1u << i), v});
      if (it == m.curvature().coeffs.end()) return {};
      return b < i ? it->second : -it->second;
    };
    auto pi = [&](int j, int b) {  // b-th component of the vector field under phi(d_j)
      Poly out;
      for (const auto& [k, p] : phi.coeffs) {
        const int a = s.fa.position(k.value);
        if (k.mask == (1u << j) && a >= 0) out += m.soldering_inverse()(b, a) * p;
      }
      return out;
    };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (std::uint32_t v = 0; v < s.g.dim(); ++v) {
          Poly extra;
          for (int b = 0; b < n; ++b) {
            extra += pi(j, b) * kappa(b, i, v);
            extra -= pi(i, b) * kappa(b, j, v);
          }
          expected.add(FormKey{(1u << i) | (1u << j), v}, extra);
        }
    EXPECT_TRUE(agree(m.modified_ext_derivative(phi), expected));
  }
}

TEST(Insertion, BasicProperties) {
  auto& s = grassmannian();
  std::mt19937_64 rng(19);
  const CartanModel flat = CartanModel::flat(s.fa, 4);
  const PolyForm sec = random_form(s.fa, 0, 0, 2, 6, rng);
  EXPECT_TRUE(flat.insertion(sec, flat.curvature()).is_zero());
  // p-valued sections have no underlying vector field.
  PolyForm ps(s.fa.vars(), 0);
  for (auto i : s.g.positive_indices()) ps.add(0u, static_cast<std::uint32_t>(i), Monomial::var(0), 2);
  const PolyForm two = random_form(s.fa, 2, 0, 2, 6, rng);
  EXPECT_TRUE(flat.insertion(ps, two).is_zero());
  // On a regular model, phi of homogeneity >= l gives i_phi kappa of homogeneity >= l + 1.
  const CartanModel m = CartanModel::perturbed(s.fa, random_form(s.fa, 1, 1, 2, 8, rng), 5);
  ASSERT_TRUE(m.regularity_normality().regular);
  for (int t = 0; t < 4; ++t) {
    const PolyForm phi = m.to_base(constant_frame(random_fiber(s.fa, 1, rng), s.fa.vars(), 1));
    const int l = s.fa.min_homogeneity(m.to_frame(phi));
    const PolyForm ins = m.to_frame(m.insertion(phi, m.curvature()));
    EXPECT_GE(s.fa.min_homogeneity(ins), l + 1);
    // Hence the parts of degree l of d^nabla and d^nabla~ agree.
    const PolyForm d = m.to_frame(m.cov_ext_derivative(phi)), dt = m.to_frame(m.modified_ext_derivative(phi));
    EXPECT_TRUE(agree(homogeneous_part(s.fa, d, l), homogeneous_part(s.fa, dt, l)));
    EXPECT_FALSE(agree(d, dt));
  }
}

TEST(ModelRegularity, FlatAndPerturbed) {
  auto& s = lagrangean();
  const auto flat = CartanModel::flat(s.fa, 4).regularity_normality();
  EXPECT_TRUE(flat.regular);
  EXPECT_TRUE(flat.normal);
  ASSERT_TRUE(flat.harmonic_curvature.has_value());
  EXPECT_TRUE(flat.harmonic_curvature->is_zero());
  std::mt19937_64 rng(23);
  int not_normal = 0;
  for (int t = 0; t < 5; ++t) {
    const auto r = CartanModel::perturbed(s.fa, random_form(s.fa, 1, 1, 1, 8, rng), 4).regularity_normality();
    if (!r.normal) ++not_normal;
    EXPECT_GE(r.weighted_min_homogeneity, r.min_homogeneity);
  }
  EXPECT_GT(not_normal, 0);
  // |1|-graded models are automatically regular.
  auto& gr = grassmannian();
  for (int t = 0; t < 5; ++t)
    EXPECT_TRUE(CartanModel::perturbed(gr.fa, random_form(gr.fa, 1, 1, 2, 8, rng), 4).regularity_normality().regular);
}

TEST(Splitting, CharacterizingProperties) {
  for (Structure* s : {&grassmannian(), &lagrangean()}) {
    std::mt19937_64 rng(29);
    const CartanModel m = CartanModel::flat(s->fa, 6);
    for (int k = 0; k <= 2; ++k) {
      const PolyForm alpha = random_harmonic_section(s->fa, k, 3, rng);
      const PolyForm l = m.splitting_operator(alpha);
      const PolyForm lf = m.to_frame(l);
      EXPECT_TRUE(s->fa.codiff(lf).is_zero());
      EXPECT_TRUE(agree(s->fa.project_harmonic(lf), alpha));
      EXPECT_TRUE(s->fa.codiff(m.to_frame(m.cov_ext_derivative(l))).is_zero());
    }
  }
}

TEST(Splitting, CurvedRegularModel) {
  auto& s = grassmannian();
  std::mt19937_64 rng(31);
  const CartanModel m = CartanModel::perturbed(s.fa, random_form(s.fa, 1, 1, 1, 6, rng), 6);
  for (bool modified : {false, true}) {
    const PolyForm alpha = random_harmonic_section(s.fa, 1, 2, rng);
    const PolyForm l = m.splitting_operator(alpha, modified);
    const PolyForm d = modified ? m.modified_ext_derivative(l) : m.cov_ext_derivative(l);
    EXPECT_TRUE(s.fa.codiff(m.to_frame(d)).is_zero());
  }
}

TEST(Splitting, RejectsNonHarmonicInput) {
  auto& s = grassmannian();
  const CartanModel m = CartanModel::flat(s.fa, 4);
  PolyForm bad(s.fa.vars(), 0, Rep::Frame);
  bad.add(0u, static_cast<std::uint32_t>(s.g.positive_indices().front()), Monomial{}, 1);
  EXPECT_THROW(m.splitting_operator(bad), std::invalid_argument);
}

TEST(BggOperator, GrassmannianOrders) {
  auto& s = grassmannian();
  const CartanModel m = CartanModel::flat(s.fa, 6);
  std::mt19937_64 rng(37);
  // Generic sections of polynomial degree 4 lose exactly the order.
  const int orders[] = {1, 2};
  for (int k = 0; k <= 1; ++k) {
    PolyForm alpha(s.fa.vars(), k, Rep::Frame);
    std::uniform_int_distribution<int> c(1, 5);
    for (const auto& v : s.fa.harmonic_basis(k))
      for (const auto& mono : {Monomial::var(0) * Monomial::var(1) * Monomial::var(2) * Monomial::var(3),
                               Monomial::var(0) * Monomial::var(0) * Monomial::var(3) * Monomial::var(2)}) {
        const Rational x = c(rng);
        for (const auto& [key, y] : v) alpha.add(key.mask, key.value, mono, x * y);
      }
    EXPECT_EQ(alpha.max_poly_degree() - m.bgg_operator(alpha).max_poly_degree(), orders[k]) << "D_" << k;
  }
}

TEST(BggOperator, ModifiedEqualsPlainOnFlatModel) {
  auto& s = lagrangean();
  const CartanModel m = CartanModel::flat(s.fa, 6);
  std::mt19937_64 rng(41);
  const PolyForm alpha = random_harmonic_section(s.fa, 0, 3, rng);
  EXPECT_TRUE(agree(m.bgg_operator(alpha, true), m.bgg_operator(alpha, false)));
}

TEST(BggOperator, FlatSequenceIsComplex) {
  for (const char* name : {"grassmannian:2", "lagrangean-contact:2"})
    for (const auto& r : check_flat_complex(parse_structure(name), 5, 100, 4)) EXPECT_TRUE(r.pass) << to_json(r).dump();
}

TEST(InfinitesimalDeformation, TrivialCases) {
  auto& s = grassmannian();
  std::mt19937_64 rng(43);
  const CartanModel flat = CartanModel::flat(s.fa, 4);
  const PolyForm phi = random_form(s.fa, 1, 0, 2, 6, rng);
  EXPECT_TRUE(agree(flat.deformation_curvature_derivative(phi), flat.cov_ext_derivative(phi)));
  EXPECT_TRUE(flat.deformation_curvature_derivative(PolyForm(s.fa.vars(), 1)).is_zero());
  // Grading element as a constant section: both routes give [theta, E].
  PolyForm e(s.fa.vars(), 0);
  const auto& coords = s.g.grading_element();
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (sgn(coords[i]) != 0) e.add(0u, static_cast<std::uint32_t>(i), Monomial{}, coords[i]);
  EXPECT_TRUE(agree(flat.automorphism_deformation(e), flat.cov_ext_derivative(e)));
}

TEST(InfinitesimalDeformation, TwoRoutesOnCurvedBases) {
  for (const char* name : {"grassmannian:2", "lagrangean-contact:2"})
    for (const auto& r : check_two_routes(parse_structure(name), 3, 200, 4)) EXPECT_TRUE(r.pass) << to_json(r).dump();
  for (const auto& r : check_bianchi(parse_structure("lagrangean-contact:2"), 3, 300, 4)) EXPECT_TRUE(r.pass);
}

TEST(Symbols, TablesMatchDirectFormula) {
  auto& s = grassmannian();
  const CartanModel m = CartanModel::flat(s.fa, 6);
  const SymbolBlock b0 = symbol_block(m, 0, 0, 0, 1);
  const Covector zero(s.fa.vars(), 0), xi{2, -1, 3, 1};
  EXPECT_TRUE(evaluate(b0, zero).is_zero());
  EXPECT_EQ(evaluate(b0, xi), principal_symbol(m, 0, 0, 0, 1, xi));
  EXPECT_FALSE(b0.lower_order_leading);
  // D_1 lands in the H_2 component it has order two to.
  std::size_t target = s.fa.components(2).size();
  for (std::size_t c = 0; c < s.fa.components(2).size(); ++c)
    if (s.fa.components(2)[c].info.homogeneity - s.fa.components(1)[0].info.homogeneity == 2) target = c;
  ASSERT_LT(target, s.fa.components(2).size());
  const SymbolBlock b1 = symbol_block(m, 1, 0, target, 2);
  EXPECT_EQ(evaluate(b1, xi), principal_symbol(m, 1, 0, target, 2, xi));
  EXPECT_TRUE((evaluate(b1, xi) * evaluate(b0, xi)).is_zero());
  EXPECT_FALSE(evaluate(b1, xi).is_zero());
}

TEST(Symbols, QuaternionicRowIsExact) {
  const CheckReport r = check_symbols(parse_structure("quaternionic:2"), 3, 7);
  EXPECT_TRUE(r.pass) << to_json(r).dump();
}

TEST(Symbols, LagrangeanContactRowIsNotExact) {
  const CheckReport r = check_symbols(parse_structure("lagrangean-contact:2"), 3, 7);
  EXPECT_TRUE(r.pass) << to_json(r).dump();
  EXPECT_FALSE(r.witness.is_null());
}

// On grassmannian:2 the covectors are 2x2 blocks; GL2 x GL2 orbits are the ranks.
TEST(Symbols, OrbitDimensionIsMatrixRank) {
  const auto& s = grassmannian();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-2, 2);
  int singular = 0;
  for (int t = 0; t < 60; ++t) {
    Covector xi(s.fa.vars());
    for (auto& x : xi) x = coef(rng);
    exactla::QMatrix m(s.g.matrix_size(), s.g.matrix_size());
    for (int a = 0; a < s.fa.vars(); ++a)
      for (const auto& e : s.g.basis(s.fa.negative_index(a)).matrix.entries) m(e.row, e.col) += xi[a] * e.value;
    const std::size_t r = exactla::rank(m);
    const std::size_t want = r == 2 ? 4 : r == 1 ? 3 : 0;
    EXPECT_EQ(orbit_dimension(s.fa, xi), want);
    singular += r == 1;
  }
  EXPECT_GT(singular, 0);
}

TEST(Symbols, QuaternionicLineFailsOnlyOffGenericOrbits) {
  const auto r = symbol_exactness(parse_structure("quaternionic:1"), 20, 0);
  EXPECT_TRUE(r.all_exact);
  EXPECT_EQ(r.generic_orbit_dim, 4u);
  ASSERT_FALSE(r.nongeneric.empty());
  for (const auto& t : r.nongeneric) EXPECT_FALSE(t.exact);
}

// The second-order step of the quaternionic-contact row also has first
// derivatives along the weight-two coordinates; that is a weighted order, not
// a mismatch.
TEST(Symbols, QuaternionicContactWeightedOrder) {
  const auto r = symbol_exactness(parse_structure("quaternionic-contact:1"), 2, 0);
  ASSERT_EQ(r.findings.size(), 1u);
  EXPECT_EQ(r.findings[0].rfind("weighted order", 0), 0u) << r.findings[0];
  EXPECT_TRUE(r.composites_vanish);
}
