#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "bggkit/flatmodel/fibers.hpp"

namespace bggkit::flatmodel {

// theta(x) = sum_j (-ad x)^j dx / (j+1)!, exact since ad x is nilpotent.
PolyForm maurer_cartan(const FiberAlgebra& fa);

struct RegularityReport {
  bool regular = false;
  bool normal = false;
  int min_homogeneity = kExact;  // pointwise, of the curvature function
  // Also counting x_a with the weight of its coordinate (germ at the origin).
  int weighted_min_homogeneity = kExact;
  int precision = kExact;        // degree up to which the verdicts are exact
  std::optional<PolyForm> harmonic_curvature;  // frame form, when normal
};

// A g-valued 1-form omega on a neighbourhood of the origin in g_-, read as
// the pullback of a Cartan connection along the big cell.  Forms are in base
// representation (dx coforms) unless stated otherwise; frame representation
// uses e^a = a-th g_- component of omega.
class CartanModel {
 public:
  CartanModel(const FiberAlgebra& fa, PolyForm omega, int truncation);
  static CartanModel flat(const FiberAlgebra& fa, int truncation);
  // theta + phi0; phi0 must vanish at the origin.
  static CartanModel perturbed(const FiberAlgebra& fa, const PolyForm& phi0, int truncation);

  const FiberAlgebra& fibers() const { return fa_; }
  int vars() const { return fa_.vars(); }
  int truncation() const { return truncation_; }
  const PolyForm& omega() const { return omega_; }
  const PolyForm& curvature() const { return kappa_; }
  // M(a, b) = X_a-coefficient of omega(d/dx_b), and its inverse S.
  const PolyMatrix& soldering() const { return m_; }
  const PolyMatrix& soldering_inverse() const { return s_; }
  bool flat() const { return kappa_.is_zero(); }

  // sum [a_A, b_B] dx^A ^ dx^B
  PolyForm bracket(const PolyForm& a, const PolyForm& b) const;
  // d phi + [omega ^ phi]
  PolyForm cov_ext_derivative(const PolyForm& phi) const;
  // Inserts the vector-valued form underlying p into f.
  PolyForm insertion(const PolyForm& p, const PolyForm& f) const;
  // d^nabla phi + (-1)^k i_phi kappa
  PolyForm modified_ext_derivative(const PolyForm& phi) const;

  PolyForm to_frame(const PolyForm& f) const;
  PolyForm to_base(const PolyForm& f) const;

  RegularityReport regularity_normality() const;

  // alpha: harmonic-valued frame k-form.  Returns L(alpha) in base form.
  PolyForm splitting_operator(const PolyForm& alpha, bool modified = false) const;
  // pi_H d L(alpha), a harmonic-valued frame (k+1)-form.
  PolyForm bgg_operator(const PolyForm& alpha, bool modified = false) const;

  // First-order change of the curvature function under omega + tau phi,
  // converted back into a form with omega.
  PolyForm deformation_curvature_derivative(const PolyForm& phi) const;
  // First-order pullback of omega along the flow generated by s.
  PolyForm automorphism_deformation(const PolyForm& s) const;

 private:
  // Nonzero k x k minors by row mask: row -> [(column mask, det)].
  using MinorTable = std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, Poly>>>;
  const MinorTable& minors(bool inverse, int k) const;
  // Vector field components of the g_- part of the values of p.
  std::vector<std::map<std::uint32_t, Poly>> underlying_vectors(const PolyForm& p) const;

  const FiberAlgebra& fa_;
  PolyForm omega_;
  int truncation_;
  PolyMatrix m_;
  PolyMatrix s_;
  PolyForm kappa_;
  mutable std::mutex minor_mutex_;
  mutable std::map<std::pair<bool, int>, std::unique_ptr<MinorTable>> minor_cache_;
};

}  // namespace bggkit::flatmodel
