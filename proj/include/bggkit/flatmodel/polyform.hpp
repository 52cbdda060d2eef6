#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bggkit/exactla/rational.hpp"

namespace bggkit::flatmodel {

using exactla::Rational;

constexpr int kMaxVars = 15;
// Precision of data that is an honest polynomial.
constexpr int kExact = std::numeric_limits<int>::max() / 4;

// Raised when a result would need coefficients beyond the available precision.
class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exponents of x_0..x_14 and of a first-order parameter tau (slot 15, tau^2 = 0).
struct Monomial {
  std::array<std::uint8_t, 16> e{};

  int degree() const;
  int tau() const { return e[15]; }
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  static Monomial var(int i);
  static Monomial tau_unit();
  friend Monomial operator*(const Monomial& a, const Monomial& b);
};

// Polynomial in the coordinates (and tau), exact in every x-degree up to
// `precision`.  Terms above the precision are dropped, never kept as if exact.
class Poly {
 public:
  std::map<Monomial, Rational> terms;
  int precision = kExact;

  Poly() = default;
  static Poly constant(const Rational& c);
  static Poly monomial(const Monomial& m, const Rational& c = 1);

  bool is_zero() const { return terms.empty(); }
  int degree() const;      // -1 for zero
  int low_degree() const;  // kExact for zero
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  void add(const Monomial& m, const Rational& c);
  void set_precision(int p);  // lowers only; drops terms above

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }

  Poly derivative(int var) const;
  // Coefficient of tau^order, with tau removed.
  Poly tau_part(int order) const;
  // Value at x = 0 (tau kept).
  Poly at_origin() const;

  std::string str() const;
};

// Products keep precision min(p_a + low_b, p_b + low_a).
int product_precision(const Poly& a, const Poly& b);

enum class Rep { Base, Frame };

// (coform mask, value index).  In base representation bit b of the mask is
// dx_b; in frame representation it is the dual of the b-th g_- basis vector.
struct FormKey {
  std::uint32_t mask = 0;
  std::uint32_t value = 0;
  auto operator<=>(const FormKey&) const = default;
  bool operator==(const FormKey&) const = default;
};

// Polynomial r-form on g_- with values in g, coefficients in `coeffs`.
class PolyForm {
 public:
  int vars = 0;
  int degree = 0;
  Rep rep = Rep::Base;
  int precision = kExact;
  std::map<FormKey, Poly> coeffs;

  PolyForm() = default;
  PolyForm(int vars, int degree, Rep rep = Rep::Base) : vars(vars), degree(degree), rep(rep) {}

  bool is_zero() const { return coeffs.empty(); }
  void add(const FormKey& k, const Poly& p);
  void add(std::uint32_t mask, std::uint32_t value, const Monomial& m, const Rational& c);
  void set_precision(int p);
  int max_poly_degree() const;

  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  PolyForm& operator*=(const Rational& c);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(PolyForm a, const Rational& c) { return a *= c; }

  PolyForm tau_part(int order) const;
  PolyForm at_origin() const;
  std::string str() const;
};

int popcount(std::uint32_t m);
std::vector<int> bits(std::uint32_t m);
// Sign of dx^A ^ dx^B relative to the sorted wedge; 0 when A and B overlap.
int wedge_sign(std::uint32_t a, std::uint32_t b);
// All masks with k bits among n.
std::vector<std::uint32_t> masks_of_size(int n, int k);

// Exterior derivative of a base-representation form.
PolyForm exterior_derivative(const PolyForm& f);

// True when a - b vanishes in every degree both know exactly; `precision`
// receives the degree up to which the comparison holds.
bool agree(const PolyForm& a, const PolyForm& b, int* precision = nullptr);

// Square matrix of polynomials.
struct PolyMatrix {
  int n = 0;
  std::vector<Poly> entries;

  PolyMatrix() = default;
  explicit PolyMatrix(int n) : n(n), entries(static_cast<std::size_t>(n) * n) {}
  static PolyMatrix identity(int n);
  Poly& operator()(int r, int c) { return entries[static_cast<std::size_t>(r) * n + c]; }
  const Poly& operator()(int r, int c) const { return entries[static_cast<std::size_t>(r) * n + c]; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  int precision() const;
  bool is_zero() const;
};

// Inverse of I + N with N(0) = 0 by the Neumann series.  Exact when the
// series terminates within `max_degree`, otherwise truncated there.
PolyMatrix neumann_inverse(const PolyMatrix& m, int max_degree);

}  // namespace bggkit::flatmodel
