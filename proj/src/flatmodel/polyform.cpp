#include "bggkit/flatmodel/polyform.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace bggkit::flatmodel {

namespace {

int clamp_precision(long p) { return p >= kExact ? kExact : static_cast<int>(p); }

void check_precision(int p) {
  if (p < 0) throw TruncationOverflow("polynomial precision exhausted: raise the truncation bound");
}

void truncate(Poly& p, int d, bool* dropped = nullptr) {
  for (auto it = p.terms.begin(); it != p.terms.end();) {
    if (it->first.degree() > d) {
      if (dropped) *dropped = true;
      it = p.terms.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace

int Monomial::degree() const {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += e[i];
  return d;
}

Monomial Monomial::var(int i) {
  Monomial m;
  m.e[i] = 1;
  return m;
}

Monomial Monomial::tau_unit() {
  Monomial m;
  m.e[15] = 1;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < 16; ++i) m.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
  return m;
}

Poly Poly::constant(const Rational& c) {
  Poly p;
  p.add(Monomial{}, c);
  return p;
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  p.add(m, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms) d = std::max(d, m.degree());
  return d;
}

int Poly::low_degree() const {
  int d = kExact;
  for (const auto& [m, c] : terms) d = std::min(d, m.degree());
  return d;
}

Rational Poly::constant_term() const { return coefficient(Monomial{}); }

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? Rational(0) : it->second;
}

void Poly::add(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0 || m.tau() > 1 || m.degree() > precision) return;
  auto [it, fresh] = terms.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

void Poly::set_precision(int p) {
  if (p >= precision) return;
  check_precision(p);
  precision = p;
  truncate(*this, p);
}

Poly& Poly::operator+=(const Poly& o) {
  set_precision(o.precision);
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  set_precision(o.precision);
  for (const auto& [m, c] : o.terms) add(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, x] : terms) x *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [m, x] : p.terms) x = -x;
  return p;
}

int product_precision(const Poly& a, const Poly& b) {
  const long pa = a.precision, pb = b.precision;
  return clamp_precision(std::min(pa + b.low_degree(), pb + a.low_degree()));
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly p;
  p.precision = product_precision(a, b);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      if (ma.tau() + mb.tau() > 1 || ma.degree() + mb.degree() > p.precision) continue;
      p.add(ma * mb, ca * cb);
    }
  return p;
}

Poly Poly::derivative(int var) const {
  Poly p;
  if (precision != kExact) {
    check_precision(precision - 1);
    p.precision = precision - 1;
  }
  for (const auto& [m, c] : terms) {
    if (m.e[var] == 0) continue;
    Monomial d = m;
    --d.e[var];
    p.add(d, c * m.e[var]);
  }
  return p;
}

Poly Poly::tau_part(int order) const {
  Poly p;
  p.precision = precision;
  for (const auto& [m, c] : terms) {
    if (m.tau() != order) continue;
    Monomial d = m;
    d.e[15] = 0;
    p.add(d, c);
  }
  return p;
}

Poly Poly::at_origin() const {
  Poly p;
  for (const auto& [m, c] : terms)
    if (m.degree() == 0) p.add(m, c);
  return p;
}

std::string Poly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int i = 0; i < 16; ++i)
      if (m.e[i]) os << '*' << (i == 15 ? std::string("t") : "x" + std::to_string(i)) << '^' << int(m.e[i]);
  }
  return os.str();
}

void PolyForm::add(const FormKey& k, const Poly& p) {
  if (p.precision < precision) set_precision(p.precision);
  auto it = coeffs.find(k);
  if (it == coeffs.end()) {
    if (p.is_zero()) return;
    Poly q = p;
    q.set_precision(precision);
    if (!q.is_zero()) coeffs.emplace(k, std::move(q));
    return;
  }
  it->second += p;
  it->second.set_precision(precision);
  if (it->second.is_zero()) coeffs.erase(it);
}

void PolyForm::add(std::uint32_t mask, std::uint32_t value, const Monomial& m, const Rational& c) {
  Poly p;
  p.add(m, c);
  add(FormKey{mask, value}, p);
}

void PolyForm::set_precision(int p) {
  if (p >= precision) return;
  check_precision(p);
  precision = p;
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    it->second.set_precision(p);
    it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
  }
}

int PolyForm::max_poly_degree() const {
  int d = -1;
  for (const auto& [k, p] : coeffs) d = std::max(d, p.degree());
  return d;
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  if (o.degree != degree || o.rep != rep) throw std::invalid_argument("PolyForm: adding forms of different type");
  set_precision(o.precision);
  for (const auto& [k, p] : o.coeffs) add(k, p);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  if (o.degree != degree || o.rep != rep) throw std::invalid_argument("PolyForm: subtracting forms of different type");
  set_precision(o.precision);
  for (const auto& [k, p] : o.coeffs) add(k, -p);
  return *this;
}

PolyForm& PolyForm::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    coeffs.clear();
    return *this;
  }
  for (auto& [k, p] : coeffs) p *= c;
  return *this;
}

PolyForm PolyForm::tau_part(int order) const {
  PolyForm f(vars, degree, rep);
  f.precision = precision;
  for (const auto& [k, p] : coeffs) f.add(k, p.tau_part(order));
  return f;
}

PolyForm PolyForm::at_origin() const {
  PolyForm f(vars, degree, rep);
  for (const auto& [k, p] : coeffs) f.add(k, p.at_origin());
  return f;
}

std::string PolyForm::str() const {
  std::ostringstream os;
  for (const auto& [k, p] : coeffs) {
    os << (rep == Rep::Base ? "dx" : "e") << '{';
    for (int b : bits(k.mask)) os << b << ' ';
    os << "} v" << k.value << ": " << p.str() << '\n';
  }
  return os.str();
}

int popcount(std::uint32_t m) { return std::popcount(m); }

std::vector<int> bits(std::uint32_t m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int swaps = 0;
  for (int y : bits(b)) swaps += std::popcount(a >> (y + 1));
  return swaps % 2 ? -1 : 1;
}

std::vector<std::uint32_t> masks_of_size(int n, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

PolyForm exterior_derivative(const PolyForm& f) {
  if (f.rep != Rep::Base) throw std::invalid_argument("exterior_derivative: base representation expected");
  PolyForm out(f.vars, f.degree + 1, Rep::Base);
  if (f.precision != kExact) out.set_precision(f.precision - 1);
  for (const auto& [k, p] : f.coeffs)
    for (int b = 0; b < f.vars; ++b) {
      const std::uint32_t bit = 1u << b;
      const int s = wedge_sign(bit, k.mask);
      if (s == 0) continue;
      Poly dp = p.derivative(b);
      if (dp.is_zero()) continue;
      if (s < 0) dp = -dp;
      out.add(FormKey{k.mask | bit, k.value}, dp);
    }
  return out;
}

bool agree(const PolyForm& a, const PolyForm& b, int* precision) {
  PolyForm d = a;
  d -= b;
  if (precision) *precision = d.precision;
  return d.is_zero();
}

PolyMatrix PolyMatrix::identity(int n) {
  PolyMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = Poly::constant(1);
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix c(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      Poly s;
      bool any = false;
      for (int k = 0; k < a.n; ++k) {
        if (a(i, k).is_zero() && a(i, k).precision == kExact) continue;
        if (b(k, j).is_zero() && b(k, j).precision == kExact) continue;
        s += a(i, k) * b(k, j);
        any = true;
      }
      if (any) c(i, j) = std::move(s);
    }
  return c;
}

int PolyMatrix::precision() const {
  int p = kExact;
  for (const auto& e : entries) p = std::min(p, e.precision);
  return p;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix neumann_inverse(const PolyMatrix& m, int max_degree) {
  const int n = m.n;
  PolyMatrix neg(n);  // -(m - I)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly e = m(i, j);
      if (i == j) e -= Poly::constant(1);
      for (const auto& [mono, c] : e.terms)
        if (mono.degree() == 0 && mono.tau() == 0)
          throw std::invalid_argument("neumann_inverse: matrix is not the identity at the origin");
      neg(i, j) = -e;
    }
  PolyMatrix sum = PolyMatrix::identity(n);
  PolyMatrix power = PolyMatrix::identity(n);
  bool dropped = false;
  for (int step = 0; step <= max_degree + 2; ++step) {
    power = power * neg;
    for (auto& e : power.entries) truncate(e, max_degree, &dropped);
    if (power.is_zero()) break;
    for (std::size_t i = 0; i < sum.entries.size(); ++i) sum.entries[i] += power.entries[i];
  }
  if (!power.is_zero()) dropped = true;
  if (dropped)
    for (auto& e : sum.entries) e.set_precision(std::min(e.precision, max_degree));
  return sum;
}

}  // namespace bggkit::flatmodel
