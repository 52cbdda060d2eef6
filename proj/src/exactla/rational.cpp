#include "bggkit/exactla/rational.hpp"

#include <sstream>

namespace bggkit::exactla {

bool is_zero(const QVector& v) {
  for (const auto& q : v) {
    if (sgn(q) != 0) return false;
  }
  return true;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const QVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ')';
  return os.str();
}

Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

Integer common_denominator(const QVector& v) {
  Integer l = 1;
  for (const auto& q : v) {
    if (q.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  return l;
}

QVector primitive(const QVector& v) {
  Integer den = common_denominator(v);
  Integer g = 0;
  for (const auto& q : v) {
    Integer n = Integer(q.get_num() * (den / q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return v;
  QVector out(v.size());
  int lead = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = Rational(Integer(v[i].get_num() * (den / v[i].get_den())), g);
    if (lead == 0) lead = sgn(out[i]);
  }
  if (lead < 0) {
    for (auto& q : out) q = -q;
  }
  return out;
}

}  // namespace bggkit::exactla
