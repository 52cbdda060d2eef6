#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace bggkit::exactla {

// GMP rationals are canonicalized after every arithmetic operation, so values
// are always in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

using QVector = std::vector<Rational>;

// num/den in lowest terms; the two-argument mpq_class constructor does not
// canonicalize on its own.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

bool is_zero(const QVector& v);

std::string to_string(const Rational& q);
std::string to_string(const QVector& v);

Rational dot(const QVector& a, const QVector& b);

// Least common multiple of all denominators; 1 for an empty vector.
Integer common_denominator(const QVector& v);

// Scale v so its entries are coprime integers with a positive leading entry.
QVector primitive(const QVector& v);

}  // namespace bggkit::exactla
