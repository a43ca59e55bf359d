#pragma once

#include "gkz/rational.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace gkz {

/// A simple algebraic number field Q[x]/(p(x)) with p monic, integral and
/// irreducible (irreducibility is the caller's responsibility), together
/// with a fixed real embedding x -> root used for sign decisions.
class NumberField {
public:
  // `minpoly` is constant-term first and must end with 1.
  NumberField(std::vector<Integer> minpoly, double real_root_hint);

  static std::shared_ptr<const NumberField> make(std::vector<Integer> minpoly,
                                                 double real_root_hint);

  /// Q[x]/(x^3 + x^2 - 2x - 1), embedded at x = 2cos(2pi/7) ~ 1.2470.
  static std::shared_ptr<const NumberField> heptagon();

  std::size_t degree() const { return minpoly_.size() - 1; }
  const std::vector<Integer> &minpoly() const { return minpoly_; }
  long double embedding() const { return root_; }

  bool same_as(const NumberField &other) const { return minpoly_ == other.minpoly_; }

private:
  std::vector<Integer> minpoly_;
  long double root_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class NfElement {
public:
  NfElement(FieldPtr field, const Rational &value);
  // Reduces an arbitrary-length coefficient list (constant first) mod p.
  static NfElement from_polynomial(FieldPtr field, std::vector<Rational> coeffs);
  static NfElement generator(FieldPtr field);

  const FieldPtr &field() const { return field_; }
  const std::vector<Rational> &coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  // Sign under the field's real embedding.
  int sign() const;
  long double to_long_double() const;

  NfElement inverse() const;

  NfElement &operator+=(const NfElement &o);
  NfElement &operator-=(const NfElement &o);
  NfElement &operator*=(const NfElement &o);
  NfElement &operator/=(const NfElement &o) { return *this *= o.inverse(); }
  NfElement operator-() const;

  friend NfElement operator+(NfElement a, const NfElement &b) { return a += b; }
  friend NfElement operator-(NfElement a, const NfElement &b) { return a -= b; }
  friend NfElement operator*(NfElement a, const NfElement &b) { return a *= b; }
  friend NfElement operator/(NfElement a, const NfElement &b) { return a /= b; }
  friend bool operator==(const NfElement &a, const NfElement &b);

  // Total order on representations (not the field order); for sorting only.
  friend bool repr_less(const NfElement &a, const NfElement &b);

  std::string to_string() const;

private:
  NfElement(FieldPtr field, std::vector<Rational> reduced, bool);
  void check_same_field(const NfElement &o) const;

  FieldPtr field_;
  std::vector<Rational> coeffs_;
};

// Polynomial helpers over Q, coefficient lists constant-term first.
namespace qpoly {
using Poly = std::vector<Rational>;
void trim(Poly &p);
Poly mul(const Poly &a, const Poly &b);
// a = q*b + r with deg r < deg b.
std::pair<Poly, Poly> divmod(Poly a, const Poly &b);
// Remainder of a modulo a nonzero b.
Poly rem(Poly a, const Poly &b);
} // namespace qpoly

} // namespace gkz
