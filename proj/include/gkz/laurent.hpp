#pragma once

#include "gkz/rational.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace gkz {

using Exponent = std::vector<int>;
using Weight = std::vector<long>;

long weight_of(const Exponent &e, const Weight &w);

/// Sparse multivariate Laurent polynomial with rational coefficients.
/// Terms are kept in a lexicographically ordered map; zero coefficients are
/// never stored.
class LaurentPolynomial {
public:
  explicit LaurentPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}
  static LaurentPolynomial constant(std::size_t nvars, const Rational &c);
  static LaurentPolynomial monomial(const Exponent &e, const Rational &c = 1);
  static LaurentPolynomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rational> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(const Exponent &e, const Rational &c);
  Rational coeff(const Exponent &e) const;

  LaurentPolynomial &operator+=(const LaurentPolynomial &o);
  LaurentPolynomial &operator-=(const LaurentPolynomial &o);
  LaurentPolynomial &operator*=(const LaurentPolynomial &o);
  LaurentPolynomial &operator*=(const Rational &c);
  LaurentPolynomial operator-() const;

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial &b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial &b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial &a, const LaurentPolynomial &b);
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational &c) { return a *= c; }
  friend LaurentPolynomial operator*(const Rational &c, LaurentPolynomial a) { return a *= c; }
  friend bool operator==(const LaurentPolynomial &a, const LaurentPolynomial &b) {
    return a.terms_ == b.terms_;
  }

  LaurentPolynomial pow(unsigned k) const;
  LaurentPolynomial derivative(std::size_t var) const;
  // Multiplication by the monomial x^e.
  LaurentPolynomial shifted(const Exponent &e) const;
  bool depends_on(std::size_t var) const;

  // Componentwise minimum of the exponents (the monomial content); zero
  // vector for the zero polynomial.
  Exponent min_exponents() const;
  // Lexicographically greatest term.
  std::pair<Exponent, Rational> leading_term() const;
  long min_weight(const Weight &w) const;

  std::complex<double> evaluate(const std::vector<std::complex<double>> &x) const;
  Rational evaluate(const std::vector<Rational> &x) const;

  // Human-readable form; variables default to x1..xn.
  std::string to_string(const std::vector<std::string> &names = {}) const;

private:
  std::size_t nvars_;
  std::map<Exponent, Rational> terms_;
};

} // namespace gkz
