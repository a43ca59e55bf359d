#pragma once

#include "gkz/configuration.hpp"
#include "gkz/laurent.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

/// N / prod q_i^{k_i} with N a Laurent polynomial and each base q_i a
/// polynomial without monomial content whose lex-leading coefficient is 1.
/// Only monomial content is cancelled; equality is decided on the numerator
/// of the difference.
class RationalFunction {
public:
  struct Factor {
    LaurentPolynomial base;
    unsigned exp = 1;
  };

  explicit RationalFunction(std::size_t nvars = 0) : num_(nvars) {}
  RationalFunction(LaurentPolynomial numerator); // NOLINT: polynomials are rational functions
  RationalFunction(LaurentPolynomial numerator, const LaurentPolynomial &denominator);

  std::size_t nvars() const { return num_.nvars(); }
  const LaurentPolynomial &numerator() const { return num_; }
  const std::vector<Factor> &factors() const { return factors_; }
  // Expanded product of the factors (1 when there are none).
  LaurentPolynomial denominator() const;
  bool is_zero() const { return num_.is_zero(); }

  // Multiply the denominator by q^k.
  RationalFunction &divide_by(const LaurentPolynomial &q, unsigned k = 1);

  RationalFunction derivative(std::size_t var) const;
  bool depends_on(std::size_t var) const;

  RationalFunction &operator+=(const RationalFunction &o);
  RationalFunction &operator-=(const RationalFunction &o);
  RationalFunction &operator*=(const RationalFunction &o);
  RationalFunction &operator*=(const Rational &c);
  RationalFunction operator-() const;
  friend RationalFunction operator+(RationalFunction a, const RationalFunction &b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction &b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction &b) { return a *= b; }
  friend RationalFunction operator*(RationalFunction a, const Rational &c) { return a *= c; }
  friend bool operator==(const RationalFunction &a, const RationalFunction &b);

  // Numerator of this function over the given denominator factors, which
  // must contain every factor of *this with at least its exponent.
  LaurentPolynomial numerator_over(const std::vector<Factor> &common) const;

  std::complex<double> evaluate(const std::vector<std::complex<double>> &x) const;
  std::string to_string(const std::vector<std::string> &names = {}) const;

private:
  LaurentPolynomial num_;
  std::vector<Factor> factors_;
};

// Least common multiple of the factor lists (maximal exponents per base).
std::vector<RationalFunction::Factor> common_factors(const std::vector<RationalFunction> &fs);

/// Exact rank of the Q-span of the functions.
std::size_t linear_rank(const std::vector<RationalFunction> &fs);

/// Normally ordered operator sum_k c_k x^{u_k} d^{v_k}.
class DifferentialOperator {
public:
  struct Term {
    Rational coeff;
    Exponent x;              // may be negative
    std::vector<unsigned> d; // derivative multi-index
  };

  explicit DifferentialOperator(std::size_t nvars = 0) : nvars_(nvars) {}
  static DifferentialOperator euler(const std::vector<Integer> &row, const Rational &alpha);
  // d^{nu+} - d^{nu-}
  static DifferentialOperator toric(const std::vector<Integer> &nu);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term> &terms() const { return terms_; }
  void add_term(const Rational &c, const Exponent &x, const std::vector<unsigned> &d);

  DifferentialOperator &operator+=(const DifferentialOperator &o);
  DifferentialOperator &operator*=(const Rational &c);
  friend bool operator==(const DifferentialOperator &a, const DifferentialOperator &b);

  std::string to_string(const std::vector<std::string> &names = {}) const;

  // "euler i" or "toric nu=(...)"; informational.
  std::string origin;

private:
  std::size_t nvars_;
  std::vector<Term> terms_; // descending in (d, x), no zero coefficients
};

RationalFunction apply_operator(const DifferentialOperator &op, const RationalFunction &f);
// d^v f
RationalFunction iterated_derivative(const RationalFunction &f, const std::vector<unsigned> &v);

/// d Euler operators followed by the toric operators d^{nu+} - d^{nu-} for
/// nu = B lambda, |lambda|_inf <= bound, one per pair +-nu.
std::vector<DifferentialOperator> hypergeometric_generators(const Configuration &A,
                                                            const std::vector<Integer> &alpha,
                                                            unsigned bound);

struct AnnihilationReport {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> failures; // origin of every operator not killing f
};

AnnihilationReport annihilation_check(const Configuration &A, const std::vector<Integer> &alpha,
                                      const RationalFunction &f, unsigned bound = 3);

struct StabilityReport {
  bool stable_up_to_bound = true;
  unsigned bound = 0;
  std::optional<std::vector<unsigned>> killing_derivative;
};

// Breadth-first over |v| = 1..bound, earlier variables first within a degree; the
// first v with d^v f = 0 is reported.
StabilityReport stability_check(const RationalFunction &f, unsigned bound);

/// Truncated Laurent series. Terms have weight(u) <= offset + order.
struct TruncatedSeries {
  std::size_t nvars = 0;
  std::map<Exponent, Rational> terms;
  Weight weight;  // weight actually used (after any tie-break)
  long order = 0; // in units of `weight`
  long offset = 0;
  bool perturbed = false;

  LaurentPolynomial to_polynomial() const;
  std::complex<double> evaluate(const std::vector<std::complex<double>> &x) const;
  bool empty() const { return terms.empty(); }
};

enum class TieBreak { Perturb, Strict };

/// Expansion of f at the w-minimal vertex of every denominator factor,
/// truncated at relative weight `order`: keeps u with
/// w(u) <= min_w(N) - min_w(denominator) + order.
/// With ties, Perturb replaces w by K*w + t (t a lexicographic tie-break)
/// and order by K*order; Strict throws PreconditionError.
TruncatedSeries laurent_expand(const RationalFunction &f, const Weight &w, long order,
                               TieBreak policy = TieBreak::Perturb);

// The w-minimal terms of q, as exponents.
std::vector<Exponent> minimizing_terms(const LaurentPolynomial &q, const Weight &w);

} // namespace gkz
