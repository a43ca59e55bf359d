#pragma once

#include "gkz/int_matrix.hpp"
#include "gkz/laurent.hpp"
#include "gkz/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gkz {

using IndexSet = std::vector<std::size_t>; // sorted, 0-based
using Partition = std::vector<IndexSet>;   // parts ordered by smallest index

/// Integer point configuration given by the columns of A.
struct Configuration {
  IntMatrix A;
  std::vector<std::string> labels;

  explicit Configuration(IntMatrix a, std::vector<std::string> names = {});
  std::size_t d() const { return A.rows(); }
  std::size_t n() const { return A.cols(); }
};

/// Planar vector configuration b_1..b_n (the rows of a Gale dual).
/// All vectors share one scalar context.
class PlanarConfig {
public:
  PlanarConfig() = default;
  explicit PlanarConfig(std::vector<Vec2> vectors);
  static PlanarConfig from_rows(const IntMatrix &B);
  static PlanarConfig from_integers(const std::vector<std::array<long, 2>> &rows);
  // Numeric mode; the whole configuration is rescaled to unit max-norm.
  static PlanarConfig numeric(const std::vector<std::array<double, 2>> &rows);

  std::size_t size() const { return v_.size(); }
  const Vec2 &operator[](std::size_t i) const { return v_[i]; }
  const std::vector<Vec2> &vectors() const { return v_; }
  ScalarKind kind() const { return kind_; }
  FieldPtr field() const { return field_; }
  bool is_rational() const { return kind_ == ScalarKind::Rational; }

  // Integer rows when every entry is an integer.
  std::optional<IntMatrix> integer_rows() const;
  PlanarConfig transformed(const Mat2 &g) const;
  PlanarConfig subconfig(const IndexSet &idx) const;
  Vec2 sum(const IndexSet &idx) const;
  Vec2 sum() const;

private:
  std::vector<Vec2> v_;
  ScalarKind kind_ = ScalarKind::Rational;
  FieldPtr field_;
};

struct ValidationReport {
  bool nonconfluent = true;
  bool pyramid_free = true;
  bool distinct_dual = true;
  IndexSet zero_vectors;  // offending indices for pyramid_free
  IndexSet crowded_line;  // indices on a line holding >= n-2 vectors
  Vec2 vector_sum;
  // Present when A was supplied: (1,...,1) in the row span of A.
  std::optional<bool> ones_in_row_span;
  bool ok() const { return nonconfluent && pyramid_free && distinct_dual; }
  std::vector<std::string> failures() const;
};

ValidationReport validate(const PlanarConfig &B);
ValidationReport validate(const PlanarConfig &B, const IntMatrix &A);

struct Cocircuit {
  IndexSet indices;
  Vec2 direction;
};

// Lines through the origin, ordered by smallest member.
std::vector<Cocircuit> cocircuits(const PlanarConfig &B);
// The cocircuit containing index i.
Cocircuit cocircuit_of(const PlanarConfig &B, std::size_t i);

// {det(b_i, b_j) : i not in J}, i ascending.
std::vector<Scalar> circuit_dual(const PlanarConfig &B, const Cocircuit &J, std::size_t j);

// Multiset equal to its negation (greedy pairing; tolerance in numeric mode).
bool symmetric_multiset(const std::vector<Scalar> &values);

struct CocircuitStatus {
  bool balanced = false;
  bool splitting = false;
};

CocircuitStatus cocircuit_status(const PlanarConfig &B, const Cocircuit &J);
CocircuitStatus cocircuit_status(const PlanarConfig &B, const Cocircuit &J, std::size_t j);

struct Profile {
  bool uniform = false;
  bool balanced = false;
  bool nonconfluent = false;
  bool irreducible = false;
  std::vector<Partition> decompositions;
};

// Every set partition of {0..n-1} whose parts all sum to zero and which has
// at least `min_parts` parts; most parts first, then lexicographic.
std::vector<Partition> zero_sum_partitions(const PlanarConfig &B, std::size_t min_parts = 2);

bool is_uniform(const PlanarConfig &B);
bool is_balanced(const PlanarConfig &B);
bool is_irreducible(const PlanarConfig &B);
Profile profile(const PlanarConfig &B);

/// Binomial A-discriminant of the circuit A(I) in the variables x_1..x_n,
/// leading (lex) coefficient positive.
LaurentPolynomial circuit_discriminant(const PlanarConfig &B, const IndexSet &I);

// Primitive integer vector on the line of a rational vector, first nonzero
// entry positive.
std::vector<Integer> primitive_integer(const std::vector<Rational> &v);

} // namespace gkz
