#pragma once

#include "gkz/configuration.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gkz {

struct ClassificationResult {
  // "a".."e" for seven vectors (and the a/b/c case tags for n = 4, 5, 6),
  // "i".."v" from classify_balanced7.
  std::string label;
  std::optional<Cocircuit> cocircuit; // type a
  Partition parts;                    // c, d, e, ii, iii; n = 5 c; n = 6 b, c
  // b / i: g with g.B = heptagon template (as multisets).
  // iii, iv, v: the normalizing map sending B to `canonical`.
  std::optional<Mat2> map;
  std::vector<Scalar> params;                // (lambda, mu) for iii/iv, lambda for ii, s for n = 6 b
  std::optional<bool> pair_line_has_vertex;  // e / ii
  std::optional<PlanarConfig> canonical;     // classify_balanced7 normal form
  std::vector<std::string> fired;            // every seven-vector branch whose test held
};

/// Heptagon template over Q[x]/(x^3 + x^2 - 2x - 1), counterclockwise.
PlanarConfig heptagon_template();
PlanarConfig heptagon_template(const FieldPtr &field);
// The template evaluated numerically at the three real roots of the cubic.
std::vector<PlanarConfig> heptagon_templates_numeric();

ClassificationResult classify(const PlanarConfig &B, std::size_t n);
ClassificationResult classify(const PlanarConfig &B);

ClassificationResult classify_balanced7(const PlanarConfig &B);

// Re-check the witness of a classification against B.
bool witness_holds(const PlanarConfig &B, const ClassificationResult &r);

/// Some g in GL(2) with {g b_i} = {c_k} as multisets, lexicographically
/// first over the candidate pairs, or nullopt.
std::optional<Mat2> gl2_equivalence(const PlanarConfig &B, const PlanarConfig &C);
bool same_multiset(const std::vector<Vec2> &a, const std::vector<Vec2> &b);

using IndexPair = std::pair<std::size_t, std::size_t>; // i < j
using PkPartition = std::vector<std::vector<IndexPair>>;

PkPartition pk_partition(const PlanarConfig &B);
// Indices sorted by angle in [0, 2pi) under the real embedding.
std::vector<std::size_t> counterclockwise_order(const PlanarConfig &B);

struct CayleyStructure {
  std::size_t r = 2;
  // Columns of A per group, in Cayley variable order: (x1, y1), (x2, y2),
  // (x3, y3, z3).
  std::vector<IndexSet> groups;
  std::vector<std::vector<std::array<long, 2>>> point_sets;
  long gamma1 = 0, gamma2 = 0;
  std::array<long, 2> alpha{}, beta{};
  // Original column for each of x1, y1, x2, y2, x3, y3, z3.
  std::vector<std::size_t> variable_columns;
  IntMatrix cayley_matrix;
  // Rational 5x5 T with T * A(:, variable_columns) = cayley_matrix.
  RatMatrix transform;
};

struct CayleyDetection {
  std::optional<CayleyStructure> structure;
  std::string diagnostic;
};

CayleyDetection essential_cayley(const Configuration &A);

// The Cayley matrix of the trinomial system with data (gamma, alpha, beta),
// columns (x1, y1, x2, y2, x3, y3, z3).
IntMatrix cayley_matrix(long gamma1, long gamma2, std::array<long, 2> alpha, std::array<long, 2> beta);

// Affine dimension of the Minkowski sum of the given point sets.
std::size_t minkowski_dimension(const std::vector<std::vector<std::array<long, 2>>> &sets);

} // namespace gkz
