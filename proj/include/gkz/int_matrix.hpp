#pragma once

#include "gkz/rational.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>> &rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> row(std::size_t r) const;
  std::vector<Integer> col(std::size_t c) const;
  IntMatrix transpose() const;
  // Submatrix made of the listed columns, in the given order.
  IntMatrix select_cols(const std::vector<std::size_t> &cols) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
  friend bool operator==(const IntMatrix &a, const IntMatrix &b) = default;

  std::string to_string() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

std::vector<Integer> operator*(const IntMatrix &a, const std::vector<Integer> &v);

struct HermiteForm {
  IntMatrix H; // H = U * M
  IntMatrix U; // unimodular
  std::size_t rank = 0;
};

/// Row-style Hermite normal form: pivots strictly positive and moving right
/// row by row, entries above each pivot reduced into [0, pivot), zero rows
/// at the bottom.
HermiteForm hermite_normal_form(const IntMatrix &M);

struct SmithForm {
  IntMatrix D; // D = U * M * V, diagonal with d1 | d2 | ...
  IntMatrix U, V;
  std::vector<Integer> invariants; // nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix &M);

std::size_t rank(const IntMatrix &M);
Integer determinant(const IntMatrix &M);

/// Z-basis of {v in Z^n : A v = 0}, returned as the columns of an n x m
/// matrix in canonical form (the transpose is in Hermite normal form).
IntMatrix kernel_basis(const IntMatrix &A);

/// Canonical basis of the column lattice of M: transpose of the nonzero rows
/// of HNF(M^T). Two matrices span the same column lattice iff this agrees.
IntMatrix column_lattice_hnf(const IntMatrix &M);

/// Index [saturation : L] of the column lattice L of M inside its
/// saturation (L_Q intersect Z^n), from the Smith invariants.
Integer saturation_index(const IntMatrix &M);

using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix to_rational(const IntMatrix &M);
// One solution of M x = b (free variables set to zero), or nullopt when the
// system is inconsistent.
std::optional<std::vector<Rational>> solve_rational(const RatMatrix &M, const std::vector<Rational> &b);
std::optional<RatMatrix> inverse_rational(const RatMatrix &M);

} // namespace gkz
