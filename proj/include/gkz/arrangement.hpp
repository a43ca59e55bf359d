#pragma once

#include "gkz/configuration.hpp"
#include "gkz/hypergeom.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

using LatticePoint = std::array<long, 2>;

/// Lines H_j = {lambda : <b_j, lambda> = -v_j} in the plane, oriented by b_j.
struct Arrangement {
  IntMatrix A; // d x n
  IntMatrix B; // n x 2, A B = 0
  std::vector<long> v;

  Arrangement(IntMatrix A, IntMatrix B, std::vector<long> v);
  // v is some integer solution of A v = degree.
  static Arrangement from_degree(IntMatrix A, IntMatrix B, const std::vector<Integer> &degree);

  std::size_t n() const { return B.rows(); }
  std::vector<Integer> degree() const; // A v
  long pairing(std::size_t j, const LatticePoint &l) const;
  // -1, 0, +1 per line: the side of H_j containing l
  std::vector<int> signs(const LatticePoint &l) const;
  // Largest |coordinate| over all pairwise intersection points (ceil).
  long vertex_radius() const;
};

std::optional<std::vector<Integer>> integer_solution(const IntMatrix &A, const std::vector<Integer> &rhs);

IndexSet negative_support(const Arrangement &arr, const LatticePoint &l);

struct Cell {
  IndexSet support;
  LatticePoint sample{}; // smallest max-norm, then lexicographic, within the box
  bool bounded = false;
};

enum class CellSemantics {
  Chambers,     // lattice points off every line
  LatticePoints // every lattice point
};

struct MinimalCellSet {
  std::vector<Cell> cells; // ordered by sample
  long box = 0;            // half-width actually used
};

/// Inclusion-minimal negative supports of the lattice points in [-R, R]^2.
/// Throws InputError when R does not exceed the arrangement's vertices. With
/// auto_double, R is doubled until the supports agree at R and 2R.
MinimalCellSet minimal_cells(const Arrangement &arr, long R = 12, CellSemantics sem = CellSemantics::Chambers,
                             bool auto_double = true);

// Unbounded iff the recession cone of the closed face with these signs is
// nonzero.
bool face_bounded(const Arrangement &arr, const std::vector<int> &signs);
// The region of all points with this negative support.
bool cell_bounded(const Arrangement &arr, const IndexSet &support);

struct IsolatingDirection {
  std::array<long, 2> w{};
  std::size_t cell = 0; // index into the cell list
  long rho = 0;         // the cell's lattice points satisfy <w, l> > rho
};

/// Scans w in [-10, 10]^2 by growing max-norm, skipping directions parallel
/// to some b_j, for a w bounded below on exactly one of the cells. That
/// cell is then the only one inside a half-plane {<w, l> > rho}.
std::optional<IsolatingDirection> isolating_direction(const Arrangement &arr, const std::vector<Cell> &cells);

/// The unique lambda with u = v + B lambda.
LatticePoint map_exponent(const IntMatrix &A, const IntMatrix &B, const std::vector<long> &v, const Exponent &u);

struct SupportCellResult {
  std::optional<Cell> cell;
  IndexSet support_union;
  std::vector<IndexSet> supports_found;
  std::string diagnostic;
};

/// Union of the negative supports of the series exponents, matched against
/// the minimal supports of all lattice points.
SupportCellResult series_support_cell(const Arrangement &arr, const TruncatedSeries &series, long R = 12);

} // namespace gkz
