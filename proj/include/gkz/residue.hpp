#pragma once

#include "gkz/hypergeom.hpp"

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace gkz {

/// f1 = x1 + y1 t1^g1, f2 = x2 + y2 t2^g2, f3 = x3 + y3 t^alpha + z3 t^beta.
struct CayleySystem {
  long gamma1 = 1, gamma2 = 1;
  std::array<long, 2> alpha{1, 0}, beta{0, 1};

  // Throws PreconditionError naming the violated condition.
  void validate() const;
  IntMatrix matrix() const;
  Configuration configuration() const;
  static const std::vector<std::string> &labels(); // x1 y1 x2 y2 x3 y3 z3
  static CayleySystem f2();
};

// Variable indices in the fixed order.
enum CayleyVar : std::size_t { X1 = 0, Y1, X2, Y2, X3, Y3, Z3 };

struct SolvedPair {
  std::array<long, 2> m, nu;
};

struct ResidueSeriesResult {
  CayleySystem system;
  std::array<long, 3> c{1, 1, 1};
  std::array<long, 2> a{0, 0};
  // truncation: exponent of y3 plus exponent of z3 at most series.order
  TruncatedSeries series;
  std::vector<SolvedPair> pairs;     // of the c = (1,1,1) expansion
  std::vector<std::size_t> shifts;   // derivatives applied, in order

  // A * (-c, -a) for the system's Cayley matrix
  std::vector<Integer> degree() const;
};

ResidueSeriesResult residue_series(const CayleySystem &sys, std::array<long, 2> a, long order);

/// Series of R at the shifted degree from d/d(var) R(c, a) = -c_i R(c + e_i, a + s).
/// Shifts in y3, z3 lower the order by one. Requires order >= 1.
ResidueSeriesResult shift_c(const ResidueSeriesResult &r, std::size_t var);

/// c > 0 and a in the interior of c1 conv(A1) + c2 conv(A2) + c3 conv(A3).
bool euler_jacobi_test(const CayleySystem &sys, std::array<long, 3> c, std::array<long, 2> a);

using Point = std::array<long, 2>;
// Counterclockwise hull without collinear points.
std::vector<Point> convex_hull(std::vector<Point> pts);
std::vector<Point> minkowski_polygon(const CayleySystem &sys, std::array<long, 3> c);

enum class ResiduePair { P12, P13, P23 };

struct ResidueOracleResult {
  std::complex<double> value;
  std::size_t points = 0;
};

/// Sum of local residues of t^a / (t1 t2 f1 f2 f3) over the common torus
/// zeros of the chosen pair, c = (1,1,1). Throws PreconditionError on a
/// near-degenerate Jacobian or a nongeneric zero set.
ResidueOracleResult numeric_residue_oracle(const CayleySystem &sys, std::array<long, 2> a, ResiduePair pair,
                                           const std::vector<std::complex<double>> &params);

/// Closed forms R12, R1, R2, R3 (degree (-1,-1,-1,0,0)) and R_112_11.
std::map<std::string, RationalFunction> f2_fixtures();

} // namespace gkz
