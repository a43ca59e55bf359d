#include "gkz/residue.hpp"

#include "gkz/classify.hpp"
#include "gkz/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gkz {

namespace {

long cross(const Point &o, const Point &a, const Point &b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

using cplx = std::complex<double>;

cplx mono(cplx t1, cplx t2, long e1, long e2) {
  return std::pow(t1, static_cast<int>(e1)) * std::pow(t2, static_cast<int>(e2));
}

std::vector<cplx> binomial_roots(cplx x, cplx y, long gamma) {
  cplx w = -x / y;
  double r = std::pow(std::abs(w), 1.0 / static_cast<double>(gamma));
  double th = std::arg(w);
  std::vector<cplx> out;
  for (long k = 0; k < gamma; ++k)
    out.push_back(std::polar(r, (th + 2 * std::numbers::pi * static_cast<double>(k)) / static_cast<double>(gamma)));
  return out;
}

cplx horner(const std::vector<cplx> &c, cplx t, cplx *deriv) {
  cplx v = 0, d = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    d = d * t + v;
    v = v * t + c[k];
  }
  if (deriv)
    *deriv = d;
  return v;
}

// Nonzero roots of sum_k c_k t^{lo + k}; coefficient list indexed by k.
std::vector<cplx> laurent_roots(std::vector<cplx> c) {
  double scale = 0;
  for (auto z : c)
    scale = std::max(scale, std::abs(z));
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale)
    c.pop_back();
  if (c.empty())
    throw PreconditionError("trinomial vanishes identically on a component of the binomial zero set");
  std::size_t skip = 0;
  while (skip < c.size() && std::abs(c[skip]) <= 1e-14 * scale)
    ++skip;
  c.erase(c.begin(), c.begin() + static_cast<long>(skip));
  std::size_t D = c.size() - 1;
  if (D == 0)
    return {};
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<long>(D), static_cast<long>(D));
  for (std::size_t i = 1; i < D; ++i)
    M(static_cast<long>(i), static_cast<long>(i - 1)) = 1;
  for (std::size_t i = 0; i < D; ++i)
    M(static_cast<long>(i), static_cast<long>(D - 1)) = -c[i] / c[D];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  std::vector<cplx> roots;
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    cplx t = es.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      cplx d;
      cplx v = horner(c, t, &d);
      if (std::abs(d) == 0)
        break;
      t -= v / d;
    }
    cplx d;
    horner(c, t, &d);
    double size = 0;
    for (std::size_t k = 1; k < c.size(); ++k)
      size += static_cast<double>(k) * std::abs(c[k]) * std::pow(std::abs(t), static_cast<double>(k - 1));
    if (std::abs(d) <= 1e-7 * size)
      throw PreconditionError("common zeros are not simple");
    roots.push_back(t);
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-8 * (1 + std::abs(roots[i])))
        throw PreconditionError("common zeros are not simple");
  return roots;
}

// f3 restricted to t_fixed, as coefficients in the free variable (index 0
// for t1, 1 for t2).
std::vector<cplx> f3_in(const std::vector<cplx> &p, const CayleySystem &s, std::size_t free, cplx fixed,
                        long &lo) {
  std::size_t other = 1 - free;
  long ea = s.alpha[free], eb = s.beta[free];
  lo = std::min({0L, ea, eb});
  long hi = std::max({0L, ea, eb});
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1), 0);
  c[static_cast<std::size_t>(-lo)] += p[X3];
  c[static_cast<std::size_t>(ea - lo)] += p[Y3] * std::pow(fixed, static_cast<int>(s.alpha[other]));
  c[static_cast<std::size_t>(eb - lo)] += p[Z3] * std::pow(fixed, static_cast<int>(s.beta[other]));
  return c;
}

} // namespace

void CayleySystem::validate() const {
  if (gamma1 <= 0 || gamma2 <= 0)
    throw PreconditionError("gamma must be positive");
  if ((alpha[0] == 0 && alpha[1] == 0) || (beta[0] == 0 && beta[1] == 0))
    throw PreconditionError("alpha and beta must be nonzero");
  if (alpha[1] == 0 && beta[1] == 0)
    throw PreconditionError("alpha and beta are both multiples of e1");
  if (alpha[0] == 0 && beta[0] == 0)
    throw PreconditionError("alpha and beta are both multiples of e2");
}

IntMatrix CayleySystem::matrix() const { return cayley_matrix(gamma1, gamma2, alpha, beta); }

Configuration CayleySystem::configuration() const { return Configuration(matrix(), labels()); }

const std::vector<std::string> &CayleySystem::labels() {
  static const std::vector<std::string> names{"x1", "y1", "x2", "y2", "x3", "y3", "z3"};
  return names;
}

CayleySystem CayleySystem::f2() { return CayleySystem{1, 1, {1, 0}, {0, 1}}; }

std::vector<Integer> ResidueSeriesResult::degree() const {
  return {Integer(-c[0]), Integer(-c[1]), Integer(-c[2]), Integer(-a[0]), Integer(-a[1])};
}

ResidueSeriesResult residue_series(const CayleySystem &sys, std::array<long, 2> a, long order) {
  sys.validate();
  if (order < 0)
    throw InputError("negative truncation order");
  ResidueSeriesResult r;
  r.system = sys;
  r.a = a;
  r.series.nvars = 7;
  r.series.weight = {0, 0, 0, 0, 0, 1, 1};
  r.series.order = order;
  for (long m1 = 0; m1 <= order; ++m1)
    for (long m2 = 0; m1 + m2 <= order; ++m2) {
      long p1 = a[0] + m1 * sys.alpha[0] + m2 * sys.beta[0];
      long p2 = a[1] + m1 * sys.alpha[1] + m2 * sys.beta[1];
      if (p1 % sys.gamma1 != 0 || p2 % sys.gamma2 != 0)
        continue;
      long n1 = p1 / sys.gamma1, n2 = p2 / sys.gamma2;
      r.pairs.push_back({{m1, m2}, {n1, n2}});
      long s = m1 + m2 + n1 - 1 + n2 - 1;
      Rational coeff(binomial(static_cast<unsigned long>(m1 + m2), static_cast<unsigned long>(m1)));
      if (s % 2 != 0)
        coeff = -coeff;
      Exponent e{static_cast<int>(n1 - 1), static_cast<int>(-n1), static_cast<int>(n2 - 1), static_cast<int>(-n2),
                 static_cast<int>(-m1 - m2 - 1), static_cast<int>(m1), static_cast<int>(m2)};
      r.series.terms.emplace(e, coeff);
    }
  return r;
}

ResidueSeriesResult shift_c(const ResidueSeriesResult &r, std::size_t var) {
  if (var > Z3)
    throw InputError("shift variable out of range");
  if (r.series.order < 1)
    throw PreconditionError("truncation order exhausted");
  const auto &s = r.system;
  std::size_t ci = var / 2 < 2 ? var / 2 : 2;
  std::array<long, 2> da{0, 0};
  if (var == Y1)
    da = {s.gamma1, 0};
  else if (var == Y2)
    da = {0, s.gamma2};
  else if (var == Y3)
    da = s.alpha;
  else if (var == Z3)
    da = s.beta;
  ResidueSeriesResult out = r;
  out.series.terms.clear();
  Rational div = -Rational(r.c[ci]);
  for (const auto &[e, coeff] : r.series.terms) {
    if (e[var] == 0)
      continue;
    Exponent f = e;
    f[var] -= 1;
    out.series.terms.emplace(f, coeff * e[var] / div);
  }
  out.c[ci] += 1;
  out.a = {r.a[0] + da[0], r.a[1] + da[1]};
  if (var == Y3 || var == Z3)
    out.series.order -= 1;
  out.shifts.push_back(var);
  return out;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3)
    return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto &p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0)
      --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
      --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

std::vector<Point> minkowski_polygon(const CayleySystem &sys, std::array<long, 3> c) {
  std::vector<Point> A1{{0, 0}, {sys.gamma1, 0}}, A2{{0, 0}, {0, sys.gamma2}}, A3{{0, 0}, sys.alpha, sys.beta};
  std::vector<Point> sums;
  for (const auto &p : A1)
    for (const auto &q : A2)
      for (const auto &r : A3)
        sums.push_back({c[0] * p[0] + c[1] * q[0] + c[2] * r[0], c[0] * p[1] + c[1] * q[1] + c[2] * r[1]});
  return convex_hull(sums);
}

bool euler_jacobi_test(const CayleySystem &sys, std::array<long, 3> c, std::array<long, 2> a) {
  if (c[0] <= 0 || c[1] <= 0 || c[2] <= 0)
    return false;
  auto P = minkowski_polygon(sys, c);
  if (P.size() < 3)
    return false;
  for (std::size_t i = 0; i < P.size(); ++i)
    if (cross(P[i], P[(i + 1) % P.size()], a) <= 0)
      return false;
  return true;
}

ResidueOracleResult numeric_residue_oracle(const CayleySystem &sys, std::array<long, 2> a, ResiduePair pair,
                                           const std::vector<std::complex<double>> &p) {
  sys.validate();
  if (p.size() != 7)
    throw InputError("oracle needs 7 parameter values");
  const double g1 = static_cast<double>(sys.gamma1), g2 = static_cast<double>(sys.gamma2);
  auto f1 = [&](cplx t1) { return p[X1] + p[Y1] * std::pow(t1, static_cast<int>(sys.gamma1)); };
  auto f2 = [&](cplx t2) { return p[X2] + p[Y2] * std::pow(t2, static_cast<int>(sys.gamma2)); };
  auto f3 = [&](cplx t1, cplx t2) {
    return p[X3] + p[Y3] * mono(t1, t2, sys.alpha[0], sys.alpha[1]) + p[Z3] * mono(t1, t2, sys.beta[0], sys.beta[1]);
  };
  auto df1 = [&](cplx t1) { return g1 * p[Y1] * std::pow(t1, static_cast<int>(sys.gamma1 - 1)); };
  auto df2 = [&](cplx t2) { return g2 * p[Y2] * std::pow(t2, static_cast<int>(sys.gamma2 - 1)); };
  // partial derivatives of f3 and the sizes of their terms
  auto d3 = [&](cplx t1, cplx t2, std::size_t k, double &mag) {
    long ea = sys.alpha[k], eb = sys.beta[k];
    long a1 = sys.alpha[0] - (k == 0), a2 = sys.alpha[1] - (k == 1);
    long b1 = sys.beta[0] - (k == 0), b2 = sys.beta[1] - (k == 1);
    cplx u = static_cast<double>(ea) * p[Y3] * mono(t1, t2, a1, a2);
    cplx v = static_cast<double>(eb) * p[Z3] * mono(t1, t2, b1, b2);
    mag = std::abs(u) + std::abs(v);
    return u + v;
  };

  std::vector<std::array<cplx, 2>> pts;
  if (pair == ResiduePair::P12) {
    for (auto t1 : binomial_roots(p[X1], p[Y1], sys.gamma1))
      for (auto t2 : binomial_roots(p[X2], p[Y2], sys.gamma2))
        pts.push_back({t1, t2});
  } else if (pair == ResiduePair::P13) {
    for (auto t1 : binomial_roots(p[X1], p[Y1], sys.gamma1)) {
      long lo;
      auto c = f3_in(p, sys, 1, t1, lo);
      for (auto t2 : laurent_roots(c))
        pts.push_back({t1, t2});
    }
  } else {
    for (auto t2 : binomial_roots(p[X2], p[Y2], sys.gamma2)) {
      long lo;
      auto c = f3_in(p, sys, 0, t2, lo);
      for (auto t1 : laurent_roots(c))
        pts.push_back({t1, t2});
    }
  }

  ResidueOracleResult out;
  for (const auto &[t1, t2] : pts) {
    cplx J, third;
    double mag = 0, jm = 0;
    if (pair == ResiduePair::P12) {
      J = df1(t1) * df2(t2);
      jm = std::abs(J);
      mag = jm;
      third = f3(t1, t2);
    } else if (pair == ResiduePair::P13) {
      J = df1(t1) * d3(t1, t2, 1, jm);
      mag = std::abs(df1(t1)) * jm;
      third = f2(t2);
    } else {
      J = -df2(t2) * d3(t1, t2, 0, jm);
      mag = std::abs(df2(t2)) * jm;
      third = f1(t1);
    }
    if (std::abs(J) <= 1e-10 * mag || mag == 0)
      throw PreconditionError("near-degenerate Jacobian at a common zero");
    if (std::abs(third) <= 1e-12 * (1 + std::abs(p[X1]) + std::abs(p[X2]) + std::abs(p[X3])))
      throw PreconditionError("third polynomial vanishes at a common zero");
    out.value += mono(t1, t2, a[0], a[1]) / (t1 * t2 * third * J);
    ++out.points;
  }
  return out;
}

std::map<std::string, RationalFunction> f2_fixtures() {
  auto m = [](Exponent e, long c = 1) { return LaurentPolynomial::monomial(e, c); };
  LaurentPolynomial Q = m({0, 1, 0, 1, 1, 0, 0}) - m({1, 0, 0, 1, 0, 1, 0}) - m({0, 1, 1, 0, 0, 0, 1});
  std::map<std::string, RationalFunction> fx;
  fx.emplace("R12", RationalFunction(m({-1, 1, -1, 1, 0, 0, 0}), Q));
  fx.emplace("R1", RationalFunction(m({-1, 1, -1, 0, 0, 0, 0}), m({0, 1, 0, 0, 1, 0, 0}) - m({1, 0, 0, 0, 0, 1, 0})));
  fx.emplace("R2", RationalFunction(m({-1, 0, -1, 1, 0, 0, 0}), m({0, 0, 0, 1, 1, 0, 0}) - m({0, 0, 1, 0, 0, 0, 1})));
  fx.emplace("R3", RationalFunction(m({-1, 0, -1, 0, -1, 0, 0})));
  fx.emplace("R_112_11", RationalFunction(m({0, 1, 0, 1, 0, 0, 0})).divide_by(Q, 2));
  return fx;
}

} // namespace gkz
