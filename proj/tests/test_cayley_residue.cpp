#include <doctest.h>

#include "gkz/errors.hpp"
#include "gkz/residue.hpp"

#include <random>

using namespace gkz;

namespace {

const Weight kW{0, 0, 0, 0, 0, 1, 1};

using cplx = std::complex<double>;

std::vector<Integer> image(const IntMatrix &A, const Exponent &u) {
  std::vector<Integer> r(A.rows(), 0);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      r[i] += A(i, j) * u[j];
  return r;
}

std::vector<cplx> random_point(std::mt19937 &rng, double x3_scale) {
  std::uniform_real_distribution<double> mod(0.6, 1.6), ang(0, 6.283185307179586);
  std::vector<cplx> p;
  for (int i = 0; i < 7; ++i)
    p.push_back(std::polar(mod(rng), ang(rng)));
  p[X3] *= x3_scale;
  return p;
}

} // namespace

TEST_CASE("CayleySystem invariants") {
  CHECK_NOTHROW(CayleySystem::f2().validate());
  CHECK_THROWS_AS((CayleySystem{0, 1, {1, 0}, {0, 1}}).validate(), PreconditionError);
  CHECK_THROWS_AS((CayleySystem{1, 1, {0, 0}, {0, 1}}).validate(), PreconditionError);
  CHECK_THROWS_AS((CayleySystem{1, 1, {1, 0}, {2, 0}}).validate(), PreconditionError);
  CHECK_THROWS_AS((CayleySystem{1, 1, {0, 3}, {0, -1}}).validate(), PreconditionError);
}

TEST_CASE("residue_series examples") {
  auto r = residue_series(CayleySystem::f2(), {0, 0}, 2);
  auto &t = r.series.terms;
  CHECK(t.size() == 6);
  CHECK(t.at({-1, 0, -1, 0, -1, 0, 0}) == 1);
  CHECK(t.at({0, -1, -1, 0, -2, 1, 0}) == 1);
  CHECK(t.at({-1, 0, 0, -1, -2, 0, 1}) == 1);
  CHECK(t.at({0, -1, 0, -1, -3, 1, 1}) == 2);
  for (const auto &[e, c] : t)
    CHECK(c > 0);

  // gamma1 = 2: exactly the even m1 survive
  CayleySystem g{2, 1, {1, 0}, {0, 1}};
  auto s = residue_series(g, {0, 0}, 7);
  std::size_t want = 0;
  for (long m1 = 0; m1 <= 7; ++m1)
    for (long m2 = 0; m1 + m2 <= 7; ++m2)
      if (m1 % 2 == 0)
        ++want;
  CHECK(s.pairs.size() == want);
  for (const auto &p : s.pairs)
    CHECK(p.m[0] % 2 == 0);

  CHECK(residue_series(CayleySystem{2, 1, {2, 0}, {0, 1}}, {1, 0}, 9).series.empty());
}

TEST_CASE("homogeneity and exponent pattern on random systems") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<long> g(1, 3), e(-2, 2), av(-3, 3);
  int done = 0;
  while (done < 60) {
    CayleySystem sys{g(rng), g(rng), {e(rng), e(rng)}, {e(rng), e(rng)}};
    try {
      sys.validate();
    } catch (const PreconditionError &) {
      continue;
    }
    ++done;
    std::array<long, 2> a{av(rng), av(rng)};
    auto r = residue_series(sys, a, 6);
    auto A = sys.matrix();
    for (const auto &[u, c] : r.series.terms)
      CHECK(image(A, u) == r.degree());
    for (const auto &p : r.pairs) {
      Exponent u{static_cast<int>(p.nu[0] - 1), static_cast<int>(-p.nu[0]), static_cast<int>(p.nu[1] - 1),
                 static_cast<int>(-p.nu[1]), static_cast<int>(-p.m[0] - p.m[1] - 1), static_cast<int>(p.m[0]),
                 static_cast<int>(p.m[1])};
      CHECK(r.series.terms.count(u) == 1);
    }
    // shifts keep homogeneity at the shifted degree
    for (std::size_t v = 0; v < 7; ++v) {
      auto s = shift_c(r, v);
      for (const auto &[u, c] : s.series.terms)
        CHECK(image(A, u) == s.degree());
    }
  }
}

TEST_CASE("residue series against the closed forms") {
  auto fx = f2_fixtures();
  auto sys = CayleySystem::f2();
  for (long N : {0L, 3L, 8L}) {
    auto r = residue_series(sys, {0, 0}, N);
    auto l = laurent_expand(fx.at("R12"), kW, N);
    CHECK_FALSE(l.perturbed);
    CHECK(l.offset == 0);
    CHECK(r.series.terms == l.terms);
  }

  // R((1,1,2),(1,1)) two ways
  // shift_c already divides by -c3
  auto viaz = shift_c(residue_series(sys, {1, 0}, 7), Z3);
  CHECK(viaz.c == std::array<long, 3>{1, 1, 2});
  CHECK(viaz.a == std::array<long, 2>{1, 1});
  CHECK(viaz.series.order == 6);
  auto l = laurent_expand(fx.at("R_112_11"), kW, 6);
  CHECK(viaz.series.terms == l.terms);
  CHECK_FALSE(l.terms.empty());

  auto viay = shift_c(residue_series(sys, {0, 1}, 7), Y3);
  CHECK(viay.series.terms == shift_c(residue_series(sys, {1, 0}, 7), Z3).series.terms);

  // d/dx1: R((2,1,1),(0,0)) = -d/dx1 R12
  auto dx = shift_c(residue_series(sys, {0, 0}, 6), X1);
  CHECK(dx.c == std::array<long, 3>{2, 1, 1});
  auto closed = fx.at("R12").derivative(X1) * Rational(-1);
  CHECK(dx.series.terms == laurent_expand(closed, kW, 6).terms);

  auto zero = residue_series(sys, {0, 0}, 0);
  CHECK_THROWS_AS(shift_c(zero, X1), PreconditionError);
}

TEST_CASE("path independence of shifts") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<long> av(-2, 2);
  for (const auto &sys : {CayleySystem::f2(), CayleySystem{2, 1, {1, 1}, {0, 1}}, CayleySystem{1, 2, {1, 0}, {1, 1}}}) {
    std::array<long, 2> a{av(rng), av(rng)};
    // c3 + 1 and a + alpha + beta along two orders
    auto p = shift_c(shift_c(residue_series(sys, {a[0] - sys.alpha[0] - sys.beta[0], a[1] - sys.alpha[1] - sys.beta[1]}, 8), Y3), Z3);
    auto q = shift_c(shift_c(residue_series(sys, {a[0] - sys.alpha[0] - sys.beta[0], a[1] - sys.alpha[1] - sys.beta[1]}, 8), Z3), Y3);
    CHECK(p.series.terms == q.series.terms);
    // c1 + 1 via x1 then y1 against y1 then x1
    auto s = shift_c(shift_c(residue_series(sys, a, 5), X1), Y1);
    auto t = shift_c(shift_c(residue_series(sys, a, 5), Y1), X1);
    CHECK(s.series.terms == t.series.terms);
    CHECK(s.c == t.c);
    CHECK(s.a == t.a);
  }
}

TEST_CASE("Euler-Jacobi test") {
  auto sys = CayleySystem::f2();
  CHECK_FALSE(euler_jacobi_test(sys, {1, 1, 1}, {0, 0}));
  CHECK(euler_jacobi_test(sys, {1, 1, 2}, {1, 1}));
  CHECK(euler_jacobi_test(sys, {1, 1, 1}, {1, 1}));
  CHECK_FALSE(euler_jacobi_test(sys, {0, 1, 1}, {1, 1}));
  CHECK_FALSE(euler_jacobi_test(sys, {1, 1, 1}, {3, 0}));
  // polygon of F2 at c = (1,1,1): [0,1]^2 + triangle, brute-force interior
  auto P = minkowski_polygon(sys, {1, 1, 1});
  CHECK(P == std::vector<Point>{{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}});
  for (long x = -1; x <= 3; ++x)
    for (long y = -1; y <= 3; ++y) {
      bool inside = x > 0 && y > 0 && x + y < 3;
      CHECK(euler_jacobi_test(sys, {1, 1, 1}, {x, y}) == inside);
    }
}

TEST_CASE("numeric residue oracle") {
  auto sys = CayleySystem::f2();
  std::vector<cplx> ones(7, 1.0);
  auto r = numeric_residue_oracle(sys, {0, 0}, ResiduePair::P12, ones);
  CHECK(std::abs(r.value - cplx(-1.0)) < 1e-12);
  CHECK(r.points == 1);

  std::mt19937 rng(1);
  auto fx = f2_fixtures();
  int fails00 = 0;
  for (int k = 0; k < 5; ++k) {
    auto p = random_point(rng, 1.0);
    auto r12 = numeric_residue_oracle(sys, {1, 1}, ResiduePair::P12, p).value;
    auto r13 = numeric_residue_oracle(sys, {1, 1}, ResiduePair::P13, p).value;
    auto r23 = numeric_residue_oracle(sys, {1, 1}, ResiduePair::P23, p).value;
    CHECK(std::abs(r12 + r13) < 1e-9 * std::max(1.0, std::abs(r12)));
    CHECK(std::abs(r12 - r23) < 1e-9 * std::max(1.0, std::abs(r12)));
    // pair 12 at a = 0 is the closed form R12
    auto z12 = numeric_residue_oracle(sys, {0, 0}, ResiduePair::P12, p).value;
    CHECK(std::abs(z12 - fx.at("R12").evaluate(p)) < 1e-9 * std::abs(z12));
    auto z13 = numeric_residue_oracle(sys, {0, 0}, ResiduePair::P13, p).value;
    if (std::abs(z12 + z13) > 1e-6)
      ++fails00;
  }
  CHECK(fails00 == 5);

  std::vector<cplx> q(7, 1.0);
  q[X3] = 10.0;
  auto series = residue_series(sys, {0, 0}, 12).series;
  auto o = numeric_residue_oracle(sys, {0, 0}, ResiduePair::P12, q).value;
  CHECK(std::abs(series.evaluate(q) - o) < 1e-8);

  CHECK_THROWS_AS(numeric_residue_oracle(sys, {0, 0}, ResiduePair::P12, std::vector<cplx>(6, 1.0)), InputError);
  // f3 = x3 + y3 t2^2 + z3 t1 t2 with a double root in t2 over t1 = -1
  CayleySystem dbl{1, 1, {0, 2}, {1, 1}};
  std::vector<cplx> bad(7, 1.0);
  bad[Z3] = 2.0;
  CHECK_THROWS_AS(numeric_residue_oracle(dbl, {0, 0}, ResiduePair::P13, bad), PreconditionError);
  bad[Z3] = 3.0;
  CHECK(numeric_residue_oracle(dbl, {0, 0}, ResiduePair::P13, bad).points == 2);
}

TEST_CASE("sign law against the oracle for other systems") {
  std::mt19937 rng(6);
  for (const auto &sys : {CayleySystem{2, 1, {1, 1}, {0, 1}}, CayleySystem{1, 2, {1, 0}, {1, -1}},
                          CayleySystem{3, 2, {1, 2}, {-1, 1}}, CayleySystem{2, 2, {1, 1}, {1, -1}}}) {
    for (std::array<long, 2> a : {std::array<long, 2>{0, 0}, std::array<long, 2>{1, -1}}) {
      auto s = residue_series(sys, a, 24);
      for (int k = 0; k < 3; ++k) {
        auto p = random_point(rng, 40.0);
        auto o = numeric_residue_oracle(sys, a, ResiduePair::P12, p).value;
        CHECK(std::abs(s.series.evaluate(p) - o) < 1e-8 * std::max(1.0, std::abs(o)));
      }
    }
  }
}

TEST_CASE("fixtures") {
  auto fx = f2_fixtures();
  CHECK(fx.size() == 5);
  std::vector<cplx> p{1.5, 0.5, 2.0, -1.0, 3.0, 0.25, 0.75};
  auto Qv = p[Y1] * p[Y2] * p[X3] - p[X1] * p[Y2] * p[Y3] - p[Y1] * p[X2] * p[Z3];
  CHECK(std::abs(fx.at("R12").evaluate(p) - p[Y1] * p[Y2] / (p[X1] * p[X2] * Qv)) < 1e-12);
  CHECK(std::abs(fx.at("R1").evaluate(p) - p[Y1] / (p[X1] * p[X2] * (p[Y1] * p[X3] - p[X1] * p[Y3]))) < 1e-12);
  CHECK(std::abs(fx.at("R2").evaluate(p) - p[Y2] / (p[X1] * p[X2] * (p[Y2] * p[X3] - p[X2] * p[Z3]))) < 1e-12);
  CHECK(std::abs(fx.at("R3").evaluate(p) - 1.0 / (p[X1] * p[X2] * p[X3])) < 1e-12);
  CHECK(std::abs(fx.at("R_112_11").evaluate(p) - p[Y1] * p[Y2] / (Qv * Qv)) < 1e-12);

  CHECK(linear_rank({fx.at("R12"), fx.at("R1"), fx.at("R2"), fx.at("R3")}) == 4);
  CHECK(linear_rank({fx.at("R12"), fx.at("R1"), fx.at("R1") * Rational(3) - fx.at("R12")}) == 2);
}

TEST_CASE("generators on truncated series") {
  auto sys = CayleySystem::f2();
  auto A = sys.configuration();
  const long N = 9;
  auto r = residue_series(sys, {0, 0}, N);
  RationalFunction S(r.series.to_polynomial());
  for (const auto &op : hypergeometric_generators(A, r.degree(), 1)) {
    auto out = apply_operator(op, S);
    if (op.origin.rfind("euler", 0) == 0) {
      CHECK(out.is_zero());
      continue;
    }
    long drop = 0;
    for (const auto &t : op.terms())
      drop = std::max<long>(drop, t.d[Y3] + t.d[Z3]);
    for (const auto &[u, c] : out.numerator().terms())
      CHECK(weight_of(u, kW) > N - drop);
  }
}
