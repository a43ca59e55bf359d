#include <doctest.h>

#include "gkz/errors.hpp"
#include "gkz/hypergeom.hpp"

#include <chrono>
#include <random>

using namespace gkz;

namespace {

Configuration f2_A() {
  return Configuration(IntMatrix{{1, 1, 0, 0, 0, 0, 0},
                                 {0, 0, 1, 1, 0, 0, 0},
                                 {0, 0, 0, 0, 1, 1, 1},
                                 {0, 1, 0, 0, 0, 1, 0},
                                 {0, 0, 0, 1, 0, 0, 1}},
                       {"x1", "y1", "x2", "y2", "x3", "y3", "z3"});
}

LaurentPolynomial m(Exponent e, long c = 1) { return LaurentPolynomial::monomial(e, c); }

LaurentPolynomial Q() { return m({0, 1, 0, 1, 1, 0, 0}) - m({1, 0, 0, 1, 0, 1, 0}) - m({0, 1, 1, 0, 0, 0, 1}); }
RationalFunction R12() { return RationalFunction(m({-1, 1, -1, 1, 0, 0, 0}), Q()); }
RationalFunction R3() { return RationalFunction(m({-1, 0, -1, 0, -1, 0, 0})); }

std::vector<Integer> deg(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

std::vector<unsigned> unit(std::size_t n, std::size_t i, unsigned k = 1) {
  std::vector<unsigned> v(n, 0);
  v[i] = k;
  return v;
}

DifferentialOperator toric2(std::size_t n, std::size_t p1, std::size_t p2, std::size_t q1, std::size_t q2) {
  DifferentialOperator op(n);
  auto a = unit(n, p1), b = unit(n, q1);
  a[p2] += 1;
  b[q2] += 1;
  op.add_term(1, Exponent(n, 0), a);
  op.add_term(-1, Exponent(n, 0), b);
  return op;
}

struct RandomRF {
  std::mt19937 rng;
  explicit RandomRF(unsigned seed) : rng(seed) {}
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  LaurentPolynomial poly(std::size_t n, int lo, int hi, int terms) {
    LaurentPolynomial p(n);
    while (static_cast<int>(p.size()) < terms) {
      Exponent e(n);
      for (auto &x : e)
        x = pick(lo, hi);
      int c = pick(-3, 3);
      if (c != 0 && p.coeff(e) == 0)
        p.add_term(e, c);
    }
    return p;
  }
  RationalFunction rf(std::size_t n) {
    RationalFunction f(poly(n, -1, 2, pick(1, 3)));
    int k = pick(1, 2);
    for (int i = 0; i < k; ++i)
      f.divide_by(poly(n, 0, 2, pick(2, 3)), static_cast<unsigned>(pick(1, 2)));
    return f;
  }
};

} // namespace

TEST_CASE("rational function normalization") {
  // 1/(2 x1 x2 - 4 x1^2) stores (x2 - 2 x1) with content x1 moved up
  RationalFunction f(LaurentPolynomial::constant(2, 1), m({1, 1}, 2) - m({2, 0}, 4));
  REQUIRE(f.factors().size() == 1);
  CHECK(f.factors()[0].base.min_exponents() == Exponent{0, 0});
  CHECK(f.factors()[0].base.leading_term().second == 1);
  CHECK(f.evaluate({2.0, 3.0}).real() == doctest::Approx(1.0 / (12.0 - 16.0)));
  CHECK(RationalFunction(m({1, 0}), m({2, 0})) == RationalFunction(m({-1, 0})));
  CHECK_THROWS_AS(RationalFunction(m({0, 0}), LaurentPolynomial(2)), DivisionByZero);
  // (x1 - x2)/(x1 - x2) equals 1 even though no gcd is taken
  auto g = RationalFunction(m({1, 0}) - m({0, 1}), m({1, 0}) - m({0, 1}));
  CHECK(g == RationalFunction(LaurentPolynomial::constant(2, 1)));
}

TEST_CASE("generators") {
  auto A = f2_A();
  auto ops = hypergeometric_generators(A, deg({-1, -1, -1, 0, 0}), 1);
  auto has = [&](const DifferentialOperator &t) {
    DifferentialOperator neg = t;
    neg *= -1;
    return std::any_of(ops.begin(), ops.end(), [&](const auto &o) { return o == t || o == neg; });
  };
  CHECK(has(toric2(7, 0, 5, 1, 4)));
  CHECK(has(toric2(7, 2, 6, 3, 4)));
  for (const auto &o : ops)
    if (o.origin.rfind("toric", 0) == 0)
      CHECK(std::count_if(ops.begin(), ops.end(), [&](const auto &p) { return p == o; }) == 1);

  auto e0 = hypergeometric_generators(A, deg({-1, -1, -1, 0, 0}), 0);
  CHECK(e0.size() == 5);
  DifferentialOperator row4(7);
  row4.add_term(1, {0, 1, 0, 0, 0, 0, 0}, unit(7, 1));
  row4.add_term(1, {0, 0, 0, 0, 0, 1, 0}, unit(7, 5));
  CHECK(e0[3] == row4);
  CHECK(e0[3].to_string(A.labels) == "y1*dy1 + y3*dy3");
  CHECK_THROWS_AS(hypergeometric_generators(A, deg({1, 2}), 1), InputError);
  // 24 sign classes of nonzero lambda in [-3,3]^2
  CHECK(hypergeometric_generators(A, deg({0, 0, 0, 0, 0}), 3).size() == 5 + 24);
}

TEST_CASE("apply_operator examples") {
  DifferentialOperator dx1(7);
  dx1.add_term(1, Exponent(7, 0), unit(7, 0));
  CHECK(apply_operator(dx1, R3()) == RationalFunction(m({-2, 0, -1, 0, -1, 0, 0}, -1)));

  DifferentialOperator e(7);
  e.add_term(1, {1, 0, 0, 0, 0, 0, 0}, unit(7, 0));
  e.add_term(1, {0, 1, 0, 0, 0, 0, 0}, unit(7, 1));
  CHECK(apply_operator(e, R3()) == R3() * Rational(-1));

  CHECK(apply_operator(toric2(7, 0, 5, 1, 4), R12()).is_zero());
  CHECK(apply_operator(toric2(7, 2, 6, 3, 4), R12()).is_zero());
  CHECK_FALSE(apply_operator(toric2(7, 0, 6, 1, 4), R12()).is_zero());
}

TEST_CASE("annihilation examples") {
  auto A = f2_A();
  auto r = annihilation_check(A, deg({-1, -1, -1, 0, 0}), R12());
  CHECK(r.passed);
  CHECK(r.checked == 5 + 24);
  CHECK(annihilation_check(A, deg({-1, -1, -1, 0, 0}), R3()).passed);
  auto bad = annihilation_check(A, deg({0, 0, 0, 0, 0}), RationalFunction(m({-1, 0, 0, 0, 0, 0, 0})));
  CHECK_FALSE(bad.passed);
  REQUIRE_FALSE(bad.failures.empty());
  CHECK(bad.failures.front() == "euler 1");
}

TEST_CASE("stability examples") {
  auto s3 = stability_check(R3(), 6);
  CHECK_FALSE(s3.stable_up_to_bound);
  CHECK(s3.killing_derivative == unit(7, 1));

  auto one = stability_check(RationalFunction(LaurentPolynomial::constant(7, 1)), 3);
  CHECK_FALSE(one.stable_up_to_bound);
  CHECK(one.killing_derivative == unit(7, 0));

  // x1 + x2 dies only under a second derivative: d1 d1
  auto s = stability_check(RationalFunction(m({1, 0}) + m({0, 1})), 3);
  CHECK(s.killing_derivative == unit(2, 0, 2));
  // x1 x2: d1^2 first among degree two
  auto t = stability_check(RationalFunction(m({1, 1})), 3);
  CHECK(t.killing_derivative == unit(2, 0, 2));
  // x1^-1 x2^-1 is never killed
  CHECK(stability_check(RationalFunction(m({-1, -1})), 4).stable_up_to_bound);

  auto t0 = std::chrono::steady_clock::now();
  auto s12 = stability_check(R12(), 6);
  CHECK(s12.stable_up_to_bound);
  MESSAGE("R12 stability to bound 6: "
          << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s");
}

TEST_CASE("laurent_expand examples") {
  // 1/(1 - u - v)
  RationalFunction g(LaurentPolynomial::constant(2, 1), LaurentPolynomial::constant(2, 1) - m({1, 0}) - m({0, 1}));
  auto s = laurent_expand(g, {1, 1}, 6);
  CHECK_FALSE(s.perturbed);
  std::size_t count = 0;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; a + b <= 6; ++b) {
      ++count;
      // binom(a+b, a) by Pascal's rule
      std::vector<std::vector<long>> P(13, std::vector<long>(13, 0));
      for (int i = 0; i <= 12; ++i) {
        P[i][0] = 1;
        for (int j = 1; j <= i; ++j)
          P[i][j] = P[i - 1][j - 1] + (j < i ? P[i - 1][j] : 0);
      }
      CHECK(s.terms.at({a, b}) == Rational(P[a + b][a]));
    }
  CHECK(s.terms.size() == count);

  auto x = laurent_expand(RationalFunction(m({-1})), {1}, 5);
  CHECK(x.terms.size() == 1);
  CHECK(x.terms.at({-1}) == 1);

  // 1/(x + y): both terms minimize (1,1)
  RationalFunction h(LaurentPolynomial::constant(2, 1), m({1, 0}) + m({0, 1}));
  CHECK_THROWS_AS(laurent_expand(h, {1, 1}, 3, TieBreak::Strict), PreconditionError);
  auto p = laurent_expand(h, {1, 1}, 3);
  CHECK(p.perturbed);
  CHECK(p.weight != Weight{1, 1});
  auto lhs = (m({1, 0}) + m({0, 1})) * p.to_polynomial() - LaurentPolynomial::constant(2, 1);
  CHECK(lhs.min_weight(p.weight) > p.order);
}

TEST_CASE("laurent_expand contract on random functions") {
  RandomRF gen(3);
  int perturbed = 0, plain = 0;
  for (int t = 0; t < 150; ++t) {
    auto f = gen.rf(3);
    Weight w{gen.pick(0, 4), gen.pick(0, 4), gen.pick(0, 4)};
    long order = gen.pick(0, 4);
    auto s = laurent_expand(f, w, order);
    (s.perturbed ? perturbed : plain)++;
    auto P = f.numerator();
    auto D = f.denominator() * s.to_polynomial() - P;
    if (!D.is_zero())
      CHECK(D.min_weight(s.weight) > P.min_weight(s.weight) + s.order);
    for (const auto &[e, c] : s.terms)
      CHECK(weight_of(e, s.weight) <= s.offset + s.order);
  }
  CHECK(plain > 20);
  CHECK(perturbed > 5);
}

TEST_CASE("calculus properties") {
  RandomRF gen(11);
  for (int t = 0; t < 60; ++t) {
    auto f = gen.rf(3);
    auto g = gen.rf(3);
    std::size_t i = static_cast<std::size_t>(gen.pick(0, 2)), j = static_cast<std::size_t>(gen.pick(0, 2));
    CHECK(f.derivative(i).derivative(j) == f.derivative(j).derivative(i));
    // linearity in f and in the operator
    DifferentialOperator A(3), B(3);
    A.add_term(gen.pick(1, 3), {1, 0, 0}, unit(3, i));
    B.add_term(gen.pick(-3, -1), {0, -1, 0}, unit(3, j, 2));
    Rational c(gen.pick(1, 5), 2);
    CHECK(apply_operator(A, f * c + g) == apply_operator(A, f) * c + apply_operator(A, g));
    DifferentialOperator AB = A;
    AB += B;
    CHECK(apply_operator(AB, f) == apply_operator(A, f) + apply_operator(B, f));
  }
}

TEST_CASE("monomials: Euler consistency and toric operators") {
  auto A = f2_A();
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> e(-3, 3);
  auto gens = hypergeometric_generators(A, deg({0, 0, 0, 0, 0}), 1);
  for (int t = 0; t < 40; ++t) {
    Exponent u(7);
    for (auto &x : u)
      x = e(rng);
    std::vector<Integer> alpha(5, 0);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 7; ++j)
        alpha[i] += A.A(i, j) * u[j];
    RationalFunction f(m(u));
    for (const auto &op : hypergeometric_generators(A, alpha, 0))
      CHECK(apply_operator(op, f).is_zero());
    // toric: d^{nu+} x^u - d^{nu-} x^u against falling factorials
    for (std::size_t k = 5; k < gens.size(); ++k) {
      const auto &op = gens[k];
      LaurentPolynomial want(7);
      for (const auto &term : op.terms()) {
        Rational c = term.coeff;
        Exponent v = u;
        for (std::size_t j = 0; j < 7; ++j)
          for (unsigned s = 0; s < term.d[j]; ++s)
            c *= v[j]--;
        want.add_term(v, c);
      }
      CHECK(apply_operator(op, f) == RationalFunction(want));
    }
  }
}
