#include <doctest.h>

#include "gkz/errors.hpp"
#include "gkz/int_matrix.hpp"
#include "gkz/number_field.hpp"
#include "gkz/scalar.hpp"

#include <random>

using namespace gkz;

namespace {

// Rational solve of B y = v (B full column rank) by Gauss-Jordan elimination.
// Returns false if v is outside the column space.
bool rational_coords(const IntMatrix &B, const std::vector<Integer> &v, std::vector<Rational> &y) {
  const std::size_t n = B.rows(), m = B.cols();
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      aug[i][j] = B(i, j);
    aug[i][m] = v[i];
  }
  std::size_t r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = r;
    while (p < n && aug[p][c] == 0)
      ++p;
    if (p == n)
      continue;
    std::swap(aug[p], aug[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][c] == 0)
        continue;
      Rational f = aug[i][c] / aug[r][c];
      for (std::size_t k = c; k <= m; ++k)
        aug[i][k] -= f * aug[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (aug[i][m] != 0)
      return false;
  y.assign(m, 0);
  for (std::size_t i = 0; i < r; ++i)
    y[piv[i]] = aug[i][m] / aug[i][piv[i]];
  return true;
}

FieldPtr hept() { return NumberField::heptagon(); }

NfElement nf(std::vector<long> c) {
  std::vector<Rational> q(c.begin(), c.end());
  return NfElement::from_polynomial(hept(), q);
}

} // namespace

TEST_CASE("hnf small fixtures") {
  auto id = hermite_normal_form(IntMatrix::identity(2));
  CHECK(id.H == IntMatrix::identity(2));
  CHECK(id.U == IntMatrix::identity(2));

  IntMatrix M{{2, 4}, {1, 3}};
  auto hf = hermite_normal_form(M);
  CHECK(hf.H == IntMatrix{{1, 1}, {0, 2}});
  CHECK(abs(determinant(hf.U)) == 1);
  CHECK(hf.U * M == hf.H);

  auto z = hermite_normal_form(IntMatrix(1, 1));
  CHECK(z.H == IntMatrix(1, 1));
  CHECK(z.U == IntMatrix{{1}});
  CHECK(z.rank == 0);
}

TEST_CASE("hnf random: unimodular, idempotent, row-lattice preserved") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(-5, 5), dim(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix M(dim(rng), dim(rng));
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j)
        M(i, j) = e(rng);
    auto hf = hermite_normal_form(M);
    REQUIRE(abs(determinant(hf.U)) == 1);
    REQUIRE(hf.U * M == hf.H);
    CHECK(hermite_normal_form(hf.H).H == hf.H);
    // pivots positive, entries above pivots reduced
    std::size_t c = 0;
    for (std::size_t r = 0; r < hf.rank; ++r) {
      while (hf.H(r, c) == 0)
        ++c;
      CHECK(hf.H(r, c) > 0);
      for (std::size_t i = 0; i < r; ++i) {
        CHECK(hf.H(i, c) >= 0);
        CHECK(hf.H(i, c) < hf.H(r, c));
      }
      for (std::size_t i = r + 1; i < hf.H.rows(); ++i)
        CHECK(hf.H(i, c) == 0);
    }
    CHECK(hf.rank == smith_normal_form(M).invariants.size());
  }
}

TEST_CASE("smith form divisibility chain") {
  IntMatrix M{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto sf = smith_normal_form(M);
  CHECK(sf.U * M * sf.V == sf.D);
  REQUIRE(sf.invariants.size() == 3);
  CHECK(sf.invariants[0] == 2);
  CHECK(sf.invariants[1] == 6);
  CHECK(sf.invariants[2] == 12);
}

TEST_CASE("kernel basis fixtures") {
  IntMatrix A{{1, 1, 0, 0, 0, 0, 0},
              {0, 0, 1, 1, 0, 0, 0},
              {0, 0, 0, 0, 1, 1, 1},
              {0, 1, 0, 0, 0, 1, 0},
              {0, 0, 0, 1, 0, 0, 1}};
  IntMatrix B{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, -1}, {1, 0}, {0, 1}};
  auto K = kernel_basis(A);
  CHECK((A * K).is_zero());
  CHECK(column_lattice_hnf(K) == column_lattice_hnf(B));

  auto K2 = kernel_basis(IntMatrix{{1, 1}});
  CHECK(column_lattice_hnf(K2) == IntMatrix{{1}, {-1}});

  auto K3 = kernel_basis(IntMatrix{{1, 1, 1}});
  CHECK(K3.transpose() == IntMatrix{{1, 0, -1}, {0, 1, -1}});
  CHECK(saturation_index(K3) == 1);

  auto K4 = kernel_basis(IntMatrix{{1, 0}, {0, 1}});
  CHECK(K4.cols() == 0);
}

TEST_CASE("kernel basis random: saturated, full rank") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(-5, 5), dd(1, 5), nn(1, 7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = nn(rng), d = std::min<std::size_t>(dd(rng), n);
    IntMatrix A(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j)
        A(i, j) = e(rng);
    auto B = kernel_basis(A);
    REQUIRE(B.rows() == n);
    CHECK((A * B).is_zero());
    CHECK(B.cols() == n - rank(A));
    CHECK(rank(B) == B.cols());
    if (B.cols() > 0)
      CHECK(saturation_index(B) == 1);
  }
}

TEST_CASE("kernel basis contains every small kernel vector") {
  // brute-force membership: integer kernel vectors in a box have integral
  // coordinates in the returned basis
  IntMatrix A{{2, 3, 5}, {1, -1, 4}};
  auto B = kernel_basis(A);
  int found = 0;
  for (int x = -30; x <= 30; ++x)
    for (int y = -30; y <= 30; ++y)
      for (int z = -30; z <= 30; ++z) {
        std::vector<Integer> v{x, y, z};
        auto Av = A * v;
        if (Av[0] != 0 || Av[1] != 0)
          continue;
        std::vector<Rational> c;
        REQUIRE(rational_coords(B, v, c));
        for (auto &q : c)
          CHECK(q.get_den() == 1);
        ++found;
      }
  CHECK(found > 1);
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{2, 0, 1}, {1, 3, 2}, {1, 1, 1}}) == 0 + 2 * (3 - 2) - 0 + 1 * (1 - 3));
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("rationals") {
  CHECK(to_string(make_rational(4, -6)) == "-2/3");
  CHECK(to_string(Rational(5)) == "5");
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK(binomial(6, 2) == 15);
}

TEST_CASE("heptagon field") {
  auto x = NfElement::generator(hept());
  CHECK(NfElement(hept(), 1).inverse() == NfElement(hept(), 1));
  CHECK(x.inverse() == nf({-2, 1, 1}));
  CHECK(x * nf({-2, 1, 1}) == NfElement(hept(), 1));
  CHECK(x * x * x == nf({1, 2, -1}));
  CHECK(nf({0, 0, 0, 1}) == nf({1, 2, -1}));
  CHECK_THROWS_AS(NfElement(hept(), 0).inverse(), DivisionByZero);
  CHECK(x.sign() == 1);
  CHECK(nf({-1, 1}).sign() == 1);  // x - 1 > 0
  CHECK(nf({-2, 1, 1}).sign() == 1); // 1/x > 0
  CHECK(nf({1, -1}).sign() == -1);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-9, 9), den(1, 5);
  auto sample = [&] {
    std::vector<Rational> c;
    for (int i = 0; i < 3; ++i)
      c.push_back(make_rational(e(rng), den(rng)));
    return NfElement::from_polynomial(hept(), c);
  };
  for (int t = 0; t < 200; ++t) {
    auto a = sample(), b = sample(), c = sample();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    if (!a.is_zero())
      CHECK(a * a.inverse() == NfElement(hept(), 1));
  }
}

TEST_CASE("scalar contexts") {
  Scalar q = Rational(1, 2);
  Scalar x = NfElement::generator(hept());
  Scalar r = q + x;
  CHECK(r.kind() == ScalarKind::NumberField);
  CHECK((r - x) == q);
  Scalar d = Scalar::numeric(0.25);
  CHECK((d + q).kind() == ScalarKind::Numeric);
  CHECK((d * 2) == Scalar::numeric(0.5));
  CHECK_THROWS_AS(d + x, ContextMismatch);
  auto other = NumberField::make({-2, 0, 1}, 1.414);
  Scalar s = NfElement::generator(other);
  CHECK_THROWS_AS(s * x, ContextMismatch);
  CHECK((s * s) == Scalar(2));
  CHECK_THROWS_AS(Scalar(0).inverse(), DivisionByZero);
  CHECK(Scalar::numeric(1e-12).is_zero());
}
