#include "gkz/int_matrix.hpp"

#include "gkz/errors.hpp"

#include <sstream>
#include <utility>

namespace gkz {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_)
      throw InputError("ragged matrix literal");
    for (long v : r)
      data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i)
    I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>> &rows, std::size_t cols) {
  if (!rows.empty())
    cols = rows.front().size();
  IntMatrix M(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      M(r, c) = rows[r][c];
  }
  return M;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Integer> IntMatrix::col(std::size_t c) const {
  std::vector<Integer> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      T(c, r) = (*this)(r, c);
  return T;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t> &cols) const {
  IntMatrix S(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols.size(); ++k)
      S(r, k) = (*this)(r, cols[k]);
  return S;
}

bool IntMatrix::is_zero() const {
  for (const auto &v : data_)
    if (v != 0)
      return false;
  return true;
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols() != b.rows())
    throw InputError("matrix dimension mismatch in product");
  IntMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer &aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        p(i, j) += aik * b(k, j);
    }
  return p;
}

std::vector<Integer> operator*(const IntMatrix &a, const std::vector<Integer> &v) {
  if (a.cols() != v.size())
    throw InputError("matrix-vector dimension mismatch");
  std::vector<Integer> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      r[i] += a(i, k) * v[k];
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c)
      os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

// Row operation [ri; rj] <- [[s, t], [u, v]] [ri; rj] applied to M.
void mix_rows(IntMatrix &M, std::size_t ri, std::size_t rj, const Integer &s, const Integer &t,
              const Integer &u, const Integer &v) {
  for (std::size_t c = 0; c < M.cols(); ++c) {
    Integer a = M(ri, c), b = M(rj, c);
    M(ri, c) = s * a + t * b;
    M(rj, c) = u * a + v * b;
  }
}

void mix_cols(IntMatrix &M, std::size_t ci, std::size_t cj, const Integer &s, const Integer &t,
              const Integer &u, const Integer &v) {
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Integer a = M(r, ci), b = M(r, cj);
    M(r, ci) = s * a + t * b;
    M(r, cj) = u * a + v * b;
  }
}

void add_row_multiple(IntMatrix &M, std::size_t dst, std::size_t src, const Integer &f) {
  for (std::size_t c = 0; c < M.cols(); ++c)
    M(dst, c) += f * M(src, c);
}

void add_col_multiple(IntMatrix &M, std::size_t dst, std::size_t src, const Integer &f) {
  for (std::size_t r = 0; r < M.rows(); ++r)
    M(r, dst) += f * M(r, src);
}

void negate_row(IntMatrix &M, std::size_t r) {
  for (std::size_t c = 0; c < M.cols(); ++c)
    M(r, c) = -M(r, c);
}

struct Bezout {
  Integer g, s, t; // s*a + t*b = g >= 0
};

Bezout gcdext(const Integer &a, const Integer &b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

} // namespace

HermiteForm hermite_normal_form(const IntMatrix &M) {
  HermiteForm hf{M, IntMatrix::identity(M.rows()), 0};
  IntMatrix &H = hf.H;
  IntMatrix &U = hf.U;
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (std::size_t i = r + 1; i < H.rows(); ++i) {
      if (H(i, c) == 0)
        continue;
      Integer a = H(r, c), b = H(i, c);
      auto [g, s, t] = gcdext(a, b);
      Integer u = -b / g, v = a / g; // exact divisions
      mix_rows(H, r, i, s, t, u, v);
      mix_rows(U, r, i, s, t, u, v);
    }
    if (H(r, c) == 0)
      continue;
    if (H(r, c) < 0) {
      negate_row(H, r);
      negate_row(U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
      if (q != 0) {
        add_row_multiple(H, i, r, -q);
        add_row_multiple(U, i, r, -q);
      }
    }
    ++r;
  }
  hf.rank = r;
  return hf;
}

SmithForm smith_normal_form(const IntMatrix &M) {
  SmithForm sf{M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols()), {}};
  IntMatrix &D = sf.D;
  const std::size_t n = std::min(D.rows(), D.cols());
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pr = t, pc = t;
      for (std::size_t i = t; i < D.rows(); ++i)
        for (std::size_t j = t; j < D.cols(); ++j)
          if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pr, pc)))) {
            found = true;
            pr = i;
            pc = j;
          }
      if (!found)
        goto done;
      if (pr != t) {
        mix_rows(D, t, pr, 0, 1, 1, 0);
        mix_rows(sf.U, t, pr, 0, 1, 1, 0);
      }
      if (pc != t) {
        mix_cols(D, t, pc, 0, 1, 1, 0);
        mix_cols(sf.V, t, pc, 0, 1, 1, 0);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < D.rows(); ++i) {
        if (D(i, t) == 0)
          continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        add_row_multiple(D, i, t, -q);
        add_row_multiple(sf.U, i, t, -q);
        if (D(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < D.cols(); ++j) {
        if (D(t, j) == 0)
          continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        add_col_multiple(D, j, t, -q);
        add_col_multiple(sf.V, j, t, -q);
        if (D(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // divisibility: pull an offending row into the pivot row
      bool divides = true;
      for (std::size_t i = t + 1; i < D.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < D.cols(); ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            add_row_multiple(D, t, i, 1);
            add_row_multiple(sf.U, t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (D(t, t) < 0) {
      negate_row(D, t);
      negate_row(sf.U, t);
    }
  }
done:
  for (std::size_t t = 0; t < n; ++t)
    if (D(t, t) != 0)
      sf.invariants.push_back(D(t, t));
  return sf;
}

std::size_t rank(const IntMatrix &M) { return hermite_normal_form(M).rank; }

Integer determinant(const IntMatrix &M) {
  if (M.rows() != M.cols())
    throw InputError("determinant of a non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0)
    return 1;
  // Bareiss fraction-free elimination
  IntMatrix A = M;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      mix_rows(A, k, p, 0, 1, 1, 0);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
      }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

IntMatrix kernel_basis(const IntMatrix &A) {
  const std::size_t n = A.cols();
  auto hf = hermite_normal_form(A.transpose());
  const std::size_t m = n - hf.rank;
  if (m == 0)
    return IntMatrix(n, 0);
  IntMatrix K(m, n);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t c = 0; c < n; ++c)
      K(k, c) = hf.U(hf.rank + k, c);
  auto canon = hermite_normal_form(K);
  return canon.H.transpose();
}

IntMatrix column_lattice_hnf(const IntMatrix &M) {
  auto hf = hermite_normal_form(M.transpose());
  IntMatrix R(hf.rank, M.rows());
  for (std::size_t r = 0; r < hf.rank; ++r)
    for (std::size_t c = 0; c < M.rows(); ++c)
      R(r, c) = hf.H(r, c);
  return R.transpose();
}

Integer saturation_index(const IntMatrix &M) {
  Integer idx = 1;
  for (const auto &d : smith_normal_form(M).invariants)
    idx *= d;
  return idx;
}

RatMatrix to_rational(const IntMatrix &M) {
  RatMatrix R(M.rows(), std::vector<Rational>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      R[i][j] = M(i, j);
  return R;
}

namespace {

// Gauss-Jordan on an augmented matrix; returns pivot columns.
std::vector<std::size_t> reduce(RatMatrix &M, std::size_t ncols) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < M.size(); ++c) {
    std::size_t p = r;
    while (p < M.size() && M[p][c] == 0)
      ++p;
    if (p == M.size())
      continue;
    std::swap(M[p], M[r]);
    Rational inv = 1 / M[r][c];
    for (auto &x : M[r])
      x *= inv;
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c] == 0)
        continue;
      Rational f = M[i][c];
      for (std::size_t k = c; k < M[i].size(); ++k)
        M[i][k] -= f * M[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

} // namespace

std::optional<std::vector<Rational>> solve_rational(const RatMatrix &M, const std::vector<Rational> &b) {
  if (M.size() != b.size())
    throw InputError("solve: dimension mismatch");
  const std::size_t n = M.empty() ? 0 : M[0].size();
  RatMatrix aug = M;
  for (std::size_t i = 0; i < aug.size(); ++i)
    aug[i].push_back(b[i]);
  auto piv = reduce(aug, n);
  for (std::size_t i = piv.size(); i < aug.size(); ++i)
    if (aug[i][n] != 0)
      return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i)
    x[piv[i]] = aug[i][n];
  return x;
}

std::optional<RatMatrix> inverse_rational(const RatMatrix &M) {
  const std::size_t n = M.size();
  RatMatrix aug = M;
  for (std::size_t i = 0; i < n; ++i) {
    if (aug[i].size() != n)
      throw InputError("inverse of a non-square matrix");
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  if (reduce(aug, n).size() != n)
    return std::nullopt;
  RatMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv[i][j] = aug[i][n + j];
  return inv;
}

} // namespace gkz
