#include "gkz/arrangement.hpp"

#include "gkz/errors.hpp"
#include "gkz/int_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace gkz {

namespace {

long as_long(const Integer &z) {
  if (!z.fits_slong_p())
    throw InputError("integer entry too large");
  return z.get_si();
}

bool subset(const IndexSet &a, const IndexSet &b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool sample_before(const LatticePoint &a, const LatticePoint &b) {
  long na = std::max(std::labs(a[0]), std::labs(a[1])), nb = std::max(std::labs(b[0]), std::labs(b[1]));
  return std::tie(na, a) < std::tie(nb, b);
}

struct Collected {
  std::map<IndexSet, std::pair<LatticePoint, std::vector<int>>> best;
};

std::vector<int> support_signs(std::size_t n, const IndexSet &supp) {
  std::vector<int> s(n, 1);
  for (auto j : supp)
    s[j] = -1;
  return s;
}

Collected collect(const Arrangement &arr, long R, CellSemantics sem) {
  Collected c;
  for (long x = -R; x <= R; ++x)
    for (long y = -R; y <= R; ++y) {
      LatticePoint l{x, y};
      auto s = arr.signs(l);
      if (sem == CellSemantics::Chambers && std::find(s.begin(), s.end(), 0) != s.end())
        continue;
      auto supp = negative_support(arr, l);
      auto it = c.best.find(supp);
      if (it == c.best.end())
        c.best.emplace(supp, std::make_pair(l, s));
      else if (sample_before(l, it->second.first))
        it->second = {l, s};
    }
  return c;
}

std::vector<Cell> minimal_of(const Arrangement &arr, const Collected &c) {
  std::vector<Cell> out;
  for (const auto &[supp, ls] : c.best) {
    bool minimal = true;
    for (const auto &[other, unused] : c.best)
      if (other != supp && subset(other, supp)) {
        minimal = false;
        break;
      }
    if (minimal)
      out.push_back({supp, ls.first, cell_bounded(arr, supp)});
  }
  std::sort(out.begin(), out.end(), [](const Cell &a, const Cell &b) { return a.sample < b.sample; });
  return out;
}

std::vector<IndexSet> supports_of(const std::vector<Cell> &cells) {
  std::vector<IndexSet> s;
  for (const auto &c : cells)
    s.push_back(c.support);
  std::sort(s.begin(), s.end());
  return s;
}

// Nonzero rays of the closed cone {d : sign_j <b_j, d> >= 0}, among the
// directions perpendicular to some b_j.
std::vector<LatticePoint> recession_rays(const Arrangement &arr, const std::vector<int> &signs) {
  std::vector<LatticePoint> rays;
  for (std::size_t j = 0; j < arr.n(); ++j) {
    long b0 = as_long(arr.B(j, 0)), b1 = as_long(arr.B(j, 1));
    if (b0 == 0 && b1 == 0)
      continue;
    for (LatticePoint d : {LatticePoint{-b1, b0}, LatticePoint{b1, -b0}}) {
      bool ok = true;
      for (std::size_t k = 0; k < arr.n() && ok; ++k) {
        long p = as_long(arr.B(k, 0)) * d[0] + as_long(arr.B(k, 1)) * d[1];
        if ((signs[k] < 0 && p > 0) || (signs[k] > 0 && p < 0) || (signs[k] == 0 && p != 0))
          ok = false;
      }
      if (ok)
        rays.push_back(d);
    }
  }
  return rays;
}

} // namespace

Arrangement::Arrangement(IntMatrix a, IntMatrix b, std::vector<long> vv) : A(std::move(a)), B(std::move(b)), v(std::move(vv)) {
  if (B.cols() != 2)
    throw InputError("Gale dual must have two columns");
  if (A.cols() != B.rows() || v.size() != B.rows())
    throw InputError("arrangement data have inconsistent sizes");
  if (!(A * B).is_zero())
    throw InputError("A * B is not zero");
  if (rank(B) != 2)
    throw PreconditionError("Gale dual has rank below 2");
}

Arrangement Arrangement::from_degree(IntMatrix A, IntMatrix B, const std::vector<Integer> &degree) {
  auto v = integer_solution(A, degree);
  if (!v)
    throw PreconditionError("degree is not in the integer image of A");
  std::vector<long> vl;
  for (const auto &z : *v)
    vl.push_back(as_long(z));
  return Arrangement(std::move(A), std::move(B), std::move(vl));
}

std::vector<Integer> Arrangement::degree() const {
  std::vector<Integer> vi(v.begin(), v.end());
  return A * vi;
}

long Arrangement::pairing(std::size_t j, const LatticePoint &l) const {
  return as_long(B(j, 0)) * l[0] + as_long(B(j, 1)) * l[1];
}

std::vector<int> Arrangement::signs(const LatticePoint &l) const {
  std::vector<int> s(n());
  for (std::size_t j = 0; j < n(); ++j) {
    long p = pairing(j, l) + v[j];
    s[j] = (p > 0) - (p < 0);
  }
  return s;
}

long Arrangement::vertex_radius() const {
  long r = 0;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = i + 1; j < n(); ++j) {
      Integer det = B(i, 0) * B(j, 1) - B(i, 1) * B(j, 0);
      if (det == 0)
        continue;
      // Cramer on [b_i; b_j] lambda = (-v_i, -v_j)
      Integer x = Integer(-v[i]) * B(j, 1) - B(i, 1) * Integer(-v[j]);
      Integer y = B(i, 0) * Integer(-v[j]) - Integer(-v[i]) * B(j, 0);
      for (const Integer &num : {x, y}) {
        Integer q = abs(num);
        Integer d = abs(det);
        Integer c = (q + d - 1) / d;
        r = std::max(r, as_long(c));
      }
    }
  return r;
}

std::optional<std::vector<Integer>> integer_solution(const IntMatrix &A, const std::vector<Integer> &rhs) {
  if (rhs.size() != A.rows())
    throw InputError("right-hand side has the wrong length");
  auto hf = hermite_normal_form(A.transpose());
  const IntMatrix &H = hf.H;
  std::size_t n = A.cols();
  std::vector<Integer> y(n, 0);
  std::size_t col = 0;
  for (std::size_t r = 0; r < hf.rank; ++r) {
    while (H(r, col) == 0)
      ++col;
    Integer s = rhs[col];
    for (std::size_t q = 0; q < r; ++q)
      s -= y[q] * H(q, col);
    if (s % H(r, col) != 0)
      return std::nullopt;
    y[r] = s / H(r, col);
  }
  std::vector<Integer> v(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      v[i] += y[k] * hf.U(k, i);
  if (A * v != rhs)
    return std::nullopt;
  return v;
}

IndexSet negative_support(const Arrangement &arr, const LatticePoint &l) {
  IndexSet s;
  for (std::size_t j = 0; j < arr.n(); ++j)
    if (arr.pairing(j, l) < -arr.v[j])
      s.push_back(j);
  return s;
}

bool face_bounded(const Arrangement &arr, const std::vector<int> &signs) { return recession_rays(arr, signs).empty(); }

bool cell_bounded(const Arrangement &arr, const IndexSet &support) {
  return face_bounded(arr, support_signs(arr.n(), support));
}

MinimalCellSet minimal_cells(const Arrangement &arr, long R, CellSemantics sem, bool auto_double) {
  long need = arr.vertex_radius();
  if (R <= need)
    throw InputError("box half-width " + std::to_string(R) + " does not exceed the vertex radius " +
                     std::to_string(need));
  MinimalCellSet out;
  out.box = R;
  out.cells = minimal_of(arr, collect(arr, R, sem));
  if (!auto_double)
    return out;
  for (int round = 0; round < 6; ++round) {
    auto next = minimal_of(arr, collect(arr, 2 * out.box, sem));
    if (supports_of(next) == supports_of(out.cells))
      return out;
    out.cells = std::move(next);
    out.box *= 2;
  }
  throw PreconditionError("minimal cells did not stabilize up to box half-width " + std::to_string(out.box));
}

std::optional<IsolatingDirection> isolating_direction(const Arrangement &arr, const std::vector<Cell> &cells) {
  std::vector<std::vector<LatticePoint>> rays;
  for (const auto &c : cells)
    rays.push_back(recession_rays(arr, support_signs(arr.n(), c.support)));
  for (long k = 1; k <= 10; ++k)
    for (long a = -k; a <= k; ++a)
      for (long b = -k; b <= k; ++b) {
        if (std::max(std::labs(a), std::labs(b)) != k)
          continue;
        bool parallel = false;
        for (std::size_t j = 0; j < arr.n() && !parallel; ++j)
          parallel = as_long(arr.B(j, 0)) * b - as_long(arr.B(j, 1)) * a == 0;
        if (parallel)
          continue;
        // w is bounded below on a cell iff every recession ray pairs positively
        std::vector<std::size_t> below;
        for (std::size_t i = 0; i < cells.size(); ++i)
          if (std::all_of(rays[i].begin(), rays[i].end(),
                          [&](const LatticePoint &d) { return a * d[0] + b * d[1] > 0; }))
            below.push_back(i);
        if (below.size() != 1)
          continue;
        IsolatingDirection out{{a, b}, below[0], 0};
        long R = std::max(12L, arr.vertex_radius() + 1);
        bool first = true;
        for (long x = -R; x <= R; ++x)
          for (long y = -R; y <= R; ++y)
            if (negative_support(arr, {x, y}) == cells[below[0]].support) {
              long p = a * x + b * y;
              if (first || p - 1 < out.rho)
                out.rho = p - 1;
              first = false;
            }
        return out;
      }
  return std::nullopt;
}

LatticePoint map_exponent(const IntMatrix &A, const IntMatrix &B, const std::vector<long> &v, const Exponent &u) {
  std::size_t n = B.rows();
  if (u.size() != n || v.size() != n)
    throw InputError("exponent has the wrong length");
  std::vector<Integer> diff(n);
  for (std::size_t i = 0; i < n; ++i)
    diff[i] = Integer(u[i]) - v[i];
  if (!(A * diff == std::vector<Integer>(A.rows(), 0)))
    throw PreconditionError("degree mismatch: A u differs from A v");
  // two independent rows of B determine lambda
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Integer det = B(i, 0) * B(j, 1) - B(i, 1) * B(j, 0);
      if (det == 0)
        continue;
      Integer x = diff[i] * B(j, 1) - B(i, 1) * diff[j];
      Integer y = B(i, 0) * diff[j] - diff[i] * B(j, 0);
      if (x % det != 0 || y % det != 0)
        throw PreconditionError("u - v is not an integer combination of the columns of B");
      LatticePoint l{as_long(x / det), as_long(y / det)};
      for (std::size_t k = 0; k < n; ++k)
        if (B(k, 0) * l[0] + B(k, 1) * l[1] != diff[k])
          throw PreconditionError("u - v is not in the column span of B");
      return l;
    }
  throw PreconditionError("Gale dual has rank below 2");
}

SupportCellResult series_support_cell(const Arrangement &arr, const TruncatedSeries &series, long R) {
  SupportCellResult out;
  if (series.empty()) {
    out.diagnostic = "series has no terms";
    return out;
  }
  std::set<IndexSet> found;
  std::set<std::size_t> uni;
  for (const auto &[u, c] : series.terms) {
    auto s = negative_support(arr, map_exponent(arr.A, arr.B, arr.v, u));
    uni.insert(s.begin(), s.end());
    found.insert(std::move(s));
  }
  out.support_union.assign(uni.begin(), uni.end());
  out.supports_found.assign(found.begin(), found.end());
  long box = std::max(R, arr.vertex_radius() + 1);
  for (const auto &c : minimal_cells(arr, box, CellSemantics::LatticePoints).cells)
    if (c.support == out.support_union) {
      out.cell = c;
      return out;
    }
  out.diagnostic = "support union is not a minimal support";
  return out;
}

} // namespace gkz
