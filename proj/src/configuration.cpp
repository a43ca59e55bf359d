#include "gkz/configuration.hpp"

#include "gkz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gkz {

Configuration::Configuration(IntMatrix a, std::vector<std::string> names)
    : A(std::move(a)), labels(std::move(names)) {
  if (A.rows() == 0 || A.cols() == 0)
    throw InputError("configuration matrix must be nonempty");
  if (labels.empty())
    for (std::size_t i = 0; i < A.cols(); ++i)
      labels.push_back("a" + std::to_string(i + 1));
  if (labels.size() != A.cols())
    throw InputError("one label per column required");
  if (rank(A) != A.rows())
    throw PreconditionError("configuration matrix must have full row rank");
}

PlanarConfig::PlanarConfig(std::vector<Vec2> vectors) : v_(std::move(vectors)) {
  for (const auto &b : v_)
    for (const auto &s : b) {
      if (s.kind() == ScalarKind::Numeric) {
        if (kind_ == ScalarKind::NumberField)
          throw ContextMismatch("numeric and number-field entries mixed");
        kind_ = ScalarKind::Numeric;
      } else if (s.kind() == ScalarKind::NumberField) {
        if (kind_ == ScalarKind::Numeric)
          throw ContextMismatch("numeric and number-field entries mixed");
        if (field_ && !field_->same_as(*s.field()))
          throw ContextMismatch("entries from different number fields");
        kind_ = ScalarKind::NumberField;
        field_ = s.field();
      }
    }
  if (kind_ == ScalarKind::Rational)
    return;
  Scalar like = kind_ == ScalarKind::Numeric ? Scalar::numeric(0) : Scalar(NfElement(field_, 0));
  for (auto &b : v_)
    for (auto &s : b)
      s = promote_to(s, like);
}

PlanarConfig PlanarConfig::from_rows(const IntMatrix &B) {
  if (B.cols() != 2)
    throw InputError("planar configuration needs two columns");
  std::vector<Vec2> v;
  for (std::size_t i = 0; i < B.rows(); ++i)
    v.push_back({Scalar(B(i, 0)), Scalar(B(i, 1))});
  return PlanarConfig(std::move(v));
}

PlanarConfig PlanarConfig::from_integers(const std::vector<std::array<long, 2>> &rows) {
  std::vector<Vec2> v;
  for (const auto &r : rows)
    v.push_back({Scalar(r[0]), Scalar(r[1])});
  return PlanarConfig(std::move(v));
}

PlanarConfig PlanarConfig::numeric(const std::vector<std::array<double, 2>> &rows) {
  double m = 0;
  for (const auto &r : rows)
    m = std::max({m, std::fabs(r[0]), std::fabs(r[1])});
  if (m == 0)
    m = 1;
  std::vector<Vec2> v;
  for (const auto &r : rows)
    v.push_back({Scalar::numeric(r[0] / m), Scalar::numeric(r[1] / m)});
  PlanarConfig p(std::move(v));
  p.kind_ = ScalarKind::Numeric;
  return p;
}

std::optional<IntMatrix> PlanarConfig::integer_rows() const {
  if (kind_ != ScalarKind::Rational)
    return std::nullopt;
  IntMatrix M(v_.size(), 2);
  for (std::size_t i = 0; i < v_.size(); ++i)
    for (int k = 0; k < 2; ++k) {
      const Rational &q = v_[i][k].as_rational();
      if (q.get_den() != 1)
        return std::nullopt;
      M(i, k) = q.get_num();
    }
  return M;
}

PlanarConfig PlanarConfig::transformed(const Mat2 &g) const {
  std::vector<Vec2> v;
  for (const auto &b : v_)
    v.push_back(g.apply(b));
  return PlanarConfig(std::move(v));
}

PlanarConfig PlanarConfig::subconfig(const IndexSet &idx) const {
  std::vector<Vec2> v;
  for (auto i : idx)
    v.push_back(v_.at(i));
  return PlanarConfig(std::move(v));
}

Vec2 PlanarConfig::sum(const IndexSet &idx) const {
  Vec2 s{Scalar(0), Scalar(0)};
  for (auto i : idx)
    s = s + v_.at(i);
  return s;
}

Vec2 PlanarConfig::sum() const {
  Vec2 s{Scalar(0), Scalar(0)};
  for (const auto &b : v_)
    s = s + b;
  return s;
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> f;
  if (!nonconfluent)
    f.push_back("nonconfluent failed");
  if (!pyramid_free)
    f.push_back("pyramid_free failed");
  if (!distinct_dual)
    f.push_back("distinct_dual failed");
  return f;
}

ValidationReport validate(const PlanarConfig &B) {
  ValidationReport r;
  const std::size_t n = B.size();
  r.vector_sum = B.sum();
  r.nonconfluent = is_zero(r.vector_sum);
  for (std::size_t i = 0; i < n; ++i)
    if (is_zero(B[i]))
      r.zero_vectors.push_back(i);
  r.pyramid_free = r.zero_vectors.empty();
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i] || is_zero(B[i]))
      continue;
    IndexSet line;
    for (std::size_t j = i; j < n; ++j)
      if (!is_zero(B[j]) && parallel(B[i], B[j])) {
        line.push_back(j);
        seen[j] = true;
      }
    if (n >= 2 && line.size() + 2 >= n && r.crowded_line.empty()) {
      r.distinct_dual = false;
      r.crowded_line = line;
    }
  }
  return r;
}

ValidationReport validate(const PlanarConfig &B, const IntMatrix &A) {
  ValidationReport r = validate(B);
  IntMatrix ext(A.rows() + 1, A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      ext(i, j) = A(i, j);
  for (std::size_t j = 0; j < A.cols(); ++j)
    ext(A.rows(), j) = 1;
  r.ones_in_row_span = rank(ext) == rank(A);
  if (*r.ones_in_row_span != r.nonconfluent)
    throw PreconditionError("A and B disagree on nonconfluence; they are not Gale dual");
  return r;
}

namespace {

Vec2 line_direction(const Vec2 &b) {
  if (b[0].is_rational() && b[1].is_rational()) {
    auto p = primitive_integer({b[0].as_rational(), b[1].as_rational()});
    return {Scalar(p[0]), Scalar(p[1])};
  }
  const Scalar &lead = b[0].is_zero() ? b[1] : b[0];
  Scalar inv = lead.inverse();
  Vec2 d = inv * b;
  if (b[0].is_zero())
    d[0] = promote_to(Scalar(0), d[1]);
  return d;
}

void require_nonzero(const PlanarConfig &B) {
  for (std::size_t i = 0; i < B.size(); ++i)
    if (is_zero(B[i]))
      throw PreconditionError("vector b" + std::to_string(i + 1) + " is zero");
}

} // namespace

std::vector<Integer> primitive_integer(const std::vector<Rational> &v) {
  Integer l = 1;
  for (const auto &q : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> z;
  Integer g = 0;
  for (const auto &q : v) {
    Rational s = q * l;
    z.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (g == 0)
    return z;
  int lead = 0;
  for (auto &x : z) {
    x /= g;
    if (lead == 0)
      lead = sgn(x);
  }
  if (lead < 0)
    for (auto &x : z)
      x = -x;
  return z;
}

std::vector<Cocircuit> cocircuits(const PlanarConfig &B) {
  require_nonzero(B);
  std::vector<Cocircuit> out;
  std::vector<bool> seen(B.size(), false);
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (seen[i])
      continue;
    Cocircuit c;
    for (std::size_t j = i; j < B.size(); ++j)
      if (!seen[j] && parallel(B[i], B[j])) {
        c.indices.push_back(j);
        seen[j] = true;
      }
    c.direction = line_direction(B[i]);
    out.push_back(std::move(c));
  }
  return out;
}

Cocircuit cocircuit_of(const PlanarConfig &B, std::size_t i) {
  for (auto &c : cocircuits(B))
    if (std::binary_search(c.indices.begin(), c.indices.end(), i))
      return c;
  throw InputError("index out of range");
}

std::vector<Scalar> circuit_dual(const PlanarConfig &B, const Cocircuit &J, std::size_t j) {
  if (!std::binary_search(J.indices.begin(), J.indices.end(), j))
    throw InputError("index " + std::to_string(j + 1) + " is not in the cocircuit");
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (!std::binary_search(J.indices.begin(), J.indices.end(), i))
      out.push_back(det(B[i], B[j]));
  return out;
}

bool symmetric_multiset(const std::vector<Scalar> &values) {
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i])
      continue;
    used[i] = true;
    if (values[i].is_zero())
      continue;
    Scalar neg = -values[i];
    bool matched = false;
    for (std::size_t k = i + 1; k < values.size() && !matched; ++k)
      if (!used[k] && values[k] == neg) {
        used[k] = true;
        matched = true;
      }
    if (!matched)
      return false;
  }
  return true;
}

CocircuitStatus cocircuit_status(const PlanarConfig &B, const Cocircuit &J, std::size_t j) {
  CocircuitStatus s;
  s.balanced = symmetric_multiset(circuit_dual(B, J, j));
  s.splitting = is_zero(B.sum(J.indices));
  return s;
}

CocircuitStatus cocircuit_status(const PlanarConfig &B, const Cocircuit &J) {
  return cocircuit_status(B, J, J.indices.front());
}

std::vector<Partition> zero_sum_partitions(const PlanarConfig &B, std::size_t min_parts) {
  const std::size_t n = B.size();
  if (n > 16)
    throw PreconditionError("partition enumeration limited to 16 vectors");
  if (n == 0)
    return {};
  const std::uint32_t full = (1u << n) - 1;
  std::vector<Vec2> sums(full + 1);
  std::vector<bool> zero(full + 1, false);
  sums[0] = {Scalar(0), Scalar(0)};
  for (std::uint32_t m = 1; m <= full; ++m) {
    std::uint32_t low = m & (~m + 1);
    sums[m] = sums[m ^ low] + B[static_cast<std::size_t>(__builtin_ctz(low))];
    zero[m] = is_zero(sums[m]);
  }
  std::vector<Partition> out;
  std::vector<std::uint32_t> parts;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t rest) {
    if (rest == 0) {
      if (parts.size() < min_parts)
        return;
      Partition p;
      for (auto m : parts) {
        IndexSet s;
        for (std::size_t i = 0; i < n; ++i)
          if (m >> i & 1u)
            s.push_back(i);
        p.push_back(std::move(s));
      }
      out.push_back(std::move(p));
      return;
    }
    std::uint32_t low = rest & (~rest + 1);
    std::uint32_t others = rest ^ low;
    // parts containing the lowest remaining index
    for (std::uint32_t sub = others;; sub = (sub - 1) & others) {
      std::uint32_t part = sub | low;
      if (zero[part]) {
        parts.push_back(part);
        rec(rest ^ part);
        parts.pop_back();
      }
      if (sub == 0)
        break;
    }
  };
  rec(full);
  std::sort(out.begin(), out.end(), [](const Partition &a, const Partition &b) {
    if (a.size() != b.size())
      return a.size() > b.size();
    return a < b;
  });
  return out;
}

bool is_uniform(const PlanarConfig &B) {
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j)
      if (parallel(B[i], B[j]))
        return false;
  return true;
}

bool is_balanced(const PlanarConfig &B) {
  for (const auto &J : cocircuits(B))
    if (!cocircuit_status(B, J).balanced)
      return false;
  return true;
}

bool is_irreducible(const PlanarConfig &B) { return zero_sum_partitions(B, 2).empty(); }

Profile profile(const PlanarConfig &B) {
  require_nonzero(B);
  Profile p;
  p.uniform = is_uniform(B);
  p.balanced = is_balanced(B);
  p.nonconfluent = is_zero(B.sum());
  p.decompositions = zero_sum_partitions(B, 2);
  p.irreducible = p.decompositions.empty();
  return p;
}

LaurentPolynomial circuit_discriminant(const PlanarConfig &B, const IndexSet &I) {
  const std::size_t n = B.size();
  if (!B.is_rational())
    throw PreconditionError("circuit discriminant needs a rational configuration");
  IndexSet rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(I.begin(), I.end(), i))
      rest.push_back(i);
  if (I.empty() || rest.empty())
    throw InputError("index set is not a circuit");
  auto J = cocircuit_of(B, rest.front());
  if (J.indices != rest)
    throw InputError("complement of the index set is not a cocircuit");
  auto dual = circuit_dual(B, J, rest.front());
  std::vector<Rational> q;
  for (const auto &s : dual)
    q.push_back(s.as_rational());
  auto c = primitive_integer(q);

  Exponent pos(n, 0), neg(n, 0);
  Integer kpos = 1, kneg = 1;
  for (std::size_t k = 0; k < I.size(); ++k) {
    const Integer &ci = c[k];
    unsigned long e = Integer(abs(ci)).get_ui();
    if (ci > 0) {
      kpos *= ipow(ci, e);
      pos[I[k]] = static_cast<int>(e);
    } else if (ci < 0) {
      kneg *= ipow(ci, e);
      neg[I[k]] = static_cast<int>(e);
    }
  }
  LaurentPolynomial D = LaurentPolynomial::monomial(neg, Rational(kpos)) -
                        LaurentPolynomial::monomial(pos, Rational(kneg));
  if (!D.is_zero() && D.leading_term().second < 0)
    D = -D;
  return D;
}

} // namespace gkz
