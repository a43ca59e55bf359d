#include "gkz/hypergeom.hpp"

#include "gkz/errors.hpp"
#include "gkz/int_matrix.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace gkz {

namespace {

Exponent scaled(const Exponent &e, long k) {
  Exponent r(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    r[i] = static_cast<int>(-k * e[i]);
  return r;
}

bool factor_less(const RationalFunction::Factor &a, const RationalFunction::Factor &b) {
  return a.base.terms() < b.base.terms();
}

// q^k moved into (num, factors) after removing content and scaling.
void push_factor(LaurentPolynomial &num, std::vector<RationalFunction::Factor> &factors, LaurentPolynomial q,
                 unsigned k) {
  if (q.is_zero())
    throw DivisionByZero("rational function with zero denominator");
  if (k == 0)
    return;
  Exponent m = q.min_exponents();
  q = q.shifted(scaled(m, 1));
  num = num.shifted(scaled(m, static_cast<long>(k)));
  Rational lead = q.leading_term().second;
  Rational inv = 1 / lead;
  Rational scale = 1;
  for (unsigned i = 0; i < k; ++i)
    scale *= inv;
  num *= scale;
  if (q.is_monomial())
    return;
  q *= inv;
  for (auto &f : factors)
    if (f.base == q) {
      f.exp += k;
      return;
    }
  factors.push_back({std::move(q), k});
  std::sort(factors.begin(), factors.end(), factor_less);
}

LaurentPolynomial power(const LaurentPolynomial &q, unsigned k) { return q.pow(k); }

std::size_t rank_rational(std::vector<std::vector<Rational>> M) {
  std::size_t r = 0;
  if (M.empty())
    return 0;
  std::size_t cols = M[0].size();
  for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
    std::size_t p = r;
    while (p < M.size() && M[p][c] == 0)
      ++p;
    if (p == M.size())
      continue;
    std::swap(M[p], M[r]);
    for (std::size_t i = r + 1; i < M.size(); ++i) {
      if (M[i][c] == 0)
        continue;
      Rational f = M[i][c] / M[r][c];
      for (std::size_t j = c; j < cols; ++j)
        M[i][j] -= f * M[r][j];
    }
    ++r;
  }
  return r;
}

std::string join_ints(const std::vector<Integer> &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

} // namespace

RationalFunction::RationalFunction(LaurentPolynomial numerator) : num_(std::move(numerator)) {}

RationalFunction::RationalFunction(LaurentPolynomial numerator, const LaurentPolynomial &denominator)
    : num_(std::move(numerator)) {
  divide_by(denominator, 1);
}

RationalFunction &RationalFunction::divide_by(const LaurentPolynomial &q, unsigned k) {
  push_factor(num_, factors_, q, k);
  if (num_.is_zero())
    factors_.clear();
  return *this;
}

LaurentPolynomial RationalFunction::denominator() const {
  auto d = LaurentPolynomial::constant(nvars(), 1);
  for (const auto &f : factors_)
    d *= power(f.base, f.exp);
  return d;
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  RationalFunction r(nvars());
  if (is_zero())
    return r;
  std::vector<std::size_t> moving;
  std::vector<LaurentPolynomial> dq;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto d = factors_[i].base.derivative(var);
    if (!d.is_zero()) {
      moving.push_back(i);
      dq.push_back(std::move(d));
    }
  }
  // (dN * prod q - N * sum k_i dq_i prod_{j != i} q_j) / prod q^{k+1}
  LaurentPolynomial n = num_.derivative(var);
  for (auto i : moving)
    n *= factors_[i].base;
  for (std::size_t a = 0; a < moving.size(); ++a) {
    LaurentPolynomial t = num_ * dq[a];
    t *= Rational(factors_[moving[a]].exp);
    for (std::size_t b = 0; b < moving.size(); ++b)
      if (b != a)
        t *= factors_[moving[b]].base;
    n -= t;
  }
  r.num_ = std::move(n);
  if (r.num_.is_zero())
    return r;
  r.factors_ = factors_;
  for (auto i : moving)
    r.factors_[i].exp += 1;
  return r;
}

bool RationalFunction::depends_on(std::size_t var) const { return !derivative(var).is_zero(); }

std::vector<RationalFunction::Factor> common_factors(const std::vector<RationalFunction> &fs) {
  std::vector<RationalFunction::Factor> out;
  for (const auto &f : fs)
    for (const auto &q : f.factors()) {
      auto it = std::find_if(out.begin(), out.end(), [&](const auto &o) { return o.base == q.base; });
      if (it == out.end())
        out.push_back(q);
      else
        it->exp = std::max(it->exp, q.exp);
    }
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

LaurentPolynomial RationalFunction::numerator_over(const std::vector<Factor> &common) const {
  LaurentPolynomial n = num_;
  for (const auto &c : common) {
    unsigned own = 0;
    for (const auto &f : factors_)
      if (f.base == c.base)
        own = f.exp;
    if (own > c.exp)
      throw PreconditionError("numerator_over: denominator does not divide the common one");
    if (c.exp > own)
      n *= power(c.base, c.exp - own);
  }
  return n;
}

RationalFunction &RationalFunction::operator+=(const RationalFunction &o) {
  auto common = common_factors({*this, o});
  num_ = numerator_over(common) + o.numerator_over(common);
  factors_ = num_.is_zero() ? std::vector<Factor>{} : common;
  return *this;
}

RationalFunction &RationalFunction::operator-=(const RationalFunction &o) { return *this += -o; }

RationalFunction &RationalFunction::operator*=(const RationalFunction &o) {
  num_ *= o.num_;
  if (num_.is_zero()) {
    factors_.clear();
    return *this;
  }
  for (const auto &f : o.factors_)
    push_factor(num_, factors_, f.base, f.exp);
  return *this;
}

RationalFunction &RationalFunction::operator*=(const Rational &c) {
  num_ *= c;
  if (num_.is_zero())
    factors_.clear();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

bool operator==(const RationalFunction &a, const RationalFunction &b) { return (a - b).is_zero(); }

std::complex<double> RationalFunction::evaluate(const std::vector<std::complex<double>> &x) const {
  std::complex<double> v = num_.evaluate(x);
  for (const auto &f : factors_)
    v /= std::pow(f.base.evaluate(x), static_cast<int>(f.exp));
  return v;
}

std::string RationalFunction::to_string(const std::vector<std::string> &names) const {
  if (factors_.empty())
    return num_.to_string(names);
  std::string s = "(" + num_.to_string(names) + ")/(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    s += (i ? "*" : "") + std::string("(") + factors_[i].base.to_string(names) + ")";
    if (factors_[i].exp > 1)
      s += "^" + std::to_string(factors_[i].exp);
  }
  return s + ")";
}

std::size_t linear_rank(const std::vector<RationalFunction> &fs) {
  auto common = common_factors(fs);
  std::vector<LaurentPolynomial> nums;
  std::set<Exponent> support;
  for (const auto &f : fs) {
    nums.push_back(f.numerator_over(common));
    for (const auto &[e, c] : nums.back().terms())
      support.insert(e);
  }
  std::vector<std::vector<Rational>> M;
  for (const auto &n : nums) {
    std::vector<Rational> row;
    for (const auto &e : support)
      row.push_back(n.coeff(e));
    M.push_back(std::move(row));
  }
  return rank_rational(std::move(M));
}

// ---------------------------------------------------------------------------

void DifferentialOperator::add_term(const Rational &c, const Exponent &x, const std::vector<unsigned> &d) {
  if (x.size() != nvars_ || d.size() != nvars_)
    throw InputError("operator term has the wrong number of variables");
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term &t) { return t.x == x && t.d == d; });
  if (it != terms_.end()) {
    it->coeff += c;
    if (it->coeff == 0)
      terms_.erase(it);
    return;
  }
  if (c == 0)
    return;
  terms_.push_back({c, x, d});
  std::sort(terms_.begin(), terms_.end(),
            [](const Term &a, const Term &b) { return std::tie(b.d, b.x) < std::tie(a.d, a.x); });
}

DifferentialOperator DifferentialOperator::euler(const std::vector<Integer> &row, const Rational &alpha) {
  std::size_t n = row.size();
  DifferentialOperator op(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (row[j] == 0)
      continue;
    Exponent x(n, 0);
    std::vector<unsigned> d(n, 0);
    x[j] = 1;
    d[j] = 1;
    op.add_term(Rational(row[j]), x, d);
  }
  op.add_term(-alpha, Exponent(n, 0), std::vector<unsigned>(n, 0));
  return op;
}

DifferentialOperator DifferentialOperator::toric(const std::vector<Integer> &nu) {
  std::size_t n = nu.size();
  DifferentialOperator op(n);
  std::vector<unsigned> plus(n, 0), minus(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (nu[j] > 0)
      plus[j] = static_cast<unsigned>(nu[j].get_ui());
    else if (nu[j] < 0)
      minus[j] = static_cast<unsigned>(Integer(-nu[j]).get_ui());
  }
  op.add_term(1, Exponent(n, 0), plus);
  op.add_term(-1, Exponent(n, 0), minus);
  return op;
}

DifferentialOperator &DifferentialOperator::operator+=(const DifferentialOperator &o) {
  for (const auto &t : o.terms_)
    add_term(t.coeff, t.x, t.d);
  return *this;
}

DifferentialOperator &DifferentialOperator::operator*=(const Rational &c) {
  if (c == 0)
    terms_.clear();
  for (auto &t : terms_)
    t.coeff *= c;
  return *this;
}

bool operator==(const DifferentialOperator &a, const DifferentialOperator &b) {
  if (a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto &s = a.terms_[i], &t = b.terms_[i];
    if (s.coeff != t.coeff || s.x != t.x || s.d != t.d)
      return false;
  }
  return true;
}

std::string DifferentialOperator::to_string(const std::vector<std::string> &names) const {
  auto name = [&](std::size_t i) { return i < names.size() ? names[i] : "x" + std::to_string(i + 1); };
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &t : terms_) {
    Rational c = t.coeff;
    if (!first)
      os << (c < 0 ? " - " : " + ");
    else if (c < 0)
      os << "-";
    first = false;
    Rational a = abs(c);
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.x[i] == 1)
        parts.push_back(name(i));
      else if (t.x[i] != 0)
        parts.push_back(name(i) + "^" + std::to_string(t.x[i]));
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.d[i] == 1)
        parts.push_back("d" + name(i));
      else if (t.d[i] > 1)
        parts.push_back("d" + name(i) + "^" + std::to_string(t.d[i]));
    }
    if (a != 1 || parts.empty())
      parts.insert(parts.begin(), gkz::to_string(a));
    for (std::size_t i = 0; i < parts.size(); ++i)
      os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

namespace {

class DerivativeCache {
public:
  explicit DerivativeCache(const RationalFunction &f) { memo_.emplace(std::vector<unsigned>(f.nvars(), 0), f); }

  const RationalFunction &get(const std::vector<unsigned> &v) {
    auto it = memo_.find(v);
    if (it != memo_.end())
      return it->second;
    std::size_t i = 0;
    while (v[i] == 0)
      ++i;
    auto parent = v;
    --parent[i];
    RationalFunction d = get(parent).derivative(i);
    return memo_.emplace(v, std::move(d)).first->second;
  }

private:
  std::map<std::vector<unsigned>, RationalFunction> memo_;
};

RationalFunction apply_cached(const DifferentialOperator &op, DerivativeCache &cache, std::size_t n) {
  RationalFunction r(n);
  for (const auto &t : op.terms()) {
    RationalFunction g = cache.get(t.d);
    if (g.is_zero())
      continue;
    r += g * RationalFunction(LaurentPolynomial::monomial(t.x, t.coeff));
  }
  return r;
}

} // namespace

RationalFunction iterated_derivative(const RationalFunction &f, const std::vector<unsigned> &v) {
  if (v.size() != f.nvars())
    throw InputError("derivative multi-index has the wrong length");
  DerivativeCache cache(f);
  return cache.get(v);
}

RationalFunction apply_operator(const DifferentialOperator &op, const RationalFunction &f) {
  if (op.nvars() != f.nvars())
    throw InputError("operator and function have different numbers of variables");
  DerivativeCache cache(f);
  return apply_cached(op, cache, f.nvars());
}

std::vector<DifferentialOperator> hypergeometric_generators(const Configuration &A,
                                                            const std::vector<Integer> &alpha,
                                                            unsigned bound) {
  if (alpha.size() != A.d())
    throw InputError("degree has " + std::to_string(alpha.size()) + " entries, expected " + std::to_string(A.d()));
  std::vector<DifferentialOperator> ops;
  for (std::size_t i = 0; i < A.d(); ++i) {
    auto op = DifferentialOperator::euler(A.A.row(i), Rational(alpha[i]));
    op.origin = "euler " + std::to_string(i + 1);
    ops.push_back(std::move(op));
  }
  if (bound == 0)
    return ops;
  IntMatrix B = kernel_basis(A.A);
  std::size_t k = B.cols();
  long b = static_cast<long>(bound);
  std::vector<long> lambda(k, -b);
  std::set<std::vector<Integer>> seen;
  while (true) {
    std::vector<Integer> nu(A.n(), 0);
    for (std::size_t j = 0; j < A.n(); ++j)
      for (std::size_t c = 0; c < k; ++c)
        nu[j] += B(j, c) * lambda[c];
    auto nz = std::find_if(nu.begin(), nu.end(), [](const Integer &z) { return z != 0; });
    if (nz != nu.end() && *nz > 0 && seen.insert(nu).second) {
      auto op = DifferentialOperator::toric(nu);
      std::vector<Integer> lam(lambda.begin(), lambda.end());
      op.origin = "toric nu=" + join_ints(nu) + " lambda=" + join_ints(lam);
      ops.push_back(std::move(op));
    }
    std::size_t c = 0;
    while (c < k && lambda[c] == b)
      lambda[c++] = -b;
    if (c == k)
      break;
    ++lambda[c];
  }
  return ops;
}

AnnihilationReport annihilation_check(const Configuration &A, const std::vector<Integer> &alpha,
                                      const RationalFunction &f, unsigned bound) {
  if (f.nvars() != A.n())
    throw InputError("function has " + std::to_string(f.nvars()) + " variables, expected " + std::to_string(A.n()));
  AnnihilationReport rep;
  DerivativeCache cache(f);
  for (const auto &op : hypergeometric_generators(A, alpha, bound)) {
    ++rep.checked;
    if (!apply_cached(op, cache, f.nvars()).is_zero())
      rep.failures.push_back(op.origin);
  }
  rep.passed = rep.failures.empty();
  return rep;
}

StabilityReport stability_check(const RationalFunction &f, unsigned bound) {
  StabilityReport rep;
  rep.bound = bound;
  std::size_t n = f.nvars();
  if (f.is_zero()) {
    rep.stable_up_to_bound = false;
    rep.killing_derivative = std::vector<unsigned>(n, 0);
    return rep;
  }
  if (bound == 0)
    return rep;
  for (std::size_t i = 0; i < n; ++i)
    if (!f.depends_on(i)) {
      std::vector<unsigned> v(n, 0);
      v[i] = 1;
      rep.stable_up_to_bound = false;
      rep.killing_derivative = v;
      return rep;
    }
  DerivativeCache cache(f);
  std::vector<unsigned> v(n, 0);
  // multi-indices of total degree `deg`, first coordinate largest first
  std::function<bool(std::size_t, unsigned)> walk = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      v[i] = left;
      if (cache.get(v).is_zero())
        return true;
      v[i] = 0;
      return false;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      v[i] = a;
      if (walk(i + 1, left - a))
        return true;
    }
    v[i] = 0;
    return false;
  };
  for (unsigned deg = 2; deg <= bound; ++deg) {
    std::fill(v.begin(), v.end(), 0);
    if (n > 0 && walk(0, deg)) {
      rep.stable_up_to_bound = false;
      rep.killing_derivative = v;
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

LaurentPolynomial TruncatedSeries::to_polynomial() const {
  LaurentPolynomial p(nvars);
  for (const auto &[e, c] : terms)
    p.add_term(e, c);
  return p;
}

std::complex<double> TruncatedSeries::evaluate(const std::vector<std::complex<double>> &x) const {
  return to_polynomial().evaluate(x);
}

std::vector<Exponent> minimizing_terms(const LaurentPolynomial &q, const Weight &w) {
  long m = q.min_weight(w);
  std::vector<Exponent> out;
  for (const auto &[e, c] : q.terms())
    if (weight_of(e, w) == m)
      out.push_back(e);
  return out;
}

namespace {

LaurentPolynomial truncate(const LaurentPolynomial &p, const Weight &w, long max_weight) {
  LaurentPolynomial r(p.nvars());
  for (const auto &[e, c] : p.terms())
    if (weight_of(e, w) <= max_weight)
      r.add_term(e, c);
  return r;
}

} // namespace

TruncatedSeries laurent_expand(const RationalFunction &f, const Weight &w0, long order, TieBreak policy) {
  std::size_t n = f.nvars();
  if (w0.size() != n)
    throw InputError("weight has " + std::to_string(w0.size()) + " entries, expected " + std::to_string(n));
  if (order < 0)
    throw InputError("negative truncation order");
  TruncatedSeries s;
  s.nvars = n;
  s.weight = w0;
  s.order = order;
  if (f.is_zero())
    return s;

  bool tie = false;
  for (const auto &q : f.factors())
    if (minimizing_terms(q.base, w0).size() > 1)
      tie = true;
  Weight w = w0;
  if (tie) {
    if (policy == TieBreak::Strict)
      throw PreconditionError("weight is not generic: several denominator terms attain the minimum; perturb w");
    // factor bases are polynomials, so t = (E^{n-1}, ..., E, 1) separates
    // their exponents and K exceeds every |t.(u - u')|
    long E = 1;
    for (const auto &q : f.factors())
      for (const auto &[e, c] : q.base.terms())
        for (int x : e)
          E = std::max(E, static_cast<long>(x) + 1);
    Weight t(n, 1);
    long K = 1;
    for (std::size_t i = n; i-- > 0;) {
      t[i] = K;
      if (K > (1L << 40) / (E + 1))
        throw PreconditionError("tie-break weight overflows");
      K *= E;
    }
    K += 1;
    for (std::size_t i = 0; i < n; ++i)
      w[i] = K * w0[i] + t[i];
    order *= K;
    s.weight = w;
    s.order = order;
    s.perturbed = true;
  }

  const LaurentPolynomial &N = f.numerator();
  long top = N.min_weight(w) + order;
  LaurentPolynomial acc = truncate(N, w, top);
  Exponent shift(n, 0);
  Rational scale = 1;
  long vertex_weight = 0;
  for (const auto &q : f.factors()) {
    auto mins = minimizing_terms(q.base, w);
    const Exponent &v0 = mins.front();
    Rational c0 = q.base.coeff(v0);
    // q = c0 x^{v0} (1 + r), every term of r of positive weight
    LaurentPolynomial r = q.base.shifted(scaled(v0, 1));
    r *= 1 / c0;
    r -= LaurentPolynomial::constant(n, 1);
    LaurentPolynomial g = LaurentPolynomial::constant(n, 1);
    LaurentPolynomial pw = g;
    for (long k = 1; k <= order; ++k) {
      pw = truncate(pw * r, w, order);
      if (pw.is_zero())
        break;
      // binom(-e, k) = (-1)^k binom(e + k - 1, k)
      Rational b(binomial(q.exp + static_cast<unsigned long>(k) - 1, static_cast<unsigned long>(k)));
      g += pw * (k % 2 ? -b : b);
    }
    acc = truncate(acc * g, w, top);
    for (std::size_t i = 0; i < n; ++i)
      shift[i] -= static_cast<int>(q.exp) * v0[i];
    for (unsigned k = 0; k < q.exp; ++k)
      scale /= c0;
    vertex_weight += static_cast<long>(q.exp) * weight_of(v0, w);
  }
  acc = acc.shifted(shift);
  acc *= scale;
  s.offset = N.min_weight(w) - vertex_weight;
  s.terms = acc.terms();
  return s;
}

} // namespace gkz
