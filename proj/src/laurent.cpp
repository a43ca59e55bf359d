#include "gkz/laurent.hpp"

#include "gkz/errors.hpp"

#include <algorithm>
#include <sstream>

namespace gkz {

long weight_of(const Exponent &e, const Weight &w) {
  long s = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    s += static_cast<long>(e[i]) * w[i];
  return s;
}

LaurentPolynomial LaurentPolynomial::constant(std::size_t nvars, const Rational &c) {
  LaurentPolynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

LaurentPolynomial LaurentPolynomial::monomial(const Exponent &e, const Rational &c) {
  LaurentPolynomial p(e.size());
  p.add_term(e, c);
  return p;
}

LaurentPolynomial LaurentPolynomial::variable(std::size_t nvars, std::size_t i) {
  Exponent e(nvars, 0);
  e.at(i) = 1;
  return monomial(e);
}

void LaurentPolynomial::add_term(const Exponent &e, const Rational &c) {
  if (e.size() != nvars_)
    throw InputError("exponent length does not match the number of variables");
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Rational LaurentPolynomial::coeff(const Exponent &e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

LaurentPolynomial &LaurentPolynomial::operator+=(const LaurentPolynomial &o) {
  if (nvars_ == 0 && terms_.empty())
    nvars_ = o.nvars_;
  for (const auto &[e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

LaurentPolynomial &LaurentPolynomial::operator-=(const LaurentPolynomial &o) {
  if (nvars_ == 0 && terms_.empty())
    nvars_ = o.nvars_;
  for (const auto &[e, c] : o.terms_)
    add_term(e, -c);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial &a, const LaurentPolynomial &b) {
  LaurentPolynomial p(std::max(a.nvars_, b.nvars_));
  Exponent e(p.nvars_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

LaurentPolynomial &LaurentPolynomial::operator*=(const LaurentPolynomial &o) {
  *this = *this * o;
  return *this;
}

LaurentPolynomial &LaurentPolynomial::operator*=(const Rational &c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, v] : terms_)
    v *= c;
  return *this;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto &[e, v] : r.terms_)
    v = -v;
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const {
  LaurentPolynomial r = constant(nvars_, 1), base = *this;
  while (k) {
    if (k & 1u)
      r *= base;
    k >>= 1;
    if (k)
      base *= base;
  }
  return r;
}

LaurentPolynomial LaurentPolynomial::derivative(std::size_t var) const {
  LaurentPolynomial d(nvars_);
  for (const auto &[e, c] : terms_) {
    if (e[var] == 0)
      continue;
    Exponent f = e;
    --f[var];
    d.terms_.emplace(std::move(f), c * e[var]);
  }
  return d;
}

LaurentPolynomial LaurentPolynomial::shifted(const Exponent &s) const {
  LaurentPolynomial r(nvars_);
  for (const auto &[e, c] : terms_) {
    Exponent f = e;
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] += s[i];
    r.terms_.emplace_hint(r.terms_.end(), std::move(f), c);
  }
  return r;
}

bool LaurentPolynomial::depends_on(std::size_t var) const {
  for (const auto &[e, c] : terms_)
    if (e[var] != 0)
      return true;
  return false;
}

Exponent LaurentPolynomial::min_exponents() const {
  if (terms_.empty())
    return Exponent(nvars_, 0);
  Exponent m = terms_.begin()->first;
  for (const auto &[e, c] : terms_)
    for (std::size_t i = 0; i < m.size(); ++i)
      m[i] = std::min(m[i], e[i]);
  return m;
}

std::pair<Exponent, Rational> LaurentPolynomial::leading_term() const {
  if (terms_.empty())
    throw PreconditionError("leading term of the zero polynomial");
  return *terms_.rbegin();
}

long LaurentPolynomial::min_weight(const Weight &w) const {
  if (terms_.empty())
    throw PreconditionError("weight of the zero polynomial");
  long m = weight_of(terms_.begin()->first, w);
  for (const auto &[e, c] : terms_)
    m = std::min(m, weight_of(e, w));
  return m;
}

std::complex<double> LaurentPolynomial::evaluate(const std::vector<std::complex<double>> &x) const {
  std::complex<double> acc = 0;
  for (const auto &[e, c] : terms_) {
    std::complex<double> t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0)
        t *= std::pow(x[i], e[i]);
    acc += t;
  }
  return acc;
}

Rational LaurentPolynomial::evaluate(const std::vector<Rational> &x) const {
  Rational acc = 0;
  for (const auto &[e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      if (x[i] == 0)
        throw DivisionByZero("evaluating a Laurent monomial at zero");
      Rational p;
      unsigned long k = static_cast<unsigned long>(std::abs(e[i]));
      mpz_pow_ui(p.get_num_mpz_t(), x[i].get_num_mpz_t(), k);
      mpz_pow_ui(p.get_den_mpz_t(), x[i].get_den_mpz_t(), k);
      p.canonicalize();
      t *= e[i] > 0 ? p : Rational(1 / p);
    }
    acc += t;
  }
  return acc;
}

std::string LaurentPolynomial::to_string(const std::vector<std::string> &names) const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[e, c] = *it;
    Rational a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool unit = true;
    for (int v : e)
      unit = unit && v == 0;
    if (a != 1 || unit)
      os << gkz::to_string(a) << (unit ? "" : "*");
    bool lead = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      os << (lead ? "" : "*") << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] != 1)
        os << "^" << (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
      lead = false;
    }
  }
  return os.str();
}

} // namespace gkz
