#include "gkz/number_field.hpp"

#include "gkz/errors.hpp"

#include <cmath>
#include <sstream>

namespace gkz {

namespace qpoly {

void trim(Poly &p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

Poly mul(const Poly &a, const Poly &b) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// a = q*b + r
std::pair<Poly, Poly> divmod(Poly a, const Poly &b) {
  Poly q;
  trim(a);
  if (b.empty())
    throw DivisionByZero("polynomial division by zero");
  if (a.size() >= b.size())
    q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] -= f * b[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly rem(Poly a, const Poly &b) { return divmod(std::move(a), b).second; }

} // namespace qpoly

namespace {

long double eval_minpoly(const std::vector<Integer> &p, long double x) {
  long double acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    acc = acc * x + static_cast<long double>(it->get_d());
  return acc;
}

long double eval_derivative(const std::vector<Integer> &p, long double x) {
  long double acc = 0;
  for (std::size_t k = p.size() - 1; k >= 1; --k)
    acc = acc * x + static_cast<long double>(k) * static_cast<long double>(p[k].get_d());
  return acc;
}

} // namespace

NumberField::NumberField(std::vector<Integer> minpoly, double real_root_hint)
    : minpoly_(std::move(minpoly)), root_(real_root_hint) {
  if (minpoly_.size() < 2 || minpoly_.back() != 1)
    throw InputError("minimal polynomial must be monic of degree >= 1");
  for (int it = 0; it < 200; ++it) {
    long double d = eval_derivative(minpoly_, root_);
    if (d == 0)
      break;
    long double step = eval_minpoly(minpoly_, root_) / d;
    root_ -= step;
    if (std::fabs(step) < 1e-18L * (1 + std::fabs(root_)))
      break;
  }
  if (std::fabs(eval_minpoly(minpoly_, root_)) > 1e-9L)
    throw InputError("no real root of the minimal polynomial near the embedding hint");
}

std::shared_ptr<const NumberField> NumberField::make(std::vector<Integer> minpoly,
                                                     double real_root_hint) {
  return std::make_shared<const NumberField>(std::move(minpoly), real_root_hint);
}

std::shared_ptr<const NumberField> NumberField::heptagon() {
  static const auto field = make({Integer(-1), Integer(-2), Integer(1), Integer(1)},
                                 2.0 * std::cos(2.0 * M_PI / 7.0));
  return field;
}

NfElement::NfElement(FieldPtr field, const Rational &value)
    : field_(std::move(field)), coeffs_(field_->degree(), Rational(0)) {
  coeffs_[0] = value;
}

NfElement::NfElement(FieldPtr field, std::vector<Rational> reduced, bool)
    : field_(std::move(field)), coeffs_(std::move(reduced)) {
  coeffs_.resize(field_->degree(), Rational(0));
}

NfElement NfElement::from_polynomial(FieldPtr field, std::vector<Rational> coeffs) {
  qpoly::Poly p(field->minpoly().begin(), field->minpoly().end());
  auto r = qpoly::rem(std::move(coeffs), p);
  return NfElement(std::move(field), std::move(r), true);
}

NfElement NfElement::generator(FieldPtr field) {
  if (field->degree() == 1) {
    // x = -p0 in a degree-one field
    return NfElement(field, Rational(-field->minpoly()[0]));
  }
  std::vector<Rational> c(field->degree(), Rational(0));
  c[1] = 1;
  return NfElement(std::move(field), std::move(c), true);
}

bool NfElement::is_zero() const {
  for (const auto &c : coeffs_)
    if (c != 0)
      return false;
  return true;
}

bool NfElement::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0)
      return false;
  return true;
}

long double NfElement::to_long_double() const {
  long double x = field_->embedding();
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + static_cast<long double>(it->get_d());
  return acc;
}

int NfElement::sign() const {
  if (is_zero())
    return 0;
  if (is_rational())
    return sgn(coeffs_[0]);
  long double v = to_long_double();
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

void NfElement::check_same_field(const NfElement &o) const {
  if (field_ != o.field_ && !field_->same_as(*o.field_))
    throw ContextMismatch("arithmetic between different number fields");
}

NfElement &NfElement::operator+=(const NfElement &o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] += o.coeffs_[i];
  return *this;
}

NfElement &NfElement::operator-=(const NfElement &o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] -= o.coeffs_[i];
  return *this;
}

NfElement &NfElement::operator*=(const NfElement &o) {
  check_same_field(o);
  *this = from_polynomial(field_, qpoly::mul(coeffs_, o.coeffs_));
  return *this;
}

NfElement NfElement::operator-() const {
  NfElement r = *this;
  for (auto &c : r.coeffs_)
    c = -c;
  return r;
}

NfElement NfElement::inverse() const {
  if (is_zero())
    throw DivisionByZero("inverse of zero in a number field");
  using qpoly::Poly;
  Poly r0(field_->minpoly().begin(), field_->minpoly().end());
  Poly r1 = coeffs_;
  qpoly::trim(r1);
  Poly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = qpoly::divmod(r0, r1);
    Poly qs = qpoly::mul(q, s1);
    Poly s2 = s0;
    if (s2.size() < qs.size())
      s2.resize(qs.size(), Rational(0));
    for (std::size_t i = 0; i < qs.size(); ++i)
      s2[i] -= qs[i];
    qpoly::trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1)
    throw PreconditionError("minimal polynomial is reducible: element is a zero divisor");
  for (auto &c : s0)
    c /= r0[0];
  return from_polynomial(field_, std::move(s0));
}

bool operator==(const NfElement &a, const NfElement &b) {
  a.check_same_field(b);
  return a.coeffs_ == b.coeffs_;
}

bool repr_less(const NfElement &a, const NfElement &b) {
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] != b.coeffs_[i])
      return a.coeffs_[i] < b.coeffs_[i];
  }
  return false;
}

std::string NfElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational &c = coeffs_[i];
    if (c == 0)
      continue;
    std::string mag = gkz::to_string(abs(c));
    if (!first)
      os << (c < 0 ? " - " : " + ");
    else if (c < 0)
      os << "-";
    bool unit = (abs(c) == 1);
    if (i == 0 || !unit)
      os << mag;
    if (i >= 1)
      os << (i == 0 || !unit ? "*" : "") << "x";
    if (i >= 2)
      os << "^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

} // namespace gkz
