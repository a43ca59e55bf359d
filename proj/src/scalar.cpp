#include "gkz/scalar.hpp"

#include "gkz/errors.hpp"

#include <cmath>
#include <sstream>

namespace gkz {

FieldPtr Scalar::field() const {
  if (auto *nf = std::get_if<NfElement>(&value_))
    return nf->field();
  return nullptr;
}

bool Scalar::is_zero() const {
  switch (kind()) {
  case ScalarKind::Rational:
    return as_rational() == 0;
  case ScalarKind::NumberField:
    return as_nf().is_zero();
  case ScalarKind::Numeric:
    return std::fabs(as_double()) < kNumericTolerance;
  }
  return false;
}

int Scalar::sign() const {
  switch (kind()) {
  case ScalarKind::Rational:
    return sgn(as_rational());
  case ScalarKind::NumberField:
    return as_nf().sign();
  case ScalarKind::Numeric:
    if (is_zero())
      return 0;
    return as_double() > 0 ? 1 : -1;
  }
  return 0;
}

double Scalar::to_double() const {
  switch (kind()) {
  case ScalarKind::Rational:
    return as_rational().get_d();
  case ScalarKind::NumberField:
    return static_cast<double>(as_nf().to_long_double());
  case ScalarKind::Numeric:
    return as_double();
  }
  return 0;
}

Scalar promote_to(const Scalar &s, const Scalar &like) {
  if (s.kind() == like.kind()) {
    if (s.kind() == ScalarKind::NumberField && !s.field()->same_as(*like.field()))
      throw ContextMismatch("scalars from different number fields");
    return s;
  }
  if (!s.is_rational())
    throw ContextMismatch("incompatible scalar contexts");
  if (like.kind() == ScalarKind::NumberField)
    return Scalar(NfElement(like.field(), s.as_rational()));
  return Scalar::numeric(s.as_rational().get_d());
}

namespace {

// Brings both operands into a common context.
std::pair<Scalar, Scalar> unify(const Scalar &a, const Scalar &b) {
  if (a.kind() == b.kind())
    return {a, b};
  if (a.is_rational())
    return {promote_to(a, b), b};
  if (b.is_rational())
    return {a, promote_to(b, a)};
  throw ContextMismatch("incompatible scalar contexts");
}

template <class Op> Scalar combine(const Scalar &a, const Scalar &b, Op op) {
  if (a.kind() == b.kind()) {
    switch (a.kind()) {
    case ScalarKind::Rational:
      return Scalar(Rational(op(a.as_rational(), b.as_rational())));
    case ScalarKind::NumberField:
      return Scalar(op(a.as_nf(), b.as_nf()));
    case ScalarKind::Numeric:
      return Scalar::numeric(op(a.as_double(), b.as_double()));
    }
  }
  auto [x, y] = unify(a, b);
  return combine(x, y, op);
}

} // namespace

Scalar &Scalar::operator+=(const Scalar &o) {
  *this = combine(*this, o, [](const auto &x, const auto &y) { return x + y; });
  return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) {
  *this = combine(*this, o, [](const auto &x, const auto &y) { return x - y; });
  return *this;
}

Scalar &Scalar::operator*=(const Scalar &o) {
  *this = combine(*this, o, [](const auto &x, const auto &y) { return x * y; });
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero())
    throw DivisionByZero("division by zero scalar");
  switch (kind()) {
  case ScalarKind::Rational:
    return Scalar(Rational(1 / as_rational()));
  case ScalarKind::NumberField:
    return Scalar(as_nf().inverse());
  case ScalarKind::Numeric:
    return numeric(1.0 / as_double());
  }
  return {};
}

Scalar &Scalar::operator/=(const Scalar &o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const {
  switch (kind()) {
  case ScalarKind::Rational:
    return Scalar(Rational(-as_rational()));
  case ScalarKind::NumberField:
    return Scalar(-as_nf());
  case ScalarKind::Numeric:
    return numeric(-as_double());
  }
  return {};
}

bool operator==(const Scalar &a, const Scalar &b) {
  if (a.kind() == b.kind()) {
    switch (a.kind()) {
    case ScalarKind::Rational:
      return a.as_rational() == b.as_rational();
    case ScalarKind::NumberField:
      return a.as_nf() == b.as_nf();
    case ScalarKind::Numeric:
      return std::fabs(a.as_double() - b.as_double()) < kNumericTolerance;
    }
  }
  auto [x, y] = unify(a, b);
  return x == y;
}

std::string Scalar::to_string() const {
  switch (kind()) {
  case ScalarKind::Rational:
    return gkz::to_string(as_rational());
  case ScalarKind::NumberField:
    return as_nf().to_string();
  case ScalarKind::Numeric: {
    std::ostringstream os;
    os.precision(17);
    os << as_double();
    return os.str();
  }
  }
  return {};
}

Mat2 Mat2::inverse() const {
  Scalar d = determinant();
  if (d.is_zero())
    throw DivisionByZero("singular 2x2 matrix");
  Scalar inv = d.inverse();
  return {{row1[1] * inv, -row0[1] * inv}, {-row1[0] * inv, row0[0] * inv}};
}

Mat2 operator*(const Mat2 &a, const Mat2 &b) {
  return {{a.row0[0] * b.row0[0] + a.row0[1] * b.row1[0],
           a.row0[0] * b.row0[1] + a.row0[1] * b.row1[1]},
          {a.row1[0] * b.row0[0] + a.row1[1] * b.row1[0],
           a.row1[0] * b.row0[1] + a.row1[1] * b.row1[1]}};
}

} // namespace gkz
