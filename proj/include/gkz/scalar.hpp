#pragma once

#include "gkz/number_field.hpp"
#include "gkz/rational.hpp"

#include <array>
#include <string>
#include <variant>

namespace gkz {

enum class ScalarKind { Rational, NumberField, Numeric };

/// Absolute tolerance used by numeric scalars (after the owning
/// configuration has been scaled to unit max-norm).
inline constexpr double kNumericTolerance = 1e-9;

/// Exact field element (rational or number-field element) or, in numeric
/// mode, a double compared with an absolute tolerance. Rationals embed into
/// either of the other two kinds; number fields never mix with doubles or
/// with other number fields.
class Scalar {
public:
  Scalar() : value_(Rational(0)) {}
  Scalar(long v) : value_(Rational(v)) {}
  Scalar(int v) : value_(Rational(v)) {}
  Scalar(const Integer &v) : value_(Rational(v)) {}
  // canonicalized: mpq_class(p, q) does not reduce
  Scalar(Rational v) : value_(std::move(v)) { std::get<Rational>(value_).canonicalize(); }
  Scalar(NfElement v) : value_(std::move(v)) {}
  static Scalar numeric(double v) { return Scalar(Tag{}, v); }

  ScalarKind kind() const { return static_cast<ScalarKind>(value_.index()); }
  bool is_rational() const { return kind() == ScalarKind::Rational; }
  const Rational &as_rational() const { return std::get<Rational>(value_); }
  const NfElement &as_nf() const { return std::get<NfElement>(value_); }
  double as_double() const { return std::get<double>(value_); }
  // Field of a number-field scalar, nullptr otherwise.
  FieldPtr field() const;

  bool is_zero() const;
  int sign() const;
  double to_double() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  Scalar inverse() const;

  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
  // Exact equality; numeric scalars compare within kNumericTolerance.
  friend bool operator==(const Scalar &a, const Scalar &b);

  std::string to_string() const;

private:
  struct Tag {};
  Scalar(Tag, double v) : value_(v) {}

  std::variant<Rational, NfElement, double> value_;
};

/// Lift `s` into the context of `like` (rational -> field / numeric).
Scalar promote_to(const Scalar &s, const Scalar &like);

using Vec2 = std::array<Scalar, 2>;

inline Scalar det(const Vec2 &a, const Vec2 &b) { return a[0] * b[1] - a[1] * b[0]; }
inline bool is_zero(const Vec2 &v) { return v[0].is_zero() && v[1].is_zero(); }
inline bool parallel(const Vec2 &a, const Vec2 &b) { return det(a, b).is_zero(); }
inline Vec2 operator+(const Vec2 &a, const Vec2 &b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2 &a) { return {-a[0], -a[1]}; }
inline Vec2 operator*(const Scalar &s, const Vec2 &v) { return {s * v[0], s * v[1]}; }
inline bool operator==(const Vec2 &a, const Vec2 &b) { return a[0] == b[0] && a[1] == b[1]; }

/// 2x2 matrix acting on column vectors; rows stored as Vec2.
struct Mat2 {
  Vec2 row0, row1;
  Vec2 apply(const Vec2 &v) const {
    return {row0[0] * v[0] + row0[1] * v[1], row1[0] * v[0] + row1[1] * v[1]};
  }
  Scalar determinant() const { return row0[0] * row1[1] - row0[1] * row1[0]; }
  Mat2 inverse() const;
  static Mat2 identity() { return {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}; }
  // Matrix with columns u, v.
  static Mat2 from_columns(const Vec2 &u, const Vec2 &v) {
    return {{u[0], v[0]}, {u[1], v[1]}};
  }
  friend Mat2 operator*(const Mat2 &a, const Mat2 &b);
};

} // namespace gkz
