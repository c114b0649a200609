#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace cremona {

using Int = std::int64_t;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

using Vec2 = Vector2<Int>;
using Mat2 = Matrix2<Int>;

/// Antisymmetric form on Z^2 normalised by (1,0)^(0,1) = 1.
template <typename Derived1, typename Derived2>
inline typename Derived1::Scalar wedge(const Eigen::MatrixBase<Derived1>& u,
                                       const Eigen::MatrixBase<Derived2>& v) {
  return u(0) * v(1) - u(1) * v(0);
}

template <typename Derived>
inline typename Derived::Scalar det2(const Eigen::MatrixBase<Derived>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

inline Mat2 make_mat(Int m11, Int m12, Int m21, Int m22) {
  Mat2 m;
  m << m11, m12, m21, m22;
  return m;
}

inline Vec2 make_vec(Int a, Int b) { return Vec2(a, b); }

/// Inverse of an integer matrix with determinant +-1.
Mat2 inverse_unimodular(const Mat2& m);

bool is_unimodular(const Mat2& m);

/// A lattice direction with coprime coordinates.
class Primitive {
 public:
  /// Divides (a, b) by gcd(|a|,|b|); throws std::invalid_argument("not a direction") on (0,0).
  Primitive(Int a, Int b);
  explicit Primitive(const Vec2& v) : Primitive(v(0), v(1)) {}

  Int a() const { return v_(0); }
  Int b() const { return v_(1); }
  const Vec2& vec() const { return v_; }
  operator const Vec2&() const { return v_; }

  Primitive operator-() const { return Primitive(-v_(0), -v_(1)); }

  friend bool operator==(const Primitive& x, const Primitive& y) {
    return x.v_(0) == y.v_(0) && x.v_(1) == y.v_(1);
  }
  friend std::strong_ordering operator<=>(const Primitive& x, const Primitive& y) {
    if (auto c = x.v_(0) <=> y.v_(0); c != 0) return c;
    return x.v_(1) <=> y.v_(1);
  }

 private:
  Vec2 v_;
};

bool is_primitive(const Vec2& v);

std::ostream& operator<<(std::ostream& os, const Primitive& p);

// Angular order counterclockwise starting at the positive x-axis.
int half_plane(const Vec2& v);
bool angle_less(const Vec2& u, const Vec2& v);

/// A point strictly inside the counterclockwise cone from `from` to `to`.
/// Handles acute, straight and reflex cones; from == to means the full turn.
Vec2 cone_interior(const Vec2& from, const Vec2& to);

/// True when v lies strictly inside the counterclockwise cone from `from` to `to`.
bool strictly_inside(const Vec2& v, const Vec2& from, const Vec2& to);

struct LexLess {
  bool operator()(const Vec2& u, const Vec2& v) const {
    return u(0) != v(0) ? u(0) < v(0) : u(1) < v(1);
  }
};

struct AngleLess {
  bool operator()(const Vec2& u, const Vec2& v) const { return angle_less(u, v); }
};

}  // namespace cremona
