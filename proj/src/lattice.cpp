#include "cremona/lattice.hpp"

#include <numeric>
#include <stdexcept>

namespace cremona {

Mat2 inverse_unimodular(const Mat2& m) {
  const Int d = det2(m);
  if (d != 1 && d != -1) throw std::invalid_argument("matrix is not unimodular");
  return make_mat(m(1, 1) * d, -m(0, 1) * d, -m(1, 0) * d, m(0, 0) * d);
}

bool is_unimodular(const Mat2& m) { return det2(m) == 1; }

Primitive::Primitive(Int a, Int b) {
  if (a == 0 && b == 0) throw std::invalid_argument("not a direction");
  const Int g = std::gcd(a, b);
  v_ = Vec2(a / g, b / g);
}

bool is_primitive(const Vec2& v) { return std::gcd(v(0), v(1)) == 1; }

std::ostream& operator<<(std::ostream& os, const Primitive& p) {
  return os << '(' << p.a() << ',' << p.b() << ')';
}

int half_plane(const Vec2& v) { return (v(1) < 0 || (v(1) == 0 && v(0) < 0)) ? 1 : 0; }

bool angle_less(const Vec2& u, const Vec2& v) {
  const int hu = half_plane(u);
  const int hv = half_plane(v);
  if (hu != hv) return hu < hv;
  return wedge(u, v) > 0;
}

namespace {

// Half-plane index of v measured counterclockwise from base.
int relative_half(const Vec2& base, const Vec2& v) {
  const Int w = wedge(base, v);
  return (w < 0 || (w == 0 && base.dot(v) < 0)) ? 1 : 0;
}

bool same_direction(const Vec2& u, const Vec2& v) { return wedge(u, v) == 0 && u.dot(v) > 0; }

// Angle of a from base is smaller than angle of b from base, both in [0, 2pi).
bool relative_less(const Vec2& base, const Vec2& a, const Vec2& b) {
  const int ha = relative_half(base, a);
  const int hb = relative_half(base, b);
  if (ha != hb) return ha < hb;
  return wedge(a, b) > 0;
}

}  // namespace

Vec2 cone_interior(const Vec2& from, const Vec2& to) {
  if (same_direction(from, to)) return -from;
  const Int w = wedge(from, to);
  if (w > 0) return from + to;
  if (w == 0) return Vec2(-from(1), from(0));
  return -(from + to);
}

bool strictly_inside(const Vec2& v, const Vec2& from, const Vec2& to) {
  if (same_direction(from, v)) return false;
  if (same_direction(from, to)) return true;
  return relative_less(from, v, to);
}

}  // namespace cremona
