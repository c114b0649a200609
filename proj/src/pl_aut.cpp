#include "cremona/pl_aut.hpp"

#include <algorithm>
#include <stdexcept>

namespace cremona {

namespace {

bool rays_cyclically_ordered(const std::vector<Vec2>& rays) {
  const std::size_t n = rays.size();
  if (n < 2) return true;
  int descents = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = rays[i];
    const Vec2& b = rays[(i + 1) % n];
    if (a == b) return false;
    if (!angle_less(a, b)) ++descents;
  }
  return descents == 1;
}

void sort_by_angle(std::vector<PlPiece>& pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const PlPiece& x, const PlPiece& y) { return angle_less(x.ray, y.ray); });
}

}  // namespace

// ---------------------------------------------------------------------------- Fan

Fan::Fan(std::vector<Primitive> rays) : rays_(std::move(rays)) {
  if (rays_.size() < 3) throw std::invalid_argument("fan needs at least three rays");
  std::vector<Vec2> as_vec(rays_.begin(), rays_.end());
  if (!rays_cyclically_ordered(as_vec)) throw std::invalid_argument("fan rays are not cyclically ordered");
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (wedge(rays_[i].vec(), rays_[(i + 1) % rays_.size()].vec()) < 1)
      throw std::invalid_argument("fan cone is not strictly convex");
  }
}

Fan Fan::subdivide(std::size_t i) const {
  if (i >= rays_.size()) throw std::out_of_range("invalid cone index");
  const Vec2 sum = rays_[i].vec() + rays_[(i + 1) % rays_.size()].vec();
  std::vector<Primitive> rays = rays_;
  rays.insert(rays.begin() + static_cast<std::ptrdiff_t>(i) + 1, Primitive(sum));
  return Fan(std::move(rays));
}

Fan chain_fan() { return Fan({Primitive(1, 0), Primitive(0, 1), Primitive(-1, -1)}); }

// ---------------------------------------------------------------------------- PLAut

PLAut::PLAut(const Mat2& linear) : linear_(linear) {
  if (!is_unimodular(linear)) throw std::invalid_argument("linear part must have determinant 1");
}

std::optional<std::string> validate_pieces(const std::vector<PlPiece>& pieces) {
  const std::size_t n = pieces.size();
  if (n == 0) return "no pieces";
  std::vector<Vec2> rays;
  std::vector<Vec2> images;
  for (std::size_t i = 0; i < n; ++i) {
    const PlPiece& p = pieces[i];
    if (!is_unimodular(p.matrix)) return "piece matrix does not have determinant 1";
    rays.push_back(p.ray.vec());
    images.push_back(p.matrix * p.ray.vec());
    const PlPiece& prev = pieces[(i + n - 1) % n];
    if (prev.matrix * p.ray.vec() != p.matrix * p.ray.vec())
      return "adjacent matrices disagree on a shared ray";
  }
  if (!rays_cyclically_ordered(rays)) return "breakpoint rays are not cyclically ordered";
  if (!rays_cyclically_ordered(images)) return "image rays are not cyclically ordered";
  return std::nullopt;
}

PLAut PLAut::from_pieces(std::vector<PlPiece> pieces) {
  sort_by_angle(pieces);
  if (auto err = validate_pieces(pieces)) throw std::invalid_argument(*err);
  return canonical(std::move(pieces));
}

PLAut PLAut::canonical(std::vector<PlPiece> pieces) {
  const std::size_t n = pieces.size();
  std::vector<PlPiece> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (pieces[i].matrix != pieces[(i + n - 1) % n].matrix) kept.push_back(pieces[i]);
  }
  PLAut out;
  if (kept.empty()) {
    out.linear_ = pieces.front().matrix;
  } else {
    out.pieces_ = std::move(kept);
    out.linear_ = Mat2::Zero();
  }
  return out;
}

const Mat2& PLAut::matrix_at(const Vec2& v) const {
  if (pieces_.empty()) return linear_;
  if (v.isZero()) return pieces_.front().matrix;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), v,
                             [](const Vec2& x, const PlPiece& p) { return angle_less(x, p.ray.vec()); });
  if (it == pieces_.begin()) return pieces_.back().matrix;
  return std::prev(it)->matrix;
}

std::vector<Primitive> PLAut::breakpoints() const {
  std::vector<Primitive> out;
  for (const auto& p : pieces_) out.push_back(p.ray);
  return out;
}

bool operator==(const PLAut& f, const PLAut& g) {
  if (f.pieces_.size() != g.pieces_.size()) return false;
  if (f.pieces_.empty()) return f.linear_ == g.linear_;
  for (std::size_t i = 0; i < f.pieces_.size(); ++i) {
    if (f.pieces_[i].ray != g.pieces_[i].ray || f.pieces_[i].matrix != g.pieces_[i].matrix) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------- generators

Mat2 matrix_C() { return make_mat(-1, 1, -1, 0); }
Mat2 matrix_I() { return make_mat(0, -1, 1, 0); }
Mat2 matrix_U() { return make_mat(1, 1, 0, 1); }

std::optional<PlGenerator> parse_pl_generator(std::string_view name) {
  if (name == "P") return PlGenerator::P;
  if (name == "L") return PlGenerator::L;
  if (name == "C") return PlGenerator::C;
  if (name == "I") return PlGenerator::I;
  if (name == "U") return PlGenerator::U;
  if (name == "mu") return PlGenerator::Mu;
  return std::nullopt;
}

PLAut generator_pl(PlGenerator g) {
  switch (g) {
    case PlGenerator::P:
      return PLAut::from_pieces({{Primitive(1, 0), make_mat(0, 1, -1, 0)},
                                 {Primitive(-1, 0), make_mat(0, 1, -1, 1)}});
    case PlGenerator::L:
      return PLAut::from_pieces({{Primitive(0, -1), make_mat(0, -1, 1, 0)},
                                 {Primitive(0, 1), make_mat(1, -1, 1, 0)}});
    case PlGenerator::Mu:
      return PLAut::from_pieces({{Primitive(1, 0), Mat2::Identity()},
                                 {Primitive(-1, 0), make_mat(1, -1, 0, 1)}});
    case PlGenerator::C:
      return PLAut(matrix_C());
    case PlGenerator::I:
      return PLAut(matrix_I());
    case PlGenerator::U:
      return PLAut(matrix_U());
  }
  throw std::invalid_argument("unknown generator");
}

PLAut generator_pl(std::string_view name) {
  auto g = parse_pl_generator(name);
  if (!g) throw std::invalid_argument("unknown generator: " + std::string(name));
  return generator_pl(*g);
}

// ---------------------------------------------------------------------------- group law

Vec2 apply(const PLAut& f, const Vec2& v) { return f(v); }

PLAut inverse(const PLAut& f) {
  if (f.is_linear()) return PLAut(inverse_unimodular(f.linear_matrix()));
  std::vector<PlPiece> pieces;
  for (const auto& p : f.pieces()) pieces.push_back({Primitive(p.matrix * p.ray.vec()), inverse_unimodular(p.matrix)});
  return PLAut::from_pieces(std::move(pieces));
}

PLAut compose(const PLAut& f, const PLAut& g) {
  if (f.is_linear() && g.is_linear()) return PLAut(f.linear_matrix() * g.linear_matrix());

  std::vector<Vec2> candidates;
  for (const auto& p : g.pieces()) candidates.push_back(p.ray.vec());
  if (!f.is_linear()) {
    const PLAut g_inv = inverse(g);
    for (const auto& p : f.pieces()) candidates.push_back(Primitive(g_inv(p.ray.vec())).vec());
  }
  std::sort(candidates.begin(), candidates.end(), AngleLess{});
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<PlPiece> pieces;
  const std::size_t n = candidates.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 inside = cone_interior(candidates[i], candidates[(i + 1) % n]);
    const Mat2& mg = g.matrix_at(inside);
    const Mat2& mf = f.matrix_at(mg * inside);
    pieces.push_back({Primitive(candidates[i]), mf * mg});
  }
  return PLAut::from_pieces(std::move(pieces));
}

PLAut power(const PLAut& f, int n) {
  PLAut base = n < 0 ? inverse(f) : f;
  PLAut out;
  for (int k = 0; k < (n < 0 ? -n : n); ++k) out = compose(base, out);
  return out;
}

bool equals(const PLAut& f, const PLAut& g) { return f == g; }

std::optional<int> order(const PLAut& f, int bound) {
  if (bound < 1) throw std::invalid_argument("order bound must be positive");
  PLAut g = f;
  for (int n = 1; n <= bound; ++n) {
    if (g.is_identity()) return n;
    g = compose(f, g);
  }
  return std::nullopt;
}

}  // namespace cremona
