#pragma once

#include "cremona/lattice.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cremona {

/// Cyclically ordered rays (counterclockwise) decomposing the plane into cones.
///
/// Consecutive rays satisfy s_i ^ s_{i+1} >= 1, so every cone is strictly convex,
/// and the rays go around the origin exactly once.
class Fan {
 public:
  /// Throws std::invalid_argument when the rays violate the fan invariants.
  explicit Fan(std::vector<Primitive> rays);

  const std::vector<Primitive>& rays() const { return rays_; }
  std::size_t size() const { return rays_.size(); }

  /// Inserts the mediant of rays i and i+1 (cyclic) between them.
  Fan subdivide(std::size_t i) const;

  friend bool operator==(const Fan&, const Fan&) = default;

 private:
  std::vector<Primitive> rays_;
};

/// Fan of the coordinate chain (X),(Y),(Z) of CP^2.
Fan chain_fan();

struct PlPiece {
  Primitive ray;  // the piece covers the counterclockwise cone from this ray to the next one
  Mat2 matrix;
};

/// A piecewise-linear automorphism of Z^2 in canonical form.
///
/// Pieces are sorted counterclockwise from the positive x-axis and adjacent pieces
/// carry distinct matrices. A globally linear map has no pieces.
class PLAut {
 public:
  PLAut() : linear_(Mat2::Identity()) {}
  explicit PLAut(const Mat2& linear);

  /// Validates and canonicalises. The pieces may be given in any rotation but must be in
  /// counterclockwise order. Throws std::invalid_argument on invalid data.
  static PLAut from_pieces(std::vector<PlPiece> pieces);

  bool is_linear() const { return pieces_.empty(); }
  bool is_identity() const { return is_linear() && linear_ == Mat2::Identity(); }
  const Mat2& linear_matrix() const { return linear_; }
  const std::vector<PlPiece>& pieces() const { return pieces_; }

  /// Matrix of the cone containing v.
  const Mat2& matrix_at(const Vec2& v) const;
  Vec2 operator()(const Vec2& v) const { return matrix_at(v) * v; }

  std::vector<Primitive> breakpoints() const;

  friend bool operator==(const PLAut& f, const PLAut& g);

 private:
  static PLAut canonical(std::vector<PlPiece> pieces);

  std::vector<PlPiece> pieces_;
  Mat2 linear_;
};

enum class PlGenerator { P, L, C, I, U, Mu };

std::optional<PlGenerator> parse_pl_generator(std::string_view name);

/// P: (a,b) -> (b, min(0,b)-a); L its inverse; mu: (a,b) -> (a-min(0,b), b); C, I, U linear.
PLAut generator_pl(PlGenerator g);
/// Throws std::invalid_argument on unknown names.
PLAut generator_pl(std::string_view name);

Mat2 matrix_C();
Mat2 matrix_I();
Mat2 matrix_U();

Vec2 apply(const PLAut& f, const Vec2& v);
/// f o g, g applied first.
PLAut compose(const PLAut& f, const PLAut& g);
PLAut inverse(const PLAut& f);
PLAut power(const PLAut& f, int n);
bool equals(const PLAut& f, const PLAut& g);
/// Least n <= bound with f^n = identity.
std::optional<int> order(const PLAut& f, int bound = 64);

/// Checks the PL automorphism invariants on raw pieces; returns an error message or nullopt.
std::optional<std::string> validate_pieces(const std::vector<PlPiece>& pieces);

}  // namespace cremona
