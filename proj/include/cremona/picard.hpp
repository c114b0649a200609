#pragma once

#include "cremona/pl_aut.hpp"

#include <Eigen/Core>

#include <array>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cremona {

/// Polynomial in q with integer coefficients; c[i] is the coefficient of q^i, no trailing zeros.
class ZqPoly {
 public:
  ZqPoly() = default;
  ZqPoly(Int c);  // NOLINT: integers embed as constants
  explicit ZqPoly(std::vector<Int> coeffs);
  static ZqPoly q() { return ZqPoly(std::vector<Int>{0, 1}); }

  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Int constant() const { return c_.empty() ? 0 : c_[0]; }
  Int eval(Int q) const;

  ZqPoly& operator+=(const ZqPoly& o);
  ZqPoly& operator-=(const ZqPoly& o);
  friend ZqPoly operator+(ZqPoly a, const ZqPoly& b) { return a += b; }
  friend ZqPoly operator-(ZqPoly a, const ZqPoly& b) { return a -= b; }
  friend ZqPoly operator-(const ZqPoly& a) { return ZqPoly() - a; }
  friend ZqPoly operator*(const ZqPoly& a, const ZqPoly& b);
  friend bool operator==(const ZqPoly&, const ZqPoly&) = default;

 private:
  void trim();
  std::vector<Int> c_;
};

std::string to_string(const ZqPoly& p);

/// Piecewise-linear integer function on Z^2 modulo linear functions.
///
/// Stored on the rays where it breaks plus (1,0), (0,1), (-1,-1), sorted counterclockwise,
/// normalised by F(1,0) = F(0,1) = 0.
class BreakFn {
 public:
  BreakFn();  // zero
  /// Values on a complete fan (consecutive rays span cones of angle < pi); throws std::invalid_argument
  /// when the data is not a fan or the function is not integral on some cone.
  BreakFn(const std::vector<Primitive>& rays, const std::vector<Int>& values);

  /// max(0, -y): breaks only along (1,0) and (-1,0).
  static BreakFn A();

  const std::vector<Primitive>& rays() const { return rays_; }
  const std::vector<Int>& values() const { return values_; }
  Int operator()(const Vec2& w) const;
  std::vector<Primitive> breakpoints() const;
  bool is_zero() const;

  friend BreakFn operator+(const BreakFn& f, const BreakFn& g);
  friend BreakFn operator-(const BreakFn& f, const BreakFn& g);
  friend BreakFn operator*(Int k, const BreakFn& f);
  friend bool operator==(const BreakFn&, const BreakFn&) = default;

 private:
  std::vector<Primitive> rays_;
  std::vector<Int> values_;
};

/// F o g.
BreakFn compose(const BreakFn& f, const PLAut& g);

/// d(F,a) = F(u) + F(v) - k F(a) with u^a = a^v = 1 and F linear on [u,a] and [a,v].
Int index(const BreakFn& f, const Primitive& a);
/// Same, after pushing u and v a further extra_u, extra_v steps towards a.
Int index(const BreakFn& f, const Primitive& a, int extra_u, int extra_v);

/// Finitely supported function on primitive vectors.
using FunS = std::map<Primitive, Int>;

Int pairing(const BreakFn& f, const FunS& g);
bool is_ample(const BreakFn& f);
bool is_effective(const FunS& g);

enum class Family { B, E, Delta, P, W, Chain };

/// Basis symbol. B, E, Delta, Chain take a primitive vector, P and W any nonzero vector;
/// E and Delta carry a level >= 1.
struct Symbol {
  Family family;
  Int x;
  Int y;
  int level = 0;

  Vec2 arg() const { return Vec2(x, y); }
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

Symbol sym_b(const Vec2& a);
Symbol sym_e(const Vec2& a, int k);
Symbol sym_delta(const Vec2& a, int k);
Symbol sym_p(const Vec2& w);
Symbol sym_w(const Vec2& w);
Symbol sym_chain(const Vec2& a);

/// Finite Z[q]-combination of basis symbols plus a piecewise-linear part.
class PicVec {
 public:
  PicVec() = default;
  PicVec(const Symbol& s, const ZqPoly& c = 1) { add(s, c); }
  static PicVec pl(const BreakFn& f);

  /// Validates the symbol; W and P symbols at the origin are zero and dropped.
  void add(const Symbol& s, const ZqPoly& c);
  const std::map<Symbol, ZqPoly>& terms() const { return terms_; }
  const BreakFn& pl_part() const { return pl_; }
  ZqPoly coefficient(const Symbol& s) const;
  bool is_zero() const { return terms_.empty() && pl_.is_zero(); }
  PicVec at_q(Int q) const;

  PicVec& operator+=(const PicVec& o);
  PicVec& operator-=(const PicVec& o);
  friend PicVec operator+(PicVec a, const PicVec& b) { return a += b; }
  friend PicVec operator-(PicVec a, const PicVec& b) { return a -= b; }
  friend PicVec operator*(const ZqPoly& c, const PicVec& v);
  friend bool operator==(const PicVec&, const PicVec&) = default;

 private:
  std::map<Symbol, ZqPoly> terms_;
  BreakFn pl_;
};

std::string to_string(const PicVec& v);

/// The exceptional-curve action of L (inverse of P) on delta and PL terms.
PicVec delta_L_action(const PicVec& x);
/// delta.delta = -1 on equal symbols, deltas orthogonal to everything else, PL x chain via the
/// pairing. Throws std::domain_error for pairs on which no product is defined.
Int pic_product(const PicVec& x, const PicVec& y);

/// F' = F - sum d(F,s) delta^1_s.
PicVec f_prime(const BreakFn& f);
/// sum d(F,a) b_a.
PicVec be_encode(const BreakFn& f);
/// sum c_s s over the B, P or W terms of x; zero exactly on B_0 and V.
std::array<ZqPoly, 2> weight(const PicVec& x);
bool v_membership(const PicVec& x);

/// w - min(v^w, 0) v off the line of v, w - v on it; nullopt when the result is the origin.
std::optional<Vec2> sigma_v(const Vec2& w, const Primitive& v);

/// Mutation at v on B + E (the listed rules, with mu_v = sigma_v).
PicVec mu_be_action(const PicVec& x, const Primitive& v);
/// p_{kv} = sum_{j<k} (k-j) e_v^j + k b_v.
PicVec p_basis(int k, const Primitive& v);
/// Rewrites P terms in the B + E basis.
PicVec p_to_be(const PicVec& x);
/// mu_v(p_w) = p_{mu_v(w)} + A_v(w) p_{-v}.
PicVec mu_p_action(const PicVec& x, const Primitive& v);

enum class WqRule { Canonical, AsPrinted };

/// Mutation on W[q] at (1,0) by the three-case rule; at other v it is conjugated by any gamma
/// in SL2(Z) with gamma(1,0) = v (the result does not depend on the choice).
PicVec mu_Wq_action(const PicVec& x, WqRule rule = WqRule::Canonical);
PicVec mu_Wq_action(const PicVec& x, const Primitive& v, WqRule rule = WqRule::Canonical);
PicVec mu_Wq_inverse(const PicVec& x);

/// gamma acting on the arguments of every symbol and on the PL part by F -> F o gamma^-1.
PicVec gamma_action(const PicVec& x, const Mat2& gamma);

/// <e_u, e_w> = u ^ w extended bilinearly over the W terms.
ZqPoly wedge_form(const PicVec& x, const PicVec& y);

/// The cluster-side formulas on the W basis: e_w -> e_{sigma_v(w)} + max(v^w,0) e_{-v}, e_v -> -e_{-v}.
PicVec mu_cluster_formula(const PicVec& x, const Primitive& v);
/// The seed map V(t') -> V(t) for b_ij = i ^ j, mutation index v and relabelling sigma_v.
PicVec cluster_seed_map(const PicVec& x, const Primitive& v);

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

struct ClusterMutation {
  /// Column k is the image of e_{sigma(k)} in the basis e_0..e_{n-1} of V(t).
  IntMatrix basis_map;
  IntMatrix b_mutated;
};

/// Throws std::invalid_argument if b is not square antisymmetric or i is out of range.
ClusterMutation cluster_mutation(const IntMatrix& b, std::size_t i);

/// The W[q] words model: a linear action per letter.
using PicAction = std::function<PicVec(const PicVec&)>;

PicAction wq_gamma(const Mat2& gamma);
PicAction wq_mu();
PicAction wq_mu_inverse();
/// P = I^-1 mu and L = mu^-1 I.
PicAction wq_P();
PicAction wq_L();

/// Random element of V with coefficients in Z[q] of degree <= qdeg.
PicVec random_v_vector(std::mt19937_64& rng, int terms = 6, int qdeg = 1, Int box = 4);
/// Random Z[q] combination of W symbols.
PicVec random_w_vector(std::mt19937_64& rng, int terms = 6, int qdeg = 1, Int box = 4);
BreakFn random_breakfn(std::mt19937_64& rng, int extra_rays = 4, Int box = 5);

struct CrossBasisEntry {
  std::string comparison;
  std::string input;
  std::string lhs;
  std::string rhs;
  bool agrees = false;
};

struct CrossBasisReport {
  std::vector<CrossBasisEntry> entries;
  int discrepancies() const;
};

/// Compares the mutation in the B+E basis, the p basis and W[q] at q = 1 (both the canonical and
/// the as-printed rule) on p_w / e_w for w in [-box, box]^2 and v in {(1,0), (0,1)}.
CrossBasisReport cross_basis_report(Int box = 3);

}  // namespace cremona
