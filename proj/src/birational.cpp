#include "cremona/birational.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cremona {

RationalFn::RationalFn(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw std::invalid_argument("zero denominator");
}

std::optional<u64> RationalFn::eval(const PrimeField& f, u64 x, u64 y) const {
  const auto d = den.eval(f, x, y);
  if (!d || *d == 0) return std::nullopt;
  const auto n = num.eval(f, x, y);
  if (!n) return std::nullopt;
  return f.mul(*n, f.inv(*d));
}

RationalFn RationalFn::derivative(int var) const {
  return RationalFn(num.derivative(var) * den - num * den.derivative(var), den * den);
}

bool equals(const RationalFn& a, const RationalFn& b) { return a.num * b.den == b.num * a.den; }

BirLetter bir_P() { return {}; }

BirLetter bir_L() {
  BirLetter g;
  g.kind = BirLetter::Kind::L;
  return g;
}

BirLetter bir_monomial(const Mat2& m) {
  const Int d = det2(m);
  if (d != 1 && d != -1) throw std::invalid_argument("singular matrix");
  BirLetter g;
  g.kind = BirLetter::Kind::Monomial;
  g.matrix = m;
  return g;
}

BirLetter bir_scaling(const Rational& lambda) {
  if (lambda == 0) throw std::invalid_argument("zero scaling");
  BirLetter g;
  g.kind = BirLetter::Kind::Scaling;
  g.lambda = lambda;
  return g;
}

BirLetter inverse(const BirLetter& g) {
  switch (g.kind) {
    case BirLetter::Kind::P: return bir_L();
    case BirLetter::Kind::L: return bir_P();
    case BirLetter::Kind::Monomial: return bir_monomial(inverse_unimodular(g.matrix));
    case BirLetter::Kind::Scaling: return bir_scaling(1 / g.lambda);
  }
  return g;
}

namespace {

const LaurentPoly& one() {
  static const LaurentPoly p = LaurentPoly::constant(1);
  return p;
}

LaurentPoly mono(Int i, Int j) { return LaurentPoly::monomial(i, j); }

}  // namespace

BirMap identity_bir() { return {RationalFn(mono(1, 0), one()), RationalFn(mono(0, 1), one())}; }

BirMap generator_bir(const BirLetter& g) {
  switch (g.kind) {
    case BirLetter::Kind::P:
      return {RationalFn(mono(0, 1), one()), RationalFn(one() + mono(0, 1), mono(1, 0))};
    case BirLetter::Kind::L:
      return {RationalFn(one() + mono(1, 0), mono(0, 1)), RationalFn(mono(1, 0), one())};
    case BirLetter::Kind::Monomial: {
      const Mat2& m = g.matrix;
      return {RationalFn(mono(m(0, 0), m(0, 1)), one()), RationalFn(mono(m(1, 0), m(1, 1)), one())};
    }
    case BirLetter::Kind::Scaling:
      return {RationalFn(LaurentPoly::monomial(1, 0, g.lambda), one()), RationalFn(mono(0, 1), one())};
  }
  return identity_bir();
}

namespace {

// Substitution x -> a/b, y -> c/d. Monomial factors are Laurent units and are absorbed
// directly; the remaining factors are tracked as powers of distinct bases so that
// clearing denominators only multiplies by what is needed.
class Substitution {
 public:
  explicit Substitution(const BirMap& g) {
    setup(0, g.f1);
    setup(1, g.f2);
  }

  // N(g) = S * prod base_b^{shift_b}
  struct Result {
    LaurentPoly poly;
    std::vector<Int> shift;
  };

  Result apply(const LaurentPoly& n) {
    const std::size_t nb = bases_.size();
    std::vector<std::pair<LaurentPoly, std::vector<Int>>> parts;
    std::vector<Int> lo(nb, 0);
    bool first = true;
    for (const auto& [e, c] : n.terms()) {
      LaurentPoly u = LaurentPoly::constant(c) * unit_power(0, e.first) * unit_power(1, e.second);
      std::vector<Int> ex(nb);
      for (std::size_t b = 0; b < nb; ++b) ex[b] = e.first * exps_[0][b] + e.second * exps_[1][b];
      for (std::size_t b = 0; b < nb; ++b) lo[b] = first ? ex[b] : std::min(lo[b], ex[b]);
      first = false;
      parts.emplace_back(std::move(u), std::move(ex));
    }
    Result r{LaurentPoly(), lo};
    for (auto& [u, ex] : parts) {
      LaurentPoly t = std::move(u);
      for (std::size_t b = 0; b < nb; ++b)
        if (ex[b] > lo[b]) t *= base_power(b, ex[b] - lo[b]);
      r.poly += t;
    }
    return r;
  }

  const LaurentPoly& base_power(std::size_t b, Int k) {
    auto key = std::make_pair(b, k);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, bases_[b].pow(static_cast<unsigned>(k))).first;
    return it->second;
  }

  std::size_t base_count() const { return bases_.size(); }

 private:
  void setup(int k, const RationalFn& r) {
    unit_[k] = one();
    absorb(k, r.num, 1);
    absorb(k, r.den, -1);
  }

  void absorb(int k, const LaurentPoly& p, Int sign) {
    if (p.is_monomial()) {
      unit_[k] *= sign > 0 ? p : p.monomial_inverse();
      return;
    }
    std::size_t idx = 0;
    while (idx < bases_.size() && !(bases_[idx] == p)) ++idx;
    if (idx == bases_.size()) {
      bases_.push_back(p);
      for (auto& e : exps_) e.push_back(0);
    }
    exps_[k][idx] += sign;
  }

  LaurentPoly unit_power(int k, Int n) const {
    if (n >= 0) return unit_[k].pow(static_cast<unsigned>(n));
    return unit_[k].monomial_inverse().pow(static_cast<unsigned>(-n));
  }

  std::vector<LaurentPoly> bases_;
  std::array<std::vector<Int>, 2> exps_;
  std::array<LaurentPoly, 2> unit_;
  std::map<std::pair<std::size_t, Int>, LaurentPoly> cache_;
};

RationalFn substitute(const RationalFn& f, Substitution& s) {
  auto n = s.apply(f.num);
  auto d = s.apply(f.den);
  LaurentPoly num = std::move(n.poly);
  LaurentPoly den = std::move(d.poly);
  for (std::size_t b = 0; b < s.base_count(); ++b) {
    const Int diff = n.shift[b] - d.shift[b];
    if (diff > 0) num *= s.base_power(b, diff);
    if (diff < 0) den *= s.base_power(b, -diff);
  }
  return RationalFn(std::move(num), std::move(den));
}

}  // namespace

BirMap compose_bir(const BirMap& f, const BirMap& g) {
  Substitution s(g);
  return {substitute(f.f1, s), substitute(f.f2, s)};
}

BirMap compose_word_bir(const BirWord& w) {
  BirMap out = identity_bir();
  for (const auto& g : w) out = compose_bir(out, generator_bir(g));
  return out;
}

bool equals(const BirMap& f, const BirMap& g) { return equals(f.f1, g.f1) && equals(f.f2, g.f2); }

std::optional<FpPoint> try_eval(const BirMap& f, const FpPoint& pt, const PrimeField& field) {
  const auto a = f.f1.eval(field, pt[0], pt[1]);
  if (!a) return std::nullopt;
  const auto b = f.f2.eval(field, pt[0], pt[1]);
  if (!b) return std::nullopt;
  return FpPoint{*a, *b};
}

FpPoint eval_map(const BirMap& f, const FpPoint& pt, const PrimeField& field) {
  auto r = try_eval(f, pt, field);
  if (!r) throw UndefinedPoint();
  return *r;
}

namespace {

// Direct formulas for the letters; avoids going through LaurentPoly on hot paths.
std::optional<FpPoint> eval_letter(const BirLetter& g, const FpPoint& pt, const PrimeField& f) {
  const u64 x = pt[0];
  const u64 y = pt[1];
  switch (g.kind) {
    case BirLetter::Kind::P:
      if (x == 0) return std::nullopt;
      return FpPoint{y, f.mul(f.add(1, y), f.inv(x))};
    case BirLetter::Kind::L:
      if (y == 0) return std::nullopt;
      return FpPoint{f.mul(f.add(1, x), f.inv(y)), x};
    case BirLetter::Kind::Monomial: {
      const Mat2& m = g.matrix;
      auto power = [&](u64 base, Int e) -> std::optional<u64> {
        if (e >= 0) return f.pow(base, static_cast<u64>(e));
        if (base == 0) return std::nullopt;
        return f.pow(f.inv(base), static_cast<u64>(-e));
      };
      const auto a = power(x, m(0, 0)), b = power(y, m(0, 1)), c = power(x, m(1, 0)), d = power(y, m(1, 1));
      if (!a || !b || !c || !d) return std::nullopt;
      return FpPoint{f.mul(*a, *b), f.mul(*c, *d)};
    }
    case BirLetter::Kind::Scaling: {
      const auto l = reduce_mod(g.lambda, f);
      if (!l) return std::nullopt;
      return FpPoint{f.mul(*l, x), y};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<FpPoint> try_eval(const BirWord& w, FpPoint pt, const PrimeField& field) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    auto next = eval_letter(*it, pt, field);
    if (!next) return std::nullopt;
    pt = *next;
  }
  return pt;
}

double degree_bound_log2(const BirWord& w) {
  double acc = 0.0;
  for (const auto& g : w) {
    switch (g.kind) {
      case BirLetter::Kind::P:
      case BirLetter::Kind::L: acc += 1.0; break;
      case BirLetter::Kind::Monomial: {
        const Mat2& m = g.matrix;
        const Int d = std::max(std::abs(m(0, 0)) + std::abs(m(0, 1)), std::abs(m(1, 0)) + std::abs(m(1, 1)));
        acc += std::log2(static_cast<double>(d));
        break;
      }
      case BirLetter::Kind::Scaling: break;
    }
  }
  return acc;
}

namespace {

double log2_sum(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log2(1.0 + std::exp2(std::min(a, b) - hi));
}

void check_prime(u64 p) {
  if (p <= (u64{1} << 61)) throw std::invalid_argument("prime must exceed 2^61");
}

}  // namespace

IdentityCheck word_equals(const BirWord& lhs, const BirWord& rhs, int trials, u64 p, std::mt19937_64& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  check_prime(p);
  const PrimeField field(p);
  IdentityCheck out;
  const long budget = 100L * trials;
  for (long attempt = 0; attempt < budget && out.agreeing_trials < trials; ++attempt) {
    const FpPoint pt{field.random_nonzero(rng), field.random_nonzero(rng)};
    const auto a = try_eval(lhs, pt, field);
    if (!a) continue;
    const auto b = try_eval(rhs, pt, field);
    if (!b) continue;
    if (*a != *b) {
      out.outcome = Outcome::Fails;
      out.witness = pt;
      out.lhs_value = a;
      out.rhs_value = b;
      return out;
    }
    ++out.agreeing_trials;
  }
  if (out.agreeing_trials < trials) return out;
  out.outcome = Outcome::Holds;
  const double per_trial =
      std::min(0.0, log2_sum(degree_bound_log2(lhs), degree_bound_log2(rhs)) - std::log2(static_cast<double>(p)));
  out.error_log2 = trials * per_trial;
  return out;
}

namespace {

struct Jet {
  FpPoint value;
  std::array<u64, 4> jac;  // row-major
};

using JacobianFns = std::array<RationalFn, 4>;

JacobianFns jacobian(const BirMap& f) {
  return {f.f1.derivative(0), f.f1.derivative(1), f.f2.derivative(0), f.f2.derivative(1)};
}

std::optional<Jet> eval_jet(const BirMap& f, const JacobianFns& j, const FpPoint& pt, const PrimeField& field) {
  const auto v = try_eval(f, pt, field);
  if (!v) return std::nullopt;
  Jet out{*v, {}};
  for (int k = 0; k < 4; ++k) {
    const auto d = j[k].eval(field, pt[0], pt[1]);
    if (!d) return std::nullopt;
    out.jac[k] = *d;
  }
  return out;
}

bool symplectic_at(const FpPoint& pt, const FpPoint& img, const std::array<u64, 4>& J, const PrimeField& f) {
  const u64 det = f.sub(f.mul(J[0], J[3]), f.mul(J[1], J[2]));
  return f.mul(f.mul(pt[0], pt[1]), det) == f.mul(img[0], img[1]);
}

template <typename Sample>
IdentityCheck run_symplectic(int trials, u64 p, std::mt19937_64& rng, Sample sample) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  const PrimeField field(p);
  IdentityCheck out;
  const long budget = 100L * trials;
  for (long attempt = 0; attempt < budget && out.agreeing_trials < trials; ++attempt) {
    const FpPoint pt{field.random_nonzero(rng), field.random_nonzero(rng)};
    const auto jet = sample(pt, field);
    if (!jet) continue;
    if (!symplectic_at(pt, jet->value, jet->jac, field)) {
      out.outcome = Outcome::Fails;
      out.witness = pt;
      out.lhs_value = jet->value;
      return out;
    }
    ++out.agreeing_trials;
  }
  if (out.agreeing_trials == trials) out.outcome = Outcome::Holds;
  return out;
}

}  // namespace

IdentityCheck is_symplectic(const BirMap& f, int trials, u64 p, std::mt19937_64& rng) {
  const JacobianFns j = jacobian(f);
  return run_symplectic(trials, p, rng, [&](const FpPoint& pt, const PrimeField& field) {
    return eval_jet(f, j, pt, field);
  });
}

IdentityCheck is_symplectic(const BirWord& w, int trials, u64 p, std::mt19937_64& rng) {
  std::vector<BirMap> maps;
  std::vector<JacobianFns> jacs;
  for (const auto& g : w) {
    maps.push_back(generator_bir(g));
    jacs.push_back(jacobian(maps.back()));
  }
  return run_symplectic(trials, p, rng, [&](const FpPoint& pt, const PrimeField& field) -> std::optional<Jet> {
    Jet acc{pt, {1, 0, 0, 1}};
    for (std::size_t k = w.size(); k-- > 0;) {
      const auto step = eval_jet(maps[k], jacs[k], acc.value, field);
      if (!step) return std::nullopt;
      const auto& A = step->jac;
      const auto& B = acc.jac;
      acc.jac = {field.add(field.mul(A[0], B[0]), field.mul(A[1], B[2])),
                 field.add(field.mul(A[0], B[1]), field.mul(A[1], B[3])),
                 field.add(field.mul(A[2], B[0]), field.mul(A[3], B[2])),
                 field.add(field.mul(A[2], B[1]), field.mul(A[3], B[3]))};
      acc.value = step->value;
    }
    return acc;
  });
}

namespace {

Exponent argmin_exponent(const LaurentPoly& p, const Vec2& w) {
  const Exponent* best = nullptr;
  Int best_val = 0;
  for (const auto& [e, c] : p.terms()) {
    const Int val = e.first * w(0) + e.second * w(1);
    if (!best || val < best_val) {
      best = &e;
      best_val = val;
    }
  }
  return *best;
}

void add_normal_rays(const LaurentPoly& p, std::vector<Vec2>& rays) {
  std::vector<Exponent> es;
  for (const auto& [e, c] : p.terms()) es.push_back(e);
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const Primitive n(-(es[j].second - es[i].second), es[j].first - es[i].first);
      rays.push_back(n.vec());
      rays.push_back(-n.vec());
    }
}

Mat2 cone_matrix(const BirMap& f, const Vec2& w) {
  const Exponent n1 = argmin_exponent(f.f1.num, w), d1 = argmin_exponent(f.f1.den, w);
  const Exponent n2 = argmin_exponent(f.f2.num, w), d2 = argmin_exponent(f.f2.den, w);
  return make_mat(n1.first - d1.first, n1.second - d1.second, n2.first - d2.first, n2.second - d2.second);
}

}  // namespace

PLAut tropicalize(const BirMap& f) {
  for (const auto* p : {&f.f1.num, &f.f1.den, &f.f2.num, &f.f2.den})
    if (p->is_zero()) throw std::domain_error("tropicalization of a zero component");
  std::vector<Vec2> rays;
  for (const auto* p : {&f.f1.num, &f.f1.den, &f.f2.num, &f.f2.den}) add_normal_rays(*p, rays);
  std::sort(rays.begin(), rays.end(), AngleLess{});
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  try {
    if (rays.empty()) return PLAut(cone_matrix(f, Vec2(1, 0)));
    std::vector<PlPiece> pieces;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const Vec2& from = rays[i];
      const Vec2& to = rays[(i + 1) % rays.size()];
      pieces.push_back({Primitive(from), cone_matrix(f, cone_interior(from, to))});
    }
    return PLAut::from_pieces(std::move(pieces));
  } catch (const std::invalid_argument&) {
    throw std::domain_error("tropicalization is not a PL automorphism");
  }
}

ProbeResult probe_identity(const BirWord& w, int points_per_prime, const std::vector<u64>& primes,
                           std::mt19937_64& rng) {
  ProbeResult out;
  out.primes = primes;
  for (u64 p : primes) {
    const PrimeField field(p);
    int done = 0;
    for (long attempt = 0; attempt < 100L * points_per_prime && done < points_per_prime; ++attempt) {
      const FpPoint pt{field.random_nonzero(rng), field.random_nonzero(rng)};
      const auto img = try_eval(w, pt, field);
      if (!img) continue;
      ++done;
      ++out.points;
      if (*img == pt) {
        ++out.fixed_points;
      } else if (!out.moved_point) {
        out.moved_point = pt;
        out.moved_image = img;
        out.moved_prime = p;
      }
    }
  }
  return out;
}

}  // namespace cremona
