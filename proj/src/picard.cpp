#include "cremona/picard.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cremona {

namespace {

using i128 = __int128;

Int narrow(i128 v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw std::overflow_error("integer overflow");
  return static_cast<Int>(v);
}

Int add_checked(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

Int mul_checked(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// ZqPoly

ZqPoly::ZqPoly(Int c) : c_{c} { trim(); }

ZqPoly::ZqPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

void ZqPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int ZqPoly::eval(Int q) const {
  Int r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = add_checked(mul_checked(r, q), *it);
  return r;
}

ZqPoly& ZqPoly::operator+=(const ZqPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = add_checked(c_[i], o.c_[i]);
  trim();
  return *this;
}

ZqPoly& ZqPoly::operator-=(const ZqPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    Int r;
    if (__builtin_sub_overflow(c_[i], o.c_[i], &r)) throw std::overflow_error("integer overflow");
    c_[i] = r;
  }
  trim();
  return *this;
}

ZqPoly operator*(const ZqPoly& a, const ZqPoly& b) {
  if (a.is_zero() || b.is_zero()) return ZqPoly();
  std::vector<Int> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = add_checked(c[i + j], mul_checked(a.c_[i], b.c_[j]));
  return ZqPoly(std::move(c));
}

std::string to_string(const ZqPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const Int c = p.coeffs()[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const Int m = c < 0 ? -c : c;
    if (m != 1 || i == 0) os << m;
    if (i > 0) os << (m != 1 ? "*q" : "q");
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------------------------
// BreakFn

namespace {

const std::vector<Primitive>& anchors() {
  static const std::vector<Primitive> a = {Primitive(1, 0), Primitive(0, 1), Primitive(-1, -1)};
  return a;
}

struct RawFn {
  std::vector<Primitive> rays;  // sorted counterclockwise
  std::vector<Int> values;
};

RawFn make_raw(const std::vector<Primitive>& rays, const std::vector<Int>& values) {
  if (rays.size() != values.size()) throw std::invalid_argument("rays and values differ in length");
  std::vector<std::size_t> order(rays.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return angle_less(rays[i].vec(), rays[j].vec()); });
  RawFn f;
  for (std::size_t i : order) {
    f.rays.push_back(rays[i]);
    f.values.push_back(values[i]);
  }
  const std::size_t n = f.rays.size();
  if (n < 3) throw std::invalid_argument("BreakFn needs a complete fan");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& r = f.rays[i].vec();
    const Vec2& s = f.rays[(i + 1) % n].vec();
    const Int d = wedge(r, s);
    if (d <= 0) throw std::invalid_argument("BreakFn rays do not form a complete fan");
    const i128 alpha = static_cast<i128>(f.values[i]) * s(1) - static_cast<i128>(f.values[(i + 1) % n]) * r(1);
    const i128 beta = static_cast<i128>(f.values[(i + 1) % n]) * r(0) - static_cast<i128>(f.values[i]) * s(0);
    if (alpha % d != 0 || beta % d != 0) throw std::invalid_argument("BreakFn is not integral on a cone");
  }
  return f;
}

std::size_t cone_of(const std::vector<Primitive>& rays, const Vec2& w) {
  auto it = std::upper_bound(rays.begin(), rays.end(), w,
                             [](const Vec2& v, const Primitive& r) { return angle_less(v, r.vec()); });
  const std::size_t k = static_cast<std::size_t>(it - rays.begin());
  return k == 0 ? rays.size() - 1 : k - 1;
}

Int eval_raw(const std::vector<Primitive>& rays, const std::vector<Int>& values, const Vec2& w) {
  if (w.isZero()) return 0;
  const std::size_t n = rays.size();
  const std::size_t i = cone_of(rays, w);
  const Vec2& r = rays[i].vec();
  const Vec2& s = rays[(i + 1) % n].vec();
  const i128 num = static_cast<i128>(values[i]) * wedge(w, s) + static_cast<i128>(values[(i + 1) % n]) * wedge(r, w);
  const Int d = wedge(r, s);
  if (num % d != 0) throw std::logic_error("BreakFn evaluation is not integral");
  return narrow(num / d);
}

// Linear coefficients (alpha, beta) on the cone from ray i to ray i+1.
Vec2 cone_linear(const std::vector<Primitive>& rays, const std::vector<Int>& values, std::size_t i) {
  const std::size_t n = rays.size();
  const Vec2& r = rays[i].vec();
  const Vec2& s = rays[(i + 1) % n].vec();
  const Int d = wedge(r, s);
  const i128 alpha = static_cast<i128>(values[i]) * s(1) - static_cast<i128>(values[(i + 1) % n]) * r(1);
  const i128 beta = static_cast<i128>(values[(i + 1) % n]) * r(0) - static_cast<i128>(values[i]) * s(0);
  return Vec2(narrow(alpha / d), narrow(beta / d));
}

std::vector<Primitive> merged_rays(std::vector<Primitive> a, const std::vector<Primitive>& b) {
  a.insert(a.end(), b.begin(), b.end());
  a.insert(a.end(), anchors().begin(), anchors().end());
  std::sort(a.begin(), a.end(), [](const Primitive& x, const Primitive& y) { return angle_less(x.vec(), y.vec()); });
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

BreakFn::BreakFn() : rays_(anchors()), values_(3, 0) {
  std::sort(rays_.begin(), rays_.end(), [](const Primitive& x, const Primitive& y) { return angle_less(x.vec(), y.vec()); });
}

BreakFn::BreakFn(const std::vector<Primitive>& rays, const std::vector<Int>& values) {
  const RawFn raw = make_raw(rays, values);
  const Int lx = eval_raw(raw.rays, raw.values, Vec2(1, 0));
  const Int ly = eval_raw(raw.rays, raw.values, Vec2(0, 1));
  const std::vector<Primitive> all = merged_rays(raw.rays, {});
  std::vector<Int> vals;
  for (const Primitive& r : all)
    vals.push_back(narrow(static_cast<i128>(eval_raw(raw.rays, raw.values, r.vec())) - static_cast<i128>(lx) * r.a() -
                          static_cast<i128>(ly) * r.b()));
  const std::size_t n = all.size();
  std::vector<Vec2> lin(n);
  for (std::size_t i = 0; i < n; ++i) lin[i] = cone_linear(all, vals, i);
  for (std::size_t i = 0; i < n; ++i) {
    const bool anchor = std::find(anchors().begin(), anchors().end(), all[i]) != anchors().end();
    if (anchor || lin[i] != lin[(i + n - 1) % n]) {
      rays_.push_back(all[i]);
      values_.push_back(vals[i]);
    }
  }
}

BreakFn BreakFn::A() {
  return BreakFn({Primitive(1, 0), Primitive(0, 1), Primitive(-1, 0), Primitive(0, -1)}, {0, 0, 0, 1});
}

Int BreakFn::operator()(const Vec2& w) const { return eval_raw(rays_, values_, w); }

std::vector<Primitive> BreakFn::breakpoints() const {
  const std::size_t n = rays_.size();
  std::vector<Primitive> out;
  for (std::size_t i = 0; i < n; ++i)
    if (cone_linear(rays_, values_, i) != cone_linear(rays_, values_, (i + n - 1) % n)) out.push_back(rays_[i]);
  return out;
}

bool BreakFn::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](Int v) { return v == 0; });
}

namespace {

template <typename Op>
BreakFn combine(const BreakFn& f, const BreakFn& g, Op op) {
  const std::vector<Primitive> rays = merged_rays(f.rays(), g.rays());
  std::vector<Int> vals;
  for (const Primitive& r : rays) vals.push_back(op(f(r.vec()), g(r.vec())));
  return BreakFn(rays, vals);
}

}  // namespace

BreakFn operator+(const BreakFn& f, const BreakFn& g) { return combine(f, g, add_checked); }

BreakFn operator-(const BreakFn& f, const BreakFn& g) {
  return combine(f, g, [](Int a, Int b) { return add_checked(a, -b); });
}

BreakFn operator*(Int k, const BreakFn& f) {
  std::vector<Int> vals;
  for (Int v : f.values()) vals.push_back(mul_checked(k, v));
  return BreakFn(f.rays(), vals);
}

BreakFn compose(const BreakFn& f, const PLAut& g) {
  const PLAut gi = inverse(g);
  std::vector<Primitive> pre;
  for (const Primitive& r : f.rays()) pre.emplace_back(apply(gi, r.vec()));
  const std::vector<Primitive> rays = merged_rays(g.breakpoints(), pre);
  std::vector<Int> vals;
  for (const Primitive& r : rays) vals.push_back(f(apply(g, r.vec())));
  return BreakFn(rays, vals);
}

namespace {

// s, t with s*a + t*b = 1 for coprime a, b.
std::pair<Int, Int> bezout(Int a, Int b) {
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const Int q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 < 0) {
    s0 = -s0;
    t0 = -t0;
  }
  return {s0, t0};
}

// Some u with u ^ a = 1.
Vec2 wedge_partner(const Primitive& a) {
  const auto [s, t] = bezout(a.a(), a.b());
  return Vec2(t, -s);
}

}  // namespace

Int index(const BreakFn& f, const Primitive& a, int extra_u, int extra_v) {
  const std::vector<Primitive> br = f.breakpoints();
  const Vec2& av = a.vec();
  Vec2 u = wedge_partner(a);
  Vec2 v = -u;
  Int k = 0;
  auto clear = [&](const Vec2& from, const Vec2& to) {
    return std::none_of(br.begin(), br.end(), [&](const Primitive& r) { return strictly_inside(r.vec(), from, to); });
  };
  while (!clear(u, av)) {
    u += av;
    ++k;
  }
  while (!clear(av, v)) {
    v += av;
    ++k;
  }
  u += extra_u * av;
  v += extra_v * av;
  k += extra_u + extra_v;
  return narrow(static_cast<i128>(f(u)) + f(v) - static_cast<i128>(k) * f(av));
}

Int index(const BreakFn& f, const Primitive& a) { return index(f, a, 0, 0); }

Int pairing(const BreakFn& f, const FunS& g) {
  Int s = 0;
  for (const auto& [alpha, value] : g) s = add_checked(s, mul_checked(index(f, alpha), value));
  return s;
}

bool is_ample(const BreakFn& f) {
  const auto br = f.breakpoints();
  return std::all_of(br.begin(), br.end(), [&](const Primitive& a) { return index(f, a) >= 0; });
}

bool is_effective(const FunS& g) {
  return std::all_of(g.begin(), g.end(), [](const auto& kv) { return kv.second >= 0; });
}

// ---------------------------------------------------------------------------------------------
// PicVec

Symbol sym_b(const Vec2& a) { return {Family::B, a(0), a(1), 0}; }
Symbol sym_e(const Vec2& a, int k) { return {Family::E, a(0), a(1), k}; }
Symbol sym_delta(const Vec2& a, int k) { return {Family::Delta, a(0), a(1), k}; }
Symbol sym_p(const Vec2& w) { return {Family::P, w(0), w(1), 0}; }
Symbol sym_w(const Vec2& w) { return {Family::W, w(0), w(1), 0}; }
Symbol sym_chain(const Vec2& a) { return {Family::Chain, a(0), a(1), 0}; }

PicVec PicVec::pl(const BreakFn& f) {
  PicVec v;
  v.pl_ = f;
  return v;
}

void PicVec::add(const Symbol& s, const ZqPoly& c) {
  const bool indexed = s.family == Family::E || s.family == Family::Delta;
  if (indexed ? s.level < 1 : s.level != 0) throw std::invalid_argument("invalid level for symbol");
  if (s.family == Family::P || s.family == Family::W) {
    if (s.x == 0 && s.y == 0) return;
  } else if (!is_primitive(s.arg())) {
    throw std::invalid_argument("symbol index is not a primitive vector");
  }
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ZqPoly PicVec::coefficient(const Symbol& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? ZqPoly() : it->second;
}

PicVec PicVec::at_q(Int q) const {
  PicVec out = pl(pl_);
  for (const auto& [s, c] : terms_) out.add(s, c.eval(q));
  return out;
}

PicVec& PicVec::operator+=(const PicVec& o) {
  for (const auto& [s, c] : o.terms_) add(s, c);
  pl_ = pl_ + o.pl_;
  return *this;
}

PicVec& PicVec::operator-=(const PicVec& o) {
  for (const auto& [s, c] : o.terms_) add(s, -c);
  pl_ = pl_ - o.pl_;
  return *this;
}

PicVec operator*(const ZqPoly& c, const PicVec& v) {
  PicVec out;
  for (const auto& [s, k] : v.terms_) out.add(s, c * k);
  if (!v.pl_.is_zero()) {
    if (!c.is_constant()) throw std::domain_error("PL part needs an integer coefficient");
    out.pl_ = c.constant() * v.pl_;
  }
  return out;
}

namespace {

std::string symbol_string(const Symbol& s) {
  std::ostringstream os;
  switch (s.family) {
    case Family::B: os << "b"; break;
    case Family::E: os << "e^" << s.level; break;
    case Family::Delta: os << "delta^" << s.level; break;
    case Family::P: os << "p"; break;
    case Family::W: os << "e"; break;
    case Family::Chain: os << "chain"; break;
  }
  os << "(" << s.x << "," << s.y << ")";
  return os.str();
}

}  // namespace

std::string to_string(const PicVec& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : v.terms()) {
    if (!first) os << " + ";
    first = false;
    if (c == ZqPoly(1)) os << symbol_string(s);
    else if (c.is_constant()) os << c.constant() << "*" << symbol_string(s);
    else os << "(" << to_string(c) << ")*" << symbol_string(s);
  }
  if (!v.pl_part().is_zero()) {
    if (!first) os << " + ";
    first = false;
    os << "pl[";
    for (std::size_t i = 0; i < v.pl_part().rays().size(); ++i) {
      const Primitive& r = v.pl_part().rays()[i];
      os << (i ? " " : "") << "(" << r.a() << "," << r.b() << "):" << v.pl_part().values()[i];
    }
    os << "]";
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// Linear extension of a per-symbol rule; the PL part must be empty.
template <typename Rule>
PicVec map_terms(const PicVec& x, Rule rule, const char* what) {
  if (!x.pl_part().is_zero()) throw std::invalid_argument(std::string(what) + ": unexpected PL part");
  PicVec out;
  for (const auto& [s, c] : x.terms()) out += c * rule(s);
  return out;
}

[[noreturn]] void bad_family(const char* what) {
  throw std::invalid_argument(std::string(what) + ": symbol family not in the domain");
}

}  // namespace

PicVec delta_L_action(const PicVec& x) {
  const Primitive e1(1, 0), e2(0, 1), m2(0, -1), m1(-1, 0);
  const PLAut L = generator_pl(PlGenerator::L);
  const BreakFn& f = x.pl_part();
  PicVec out;
  if (!f.is_zero()) {
    out = PicVec::pl(compose(f, generator_pl(PlGenerator::P)));
    out -= f(m2.vec()) * PicVec(sym_delta(e1, 1));
    out += f(e2.vec()) * (PicVec::pl(BreakFn::A()) - PicVec(sym_delta(e1, 1)));
  }
  for (const auto& [s, c] : x.terms()) {
    if (s.family != Family::Delta) bad_family("delta_L_action");
    const Primitive a(s.arg());
    PicVec img;
    if (a == m2) img = PicVec(sym_delta(e1, s.level + 1));
    else if (a == e2 && s.level >= 2) img = PicVec(sym_delta(m1, s.level - 1));
    else if (a == e2) img = PicVec::pl(BreakFn::A()) - PicVec(sym_delta(e1, 1));
    else img = PicVec(sym_delta(apply(L, a.vec()), s.level));
    out += c * img;
  }
  return out;
}

namespace {

Int integer_coefficient(const ZqPoly& c) {
  if (!c.is_constant()) throw std::domain_error("product needs integer coefficients");
  return c.constant();
}

[[noreturn]] void undefined_product() { throw std::domain_error("product undefined for this pair"); }

}  // namespace

Int pic_product(const PicVec& x, const PicVec& y) {
  auto allowed = [](const PicVec& v) {
    for (const auto& [s, c] : v.terms())
      if (s.family != Family::Delta && s.family != Family::Chain) undefined_product();
  };
  allowed(x);
  allowed(y);
  Int total = 0;
  for (const auto& [s, c] : x.terms())
    for (const auto& [t, d] : y.terms()) {
      if (s.family == Family::Chain && t.family == Family::Chain) undefined_product();
      if (s.family == Family::Delta && s == t)
        total = add_checked(total, -mul_checked(integer_coefficient(c), integer_coefficient(d)));
    }
  if (!x.pl_part().is_zero() && !y.pl_part().is_zero()) undefined_product();
  auto pl_chain = [&](const PicVec& a, const PicVec& b) {
    if (a.pl_part().is_zero()) return;
    for (const auto& [t, d] : b.terms())
      if (t.family == Family::Chain)
        total = add_checked(total, mul_checked(index(a.pl_part(), Primitive(t.arg())), integer_coefficient(d)));
  };
  pl_chain(x, y);
  pl_chain(y, x);
  return total;
}

PicVec f_prime(const BreakFn& f) {
  PicVec out = PicVec::pl(f);
  for (const Primitive& s : f.breakpoints()) out.add(sym_delta(s, 1), -index(f, s));
  return out;
}

PicVec be_encode(const BreakFn& f) {
  PicVec out;
  for (const Primitive& s : f.breakpoints()) out.add(sym_b(s), index(f, s));
  return out;
}

std::array<ZqPoly, 2> weight(const PicVec& x) {
  std::array<ZqPoly, 2> w;
  for (const auto& [s, c] : x.terms()) {
    if (s.family == Family::E) continue;
    if (s.family != Family::B && s.family != Family::P && s.family != Family::W) bad_family("weight");
    w[0] += c * s.x;
    w[1] += c * s.y;
  }
  return w;
}

bool v_membership(const PicVec& x) {
  const auto w = weight(x);
  return x.pl_part().is_zero() && w[0].is_zero() && w[1].is_zero();
}

std::optional<Vec2> sigma_v(const Vec2& w, const Primitive& v) {
  if (w.isZero()) throw std::invalid_argument("sigma_v of the origin");
  const Vec2& vv = v.vec();
  Vec2 r;
  if (wedge(w, vv) != 0) r = w - std::min<Int>(wedge(vv, w), 0) * vv;
  else r = w - vv;
  if (r.isZero()) return std::nullopt;
  return r;
}

namespace {

PicVec b_of(const std::optional<Vec2>& w) { return w ? PicVec(sym_b(*w)) : PicVec(); }

}  // namespace

PicVec mu_be_action(const PicVec& x, const Primitive& v) {
  const Vec2& vv = v.vec();
  const Vec2 nv = -vv;
  return map_terms(
      x,
      [&](const Symbol& s) -> PicVec {
        const Vec2 w = s.arg();
        if (s.family == Family::B) {
          if (w == vv) return -1 * PicVec(sym_b(nv));
          if (w == nv) return PicVec(sym_e(nv, 1)) + PicVec(sym_b(nv));
          const Int wv = wedge(w, vv);
          if (wv > 0) return b_of(sigma_v(w, v));
          return b_of(sigma_v(w, v)) + wedge(vv, w) * PicVec(sym_b(nv));
        }
        if (s.family == Family::E) {
          if (w == vv) return s.level == 1 ? PicVec(sym_b(vv)) + PicVec(sym_b(nv)) : PicVec(sym_e(vv, s.level - 1));
          if (w == nv) return PicVec(sym_e(nv, s.level + 1));
          return PicVec(sym_e(*sigma_v(w, v), s.level));
        }
        bad_family("mu_be_action");
      },
      "mu_be_action");
}

PicVec p_basis(int k, const Primitive& v) {
  if (k < 0) throw std::invalid_argument("p_basis needs k >= 0");
  PicVec out;
  for (int j = 1; j < k; ++j) out.add(sym_e(v, j), k - j);
  out.add(sym_b(v), k);
  return out;
}

PicVec p_to_be(const PicVec& x) {
  if (!x.pl_part().is_zero()) throw std::invalid_argument("p_to_be: unexpected PL part");
  PicVec out;
  for (const auto& [s, c] : x.terms()) {
    if (s.family != Family::P) {
      out.add(s, c);
      continue;
    }
    const Int g = std::gcd(s.x, s.y);
    out += c * p_basis(static_cast<int>(g), Primitive(s.x / g, s.y / g));
  }
  return out;
}

PicVec mu_p_action(const PicVec& x, const Primitive& v) {
  const Vec2& vv = v.vec();
  return map_terms(
      x,
      [&](const Symbol& s) -> PicVec {
        if (s.family != Family::P) bad_family("mu_p_action");
        const Vec2 w = s.arg();
        const Int wv = wedge(w, vv);
        const Int a = wv > 0 ? wv : (wv < 0 ? 0 : -1);
        PicVec img;
        if (auto m = sigma_v(w, v)) img.add(sym_p(*m), 1);
        img.add(sym_p(-vv), a);
        return img;
      },
      "mu_p_action");
}

PicVec mu_Wq_action(const PicVec& x, WqRule rule) {
  const Vec2 m1(-1, 0);
  const ZqPoly q = ZqPoly::q();
  return map_terms(
      x,
      [&](const Symbol& s) -> PicVec {
        if (s.family != Family::W) bad_family("mu_Wq_action");
        const Int xx = s.x, y = s.y;
        PicVec img;
        if (y > 0) {
          img.add(sym_w(Vec2(xx, y)), 1);
          img.add(sym_w(m1), (ZqPoly(1) - q) * y);
        } else if (y < 0) {
          img.add(sym_w(Vec2(xx - y, y)), 1);
          img.add(sym_w(m1), (rule == WqRule::Canonical ? -q : q) * y);
        } else {
          img.add(sym_w(Vec2(xx - 1, 0)), 1);
          img.add(sym_w(m1), -1);
        }
        return img;
      },
      "mu_Wq_action");
}

PicVec mu_Wq_inverse(const PicVec& x) {
  const Vec2 e1(1, 0);
  const ZqPoly q = ZqPoly::q();
  return map_terms(
      x,
      [&](const Symbol& s) -> PicVec {
        if (s.family != Family::W) bad_family("mu_Wq_inverse");
        const Int xx = s.x, y = s.y;
        PicVec img;
        if (y > 0) {
          img.add(sym_w(Vec2(xx, y)), 1);
          img.add(sym_w(e1), (ZqPoly(1) - q) * y);
        } else if (y < 0) {
          img.add(sym_w(Vec2(xx + y, y)), 1);
          img.add(sym_w(e1), -q * y);
        } else {
          img.add(sym_w(Vec2(xx + 1, 0)), 1);
          img.add(sym_w(e1), -1);
        }
        return img;
      },
      "mu_Wq_inverse");
}

namespace {

// gamma in SL2(Z) with gamma(1,0) = v.
Mat2 frame_of(const Primitive& v) {
  const Vec2 u = -wedge_partner(v);  // v ^ u = 1
  Mat2 g;
  g << v.a(), u(0), v.b(), u(1);
  return g;
}

}  // namespace

PicVec gamma_action(const PicVec& x, const Mat2& gamma) {
  if (det2(gamma) != 1) throw std::invalid_argument("gamma must lie in SL2(Z)");
  PicVec out;
  for (const auto& [s, c] : x.terms()) {
    const Vec2 w = gamma * s.arg();
    out.add({s.family, w(0), w(1), s.level}, c);
  }
  if (!x.pl_part().is_zero()) out += PicVec::pl(compose(x.pl_part(), PLAut(inverse_unimodular(gamma))));
  return out;
}

PicVec mu_Wq_action(const PicVec& x, const Primitive& v, WqRule rule) {
  const Mat2 g = frame_of(v);
  return gamma_action(mu_Wq_action(gamma_action(x, inverse_unimodular(g)), rule), g);
}

ZqPoly wedge_form(const PicVec& x, const PicVec& y) {
  ZqPoly total;
  for (const auto& [s, c] : x.terms()) {
    if (s.family != Family::W) bad_family("wedge_form");
    for (const auto& [t, d] : y.terms()) {
      if (t.family != Family::W) bad_family("wedge_form");
      total += c * d * wedge(s.arg(), t.arg());
    }
  }
  return total;
}

PicVec mu_cluster_formula(const PicVec& x, const Primitive& v) {
  const Vec2& vv = v.vec();
  return map_terms(
      x,
      [&](const Symbol& s) -> PicVec {
        if (s.family != Family::W) bad_family("mu_cluster_formula");
        const Vec2 w = s.arg();
        if (w == vv) return -1 * PicVec(sym_w(-vv));
        PicVec img;
        if (auto m = sigma_v(w, v)) img.add(sym_w(*m), 1);
        img.add(sym_w(-vv), std::max<Int>(wedge(vv, w), 0));
        return img;
      },
      "mu_cluster_formula");
}

PicVec cluster_seed_map(const PicVec& x, const Primitive& v) {
  const Vec2& vv = v.vec();
  return map_terms(
      x,
      [&](const Symbol& s) -> PicVec {
        if (s.family != Family::W) bad_family("cluster_seed_map");
        const Vec2 u = s.arg();
        if (u == -vv) return -1 * PicVec(sym_w(vv));
        // k = sigma_v^-1(u); sigma_v(v) is taken to be -v
        const Vec2 k = wedge(u, vv) != 0 ? Vec2(u + std::min<Int>(wedge(vv, u), 0) * vv) : Vec2(u + vv);
        PicVec img(sym_w(k));
        img.add(sym_w(vv), std::max<Int>(wedge(vv, k), 0));
        return img;
      },
      "cluster_seed_map");
}

ClusterMutation cluster_mutation(const IntMatrix& b, std::size_t i) {
  const auto n = static_cast<std::size_t>(b.rows());
  if (static_cast<std::size_t>(b.cols()) != n) throw std::invalid_argument("b-matrix is not square");
  if (b != -b.transpose()) throw std::invalid_argument("b-matrix is not antisymmetric");
  if (i >= n) throw std::invalid_argument("mutation index out of range");
  ClusterMutation m;
  m.basis_map = IntMatrix::Identity(b.rows(), b.cols());
  for (std::size_t k = 0; k < n; ++k)
    if (k != i) m.basis_map(i, k) = std::max<Int>(b(i, k), 0);
  m.basis_map(i, i) = -1;
  m.b_mutated = b;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (j == i || k == i) m.b_mutated(j, k) = -b(j, k);
      else m.b_mutated(j, k) = b(j, k) + (std::abs(b(j, i)) * b(i, k) + b(j, i) * std::abs(b(i, k))) / 2;
    }
  return m;
}

PicAction wq_gamma(const Mat2& gamma) {
  return [gamma](const PicVec& x) { return gamma_action(x, gamma); };
}

PicAction wq_mu() {
  return [](const PicVec& x) { return mu_Wq_action(x); };
}

PicAction wq_mu_inverse() { return mu_Wq_inverse; }

PicAction wq_P() {
  const Mat2 ii = inverse_unimodular(matrix_I());
  return [ii](const PicVec& x) { return gamma_action(mu_Wq_action(x), ii); };
}

PicAction wq_L() {
  const Mat2 i = matrix_I();
  return [i](const PicVec& x) { return mu_Wq_inverse(gamma_action(x, i)); };
}

PicVec random_w_vector(std::mt19937_64& rng, int terms, int qdeg, Int box) {
  std::uniform_int_distribution<Int> coord(-box, box), coef(-3, 3);
  PicVec out;
  for (int t = 0; t < terms; ++t) {
    std::vector<Int> c(static_cast<std::size_t>(qdeg) + 1);
    for (auto& ci : c) ci = coef(rng);
    out.add(sym_w(Vec2(coord(rng), coord(rng))), ZqPoly(c));
  }
  return out;
}

PicVec random_v_vector(std::mt19937_64& rng, int terms, int qdeg, Int box) {
  PicVec out = random_w_vector(rng, terms, qdeg, box);
  const auto w = weight(out);
  out.add(sym_w(Vec2(1, 0)), -w[0]);
  out.add(sym_w(Vec2(0, 1)), -w[1]);
  return out;
}

BreakFn random_breakfn(std::mt19937_64& rng, int extra_rays, Int box) {
  std::uniform_int_distribution<Int> coord(-box, box), coef(-2, 2);
  std::vector<std::pair<Vec2, Int>> kinks;
  std::vector<Primitive> rays;
  for (int t = 0; t < extra_rays; ++t) {
    const Vec2 r(coord(rng), coord(rng));
    if (!is_primitive(r)) continue;
    kinks.emplace_back(r, coef(rng));
    rays.emplace_back(r);
    rays.emplace_back(-r);
  }
  const Int lx = coef(rng), ly = coef(rng);
  rays = merged_rays(rays, {});
  std::vector<Int> vals;
  for (const Primitive& s : rays) {
    Int v = lx * s.a() + ly * s.b();
    for (const auto& [r, c] : kinks) v += c * std::max<Int>(0, wedge(r, s.vec()));
    vals.push_back(v);
  }
  return BreakFn(rays, vals);
}

// ---------------------------------------------------------------------------------------------
// Cross-basis report

int CrossBasisReport::discrepancies() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.agrees; }));
}

namespace {

PicVec w_to_p(const PicVec& x) {
  PicVec out;
  for (const auto& [s, c] : x.terms()) out.add(sym_p(s.arg()), c);
  return out;
}

std::string wv_label(const Vec2& w, const Primitive& v) {
  std::ostringstream os;
  os << "w=(" << w(0) << "," << w(1) << ") v=(" << v.a() << "," << v.b() << ")";
  return os.str();
}

}  // namespace

CrossBasisReport cross_basis_report(Int box) {
  CrossBasisReport rep;
  auto push = [&](std::string cmp, const Vec2& w, const Primitive& v, const PicVec& lhs, const PicVec& rhs) {
    rep.entries.push_back({std::move(cmp), wv_label(w, v), to_string(lhs), to_string(rhs), lhs == rhs});
  };
  for (const Primitive& v : {Primitive(1, 0), Primitive(0, 1)})
    for (Int x = -box; x <= box; ++x)
      for (Int y = -box; y <= box; ++y) {
        const Vec2 w(x, y);
        if (w.isZero()) continue;
        const PicVec pw(sym_p(w)), ew(sym_w(w));
        const PicVec mp = mu_p_action(pw, v);
        push("b/e basis vs p basis (e_w read as e_w^1)", w, v, mu_be_action(p_to_be(pw), v), p_to_be(mp));
        push("W[q] at q=1 vs p basis", w, v, w_to_p(mu_Wq_action(ew, v).at_q(1)), mp);
        push("W[q] as printed at q=1 vs p basis", w, v, w_to_p(mu_Wq_action(ew, v, WqRule::AsPrinted).at_q(1)), mp);
        if (wedge(w, v.vec()) != 0)
          push("W[q] at q=0 vs cluster formula", w, v, mu_Wq_action(ew, v).at_q(0), mu_cluster_formula(ew, v));
      }
  return rep;
}

}  // namespace cremona
