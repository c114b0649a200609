#include "cremona/dyadic.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cremona {

namespace {

using i128 = __int128;

constexpr int kMaxExp = 62;

Int narrow(i128 v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw std::overflow_error("dyadic numerator overflow");
  return static_cast<Int>(v);
}

}  // namespace

Dyadic::Dyadic(Int num, int exp) {
  if (exp < 0) {
    i128 v = num;
    for (int k = 0; k < -exp; ++k) v *= 2;
    num = narrow(v);
    exp = 0;
  }
  while (exp > 0 && num % 2 == 0) {
    num /= 2;
    --exp;
  }
  if (num == 0) exp = 0;
  if (exp > kMaxExp) throw std::overflow_error("dyadic exponent overflow");
  num_ = num;
  exp_ = exp;
}

Dyadic Dyadic::scaled(int k) const { return Dyadic(num_, exp_ - k); }

Dyadic Dyadic::frac() const {
  if (exp_ == 0) return Dyadic();
  const Int m = Int{1} << exp_;
  Int r = num_ % m;
  if (r < 0) r += m;
  return Dyadic(r, exp_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const int e = std::max(a.exp_, b.exp_);
  const i128 s = (static_cast<i128>(a.num_) << (e - a.exp_)) + (static_cast<i128>(b.num_) << (e - b.exp_));
  return Dyadic(narrow(s), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + Dyadic(-b.num_, b.exp_); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int e = std::max(a.exp_, b.exp_);
  const i128 x = static_cast<i128>(a.num_) << (e - a.exp_);
  const i128 y = static_cast<i128>(b.num_) << (e - b.exp_);
  return x <=> y;
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
  os << d.num();
  if (d.exp()) os << "/2^" << d.exp();
  return os;
}

std::optional<int> log2_ratio(const Dyadic& a, const Dyadic& b) {
  if (a.num() <= 0 || b.num() <= 0) return std::nullopt;
  auto split = [](const Dyadic& d) {
    Int odd = d.num();
    int t = 0;
    while (odd % 2 == 0) {
      odd /= 2;
      ++t;
    }
    return std::make_pair(odd, t - d.exp());
  };
  const auto [oa, ea] = split(a);
  const auto [ob, eb] = split(b);
  if (oa != ob) return std::nullopt;
  return eb - ea;
}

DyadicPL::DyadicPL() : pts_{{Dyadic(), Dyadic()}}, slopes_{0} {}

namespace {

const Dyadic kOne(1);

// Increment of y along the piece, in (0, 1].
Dyadic rise(const Dyadic& y0, const Dyadic& y1) {
  const Dyadic d = (y1 - y0).frac();
  return d == Dyadic() ? kOne : d;
}

}  // namespace

DyadicPL::DyadicPL(std::vector<Point> breakpoints) {
  if (breakpoints.empty()) throw std::invalid_argument("no breakpoints");
  for (auto& [x, y] : breakpoints) {
    if (x < Dyadic() || x >= kOne) throw std::invalid_argument("breakpoint outside [0,1)");
    y = y.frac();
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  const std::size_t n = breakpoints.size();
  std::vector<int> slopes(n);
  Dyadic total;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [x0, y0] = breakpoints[i];
    const Dyadic x1 = i + 1 < n ? breakpoints[i + 1].first : breakpoints[0].first + kOne;
    const Dyadic& y1 = breakpoints[(i + 1) % n].second;
    if (x1 == x0) throw std::invalid_argument("two values at one breakpoint");
    const Dyadic dy = rise(y0, y1);
    const auto s = log2_ratio(x1 - x0, dy);
    if (!s) throw std::invalid_argument("slope is not a power of 2");
    slopes[i] = *s;
    total = total + dy;
  }
  if (total != kOne) throw std::invalid_argument("not a bijection of the circle");
  if (breakpoints[0].first != Dyadic()) {
    const auto& [xl, yl] = breakpoints.back();
    const Dyadic y0 = (yl + (kOne - xl).scaled(slopes.back())).frac();
    breakpoints.insert(breakpoints.begin(), {Dyadic(), y0});
    slopes.insert(slopes.begin(), slopes.back());
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (i > 0 && slopes[i] == slopes_.back()) continue;
    pts_.push_back(breakpoints[i]);
    slopes_.push_back(slopes[i]);
  }
}

std::size_t DyadicPL::piece_at(const Dyadic& x) const {
  auto it = std::upper_bound(pts_.begin(), pts_.end(), x, [](const Dyadic& v, const Point& p) { return v < p.first; });
  return static_cast<std::size_t>(it - pts_.begin()) - 1;
}

Dyadic DyadicPL::operator()(const Dyadic& x) const {
  const Dyadic t = x.frac();
  const std::size_t i = piece_at(t);
  return (pts_[i].second + (t - pts_[i].first).scaled(slopes_[i])).frac();
}

Dyadic DyadicPL::inverse_at(const Dyadic& y) const {
  const Dyadic t = y.frac();
  const std::size_t n = pts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Dyadic dy = rise(pts_[i].second, pts_[(i + 1) % n].second);
    const Dyadic off = (t - pts_[i].second).frac();
    if (off < dy) return (pts_[i].first + off.scaled(-slopes_[i])).frac();
  }
  throw std::logic_error("inverse_at: value not covered");
}

DyadicPL compose(const DyadicPL& f, const DyadicPL& g) {
  std::vector<Dyadic> xs;
  for (const auto& [x, y] : g.breakpoints()) xs.push_back(x);
  for (const auto& [x, y] : f.breakpoints()) xs.push_back(g.inverse_at(x));
  std::vector<DyadicPL::Point> pts;
  for (const Dyadic& x : xs) pts.emplace_back(x, f(g(x)));
  return DyadicPL(std::move(pts));
}

DyadicPL inverse(const DyadicPL& f) {
  std::vector<DyadicPL::Point> pts;
  for (const auto& [x, y] : f.breakpoints()) pts.emplace_back(y, x);
  return DyadicPL(std::move(pts));
}

bool is_identity(const DyadicPL& f) { return f == DyadicPL(); }

}  // namespace cremona
