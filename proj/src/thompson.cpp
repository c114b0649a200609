#include "cremona/thompson.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cremona {

bool StdInterval::contains(const StdInterval& o) const {
  return o.level >= level && (o.index >> (o.level - level)) == index;
}

std::optional<StdInterval> standard_interval(const Dyadic& a, const Dyadic& len) {
  if (len.num() != 1) return std::nullopt;
  const int k = len.exp();
  if (a < Dyadic() || a.exp() > k || a + len > Dyadic(1)) return std::nullopt;
  return StdInterval{a.num() << (k - a.exp()), k};
}

namespace {

struct Cone {
  StdInterval interval;
  Vec2 u;
  Vec2 v;
};

std::vector<Cone> anchor_cones() {
  return {{{0, 1}, Vec2(1, 0), Vec2(0, 1)}, {{2, 2}, Vec2(0, 1), Vec2(-1, -1)}, {{3, 2}, Vec2(-1, -1), Vec2(1, 0)}};
}

Cone left_half(const Cone& c) { return {c.interval.left(), c.u, c.u + c.v}; }
Cone right_half(const Cone& c) { return {c.interval.right(), c.u + c.v, c.v}; }

constexpr int kMaxLevel = 60;

}  // namespace

Primitive primitive_of(const Dyadic& x0) {
  const Dyadic x = x0.frac();
  for (Cone c : anchor_cones()) {
    if (x < c.interval.start() || x >= c.interval.end()) continue;
    while (x != c.interval.start()) c = x < c.interval.left().end() ? left_half(c) : right_half(c);
    return Primitive(c.u);
  }
  throw std::logic_error("primitive_of: no anchor cone");
}

Dyadic dyadic_of(const Primitive& s) {
  for (Cone c : anchor_cones()) {
    if (s.vec() == c.u) return c.interval.start();
    if (!strictly_inside(s.vec(), c.u, c.v)) continue;
    Int a = wedge(s.vec(), c.v);
    Int b = wedge(c.u, s.vec());
    while (a != b) {
      if (a > b) {
        c = left_half(c);
        a -= b;
      } else {
        c = right_half(c);
        b -= a;
      }
      if (c.interval.level > kMaxLevel) throw std::overflow_error("dyadic_of: vector too deep");
    }
    return c.interval.left().end();
  }
  throw std::logic_error("dyadic_of: no anchor cone");
}

namespace {

bool farey(const StdInterval& j) { return !(j.level == 1 && j.index == 1) && j.level > 0; }

}  // namespace

DyadicPL plaut_to_dyadic(const PLAut& f) {
  const std::vector<Primitive> rays = f.breakpoints();
  std::vector<DyadicPL::Point> pts;
  std::vector<Cone> stack = anchor_cones();
  while (!stack.empty()) {
    const Cone c = stack.back();
    stack.pop_back();
    bool split = std::any_of(rays.begin(), rays.end(), [&](const Primitive& r) { return strictly_inside(r.vec(), c.u, c.v); });
    std::optional<StdInterval> image;
    if (!split) {
      const Mat2& m = f.matrix_at(cone_interior(c.u, c.v));
      const Dyadic a = dyadic_of(Primitive(Vec2(m * c.u)));
      const Dyadic b = dyadic_of(Primitive(Vec2(m * c.v)));
      image = standard_interval(a, (b - a).frac() == Dyadic() ? Dyadic(1) : (b - a).frac());
      split = !image || !farey(*image);
    }
    if (split) {
      if (c.interval.level > kMaxLevel) throw std::overflow_error("plaut_to_dyadic: refinement too deep");
      stack.push_back(left_half(c));
      stack.push_back(right_half(c));
      continue;
    }
    pts.emplace_back(c.interval.start(), image->start());
  }
  return DyadicPL(std::move(pts));
}

namespace {

bool breaks_inside(const DyadicPL& d, const StdInterval& i) {
  const Dyadic lo = i.start(), hi = i.end();
  return std::any_of(d.breakpoints().begin(), d.breakpoints().end(),
                     [&](const DyadicPL::Point& p) { return lo < p.first && p.first < hi; });
}

// Image of a standard interval on which d is affine.
std::optional<StdInterval> affine_image(const DyadicPL& d, const StdInterval& i) {
  const Dyadic a = d(i.start());
  const Dyadic b = d(i.end());
  const Dyadic len = (b - a).frac() == Dyadic() ? Dyadic(1) : (b - a).frac();
  return standard_interval(a, len);
}

}  // namespace

PLAut dyadic_to_plaut(const DyadicPL& d) {
  std::vector<PlPiece> pieces;
  std::vector<Cone> stack = anchor_cones();
  while (!stack.empty()) {
    const Cone c = stack.back();
    stack.pop_back();
    std::optional<StdInterval> j;
    if (!breaks_inside(d, c.interval)) j = affine_image(d, c.interval);
    if (!j || !farey(*j)) {
      if (c.interval.level > kMaxLevel) throw std::overflow_error("dyadic_to_plaut: refinement too deep");
      stack.push_back(left_half(c));
      stack.push_back(right_half(c));
      continue;
    }
    Mat2 src, dst;
    src << c.u, c.v;
    dst << primitive_of(j->start()).vec(), primitive_of(j->end().frac()).vec();
    const Mat2 m = dst * inverse_unimodular(src);
    if (det2(m) != 1) throw std::invalid_argument("dyadic map is not unimodular on a cone");
    pieces.push_back({Primitive(c.u), m});
  }
  return PLAut::from_pieces(std::move(pieces));
}

BinaryTree::BinaryTree(BinaryTree left, BinaryTree right) {
  children_.push_back(std::move(left));
  children_.push_back(std::move(right));
}

std::size_t BinaryTree::leaf_count() const {
  return is_leaf() ? 1 : left().leaf_count() + right().leaf_count();
}

namespace {

void collect(const BinaryTree& t, const StdInterval& node, std::vector<StdInterval>& out) {
  if (t.is_leaf()) {
    out.push_back(node);
    return;
  }
  if (node.level >= kMaxLevel) throw std::overflow_error("tree too deep");
  collect(t.left(), node.left(), out);
  collect(t.right(), node.right(), out);
}

BinaryTree build(const std::vector<StdInterval>& leaves, std::size_t lo, std::size_t hi, const StdInterval& node) {
  if (lo >= hi) throw std::invalid_argument("leaves do not partition [0,1]");
  if (hi - lo == 1 && leaves[lo] == node) return BinaryTree();
  if (!node.contains(leaves[lo]) || leaves[lo] == node) throw std::invalid_argument("leaves do not partition [0,1]");
  const Dyadic mid = node.left().end();
  std::size_t m = lo;
  while (m < hi && leaves[m].start() < mid) ++m;
  return BinaryTree(build(leaves, lo, m, node.left()), build(leaves, m, hi, node.right()));
}

}  // namespace

std::vector<StdInterval> BinaryTree::leaves() const {
  std::vector<StdInterval> out;
  collect(*this, StdInterval{}, out);
  return out;
}

BinaryTree BinaryTree::from_leaves(const std::vector<StdInterval>& leaves) {
  return build(leaves, 0, leaves.size(), StdInterval{});
}

void validate(const TreePair& t) {
  const std::size_t n = t.domain.leaf_count();
  if (t.range.leaf_count() != n) throw std::invalid_argument("trees have different leaf counts");
  if (t.rotation < 0 || static_cast<std::size_t>(t.rotation) >= n) throw std::invalid_argument("rotation out of range");
}

namespace {

// Leaf correspondence listed in domain order.
using PairList = std::vector<std::pair<StdInterval, StdInterval>>;

PairList to_pairs(const TreePair& t) {
  validate(t);
  const auto dom = t.domain.leaves();
  const auto rng = t.range.leaves();
  const std::size_t n = dom.size();
  PairList out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {dom[i], rng[(i + t.rotation) % n]};
  return out;
}

TreePair from_pairs(PairList pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<StdInterval> dom, rng;
  for (const auto& [d, r] : pairs) {
    dom.push_back(d);
    rng.push_back(r);
  }
  const StdInterval first = rng[0];
  std::sort(rng.begin(), rng.end());
  const auto rot = std::find(rng.begin(), rng.end(), first) - rng.begin();
  return {BinaryTree::from_leaves(dom), BinaryTree::from_leaves(rng), static_cast<int>(rot)};
}

bool siblings(const StdInterval& a, const StdInterval& b) {
  return a.level == b.level && a.level > 0 && a.index % 2 == 0 && b.index == a.index + 1;
}

std::vector<std::size_t> carets(const PairList& p) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    if (siblings(p[k].first, p[k + 1].first) && siblings(p[k].second, p[k + 1].second)) out.push_back(k);
  return out;
}

void merge_at(PairList& p, std::size_t k) {
  const StdInterval d{p[k].first.index / 2, p[k].first.level - 1};
  const StdInterval r{p[k].second.index / 2, p[k].second.level - 1};
  p[k] = {d, r};
  p.erase(p.begin() + static_cast<std::ptrdiff_t>(k) + 1);
}

PairList split_at(const PairList& p, std::size_t k) {
  PairList out;
  out.reserve(p.size() + 1);
  out.insert(out.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
  out.emplace_back(p[k].first.left(), p[k].second.left());
  out.emplace_back(p[k].first.right(), p[k].second.right());
  out.insert(out.end(), p.begin() + static_cast<std::ptrdiff_t>(k) + 1, p.end());
  return out;
}

}  // namespace

TreePair reduce(const TreePair& t) {
  PairList p = to_pairs(t);
  for (auto c = carets(p); !c.empty(); c = carets(p)) merge_at(p, c.front());
  return from_pairs(std::move(p));
}

TreePair reduce(const TreePair& t, std::mt19937_64& rng) {
  PairList p = to_pairs(t);
  for (auto c = carets(p); !c.empty(); c = carets(p)) {
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    merge_at(p, c[pick(rng)]);
  }
  return from_pairs(std::move(p));
}

bool is_reduced(const TreePair& t) { return carets(to_pairs(t)).empty(); }

DyadicPL treepair_to_dyadic(const TreePair& t) {
  std::vector<DyadicPL::Point> pts;
  for (const auto& [d, r] : to_pairs(t)) pts.emplace_back(d.start(), r.start());
  return DyadicPL(std::move(pts));
}

TreePair dyadic_to_treepair(const DyadicPL& d) {
  PairList pairs;
  std::vector<StdInterval> stack{StdInterval{}};
  while (!stack.empty()) {
    const StdInterval i = stack.back();
    stack.pop_back();
    std::optional<StdInterval> j;
    if (!breaks_inside(d, i)) j = affine_image(d, i);
    if (!j) {
      if (i.level > kMaxLevel) throw std::overflow_error("dyadic_to_treepair: refinement too deep");
      stack.push_back(i.left());
      stack.push_back(i.right());
      continue;
    }
    pairs.emplace_back(i, *j);
  }
  return reduce(from_pairs(std::move(pairs)));
}

namespace {

// Index of the interval in a sorted partition that contains the point x.
std::size_t locate(const std::vector<StdInterval>& sorted, const Dyadic& x) {
  auto it = std::upper_bound(sorted.begin(), sorted.end(), x, [](const Dyadic& v, const StdInterval& i) { return v < i.start(); });
  return static_cast<std::size_t>(it - sorted.begin()) - 1;
}

// Splits pairs of p (keyed by `side`) until each key interval lies inside some interval of `other`.
bool refine_against(PairList& p, bool by_range, const std::vector<StdInterval>& other) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    const StdInterval& key = by_range ? p[k].second : p[k].first;
    const StdInterval& cover = other[locate(other, key.start())];
    if (cover.level > key.level) {
      p = split_at(p, k);
      return true;
    }
  }
  return false;
}

std::vector<StdInterval> sorted_keys(const PairList& p, bool by_range) {
  std::vector<StdInterval> out;
  for (const auto& [d, r] : p) out.push_back(by_range ? r : d);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TreePair treepair_compose(const TreePair& s, const TreePair& t) {
  PairList ps = to_pairs(s);
  PairList pt = to_pairs(t);
  bool changed = true;
  while (changed) {
    changed = refine_against(pt, true, sorted_keys(ps, false));
    changed = refine_against(ps, false, sorted_keys(pt, true)) || changed;
  }
  std::map<std::pair<Int, int>, StdInterval> s_map;
  for (const auto& [d, r] : ps) s_map[{d.index, d.level}] = r;
  PairList out;
  for (const auto& [d, z] : pt) out.emplace_back(d, s_map.at({z.index, z.level}));
  return reduce(from_pairs(std::move(out)));
}

TreePair treepair_inverse(const TreePair& t) {
  PairList p = to_pairs(t);
  for (auto& [d, r] : p) std::swap(d, r);
  return from_pairs(std::move(p));
}

TreePair identity_treepair() { return {}; }

CfpGenerators cfp_generators() {
  using P = DyadicPL::Point;
  const Dyadic zero, half(1, 1), quarter(1, 2), three_q(3, 2), five_e(5, 3), seven_e(7, 3);
  return {DyadicPL({P{zero, zero}, P{half, quarter}, P{three_q, half}}),
          DyadicPL({P{zero, zero}, P{half, half}, P{three_q, five_e}, P{seven_e, three_q}}),
          DyadicPL({P{zero, three_q}, P{half, zero}, P{three_q, half}})};
}

}  // namespace cremona
