#pragma once

#include "cremona/dyadic.hpp"
#include "cremona/pl_aut.hpp"

#include <random>
#include <vector>

namespace cremona {

/// [index / 2^level, (index + 1) / 2^level].
struct StdInterval {
  Int index = 0;
  int level = 0;

  Dyadic start() const { return Dyadic(index, level); }
  Dyadic end() const { return Dyadic(index + 1, level); }
  StdInterval left() const { return {2 * index, level + 1}; }
  StdInterval right() const { return {2 * index + 1, level + 1}; }
  bool contains(const StdInterval& o) const;

  friend bool operator==(const StdInterval&, const StdInterval&) = default;
  friend bool operator<(const StdInterval& a, const StdInterval& b) {
    return a.start() != b.start() ? a.start() < b.start() : a.level < b.level;
  }
};

/// The standard interval [a, a + len], if it is one.
std::optional<StdInterval> standard_interval(const Dyadic& a, const Dyadic& len);

/// Correspondence between dyadics in [0,1) and primitive vectors: 0, 1/2, 3/4 go to
/// (1,0), (0,1), (-1,-1) and midpoints of standard intervals go to mediants.
Primitive primitive_of(const Dyadic& x);
Dyadic dyadic_of(const Primitive& s);

DyadicPL plaut_to_dyadic(const PLAut& f);
/// Throws std::invalid_argument if the result is not unimodular on some cone.
PLAut dyadic_to_plaut(const DyadicPL& d);

/// A finite rooted binary tree; a node is a leaf or has exactly two children.
class BinaryTree {
 public:
  BinaryTree() = default;  // a leaf
  BinaryTree(BinaryTree left, BinaryTree right);

  bool is_leaf() const { return children_.empty(); }
  const BinaryTree& left() const { return children_[0]; }
  const BinaryTree& right() const { return children_[1]; }
  std::size_t leaf_count() const;

  /// Leaf intervals in left-to-right order, root = [0,1].
  std::vector<StdInterval> leaves() const;
  /// Tree whose leaves are the given partition of [0,1] (sorted). Throws std::invalid_argument.
  static BinaryTree from_leaves(const std::vector<StdInterval>& leaves);

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

 private:
  std::vector<BinaryTree> children_;
};

/// Thompson T element: domain leaf i maps affinely onto range leaf (i + rotation) mod n.
struct TreePair {
  BinaryTree domain;
  BinaryTree range;
  int rotation = 0;

  friend bool operator==(const TreePair&, const TreePair&) = default;
};

/// Validates leaf counts and rotation; throws std::invalid_argument.
void validate(const TreePair& t);

/// Cancels simultaneous carets until none remain.
TreePair reduce(const TreePair& t);
/// Same, cancelling in a random order.
TreePair reduce(const TreePair& t, std::mt19937_64& rng);
bool is_reduced(const TreePair& t);

DyadicPL treepair_to_dyadic(const TreePair& t);
TreePair dyadic_to_treepair(const DyadicPL& d);

/// s o t via the common refinement of range(t) and domain(s); result reduced.
TreePair treepair_compose(const TreePair& s, const TreePair& t);
TreePair treepair_inverse(const TreePair& t);
TreePair identity_treepair();

struct CfpGenerators {
  DyadicPL A;
  DyadicPL B;
  DyadicPL C;
};

CfpGenerators cfp_generators();

}  // namespace cremona
