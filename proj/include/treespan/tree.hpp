#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treespan/errors.hpp"

namespace treespan {

/// Index of a node inside one tree. Nodes are sorted ascending by label,
/// so indices double as the deterministic iteration order.
using NodeIndex = int;

/// A directed path, root-to-leaf oriented: consecutive entries are arcs of
/// the host tree. A single entry is the trivial path.
using Path = std::vector<NodeIndex>;

/// Immutable rooted tree over string-labelled nodes. Arcs point away from
/// the root; every node has in-degree <= 1 and is reachable from the root.
/// The empty tree (no nodes) is a valid value. All structure (parents,
/// children, depths, preorder intervals) is precomputed at validation, so
/// lookups after construction never mutate shared state.
class RootedTree {
public:
  /// The empty tree.
  RootedTree();

  /// Checks the rootedness and unique-path invariants and builds the tree.
  /// `root` may be omitted, in which case the unique in-degree-0 node is
  /// used. Error precedence: InvalidLabel (empty/whitespace/duplicate) ->
  /// DanglingArc -> CycleDetected (self-loop) -> NodeInDegreeExceeded ->
  /// root resolution (UnknownNode / MultipleRoots / CycleDetected /
  /// UnreachableNode) -> CycleDetected for unreachable remainder.
  static RootedTree validate(std::vector<std::string> nodes,
                             std::vector<std::pair<std::string, std::string>> arcs,
                             std::optional<std::string> root = std::nullopt);

  /// Node count. All size comparisons in this library use node count; for
  /// non-empty trees |V| = |E| + 1, so the choice only matters for the
  /// empty tree.
  int size() const;
  int arc_count() const;
  bool empty() const { return size() == 0; }

  bool has_node(const std::string& label) const;
  /// Throws UnknownNode.
  NodeIndex index_of(const std::string& label) const;
  const std::string& label(NodeIndex i) const;
  /// Labels in ascending lexicographic order; label(i) == labels()[i].
  const std::vector<std::string>& labels() const;

  /// -1 for the empty tree.
  NodeIndex root() const;
  /// -1 for the root.
  NodeIndex parent(NodeIndex i) const;
  /// Children in ascending label order.
  const std::vector<NodeIndex>& children(NodeIndex i) const;
  int out_degree(NodeIndex i) const;
  int depth(NodeIndex i) const;

  /// Arcs as (parent, child) index pairs, sorted by (parent label, child label).
  const std::vector<std::pair<NodeIndex, NodeIndex>>& arcs() const;

  /// True iff a lies on the root path of b (a == b included).
  bool is_ancestor_or_self(NodeIndex a, NodeIndex b) const;
  bool is_proper_ancestor(NodeIndex a, NodeIndex b) const;

  /// Structural equality: same labels, same arcs, same root.
  bool operator==(const RootedTree& other) const;
  bool operator!=(const RootedTree& other) const { return !(*this == other); }

private:
  struct Data;
  std::shared_ptr<const Data> data_;
  explicit RootedTree(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
};

/// The unique directed path from a to b if one exists (a == b yields the
/// trivial path). Throws UnknownNode for out-of-range indices.
std::optional<Path> path_between(const RootedTree& t, NodeIndex a, NodeIndex b);
std::optional<Path> path_between(const RootedTree& t, const std::string& a,
                                 const std::string& b);

/// True iff every intermediate node of p has out-degree 1 in t. Trivial
/// paths and single arcs are elementary. Throws InvalidPath if p is not a
/// path of t.
bool is_elementary(const RootedTree& t, const Path& p);

/// Least common ancestor. For a pair connected by a path this returns the
/// shallower endpoint (the natural extension of the meet).
NodeIndex least_common_ancestor(const RootedTree& t, NodeIndex b, NodeIndex c);

/// True iff p and q share only their common origin; equivalently, their
/// first arcs differ. pre: both paths are non-trivial paths of t.
/// Throws OriginMismatch when the origins differ, InvalidPath otherwise.
bool paths_diverge(const RootedTree& t, const Path& p, const Path& q);

/// Label-independent canonical form: "(" + sorted child encodings + ")"
/// per node, empty string for the empty tree. Equal encodings characterise
/// isomorphic trees.
std::string canonical_encoding(const RootedTree& t);

bool trees_isomorphic(const RootedTree& a, const RootedTree& b);

}  // namespace treespan
