#pragma once

#include <string>
#include <vector>

#include "treespan/tree.hpp"

namespace treespan {

/// Canonical encodings of every rooted tree with exactly n nodes, one per
/// isomorphism class, in ascending lexicographic order. n = 0 yields the
/// empty-tree sentinel { "" }. Results are memoized.
std::vector<std::string> canonical_shapes(int n);

/// Concrete tree for a canonical encoding. Nodes are labelled in preorder
/// with zero-padded decimals ("1", "2", ... or "01", "02", ... once the
/// count needs two digits), so label order equals preorder and the built
/// tree's canonical_encoding round-trips to `enc`.
RootedTree tree_from_encoding(const std::string& enc);

}  // namespace treespan
