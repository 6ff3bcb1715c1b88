#include "treespan/tree.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace treespan {

struct RootedTree::Data {
  std::vector<std::string> labels;  // ascending
  std::vector<NodeIndex> parent;    // -1 for root
  std::vector<std::vector<NodeIndex>> children;
  std::vector<int> depth;
  std::vector<int> tin, tout;  // preorder interval for O(1) ancestor tests
  std::vector<std::pair<NodeIndex, NodeIndex>> arc_list;
  NodeIndex root = -1;
};

namespace {

bool label_ok(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char ch : s) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v')
      return false;
  }
  return true;
}

}  // namespace

RootedTree::RootedTree() : data_(std::make_shared<Data>()) {}

RootedTree RootedTree::validate(std::vector<std::string> nodes,
                                std::vector<std::pair<std::string, std::string>> arcs,
                                std::optional<std::string> root) {
  auto d = std::make_shared<Data>();

  std::sort(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!label_ok(nodes[i]))
      fail(Errc::InvalidLabel, "node label '" + nodes[i] + "' is empty or has whitespace");
    if (i > 0 && nodes[i] == nodes[i - 1])
      fail(Errc::InvalidLabel, "duplicate node label '" + nodes[i] + "'");
  }
  d->labels = std::move(nodes);
  const int n = static_cast<int>(d->labels.size());

  auto find = [&](const std::string& s) -> NodeIndex {
    auto it = std::lower_bound(d->labels.begin(), d->labels.end(), s);
    if (it == d->labels.end() || *it != s) return -1;
    return static_cast<NodeIndex>(it - d->labels.begin());
  };

  d->parent.assign(n, -1);
  d->children.assign(n, {});
  for (const auto& [p, c] : arcs) {
    NodeIndex pi = find(p), ci = find(c);
    if (pi < 0 || ci < 0)
      fail(Errc::DanglingArc, "arc (" + p + ", " + c + ") references an undeclared node");
    if (pi == ci) fail(Errc::CycleDetected, "self-loop arc on node '" + p + "'");
    if (d->parent[ci] == pi) continue;  // duplicate arc line, idempotent
    if (d->parent[ci] != -1)
      fail(Errc::NodeInDegreeExceeded, "node '" + c + "' has more than one incoming arc");
    d->parent[ci] = pi;
    d->children[pi].push_back(ci);
  }
  for (auto& ch : d->children) std::sort(ch.begin(), ch.end());

  // Root resolution.
  std::vector<NodeIndex> parentless;
  for (NodeIndex i = 0; i < n; ++i)
    if (d->parent[i] == -1) parentless.push_back(i);

  if (root) {
    NodeIndex ri = find(*root);
    if (ri < 0) fail(Errc::UnknownNode, "declared root '" + *root + "' is not a node");
    for (NodeIndex z : parentless)
      if (z != ri)
        fail(Errc::UnreachableNode,
             "node '" + d->labels[z] + "' has no parent and is not the declared root");
    if (d->parent[ri] != -1)
      fail(Errc::CycleDetected, "declared root '" + *root + "' has an incoming arc");
    d->root = ri;
  } else if (n > 0) {
    if (parentless.empty())
      fail(Errc::CycleDetected, "no node of in-degree 0; the graph has a cycle");
    if (parentless.size() > 1)
      fail(Errc::MultipleRoots, "nodes '" + d->labels[parentless[0]] + "' and '" +
                                    d->labels[parentless[1]] + "' both lack a parent");
    d->root = parentless[0];
  }

  // Reachability; with in-degrees settled, an unreached remainder is cyclic.
  d->depth.assign(n, -1);
  d->tin.assign(n, 0);
  d->tout.assign(n, 0);
  int reached = 0, timer = 0;
  if (n > 0) {
    std::vector<std::pair<NodeIndex, std::size_t>> stack;
    d->depth[d->root] = 0;
    d->tin[d->root] = timer++;
    stack.emplace_back(d->root, 0);
    ++reached;
    while (!stack.empty()) {
      auto& [v, k] = stack.back();
      if (k < d->children[v].size()) {
        NodeIndex c = d->children[v][k++];
        d->depth[c] = d->depth[v] + 1;
        d->tin[c] = timer++;
        stack.emplace_back(c, 0);
        ++reached;
      } else {
        d->tout[v] = timer++;
        stack.pop_back();
      }
    }
  }
  if (reached < n) fail(Errc::CycleDetected, "nodes unreachable from the root form a cycle");

  for (NodeIndex p = 0; p < n; ++p)
    for (NodeIndex c : d->children[p]) d->arc_list.emplace_back(p, c);

  return RootedTree(std::move(d));
}

int RootedTree::size() const { return static_cast<int>(data_->labels.size()); }
int RootedTree::arc_count() const { return static_cast<int>(data_->arc_list.size()); }

bool RootedTree::has_node(const std::string& label) const {
  return std::binary_search(data_->labels.begin(), data_->labels.end(), label);
}

NodeIndex RootedTree::index_of(const std::string& label) const {
  auto it = std::lower_bound(data_->labels.begin(), data_->labels.end(), label);
  if (it == data_->labels.end() || *it != label)
    fail(Errc::UnknownNode, "no node labelled '" + label + "'");
  return static_cast<NodeIndex>(it - data_->labels.begin());
}

const std::string& RootedTree::label(NodeIndex i) const {
  if (i < 0 || i >= size()) fail(Errc::UnknownNode, "node index out of range");
  return data_->labels[i];
}

const std::vector<std::string>& RootedTree::labels() const { return data_->labels; }

NodeIndex RootedTree::root() const { return data_->root; }

NodeIndex RootedTree::parent(NodeIndex i) const {
  if (i < 0 || i >= size()) fail(Errc::UnknownNode, "node index out of range");
  return data_->parent[i];
}

const std::vector<NodeIndex>& RootedTree::children(NodeIndex i) const {
  if (i < 0 || i >= size()) fail(Errc::UnknownNode, "node index out of range");
  return data_->children[i];
}

int RootedTree::out_degree(NodeIndex i) const {
  return static_cast<int>(children(i).size());
}

int RootedTree::depth(NodeIndex i) const {
  if (i < 0 || i >= size()) fail(Errc::UnknownNode, "node index out of range");
  return data_->depth[i];
}

const std::vector<std::pair<NodeIndex, NodeIndex>>& RootedTree::arcs() const {
  return data_->arc_list;
}

bool RootedTree::is_ancestor_or_self(NodeIndex a, NodeIndex b) const {
  if (a < 0 || a >= size() || b < 0 || b >= size())
    fail(Errc::UnknownNode, "node index out of range");
  return data_->tin[a] <= data_->tin[b] && data_->tout[b] <= data_->tout[a];
}

bool RootedTree::is_proper_ancestor(NodeIndex a, NodeIndex b) const {
  return a != b && is_ancestor_or_self(a, b);
}

bool RootedTree::operator==(const RootedTree& other) const {
  if (data_ == other.data_) return true;
  return data_->labels == other.data_->labels && data_->parent == other.data_->parent &&
         data_->root == other.data_->root;
}

std::optional<Path> path_between(const RootedTree& t, NodeIndex a, NodeIndex b) {
  if (a < 0 || a >= t.size() || b < 0 || b >= t.size())
    fail(Errc::UnknownNode, "node index out of range");
  if (a == b) return Path{a};
  if (!t.is_proper_ancestor(a, b)) return std::nullopt;
  Path rev;
  for (NodeIndex v = b; v != a; v = t.parent(v)) rev.push_back(v);
  rev.push_back(a);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::optional<Path> path_between(const RootedTree& t, const std::string& a,
                                 const std::string& b) {
  return path_between(t, t.index_of(a), t.index_of(b));
}

namespace {

void require_path(const RootedTree& t, const Path& p) {
  if (p.empty()) fail(Errc::InvalidPath, "a path has at least one node");
  for (NodeIndex v : p)
    if (v < 0 || v >= t.size()) fail(Errc::UnknownNode, "path node index out of range");
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (t.parent(p[i + 1]) != p[i])
      fail(Errc::InvalidPath, "consecutive path entries are not an arc");
}

}  // namespace

bool is_elementary(const RootedTree& t, const Path& p) {
  require_path(t, p);
  for (std::size_t i = 1; i + 1 < p.size(); ++i)
    if (t.out_degree(p[i]) != 1) return false;
  return true;
}

NodeIndex least_common_ancestor(const RootedTree& t, NodeIndex b, NodeIndex c) {
  if (b < 0 || b >= t.size() || c < 0 || c >= t.size())
    fail(Errc::UnknownNode, "node index out of range");
  while (t.depth(b) > t.depth(c)) b = t.parent(b);
  while (t.depth(c) > t.depth(b)) c = t.parent(c);
  while (b != c) {
    b = t.parent(b);
    c = t.parent(c);
  }
  return b;
}

bool paths_diverge(const RootedTree& t, const Path& p, const Path& q) {
  require_path(t, p);
  require_path(t, q);
  if (p.size() < 2 || q.size() < 2)
    fail(Errc::InvalidPath, "divergence is defined for non-trivial paths");
  if (p[0] != q[0])
    fail(Errc::OriginMismatch, "paths start at different nodes");
  return p[1] != q[1];
}

std::string canonical_encoding(const RootedTree& t) {
  if (t.empty()) return "";
  const int n = t.size();
  // Post-order via depth buckets keeps this iterative; deep chains would
  // overflow a recursive formulation.
  std::vector<std::vector<NodeIndex>> by_depth;
  for (NodeIndex i = 0; i < n; ++i) {
    auto d = static_cast<std::size_t>(t.depth(i));
    if (by_depth.size() <= d) by_depth.resize(d + 1);
    by_depth[d].push_back(i);
  }
  std::vector<std::string> enc(n);
  for (auto it = by_depth.rbegin(); it != by_depth.rend(); ++it) {
    for (NodeIndex v : *it) {
      std::vector<std::string> parts;
      parts.reserve(t.children(v).size());
      for (NodeIndex c : t.children(v)) parts.push_back(std::move(enc[c]));
      std::sort(parts.begin(), parts.end());
      std::string s = "(";
      for (const auto& part : parts) s += part;
      s += ")";
      enc[v] = std::move(s);
    }
  }
  return enc[t.root()];
}

bool trees_isomorphic(const RootedTree& a, const RootedTree& b) {
  if (a.size() != b.size()) return false;
  return canonical_encoding(a) == canonical_encoding(b);
}

}  // namespace treespan
