#include "treespan/pullback.hpp"

#include <algorithm>
#include <unordered_map>

namespace treespan {

namespace {
const char* const kFresh = "⊥";  // "⊥"
}

CospanResult::CospanResult(Embedding f1, Embedding f2)
    : left(std::move(f1)), right(std::move(f2)) {
  if (!(left.target() == right.target()))
    fail(Errc::InvalidCospan, "the two embeddings do not share an apex");
  if (left.kind() != right.kind())
    fail(Errc::KindMismatch, "the two embeddings have different kinds");
}

std::vector<IntersectionResult::Provenance> IntersectionResult::provenance() const {
  std::vector<Provenance> out;
  const RootedTree& tp = left_inclusion.source();
  for (NodeIndex i = 0; i < tp.size(); ++i) {
    out.push_back({tp.label(i),
                   left_inclusion.target().label(left_inclusion.map()[i]),
                   right_inclusion.target().label(right_inclusion.map()[i])});
  }
  return out;
}

namespace {

/// up[v] = nearest marked proper ancestor of v, -1 when none. O(V).
std::vector<NodeIndex> nearest_marked_ancestor(const RootedTree& t,
                                               const std::vector<char>& marked) {
  std::vector<NodeIndex> up(t.size(), -1);
  std::vector<std::vector<NodeIndex>> by_depth;
  for (NodeIndex i = 0; i < t.size(); ++i) {
    auto d = static_cast<std::size_t>(t.depth(i));
    if (by_depth.size() <= d) by_depth.resize(d + 1);
    by_depth[d].push_back(i);
  }
  for (const auto& level : by_depth) {
    for (NodeIndex v : level) {
      NodeIndex p = t.parent(v);
      if (p >= 0) up[v] = marked[p] ? p : up[p];
    }
  }
  return up;
}

}  // namespace

IntersectionResult intersection(const CospanResult& c) {
  const RootedTree& T = c.apex();
  const RootedTree& T1 = c.left_source();
  const RootedTree& T2 = c.right_source();

  std::vector<NodeIndex> pre1(T.size(), -1), pre2(T.size(), -1);
  for (NodeIndex i = 0; i < T1.size(); ++i) pre1[c.left(i)] = i;
  for (NodeIndex j = 0; j < T2.size(); ++j) pre2[c.right(j)] = j;

  std::vector<NodeIndex> common;  // apex indices hit from both sides
  std::vector<char> marked1(T1.size(), 0), marked2(T2.size(), 0);
  for (NodeIndex v = 0; v < T.size(); ++v) {
    if (pre1[v] >= 0 && pre2[v] >= 0) {
      common.push_back(v);
      marked1[pre1[v]] = 1;
      marked2[pre2[v]] = 1;
    }
  }

  auto up1 = nearest_marked_ancestor(T1, marked1);
  auto up2 = nearest_marked_ancestor(T2, marked2);

  IntersectionResult r;
  for (NodeIndex v : common) r.graph_nodes.push_back(T.label(v));
  std::sort(r.graph_nodes.begin(), r.graph_nodes.end());

  // parent in the intersection graph: both sides must agree on the nearest
  // common-image proper ancestor
  std::unordered_map<NodeIndex, NodeIndex> graph_parent;  // apex index -> apex index
  std::vector<NodeIndex> parentless;
  for (NodeIndex v : common) {
    NodeIndex a1 = up1[pre1[v]], a2 = up2[pre2[v]];
    if (a1 >= 0 && a2 >= 0 && c.left(a1) == c.right(a2)) {
      graph_parent[v] = c.left(a1);
      r.graph_arcs.emplace_back(T.label(c.left(a1)), T.label(v));
    } else {
      parentless.push_back(v);
    }
  }
  std::sort(r.graph_arcs.begin(), r.graph_arcs.end());

  // tree nodes take their T1-side labels
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::unordered_map<NodeIndex, std::string> name_of;  // apex index -> T_p label
  for (NodeIndex v : common) {
    const std::string& nm = T1.label(pre1[v]);
    if (nm == kFresh)
      fail(Errc::ReservedLabel, "label ⊥ is reserved for the synthetic root");
    name_of[v] = nm;
    names.push_back(nm);
  }
  for (const auto& [v, p] : graph_parent) arcs.emplace_back(name_of[p], name_of[v]);

  std::optional<std::string> root_name;
  if (parentless.size() <= 1) {
    r.shape = IntersectionShape::Tree;
    if (!parentless.empty()) root_name = name_of[parentless[0]];
  } else {
    if (c.kind() != EmbeddingKind::Minor)
      fail(Errc::InternalError,
           "non-minor cospan produced a forest-shaped intersection");
    r.shape = IntersectionShape::Forest;
    r.fresh_root = kFresh;
    names.push_back(kFresh);
    for (NodeIndex v : parentless) arcs.emplace_back(kFresh, name_of[v]);
    root_name = kFresh;
  }
  r.tree = RootedTree::validate(names, arcs, root_name);

  NodeMapping m1(r.tree.size()), m2(r.tree.size());
  for (NodeIndex v : common) {
    NodeIndex i = r.tree.index_of(name_of[v]);
    m1[i] = pre1[v];
    m2[i] = pre2[v];
  }
  if (r.fresh_root) {
    NodeIndex i = r.tree.index_of(*r.fresh_root);
    m1[i] = T1.root();
    m2[i] = T2.root();
  }
  EmbeddingKind inc_kind =
      r.shape == IntersectionShape::Tree ? c.kind() : EmbeddingKind::Minor;
  try {
    r.left_inclusion = Embedding(r.tree, T1, std::move(m1), inc_kind);
    r.right_inclusion = Embedding(r.tree, T2, std::move(m2), inc_kind);
  } catch (const Error& e) {
    fail(Errc::InternalError,
         std::string("intersection inclusion failed to verify: ") + e.what());
  }
  return r;
}

Embedding pullback_mediator(const CospanResult& c, const IntersectionResult& r,
                            const Embedding& g1, const Embedding& g2) {
  if (!(g1.source() == g2.source()))
    fail(Errc::TreeMismatch, "probe embeddings have different sources");
  if (!(g1.target() == c.left_source()) || !(g2.target() == c.right_source()))
    fail(Errc::TreeMismatch, "probe embeddings do not land in the cospan's sources");
  if (!(r.left_inclusion.target() == c.left_source()) ||
      !(r.right_inclusion.target() == c.right_source()))
    fail(Errc::TreeMismatch, "intersection does not belong to this cospan");
  if (g1.kind() != c.kind() || g2.kind() != c.kind())
    fail(Errc::KindMismatch, "probe kind differs from the cospan's kind");
  if (c.kind() == EmbeddingKind::Minor && r.shape == IntersectionShape::Forest)
    fail(Errc::MinorForestUnsupported,
         "a minor cospan with a forest-shaped intersection has no pullback");

  const RootedTree& X = g1.source();
  for (NodeIndex x = 0; x < X.size(); ++x) {
    if (c.left(g1(x)) != c.right(g2(x)))
      fail(Errc::NonCommutingProbe, "probe does not commute at '" + X.label(x) + "'");
  }

  // apex coordinate -> intersection node
  std::unordered_map<NodeIndex, NodeIndex> tp_at;
  for (NodeIndex i = 0; i < r.tree.size(); ++i)
    tp_at[c.left(r.left_inclusion(i))] = i;

  NodeMapping med(X.size());
  for (NodeIndex x = 0; x < X.size(); ++x) {
    auto it = tp_at.find(c.left(g1(x)));
    if (it == tp_at.end())
      fail(Errc::InternalError, "probe image misses the intersection");
    med[x] = it->second;
  }
  try {
    return Embedding(X, r.tree, std::move(med), c.kind());
  } catch (const Error& e) {
    fail(Errc::InternalError,
         std::string("pullback mediator failed to verify: ") + e.what());
  }
}

}  // namespace treespan
