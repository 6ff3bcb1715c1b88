#include "treespan/solvers.hpp"

#include <algorithm>
#include <optional>

namespace treespan {

namespace {

std::string size_bound_message(const char* op, int limit) {
  return std::string(op) + ": input exceeds the brute-force cap of " +
         std::to_string(limit) + " nodes; raise max_nodes to search anyway";
}

}  // namespace

SpanResult lcst_bruteforce(const RootedTree& t1, const RootedTree& t2,
                           const SolveConfig& cfg) {
  const int cap = std::min(t1.size(), t2.size());
  if (cap > cfg.max_nodes)
    fail(Errc::BoundExceeded, size_bound_message("lcst", cfg.max_nodes));

  for (int n = cap; n >= 0; --n) {
    for (const std::string& enc : canonical_shapes(n)) {
      RootedTree apex = tree_from_encoding(enc);
      auto e1 = first_embedding(apex, t1, cfg.kind);
      if (!e1) continue;
      auto e2 = first_embedding(apex, t2, cfg.kind);
      if (!e2) continue;
      return SpanResult(std::move(*e1), std::move(*e2));
    }
  }
  fail(Errc::InternalError, "lcst search fell through the empty tree");
}

CospanResult scst_bruteforce(const RootedTree& t1, const RootedTree& t2,
                             const SolveConfig& cfg) {
  if (t1.size() + t2.size() > 2 * cfg.max_nodes)
    fail(Errc::BoundExceeded, size_bound_message("scst", cfg.max_nodes));

  // an empty side makes the other tree itself the smallest supertree;
  // return it unrelabelled
  if (t1.empty() || t2.empty()) {
    const RootedTree& host = t1.empty() ? t2 : t1;
    Embedding vac(RootedTree(), host, {}, cfg.kind);
    Embedding ident = Embedding::identity(host, cfg.kind);
    return t1.empty() ? CospanResult(std::move(vac), std::move(ident))
                      : CospanResult(std::move(ident), std::move(vac));
  }

  const int lo = std::max(t1.size(), t2.size());
  const int hi = t1.size() + t2.size();
  for (int n = lo; n <= hi; ++n) {
    for (const std::string& enc : canonical_shapes(n)) {
      RootedTree apex = tree_from_encoding(enc);
      auto e1 = first_embedding(t1, apex, cfg.kind);
      if (!e1) continue;
      auto e2 = first_embedding(t2, apex, cfg.kind);
      if (!e2) continue;
      return CospanResult(std::move(*e1), std::move(*e2));
    }
  }
  // Unreachable: merging the two roots always yields a common supertree of
  // size |t1|+|t2|-1 <= hi.
  fail(Errc::InternalError, "scst search exhausted its provably safe bound");
}

CospanResult sub_to_super(const SpanResult& s, const SolveConfig& cfg) {
  if (cfg.debug_oracle) {
    SolveConfig oracle = cfg;
    oracle.kind = s.kind();
    SpanResult best = lcst_bruteforce(s.left_target(), s.right_target(), oracle);
    if (s.apex().size() != best.apex().size())
      fail(Errc::InvalidSpan,
           "apex has " + std::to_string(s.apex().size()) +
               " nodes but a largest common subtree has " +
               std::to_string(best.apex().size()));
  }
  return sum(s, cfg.debug_oracle);
}

SpanResult super_to_sub(const CospanResult& c, const SolveConfig& cfg) {
  if (cfg.debug_oracle) {
    SolveConfig oracle = cfg;
    oracle.kind = c.kind();
    CospanResult best =
        scst_bruteforce(c.left_source(), c.right_source(), oracle);
    if (c.apex().size() != best.apex().size())
      fail(Errc::NotSmallestSupertree,
           "apex has " + std::to_string(c.apex().size()) +
               " nodes but a smallest common supertree has " +
               std::to_string(best.apex().size()));
  }

  const RootedTree& T = c.apex();
  const RootedTree& T1 = c.left_source();
  const RootedTree& T2 = c.right_source();

  std::vector<NodeIndex> pre1(T.size(), -1), pre2(T.size(), -1);
  for (NodeIndex a = 0; a < T1.size(); ++a) pre1[c.left(a)] = a;
  for (NodeIndex b = 0; b < T2.size(); ++b) pre2[c.right(b)] = b;

  std::vector<char> doubly(T.size(), 0);
  for (NodeIndex v = 0; v < T.size(); ++v)
    doubly[v] = pre1[v] >= 0 && pre2[v] >= 0;

  // nearest doubly-marked proper ancestor, one sweep by increasing depth
  std::vector<NodeIndex> by_depth(T.size());
  for (NodeIndex v = 0; v < T.size(); ++v) by_depth[v] = v;
  std::sort(by_depth.begin(), by_depth.end(), [&](NodeIndex a, NodeIndex b) {
    return T.depth(a) < T.depth(b);
  });
  std::vector<NodeIndex> nda(T.size(), -1);
  for (NodeIndex v : by_depth) {
    NodeIndex p = T.parent(v);
    if (p < 0) continue;
    nda[v] = doubly[p] ? p : nda[p];
  }

  int parentless = 0;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> arcs;
  for (NodeIndex v = 0; v < T.size(); ++v) {
    if (!doubly[v]) continue;
    names.push_back(T1.label(pre1[v]));
    if (nda[v] < 0)
      ++parentless;
    else
      arcs.emplace_back(T1.label(pre1[nda[v]]), T1.label(pre1[v]));
  }
  if (parentless > 1)
    fail(Errc::NotSmallestSupertree,
         "the doubly covered part of the supertree splits into " +
             std::to_string(parentless) +
             " components; the apex is not a smallest common supertree");

  RootedTree apex;
  try {
    apex = RootedTree::validate(names, arcs);
  } catch (const Error& e) {
    fail(Errc::InternalError,
         std::string("spliced subtree failed validation (") + e.what() + ")");
  }

  NodeMapping m1(apex.size()), m2(apex.size());
  for (NodeIndex v = 0; v < T.size(); ++v) {
    if (!doubly[v]) continue;
    NodeIndex i = apex.index_of(T1.label(pre1[v]));
    m1[i] = pre1[v];
    m2[i] = pre2[v];
  }
  return SpanResult(Embedding(apex, T1, std::move(m1), c.kind()),
                    Embedding(apex, T2, std::move(m2), c.kind()));
}

}  // namespace treespan
