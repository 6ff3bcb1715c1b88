#include "treespan/pushout.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace treespan {

SpanResult::SpanResult(Embedding m1, Embedding m2)
    : left(std::move(m1)), right(std::move(m2)) {
  if (!(left.source() == right.source()))
    fail(Errc::InvalidSpan, "the two embeddings do not share an apex");
  if (left.kind() != right.kind())
    fail(Errc::KindMismatch, "the two embeddings have different kinds");
}

std::vector<int> QuotientGraph::in_degree() const {
  std::vector<int> deg(classes.size(), 0);
  for (const auto& [a, b] : arcs) ++deg[b];
  return deg;
}

QuotientGraph join(const SpanResult& s, bool debug_checks) {
  const RootedTree& T1 = s.left_target();
  const RootedTree& T2 = s.right_target();
  const RootedTree& mu = s.apex();

  if (debug_checks && !mu.empty()) {
    if (s.left(mu.root()) != T1.root() && s.right(mu.root()) != T2.root())
      fail(Errc::InvalidSpan,
           "the apex root lands on neither target root; the apex is not a "
           "largest common subtree");
  }

  std::vector<NodeIndex> partner1(T1.size(), -1);  // T1 node -> merged T2 node
  std::vector<NodeIndex> partner2(T2.size(), -1);
  for (NodeIndex c = 0; c < mu.size(); ++c) {
    partner1[s.left(c)] = s.right(c);
    partner2[s.right(c)] = s.left(c);
  }

  QuotientGraph q;
  for (NodeIndex i = 0; i < T1.size(); ++i) {
    QuotientClass cl;
    cl.in_left = T1.label(i);
    if (partner1[i] >= 0) {
      cl.name = T1.label(i);
      cl.in_right = T2.label(partner1[i]);
    } else {
      cl.name = "1:" + T1.label(i);
    }
    q.classes.push_back(std::move(cl));
  }
  for (NodeIndex j = 0; j < T2.size(); ++j) {
    if (partner2[j] >= 0) continue;
    QuotientClass cl;
    cl.name = "2:" + T2.label(j);
    cl.in_right = T2.label(j);
    q.classes.push_back(std::move(cl));
  }

  std::sort(q.classes.begin(), q.classes.end(),
            [](const QuotientClass& a, const QuotientClass& b) { return a.name < b.name; });
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < q.classes.size(); ++i) {
    if (!index.emplace(q.classes[i].name, static_cast<int>(i)).second)
      fail(Errc::InvalidSpan,
           "class name '" + q.classes[i].name +
               "' collides; node labels may not mimic the origin tags");
  }

  q.left_class.assign(T1.size(), -1);
  q.right_class.assign(T2.size(), -1);
  for (NodeIndex i = 0; i < T1.size(); ++i) {
    const std::string& nm =
        partner1[i] >= 0 ? T1.label(i) : "1:" + T1.label(i);
    q.left_class[i] = index.at(nm);
  }
  for (NodeIndex j = 0; j < T2.size(); ++j) {
    const std::string& nm =
        partner2[j] >= 0 ? T1.label(partner2[j]) : "2:" + T2.label(j);
    q.right_class[j] = index.at(nm);
  }

  std::set<std::pair<int, int>> arcset;
  for (const auto& [a, b] : T1.arcs())
    arcset.emplace(q.left_class[a], q.left_class[b]);
  for (const auto& [a, b] : T2.arcs())
    arcset.emplace(q.right_class[a], q.right_class[b]);
  q.arcs.assign(arcset.begin(), arcset.end());

  // Structural invariants of the quotient, independent of any precondition.
  auto deg = q.in_degree();
  for (std::size_t i = 0; i < q.classes.size(); ++i) {
    if (deg[i] > 2 || (deg[i] == 2 && !q.classes[i].merged()))
      fail(Errc::InternalError, "quotient in-degree rule violated at class '" +
                                    q.classes[i].name + "'");
  }

  if (debug_checks) {
    // Kahn peel; a remainder means a circuit, impossible over a genuine
    // common subtree.
    std::vector<int> d = deg;
    std::vector<int> queue;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] == 0) queue.push_back(static_cast<int>(i));
    std::vector<std::vector<int>> out(q.classes.size());
    for (const auto& [a, b] : q.arcs) out[a].push_back(b);
    std::size_t seen = 0;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      ++seen;
      for (int w : out[v])
        if (--d[w] == 0) queue.push_back(w);
    }
    if (seen != q.classes.size())
      fail(Errc::InvalidSpan, "the quotient contains a circuit; the apex is "
                              "not a largest common subtree");
  }
  return q;
}

PruneOutcome prune_subsumed_arcs(const QuotientGraph& q) {
  std::vector<int> order(q.classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  return prune_subsumed_arcs(q, order);
}

PruneOutcome prune_subsumed_arcs(const QuotientGraph& q,
                                 const std::vector<int>& scan_order) {
  const int n = static_cast<int>(q.classes.size());
  std::vector<std::vector<int>> in_src(n);
  for (const auto& [a, b] : q.arcs) in_src[b].push_back(a);
  for (auto& v : in_src) std::sort(v.begin(), v.end());

  std::set<std::pair<int, int>> removed;
  for (int y : scan_order) {
    if (y < 0 || y >= n) fail(Errc::UnknownNode, "scan order index out of range");
    if (in_src[y].size() != 2) continue;
    int x = in_src[y][0], xp = in_src[y][1];
    // lock-step upward walks over the unpruned graph; a walk dies when its
    // node is not on a plain chain (in-degree != 1)
    int a = x, b = xp;
    bool a_alive = true, b_alive = true;
    int guard = n + 1;
    while ((a_alive || b_alive) && guard-- > 0) {
      if (a_alive) {
        if (in_src[a].size() != 1) {
          a_alive = false;
        } else {
          a = in_src[a][0];
          if (a == xp) {
            removed.emplace(xp, y);
            break;
          }
        }
      }
      if (b_alive) {
        if (in_src[b].size() != 1) {
          b_alive = false;
        } else {
          b = in_src[b][0];
          if (b == x) {
            removed.emplace(x, y);
            break;
          }
        }
      }
    }
  }

  PruneOutcome out;
  for (const auto& arc : q.arcs) {
    if (removed.count(arc))
      out.removed.push_back(arc);
    else
      out.arcs.push_back(arc);
  }
  return out;
}

std::vector<std::pair<int, int>> subsumed_arcs_declarative(const QuotientGraph& q) {
  const int n = static_cast<int>(q.classes.size());
  std::vector<std::vector<int>> out(n);
  for (const auto& [a, b] : q.arcs) out[a].push_back(b);

  std::vector<std::pair<int, int>> subsumed;
  for (const auto& [v, w] : q.arcs) {
    // reachable v ~> w without the direct arc?
    std::vector<char> seen(n, 0);
    std::vector<int> stack{v};
    seen[v] = 1;
    bool found = false;
    while (!stack.empty() && !found) {
      int u = stack.back();
      stack.pop_back();
      for (int x : out[u]) {
        if (u == v && x == w) continue;
        if (x == w) {
          found = true;
          break;
        }
        if (!seen[x]) {
          seen[x] = 1;
          stack.push_back(x);
        }
      }
    }
    if (found) subsumed.emplace_back(v, w);
  }
  return subsumed;
}

namespace {

// At Iso/Homeo/Topo, a span of a genuinely largest apex always glues to a
// tree, so a glue failure convicts the apex. At Minor it does not: sibling
// image paths may share intermediates, and such a span can fail to glue even
// when its apex is a largest common subtree.
std::string glue_failure_diagnosis(EmbeddingKind k) {
  if (k == EmbeddingKind::Minor)
    return "); the span is not gluable: either its apex is not a largest "
           "common subtree, or its minor images interleave (a minor span of "
           "a largest apex can still fail to glue)";
  return "); the span's apex is not a largest common subtree";
}

}  // namespace

CospanResult sum(const SpanResult& s, bool debug_checks) {
  QuotientGraph q = join(s, debug_checks);
  PruneOutcome pr = prune_subsumed_arcs(q);

  if (debug_checks) {
    auto oracle = subsumed_arcs_declarative(q);
    if (oracle != pr.removed)
      fail(Errc::InternalError,
           "in-degree-2 scan disagrees with the declarative pruner");
    for (const auto& [v, w] : pr.removed) {
      if (!q.classes[v].merged() || !q.classes[w].merged())
        fail(Errc::InvalidSpan, "a subsumed arc touches an unmerged class; the "
                                "apex is not a largest common subtree");
    }
  }

  std::vector<std::string> names;
  names.reserve(q.classes.size());
  for (const auto& cl : q.classes) names.push_back(cl.name);
  std::vector<std::pair<std::string, std::string>> arcs;
  arcs.reserve(pr.arcs.size());
  for (const auto& [a, b] : pr.arcs) arcs.emplace_back(names[a], names[b]);

  RootedTree sigma;
  try {
    sigma = RootedTree::validate(names, arcs);
  } catch (const Error& e) {
    fail(Errc::NotATreeAfterPruning,
         std::string("the pruned quotient is not a tree (") + e.what() +
             glue_failure_diagnosis(s.kind()));
  }

  const RootedTree& T1 = s.left_target();
  const RootedTree& T2 = s.right_target();
  if (sigma.size() != T1.size() + T2.size() - s.apex().size())
    fail(Errc::InternalError, "sum size law violated");

  NodeMapping l1(T1.size()), l2(T2.size());
  for (NodeIndex i = 0; i < T1.size(); ++i)
    l1[i] = sigma.index_of(q.classes[q.left_class[i]].name);
  for (NodeIndex j = 0; j < T2.size(); ++j)
    l2[j] = sigma.index_of(q.classes[q.right_class[j]].name);

  for (NodeIndex c = 0; c < s.apex().size(); ++c) {
    if (l1[s.left(c)] != l2[s.right(c)])
      fail(Errc::InternalError, "sum triangle equation violated");
  }

  try {
    Embedding e1(T1, sigma, std::move(l1), s.kind());
    Embedding e2(T2, sigma, std::move(l2), s.kind());
    return CospanResult(std::move(e1), std::move(e2));
  } catch (const Error& e) {
    fail(Errc::InvalidSpan,
         std::string("an embedding into the sum failed to verify (") + e.what() +
             glue_failure_diagnosis(s.kind()));
  }
}

Embedding pushout_mediator(const SpanResult& s, const CospanResult& sigma,
                           const Embedding& h1, const Embedding& h2) {
  if (h1.kind() != s.kind() || h2.kind() != s.kind() || sigma.kind() != s.kind())
    fail(Errc::KindMismatch, "mediator request mixes embedding kinds");
  if (!(h1.source() == s.left_target()) || !(h2.source() == s.right_target()))
    fail(Errc::TreeMismatch, "cocone embeddings do not start at the span's targets");
  if (!(h1.target() == h2.target()))
    fail(Errc::TreeMismatch, "cocone embeddings do not share a target");
  if (!(sigma.left_source() == s.left_target()) ||
      !(sigma.right_source() == s.right_target()))
    fail(Errc::TreeMismatch, "candidate sum does not belong to this span");

  const RootedTree& mu = s.apex();
  for (NodeIndex c = 0; c < mu.size(); ++c) {
    if (h1(s.left(c)) != h2(s.right(c)))
      fail(Errc::NonCommutingProbe,
           "cocone does not commute at apex node '" + mu.label(c) + "'");
  }

  const RootedTree& S = sigma.apex();
  NodeMapping med(S.size(), -1);
  const RootedTree& T1 = s.left_target();
  const RootedTree& T2 = s.right_target();
  for (NodeIndex a = 0; a < T1.size(); ++a) med[sigma.left(a)] = h1(a);
  for (NodeIndex b = 0; b < T2.size(); ++b) {
    NodeIndex j = sigma.right(b);
    if (med[j] != -1 && med[j] != h2(b))
      fail(Errc::InvalidCospan,
           "candidate sum merges nodes the span does not identify");
    med[j] = h2(b);
  }
  for (NodeIndex j = 0; j < S.size(); ++j) {
    if (med[j] == -1)
      fail(Errc::InvalidCospan, "node '" + S.label(j) +
                                    "' of the candidate sum is hit by neither side");
  }
  try {
    return Embedding(S, h1.target(), std::move(med), s.kind());
  } catch (const Error& e) {
    // Iso/Homeo/Topo sums are pushouts, so a non-verifying forced mediator
    // is a bug there. Minor sums are not always pushouts: the classwise
    // mapping is still forced, but it can legitimately fail to embed.
    if (s.kind() == EmbeddingKind::Minor)
      fail(Errc::InvalidCospan,
           std::string("the forced mediator is not a minor embedding (") +
               e.what() + "); this minor-kind sum is not a pushout");
    fail(Errc::InternalError,
         std::string("pushout mediator failed to verify (") + e.what() +
             "); this is a bug");
  }
}

}  // namespace treespan
