#include "treespan/embedding.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace treespan {

const char* kind_name(EmbeddingKind k) {
  switch (k) {
    case EmbeddingKind::Minor: return "minor";
    case EmbeddingKind::Topological: return "topological";
    case EmbeddingKind::Homeomorphic: return "homeomorphic";
    case EmbeddingKind::Isomorphic: return "isomorphic";
  }
  return "?";
}

std::optional<EmbeddingKind> parse_kind(const std::string& s) {
  if (s == "minor") return EmbeddingKind::Minor;
  if (s == "topological" || s == "topo") return EmbeddingKind::Topological;
  if (s == "homeomorphic" || s == "homeo") return EmbeddingKind::Homeomorphic;
  if (s == "isomorphic" || s == "iso") return EmbeddingKind::Isomorphic;
  return std::nullopt;
}

std::optional<EmbeddingKind> next_stronger(EmbeddingKind k) {
  switch (k) {
    case EmbeddingKind::Minor: return EmbeddingKind::Topological;
    case EmbeddingKind::Topological: return EmbeddingKind::Homeomorphic;
    case EmbeddingKind::Homeomorphic: return EmbeddingKind::Isomorphic;
    case EmbeddingKind::Isomorphic: return std::nullopt;
  }
  return std::nullopt;
}

bool is_at_least(EmbeddingKind k, EmbeddingKind weaker) {
  return static_cast<int>(k) >= static_cast<int>(weaker);
}

const char* violation_name(ViolationKind v) {
  switch (v) {
    case ViolationKind::NotInjective: return "NotInjective";
    case ViolationKind::NoPathForArc: return "NoPathForArc";
    case ViolationKind::IntermediateInImage: return "IntermediateInImage";
    case ViolationKind::PathNotElementary: return "PathNotElementary";
    case ViolationKind::PathNotArc: return "PathNotArc";
    case ViolationKind::SiblingPathsNotDivergent: return "SiblingPathsNotDivergent";
  }
  return "?";
}

std::string Violation::message() const {
  auto arc_text = [](const std::pair<std::string, std::string>& a) {
    return "(" + a.first + ", " + a.second + ")";
  };
  switch (kind) {
    case ViolationKind::NotInjective:
      return "nodes '" + arc->first + "' and '" + arc->second + "' both map to '" +
             *node + "'";
    case ViolationKind::NoPathForArc:
      return "arc " + arc_text(*arc) + ": no target path between the images";
    case ViolationKind::IntermediateInImage:
      return "arc " + arc_text(*arc) + ": target path contains image node '" + *node + "'";
    case ViolationKind::PathNotElementary:
      return "arc " + arc_text(*arc) + ": intermediate node '" + *node +
             "' does not have out-degree 1";
    case ViolationKind::PathNotArc:
      return "arc " + arc_text(*arc) + ": image pair is not a target arc";
    case ViolationKind::SiblingPathsNotDivergent:
      return "arcs " + arc_text(*arc) + " and " + arc_text(*sibling_arc) +
             ": image paths share node '" + *node + "' after the origin";
  }
  return "";
}

namespace {

Violation make_violation(ViolationKind kind,
                         std::optional<std::pair<std::string, std::string>> arc,
                         std::optional<std::pair<std::string, std::string>> sibling,
                         std::optional<std::string> node) {
  Violation v;
  v.kind = kind;
  v.arc = std::move(arc);
  v.sibling_arc = std::move(sibling);
  v.node = std::move(node);
  return v;
}

}  // namespace

VerifyReport verify_embedding(const RootedTree& s, const RootedTree& t,
                              const NodeMapping& m, EmbeddingKind k) {
  if (static_cast<int>(m.size()) != s.size())
    fail(Errc::PartialMapping, "mapping covers " + std::to_string(m.size()) + " of " +
                                   std::to_string(s.size()) + " source nodes");
  for (NodeIndex i = 0; i < s.size(); ++i) {
    if (m[i] < 0)
      fail(Errc::PartialMapping, "source node '" + s.label(i) + "' is unassigned");
    if (m[i] >= t.size())
      fail(Errc::ValueOutsideTarget,
           "source node '" + s.label(i) + "' maps outside the target");
  }

  VerifyReport rep;

  std::vector<NodeIndex> image_of(t.size(), -1);
  for (NodeIndex i = 0; i < s.size(); ++i) {
    if (image_of[m[i]] != -1) {
      rep.violation = make_violation(
          ViolationKind::NotInjective,
          std::make_pair(s.label(image_of[m[i]]), s.label(i)), std::nullopt,
          t.label(m[i]));
      return rep;
    }
    image_of[m[i]] = i;
  }

  for (const auto& [a, b] : s.arcs()) {
    auto arc_labels = std::make_pair(s.label(a), s.label(b));
    auto p = path_between(t, m[a], m[b]);
    if (!p || p->size() < 2) {
      rep.violation = make_violation(ViolationKind::NoPathForArc, arc_labels,
                                     std::nullopt, std::nullopt);
      return rep;
    }
    if (k == EmbeddingKind::Isomorphic && p->size() != 2) {
      rep.violation = make_violation(ViolationKind::PathNotArc, arc_labels,
                                     std::nullopt, std::nullopt);
      return rep;
    }
    for (std::size_t i = 1; i + 1 < p->size(); ++i) {
      if (image_of[(*p)[i]] != -1) {
        rep.violation = make_violation(ViolationKind::IntermediateInImage, arc_labels,
                                       std::nullopt, t.label((*p)[i]));
        return rep;
      }
    }
    if (k == EmbeddingKind::Homeomorphic) {
      for (std::size_t i = 1; i + 1 < p->size(); ++i) {
        if (t.out_degree((*p)[i]) != 1) {
          rep.violation = make_violation(ViolationKind::PathNotElementary, arc_labels,
                                         std::nullopt, t.label((*p)[i]));
          return rep;
        }
      }
    }
  }

  if (k == EmbeddingKind::Topological) {
    for (NodeIndex a = 0; a < s.size(); ++a) {
      const auto& ch = s.children(a);
      if (ch.size() < 2) continue;
      // first step of the image path = the child of m(a) the path enters
      std::unordered_map<NodeIndex, NodeIndex> step_to_child;
      for (NodeIndex c : ch) {
        NodeIndex v = m[c];
        while (t.depth(v) > t.depth(m[a]) + 1) v = t.parent(v);
        auto [it, fresh] = step_to_child.try_emplace(v, c);
        if (!fresh) {
          rep.violation = make_violation(
              ViolationKind::SiblingPathsNotDivergent,
              std::make_pair(s.label(a), s.label(it->second)),
              std::make_pair(s.label(a), s.label(c)), t.label(v));
          return rep;
        }
      }
    }
  }

  rep.ok = true;
  return rep;
}

std::optional<EmbeddingKind> classify_embedding(const RootedTree& s, const RootedTree& t,
                                                const NodeMapping& m) {
  for (EmbeddingKind k : {EmbeddingKind::Isomorphic, EmbeddingKind::Homeomorphic,
                          EmbeddingKind::Topological, EmbeddingKind::Minor}) {
    if (verify_embedding(s, t, m, k).ok) return k;
  }
  return std::nullopt;
}

NodeMapping resolve_mapping(const RootedTree& s, const RootedTree& t,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
  NodeMapping m(s.size(), -1);
  for (const auto& [src, dst] : pairs) {
    NodeIndex i = s.index_of(src);
    if (!t.has_node(dst))
      fail(Errc::ValueOutsideTarget, "'" + src + "' maps to '" + dst +
                                         "', which is not a target node");
    if (m[i] != -1)
      fail(Errc::DuplicateSource, "source node '" + src + "' is mapped twice");
    m[i] = t.index_of(dst);
  }
  for (NodeIndex i = 0; i < s.size(); ++i)
    if (m[i] == -1)
      fail(Errc::PartialMapping, "source node '" + s.label(i) + "' is unassigned");
  return m;
}

Embedding::Embedding() : kind_(EmbeddingKind::Minor) {}

Embedding::Embedding(RootedTree source, RootedTree target, NodeMapping map,
                     EmbeddingKind kind)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)),
      kind_(kind) {
  auto rep = verify_embedding(source_, target_, map_, kind_);
  if (!rep.ok)
    fail(Errc::EmbeddingInvalid, std::string("not a ") + kind_name(kind_) +
                                     " embedding: " + rep.violation->message());
}

Embedding Embedding::identity(const RootedTree& t, EmbeddingKind kind) {
  NodeMapping m(t.size());
  for (NodeIndex i = 0; i < t.size(); ++i) m[i] = i;
  return Embedding(t, t, std::move(m), kind);
}

std::vector<std::pair<std::string, std::string>> Embedding::label_map() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(map_.size());
  for (NodeIndex i = 0; i < source_.size(); ++i)
    out.emplace_back(source_.label(i), target_.label(map_[i]));
  return out;
}

bool Embedding::operator==(const Embedding& other) const {
  return kind_ == other.kind_ && map_ == other.map_ && source_ == other.source_ &&
         target_ == other.target_;
}

Embedding compose(const Embedding& g, const Embedding& f) {
  if (f.kind() != g.kind())
    fail(Errc::KindMismatch, std::string("cannot compose a ") + kind_name(g.kind()) +
                                 " embedding after a " + kind_name(f.kind()) + " one");
  if (!(f.target() == g.source()))
    fail(Errc::TreeMismatch, "inner tree of the composition does not match");
  NodeMapping comp(f.source().size());
  for (NodeIndex i = 0; i < f.source().size(); ++i) comp[i] = g.map()[f.map()[i]];
  auto rep = verify_embedding(f.source(), g.target(), comp, f.kind());
  if (!rep.ok)
    fail(Errc::CompositionNotClosed, std::string("composite is not a ") +
                                         kind_name(f.kind()) + " embedding: " +
                                         rep.violation->message());
  return Embedding(f.source(), g.target(), std::move(comp), f.kind());
}

Embedding left_factor(const NodeMapping& f, const Embedding& g, const Embedding& gf) {
  if (g.kind() != gf.kind())
    fail(Errc::KindMismatch, "factor kinds disagree");
  if (!(g.target() == gf.target()))
    fail(Errc::TreeMismatch, "g and g∘f do not share a target");
  if (static_cast<int>(f.size()) != gf.source().size())
    fail(Errc::PartialMapping, "candidate factor does not cover the source");
  for (NodeIndex i = 0; i < gf.source().size(); ++i) {
    if (f[i] < 0 || f[i] >= g.source().size())
      fail(Errc::ValueOutsideTarget, "candidate factor maps outside g's source");
    if (g.map()[f[i]] != gf.map()[i])
      fail(Errc::CompositionMismatch, "g∘f differs from the given composite at '" +
                                          gf.source().label(i) + "'");
  }
  try {
    return Embedding(gf.source(), g.source(), f, g.kind());
  } catch (const Error& e) {
    // Factoring through an embedding preserves the kind; reaching this
    // point means a checker bug, not bad input.
    fail(Errc::InternalError, std::string("left factor failed to verify: ") + e.what());
  }
}

namespace {

void subtree_stats(const RootedTree& t, std::vector<int>& sub, std::vector<int>& ht) {
  const int n = t.size();
  sub.assign(n, 1);
  ht.assign(n, 0);
  std::vector<std::vector<NodeIndex>> by_depth;
  for (NodeIndex i = 0; i < n; ++i) {
    auto d = static_cast<std::size_t>(t.depth(i));
    if (by_depth.size() <= d) by_depth.resize(d + 1);
    by_depth[d].push_back(i);
  }
  for (auto it = by_depth.rbegin(); it != by_depth.rend(); ++it) {
    for (NodeIndex v : *it) {
      for (NodeIndex c : t.children(v)) {
        sub[v] += sub[c];
        ht[v] = std::max(ht[v], ht[c] + 1);
      }
    }
  }
}

struct EmbeddingSearch {
  const RootedTree& s;
  const RootedTree& t;
  EmbeddingKind k;
  std::size_t limit;
  std::vector<Embedding> found;
  NodeMapping m;
  std::vector<char> used;
  std::vector<int> ssub, sht, tsub, tht;
  bool degree_bound;
  bool done = false;

  EmbeddingSearch(const RootedTree& s_, const RootedTree& t_, EmbeddingKind k_,
                  std::size_t limit_)
      : s(s_), t(t_), k(k_), limit(limit_), m(s_.size(), -1), used(t_.size(), 0),
        degree_bound(k_ != EmbeddingKind::Minor) {
    subtree_stats(s, ssub, sht);
    subtree_stats(t, tsub, tht);
  }

  bool feasible(NodeIndex v, NodeIndex u) const {
    if (tsub[u] < ssub[v] || tht[u] < sht[v]) return false;
    if (degree_bound && t.out_degree(u) < s.out_degree(v)) return false;
    NodeIndex p = s.parent(v);
    if (p >= 0 && m[p] >= 0) {
      if (k == EmbeddingKind::Isomorphic) {
        if (t.parent(u) != m[p]) return false;
      } else if (!t.is_proper_ancestor(m[p], u)) {
        return false;
      }
    }
    for (NodeIndex c : s.children(v)) {
      if (m[c] < 0) continue;
      if (k == EmbeddingKind::Isomorphic) {
        if (t.parent(m[c]) != u) return false;
      } else if (!t.is_proper_ancestor(u, m[c])) {
        return false;
      }
    }
    return true;
  }

  void rec(NodeIndex v) {
    if (done) return;
    if (v == s.size()) {
      if (verify_embedding(s, t, m, k).ok) {
        found.emplace_back(s, t, m, k);
        if (found.size() >= limit) done = true;
      }
      return;
    }
    if (m[v] >= 0) {
      rec(v + 1);
      return;
    }
    for (NodeIndex u = 0; u < t.size(); ++u) {
      if (used[u] || !feasible(v, u)) continue;
      m[v] = u;
      used[u] = 1;
      rec(v + 1);
      m[v] = -1;
      used[u] = 0;
      if (done) return;
    }
  }

  /// false when the pins alone already rule out every extension
  bool apply_pins(const std::vector<std::pair<NodeIndex, NodeIndex>>& pinned) {
    for (const auto& [v, u] : pinned) {
      if (v < 0 || v >= s.size() || u < 0 || u >= t.size())
        fail(Errc::UnknownNode, "pinned assignment out of range");
      if (m[v] == u) continue;
      if (m[v] != -1 || used[u]) return false;
      m[v] = u;
      used[u] = 1;
    }
    for (const auto& [a, b] : s.arcs()) {
      if (m[a] < 0 || m[b] < 0) continue;
      if (k == EmbeddingKind::Isomorphic) {
        if (t.parent(m[b]) != m[a]) return false;
      } else if (!t.is_proper_ancestor(m[a], m[b])) {
        return false;
      }
    }
    return true;
  }
};

std::vector<Embedding> run_search(const RootedTree& s, const RootedTree& t,
                                  EmbeddingKind k, std::size_t limit,
                                  const std::vector<std::pair<NodeIndex, NodeIndex>>& pinned) {
  if (limit == 0) limit = std::numeric_limits<std::size_t>::max();
  EmbeddingSearch search(s, t, k, limit);
  if (!search.apply_pins(pinned)) return {};
  search.rec(0);
  return std::move(search.found);
}

}  // namespace

std::vector<Embedding> enumerate_embeddings(
    const RootedTree& s, const RootedTree& t, EmbeddingKind k, std::size_t limit,
    int source_bound, const std::vector<std::pair<NodeIndex, NodeIndex>>& pinned) {
  if (s.size() > source_bound)
    fail(Errc::BoundExceeded, "source has " + std::to_string(s.size()) +
                                  " nodes, enumeration bound is " +
                                  std::to_string(source_bound));
  return run_search(s, t, k, limit, pinned);
}

std::optional<Embedding> first_embedding(
    const RootedTree& s, const RootedTree& t, EmbeddingKind k,
    const std::vector<std::pair<NodeIndex, NodeIndex>>& pinned) {
  auto r = run_search(s, t, k, 1, pinned);
  if (r.empty()) return std::nullopt;
  return std::move(r.front());
}

}  // namespace treespan
