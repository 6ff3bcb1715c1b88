#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treespan/pullback.hpp"

namespace treespan {

/// Two embeddings of one shared apex tree into two targets:
/// left : Tmu -> T1, right : Tmu -> T2.
struct SpanResult {
  Embedding left, right;

  /// InvalidSpan when the sources differ, KindMismatch when the kinds do.
  SpanResult(Embedding m1, Embedding m2);

  const RootedTree& apex() const { return left.source(); }
  const RootedTree& left_target() const { return left.target(); }
  const RootedTree& right_target() const { return right.target(); }
  EmbeddingKind kind() const { return left.kind(); }
};

/// One node of the quotient graph: a class of the disjoint sum under the
/// apex identifications. A merged class {m1(x), m2(x)} is named by its T1
/// member; singletons keep their label behind an origin tag ("1:" / "2:").
struct QuotientClass {
  std::string name;
  std::optional<std::string> in_left;   // T1 label
  std::optional<std::string> in_right;  // T2 label
  bool merged() const { return in_left.has_value() && in_right.has_value(); }
};

/// Quotient of the disjoint sum of T1 and T2 by the apex identifications,
/// before any pruning. Arcs carry set semantics, so parallel arcs collapse.
/// Classes are sorted by name; arcs are sorted index pairs.
struct QuotientGraph {
  std::vector<QuotientClass> classes;
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> left_class;   // T1 node index -> class index
  std::vector<int> right_class;  // T2 node index -> class index

  std::vector<int> in_degree() const;
};

/// θ-quotient of a span. Structural facts that need no precondition are
/// always enforced (in-degree <= 2, and 2 only on merged classes). With
/// `debug_checks`, also asserts the facts that hold whenever the apex is a
/// largest common subtree: the apex root lands on a root on at least one
/// side and the quotient is acyclic; violations raise InvalidSpan.
QuotientGraph join(const SpanResult& s, bool debug_checks = false);

struct PruneOutcome {
  std::vector<std::pair<int, int>> arcs;     // surviving, sorted
  std::vector<std::pair<int, int>> removed;  // pruned, sorted
};

/// Removes every arc (v, w) subsumed by a longer path from v to w. Runs
/// the in-degree-2 scan: for each class with two incoming arcs, the two
/// incoming chains are walked upward in lock-step until one source is
/// found on the other's chain, and that source's direct arc is dropped.
/// Decisions read the unpruned graph (exactly like the declarative
/// definition), so any scan order yields the same arc set; `scan_order`, a
/// permutation of class indices, only reorders the work.
PruneOutcome prune_subsumed_arcs(const QuotientGraph& q);
PruneOutcome prune_subsumed_arcs(const QuotientGraph& q,
                                 const std::vector<int>& scan_order);

/// Oracle form of the same definition: (v, w) is subsumed iff w stays
/// reachable from v without the direct arc. Quadratic; for cross-checks.
std::vector<std::pair<int, int>> subsumed_arcs_declarative(const QuotientGraph& q);

/// join, prune, validate: the sum tree T_σ with its two verified
/// embeddings. The node count always lands at |T1| + |T2| - |Tmu|.
/// NotATreeAfterPruning (quotient is no tree) and InvalidSpan (an
/// embedding fails to verify) signal that the span is not gluable. At
/// isomorphic, homeomorphic, and topological kinds that convicts the
/// apex: it was not a largest common subtree. At minor kind it does not;
/// a minor span of a genuinely largest apex can still refuse to glue
/// when its two images interleave. `debug_checks` additionally
/// cross-checks the scan against the declarative pruner and the
/// join-time assertions.
CospanResult sum(const SpanResult& s, bool debug_checks = false);

/// Mediating embedding out of the sum for a commuting cocone
/// (h1 : T1 -> X, h2 : T2 -> X with h1∘m1 = h2∘m2; NonCommutingProbe
/// otherwise). `sigma` must be the sum of `s`; a cocone that does not
/// factor through it raises InvalidCospan. A mediator that fails to
/// verify raises InternalError at isomorphic, homeomorphic, and
/// topological kinds, where sums are genuine pushouts and that cannot
/// happen; at minor kind, where a sum need not be a pushout, it raises
/// InvalidCospan instead.
Embedding pushout_mediator(const SpanResult& s, const CospanResult& sigma,
                           const Embedding& h1, const Embedding& h2);

}  // namespace treespan
