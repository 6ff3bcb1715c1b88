#pragma once

#include <string>

#include "treespan/pullback.hpp"
#include "treespan/pushout.hpp"
#include "treespan/treegen.hpp"

namespace treespan {

/// Knobs for the brute-force searches and the conversion cross-checks.
struct SolveConfig {
  EmbeddingKind kind = EmbeddingKind::Isomorphic;
  /// Cap on brute-force work: searches refuse inputs whose exhaustive
  /// enumeration would exceed this many candidate nodes.
  int max_nodes = 8;
  /// When set, the conversions recompute the optimum by brute force and
  /// reject spans/cospans whose apex is not optimal.
  bool debug_oracle = false;
  /// Fixed tie-break policy: smaller size last (lcst) / first (scst), then
  /// least canonical encoding, then lexicographically least witness mappings.
  std::string tie_break = "encoding-then-witness";
};

/// Largest common subtree of t1 and t2 under cfg.kind, by exhaustive search
/// over canonical candidate trees in descending size. Deterministic: apex is
/// the least canonical encoding of maximum size, witnesses the
/// lexicographically least embeddings. The apex may be empty.
/// Requires min(|t1|, |t2|) <= cfg.max_nodes (else BoundExceeded).
SpanResult lcst_bruteforce(const RootedTree& t1, const RootedTree& t2,
                           const SolveConfig& cfg);

/// Smallest common supertree of t1 and t2 under cfg.kind, by exhaustive
/// search over canonical candidate trees ascending from max(|t1|, |t2|).
/// Always succeeds: merging the roots of t1 and t2 yields a common supertree
/// of size |t1|+|t2|-1, so the search space is bounded.
/// Requires |t1| + |t2| <= 2*cfg.max_nodes (else BoundExceeded).
CospanResult scst_bruteforce(const RootedTree& t1, const RootedTree& t2,
                             const SolveConfig& cfg);

/// Linear-time conversion: a largest-common-subtree span to a smallest
/// common supertree, via the quotient-and-prune sum. The optimality of the
/// input apex is the caller's obligation; with cfg.debug_oracle it is
/// re-established by brute force (InvalidSpan on failure).
CospanResult sub_to_super(const SpanResult& s, const SolveConfig& cfg = {});

/// Linear-time conversion: a smallest-common-supertree cospan to a largest
/// common subtree, by double-marking the nodes hit from both sides and
/// splicing out everything else (each surviving node is attached to its
/// nearest doubly-marked proper ancestor). The optimality of the input apex
/// is the caller's obligation; with cfg.debug_oracle it is re-established by
/// brute force (NotSmallestSupertree on failure). The same error is raised
/// when the doubly-marked part has several components, which cannot happen
/// for a genuinely smallest supertree.
SpanResult super_to_sub(const CospanResult& c, const SolveConfig& cfg = {});

}  // namespace treespan
