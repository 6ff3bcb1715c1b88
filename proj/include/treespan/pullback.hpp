#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treespan/embedding.hpp"

namespace treespan {

/// Two embeddings of the same kind into one shared apex tree:
/// left : T1 -> T, right : T2 -> T.
struct CospanResult {
  Embedding left, right;

  /// InvalidCospan when the targets differ, KindMismatch when the kinds do.
  CospanResult(Embedding f1, Embedding f2);

  const RootedTree& apex() const { return left.target(); }
  const RootedTree& left_source() const { return left.source(); }
  const RootedTree& right_source() const { return right.source(); }
  EmbeddingKind kind() const { return left.kind(); }
};

enum class IntersectionShape { Tree, Forest };

/// Intersection of a cospan: the graph on the common image plus its tree
/// form and inclusion embeddings. Tree nodes are named by their T1-side
/// label; provenance() lists the (T1, T2) preimage labels per node.
struct IntersectionResult {
  /// Common image in apex coordinates, ascending.
  std::vector<std::string> graph_nodes;
  /// Arcs of the intersection graph in apex coordinates, sorted.
  std::vector<std::pair<std::string, std::string>> graph_arcs;
  IntersectionShape shape = IntersectionShape::Tree;
  /// T_p itself, or its fresh-root extension when shape == Forest.
  RootedTree tree;
  std::optional<std::string> fresh_root;
  Embedding left_inclusion;   // tree -> T1
  Embedding right_inclusion;  // tree -> T2

  struct Provenance {
    std::string node, in_left, in_right;
  };
  std::vector<Provenance> provenance() const;
};

/// Builds the intersection. An arc joins a to b exactly when both source
/// trees have a path between the corresponding preimages with no
/// intermediate node mapping into the common image; equivalently, the
/// parent of b is its nearest common-image proper ancestor on both sides
/// simultaneously, which a single marked walk per tree finds in linear
/// time. Isomorphic, homeomorphic and topological cospans always yield a
/// tree whose inclusions verify at the cospan's kind; a minor cospan may
/// yield a forest, which is returned extended by a fresh root "⊥" whose
/// inclusions map it to each source's root and verify as minor embeddings.
IntersectionResult intersection(const CospanResult& c);

/// Mediating embedding into the intersection for a commuting probe
/// (g1 : X -> T1, g2 : X -> T2 with f1∘g1 = f2∘g2); NonCommutingProbe
/// otherwise. Minor cospans whose intersection is a forest have no
/// pullback to mediate into: MinorForestUnsupported.
Embedding pullback_mediator(const CospanResult& c, const IntersectionResult& r,
                            const Embedding& g1, const Embedding& g2);

}  // namespace treespan
