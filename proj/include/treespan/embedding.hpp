#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treespan/tree.hpp"

namespace treespan {

/// The four embedding kinds, ordered by increasing strength. Every kind
/// implies all weaker kinds: isomorphic > homeomorphic > topological > minor.
enum class EmbeddingKind {
  Minor = 0,
  Topological = 1,
  Homeomorphic = 2,
  Isomorphic = 3,
};

const char* kind_name(EmbeddingKind k);
/// Parses "minor" / "topological" ("topo") / "homeomorphic" ("homeo") /
/// "isomorphic" ("iso").
std::optional<EmbeddingKind> parse_kind(const std::string& s);
std::optional<EmbeddingKind> next_stronger(EmbeddingKind k);
bool is_at_least(EmbeddingKind k, EmbeddingKind weaker);

/// Total source-index -> target-index assignment. Entry -1 means unassigned
/// (rejected by verification with PartialMapping).
using NodeMapping = std::vector<NodeIndex>;

enum class ViolationKind {
  NotInjective,
  NoPathForArc,
  IntermediateInImage,
  PathNotElementary,
  PathNotArc,
  SiblingPathsNotDivergent,
};

const char* violation_name(ViolationKind v);

/// Names the first failing arc/condition in deterministic order: injectivity
/// over sorted nodes, then per-arc conditions over sorted arcs, then sibling
/// divergence over sorted arc pairs.
struct Violation {
  ViolationKind kind;
  /// The source arc at fault; for NotInjective, the two source nodes that
  /// collide.
  std::optional<std::pair<std::string, std::string>> arc;
  /// Second arc of a non-divergent sibling pair.
  std::optional<std::pair<std::string, std::string>> sibling_arc;
  /// Offending target node (image intermediate, non-unary intermediate,
  /// collision value, or shared first step).
  std::optional<std::string> node;

  std::string message() const;
};

struct VerifyReport {
  bool ok = false;
  std::optional<Violation> violation;
  explicit operator bool() const { return ok; }
};

/// Checks the defining conditions of kind k for the node mapping m. The
/// mapping must be total with values inside t (PartialMapping /
/// ValueOutsideTarget otherwise); the verdict itself is returned, never
/// thrown. The empty mapping from the empty tree is valid at every kind.
VerifyReport verify_embedding(const RootedTree& s, const RootedTree& t,
                              const NodeMapping& m, EmbeddingKind k);

/// Strongest kind at which m verifies, or nullopt when m is not even a
/// minor embedding.
std::optional<EmbeddingKind> classify_embedding(const RootedTree& s, const RootedTree& t,
                                                const NodeMapping& m);

/// Resolves a label-level mapping against concrete trees. Every source node
/// must be assigned exactly once (PartialMapping), every value must name a
/// target node (ValueOutsideTarget), and mapped sources must exist
/// (UnknownNode).
NodeMapping resolve_mapping(const RootedTree& s, const RootedTree& t,
                            const std::vector<std::pair<std::string, std::string>>& pairs);

/// A verified embedding of a fixed kind between two immutable trees.
/// Construction re-checks the defining conditions, so holding an Embedding
/// is proof the conditions held at that kind.
class Embedding {
public:
  /// The empty embedding between empty trees (valid at every kind).
  Embedding();

  /// Throws EmbeddingInvalid with the violation text when verification fails.
  Embedding(RootedTree source, RootedTree target, NodeMapping map, EmbeddingKind kind);

  static Embedding identity(const RootedTree& t, EmbeddingKind kind);

  const RootedTree& source() const { return source_; }
  const RootedTree& target() const { return target_; }
  const NodeMapping& map() const { return map_; }
  EmbeddingKind kind() const { return kind_; }

  NodeIndex operator()(NodeIndex i) const { return map_[i]; }

  /// (source label, target label) pairs in ascending source-label order.
  std::vector<std::pair<std::string, std::string>> label_map() const;

  /// Same trees, same assignment; the tagged kind participates too.
  bool operator==(const Embedding& other) const;

private:
  RootedTree source_, target_;
  NodeMapping map_;
  EmbeddingKind kind_;
};

/// g after f. Both must share the middle tree (TreeMismatch) and the kind
/// (KindMismatch). The composite is re-verified: minor, topological and
/// isomorphic composites always pass, but homeomorphic composites can
/// genuinely fail (an elementary path may pass through a node whose image
/// gains siblings further down), reported as CompositionNotClosed.
Embedding compose(const Embedding& g, const Embedding& f);

/// Recovers f from g and g∘f: given that g and gf are embeddings of the
/// same kind and g∘f = gf pointwise (CompositionMismatch otherwise), f is
/// automatically an embedding of that kind.
Embedding left_factor(const NodeMapping& f, const Embedding& g, const Embedding& gf);

/// All embeddings of kind k from s into t, lexicographic by the tuple of
/// target indices over sources in label order, capped at `limit`.
/// pre: s.size() <= source_bound (BoundExceeded), default 8.
/// `pinned` fixes source->target assignments before the search.
std::vector<Embedding> enumerate_embeddings(
    const RootedTree& s, const RootedTree& t, EmbeddingKind k, std::size_t limit,
    int source_bound = 8,
    const std::vector<std::pair<NodeIndex, NodeIndex>>& pinned = {});

/// First embedding in enumeration order, without a source-size bound.
std::optional<Embedding> first_embedding(
    const RootedTree& s, const RootedTree& t, EmbeddingKind k,
    const std::vector<std::pair<NodeIndex, NodeIndex>>& pinned = {});

}  // namespace treespan
