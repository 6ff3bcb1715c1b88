#pragma once

#include <stdexcept>
#include <string>

namespace treespan {

/// Every failure the library reports, as a stable code plus a message.
/// Codes group by the operation family that raises them; see errc_name().
enum class Errc {
  // tree validation
  MultipleRoots,
  NodeInDegreeExceeded,
  CycleDetected,
  UnreachableNode,
  DanglingArc,
  UnknownNode,
  InvalidLabel,
  InvalidPath,
  OriginMismatch,

  // embeddings
  PartialMapping,
  ValueOutsideTarget,
  TreeMismatch,
  KindMismatch,
  CompositionMismatch,
  CompositionNotClosed,
  EmbeddingInvalid,
  BoundExceeded,

  // pullback / pushout
  InvalidCospan,
  InvalidSpan,
  NonCommutingProbe,
  MinorForestUnsupported,
  NotATreeAfterPruning,
  NotSmallestSupertree,

  // file formats
  SyntaxError,
  ReservedLabel,
  DuplicateSource,

  // invariant violations that indicate a bug, never bad input
  InternalError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace treespan
