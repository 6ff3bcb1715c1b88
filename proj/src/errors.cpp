#include "treespan/errors.hpp"

namespace treespan {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MultipleRoots: return "MultipleRoots";
    case Errc::NodeInDegreeExceeded: return "NodeInDegreeExceeded";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::UnreachableNode: return "UnreachableNode";
    case Errc::DanglingArc: return "DanglingArc";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::OriginMismatch: return "OriginMismatch";
    case Errc::PartialMapping: return "PartialMapping";
    case Errc::ValueOutsideTarget: return "ValueOutsideTarget";
    case Errc::TreeMismatch: return "TreeMismatch";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::CompositionMismatch: return "CompositionMismatch";
    case Errc::CompositionNotClosed: return "CompositionNotClosed";
    case Errc::EmbeddingInvalid: return "EmbeddingInvalid";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::InvalidCospan: return "InvalidCospan";
    case Errc::InvalidSpan: return "InvalidSpan";
    case Errc::NonCommutingProbe: return "NonCommutingProbe";
    case Errc::MinorForestUnsupported: return "MinorForestUnsupported";
    case Errc::NotATreeAfterPruning: return "NotATreeAfterPruning";
    case Errc::NotSmallestSupertree: return "NotSmallestSupertree";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::ReservedLabel: return "ReservedLabel";
    case Errc::DuplicateSource: return "DuplicateSource";
    case Errc::InternalError: return "InternalError";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace treespan
