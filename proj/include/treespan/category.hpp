#pragma once

#include <optional>
#include <string>

#include "treespan/pullback.hpp"
#include "treespan/pushout.hpp"

namespace treespan {

enum class UniversalVerdict { VerifiedUpToBound, CounterexampleFound };
enum class FailureMode { NoMediator, MultipleMediators, MediatorNotEmbedding };

const char* verdict_name(UniversalVerdict v);
const char* failure_mode_name(FailureMode m);

/// A replayable witness that a candidate fails a universal property: the
/// probe tree together with the commuting pair of probe embeddings for which
/// no unique mediating embedding into/out of the candidate exists.
struct Counterexample {
  RootedTree probe;
  Embedding left;   // pullback: probe -> T1;  pushout: T1 -> probe
  Embedding right;  // pullback: probe -> T2;  pushout: T2 -> probe
  FailureMode mode = FailureMode::NoMediator;
  std::string detail;
};

struct UniversalReport {
  UniversalVerdict verdict = UniversalVerdict::VerifiedUpToBound;
  int bound = 0;
  long probes_checked = 0;
  std::optional<Counterexample> counterexample;
  /// Caveats about the probe universe (e.g. probes are trees, so multi-rooted
  /// counterexamples are witnessed by their smallest tree stand-ins).
  std::string note;
  std::string summary() const;
};

/// View the intersection construction's inclusions as a candidate cone.
SpanResult as_cone(const IntersectionResult& r);

/// Bounded pullback test: enumerate every tree X of at most `bound` nodes and
/// every commuting pair of kind-embeddings (g1': X -> T1, g2': X -> T2) with
/// f1(g1'(x)) = f2(g2'(x)); each such probe must factor uniquely through the
/// candidate cone. The first failing probe (smallest size, then canonical
/// encoding, then lexicographic maps) is reported. Requires bound <=
/// max_bound (BoundExceeded); a non-commuting candidate is rejected with
/// InvalidSpan.
UniversalReport check_pullback(const CospanResult& c, const SpanResult& candidate,
                               int bound, int max_bound = 6);
UniversalReport check_pullback(const CospanResult& c,
                               const IntersectionResult& candidate, int bound,
                               int max_bound = 6);

/// Bounded pushout test, symmetric to check_pullback: probes are commuting
/// cocones (g1': T1 -> X, g2': T2 -> X) with g1'(m1(c)) = g2'(m2(c)), each of
/// which must factor uniquely through the candidate cospan. A non-commuting
/// candidate is rejected with InvalidCospan.
UniversalReport check_pushout(const SpanResult& s, const CospanResult& candidate,
                              int bound, int max_bound = 6);

}  // namespace treespan
