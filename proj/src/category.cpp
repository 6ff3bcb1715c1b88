#include "treespan/category.hpp"

#include <sstream>

#include "treespan/treegen.hpp"

namespace treespan {

const char* verdict_name(UniversalVerdict v) {
  return v == UniversalVerdict::VerifiedUpToBound ? "VerifiedUpToBound"
                                                  : "CounterexampleFound";
}

const char* failure_mode_name(FailureMode m) {
  switch (m) {
    case FailureMode::NoMediator: return "NoMediator";
    case FailureMode::MultipleMediators: return "MultipleMediators";
    case FailureMode::MediatorNotEmbedding: return "MediatorNotEmbedding";
  }
  return "?";
}

std::string UniversalReport::summary() const {
  std::ostringstream os;
  os << "verdict " << verdict_name(verdict) << " (bound " << bound
     << ", probes " << probes_checked << ")\n";
  if (counterexample) {
    os << "failure " << failure_mode_name(counterexample->mode) << ": "
       << counterexample->detail << "\n";
  }
  if (!note.empty()) os << "note " << note << "\n";
  return os.str();
}

SpanResult as_cone(const IntersectionResult& r) {
  return SpanResult(r.left_inclusion, r.right_inclusion);
}

namespace {

constexpr const char* kProbeNote =
    "probes range over rooted trees only; a refutation that classically "
    "needs a multi-rooted probe is witnessed here by its smallest tree "
    "stand-in";

void check_bound(int bound, int max_bound) {
  if (bound < 0 || bound > max_bound)
    fail(Errc::BoundExceeded, "probe bound " + std::to_string(bound) +
                                  " outside [0, " + std::to_string(max_bound) +
                                  "]");
}

}  // namespace

UniversalReport check_pullback(const CospanResult& c, const SpanResult& candidate,
                               int bound, int max_bound) {
  check_bound(bound, max_bound);
  if (candidate.kind() != c.kind())
    fail(Errc::KindMismatch, "candidate cone kind differs from the cospan's");
  if (!(candidate.left.target() == c.left_source()) ||
      !(candidate.right.target() == c.right_source()))
    fail(Errc::TreeMismatch, "candidate cone does not land in the cospan's sources");
  const RootedTree& P = candidate.apex();
  for (NodeIndex p = 0; p < P.size(); ++p) {
    if (c.left(candidate.left(p)) != c.right(candidate.right(p)))
      fail(Errc::InvalidSpan, "candidate does not commute with the cospan at "
                              "node '" + P.label(p) + "'");
  }

  const RootedTree& T1 = c.left_source();
  const RootedTree& T2 = c.right_source();
  const EmbeddingKind kind = c.kind();

  // f2 and the candidate's left leg are injective; invert them over their
  // images once.
  std::vector<NodeIndex> f1_of(T1.size()), f2_inv(c.apex().size(), -1);
  for (NodeIndex a = 0; a < T1.size(); ++a) f1_of[a] = c.left(a);
  for (NodeIndex b = 0; b < T2.size(); ++b) f2_inv[c.right(b)] = b;
  std::vector<NodeIndex> cand_left_inv(T1.size(), -1);
  for (NodeIndex p = 0; p < P.size(); ++p) cand_left_inv[candidate.left(p)] = p;

  UniversalReport report;
  report.bound = bound;
  report.note = kProbeNote;

  for (int n = 0; n <= bound; ++n) {
    for (const std::string& enc : canonical_shapes(n)) {
      RootedTree X = tree_from_encoding(enc);
      if (X.size() > T1.size() || X.size() > T2.size()) continue;
      for (const Embedding& g1e : enumerate_embeddings(X, T1, kind, 0)) {
        const NodeMapping& g1 = g1e.map();
        // the partner leg is forced pointwise by injectivity of f2
        NodeMapping g2(X.size());
        bool cone = true;
        for (NodeIndex x = 0; x < X.size() && cone; ++x) {
          NodeIndex b = f2_inv[f1_of[g1[x]]];
          if (b < 0)
            cone = false;
          else
            g2[x] = b;
        }
        if (!cone) continue;
        if (!verify_embedding(X, T2, g2, kind).ok) continue;

        ++report.probes_checked;

        // any mediator h must satisfy candidate.left(h(x)) = g1[x], so h is
        // forced pointwise; existence+uniqueness reduce to checking it
        std::optional<FailureMode> mode;
        std::string detail;
        NodeMapping h(X.size(), -1);
        for (NodeIndex x = 0; x < X.size(); ++x) {
          NodeIndex p = cand_left_inv[g1[x]];
          if (p < 0) {
            mode = FailureMode::NoMediator;
            detail = "probe node '" + X.label(x) +
                     "' lands outside the candidate's image in the left source";
            break;
          }
          if (candidate.right(p) != g2[x]) {
            mode = FailureMode::NoMediator;
            detail = "no assignment satisfies both triangles at probe node '" +
                     X.label(x) + "'";
            break;
          }
          h[x] = p;
        }
        if (!mode) {
          VerifyReport vr = verify_embedding(X, P, h, kind);
          if (!vr.ok) {
            mode = FailureMode::MediatorNotEmbedding;
            detail = "the forced mediator is not a " +
                     std::string(kind_name(kind)) + " embedding (" +
                     vr.violation->message() + ")";
          }
        }
        if (mode) {
          report.verdict = UniversalVerdict::CounterexampleFound;
          report.counterexample = Counterexample{
              X, g1e, Embedding(X, T2, g2, kind), *mode, detail};
          return report;
        }
      }
    }
  }
  return report;
}

UniversalReport check_pullback(const CospanResult& c,
                               const IntersectionResult& candidate, int bound,
                               int max_bound) {
  return check_pullback(c, as_cone(candidate), bound, max_bound);
}

UniversalReport check_pushout(const SpanResult& s, const CospanResult& candidate,
                              int bound, int max_bound) {
  check_bound(bound, max_bound);
  if (candidate.kind() != s.kind())
    fail(Errc::KindMismatch, "candidate cocone kind differs from the span's");
  if (!(candidate.left_source() == s.left_target()) ||
      !(candidate.right_source() == s.right_target()))
    fail(Errc::TreeMismatch,
         "candidate cocone does not start at the span's targets");
  const RootedTree& mu = s.apex();
  for (NodeIndex m = 0; m < mu.size(); ++m) {
    if (candidate.left(s.left(m)) != candidate.right(s.right(m)))
      fail(Errc::InvalidCospan, "candidate does not commute with the span at "
                                "apex node '" + mu.label(m) + "'");
  }

  const RootedTree& T1 = s.left_target();
  const RootedTree& T2 = s.right_target();
  const RootedTree& S = candidate.apex();
  const EmbeddingKind kind = s.kind();

  UniversalReport report;
  report.bound = bound;
  report.note = kProbeNote;

  for (int n = 0; n <= bound; ++n) {
    for (const std::string& enc : canonical_shapes(n)) {
      RootedTree X = tree_from_encoding(enc);
      if (T1.size() > X.size() || T2.size() > X.size()) continue;
      for (const Embedding& g1e : enumerate_embeddings(T1, X, kind, 0)) {
        const NodeMapping& g1 = g1e.map();
        // commutation pins the partner leg on the apex image only
        std::vector<std::pair<NodeIndex, NodeIndex>> cocone_pins;
        for (NodeIndex m = 0; m < mu.size(); ++m)
          cocone_pins.emplace_back(s.right(m), g1[s.left(m)]);
        for (const Embedding& g2e :
             enumerate_embeddings(T2, X, kind, 0, 8, cocone_pins)) {
          const NodeMapping& g2 = g2e.map();
          ++report.probes_checked;

          // triangles force the mediator wherever the candidate is covered
          std::optional<FailureMode> mode;
          std::string detail;
          NodeMapping pin(S.size(), -1);
          for (NodeIndex a = 0; a < T1.size() && !mode; ++a) {
            NodeIndex j = candidate.left(a);
            if (pin[j] >= 0 && pin[j] != g1[a]) {
              mode = FailureMode::NoMediator;
              detail = "the two triangles force different values on sum node '" +
                       S.label(j) + "'";
            }
            pin[j] = g1[a];
          }
          for (NodeIndex b = 0; b < T2.size() && !mode; ++b) {
            NodeIndex j = candidate.right(b);
            if (pin[j] >= 0 && pin[j] != g2[b]) {
              mode = FailureMode::NoMediator;
              detail = "the two triangles force different values on sum node '" +
                       S.label(j) + "'";
            }
            pin[j] = g2[b];
          }
          if (!mode && X.empty() && !S.empty()) {
            mode = FailureMode::NoMediator;
            detail = "the probe target is empty but the candidate is not";
          }
          if (!mode) {
            std::vector<char> hit(X.size(), 0);
            for (NodeIndex j = 0; j < S.size() && !mode; ++j) {
              if (pin[j] < 0) continue;
              if (hit[pin[j]]) {
                mode = FailureMode::MediatorNotEmbedding;
                detail = "the forced mediator is not injective";
              }
              hit[pin[j]] = 1;
            }
          }
          if (!mode && S.size() > X.size()) {
            mode = FailureMode::MediatorNotEmbedding;
            detail = "the candidate is larger than the probe target, so no "
                     "mediator can be injective";
          }
          if (!mode) {
            std::vector<std::pair<NodeIndex, NodeIndex>> pins;
            for (NodeIndex j = 0; j < S.size(); ++j)
              if (pin[j] >= 0) pins.emplace_back(j, pin[j]);
            auto meds = enumerate_embeddings(S, X, kind, 2, 8, pins);
            if (meds.empty()) {
              mode = FailureMode::MediatorNotEmbedding;
              detail = "no " + std::string(kind_name(kind)) +
                       " embedding satisfies the two triangles";
            } else if (meds.size() > 1) {
              mode = FailureMode::MultipleMediators;
              detail = "at least two mediators satisfy the two triangles";
            }
          }
          if (mode) {
            report.verdict = UniversalVerdict::CounterexampleFound;
            report.counterexample = Counterexample{X, g1e, g2e, *mode, detail};
            return report;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace treespan
