#include <string>

#include "doctest.h"
#include "treespan/category.hpp"
#include "treespan/io.hpp"
#include "treespan/solvers.hpp"

using namespace treespan;

namespace {

RootedTree host() { return parse_tree("root a1\narc a1 a2\narc a2 b\narc a2 c\n"); }
RootedTree left_fork() { return parse_tree("root a1\narc a1 b\narc a1 c\n"); }
RootedTree right_fork() { return parse_tree("root a2\narc a2 b\narc a2 c\n"); }

CospanResult forest_cospan() {
  RootedTree T = host(), t1 = left_fork(), t2 = right_fork();
  return CospanResult(
      Embedding(t1, T, resolve_mapping(t1, T, {{"a1", "a1"}, {"b", "b"}, {"c", "c"}}),
                EmbeddingKind::Minor),
      Embedding(t2, T, resolve_mapping(t2, T, {{"a2", "a2"}, {"b", "b"}, {"c", "c"}}),
                EmbeddingKind::Minor));
}

// empty apex over two singleton trees: a span with no pushout at all
SpanResult empty_apex_span() {
  RootedTree t1 = parse_tree("root p\n");
  RootedTree t2 = parse_tree("root q\n");
  return SpanResult(Embedding(RootedTree(), t1, {}, EmbeddingKind::Minor),
                    Embedding(RootedTree(), t2, {}, EmbeddingKind::Minor));
}

}  // namespace

TEST_CASE("verdict and failure-mode names") {
  CHECK(std::string(verdict_name(UniversalVerdict::VerifiedUpToBound)) ==
        "VerifiedUpToBound");
  CHECK(std::string(verdict_name(UniversalVerdict::CounterexampleFound)) ==
        "CounterexampleFound");
  CHECK(std::string(failure_mode_name(FailureMode::NoMediator)) == "NoMediator");
  CHECK(std::string(failure_mode_name(FailureMode::MultipleMediators)) ==
        "MultipleMediators");
  CHECK(std::string(failure_mode_name(FailureMode::MediatorNotEmbedding)) ==
        "MediatorNotEmbedding");
}

TEST_CASE("constructed intersections verify as pullbacks") {
  RootedTree S = parse_tree("root r\narc r x\narc r y\n");
  RootedTree T = parse_tree("root 1\narc 1 2\narc 1 3\narc 3 4\narc 4 5\narc 4 6\n");
  CospanResult c(
      Embedding(S, T, resolve_mapping(S, T, {{"r", "1"}, {"x", "2"}, {"y", "3"}}),
                EmbeddingKind::Isomorphic),
      Embedding(S, T, resolve_mapping(S, T, {{"r", "1"}, {"x", "2"}, {"y", "3"}}),
                EmbeddingKind::Isomorphic));
  IntersectionResult r = intersection(c);
  UniversalReport rep = check_pullback(c, r, 4);
  CHECK(rep.verdict == UniversalVerdict::VerifiedUpToBound);
  CHECK(rep.probes_checked > 0);
  CHECK(rep.bound == 4);

  // the overload taking an explicit cone agrees
  UniversalReport rep2 = check_pullback(c, as_cone(r), 4);
  CHECK(rep2.verdict == UniversalVerdict::VerifiedUpToBound);
}

TEST_CASE("the forest intersection has no pullback: empty candidate") {
  CospanResult c = forest_cospan();
  SpanResult empty_cone(Embedding(RootedTree(), c.left_source(), {}, c.kind()),
                        Embedding(RootedTree(), c.right_source(), {}, c.kind()));
  UniversalReport rep = check_pullback(c, empty_cone, 3);
  REQUIRE(rep.verdict == UniversalVerdict::CounterexampleFound);
  REQUIRE(rep.counterexample.has_value());
  CHECK(rep.counterexample->mode == FailureMode::NoMediator);
  CHECK(rep.counterexample->probe.size() == 1);
  // the witnessing probe lands on a shared node, e.g. both sides at b
  CHECK(rep.counterexample->left.target() == c.left_source());
}

TEST_CASE("the forest intersection has no pullback: singleton candidate") {
  CospanResult c = forest_cospan();
  RootedTree one = parse_tree("root z\n");
  SpanResult cone(
      Embedding(one, c.left_source(),
                {static_cast<NodeIndex>(c.left_source().index_of("b"))},
                c.kind()),
      Embedding(one, c.right_source(),
                {static_cast<NodeIndex>(c.right_source().index_of("b"))},
                c.kind()));
  UniversalReport rep = check_pullback(c, cone, 3);
  REQUIRE(rep.verdict == UniversalVerdict::CounterexampleFound);
  REQUIRE(rep.counterexample.has_value());
  CHECK(rep.counterexample->mode == FailureMode::NoMediator);
  CHECK(rep.counterexample->probe.size() == 1);
  // the candidate sits on b, so the opposite probe through c refutes it
  LabelPairs through_c{{"1", "c"}};
  CHECK(rep.counterexample->left.label_map() == through_c);
}

TEST_CASE("constructed sums verify as pushouts away from the weakest kind") {
  RootedTree t1 = parse_tree("root a\narc a b\narc b c\n");
  RootedTree t2 = parse_tree("root p\narc p q\narc p s\n");
  for (EmbeddingKind k :
       {EmbeddingKind::Topological, EmbeddingKind::Homeomorphic,
        EmbeddingKind::Isomorphic}) {
    SolveConfig cfg;
    cfg.kind = k;
    SpanResult span = lcst_bruteforce(t1, t2, cfg);
    CospanResult sig = sum(span, true);
    UniversalReport rep = check_pushout(span, sig, 4);
    CHECK(rep.verdict == UniversalVerdict::VerifiedUpToBound);
  }
}

TEST_CASE("a genuine smallest supertree can fail universality at minor kind") {
  // fork vs path: the glued sum is a smallest common supertree, yet a
  // 4-node probe admits no mediating minor embedding out of it
  RootedTree t1 = parse_tree("root x1\narc x1 x0\narc x1 x2\n");
  RootedTree t2 = parse_tree("root y0\narc y0 y2\narc y2 y1\n");
  SolveConfig cfg;
  cfg.kind = EmbeddingKind::Minor;
  SpanResult span = lcst_bruteforce(t1, t2, cfg);
  CHECK(span.apex().size() == 2);

  CospanResult sig = sum(span, true);
  CHECK(sig.apex().size() == 4);
  CHECK(sig.apex().size() == scst_bruteforce(t1, t2, cfg).apex().size());

  UniversalReport rep = check_pushout(span, sig, 4);
  REQUIRE(rep.verdict == UniversalVerdict::CounterexampleFound);
  REQUIRE(rep.counterexample.has_value());
  CHECK(rep.counterexample->mode == FailureMode::MediatorNotEmbedding);
  CHECK(canonical_encoding(rep.counterexample->probe) == "((()()))");

  // the same verdict replays at a higher bound
  UniversalReport again = check_pushout(span, sig, 5);
  CHECK(again.verdict == UniversalVerdict::CounterexampleFound);
}

TEST_CASE("the empty-apex span has no pushout: singleton candidate") {
  SpanResult s = empty_apex_span();
  RootedTree one = parse_tree("root w\n");
  CospanResult cand(Embedding(s.left_target(), one, {0}, s.kind()),
                    Embedding(s.right_target(), one, {0}, s.kind()));
  UniversalReport rep = check_pushout(s, cand, 3);
  REQUIRE(rep.verdict == UniversalVerdict::CounterexampleFound);
  REQUIRE(rep.counterexample.has_value());
  // probing with the 2-node path separates p and q; the triangles then
  // disagree about where the single candidate node must land
  CHECK(rep.counterexample->mode == FailureMode::NoMediator);
  CHECK(canonical_encoding(rep.counterexample->probe) == "(())");
  CHECK(rep.note.find("stand-in") != std::string::npos);
}

TEST_CASE("the empty-apex span has no pushout: two-node candidate") {
  SpanResult s = empty_apex_span();
  RootedTree two = parse_tree("root u\narc u v\n");
  CospanResult cand(
      Embedding(s.left_target(), two,
                {static_cast<NodeIndex>(two.index_of("u"))}, s.kind()),
      Embedding(s.right_target(), two,
                {static_cast<NodeIndex>(two.index_of("v"))}, s.kind()));
  UniversalReport rep = check_pushout(s, cand, 3);
  REQUIRE(rep.verdict == UniversalVerdict::CounterexampleFound);
  REQUIRE(rep.counterexample.has_value());
  // the 1-node probe forces both candidate nodes onto one target node
  CHECK(rep.counterexample->mode == FailureMode::MediatorNotEmbedding);
  CHECK(rep.counterexample->probe.size() == 1);
  CHECK(rep.counterexample->detail.find("not injective") != std::string::npos);
}

TEST_CASE("two singleton trees cannot form an arcless candidate") {
  // the classical counterexample target is a two-component graph, which is
  // not a tree; building it is rejected at validation
  CHECK_THROWS_AS(RootedTree::validate({"p", "q"}, {}), Error);
  try {
    RootedTree::validate({"p", "q"}, {});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MultipleRoots);
  }
}

TEST_CASE("counterexamples replay") {
  SpanResult s = empty_apex_span();
  RootedTree one = parse_tree("root w\n");
  CospanResult cand(Embedding(s.left_target(), one, {0}, s.kind()),
                    Embedding(s.right_target(), one, {0}, s.kind()));
  UniversalReport rep = check_pushout(s, cand, 3);
  REQUIRE(rep.counterexample.has_value());
  // feeding the recorded probe back in reproduces the refusal: the two
  // triangle conditions pin the candidate's node to two different values
  const Counterexample& ce = *rep.counterexample;
  NodeIndex via_left = ce.left(0);
  NodeIndex via_right = ce.right(0);
  CHECK(via_left != via_right);
}

TEST_CASE("bound guards") {
  RootedTree u = parse_tree("root u\narc u v\n");
  CospanResult c(Embedding::identity(u, EmbeddingKind::Minor),
                 Embedding::identity(u, EmbeddingKind::Minor));
  IntersectionResult r = intersection(c);
  CHECK_THROWS_AS(check_pullback(c, r, 9), Error);
  try {
    check_pullback(c, r, 9);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BoundExceeded);
  }
  // raising the ceiling admits the larger bound
  UniversalReport rep = check_pullback(c, r, 7, 7);
  CHECK(rep.verdict == UniversalVerdict::VerifiedUpToBound);
}

TEST_CASE("report summary carries the verdict") {
  RootedTree u = parse_tree("root u\n");
  CospanResult c(Embedding::identity(u, EmbeddingKind::Isomorphic),
                 Embedding::identity(u, EmbeddingKind::Isomorphic));
  UniversalReport rep = check_pullback(c, intersection(c), 3);
  CHECK(rep.summary().find("VerifiedUpToBound") != std::string::npos);
  CHECK(rep.summary().find("bound 3") != std::string::npos);
}
