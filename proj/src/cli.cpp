#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "treespan/category.hpp"
#include "treespan/io.hpp"
#include "treespan/proptest.hpp"
#include "treespan/solvers.hpp"

namespace treespan {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::SyntaxError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::SyntaxError, "cannot write '" + path + "'");
  out << content;
}

EmbeddingKind kind_from(const std::string& s) { return *parse_kind(s); }

/// --max-nodes wins over TREESPAN_MAX_NODES wins over the built-in 8.
int resolve_max_nodes(int flag_value) {
  if (flag_value >= 0) return flag_value;
  const char* env = std::getenv("TREESPAN_MAX_NODES");
  if (!env || !*env) return 8;
  std::string text(env);
  try {
    std::size_t pos = 0;
    int v = std::stoi(text, &pos);
    if (pos == text.size() && v >= 0) return v;
  } catch (...) {
  }
  fail(Errc::SyntaxError, "TREESPAN_MAX_NODES is not a count: '" + text + "'");
}

Embedding load_embedding(const RootedTree& s, const RootedTree& t,
                         const std::string& map_path, EmbeddingKind k) {
  NodeMapping m = resolve_mapping(s, t, parse_mapping(read_file(map_path)));
  return Embedding(s, t, std::move(m), k);
}

std::string strip_tag(const std::string& s) {
  if (s.size() >= 2 && (s[0] == '1' || s[0] == '2') && s[1] == ':')
    return s.substr(2);
  return s;
}

/// --plain removes origin tags; refuse when that would merge node names.
void require_distinct(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const std::string& n : names)
    if (!seen.insert(n).second)
      fail(Errc::InvalidLabel,
           "--plain would merge two distinct nodes into '" + n + "'");
}

RootedTree strip_tree(const RootedTree& t) {
  std::vector<std::string> nodes;
  for (const std::string& l : t.labels()) nodes.push_back(strip_tag(l));
  require_distinct(nodes);
  std::vector<std::pair<std::string, std::string>> arcs;
  for (const auto& [p, c] : t.arcs())
    arcs.emplace_back(strip_tag(t.label(p)), strip_tag(t.label(c)));
  std::optional<std::string> root;
  if (!t.empty()) root = strip_tag(t.label(t.root()));
  return RootedTree::validate(std::move(nodes), std::move(arcs), std::move(root));
}

LabelPairs strip_pairs(const LabelPairs& pairs, bool sources, bool values) {
  LabelPairs out;
  for (const auto& [a, b] : pairs)
    out.emplace_back(sources ? strip_tag(a) : a, values ? strip_tag(b) : b);
  return out;
}

void tree_section(std::ostream& out, const std::string& title,
                  const RootedTree& t) {
  out << "# " << title << "\n" << serialize_tree(t);
}

void map_section(std::ostream& out, const std::string& title,
                 const LabelPairs& pairs) {
  out << "# " << title << "\n" << serialize_mapping(pairs);
}

/// Display labels for merged quotient classes, e.g. "x|y".
std::map<std::string, std::string> merged_marks(const QuotientGraph& q,
                                                bool plain) {
  std::map<std::string, std::string> marks;
  for (const QuotientClass& cl : q.classes) {
    if (!cl.merged()) continue;
    std::string key = plain ? strip_tag(cl.name) : cl.name;
    marks[key] = *cl.in_left + "|" + *cl.in_right;
  }
  return marks;
}

void report_sections(std::ostream& out, const UniversalReport& rep) {
  out << rep.summary();
  if (!rep.counterexample) return;
  tree_section(out, "probe", rep.counterexample->probe);
  map_section(out, "probe left", rep.counterexample->left.label_map());
  map_section(out, "probe right", rep.counterexample->right.label_map());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"algebra of rooted-tree embeddings: verify and classify "
               "embeddings, intersect cospans, join spans, and convert "
               "between largest common subtrees and smallest common "
               "supertrees"};
  app.require_subcommand(1);

  const CLI::Validator kind_check{
      [](std::string& v) {
        return parse_kind(v)
                   ? std::string()
                   : "unknown kind '" + v +
                         "' (expected minor|topological|homeomorphic|"
                         "isomorphic or topo|homeo|iso)";
      },
      "KIND"};

  std::function<int()> action;

  // ---- verify ---------------------------------------------------------
  struct {
    std::string kind;
    std::vector<std::string> files;
  } verify_opt;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "check that a mapping is an embedding of the given kind");
  verify_cmd->add_option("--kind,-k", verify_opt.kind, "embedding kind")
      ->required()
      ->check(kind_check);
  verify_cmd
      ->add_option("files", verify_opt.files,
                   "source.tree target.tree mapping.map")
      ->expected(3);
  verify_cmd->callback([&] {
    action = [&]() -> int {
      EmbeddingKind k = kind_from(verify_opt.kind);
      RootedTree s = parse_tree(read_file(verify_opt.files[0]));
      RootedTree t = parse_tree(read_file(verify_opt.files[1]));
      NodeMapping m =
          resolve_mapping(s, t, parse_mapping(read_file(verify_opt.files[2])));
      VerifyReport rep = verify_embedding(s, t, m, k);
      if (!rep.ok) {
        out << kind_name(k) << ": no (" << rep.violation->message() << ")\n";
        return 1;
      }
      out << kind_name(k) << ": yes";
      if (auto up = next_stronger(k)) {
        bool stronger = verify_embedding(s, t, m, *up).ok;
        out << "; " << kind_name(*up) << ": " << (stronger ? "yes" : "no");
      }
      out << "\n";
      return 0;
    };
  });

  // ---- classify -------------------------------------------------------
  struct {
    std::vector<std::string> files;
  } classify_opt;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "report the strongest kind at which the mapping embeds");
  classify_cmd
      ->add_option("files", classify_opt.files,
                   "source.tree target.tree mapping.map")
      ->expected(3);
  classify_cmd->callback([&] {
    action = [&]() -> int {
      RootedTree s = parse_tree(read_file(classify_opt.files[0]));
      RootedTree t = parse_tree(read_file(classify_opt.files[1]));
      NodeMapping m = resolve_mapping(
          s, t, parse_mapping(read_file(classify_opt.files[2])));
      auto k = classify_embedding(s, t, m);
      out << (k ? kind_name(*k) : "none") << "\n";
      return k ? 0 : 1;
    };
  });

  // ---- intersect ------------------------------------------------------
  struct {
    std::string kind, dot;
    std::vector<std::string> files;
  } intersect_opt;
  CLI::App* intersect_cmd = app.add_subcommand(
      "intersect", "largest common part of two subtrees of one target tree");
  intersect_cmd->add_option("--kind,-k", intersect_opt.kind, "embedding kind")
      ->required()
      ->check(kind_check);
  intersect_cmd->add_option("--dot", intersect_opt.dot, "write DOT to this path");
  intersect_cmd
      ->add_option("files", intersect_opt.files,
                   "t1.tree t2.tree f1.map f2.map target.tree")
      ->expected(5);
  intersect_cmd->callback([&] {
    action = [&]() -> int {
      EmbeddingKind k = kind_from(intersect_opt.kind);
      const auto& f = intersect_opt.files;
      RootedTree t1 = parse_tree(read_file(f[0]));
      RootedTree t2 = parse_tree(read_file(f[1]));
      RootedTree t = parse_tree(read_file(f[4]));
      CospanResult c(load_embedding(t1, t, f[2], k),
                     load_embedding(t2, t, f[3], k));
      IntersectionResult r = intersection(c);
      out << "# intersection graph\n";
      for (const std::string& n : r.graph_nodes) out << "node " << n << "\n";
      for (const auto& [a, b] : r.graph_arcs)
        out << "edge " << a << " " << b << "\n";
      out << "shape "
          << (r.shape == IntersectionShape::Tree ? "tree" : "forest") << "\n";
      tree_section(out, "tree", r.tree);
      map_section(out, "left inclusion", r.left_inclusion.label_map());
      map_section(out, "right inclusion", r.right_inclusion.label_map());
      if (!intersect_opt.dot.empty())
        write_file(intersect_opt.dot, export_dot(r.tree));
      return 0;
    };
  });

  // ---- join -----------------------------------------------------------
  struct {
    std::string kind, dot;
    bool plain = false, debug = false;
    std::vector<std::string> files;
  } join_opt;
  CLI::App* join_cmd = app.add_subcommand(
      "join", "quotient of two trees glued along a common subtree");
  join_cmd->add_option("--kind,-k", join_opt.kind, "embedding kind")
      ->required()
      ->check(kind_check);
  join_cmd->add_option("--dot", join_opt.dot, "write DOT to this path");
  join_cmd->add_flag("--plain", join_opt.plain, "strip 1:/2: origin tags");
  join_cmd->add_flag("--debug-oracle", join_opt.debug,
                     "assert the root condition and acyclicity");
  join_cmd
      ->add_option("files", join_opt.files,
                   "t1.tree t2.tree mu.tree m1.map m2.map")
      ->expected(5);
  join_cmd->callback([&] {
    action = [&]() -> int {
      EmbeddingKind k = kind_from(join_opt.kind);
      const auto& f = join_opt.files;
      RootedTree t1 = parse_tree(read_file(f[0]));
      RootedTree t2 = parse_tree(read_file(f[1]));
      RootedTree mu = parse_tree(read_file(f[2]));
      SpanResult s(load_embedding(mu, t1, f[3], k),
                   load_embedding(mu, t2, f[4], k));
      QuotientGraph q = join(s, join_opt.debug);

      std::vector<std::string> display;
      for (const QuotientClass& cl : q.classes)
        display.push_back(join_opt.plain ? strip_tag(cl.name) : cl.name);
      if (join_opt.plain) require_distinct(display);

      for (std::size_t i = 0; i < q.classes.size(); ++i) {
        const QuotientClass& cl = q.classes[i];
        out << "class " << display[i] << " =";
        if (cl.in_left)
          out << " " << (join_opt.plain ? *cl.in_left : "1:" + *cl.in_left);
        if (cl.in_right)
          out << " " << (join_opt.plain ? *cl.in_right : "2:" + *cl.in_right);
        out << "\n";
      }
      LabelPairs edges;
      for (const auto& [a, b] : q.arcs)
        edges.emplace_back(display[a], display[b]);
      for (const auto& [a, b] : edges) out << "edge " << a << " " << b << "\n";
      if (!join_opt.dot.empty())
        write_file(join_opt.dot,
                   export_dot(display, edges, merged_marks(q, join_opt.plain)));
      return 0;
    };
  });

  // ---- sum ------------------------------------------------------------
  struct {
    std::string kind, dot;
    bool plain = false, debug = false;
    std::vector<std::string> files;
  } sum_opt;
  CLI::App* sum_cmd = app.add_subcommand(
      "sum", "smallest common supertree built from a largest-common-subtree span");
  sum_cmd->add_option("--kind,-k", sum_opt.kind, "embedding kind")
      ->required()
      ->check(kind_check);
  sum_cmd->add_option("--dot", sum_opt.dot, "write DOT to this path");
  sum_cmd->add_flag("--plain", sum_opt.plain, "strip 1:/2: origin tags");
  sum_cmd->add_flag("--debug-oracle", sum_opt.debug,
                    "cross-check pruning against the declarative rule");
  sum_cmd
      ->add_option("files", sum_opt.files,
                   "t1.tree t2.tree mu.tree m1.map m2.map")
      ->expected(5);
  sum_cmd->callback([&] {
    action = [&]() -> int {
      EmbeddingKind k = kind_from(sum_opt.kind);
      const auto& f = sum_opt.files;
      RootedTree t1 = parse_tree(read_file(f[0]));
      RootedTree t2 = parse_tree(read_file(f[1]));
      RootedTree mu = parse_tree(read_file(f[2]));
      SpanResult s(load_embedding(mu, t1, f[3], k),
                   load_embedding(mu, t2, f[4], k));
      CospanResult cr = sum(s, sum_opt.debug);

      RootedTree apex = cr.apex();
      LabelPairs lm = cr.left.label_map(), rm = cr.right.label_map();
      if (sum_opt.plain) {
        apex = strip_tree(apex);
        lm = strip_pairs(lm, false, true);
        rm = strip_pairs(rm, false, true);
      }
      tree_section(out, "apex", apex);
      map_section(out, "left embedding", lm);
      map_section(out, "right embedding", rm);
      if (!sum_opt.dot.empty())
        write_file(sum_opt.dot,
                   export_dot(apex, merged_marks(join(s, false), sum_opt.plain)));
      return 0;
    };
  });

  // ---- lcst / scst ----------------------------------------------------
  struct SolveOpt {
    std::string kind, dot;
    int max_nodes = -1;
    std::vector<std::string> files;
  };
  SolveOpt lcst_opt, scst_opt;
  auto add_solver = [&](const char* name, const char* help, SolveOpt& opt) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("--kind,-k", opt.kind, "embedding kind")
        ->required()
        ->check(kind_check);
    cmd->add_option("--max-nodes", opt.max_nodes, "brute-force cap")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--dot", opt.dot, "write DOT to this path");
    cmd->add_option("files", opt.files, "t1.tree t2.tree")->expected(2);
    return cmd;
  };
  CLI::App* lcst_cmd = add_solver(
      "lcst", "largest common subtree by exhaustive search", lcst_opt);
  lcst_cmd->callback([&] {
    action = [&]() -> int {
      SolveConfig cfg;
      cfg.kind = kind_from(lcst_opt.kind);
      cfg.max_nodes = resolve_max_nodes(lcst_opt.max_nodes);
      RootedTree t1 = parse_tree(read_file(lcst_opt.files[0]));
      RootedTree t2 = parse_tree(read_file(lcst_opt.files[1]));
      SpanResult r = lcst_bruteforce(t1, t2, cfg);
      tree_section(out, "apex", r.apex());
      map_section(out, "left embedding", r.left.label_map());
      map_section(out, "right embedding", r.right.label_map());
      if (!lcst_opt.dot.empty()) write_file(lcst_opt.dot, export_dot(r.apex()));
      return 0;
    };
  });
  CLI::App* scst_cmd = add_solver(
      "scst", "smallest common supertree by exhaustive search", scst_opt);
  scst_cmd->callback([&] {
    action = [&]() -> int {
      SolveConfig cfg;
      cfg.kind = kind_from(scst_opt.kind);
      cfg.max_nodes = resolve_max_nodes(scst_opt.max_nodes);
      RootedTree t1 = parse_tree(read_file(scst_opt.files[0]));
      RootedTree t2 = parse_tree(read_file(scst_opt.files[1]));
      CospanResult r = scst_bruteforce(t1, t2, cfg);
      tree_section(out, "apex", r.apex());
      map_section(out, "left embedding", r.left.label_map());
      map_section(out, "right embedding", r.right.label_map());
      if (!scst_opt.dot.empty()) write_file(scst_opt.dot, export_dot(r.apex()));
      return 0;
    };
  });

  // ---- sub2super ------------------------------------------------------
  struct {
    std::string kind, dot;
    bool plain = false, debug = false;
    int max_nodes = -1;
    std::vector<std::string> files;
  } s2s_opt;
  CLI::App* s2s_cmd = app.add_subcommand(
      "sub2super",
      "convert a largest-common-subtree span into a smallest common supertree");
  s2s_cmd->add_option("--kind,-k", s2s_opt.kind, "embedding kind")
      ->required()
      ->check(kind_check);
  s2s_cmd->add_option("--max-nodes", s2s_opt.max_nodes, "debug-oracle cap")
      ->check(CLI::NonNegativeNumber);
  s2s_cmd->add_option("--dot", s2s_opt.dot, "write DOT to this path");
  s2s_cmd->add_flag("--plain", s2s_opt.plain, "strip 1:/2: origin tags");
  s2s_cmd->add_flag("--debug-oracle", s2s_opt.debug,
                    "re-establish optimality of the apex by brute force");
  s2s_cmd
      ->add_option("files", s2s_opt.files,
                   "t1.tree t2.tree mu.tree m1.map m2.map")
      ->expected(5);
  s2s_cmd->callback([&] {
    action = [&]() -> int {
      SolveConfig cfg;
      cfg.kind = kind_from(s2s_opt.kind);
      cfg.max_nodes = resolve_max_nodes(s2s_opt.max_nodes);
      cfg.debug_oracle = s2s_opt.debug;
      const auto& f = s2s_opt.files;
      RootedTree t1 = parse_tree(read_file(f[0]));
      RootedTree t2 = parse_tree(read_file(f[1]));
      RootedTree mu = parse_tree(read_file(f[2]));
      SpanResult s(load_embedding(mu, t1, f[3], cfg.kind),
                   load_embedding(mu, t2, f[4], cfg.kind));
      CospanResult cr = sub_to_super(s, cfg);
      RootedTree apex = cr.apex();
      LabelPairs lm = cr.left.label_map(), rm = cr.right.label_map();
      if (s2s_opt.plain) {
        apex = strip_tree(apex);
        lm = strip_pairs(lm, false, true);
        rm = strip_pairs(rm, false, true);
      }
      tree_section(out, "apex", apex);
      map_section(out, "left embedding", lm);
      map_section(out, "right embedding", rm);
      if (!s2s_opt.dot.empty())
        write_file(s2s_opt.dot,
                   export_dot(apex, merged_marks(join(s, false), s2s_opt.plain)));
      return 0;
    };
  });

  // ---- super2sub ------------------------------------------------------
  struct {
    std::string kind, dot;
    bool debug = false;
    int max_nodes = -1;
    std::vector<std::string> files;
  } s2b_opt;
  CLI::App* s2b_cmd = app.add_subcommand(
      "super2sub",
      "convert a smallest-common-supertree cospan into a largest common subtree");
  s2b_cmd->add_option("--kind,-k", s2b_opt.kind, "embedding kind")
      ->required()
      ->check(kind_check);
  s2b_cmd->add_option("--max-nodes", s2b_opt.max_nodes, "debug-oracle cap")
      ->check(CLI::NonNegativeNumber);
  s2b_cmd->add_option("--dot", s2b_opt.dot, "write DOT to this path");
  s2b_cmd->add_flag("--debug-oracle", s2b_opt.debug,
                    "re-establish optimality of the apex by brute force");
  s2b_cmd
      ->add_option("files", s2b_opt.files,
                   "t1.tree t2.tree f1.map f2.map target.tree")
      ->expected(5);
  s2b_cmd->callback([&] {
    action = [&]() -> int {
      SolveConfig cfg;
      cfg.kind = kind_from(s2b_opt.kind);
      cfg.max_nodes = resolve_max_nodes(s2b_opt.max_nodes);
      cfg.debug_oracle = s2b_opt.debug;
      const auto& f = s2b_opt.files;
      RootedTree t1 = parse_tree(read_file(f[0]));
      RootedTree t2 = parse_tree(read_file(f[1]));
      RootedTree t = parse_tree(read_file(f[4]));
      CospanResult c(load_embedding(t1, t, f[2], cfg.kind),
                     load_embedding(t2, t, f[3], cfg.kind));
      SpanResult sr = super_to_sub(c, cfg);
      tree_section(out, "apex", sr.apex());
      map_section(out, "left embedding", sr.left.label_map());
      map_section(out, "right embedding", sr.right.label_map());
      if (!s2b_opt.dot.empty()) write_file(s2b_opt.dot, export_dot(sr.apex()));
      return 0;
    };
  });

  // ---- check-pullback -------------------------------------------------
  struct {
    std::string kind;
    int bound = 0, max_bound = 6;
    std::vector<std::string> files, candidate;
  } cpb_opt;
  CLI::App* cpb_cmd = app.add_subcommand(
      "check-pullback",
      "test the universal property of a candidate intersection, probing all "
      "trees up to the bound");
  cpb_cmd->add_option("--kind,-k", cpb_opt.kind, "embedding kind")
      ->required()
      ->check(kind_check);
  cpb_cmd->add_option("--bound", cpb_opt.bound, "max probe size")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cpb_cmd->add_option("--max-bound", cpb_opt.max_bound, "refuse bounds above this")
      ->check(CLI::NonNegativeNumber);
  cpb_cmd->add_option("--candidate", cpb_opt.candidate,
                      "p.tree g1.map g2.map (default: the computed intersection)")
      ->expected(3);
  cpb_cmd
      ->add_option("files", cpb_opt.files,
                   "t1.tree t2.tree f1.map f2.map target.tree")
      ->expected(5);
  cpb_cmd->callback([&] {
    action = [&]() -> int {
      EmbeddingKind k = kind_from(cpb_opt.kind);
      const auto& f = cpb_opt.files;
      RootedTree t1 = parse_tree(read_file(f[0]));
      RootedTree t2 = parse_tree(read_file(f[1]));
      RootedTree t = parse_tree(read_file(f[4]));
      CospanResult c(load_embedding(t1, t, f[2], k),
                     load_embedding(t2, t, f[3], k));
      SpanResult cand = [&]() -> SpanResult {
        if (!cpb_opt.candidate.empty()) {
          RootedTree p = parse_tree(read_file(cpb_opt.candidate[0]));
          return SpanResult(load_embedding(p, t1, cpb_opt.candidate[1], k),
                            load_embedding(p, t2, cpb_opt.candidate[2], k));
        }
        IntersectionResult r = intersection(c);
        if (r.shape == IntersectionShape::Forest) {
          // a forest has no tree-shaped cone at all; test the best
          // tree-shaped attempt, the empty cone
          return SpanResult(Embedding(RootedTree(), t1, {}, k),
                            Embedding(RootedTree(), t2, {}, k));
        }
        return as_cone(r);
      }();
      UniversalReport rep = check_pullback(c, cand, cpb_opt.bound,
                                           cpb_opt.max_bound);
      report_sections(out, rep);
      return 0;
    };
  });

  // ---- check-pushout --------------------------------------------------
  struct {
    std::string kind;
    int bound = 0, max_bound = 6;
    std::vector<std::string> files, candidate;
  } cpo_opt;
  CLI::App* cpo_cmd = app.add_subcommand(
      "check-pushout",
      "test the universal property of a candidate sum, probing all trees up "
      "to the bound");
  cpo_cmd->add_option("--kind,-k", cpo_opt.kind, "embedding kind")
      ->required()
      ->check(kind_check);
  cpo_cmd->add_option("--bound", cpo_opt.bound, "max probe size")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cpo_cmd->add_option("--max-bound", cpo_opt.max_bound, "refuse bounds above this")
      ->check(CLI::NonNegativeNumber);
  cpo_cmd->add_option("--candidate", cpo_opt.candidate,
                      "sigma.tree l1.map l2.map (default: the computed sum)")
      ->expected(3);
  cpo_cmd
      ->add_option("files", cpo_opt.files,
                   "t1.tree t2.tree mu.tree m1.map m2.map")
      ->expected(5);
  cpo_cmd->callback([&] {
    action = [&]() -> int {
      EmbeddingKind k = kind_from(cpo_opt.kind);
      const auto& f = cpo_opt.files;
      RootedTree t1 = parse_tree(read_file(f[0]));
      RootedTree t2 = parse_tree(read_file(f[1]));
      RootedTree mu = parse_tree(read_file(f[2]));
      SpanResult s(load_embedding(mu, t1, f[3], k),
                   load_embedding(mu, t2, f[4], k));
      CospanResult cand = [&]() -> CospanResult {
        if (!cpo_opt.candidate.empty()) {
          RootedTree sigma = parse_tree(read_file(cpo_opt.candidate[0]));
          return CospanResult(load_embedding(t1, sigma, cpo_opt.candidate[1], k),
                              load_embedding(t2, sigma, cpo_opt.candidate[2], k));
        }
        return sum(s, false);
      }();
      UniversalReport rep =
          check_pushout(s, cand, cpo_opt.bound, cpo_opt.max_bound);
      report_sections(out, rep);
      return 0;
    };
  });

  // ---- proptest -------------------------------------------------------
  struct {
    std::uint64_t seed = 1;
    int iters = 1;
  } prop_opt;
  CLI::App* prop_cmd = app.add_subcommand(
      "proptest", "run the randomized law suites with a fixed seed");
  prop_cmd->add_option("--seed", prop_opt.seed, "RNG seed");
  prop_cmd->add_option("--iters", prop_opt.iters, "instance-count multiplier")
      ->check(CLI::PositiveNumber);
  prop_cmd->callback([&] {
    action = [&]() -> int {
      auto suites = run_property_suites(prop_opt.seed, prop_opt.iters);
      long violations = 0;
      for (const SuiteResult& sr : suites) {
        out << "suite " << sr.name << ": " << sr.cases << " cases, "
            << sr.violations << " violations\n";
        if (sr.violations > 0 && !sr.first_failure.empty())
          out << "  first failure: " << sr.first_failure << "\n";
        violations += sr.violations;
      }
      out << (violations == 0 ? "all suites passed" : "suite failures detected")
          << "\n";
      return violations == 0 ? 0 : 1;
    };
  });

  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("treespan");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }
    return action ? action() : 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == Errc::InternalError ? 4 : 3;
  } catch (const std::exception& e) {
    err << "InternalError: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace treespan
