#include "treespan/io.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "treespan/errors.hpp"

namespace treespan {

const char* const kFreshRootLabel = "⊥";  // ⊥

namespace {

[[noreturn]] void syntax(int line, const std::string& what) {
  fail(Errc::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

RootedTree parse_tree(const std::string& text) {
  std::vector<std::string> nodes;
  std::set<std::string> seen;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::optional<std::string> root;

  int lineno = 0;
  std::istringstream in(text);
  std::string raw;
  auto add_node = [&](const std::string& label) {
    if (label == kFreshRootLabel)
      fail(Errc::ReservedLabel, "line " + std::to_string(lineno) +
                                    ": the label '" + kFreshRootLabel +
                                    "' is reserved for synthesized roots");
    if (seen.insert(label).second) nodes.push_back(label);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(strip_comment(raw));
    std::string directive;
    if (!(ls >> directive)) continue;
    std::string extra;
    if (directive == "root") {
      std::string label;
      if (!(ls >> label)) syntax(lineno, "expected 'root <label>'");
      if (ls >> extra) syntax(lineno, "trailing token '" + extra + "'");
      if (root) syntax(lineno, "duplicate root directive");
      root = label;
      add_node(label);
    } else if (directive == "arc") {
      std::string parent, child;
      if (!(ls >> parent >> child))
        syntax(lineno, "expected 'arc <parent> <child>'");
      if (ls >> extra) syntax(lineno, "trailing token '" + extra + "'");
      add_node(parent);
      add_node(child);
      arcs.emplace_back(parent, child);
    } else {
      syntax(lineno, "unknown directive '" + directive + "'");
    }
  }
  return RootedTree::validate(std::move(nodes), std::move(arcs), std::move(root));
}

std::string serialize_tree(const RootedTree& t) {
  if (t.empty()) return "";
  std::string out = "root " + t.label(t.root()) + "\n";
  for (const auto& [p, c] : t.arcs())
    out += "arc " + t.label(p) + " " + t.label(c) + "\n";
  return out;
}

LabelPairs parse_mapping(const std::string& text) {
  LabelPairs pairs;
  std::set<std::string> sources;
  int lineno = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(strip_comment(raw));
    std::string directive;
    if (!(ls >> directive)) continue;
    if (directive != "map")
      syntax(lineno, "unknown directive '" + directive + "'");
    std::string src, dst, extra;
    if (!(ls >> src >> dst)) syntax(lineno, "expected 'map <src> <dst>'");
    if (ls >> extra) syntax(lineno, "trailing token '" + extra + "'");
    if (!sources.insert(src).second)
      fail(Errc::DuplicateSource, "line " + std::to_string(lineno) +
                                      ": source '" + src + "' mapped twice");
    pairs.emplace_back(src, dst);
  }
  return pairs;
}

std::string serialize_mapping(const LabelPairs& pairs) {
  LabelPairs sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (const auto& [src, dst] : sorted) out += "map " + src + " " + dst + "\n";
  return out;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string export_dot(const std::vector<std::string>& nodes,
                       const LabelPairs& arcs,
                       const std::map<std::string, std::string>& marks) {
  std::vector<std::string> ns = nodes;
  std::sort(ns.begin(), ns.end());
  LabelPairs as = arcs;
  std::sort(as.begin(), as.end());

  std::string out = "digraph tree {\n";
  for (const std::string& n : ns) {
    out += "  " + dot_quote(n);
    auto mark = marks.find(n);
    if (mark != marks.end()) out += " [label=" + dot_quote(mark->second) + "]";
    out += ";\n";
  }
  for (const auto& [a, b] : as)
    out += "  " + dot_quote(a) + " -> " + dot_quote(b) + ";\n";
  out += "}\n";
  return out;
}

std::string export_dot(const RootedTree& t,
                       const std::map<std::string, std::string>& marks) {
  LabelPairs arcs;
  for (const auto& [p, c] : t.arcs()) arcs.emplace_back(t.label(p), t.label(c));
  return export_dot(t.labels(), arcs, marks);
}

}  // namespace treespan
