#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "treespan/tree.hpp"

namespace treespan {

/// Label of the fresh root synthesized when a minor intersection is a
/// forest. Input files may not use it (ReservedLabel).
extern const char* const kFreshRootLabel;

using LabelPairs = std::vector<std::pair<std::string, std::string>>;

/// Tree file grammar: a directive per line, '#' starts a comment.
///   root <label>           at most once
///   arc <parent> <child>   any number of times
/// No directives at all is the empty tree; when the root line is absent the
/// root is inferred as the unique parentless node. Structural problems
/// surface as the validation errors of RootedTree::validate; grammar
/// problems as SyntaxError with a 1-based line number.
RootedTree parse_tree(const std::string& text);

/// Inverse of parse_tree up to comments and whitespace: a root line followed
/// by arc lines sorted by (parent, child) label. The empty tree serializes
/// to the empty string.
std::string serialize_tree(const RootedTree& t);

/// Mapping file grammar: lines `map <src> <dst>`. Repeating a source label
/// is DuplicateSource, even with an identical destination.
LabelPairs parse_mapping(const std::string& text);

/// `map` lines sorted by source label.
std::string serialize_mapping(const LabelPairs& pairs);

/// Deterministic DOT digraph: quoted node statements in sorted order, then
/// sorted edge statements. `marks` attaches display labels (e.g. merged
/// quotient classes rendered as "x|y").
std::string export_dot(const std::vector<std::string>& nodes,
                       const LabelPairs& arcs,
                       const std::map<std::string, std::string>& marks = {});
std::string export_dot(const RootedTree& t,
                       const std::map<std::string, std::string>& marks = {});

/// Command-line driver. `args` excludes the program name. Returns the
/// process exit code: 0 success/verified, 1 negative answer (embedding
/// refuted, classification "none", property violations), 2 usage error,
/// 3 invalid input, 4 internal invariant failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace treespan
