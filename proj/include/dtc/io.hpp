/*!
  \file io.hpp
  \brief Relation text files and DOT export of decision trees

  Relation file format (UTF-8, LF line endings):

      REL <arity> <|X|> <|Y|>
      x1 x2 ... xn : y1 y2 ... yk

  One record per domain point; inputs that are not listed are outside the
  domain.  `#` starts a comment that runs to the end of the line and blank
  lines are ignored.  `write_relation` emits records in ascending
  mixed-radix input order (x1 most significant) with outputs ascending,
  single spaces and a trailing newline.  A nullary relation's record is
  written `: y1 ... yk`.

  DOT output uses only `digraph`, node and edge statements, and `label`
  attributes.  Nodes are numbered n0, n1, ... in preorder; children are
  emitted in ascending edge-symbol order.
*/

#pragma once

#include "dtc/decision_tree.hpp"
#include "dtc/relation.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtc
{

Relation parse_relation( std::string_view text, const TableGuard& guard = {} );
std::string write_relation( const Relation& f );

Relation read_relation_file( const std::filesystem::path& path, const TableGuard& guard = {} );
void write_relation_file( const std::filesystem::path& path, const Relation& f );

/// Internal nodes are labelled `x<i>` (1-based) unless `variable_names` supplies a name per variable.
std::string export_dot( const DecisionTree& tree, const std::vector<std::string>& variable_names = {} );

/// Reads back the DOT subset written by `export_dot`.
DecisionTree parse_dot( std::string_view text, const std::vector<std::string>& variable_names = {} );

} // namespace dtc
