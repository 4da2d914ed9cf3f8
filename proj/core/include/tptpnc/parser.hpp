// Recursive descent parser for FOF/CNF/TFF/TXF/TXN and THF/THN units.

#ifndef TPTPNC_PARSER_HPP_
#define TPTPNC_PARSER_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tptpnc/ast.hpp"

namespace tptpnc {

struct IncludeDirective {
  std::string path;  // unquoted
  std::vector<std::string> selection;
  SourcePos pos;
  std::size_t begin_offset = 0;
  std::size_t end_offset = 0;
};

using SourceItem = std::variant<AnnotatedFormula, IncludeDirective>;

struct SourceFile {
  std::vector<SourceItem> items;
};

// Parses a whole file, keeping include directives unresolved.
SourceFile parse_source(std::string_view text);

// Parses a self-contained problem. Throws ParseError if the text contains an
// include directive; use load_problem for files with includes.
Problem parse_problem(std::string_view text);

// Single formula / type in the given dialect, mostly for tests and tools.
FormulaPtr parse_formula(std::string_view text, Language language = Language::Tff);
TypePtr parse_type(std::string_view text, Language language = Language::Tff);

struct LoadOptions {
  // Searched after the including file's directory.
  std::optional<std::filesystem::path> include_root;
};

std::string read_text_file(const std::filesystem::path& path);

// Reads `file` and resolves includes recursively (relative to the including
// file, then the include root), honoring include selections.
Problem load_problem(const std::filesystem::path& file, const LoadOptions& options = {});

// The text of `file` with every include directive replaced by the (recursively
// expanded) text of the included file.
std::string inline_includes(const std::filesystem::path& file, const LoadOptions& options = {});

}  // namespace tptpnc

#endif  // TPTPNC_PARSER_HPP_
