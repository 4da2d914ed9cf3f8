// Command-line front end: parse, check, embed, translate, expand, oracle.

#ifndef TPTPNC_CLI_HPP_
#define TPTPNC_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tptpnc/diagnostics.hpp"
#include "tptpnc/parser.hpp"

namespace tptpnc::cli {

// 0 ok, 1 parse, 2 spec, 3 embed, 4 resource, 5 internal.
enum ExitCode { kOk = 0, kParse = 1, kSpec = 2, kEmbed = 3, kResource = 4, kInternal = 5 };

int exit_code(ErrorKind kind);

struct ExpandedFile {
  std::string spec;                // name of the logic unit
  std::filesystem::path filename;  // <stem>.<spec>.p
  std::string text;
};

// One problem per logic unit of a generator file: the file with includes
// inlined and every other logic unit removed, behind a provenance line.
std::vector<ExpandedFile> expand_generator(const std::filesystem::path& file, const LoadOptions& options = {});

// Runs one command line; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tptpnc::cli

#endif  // TPTPNC_CLI_HPP_
