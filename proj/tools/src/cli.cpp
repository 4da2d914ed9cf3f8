#include "tptpnc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "tptpnc/decide.hpp"
#include "tptpnc/embedding.hpp"
#include "tptpnc/kripke.hpp"
#include "tptpnc/logic_spec.hpp"
#include "tptpnc/printer.hpp"
#include "tptpnc/signature.hpp"

namespace fs = std::filesystem;

namespace tptpnc::cli {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::IncludeError: return kParse;
    case ErrorKind::UnknownLogicName:
    case ErrorKind::UnknownProperty:
    case ErrorKind::UnknownValue:
    case ErrorKind::MissingLogicSpec:
    case ErrorKind::DuplicateLogicSpec:
    case ErrorKind::BadIndex:
    case ErrorKind::BadOverrideKey:
    case ErrorKind::ConnectiveNotInFamily: return kSpec;
    case ErrorKind::UnsupportedConstruct:
    case ErrorKind::TypeError:
    case ErrorKind::UninterpretedSymbol: return kEmbed;
    case ErrorKind::ResourceLimit: return kResource;
    case ErrorKind::InternalError: return kInternal;
  }
  return kInternal;
}

namespace {

// Drops the unit in [begin, end) together with the rest of its line when
// only blanks follow it.
void erase_unit(std::string& text, std::size_t begin, std::size_t end) {
  std::size_t stop = end;
  while (stop < text.size() && (text[stop] == ' ' || text[stop] == '\t' || text[stop] == '\r')) ++stop;
  if (stop < text.size() && text[stop] == '\n') end = stop + 1;
  text.erase(begin, end - begin);
}

}  // namespace

std::vector<ExpandedFile> expand_generator(const fs::path& file, const LoadOptions& options) {
  const std::string text = inline_includes(file, options);
  SourceFile source = parse_source(text);
  std::vector<const AnnotatedFormula*> specs;
  for (const auto& item : source.items)
    if (const auto* u = std::get_if<AnnotatedFormula>(&item); u && u->role.base == RoleBase::Logic) specs.push_back(u);
  if (specs.empty())
    throw SpecError(ErrorKind::MissingLogicSpec, {}, file.filename().string() + " contains no logic specification");
  std::set<std::string> names;
  for (const auto* s : specs)
    if (!names.insert(s->name).second)
      throw SpecError(ErrorKind::DuplicateLogicSpec, s->pos, "logic specification name '" + s->name + "' is used twice");

  std::vector<ExpandedFile> out;
  for (const auto* keep : specs) {
    std::string body = text;
    for (auto it = specs.rbegin(); it != specs.rend(); ++it)
      if (*it != keep) erase_unit(body, (*it)->begin_offset, (*it)->end_offset);
    ExpandedFile f;
    f.spec = keep->name;
    f.filename = file.stem().string() + "." + keep->name + ".p";
    f.text = "% Expanded from " + file.filename().string() + " for logic specification " + keep->name + "\n" + body;
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

struct Config {
  std::vector<std::string> inputs;
  std::string out;
  std::string out_dir = ".";
  std::string include_root;
  std::string format = "tptp";
  std::string frame_mode = "conditions";
  int max_worlds = 3;
  int max_domain = 4;
  std::uint64_t cap = 10'000'000;
};

LoadOptions load_options(const Config& cfg) {
  LoadOptions o;
  if (!cfg.include_root.empty()) o.include_root = cfg.include_root;
  else if (const char* env = std::getenv("TPTP"); env && *env) o.include_root = env;
  return o;
}

void write_output(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::IncludeError, {}, "cannot write '" + cfg.out + "'");
  f << text;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "% Warning: " << w << "\n";
}

CheckedProblem load_checked(const Config& cfg, const std::string& file) {
  CheckedProblem checked = check_problem(load_problem(file, load_options(cfg)));
  type_check(checked.problem);
  return checked;
}

int cmd_parse(const Config& cfg, const std::string& file, std::ostream& out) {
  Problem p = load_problem(file, load_options(cfg));
  write_output(cfg, cfg.format == "ast" ? dump_problem(p) : print_problem(p), out);
  return kOk;
}

int cmd_check(const Config& cfg, const std::string& file, std::ostream& out, std::ostream& err) {
  CheckedProblem checked = load_checked(cfg, file);
  if (checked.semantics) print_warnings(checked.semantics->warnings, err);
  out << "% SZS status Success for " << file << "\n";
  return kOk;
}

int cmd_embed(const Config& cfg, const std::string& file, std::ostream& out, std::ostream& err) {
  EmbedOutput e = embed_problem(load_checked(cfg, file));
  print_warnings(e.warnings, err);
  write_output(cfg, print_embed_output(e), out);
  out << "% SZS status Success for " << file << "\n";
  return kOk;
}

int cmd_translate(const Config& cfg, const std::string& file, std::ostream& out, std::ostream& err) {
  CheckedProblem checked = load_checked(cfg, file);
  if (checked.semantics) print_warnings(checked.semantics->warnings, err);
  write_output(cfg, print_problem(translate_problem(checked)), out);
  out << "% SZS status Success for " << file << "\n";
  return kOk;
}

int cmd_expand(const Config& cfg, const std::string& file, std::ostream& out) {
  auto files = expand_generator(file, load_options(cfg));
  fs::create_directories(cfg.out_dir);
  for (const auto& f : files) {
    fs::path path = fs::path(cfg.out_dir) / f.filename;
    std::ofstream o(path, std::ios::binary);
    if (!o) throw Error(ErrorKind::IncludeError, {}, "cannot write '" + path.string() + "'");
    o << f.text;
    out << path.string() << "\n";
  }
  return kOk;
}

int cmd_oracle(const Config& cfg, const std::string& file, std::ostream& out, std::ostream& err) {
  CheckedProblem checked = load_checked(cfg, file);
  if (checked.semantics) print_warnings(checked.semantics->warnings, err);
  DecideOptions o;
  o.bounds = {cfg.max_worlds, cfg.max_domain};
  o.frame_mode = cfg.frame_mode == "axioms" ? FrameMode::Axioms : FrameMode::Conditions;
  o.cap = cfg.cap;
  Verdict v = decide(checked, o);
  out << "% SZS status " << status_name(v.status) << " for " << file << "\n";
  out << "% Bound: worlds=" << v.bounds.max_worlds << " domain=" << v.bounds.max_domain << "\n";
  out << "% " << v.note << "\n";
  if (v.witness) {
    out << "% SZS output start Model for " << file << "\n";
    out << serialize_model(*v.witness);
    out << "% SZS output end Model for " << file << "\n";
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Parse, check, embed and model-check TPTP modal logic problems", "tptpnc"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--include-root", cfg.include_root, "Directory searched for includes (default: $TPTP)");
  };

  auto* parse = app.add_subcommand("parse", "Parse files and print them back");
  parse->add_option("files", cfg.inputs)->required();
  parse->add_option("--format", cfg.format)->check(CLI::IsMember({"ast", "tptp"}));
  parse->add_option("--out", cfg.out, "Output file");
  common(parse);

  auto* check = app.add_subcommand("check", "Parse, validate the logic specification and type check");
  check->add_option("files", cfg.inputs)->required();
  common(check);

  auto* embed = app.add_subcommand("embed", "Embed a modal problem into classical THF");
  embed->add_option("file", cfg.inputs)->required()->expected(1);
  embed->add_option("--out", cfg.out, "Output file");
  common(embed);

  auto* translate = app.add_subcommand("translate", "Standard relational translation into TFF");
  translate->add_option("file", cfg.inputs)->required()->expected(1);
  translate->add_option("--out", cfg.out, "Output file");
  common(translate);

  auto* expand = app.add_subcommand("expand", "Split a problem generator file into one file per logic specification");
  expand->add_option("file", cfg.inputs)->required()->expected(1);
  expand->add_option("--out-dir", cfg.out_dir, "Output directory");
  common(expand);

  auto* oracle = app.add_subcommand("oracle", "Decide a problem over finite Kripke models");
  oracle->add_option("file", cfg.inputs)->required()->expected(1);
  oracle->add_option("--max-worlds", cfg.max_worlds)->check(CLI::Range(1, 5));
  oracle->add_option("--max-domain", cfg.max_domain)->check(CLI::Range(1, 16));
  oracle->add_option("--frame-mode", cfg.frame_mode)->check(CLI::IsMember({"conditions", "axioms"}));
  oracle->add_option("--cap", cfg.cap, "Clause limit per grounding");
  common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  int status = kOk;
  for (const auto& file : cfg.inputs) {
    try {
      int rc = kOk;
      if (*parse) rc = cmd_parse(cfg, file, out);
      else if (*check) rc = cmd_check(cfg, file, out, err);
      else if (*embed) rc = cmd_embed(cfg, file, out, err);
      else if (*translate) rc = cmd_translate(cfg, file, out, err);
      else if (*expand) rc = cmd_expand(cfg, file, out);
      else if (*oracle) rc = cmd_oracle(cfg, file, out, err);
      if (status == kOk) status = rc;
    } catch (const Error& e) {
      err << format_diagnostic(file, e) << "\n";
      if (status == kOk) status = exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
      err << file << ": " << e.what() << "\n";
      if (status == kOk) status = kParse;
    }
  }
  return status;
}

}  // namespace tptpnc::cli
