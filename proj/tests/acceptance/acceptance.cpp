// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any
// criterion fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "prop_oracle.hpp"
#include "tptpnc/cli.hpp"
#include "tptpnc/decide.hpp"
#include "tptpnc/embedding.hpp"
#include "tptpnc/enumerate.hpp"
#include "tptpnc/evaluate.hpp"
#include "tptpnc/kripke.hpp"
#include "tptpnc/logic_spec.hpp"
#include "tptpnc/parser.hpp"
#include "tptpnc/printer.hpp"
#include "tptpnc/signature.hpp"

namespace fs = std::filesystem;
using namespace tptpnc;

namespace {

const fs::path kData = TPTPNC_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << " s";
  return o.str();
}

// ---------------------------------------------------------------------------

Outcome corpus_roundtrip() {
  Stopwatch clock;
  int units = 0, files = 0;
  std::vector<std::string> bad;
  for (const auto& entry : fs::directory_iterator(kData)) {
    if (entry.path().extension() != ".p") continue;
    ++files;
    try {
      Problem p = load_problem(entry.path());
      for (const auto& u : p) {
        ++units;
        Problem again = parse_problem(print_unit(u));
        if (again.size() != 1 || !(again[0] == u)) bad.push_back(entry.path().filename().string() + ":" + u.name);
      }
    } catch (const Error& e) {
      bad.push_back(format_diagnostic(entry.path().filename().string(), e));
    }
  }
  double t = clock.seconds();
  Outcome o;
  o.pass = bad.empty() && units >= 18 && t < 1.0;
  o.detail = std::to_string(units) + " units in " + std::to_string(files) + " files, " +
             std::to_string(units - static_cast<int>(bad.size())) + " round-trip, " + fmt_seconds(t);
  for (const auto& b : bad) o.detail += "; failed " + b;
  return o;
}

Outcome complex_spec_queries() {
  Problem p = load_problem(kData / "complex_spec.p");
  ModalSemantics sem = validate_spec(*p.at(0).logic_spec(), p.at(0).pos);
  std::vector<std::string> wrong;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) wrong.push_back(what);
  };
  expect(sem.rigidity("sun") == Rigidity::Rigid, "sun rigid");
  expect(sem.rigidity("owner_of") == Rigidity::Flexible, "owner_of flexible");
  expect(sem.domain("planet_type") == DomainKind::Varying, "planet_type varying");
  expect(sem.domain("$i") == DomainKind::Constant, "$i constant");
  expect(sem.modality("").axioms() == system_axioms(ModalSystem::K), "default K");
  expect(sem.modality("1") == ModalitySpec{ModalSystem::KB}, "#1 KB");
  expect(sem.modality("2").axioms() == std::set<ModalAxiom>{ModalAxiom::K, ModalAxiom::Four}, "#2 {K,4}");
  Outcome o;
  o.pass = wrong.empty();
  o.detail = o.pass ? "7 queries answered" : "wrong:";
  for (const auto& w : wrong) o.detail += " " + w;
  return o;
}

Outcome missing_spec() {
  const std::string file = (kData / "birds_fly.p").string();
  ErrorKind kind = ErrorKind::InternalError;
  try {
    check_problem(load_problem(file));
  } catch (const Error& e) {
    kind = e.kind();
  }
  std::ostringstream out, err;
  const char* argv[] = {"tptpnc", "check", file.c_str()};
  int rc = cli::run(3, argv, out, err);
  Outcome o;
  o.pass = kind == ErrorKind::MissingLogicSpec && rc == 2;
  o.detail = std::string(error_kind_name(kind)) + ", exit code " + std::to_string(rc);
  return o;
}

// ---------------------------------------------------------------------------
// Shared sweep: two atoms, one index, carrier 1, all models up to 3 worlds.

struct Sweep {
  std::shared_ptr<const ModelLayout> layout;
  ModalSemantics sem;
  Signature sig;
  std::vector<KripkeModel> models;
  std::vector<oracle::PropPtr> props;
  std::vector<FormulaPtr> formulas;
};

oracle::Frame to_frame(const KripkeModel& m, const ModelLayout& layout) {
  oracle::Frame f;
  f.worlds = m.worlds;
  f.succ.assign(m.worlds, 0);
  for (int w = 0; w < m.worlds; ++w)
    for (int v = 0; v < m.worlds; ++v)
      if (m.accessible(0, w, v)) f.succ[w] |= 1u << v;
  for (const char* name : {"p", "q"}) {
    int s = layout.symbol_id(name);
    std::uint32_t bits = 0;
    if (s >= 0)
      for (int w = 0; w < m.worlds; ++w)
        if (m.tables[s][m.cell(s, w, nullptr)]) bits |= 1u << w;
    f.val.push_back(bits);
  }
  return f;
}

Sweep& sweep() {
  static Sweep s = [] {
    Sweep s;
    Problem decls = parse_problem("tff(p_decl, type, p: $o).\ntff(q_decl, type, q: $o).\n");
    s.sig = build_signature(decls);
    s.layout = std::make_shared<const ModelLayout>(make_layout(decls, s.sem));
    EnumerateOptions eo;
    eo.bounds = {3, 1};
    enumerate_models(s.layout, eo, [&](const KripkeModel& m) {
      s.models.push_back(m);
      return true;
    });
    s.props = oracle::distinct_formulas(500, 2, 3, 20240917u);
    for (const auto& p : s.props) s.formulas.push_back(parse_formula(oracle::to_tptp(*p)));
    return s;
  }();
  return s;
}

Outcome agreement_sweep() {
  Stopwatch clock;
  Sweep& s = sweep();
  std::uint64_t expected_models = 0;
  for (int w = 1; w <= 3; ++w) expected_models += oracle::model_count(w, 2);

  KripkeModel probe(s.layout, 1, {1});
  ClassicalStructure schema = translate_model(probe);
  Embedder embedder(s.sig, s.sem);
  TermPtr world = make_variable_term("W");
  std::vector<ModalProgram> modal;
  std::vector<ClassicalProgram> embedded, translated;
  for (const auto& f : s.formulas) {
    modal.emplace_back(*s.layout, LogicFamily::Modal, f);
    embedded.emplace_back(schema, beta_normalize(embedder.at(f, world)), std::vector<std::string>{"W"});
    translated.emplace_back(schema, standard_translation(f, s.sem, world), std::vector<std::string>{"W"});
  }

  std::uint64_t checks = 0, embed_bad = 0, st_bad = 0, oracle_bad = 0;
  for (const auto& m : s.models) {
    ClassicalStructure tau = translate_model(m);
    oracle::Frame frame = to_frame(m, *s.layout);
    for (std::size_t i = 0; i < s.formulas.size(); ++i)
      for (int w = 0; w < m.worlds; ++w) {
        bool v = modal[i].eval(m, w);
        embed_bad += embedded[i].eval(tau, &w) != v;
        st_bad += translated[i].eval(tau, &w) != v;
        oracle_bad += oracle::holds(frame, w, *s.props[i]) != v;
        ++checks;
      }
  }
  double t = clock.seconds();
  int max_depth = 0;
  for (const auto& p : s.props) max_depth = std::max(max_depth, oracle::depth(*p));
  Outcome o;
  o.pass = s.models.size() == expected_models && s.formulas.size() == 500 && max_depth <= 3 && embed_bad == 0 &&
           st_bad == 0 && oracle_bad == 0 && t < 60.0;
  o.detail = std::to_string(s.formulas.size()) + " formulas x " + std::to_string(s.models.size()) + " models (expected " +
             std::to_string(expected_models) + "), " + std::to_string(checks) + " world checks; disagreements: embed " +
             std::to_string(embed_bad) + ", standard translation " + std::to_string(st_bad) + ", reference " +
             std::to_string(oracle_bad) + "; " + fmt_seconds(t);
  return o;
}

// ---------------------------------------------------------------------------

struct Scheme {
  const char* name;
  ModalAxiom axiom;
  const char* formula;
  bool (*conforms)(const oracle::Frame&);
};

Outcome frame_correspondence() {
  const Scheme schemes[] = {
      {"T", ModalAxiom::T, "{$box}(p) => p", oracle::reflexive},
      {"B", ModalAxiom::B, "p => {$box}({$dia}(p))", oracle::symmetric},
      {"D", ModalAxiom::D, "{$box}(p) => {$dia}(p)", oracle::serial},
      {"4", ModalAxiom::Four, "{$box}(p) => {$box}({$box}(p))", oracle::transitive},
      {"5", ModalAxiom::Five, "{$dia}(p) => {$box}({$dia}(p))", oracle::euclidean},
  };
  Problem decls = parse_problem("tff(p_decl, type, p: $o).\n");
  Outcome o;
  for (const auto& sc : schemes) {
    FormulaPtr f = parse_formula(sc.formula);

    ModalSemantics sem;
    sem.default_modality = ModalitySpec{std::set<ModalAxiom>{ModalAxiom::K, sc.axiom}};
    auto layout = std::make_shared<const ModelLayout>(make_layout(decls, sem));
    ModalProgram prog(*layout, LogicFamily::Modal, f);
    EnumerateOptions eo;
    eo.bounds = {3, 1};
    std::uint64_t conforming = 0, violations = 0, misfiled = 0;
    enumerate_models(layout, eo, [&](const KripkeModel& m) {
      ++conforming;
      if (!sc.conforms(to_frame(m, *layout))) ++misfiled;
      for (int w = 0; w < m.worlds; ++w) violations += !prog.eval(m, w);
      return true;
    });
    // The same frames once the frame axioms act as premises instead.
    eo.frame_mode = FrameMode::Axioms;
    std::uint64_t via_axioms = enumerate_models(layout, eo, [](const KripkeModel&) { return true; });

    // Reference count of conforming models.
    std::uint64_t expected = 0;
    for (int W = 1; W <= 3; ++W)
      for (std::uint32_t code = 0; code < (1u << (W * W)); ++code) {
        oracle::Frame fr;
        fr.worlds = W;
        fr.succ.assign(W, 0);
        for (int k = 0; k < W * W; ++k)
          if ((code >> k) & 1) fr.succ[k / W] |= 1u << (k % W);
        if (sc.conforms(fr)) expected += std::uint64_t{1} << W;
      }

    ModalSemantics k;
    auto k_layout = std::make_shared<const ModelLayout>(make_layout(decls, k));
    ModalProgram k_prog(*k_layout, LogicFamily::Modal, f);
    EnumerateOptions ko;
    ko.bounds = {2, 1};
    std::optional<KripkeModel> falsifier;
    enumerate_models(k_layout, ko, [&](const KripkeModel& m) {
      if (sc.conforms(to_frame(m, *k_layout))) return true;
      for (int w = 0; w < m.worlds; ++w)
        if (!k_prog.eval(m, w)) {
          falsifier = m;
          return false;
        }
      return true;
    });

    bool ok = violations == 0 && misfiled == 0 && conforming == expected && via_axioms == expected && falsifier;
    o.pass = o.pass && ok;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + sc.name + ": " + std::to_string(conforming) +
                " conforming models, " + std::to_string(violations) + " violations, falsifier " +
                (falsifier ? "with " + std::to_string(falsifier->worlds) + " worlds" : std::string("missing"));
  }
  return o;
}

Outcome puzzles() {
  Stopwatch clock;
  DecideOptions opts;
  opts.bounds = {2, 6};
  auto run = [&](const char* file) { return decide(check_problem(load_problem(kData / file)), opts); };
  Verdict tim = run("puzzle_tim.p");
  Verdict betty = run("puzzle_betty.p");
  Verdict fred = run("puzzle_fred.p");
  double t = clock.seconds();

  bool betty_ok = betty.status == Status::Satisfiable && betty.witness && !serialize_model(*betty.witness).empty();
  Outcome o;
  o.pass = tim.status == Status::Unsatisfiable && !tim.witness && betty_ok && fred.status == Status::Unsatisfiable &&
           !fred.witness && t < 30.0;
  o.detail = "tim " + std::string(status_name(tim.status)) + ", betty " + std::string(status_name(betty.status)) +
             (betty.witness ? " (witness with " + std::to_string(betty.witness->worlds) + " worlds)" : "") + ", fred " +
             std::string(status_name(fred.status)) + "; worlds<=2 int<=6; " + fmt_seconds(t);
  return o;
}

Outcome generator_expansion() {
  auto files = cli::expand_generator(kData / "puzzle_generator.p");
  Outcome o;
  o.pass = files.size() == 3;
  for (const auto& f : files) {
    try {
      CheckedProblem checked = check_problem(parse_problem(f.text));
      type_check(checked.problem);
      EmbedOutput e = embed_problem(checked);
      bool ok = checked.semantics && checked.semantics->spec_name == f.spec && !e.units.empty();
      o.pass = o.pass && ok;
      o.detail += std::string(o.detail.empty() ? "" : ", ") + f.filename.string() + (ok ? " ok" : " wrong spec");
    } catch (const Error& e) {
      o.pass = false;
      o.detail += std::string(o.detail.empty() ? "" : ", ") + format_diagnostic(f.filename.string(), e);
    }
  }
  o.detail = std::to_string(files.size()) + " files: " + o.detail;
  return o;
}

Outcome duality_normality() {
  Sweep& s = sweep();
  std::vector<ModalProgram> dia, not_box_not, normal;
  for (std::size_t i = 0; i < s.props.size(); ++i) {
    std::string a = oracle::to_tptp(*s.props[i]);
    std::string b = oracle::to_tptp(*s.props[(i + 1) % s.props.size()]);
    dia.emplace_back(*s.layout, LogicFamily::Modal, parse_formula("{$dia}(" + a + ")"));
    not_box_not.emplace_back(*s.layout, LogicFamily::Modal, parse_formula("~ {$box}(~ (" + a + "))"));
    normal.emplace_back(*s.layout, LogicFamily::Modal,
                        parse_formula("{$box}((" + a + ") => (" + b + ")) => ({$box}(" + a + ") => {$box}(" + b + "))"));
  }
  std::uint64_t dual_bad = 0, normal_bad = 0, checks = 0;
  for (const auto& m : s.models)
    for (std::size_t i = 0; i < dia.size(); ++i)
      for (int w = 0; w < m.worlds; ++w) {
        dual_bad += dia[i].eval(m, w) != not_box_not[i].eval(m, w);
        normal_bad += !normal[i].eval(m, w);
        ++checks;
      }
  Outcome o;
  o.pass = dual_bad == 0 && normal_bad == 0 && checks > 0;
  o.detail = std::to_string(checks) + " world checks; duality violations " + std::to_string(dual_bad) +
             ", K-axiom violations " + std::to_string(normal_bad);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "corpus parses and round-trips", corpus_roundtrip},
      {2, "complex_spec queries", complex_spec_queries},
      {3, "missing logic specification", missing_spec},
      {4, "embedding agreement sweep", agreement_sweep},
      {5, "frame correspondence", frame_correspondence},
      {6, "puzzle verdicts", puzzles},
      {7, "generator expansion", generator_expansion},
      {8, "duality and normality", duality_normality},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
