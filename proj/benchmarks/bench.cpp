#include <benchmark/benchmark.h>

#include <filesystem>
#include <map>

#include "tptpnc/decide.hpp"
#include "tptpnc/embedding.hpp"
#include "tptpnc/enumerate.hpp"
#include "tptpnc/evaluate.hpp"
#include "tptpnc/parser.hpp"

namespace fs = std::filesystem;
using namespace tptpnc;

namespace {

const fs::path kData = TPTPNC_BENCH_DATA;

std::map<std::string, std::string> corpus() {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(kData))
    if (e.path().extension() == ".p") files[e.path().filename().string()] = read_text_file(e.path());
  return files;
}

void BM_ParseCorpus(benchmark::State& state) {
  auto files = corpus();
  std::size_t bytes = 0;
  for (const auto& [name, text] : files) bytes += text.size();
  for (auto _ : state)
    for (const auto& [name, text] : files) benchmark::DoNotOptimize(parse_problem(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_ParseCorpus);

void BM_EmbedPuzzle(benchmark::State& state) {
  CheckedProblem checked = check_problem(load_problem(kData / "puzzle_fred.p"));
  for (auto _ : state) benchmark::DoNotOptimize(embed_problem(checked));
}
BENCHMARK(BM_EmbedPuzzle);

// Every model over two atoms with up to range(0) worlds against a fixed
// depth-three formula.
void BM_EvaluateSweep(benchmark::State& state) {
  Problem decls = parse_problem("tff(p_decl, type, p: $o).\ntff(q_decl, type, q: $o).\n");
  ModalSemantics sem;
  auto layout = std::make_shared<const ModelLayout>(make_layout(decls, sem));
  ModalProgram prog(*layout, LogicFamily::Modal,
                    parse_formula("{$box}({$dia}(p) => {$box}(q | {$dia}(~ p))) <=> ({$dia}(q) & ~ {$box}(p))"));
  EnumerateOptions eo;
  eo.bounds = {static_cast<int>(state.range(0)), 1};
  std::vector<KripkeModel> models;
  enumerate_models(layout, eo, [&](const KripkeModel& m) {
    models.push_back(m);
    return true;
  });
  for (auto _ : state) {
    int hits = 0;
    for (const auto& m : models)
      for (int w = 0; w < m.worlds; ++w) hits += prog.eval(m, w);
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * models.size()));
}
BENCHMARK(BM_EvaluateSweep)->Arg(2)->Arg(3);

void BM_Enumerate(benchmark::State& state) {
  Problem decls = parse_problem("tff(p_decl, type, p: $i > $o).\n");
  ModalSemantics sem;
  sem.default_domain = DomainKind::Cumulative;
  auto layout = std::make_shared<const ModelLayout>(make_layout(decls, sem));
  EnumerateOptions eo;
  eo.bounds = {2, 2};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_models(layout, eo, [](const KripkeModel&) { return true; }));
}
BENCHMARK(BM_Enumerate);

void BM_DecidePuzzle(benchmark::State& state, const char* file) {
  CheckedProblem checked = check_problem(load_problem(kData / file));
  DecideOptions o;
  o.bounds = {2, 6};
  for (auto _ : state) benchmark::DoNotOptimize(decide(checked, o));
}
BENCHMARK_CAPTURE(BM_DecidePuzzle, tim, "puzzle_tim.p")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DecidePuzzle, betty, "puzzle_betty.p")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DecidePuzzle, fred, "puzzle_fred.p")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
