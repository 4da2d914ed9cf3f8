// Bounded decision of small modal problems. For each world count and carrier
// size tuple in enumeration order the problem is grounded to CNF and handed
// to the SAT solver; the first model found is shrunk to the least model of
// that size in enumeration order, so witnesses match what exhaustive
// enumeration would report first.

#ifndef TPTPNC_DECIDE_HPP_
#define TPTPNC_DECIDE_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "tptpnc/enumerate.hpp"
#include "tptpnc/kripke.hpp"
#include "tptpnc/logic_spec.hpp"

namespace tptpnc {

enum class Status { Theorem, CounterSatisfiable, Satisfiable, Unsatisfiable, Unknown };

std::string_view status_name(Status s);

struct Verdict {
  Status status = Status::Unknown;
  std::optional<KripkeModel> witness;
  Bounds bounds;
  bool complete = false;  // the bounds are known to suffice for this problem
  std::string note;
};

struct DecideOptions {
  Bounds bounds;
  FrameMode frame_mode = FrameMode::Conditions;
  std::uint64_t cap = 10'000'000;  // clauses per grounding
};

// The problem must be resolved (canonical connectives), for example the
// output of check_problem.
Verdict decide(const Problem& problem, const ModalSemantics& sem, const DecideOptions& options = {});
Verdict decide(const CheckedProblem& checked, const DecideOptions& options = {});

// Smallest world count for which a propositional problem is decided
// completely, or nullopt when no such bound is known.
std::optional<int> sufficient_worlds(const Problem& problem, const ModalSemantics& sem);

}  // namespace tptpnc

#endif  // TPTPNC_DECIDE_HPP_
