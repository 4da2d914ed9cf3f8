// Exhaustive enumeration of Kripke models up to size bounds.

#ifndef TPTPNC_ENUMERATE_HPP_
#define TPTPNC_ENUMERATE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "tptpnc/kripke.hpp"

namespace tptpnc {

struct Bounds {
  int max_worlds = 3;
  int max_domain = 4;
};

// Conditions: only frames satisfying the index's frame conditions are
// produced. Axioms: every relation is a candidate and the classical frame
// axioms act as premises filtering them. Both select the same frames.
enum class FrameMode { Conditions, Axioms };

struct EnumerateOptions {
  Bounds bounds;
  int min_worlds = 1;
  int min_domain = 1;
  FrameMode frame_mode = FrameMode::Conditions;
  std::uint64_t cap = 10'000'000;  // candidate models
};

bool satisfies(const KripkeModel& m, int index, FrameCondition c);

// Carrier size tuples in enumeration order (first sort most significant).
std::vector<std::vector<int>> carrier_sizes(const ModelLayout& layout, const EnumerateOptions& options);

// Number of candidates the enumeration inspects; saturates at cap + 1.
std::uint64_t count_candidates(const ModelLayout& layout, const EnumerateOptions& options);

// Calls `visit` for every model within the bounds that satisfies the frame
// and domain constraints, in a fixed order: worlds, carrier sizes, then the
// relations, domains and interpretation tables as digits of an odometer with
// the first digit most significant. Stops when `visit` returns false.
// Returns the number of models visited. Throws ResourceError when the
// number of candidates exceeds the cap.
std::uint64_t enumerate_models(std::shared_ptr<const ModelLayout> layout, const EnumerateOptions& options,
                               const std::function<bool(const KripkeModel&)>& visit);

}  // namespace tptpnc

#endif  // TPTPNC_ENUMERATE_HPP_
