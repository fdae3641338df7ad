#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sgt/core.hpp"

namespace sgt {

enum class Decision { Accept, Reject };

inline std::string to_string(Decision d) { return d == Decision::Accept ? "accept" : "reject"; }

struct Verdict {
  Decision decision = Decision::Accept;
  std::optional<Witness> witness;
  std::uint64_t queries_used = 0;
  std::uint64_t query_budget = 0;    // documented upper bound for this run
  bool exact_fallback = false;       // whole graph was read and decided exactly
  std::optional<double> estimate;    // two-sided estimators only
};

}  // namespace sgt
