#ifndef HARDMONO_ORACLE_HPP
#define HARDMONO_ORACLE_HPP

#include <string>
#include <vector>

#include "hardmono/aligner.hpp"

namespace hardmono {

enum class ActionKind { kWrite, kStep, kEnd };

struct Action {
  ActionKind kind;
  char32_t symbol = 0;  // set for kWrite only

  static Action write(char32_t c) { return {ActionKind::kWrite, c}; }
  static Action step() { return {ActionKind::kStep, 0}; }
  static Action end() { return {ActionKind::kEnd, 0}; }

  bool operator==(const Action& o) const { return kind == o.kind && symbol == o.symbol; }
};

using ActionSequence = std::vector<Action>;

// Alignment -> step/write program. A 1-to-0 link becomes a step; any
// other link writes its target symbol, followed by a step unless the
// next link is a 0-to-1 (the final link counts as "not 0-to-1", so a
// trailing step is always emitted). Terminated with a single end.
ActionSequence derive_actions(const AlignmentList& alignment);

struct ExecutionResult {
  std::u32string output;
  // 1-based attended position before each action was taken.
  std::vector<std::size_t> pointer_trace;
  bool hit_end = false;
};

// Deterministic transition system: pointer starts at the first input
// position; step advances it (clamped at n); write appends; end stops.
ExecutionResult execute_actions(const std::u32string& x, const ActionSequence& actions);

void validate_actions(const ActionSequence& actions);

// step as U+27F6, end as U+22A3, writes as their symbol.
std::string serialize_actions(const ActionSequence& actions);
ActionSequence parse_actions(const std::string& line);

}  // namespace hardmono

#endif
