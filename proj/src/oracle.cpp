#include "hardmono/oracle.hpp"

#include <algorithm>

#include "hardmono/utf8.hpp"

namespace hardmono {

ActionSequence derive_actions(const AlignmentList& alignment) {
  ActionSequence s;
  // A write pair followed by insertions defers its step to the end of
  // the insertion run, so every source character is consumed exactly
  // once: the step count always equals |x|.
  bool step_withheld = false;
  for (std::size_t i = 0; i < alignment.size(); ++i) {
    const AlignmentPair& pair = alignment[i];
    if (!pair.source && !pair.target) throw DataError("derive_actions: empty alignment pair");
    const bool next_is_insertion = i + 1 < alignment.size() && alignment[i + 1].zero_to_one();
    if (pair.one_to_zero()) {
      s.push_back(Action::step());
    } else if (pair.zero_to_one()) {
      s.push_back(Action::write(*pair.target));
      if (!next_is_insertion && step_withheld) {
        s.push_back(Action::step());
        step_withheld = false;
      }
    } else {
      s.push_back(Action::write(*pair.target));
      if (next_is_insertion) {
        step_withheld = true;
      } else {
        s.push_back(Action::step());
      }
    }
  }
  s.push_back(Action::end());
  return s;
}

ExecutionResult execute_actions(const std::u32string& x, const ActionSequence& actions) {
  validate_actions(actions);
  ExecutionResult r;
  const std::size_t n = x.size();
  std::size_t pointer = 1;
  for (const Action& a : actions) {
    r.pointer_trace.push_back(pointer);
    switch (a.kind) {
      case ActionKind::kStep:
        pointer = std::min(pointer + 1, std::max<std::size_t>(n, 1));
        break;
      case ActionKind::kWrite:
        r.output.push_back(a.symbol);
        break;
      case ActionKind::kEnd:
        r.hit_end = true;
        return r;
    }
  }
  return r;
}

void validate_actions(const ActionSequence& actions) {
  if (actions.empty()) throw DataError("action sequence is empty");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const bool is_end = actions[i].kind == ActionKind::kEnd;
    const bool is_last = i + 1 == actions.size();
    if (is_end != is_last) {
      throw DataError(is_end ? "end action before the last position"
                             : "action sequence does not finish with end");
    }
  }
}

namespace {
constexpr char32_t kStepGlyph = U'⟶';
constexpr char32_t kEndGlyph = U'⊣';
}  // namespace

std::string serialize_actions(const ActionSequence& actions) {
  std::u32string out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) out.push_back(U' ');
    switch (actions[i].kind) {
      case ActionKind::kWrite: out.push_back(actions[i].symbol); break;
      case ActionKind::kStep: out.push_back(kStepGlyph); break;
      case ActionKind::kEnd: out.push_back(kEndGlyph); break;
    }
  }
  return utf8::encode(out);
}

ActionSequence parse_actions(const std::string& line) {
  ActionSequence out;
  for (char32_t cp : utf8::decode(line)) {
    if (cp == U' ') continue;
    if (cp == kStepGlyph) {
      out.push_back(Action::step());
    } else if (cp == kEndGlyph) {
      out.push_back(Action::end());
    } else {
      out.push_back(Action::write(cp));
    }
  }
  validate_actions(out);
  return out;
}

}  // namespace hardmono
