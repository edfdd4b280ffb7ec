#include "hardmono/inference.hpp"

#include <algorithm>

namespace hardmono {

namespace {

int argmax_lowest_id(const Mat& v) {
  int best = 0;
  for (Eigen::Index i = 1; i < v.rows(); ++i) {
    if (v(i, 0) > v(best, 0)) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace

PredictResult greedy_decode(const std::u32string& x,
                            const std::map<std::string, std::string>& attributes,
                            ModelParams& params, int max_write, bool collect_attention) {
  const Vocabulary& vocab = params.vocab;
  const bool hard = params.config.variant == Variant::kHard;

  std::vector<int> char_ids;
  char_ids.reserve(x.size());
  for (char32_t c : x) char_ids.push_back(vocab.input_id(c));
  if (char_ids.empty()) char_ids.push_back(Vocabulary::kInputBos);
  const std::size_t n = char_ids.size();

  Graph g;
  EncodeResult enc = encode_states(g, char_ids, params);
  const int f_vec = attribute_vector(g, params, vocab.attribute_slot_ids(attributes));
  DecoderState state = decoder_initial_state(g, params, enc);

  PredictResult r;
  const std::size_t action_cap = n + static_cast<std::size_t>(max_write);
  std::size_t writes = 0;
  while (r.actions.size() < action_cap && writes < static_cast<std::size_t>(max_write)) {
    int picked;
    if (hard) {
      r.pointer_trace.push_back(state.pointer);
      HardStepResult step = decode_step_hard(g, state, enc.outputs, f_vec, params);
      ++r.decoder_steps;
      picked = argmax_lowest_id(g.value(step.logits));
      state = step.state;
      commit_action(g, state, picked, n, params);
      if (picked == vocab.step_id()) {
        r.actions.push_back(Action::step());
        continue;
      }
    } else {
      SoftStepResult step = decode_step_soft(g, state, enc.outputs, f_vec, params);
      ++r.decoder_steps;
      if (collect_attention) r.attention.push_back(g.value(step.attention));
      const int soft_pick = argmax_lowest_id(g.value(step.logits));
      // soft output space: writes then end at |output vocab|
      picked = soft_pick == static_cast<int>(vocab.num_outputs()) ? vocab.end_id() : soft_pick;
      state = step.state;
      commit_action(g, state, picked, n, params);
    }
    if (picked == vocab.end_id()) {
      r.actions.push_back(Action::end());
      return r;
    }
    r.actions.push_back(Action::write(vocab.output_symbols[static_cast<std::size_t>(picked)]));
    r.output.push_back(vocab.output_symbols[static_cast<std::size_t>(picked)]);
    ++writes;
  }
  r.truncated = true;
  return r;
}

std::u32string ensemble_predict(std::vector<ModelParams*>& members, const std::u32string& x,
                                const std::map<std::string, std::string>& attributes,
                                int max_write) {
  if (members.empty()) throw DataError("ensemble_predict: no members");
  for (const ModelParams* m : members) {
    if (!(m->vocab == members[0]->vocab)) {
      throw DataError("ensemble_predict: member vocabularies differ");
    }
  }
  std::vector<std::u32string> outputs;
  outputs.reserve(members.size());
  for (ModelParams* m : members) outputs.push_back(greedy_decode(x, attributes, *m, max_write).output);

  std::size_t best = 0, best_count = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    std::size_t count = 0;
    for (const auto& o : outputs) count += (o == outputs[i]);
    if (count > best_count) {
      best_count = count;
      best = i;
    }
  }
  return outputs[best];
}

}  // namespace hardmono
