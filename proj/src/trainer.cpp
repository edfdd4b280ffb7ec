#include "hardmono/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "hardmono/inference.hpp"
#include "hardmono/utf8.hpp"

namespace hardmono {

namespace {

int action_logit_index(const Action& a, const Vocabulary& vocab, Variant variant) {
  switch (a.kind) {
    case ActionKind::kWrite: {
      const int id = vocab.output_id(a.symbol);
      return id;
    }
    case ActionKind::kStep:
      if (variant == Variant::kSoft) throw DataError("soft variant has no step action");
      return vocab.step_id();
    case ActionKind::kEnd:
      return variant == Variant::kHard ? vocab.end_id() : static_cast<int>(vocab.num_outputs());
  }
  throw DataError("unknown action kind");
}

// Embedding table index in the shared (hard) action space.
int action_embedding_index(const Action& a, const Vocabulary& vocab) {
  switch (a.kind) {
    case ActionKind::kWrite: return vocab.output_id(a.symbol);
    case ActionKind::kStep: return vocab.step_id();
    case ActionKind::kEnd: return vocab.end_id();
  }
  throw DataError("unknown action kind");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ActionSequence actions_for_example(const TrainingExample& ex, Variant variant,
                                   const AlignmentModel& aligner) {
  if (variant == Variant::kSoft) {
    ActionSequence s;
    for (char32_t c : ex.target) s.push_back(Action::write(c));
    s.push_back(Action::end());
    return s;
  }
  return derive_actions(align(ex.source, ex.target, aligner));
}

int example_loss(Graph& g, ModelParams& params, const TrainingExample& ex,
                 const ActionSequence& actions, std::vector<std::size_t>* pointer_trace) {
  validate_actions(actions);
  const Vocabulary& vocab = params.vocab;
  const Variant variant = params.config.variant;

  std::vector<int> char_ids;
  char_ids.reserve(ex.source.size());
  for (char32_t c : ex.source) char_ids.push_back(vocab.input_id(c));
  if (char_ids.empty()) char_ids.push_back(Vocabulary::kInputBos);
  const std::size_t n = char_ids.size();

  EncodeResult enc = encode_states(g, char_ids, params);
  const int f_vec = attribute_vector(g, params, vocab.attribute_slot_ids(ex.attributes));
  DecoderState state = decoder_initial_state(g, params, enc);

  std::vector<int> step_losses;
  for (const Action& a : actions) {
    if (pointer_trace) pointer_trace->push_back(state.pointer);
    int logits;
    if (variant == Variant::kHard) {
      HardStepResult step = decode_step_hard(g, state, enc.outputs, f_vec, params);
      logits = step.logits;
      state = step.state;
    } else {
      SoftStepResult step = decode_step_soft(g, state, enc.outputs, f_vec, params);
      logits = step.logits;
      state = step.state;
    }
    step_losses.push_back(g.pick_neg_log_softmax(logits, action_logit_index(a, vocab, variant)));
    commit_action(g, state, action_embedding_index(a, vocab), n, params);
  }
  return g.add(step_losses);
}

int effective_max_epochs(const TrainConfig& config, std::size_t corpus_size) {
  if (corpus_size > 200000) return std::min(config.max_epochs, 5);
  if (corpus_size > 50000) return std::min(config.max_epochs, 20);
  return config.max_epochs;
}

namespace {

double corpus_accuracy(const Corpus& corpus, ModelParams& params, int max_write) {
  if (corpus.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& ex : corpus) {
    if (greedy_decode(ex.source, ex.attributes, params, max_write).output == ex.target) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(corpus.size());
}

}  // namespace

TrainResult train(const Corpus& corpus, const Corpus& dev, const TrainConfig& config) {
  if (corpus.empty()) throw DataError("train: empty corpus");
  if (config.max_epochs < 1) throw DataError("train: max_epochs must be >= 1");

  const Vocabulary vocab = build_vocabulary(corpus);
  Rng rng(config.seed);
  ModelParams params = ModelParams::create(config.net, vocab, rng);
  Adadelta optimizer(config.adadelta_rho, config.adadelta_eps);
  const std::vector<Param*> all = params.all_params();

  AlignmentModel aligner;
  if (config.net.variant == Variant::kHard) {
    std::vector<std::pair<std::u32string, std::u32string>> pairs;
    pairs.reserve(corpus.size());
    for (const auto& ex : corpus) pairs.emplace_back(ex.source, ex.target);
    aligner = train_aligner(pairs, config.aligner_iterations, config.aligner_smoothing);
  }
  std::vector<ActionSequence> gold;
  gold.reserve(corpus.size());
  for (const auto& ex : corpus) gold.push_back(actions_for_example(ex, config.net.variant, aligner));

  TrainResult result;
  result.best.model = params;  // epoch-0 snapshot in case dev never improves
  result.best.dev_accuracy = -1.0;

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);

  const int epochs = effective_max_epochs(config, corpus.size());
  int epochs_since_best = 0;
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng.engine());
    double loss_sum = 0.0;
    for (std::size_t idx : order) {
      Graph g;
      const int loss = example_loss(g, params, corpus[idx], gold[idx]);
      const double loss_value = g.value(loss)(0, 0);
      if (!std::isfinite(loss_value)) {
        std::ostringstream os;
        os << "non-finite loss at epoch " << epoch << ", example " << idx << " ("
           << utf8::encode(corpus[idx].source) << " -> " << utf8::encode(corpus[idx].target) << ")";
        throw NumericError(os.str());
      }
      loss_sum += loss_value;
      g.backward(loss);
      optimizer.update(all);
    }

    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(corpus.size());
    m.train_accuracy = corpus_accuracy(corpus, params, config.max_write);
    if (!dev.empty() && (epoch % std::max(config.dev_eval_every, 1) == 0 || epoch == epochs)) {
      m.dev_accuracy = corpus_accuracy(dev, params, config.max_write);
      m.dev_evaluated = true;
    }
    result.metrics.push_back(m);

    const double selection_acc = m.dev_evaluated ? m.dev_accuracy : m.train_accuracy;
    if (selection_acc > result.best.dev_accuracy) {
      result.best.model = params;
      result.best.epoch = epoch;
      result.best.dev_accuracy = selection_acc;
      epochs_since_best = 0;
    } else {
      ++epochs_since_best;
      if (config.patience > 0 && epochs_since_best >= config.patience) break;
    }
  }
  return result;
}

std::string metrics_to_csv(const std::vector<EpochMetrics>& metrics) {
  std::string out = "epoch,train_loss,train_acc,dev_acc\n";
  for (const auto& m : metrics) {
    out += std::to_string(m.epoch) + "," + format_double(m.train_loss) + "," +
           format_double(m.train_accuracy) + ",";
    if (m.dev_evaluated) out += format_double(m.dev_accuracy);
    out += "\n";
  }
  return out;
}

}  // namespace hardmono
