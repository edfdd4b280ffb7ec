#ifndef HARDMONO_TRAINER_HPP
#define HARDMONO_TRAINER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hardmono/adadelta.hpp"
#include "hardmono/checkpoint.hpp"
#include "hardmono/data.hpp"
#include "hardmono/network.hpp"
#include "hardmono/oracle.hpp"

namespace hardmono {

struct TrainConfig {
  int max_epochs = 100;
  int patience = 0;  // 0 disables early stopping
  std::uint64_t seed = 1;
  NetworkConfig net;
  double adadelta_rho = 0.95;
  double adadelta_eps = 1e-6;
  int dev_eval_every = 1;
  int max_write = 50;
  int aligner_iterations = 5;
  double aligner_smoothing = 0.1;
};

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double dev_accuracy = 0.0;
  bool dev_evaluated = false;
};

struct TrainResult {
  Checkpoint best;
  std::vector<EpochMetrics> metrics;
};

// Gold program for one example: oracle actions (hard) or the target
// characters followed by end (soft).
ActionSequence actions_for_example(const TrainingExample& ex, Variant variant,
                                   const AlignmentModel& aligner);

// Teacher-forced cross-entropy over the action sequence. Returns the
// scalar loss node id; the caller runs backward on it. pointer_trace,
// when non-null, receives the 1-based attended position per action.
int example_loss(Graph& g, ModelParams& params, const TrainingExample& ex,
                 const ActionSequence& actions, std::vector<std::size_t>* pointer_trace = nullptr);

// Full training loop: per-example ADADELTA updates in seed-shuffled
// order, per-epoch greedy dev evaluation, best-dev checkpoint retained.
TrainResult train(const Corpus& corpus, const Corpus& dev, const TrainConfig& config);

// Corpus-size epoch caps: 5 epochs above 200k examples, 20 above 50k,
// else the configured maximum.
int effective_max_epochs(const TrainConfig& config, std::size_t corpus_size);

std::string metrics_to_csv(const std::vector<EpochMetrics>& metrics);

}  // namespace hardmono

#endif
