#ifndef HARDMONO_LSTM_HPP
#define HARDMONO_LSTM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hardmono/graph.hpp"
#include "hardmono/rng.hpp"

namespace hardmono {

// One layer of the peephole LSTM:
//   i = sigma(Wix x + Wih h + Wic c + bi)
//   f = sigma(Wfx x + Wfh h + Wfc c + bf)
//   ct~ = tanh(Wcx x + Wch h + bc)
//   c' = c . f + ct~ . i
//   o = sigma(Wox x + Woh h + Woc c' + bo)
//   h' = tanh(c') . o
// Peepholes are full HxH matrices.
struct LstmLayerParams {
  Param Wix, Wih, Wic, bi;
  Param Wfx, Wfh, Wfc, bf;
  Param Wcx, Wch, bc;
  Param Wox, Woh, Woc, bo;

  int input_dim = 0;
  int hidden_dim = 0;

  static LstmLayerParams create(int input_dim, int hidden_dim, Rng& rng);
  void visit(const std::string& prefix, const std::function<void(const std::string&, Param&)>& fn);
};

struct LstmParams {
  std::vector<LstmLayerParams> layers;
  // Replication switch: reuse Wox as the output-gate peephole (requires
  // input_dim == hidden_dim on every layer).
  bool tie_output_peephole = false;

  static LstmParams create(int input_dim, int hidden_dim, int num_layers, Rng& rng);
  void visit(const std::string& prefix, const std::function<void(const std::string&, Param&)>& fn);
};

struct LstmStepResult {
  int h;
  int c;
};

LstmStepResult lstm_step(Graph& g, LstmLayerParams& p, int x, int h_prev, int c_prev,
                         bool tie_output_peephole = false);

// Hidden/cell node ids per layer.
struct LstmStackState {
  std::vector<LstmStepResult> layers;
};

// Zero-initialized stack state.
LstmStackState lstm_initial_state(Graph& g, const LstmParams& p);

// Feeds x through all layers; returns the new state (top layer h is
// layers.back().h).
LstmStackState lstm_stack_step(Graph& g, LstmParams& p, int x, const LstmStackState& prev);

}  // namespace hardmono

#endif
