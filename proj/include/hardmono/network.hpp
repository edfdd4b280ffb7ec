#ifndef HARDMONO_NETWORK_HPP
#define HARDMONO_NETWORK_HPP

#include <functional>
#include <string>
#include <vector>

#include "hardmono/data.hpp"
#include "hardmono/lstm.hpp"

namespace hardmono {

enum class Variant { kHard, kSoft };

struct NetworkConfig {
  int char_emb_dim = 100;   // E
  int attr_emb_dim = 20;    // F
  int hidden_dim = 100;     // H
  int num_layers = 2;
  Variant variant = Variant::kHard;
  bool tie_output_peephole = false;
  bool init_decoder_from_encoder = false;
};

struct ModelParams {
  NetworkConfig config;
  Vocabulary vocab;

  std::vector<Param> char_emb;    // per input symbol, E x 1
  std::vector<Param> action_emb;  // per action symbol + trailing BOS entry, E x 1
  std::vector<std::vector<Param>> attr_emb;  // per attribute slot, per value, F x 1
  LstmParams enc_fw, enc_bw, dec;
  Param proj_w;  // out_dim x H
  Param proj_b;  // out_dim x 1
  Param attn_bilinear;  // H x 2H, soft variant only

  // Hard: full action space (writes + step + end). Soft: writes + end.
  int output_dim() const;
  int action_bos_index() const { return static_cast<int>(action_emb.size()) - 1; }
  int decoder_input_dim() const;

  static ModelParams create(const NetworkConfig& config, const Vocabulary& vocab, Rng& rng);
  void visit(const std::function<void(const std::string&, Param&)>& fn);
  std::vector<Param*> all_params();
};

struct EncodeResult {
  std::vector<int> outputs;  // n nodes, each 2H x 1
  LstmStackState fw_final, bw_final;
};

// Position i (0-based) concatenates the forward state after reading
// x[0..i] with the backward state after reading x[n-1..i]; each output
// is 2H wide.
EncodeResult encode_states(Graph& g, const std::vector<int>& char_ids, ModelParams& params);
std::vector<int> encode(Graph& g, const std::vector<int>& char_ids, ModelParams& params);

struct DecoderState {
  LstmStackState lstm;
  std::size_t pointer = 1;  // 1-based attended position (hard variant)
  int prev_action_emb = -1;  // graph node id
  bool initialized = false;
};

DecoderState decoder_initial_state(Graph& g, ModelParams& params, const EncodeResult& enc);

// Attribute slot embeddings concatenated to an (F*l) x 1 node; l = 0
// yields no node (id -1).
int attribute_vector(Graph& g, ModelParams& params, const std::vector<int>& slot_ids);

struct HardStepResult {
  int logits;  // output_dim x 1
  DecoderState state;
};

HardStepResult decode_step_hard(Graph& g, const DecoderState& state,
                                const std::vector<int>& encoded, int f_vec, ModelParams& params);

struct SoftStepResult {
  int logits;
  int attention;  // n x 1 weights
  DecoderState state;
};

SoftStepResult decode_step_soft(Graph& g, const DecoderState& state,
                                const std::vector<int>& encoded, int f_vec, ModelParams& params);

// Call after the caller commits an action: updates the feedback
// embedding and, for step, promotes the pointer.
void commit_action(Graph& g, DecoderState& state, int action_id, std::size_t n,
                   ModelParams& params);

DecoderState advance_pointer(DecoderState state, std::size_t n);

}  // namespace hardmono

#endif
