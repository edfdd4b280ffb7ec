#include "hardmono/network.hpp"

#include <algorithm>

namespace hardmono {

int ModelParams::output_dim() const {
  return config.variant == Variant::kHard ? static_cast<int>(vocab.num_actions())
                                          : static_cast<int>(vocab.num_outputs()) + 1;
}

int ModelParams::decoder_input_dim() const {
  return 2 * config.hidden_dim +
         config.attr_emb_dim * static_cast<int>(vocab.attribute_names.size()) +
         config.char_emb_dim;
}

ModelParams ModelParams::create(const NetworkConfig& config, const Vocabulary& vocab, Rng& rng) {
  ModelParams p;
  p.config = config;
  p.vocab = vocab;
  const int E = config.char_emb_dim, F = config.attr_emb_dim, H = config.hidden_dim;

  for (std::size_t i = 0; i < vocab.num_inputs(); ++i)
    p.char_emb.emplace_back(glorot_uniform(E, 1, rng));
  for (std::size_t i = 0; i < vocab.num_actions() + 1; ++i)  // +1: BOS feedback entry
    p.action_emb.emplace_back(glorot_uniform(E, 1, rng));
  for (const auto& values : vocab.attribute_values) {
    std::vector<Param> table;
    for (std::size_t i = 0; i < values.size(); ++i) table.emplace_back(glorot_uniform(F, 1, rng));
    p.attr_emb.push_back(std::move(table));
  }

  p.enc_fw = LstmParams::create(E, H, config.num_layers, rng);
  p.enc_bw = LstmParams::create(E, H, config.num_layers, rng);
  p.dec = LstmParams::create(p.decoder_input_dim(), H, config.num_layers, rng);
  p.enc_fw.tie_output_peephole = config.tie_output_peephole;
  p.enc_bw.tie_output_peephole = config.tie_output_peephole;
  p.dec.tie_output_peephole = config.tie_output_peephole;

  p.proj_w = Param(glorot_uniform(p.output_dim(), H, rng));
  p.proj_b = Param(Mat::Zero(p.output_dim(), 1));
  if (config.variant == Variant::kSoft) {
    p.attn_bilinear = Param(glorot_uniform(H, 2 * H, rng));
  }
  return p;
}

void ModelParams::visit(const std::function<void(const std::string&, Param&)>& fn) {
  for (std::size_t i = 0; i < char_emb.size(); ++i) fn("char_emb." + std::to_string(i), char_emb[i]);
  for (std::size_t i = 0; i < action_emb.size(); ++i)
    fn("action_emb." + std::to_string(i), action_emb[i]);
  for (std::size_t a = 0; a < attr_emb.size(); ++a)
    for (std::size_t i = 0; i < attr_emb[a].size(); ++i)
      fn("attr_emb." + std::to_string(a) + "." + std::to_string(i), attr_emb[a][i]);
  enc_fw.visit("enc_fw", fn);
  enc_bw.visit("enc_bw", fn);
  dec.visit("dec", fn);
  fn("proj_w", proj_w);
  fn("proj_b", proj_b);
  if (config.variant == Variant::kSoft) fn("attn_bilinear", attn_bilinear);
}

std::vector<Param*> ModelParams::all_params() {
  std::vector<Param*> out;
  visit([&](const std::string&, Param& p) { out.push_back(&p); });
  return out;
}

EncodeResult encode_states(Graph& g, const std::vector<int>& char_ids, ModelParams& params) {
  if (char_ids.empty()) throw ShapeError("encode: empty input sequence");
  const std::size_t n = char_ids.size();
  std::vector<int> emb(n);
  for (std::size_t i = 0; i < n; ++i) {
    emb[i] = g.param(params.char_emb[static_cast<std::size_t>(char_ids[i])]);
  }

  std::vector<int> fw(n), bw(n);
  LstmStackState fw_state = lstm_initial_state(g, params.enc_fw);
  for (std::size_t i = 0; i < n; ++i) {
    fw_state = lstm_stack_step(g, params.enc_fw, emb[i], fw_state);
    fw[i] = fw_state.layers.back().h;
  }
  LstmStackState bw_state = lstm_initial_state(g, params.enc_bw);
  for (std::size_t i = n; i-- > 0;) {
    bw_state = lstm_stack_step(g, params.enc_bw, emb[i], bw_state);
    bw[i] = bw_state.layers.back().h;
  }

  EncodeResult r;
  r.fw_final = fw_state;
  r.bw_final = bw_state;
  r.outputs.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.outputs[i] = g.concat({fw[i], bw[i]});
  return r;
}

std::vector<int> encode(Graph& g, const std::vector<int>& char_ids, ModelParams& params) {
  return encode_states(g, char_ids, params).outputs;
}

DecoderState decoder_initial_state(Graph& g, ModelParams& params, const EncodeResult& enc) {
  DecoderState s;
  s.lstm = lstm_initial_state(g, params.dec);
  if (params.config.init_decoder_from_encoder) {
    const int half = g.input(Mat::Constant(params.config.hidden_dim, 1, 0.5));
    for (std::size_t l = 0; l < s.lstm.layers.size(); ++l) {
      s.lstm.layers[l].h =
          g.cmul(g.add(enc.fw_final.layers[l].h, enc.bw_final.layers[l].h), half);
    }
  }
  s.pointer = 1;
  s.prev_action_emb = g.param(params.action_emb[static_cast<std::size_t>(params.action_bos_index())]);
  s.initialized = true;
  return s;
}

int attribute_vector(Graph& g, ModelParams& params, const std::vector<int>& slot_ids) {
  if (slot_ids.size() != params.attr_emb.size()) {
    throw ShapeError("attribute_vector: slot count does not match schema");
  }
  if (slot_ids.empty()) return -1;
  std::vector<int> parts;
  for (std::size_t a = 0; a < slot_ids.size(); ++a) {
    parts.push_back(g.param(params.attr_emb[a][static_cast<std::size_t>(slot_ids[a])]));
  }
  return g.concat(parts);
}

namespace {

int decoder_input(Graph& g, int context, int f_vec, int prev_action_emb) {
  std::vector<int> parts = {context};
  if (f_vec >= 0) parts.push_back(f_vec);
  parts.push_back(prev_action_emb);
  return g.concat(parts);
}

}  // namespace

HardStepResult decode_step_hard(Graph& g, const DecoderState& state,
                                const std::vector<int>& encoded, int f_vec, ModelParams& params) {
  if (state.pointer < 1 || state.pointer > encoded.size()) {
    throw ShapeError("decode_step_hard: pointer out of bounds");
  }
  const int context = encoded[state.pointer - 1];
  const int z = decoder_input(g, context, f_vec, state.prev_action_emb);
  HardStepResult r;
  r.state = state;
  r.state.lstm = lstm_stack_step(g, params.dec, z, state.lstm);
  r.logits = g.add(g.matmul(g.param(params.proj_w), r.state.lstm.layers.back().h),
                   g.param(params.proj_b));
  return r;
}

SoftStepResult decode_step_soft(Graph& g, const DecoderState& state,
                                const std::vector<int>& encoded, int f_vec, ModelParams& params) {
  const int X = g.hconcat(std::span<const int>(encoded.data(), encoded.size()));
  const int scored = g.matmul(g.param(params.attn_bilinear), X);       // H x n
  const int h_prev = state.lstm.layers.back().h;
  const int scores = g.matmul(g.transpose(scored), h_prev);            // n x 1
  SoftStepResult r;
  r.attention = g.softmax(scores);
  const int context = g.matmul(X, r.attention);                        // 2H x 1
  const int z = decoder_input(g, context, f_vec, state.prev_action_emb);
  r.state = state;
  r.state.lstm = lstm_stack_step(g, params.dec, z, state.lstm);
  r.logits = g.add(g.matmul(g.param(params.proj_w), r.state.lstm.layers.back().h),
                   g.param(params.proj_b));
  return r;
}

void commit_action(Graph& g, DecoderState& state, int action_id, std::size_t n,
                   ModelParams& params) {
  state.prev_action_emb = g.param(params.action_emb[static_cast<std::size_t>(action_id)]);
  if (action_id == params.vocab.step_id() && params.config.variant == Variant::kHard) {
    state = advance_pointer(std::move(state), n);
  }
}

DecoderState advance_pointer(DecoderState state, std::size_t n) {
  state.pointer = std::min(state.pointer + 1, std::max<std::size_t>(n, 1));
  return state;
}

}  // namespace hardmono
