#include "hardmono/lstm.hpp"

#include <cmath>

namespace hardmono {

Mat glorot_uniform(int rows, int cols, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform(-bound, bound);
  return m;
}

LstmLayerParams LstmLayerParams::create(int input_dim, int hidden_dim, Rng& rng) {
  LstmLayerParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  const int D = input_dim, H = hidden_dim;
  auto wx = [&] { return Param(glorot_uniform(H, D, rng)); };
  auto wh = [&] { return Param(glorot_uniform(H, H, rng)); };
  auto bias = [&] { return Param(Mat::Zero(H, 1)); };
  p.Wix = wx(); p.Wih = wh(); p.Wic = wh(); p.bi = bias();
  p.Wfx = wx(); p.Wfh = wh(); p.Wfc = wh(); p.bf = bias();
  p.Wcx = wx(); p.Wch = wh(); p.bc = bias();
  p.Wox = wx(); p.Woh = wh(); p.Woc = wh(); p.bo = bias();
  return p;
}

void LstmLayerParams::visit(const std::string& prefix,
                            const std::function<void(const std::string&, Param&)>& fn) {
  fn(prefix + ".Wix", Wix); fn(prefix + ".Wih", Wih); fn(prefix + ".Wic", Wic); fn(prefix + ".bi", bi);
  fn(prefix + ".Wfx", Wfx); fn(prefix + ".Wfh", Wfh); fn(prefix + ".Wfc", Wfc); fn(prefix + ".bf", bf);
  fn(prefix + ".Wcx", Wcx); fn(prefix + ".Wch", Wch); fn(prefix + ".bc", bc);
  fn(prefix + ".Wox", Wox); fn(prefix + ".Woh", Woh); fn(prefix + ".Woc", Woc); fn(prefix + ".bo", bo);
}

LstmParams LstmParams::create(int input_dim, int hidden_dim, int num_layers, Rng& rng) {
  LstmParams p;
  for (int l = 0; l < num_layers; ++l) {
    const int d = (l == 0) ? input_dim : hidden_dim;
    p.layers.push_back(LstmLayerParams::create(d, hidden_dim, rng));
  }
  return p;
}

void LstmParams::visit(const std::string& prefix,
                       const std::function<void(const std::string&, Param&)>& fn) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].visit(prefix + ".l" + std::to_string(l), fn);
  }
}

LstmStepResult lstm_step(Graph& g, LstmLayerParams& p, int x, int h_prev, int c_prev,
                         bool tie_output_peephole) {
  const int i_gate = g.sigmoid(g.add({g.matmul(g.param(p.Wix), x), g.matmul(g.param(p.Wih), h_prev),
                                      g.matmul(g.param(p.Wic), c_prev), g.param(p.bi)}));
  const int f_gate = g.sigmoid(g.add({g.matmul(g.param(p.Wfx), x), g.matmul(g.param(p.Wfh), h_prev),
                                      g.matmul(g.param(p.Wfc), c_prev), g.param(p.bf)}));
  const int candidate = g.tanh(g.add(
      {g.matmul(g.param(p.Wcx), x), g.matmul(g.param(p.Wch), h_prev), g.param(p.bc)}));
  const int c_new = g.add(g.cmul(c_prev, f_gate), g.cmul(candidate, i_gate));
  Param& peephole = tie_output_peephole ? p.Wox : p.Woc;
  if (tie_output_peephole && p.input_dim != p.hidden_dim) {
    throw ShapeError("tied output peephole requires input_dim == hidden_dim");
  }
  const int o_gate = g.sigmoid(g.add({g.matmul(g.param(p.Wox), x), g.matmul(g.param(p.Woh), h_prev),
                                      g.matmul(g.param(peephole), c_new), g.param(p.bo)}));
  const int h_new = g.cmul(g.tanh(c_new), o_gate);
  return {h_new, c_new};
}

LstmStackState lstm_initial_state(Graph& g, const LstmParams& p) {
  LstmStackState s;
  for (const auto& layer : p.layers) {
    const int h = g.input(Mat::Zero(layer.hidden_dim, 1));
    const int c = g.input(Mat::Zero(layer.hidden_dim, 1));
    s.layers.push_back({h, c});
  }
  return s;
}

LstmStackState lstm_stack_step(Graph& g, LstmParams& p, int x, const LstmStackState& prev) {
  LstmStackState next;
  int in = x;
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    auto r = lstm_step(g, p.layers[l], in, prev.layers[l].h, prev.layers[l].c,
                       p.tie_output_peephole);
    next.layers.push_back(r);
    in = r.h;
  }
  return next;
}

}  // namespace hardmono
