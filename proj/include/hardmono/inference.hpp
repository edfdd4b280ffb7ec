#ifndef HARDMONO_INFERENCE_HPP
#define HARDMONO_INFERENCE_HPP

#include <map>
#include <string>
#include <vector>

#include "hardmono/network.hpp"
#include "hardmono/oracle.hpp"

namespace hardmono {

struct PredictResult {
  std::u32string output;
  ActionSequence actions;
  std::vector<std::size_t> pointer_trace;  // hard variant, 1-based, one entry per action
  std::vector<Mat> attention;              // soft variant, one n x 1 column per action
  bool truncated = false;
  std::size_t decoder_steps = 0;
};

inline constexpr int kDefaultMaxWrite = 50;

// Greedy argmax decoding; argmax ties break toward the lowest symbol
// id. Terminates on end, or forcibly once max_write symbols are written
// or n + max_write actions taken (result flagged truncated).
PredictResult greedy_decode(const std::u32string& x,
                            const std::map<std::string, std::string>& attributes,
                            ModelParams& params, int max_write = kDefaultMaxWrite,
                            bool collect_attention = false);

// Majority vote over member outputs; ties go to the lowest member index
// among the tied strings. All members must share one vocabulary.
std::u32string ensemble_predict(std::vector<ModelParams*>& members, const std::u32string& x,
                                const std::map<std::string, std::string>& attributes,
                                int max_write = kDefaultMaxWrite);

}  // namespace hardmono

#endif
