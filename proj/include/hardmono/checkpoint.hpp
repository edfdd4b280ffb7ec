#ifndef HARDMONO_CHECKPOINT_HPP
#define HARDMONO_CHECKPOINT_HPP

#include <string>

#include "hardmono/network.hpp"

namespace hardmono {

struct Checkpoint {
  ModelParams model;
  int epoch = 0;
  double dev_accuracy = 0.0;
};

inline constexpr const char* kCheckpointMagic = "hardmono-checkpoint-v1";

// JSON document: magic, network config, vocabulary, metadata, and one
// base64 little-endian float64 block per parameter. Written atomically
// (temp file + rename).
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

// Atomic text write used for every file the toolkit produces.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace hardmono

#endif
