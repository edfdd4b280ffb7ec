#ifndef HARDMONO_CONFIG_HPP
#define HARDMONO_CONFIG_HPP

#include <map>
#include <string>

#include "hardmono/data.hpp"
#include "hardmono/trainer.hpp"

namespace hardmono {

// Flat `key = value` document; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Unknown keys are rejected so typos fail loudly.
void apply_config(const std::map<std::string, std::string>& kv, TrainConfig& train,
                  DatasetSpec& dataset);

}  // namespace hardmono

#endif
