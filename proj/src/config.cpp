#include "hardmono/config.hpp"

#include <fstream>
#include <sstream>

namespace hardmono {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw DataError("config: invalid boolean for " + key + ": " + v);
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw DataError("config line " + std::to_string(line_no) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_config(const std::map<std::string, std::string>& kv, TrainConfig& train,
                  DatasetSpec& dataset) {
  for (const auto& [key, value] : kv) {
    try {
      if (key == "variant") {
        if (value != "hard" && value != "soft") throw DataError("config: variant must be hard|soft");
        train.net.variant = value == "hard" ? Variant::kHard : Variant::kSoft;
      } else if (key == "max_epochs") {
        train.max_epochs = std::stoi(value);
      } else if (key == "patience") {
        train.patience = std::stoi(value);
      } else if (key == "seed") {
        train.seed = std::stoull(value);
      } else if (key == "char_emb_dim") {
        train.net.char_emb_dim = std::stoi(value);
      } else if (key == "attr_emb_dim") {
        train.net.attr_emb_dim = std::stoi(value);
      } else if (key == "hidden_dim") {
        train.net.hidden_dim = std::stoi(value);
      } else if (key == "num_layers") {
        train.net.num_layers = std::stoi(value);
      } else if (key == "adadelta_rho") {
        train.adadelta_rho = std::stod(value);
      } else if (key == "adadelta_eps") {
        train.adadelta_eps = std::stod(value);
      } else if (key == "dev_eval_every") {
        train.dev_eval_every = std::stoi(value);
      } else if (key == "max_write") {
        train.max_write = std::stoi(value);
      } else if (key == "aligner_iterations") {
        train.aligner_iterations = std::stoi(value);
      } else if (key == "aligner_smoothing") {
        train.aligner_smoothing = std::stod(value);
      } else if (key == "tie_output_peephole") {
        train.net.tie_output_peephole = to_bool(value, key);
      } else if (key == "init_decoder_from_encoder") {
        train.net.init_decoder_from_encoder = to_bool(value, key);
      } else if (key == "format") {
        if (value == "sigmorphon-tsv") {
          dataset.format = DatasetFormat::kSigmorphonTsv;
        } else if (value == "celex-pairs") {
          dataset.format = DatasetFormat::kCelexPairs;
        } else {
          throw DataError("config: format must be sigmorphon-tsv|celex-pairs");
        }
      } else if (key == "inflection_type") {
        dataset.inflection_type = value;
      } else if (key == "type_filter") {
        dataset.type_filter = value;
      } else if (key == "train_path") {
        dataset.train_path = value;
      } else if (key == "dev_path") {
        dataset.dev_path = value;
      } else if (key == "test_path") {
        dataset.test_path = value;
      } else {
        throw DataError("config: unknown key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw DataError("config: invalid value for " + key + ": " + value);
    } catch (const std::out_of_range&) {
      throw DataError("config: value out of range for " + key + ": " + value);
    }
  }
}

}  // namespace hardmono
