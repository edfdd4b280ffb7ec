#include "hardmono/checkpoint.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "hardmono/utf8.hpp"

namespace hardmono {

namespace {

using nlohmann::json;

const char kB64Chars[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const unsigned char* data, std::size_t len) {
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  for (std::size_t i = 0; i < len; i += 3) {
    unsigned v = data[i] << 16;
    if (i + 1 < len) v |= data[i + 1] << 8;
    if (i + 2 < len) v |= data[i + 2];
    out.push_back(kB64Chars[(v >> 18) & 63]);
    out.push_back(kB64Chars[(v >> 12) & 63]);
    out.push_back(i + 1 < len ? kB64Chars[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < len ? kB64Chars[v & 63] : '=');
  }
  return out;
}

std::vector<unsigned char> base64_decode(const std::string& s) {
  auto val = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<unsigned char> out;
  int buf = 0, bits = 0;
  for (char c : s) {
    if (c == '=') break;
    const int v = val(c);
    if (v < 0) throw DataError("checkpoint: invalid base64 data");
    buf = (buf << 6) | v;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<unsigned char>((buf >> bits) & 0xFF));
    }
  }
  return out;
}

json mat_to_json(const Mat& m) {
  std::vector<double> data(static_cast<std::size_t>(m.size()));
  // column-major, little-endian float64
  std::memcpy(data.data(), m.data(), data.size() * sizeof(double));
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"data", base64_encode(reinterpret_cast<const unsigned char*>(data.data()),
                                     data.size() * sizeof(double))}};
}

Mat mat_from_json(const json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto bytes = base64_decode(j.at("data").get<std::string>());
  if (bytes.size() != static_cast<std::size_t>(rows * cols) * sizeof(double)) {
    throw DataError("checkpoint: parameter block size mismatch");
  }
  Mat m(rows, cols);
  std::memcpy(m.data(), bytes.data(), bytes.size());
  return m;
}

json vocab_to_json(const Vocabulary& v) {
  json j;
  std::vector<std::string> in, out;
  for (char32_t c : v.input_symbols) in.push_back(utf8::encode_one(c));
  for (char32_t c : v.output_symbols) out.push_back(utf8::encode_one(c));
  j["input_symbols"] = in;
  j["output_symbols"] = out;
  j["attribute_names"] = v.attribute_names;
  j["attribute_values"] = v.attribute_values;
  return j;
}

Vocabulary vocab_from_json(const json& j) {
  Vocabulary v;
  for (const auto& s : j.at("input_symbols").get<std::vector<std::string>>())
    v.input_symbols.push_back(utf8::decode(s).at(0));
  for (const auto& s : j.at("output_symbols").get<std::vector<std::string>>())
    v.output_symbols.push_back(utf8::decode(s).at(0));
  v.attribute_names = j.at("attribute_names").get<std::vector<std::string>>();
  v.attribute_values = j.at("attribute_values").get<std::vector<std::vector<std::string>>>();
  return v;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp.string());
    out << contents;
  }
  fs::rename(tmp, target);
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  json j;
  j["magic"] = kCheckpointMagic;
  const NetworkConfig& c = ckpt.model.config;
  j["config"] = {{"char_emb_dim", c.char_emb_dim},
                 {"attr_emb_dim", c.attr_emb_dim},
                 {"hidden_dim", c.hidden_dim},
                 {"num_layers", c.num_layers},
                 {"variant", c.variant == Variant::kHard ? "hard" : "soft"},
                 {"tie_output_peephole", c.tie_output_peephole},
                 {"init_decoder_from_encoder", c.init_decoder_from_encoder}};
  j["vocab"] = vocab_to_json(ckpt.model.vocab);
  j["epoch"] = ckpt.epoch;
  j["dev_accuracy"] = ckpt.dev_accuracy;
  json params = json::object();
  const_cast<ModelParams&>(ckpt.model).visit([&](const std::string& name, Param& p) {
    params[name] = mat_to_json(p.value);
  });
  j["params"] = params;
  write_file_atomic(path, j.dump());
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DataError("checkpoint parse failure in " + path + ": " + e.what());
  }
  if (j.value("magic", "") != kCheckpointMagic) {
    throw DataError("not a hardmono checkpoint: " + path);
  }

  NetworkConfig c;
  const json& jc = j.at("config");
  c.char_emb_dim = jc.at("char_emb_dim").get<int>();
  c.attr_emb_dim = jc.at("attr_emb_dim").get<int>();
  c.hidden_dim = jc.at("hidden_dim").get<int>();
  c.num_layers = jc.at("num_layers").get<int>();
  c.variant = jc.at("variant").get<std::string>() == "soft" ? Variant::kSoft : Variant::kHard;
  c.tie_output_peephole = jc.value("tie_output_peephole", false);
  c.init_decoder_from_encoder = jc.value("init_decoder_from_encoder", false);

  Checkpoint ckpt;
  Rng rng(0);
  ckpt.model = ModelParams::create(c, vocab_from_json(j.at("vocab")), rng);
  ckpt.epoch = j.value("epoch", 0);
  ckpt.dev_accuracy = j.value("dev_accuracy", 0.0);
  const json& params = j.at("params");
  ckpt.model.visit([&](const std::string& name, Param& p) {
    if (!params.contains(name)) throw DataError("checkpoint missing parameter: " + name);
    Mat m = mat_from_json(params.at(name));
    if (m.rows() != p.value.rows() || m.cols() != p.value.cols()) {
      throw DataError("checkpoint parameter shape mismatch: " + name);
    }
    p.value = std::move(m);
    p.zero_grad();
  });
  return ckpt;
}

}  // namespace hardmono
