#include "hardmono/data.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "hardmono/utf8.hpp"

namespace hardmono {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = s.find(sep, pos);
    if (end == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
}

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << "line " << line_no << ": " << what;
  throw DataError(os.str());
}

}  // namespace

TrainingExample parse_sigmorphon_line(const std::string& line, std::size_t line_no) {
  const auto fields = split(line, '\t');
  if (fields.size() != 3) {
    line_error(line_no, "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
  }
  TrainingExample ex;
  ex.source = utf8::decode(trim(fields[0]));
  ex.target = utf8::decode(trim(fields[2]));
  if (ex.source.empty()) line_error(line_no, "empty source form");
  if (ex.target.empty()) line_error(line_no, "empty target form");

  const std::string feats = trim(fields[1]);
  if (!feats.empty()) {
    for (const std::string& raw : split(feats, ',')) {
      const std::string tok = trim(raw);
      if (tok.empty()) line_error(line_no, "empty feature token");
      const std::size_t eq = tok.find('=');
      if (eq == std::string::npos) {
        ex.attributes[tok] = tok;  // bare tag
      } else {
        const std::string key = trim(tok.substr(0, eq));
        const std::string value = trim(tok.substr(eq + 1));
        if (key.empty() || value.empty()) line_error(line_no, "malformed key=value token: " + tok);
        ex.attributes[key] = value;
      }
    }
  }
  return ex;
}

TrainingExample parse_celex_pair_line(const std::string& line, const std::string& inflection_type,
                                      std::size_t line_no) {
  const auto fields = split(line, '\t');
  if (fields.size() != 2) {
    line_error(line_no, "expected 2 tab-separated fields, got " + std::to_string(fields.size()));
  }
  TrainingExample ex;
  ex.source = utf8::decode(trim(fields[0]));
  ex.target = utf8::decode(trim(fields[1]));
  if (ex.source.empty()) line_error(line_no, "empty source form");
  if (ex.target.empty()) line_error(line_no, "empty target form");
  if (!inflection_type.empty()) ex.attributes["type"] = inflection_type;
  return ex;
}

std::string serialize_sigmorphon(const TrainingExample& ex) {
  std::string feats;
  for (const auto& [k, v] : ex.attributes) {
    if (!feats.empty()) feats += ',';
    feats += k + "=" + v;
  }
  return utf8::encode(ex.source) + "\t" + feats + "\t" + utf8::encode(ex.target);
}

Corpus load_corpus(const std::string& path, const DatasetSpec& spec) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    TrainingExample ex;
    try {
      ex = spec.format == DatasetFormat::kSigmorphonTsv
               ? parse_sigmorphon_line(line, line_no)
               : parse_celex_pair_line(line, spec.inflection_type, line_no);
    } catch (const DataError& e) {
      throw DataError(path + ": " + e.what());
    }
    if (!spec.type_filter.empty()) {
      const std::size_t eq = spec.type_filter.find('=');
      const std::string key = eq == std::string::npos ? spec.type_filter : spec.type_filter.substr(0, eq);
      const std::string value = eq == std::string::npos ? spec.type_filter : spec.type_filter.substr(eq + 1);
      auto it = ex.attributes.find(key);
      if (it == ex.attributes.end() || it->second != value) continue;
    }
    corpus.push_back(std::move(ex));
  }
  return corpus;
}

int Vocabulary::input_id(char32_t c) const {
  for (std::size_t i = 2; i < input_symbols.size(); ++i) {
    if (input_symbols[i] == c) return static_cast<int>(i);
  }
  return kInputUnk;
}

int Vocabulary::output_id(char32_t c) const {
  for (std::size_t i = 1; i < output_symbols.size(); ++i) {
    if (output_symbols[i] == c) return static_cast<int>(i);
  }
  return kOutputUnk;
}

int Vocabulary::attribute_value_id(std::size_t attr_index, const std::string& value) const {
  const auto& values = attribute_values[attr_index];
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] == value) return static_cast<int>(i);
  }
  return 0;  // NA
}

std::vector<int> Vocabulary::attribute_slot_ids(const std::map<std::string, std::string>& attrs) const {
  std::vector<int> ids(attribute_names.size(), 0);
  for (std::size_t a = 0; a < attribute_names.size(); ++a) {
    auto it = attrs.find(attribute_names[a]);
    if (it != attrs.end()) ids[a] = attribute_value_id(a, it->second);
  }
  return ids;
}

Vocabulary build_vocabulary(const Corpus& corpus) {
  if (corpus.empty()) throw DataError("build_vocabulary: empty corpus");
  std::set<char32_t> sources, targets;
  std::map<std::string, std::set<std::string>> attrs;
  for (const auto& ex : corpus) {
    for (char32_t c : ex.source) sources.insert(c);
    for (char32_t c : ex.target) targets.insert(c);
    for (const auto& [k, v] : ex.attributes) attrs[k].insert(v);
  }
  Vocabulary v;
  v.input_symbols = {U'⁇', U'‸'};  // placeholders for UNK / BOS slots
  v.input_symbols.insert(v.input_symbols.end(), sources.begin(), sources.end());
  v.output_symbols = {U'⁇'};
  v.output_symbols.insert(v.output_symbols.end(), targets.begin(), targets.end());
  for (const auto& [name, values] : attrs) {
    v.attribute_names.push_back(name);
    std::vector<std::string> vs = {"<NA>"};
    vs.insert(vs.end(), values.begin(), values.end());
    v.attribute_values.push_back(std::move(vs));
  }
  return v;
}

}  // namespace hardmono
