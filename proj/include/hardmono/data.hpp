#ifndef HARDMONO_DATA_HPP
#define HARDMONO_DATA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardmono/errors.hpp"

namespace hardmono {

struct TrainingExample {
  std::u32string source;
  std::map<std::string, std::string> attributes;  // name -> value, name-ordered
  std::u32string target;
};

using Corpus = std::vector<TrainingExample>;

enum class DatasetFormat { kSigmorphonTsv, kCelexPairs };

struct DatasetSpec {
  DatasetFormat format = DatasetFormat::kSigmorphonTsv;
  std::string train_path;
  std::string dev_path;
  std::string test_path;
  // celex-pairs: the single attribute value naming the inflection type.
  std::string inflection_type;
  // sigmorphon: optional filter on an attribute=value match.
  std::string type_filter;
};

// lemma \t feature-string \t target. Features are comma-separated
// key=value pairs; a bare tag t becomes t=t; an empty field is an empty
// attribute map. line_no appears in error messages.
TrainingExample parse_sigmorphon_line(const std::string& line, std::size_t line_no = 0);

// source \t target, inflection type attached as attribute "type".
TrainingExample parse_celex_pair_line(const std::string& line, const std::string& inflection_type,
                                      std::size_t line_no = 0);

std::string serialize_sigmorphon(const TrainingExample& ex);

Corpus load_corpus(const std::string& path, const DatasetSpec& spec);

struct Vocabulary {
  // Input symbols: UNK=0, BOS=1, then sorted source characters.
  std::vector<char32_t> input_symbols;   // index = id; slots 0/1 are sentinels
  // Output symbols: UNK=0, then sorted target characters.
  std::vector<char32_t> output_symbols;
  // Attribute schema: lexicographically sorted names, each with its
  // sorted value set; value id 0 is the reserved NA slot.
  std::vector<std::string> attribute_names;
  std::vector<std::vector<std::string>> attribute_values;  // per name, index 0 = "<NA>"

  static constexpr int kInputUnk = 0;
  static constexpr int kInputBos = 1;
  static constexpr int kOutputUnk = 0;

  int input_id(char32_t c) const;
  int output_id(char32_t c) const;
  std::size_t num_inputs() const { return input_symbols.size(); }
  std::size_t num_outputs() const { return output_symbols.size(); }

  // Action id space: output ids, then step, then end.
  std::size_t num_actions() const { return num_outputs() + 2; }
  int step_id() const { return static_cast<int>(num_outputs()); }
  int end_id() const { return static_cast<int>(num_outputs()) + 1; }

  int attribute_value_id(std::size_t attr_index, const std::string& value) const;
  std::vector<int> attribute_slot_ids(const std::map<std::string, std::string>& attrs) const;

  bool operator==(const Vocabulary&) const = default;
};

Vocabulary build_vocabulary(const Corpus& corpus);

}  // namespace hardmono

#endif
