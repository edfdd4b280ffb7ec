#ifndef HARDMONO_ANALYSIS_HPP
#define HARDMONO_ANALYSIS_HPP

#include <string>
#include <vector>

#include "hardmono/checkpoint.hpp"
#include "hardmono/data.hpp"
#include "hardmono/inference.hpp"
#include "hardmono/svd.hpp"
#include "hardmono/trainer.hpp"

namespace hardmono {

// Codepoint-exact string equality rate. Errors on length mismatch or
// empty input.
double exact_match_accuracy(const std::vector<std::u32string>& predictions,
                            const std::vector<std::u32string>& references);

struct AlignmentTrace {
  std::u32string input;
  ActionSequence actions;
  Mat matrix;  // n x q; hard: one-hot pointer per column, soft: attention weights
};

// Decodes x and records which input positions each action attended.
AlignmentTrace attention_trace(ModelParams& params, const std::u32string& x,
                               const std::map<std::string, std::string>& attributes,
                               int max_write = kDefaultMaxWrite);

// Replays a fixed action program instead of decoding (hard variant).
AlignmentTrace oracle_trace(const std::u32string& x, const ActionSequence& actions);

std::string trace_to_csv(const AlignmentTrace& trace);
std::string trace_to_svg(const AlignmentTrace& trace);

struct RepresentationRow {
  char32_t character;
  std::u32string word;
  std::size_t position;       // 0-based within word
  double relative_position;   // position / (len - 1), 0 for length-1 words
  double coord_x = 0.0;
  double coord_y = 0.0;
};

struct RepresentationExport {
  std::vector<RepresentationRow> rows;
  SvdResult svd;
  bool centered = true;
};

// Samples k encoded characters-in-context, centers them, and projects
// to 2-D with a rank-2 truncated SVD.
RepresentationExport export_representations(ModelParams& params, const Corpus& corpus,
                                            std::size_t k, std::uint64_t seed);

std::string representations_to_csv(const RepresentationExport& rep);
std::string representations_to_svg(const RepresentationExport& rep, bool color_by_position);

struct NamedMetrics {
  std::string name;  // e.g. "hard" / "soft"
  std::vector<EpochMetrics> metrics;
};

std::vector<NamedMetrics> load_metric_streams(const std::vector<std::string>& paths);
std::string learning_curves_csv(const std::vector<NamedMetrics>& streams);
std::string learning_curves_svg(const std::vector<NamedMetrics>& streams);

}  // namespace hardmono

#endif
