#ifndef HARDMONO_ALIGNER_HPP
#define HARDMONO_ALIGNER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardmono/errors.hpp"

namespace hardmono {

// One monotonic character link: (c, c) substitution/copy, (c, nullopt)
// deletion, (nullopt, c) insertion. Never both empty.
struct AlignmentPair {
  std::optional<char32_t> source;
  std::optional<char32_t> target;

  bool one_to_one() const { return source && target; }
  bool one_to_zero() const { return source && !target; }
  bool zero_to_one() const { return !source && target; }
};

using AlignmentList = std::vector<AlignmentPair>;

// Count-reweighted monotonic edit alignment. Round 0 uses unit edit
// costs; later rounds derive substitution costs from smoothed corpus
// link counts.
struct AlignmentModel {
  std::map<std::pair<char32_t, char32_t>, double> match_cost;
  double default_match_cost = 1.0;   // equal characters, unseen
  double default_subst_cost = 2.0;   // unequal unseen pair: max observed + 1
  double deletion_cost = 1.0;
  double insertion_cost = 1.0;
  double smoothing = 0.1;
  int iterations = 5;

  double cost(char32_t src, char32_t tgt) const;
};

AlignmentModel train_aligner(const std::vector<std::pair<std::u32string, std::u32string>>& corpus,
                             int iterations = 5, double smoothing = 0.1);

// Minimum-cost monotonic path through the edit lattice; ties prefer
// 1-to-1, then 1-to-0, then 0-to-1.
AlignmentList align(const std::u32string& x, const std::u32string& y, const AlignmentModel& model);

// `src|tgt` tokens space separated, epsilon as `~`.
std::string serialize_alignment(const AlignmentList& a);
AlignmentList parse_alignment(const std::string& line);

}  // namespace hardmono

#endif
