#include "hardmono/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hardmono/utf8.hpp"

namespace hardmono {

double AlignmentModel::cost(char32_t src, char32_t tgt) const {
  auto it = match_cost.find({src, tgt});
  if (it != match_cost.end()) return it->second;
  if (src == tgt) return default_match_cost;
  return default_subst_cost;
}

namespace {

AlignmentList align_prefix(const std::u32string& x, const std::u32string& y,
                           const AlignmentModel& model) {
  const std::size_t n = x.size(), m = y.size();
  // 0 = 1-to-1 (diag), 1 = 1-to-0 (down), 2 = 0-to-1 (right), -1 = origin
  std::vector<std::vector<double>> dist(n + 1, std::vector<double>(m + 1, 0.0));
  std::vector<std::vector<int>> choice(n + 1, std::vector<int>(m + 1, -1));

  for (std::size_t i = 1; i <= n; ++i) {
    dist[i][0] = dist[i - 1][0] + model.deletion_cost;
    choice[i][0] = 1;
  }
  for (std::size_t j = 1; j <= m; ++j) {
    dist[0][j] = dist[0][j - 1] + model.insertion_cost;
    choice[0][j] = 2;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const double diag = dist[i - 1][j - 1] + model.cost(x[i - 1], y[j - 1]);
      const double down = dist[i - 1][j] + model.deletion_cost;
      const double right = dist[i][j - 1] + model.insertion_cost;
      double best = diag;
      int pick = 0;
      if (down < best) { best = down; pick = 1; }
      if (right < best) { best = right; pick = 2; }
      dist[i][j] = best;
      choice[i][j] = pick;
    }
  }

  AlignmentList out;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    switch (choice[i][j]) {
      case 0:
        out.push_back({x[i - 1], y[j - 1]});
        --i; --j;
        break;
      case 1:
        out.push_back({x[i - 1], std::nullopt});
        --i;
        break;
      default:
        out.push_back({std::nullopt, y[j - 1]});
        --j;
        break;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

AlignmentList align(const std::u32string& x, const std::u32string& y, const AlignmentModel& model) {
  // The tie-break (1-to-1, then 1-to-0, then 0-to-1) is applied over
  // the suffix lattice so that on cost ties insertions trail the pair
  // that anchors them ("lieg" + inserted "e", not inserted "i" + "oeg").
  // Realized by aligning the reversed strings with the prefix DP.
  const std::u32string rx(x.rbegin(), x.rend()), ry(y.rbegin(), y.rend());
  AlignmentList out = align_prefix(rx, ry, model);
  std::reverse(out.begin(), out.end());
  return out;
}

AlignmentModel train_aligner(const std::vector<std::pair<std::u32string, std::u32string>>& corpus,
                             int iterations, double smoothing) {
  if (corpus.empty()) throw DataError("train_aligner: empty corpus");
  if (iterations < 1) throw DataError("train_aligner: iterations must be >= 1");

  std::set<char32_t> target_alphabet;
  for (const auto& [x, y] : corpus)
    for (char32_t c : y) target_alphabet.insert(c);
  const double vocab_size = static_cast<double>(target_alphabet.size());

  AlignmentModel model;  // round 0: unit edit costs
  model.smoothing = smoothing;
  model.iterations = iterations;
  model.default_match_cost = 0.0;
  model.default_subst_cost = 1.0;
  model.deletion_cost = 1.0;
  model.insertion_cost = 1.0;

  for (int round = 1; round < iterations; ++round) {
    std::map<std::pair<char32_t, char32_t>, double> counts;
    std::map<char32_t, double> row_totals;
    for (const auto& [x, y] : corpus) {
      for (const auto& pair : align(x, y, model)) {
        if (pair.one_to_one()) {
          counts[{*pair.source, *pair.target}] += 1.0;
          row_totals[*pair.source] += 1.0;
        }
      }
    }
    if (counts.empty()) break;

    AlignmentModel next;
    next.smoothing = smoothing;
    next.iterations = iterations;
    double min_raw = std::numeric_limits<double>::infinity();
    for (const auto& [key, cnt] : counts) {
      const double p = (cnt + smoothing) / (row_totals[key.first] + smoothing * vocab_size);
      const double raw = -std::log(p);
      next.match_cost[key] = raw;
      min_raw = std::min(min_raw, raw);
    }
    double max_cost = 0.0;
    for (auto& [key, c] : next.match_cost) {
      c -= min_raw;  // shift so the cheapest observed link costs 0
      max_cost = std::max(max_cost, c);
    }
    next.deletion_cost = 1.0;
    next.insertion_cost = 1.0;
    next.default_match_cost = max_cost + 1.0;
    next.default_subst_cost = max_cost + 1.0;
    model = std::move(next);
  }
  return model;
}

std::string serialize_alignment(const AlignmentList& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ' ';
    out += a[i].source ? utf8::encode_one(*a[i].source) : "~";
    out += '|';
    out += a[i].target ? utf8::encode_one(*a[i].target) : "~";
  }
  return out;
}

AlignmentList parse_alignment(const std::string& line) {
  AlignmentList out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t end = line.find(' ', pos);
    if (end == std::string::npos) end = line.size();
    const std::string token = line.substr(pos, end - pos);
    pos = end + 1;
    if (token.empty()) continue;
    const std::size_t bar = token.find('|');
    if (bar == std::string::npos) throw DataError("alignment token missing '|': " + token);
    const std::u32string src = utf8::decode(token.substr(0, bar));
    const std::u32string tgt = utf8::decode(token.substr(bar + 1));
    if (src.size() != 1 || tgt.size() != 1) {
      throw DataError("alignment token sides must be single characters: " + token);
    }
    AlignmentPair pair;
    if (src[0] != U'~') pair.source = src[0];
    if (tgt[0] != U'~') pair.target = tgt[0];
    if (!pair.source && !pair.target) throw DataError("alignment token is ~|~: " + token);
    out.push_back(pair);
  }
  return out;
}

}  // namespace hardmono
