#include "hardmono/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "hardmono/utf8.hpp"

namespace hardmono {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string action_label(const Action& a) {
  switch (a.kind) {
    case ActionKind::kWrite: return utf8::encode_one(a.symbol);
    case ActionKind::kStep: return "⟶";
    case ActionKind::kEnd: return "⊣";
  }
  return "?";
}

}  // namespace

double exact_match_accuracy(const std::vector<std::u32string>& predictions,
                            const std::vector<std::u32string>& references) {
  if (predictions.size() != references.size()) {
    throw DataError("exact_match_accuracy: prediction/reference length mismatch");
  }
  if (predictions.empty()) throw DataError("exact_match_accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) hits += (predictions[i] == references[i]);
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

AlignmentTrace attention_trace(ModelParams& params, const std::u32string& x,
                               const std::map<std::string, std::string>& attributes,
                               int max_write) {
  const bool hard = params.config.variant == Variant::kHard;
  PredictResult r = greedy_decode(x, attributes, params, max_write, /*collect_attention=*/!hard);
  AlignmentTrace trace;
  trace.input = x;
  trace.actions = r.actions;
  const std::size_t n = std::max<std::size_t>(x.size(), 1);
  const std::size_t q = r.actions.size();
  trace.matrix = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(q));
  if (hard) {
    for (std::size_t j = 0; j < q; ++j) {
      trace.matrix(static_cast<Eigen::Index>(r.pointer_trace[j] - 1), static_cast<Eigen::Index>(j)) = 1.0;
    }
  } else {
    for (std::size_t j = 0; j < q && j < r.attention.size(); ++j) {
      trace.matrix.col(static_cast<Eigen::Index>(j)) = r.attention[j];
    }
  }
  return trace;
}

AlignmentTrace oracle_trace(const std::u32string& x, const ActionSequence& actions) {
  ExecutionResult r = execute_actions(x, actions);
  AlignmentTrace trace;
  trace.input = x;
  trace.actions = actions;
  const std::size_t n = std::max<std::size_t>(x.size(), 1);
  trace.matrix = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(actions.size()));
  for (std::size_t j = 0; j < actions.size(); ++j) {
    trace.matrix(static_cast<Eigen::Index>(r.pointer_trace[j] - 1), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return trace;
}

std::string trace_to_csv(const AlignmentTrace& trace) {
  std::string out = "input";
  for (const Action& a : trace.actions) out += "," + action_label(a);
  out += "\n";
  for (Eigen::Index i = 0; i < trace.matrix.rows(); ++i) {
    out += i < static_cast<Eigen::Index>(trace.input.size())
               ? utf8::encode_one(trace.input[static_cast<std::size_t>(i)])
               : std::string("·");
    for (Eigen::Index j = 0; j < trace.matrix.cols(); ++j) out += "," + fmt(trace.matrix(i, j));
    out += "\n";
  }
  return out;
}

std::string trace_to_svg(const AlignmentTrace& trace) {
  const int cell = 28, margin = 46;
  const Eigen::Index rows = trace.matrix.rows(), cols = trace.matrix.cols();
  const int width = margin + cell * static_cast<int>(cols) + 10;
  const int height = margin + cell * static_cast<int>(rows) + 10;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"14\">\n";
  const double peak = std::max(trace.matrix.maxCoeff(), 1e-12);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double w = trace.matrix(i, j) / peak;
      const int shade = 255 - static_cast<int>(std::lround(w * 225.0));
      svg << "<rect x=\"" << margin + cell * j << "\" y=\"" << margin + cell * i << "\" width=\""
          << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << shade << "," << shade
          << ",255)\" stroke=\"#ccc\"/>\n";
    }
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string label = i < static_cast<Eigen::Index>(trace.input.size())
                                  ? utf8::encode_one(trace.input[static_cast<std::size_t>(i)])
                                  : std::string("·");
    svg << "<text x=\"" << margin - 18 << "\" y=\"" << margin + cell * i + cell / 2 + 5 << "\">"
        << label << "</text>\n";
  }
  for (std::size_t j = 0; j < trace.actions.size(); ++j) {
    svg << "<text x=\"" << margin + cell * static_cast<int>(j) + cell / 2 - 5 << "\" y=\""
        << margin - 10 << "\">" << action_label(trace.actions[j]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

RepresentationExport export_representations(ModelParams& params, const Corpus& corpus,
                                            std::size_t k, std::uint64_t seed) {
  struct Candidate {
    RepresentationRow row;
    Eigen::VectorXd vec;
  };
  std::vector<Candidate> pool;
  for (const auto& ex : corpus) {
    if (ex.source.empty()) continue;
    std::vector<int> char_ids;
    for (char32_t c : ex.source) char_ids.push_back(params.vocab.input_id(c));
    Graph g;
    const auto encoded = encode(g, char_ids, params);
    for (std::size_t i = 0; i < ex.source.size(); ++i) {
      Candidate c;
      c.row.character = ex.source[i];
      c.row.word = ex.source;
      c.row.position = i;
      c.row.relative_position =
          ex.source.size() > 1 ? static_cast<double>(i) / static_cast<double>(ex.source.size() - 1)
                               : 0.0;
      c.vec = g.value(encoded[i]).col(0);
      pool.push_back(std::move(c));
    }
  }
  if (pool.size() < k) {
    throw DataError("export_representations: requested " + std::to_string(k) +
                    " characters but corpus only yields " + std::to_string(pool.size()));
  }

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng.engine());
  order.resize(k);
  std::sort(order.begin(), order.end());  // stable row order in the output

  const Eigen::Index dim = pool.front().vec.size();
  Mat samples(static_cast<Eigen::Index>(k), dim);
  RepresentationExport rep;
  for (std::size_t r = 0; r < k; ++r) {
    samples.row(static_cast<Eigen::Index>(r)) = pool[order[r]].vec.transpose();
    rep.rows.push_back(pool[order[r]].row);
  }
  samples.rowwise() -= samples.colwise().mean();
  rep.svd = jacobi_svd(samples);
  const Mat coords = svd_project(rep.svd, 2);
  for (std::size_t r = 0; r < k; ++r) {
    rep.rows[r].coord_x = coords(static_cast<Eigen::Index>(r), 0);
    rep.rows[r].coord_y = coords.cols() > 1 ? coords(static_cast<Eigen::Index>(r), 1) : 0.0;
  }
  return rep;
}

std::string representations_to_csv(const RepresentationExport& rep) {
  std::string out = "# centered=" + std::string(rep.centered ? "true" : "false") + "\n";
  out += "char,word,position,relative_position,x,y\n";
  for (const auto& r : rep.rows) {
    out += utf8::encode_one(r.character) + "," + utf8::encode(r.word) + "," +
           std::to_string(r.position) + "," + fmt(r.relative_position) + "," + fmt(r.coord_x) +
           "," + fmt(r.coord_y) + "\n";
  }
  return out;
}

std::string representations_to_svg(const RepresentationExport& rep, bool color_by_position) {
  const int size = 640, margin = 40;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& r : rep.rows) {
    xmin = std::min(xmin, r.coord_x); xmax = std::max(xmax, r.coord_x);
    ymin = std::min(ymin, r.coord_y); ymax = std::max(ymax, r.coord_y);
  }
  const double xspan = std::max(xmax - xmin, 1e-9), yspan = std::max(ymax - ymin, 1e-9);
  auto sx = [&](double x) { return margin + (x - xmin) / xspan * (size - 2 * margin); };
  auto sy = [&](double y) { return size - margin - (y - ymin) / yspan * (size - 2 * margin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" font-family=\"monospace\" font-size=\"10\">\n";
  svg << "<text x=\"" << margin << "\" y=\"20\">"
      << (color_by_position ? "colored by relative position (blue=start, red=end)"
                            : "colored by character identity")
      << "</text>\n";
  for (const auto& r : rep.rows) {
    int red, green, blue;
    if (color_by_position) {
      red = static_cast<int>(std::lround(r.relative_position * 255.0));
      green = 40;
      blue = 255 - red;
    } else {
      const unsigned h = static_cast<unsigned>(r.character) * 2654435761u;
      red = static_cast<int>(h & 0xFF);
      green = static_cast<int>((h >> 8) & 0xFF);
      blue = static_cast<int>((h >> 16) & 0xFF);
    }
    svg << "<circle cx=\"" << fmt6(sx(r.coord_x)) << "\" cy=\"" << fmt6(sy(r.coord_y))
        << "\" r=\"3\" fill=\"rgb(" << red << "," << green << "," << blue << ")\"/>\n";
    svg << "<text x=\"" << fmt6(sx(r.coord_x) + 4) << "\" y=\"" << fmt6(sy(r.coord_y) - 2) << "\">"
        << utf8::encode_one(r.character) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<NamedMetrics> load_metric_streams(const std::vector<std::string>& paths) {
  std::vector<NamedMetrics> streams;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open metrics file: " + path);
    NamedMetrics stream;
    stream.name = std::filesystem::path(path).stem().string();
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (header) { header = false; continue; }
      if (line.empty()) continue;
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      while (cells.size() < 4) cells.push_back("");
      EpochMetrics m;
      try {
        m.epoch = std::stoi(cells[0]);
        m.train_loss = std::stod(cells[1]);
        m.train_accuracy = std::stod(cells[2]);
        if (!cells[3].empty()) {
          m.dev_accuracy = std::stod(cells[3]);
          m.dev_evaluated = true;
        }
      } catch (const std::exception&) {
        throw DataError(path + ": line " + std::to_string(line_no) + ": malformed metrics row");
      }
      stream.metrics.push_back(m);
    }
    streams.push_back(std::move(stream));
  }
  return streams;
}

std::string learning_curves_csv(const std::vector<NamedMetrics>& streams) {
  if (streams.empty()) throw DataError("learning_curves_csv: no metric streams");
  std::map<int, std::vector<const EpochMetrics*>> by_epoch;
  for (std::size_t s = 0; s < streams.size(); ++s) {
    for (const auto& m : streams[s].metrics) {
      auto& row = by_epoch[m.epoch];
      row.resize(streams.size(), nullptr);
      row[s] = &m;
    }
  }
  std::string out = "epoch";
  for (const auto& s : streams) out += "," + s.name + "_train_acc," + s.name + "_dev_acc";
  out += "\n";
  for (const auto& [epoch, row] : by_epoch) {
    out += std::to_string(epoch);
    for (std::size_t s = 0; s < streams.size(); ++s) {
      const EpochMetrics* m = s < row.size() ? row[s] : nullptr;
      out += ",";
      if (m) out += fmt(m->train_accuracy);
      out += ",";
      if (m && m->dev_evaluated) out += fmt(m->dev_accuracy);
    }
    out += "\n";
  }
  return out;
}

std::string learning_curves_svg(const std::vector<NamedMetrics>& streams) {
  if (streams.empty()) throw DataError("learning_curves_svg: no metric streams");
  const int width = 720, height = 480, margin = 50;
  int max_epoch = 1;
  for (const auto& s : streams)
    for (const auto& m : s.metrics) max_epoch = std::max(max_epoch, m.epoch);

  auto sx = [&](double e) { return margin + (e - 1.0) / std::max(max_epoch - 1, 1) * (width - 2 * margin); };
  auto sy = [&](double acc) { return height - margin - acc * (height - 2 * margin); };

  const char* palette[] = {"#2c7bb6", "#d7191c", "#1a9641", "#fdae61", "#7b3294", "#008837"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"12\">\n";
  svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
      << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"#333\"/>\n";
  svg << "<text x=\"" << width / 2 - 20 << "\" y=\"" << height - 12 << "\">epoch</text>\n";
  svg << "<text x=\"8\" y=\"" << height / 2 << "\" transform=\"rotate(-90 12 " << height / 2
      << ")\">accuracy</text>\n";

  int color = 0, legend_y = margin + 14;
  for (const auto& s : streams) {
    for (const bool dev : {false, true}) {
      std::ostringstream pts;
      for (const auto& m : s.metrics) {
        if (dev && !m.dev_evaluated) continue;
        const double acc = dev ? m.dev_accuracy : m.train_accuracy;
        pts << fmt6(sx(m.epoch)) << "," << fmt6(sy(acc)) << " ";
      }
      const char* col = palette[color % 6];
      svg << "<polyline fill=\"none\" stroke=\"" << col << "\""
          << (dev ? " stroke-dasharray=\"5,3\"" : "") << " points=\"" << pts.str() << "\"/>\n";
      svg << "<text x=\"" << width - margin - 170 << "\" y=\"" << legend_y << "\" fill=\"" << col
          << "\">" << s.name << (dev ? "-dev" : "-train") << "</text>\n";
      legend_y += 14;
      ++color;
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hardmono
