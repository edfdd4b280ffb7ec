#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardmono/analysis.hpp"
#include "hardmono/config.hpp"
#include "hardmono/inference.hpp"
#include "hardmono/pipeline.hpp"
#include "hardmono/utf8.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hardmono;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct GlobalOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool seed_set = false;
};

struct ParsedInput {
  std::u32string source;
  std::map<std::string, std::string> attributes;
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Accepts 2-column (lemma, features) and 3-column (lemma, features,
// target; target ignored) rows.
std::vector<ParsedInput> read_prediction_inputs(const std::string& path) {
  std::vector<ParsedInput> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    std::string normalized;
    if (fields.size() == 2) {
      normalized = fields[0] + "\t" + fields[1] + "\tx";
    } else if (fields.size() == 3) {
      normalized = line;
    } else {
      throw DataError(path + ": line " + std::to_string(line_no) +
                      ": expected 2 or 3 tab-separated fields");
    }
    const TrainingExample ex = parse_sigmorphon_line(normalized, line_no);
    out.push_back({ex.source, ex.attributes});
  }
  return out;
}

void load_base_config(const GlobalOpts& g, TrainConfig& train, DatasetSpec& dataset) {
  if (!g.config_path.empty()) apply_config(parse_config_file(g.config_path), train, dataset);
  if (g.seed_set) train.seed = g.seed;
}

std::string pointer_trace_string(const std::vector<std::size_t>& trace) {
  std::string s;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(trace[i]);
  }
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"hard monotonic attention transducer for morphological inflection"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--config", global.config_path, "flat key=value config file")->expected(1);
  app.add_option("--out-dir", global.out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", global.seed, "random seed");

  // align
  auto* cmd_align = app.add_subcommand("align", "learn a character aligner and align a dataset");
  std::string align_data, align_out;
  cmd_align->add_option("--data", align_data, "dataset TSV")->required();
  cmd_align->add_option("--out", align_out, "output file (default stdout)");

  // oracle
  auto* cmd_oracle = app.add_subcommand("oracle", "derive action sequences from alignments");
  std::string oracle_alignments, oracle_out;
  cmd_oracle->add_option("--alignments", oracle_alignments, "alignment file")->required();
  cmd_oracle->add_option("--out", oracle_out, "output file (default stdout)");

  // train
  auto* cmd_train = app.add_subcommand("train", "train one model");
  std::string train_path, dev_path, train_variant;
  cmd_train->add_option("--train", train_path, "training TSV");
  cmd_train->add_option("--dev", dev_path, "development TSV");
  cmd_train->add_option("--variant", train_variant, "hard|soft");

  // predict / ensemble
  auto* cmd_predict = app.add_subcommand("predict", "greedy decoding with one checkpoint");
  std::string predict_ckpt, predict_input, predict_out;
  bool predict_trace = false;
  cmd_predict->add_option("--checkpoint", predict_ckpt)->required();
  cmd_predict->add_option("--input", predict_input, "TSV of (lemma, feature-string)")->required();
  cmd_predict->add_option("--out", predict_out, "output TSV (default stdout)");
  cmd_predict->add_flag("--trace", predict_trace, "also emit action string and pointer trace");

  auto* cmd_ensemble = app.add_subcommand("ensemble", "majority-vote decoding across checkpoints");
  std::vector<std::string> ensemble_ckpts;
  std::string ensemble_input, ensemble_out;
  cmd_ensemble->add_option("--checkpoints", ensemble_ckpts)->required()->expected(-1);
  cmd_ensemble->add_option("--input", ensemble_input)->required();
  cmd_ensemble->add_option("--out", ensemble_out, "output TSV (default stdout)");

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "exact-match accuracy of predictions vs references");
  std::string eval_predictions, eval_references;
  cmd_eval->add_option("--predictions", eval_predictions)->required();
  cmd_eval->add_option("--references", eval_references)->required();

  // analyze
  auto* cmd_analyze = app.add_subcommand("analyze", "analysis exports");
  cmd_analyze->require_subcommand(1);
  auto* cmd_trace = cmd_analyze->add_subcommand("trace", "attention trace heatmap for one input");
  std::string trace_ckpt, trace_input, trace_feats;
  cmd_trace->add_option("--checkpoint", trace_ckpt)->required();
  cmd_trace->add_option("--lemma", trace_input)->required();
  cmd_trace->add_option("--features", trace_feats, "comma-separated key=value features");
  auto* cmd_repr = cmd_analyze->add_subcommand("repr", "2-D SVD projection of encoder outputs");
  std::string repr_ckpt, repr_data;
  std::size_t repr_k = 500;
  cmd_repr->add_option("--checkpoint", repr_ckpt)->required();
  cmd_repr->add_option("--data", repr_data, "corpus TSV to sample from")->required();
  cmd_repr->add_option("--k", repr_k, "number of sampled characters-in-context");
  auto* cmd_curves = cmd_analyze->add_subcommand("curves", "combine metrics CSVs into curves");
  std::vector<std::string> curve_files;
  cmd_curves->add_option("--metrics", curve_files)->required()->expected(-1);

  // pipeline
  auto* cmd_pipeline = app.add_subcommand("pipeline", "align + oracle + train + evaluate");
  int pipeline_members = 1;
  std::string pipeline_variant;
  cmd_pipeline->add_option("--members", pipeline_members, "ensemble size");
  cmd_pipeline->add_option("--variant", pipeline_variant, "hard|soft");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  global.seed_set = seed_opt->count() > 0;

  TrainConfig train_config;
  DatasetSpec dataset;
  load_base_config(global, train_config, dataset);

  auto emit = [&](const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_file_atomic(out_path, text);
    }
  };

  if (cmd_align->parsed()) {
    DatasetSpec spec = dataset;
    spec.train_path = align_data;
    const Corpus corpus = load_corpus(align_data, spec);
    if (corpus.empty()) throw DataError("empty dataset: " + align_data);
    std::vector<std::pair<std::u32string, std::u32string>> pairs;
    for (const auto& ex : corpus) pairs.emplace_back(ex.source, ex.target);
    const AlignmentModel model =
        train_aligner(pairs, train_config.aligner_iterations, train_config.aligner_smoothing);
    std::string out;
    for (const auto& ex : corpus) out += serialize_alignment(align(ex.source, ex.target, model)) + "\n";
    emit(align_out, out);
    return 0;
  }

  if (cmd_oracle->parsed()) {
    std::string out;
    for (const auto& line : read_lines(oracle_alignments)) {
      if (line.empty()) continue;
      out += serialize_actions(derive_actions(parse_alignment(line))) + "\n";
    }
    emit(oracle_out, out);
    return 0;
  }

  if (cmd_train->parsed()) {
    if (!train_path.empty()) dataset.train_path = train_path;
    if (!dev_path.empty()) dataset.dev_path = dev_path;
    if (!train_variant.empty()) {
      if (train_variant != "hard" && train_variant != "soft") {
        throw DataError("--variant must be hard or soft");
      }
      train_config.net.variant = train_variant == "hard" ? Variant::kHard : Variant::kSoft;
    }
    if (dataset.train_path.empty()) throw DataError("no training data given (--train or config)");
    const Corpus corpus = load_corpus(dataset.train_path, dataset);
    const Corpus dev =
        dataset.dev_path.empty() ? Corpus{} : load_corpus(dataset.dev_path, dataset);
    const TrainResult result = train(corpus, dev, train_config);
    fs::create_directories(global.out_dir);
    const std::string ckpt = (fs::path(global.out_dir) / "model.ckpt.json").string();
    save_checkpoint(ckpt, result.best);
    write_file_atomic((fs::path(global.out_dir) / "metrics.csv").string(),
                      metrics_to_csv(result.metrics));
    std::cout << "checkpoint: " << ckpt << "\n"
              << "best epoch: " << result.best.epoch << "\n"
              << "dev accuracy: " << result.best.dev_accuracy << "\n";
    return 0;
  }

  if (cmd_predict->parsed()) {
    Checkpoint ckpt = load_checkpoint(predict_ckpt);
    std::string out;
    for (const auto& in : read_prediction_inputs(predict_input)) {
      const PredictResult r =
          greedy_decode(in.source, in.attributes, ckpt.model, train_config.max_write);
      out += utf8::encode(in.source) + "\t" + utf8::encode(r.output);
      if (predict_trace) {
        out += "\t" + serialize_actions(r.actions) + "\t" + pointer_trace_string(r.pointer_trace);
      }
      out += "\n";
    }
    emit(predict_out, out);
    return 0;
  }

  if (cmd_ensemble->parsed()) {
    std::vector<Checkpoint> ckpts;
    for (const auto& path : ensemble_ckpts) ckpts.push_back(load_checkpoint(path));
    std::vector<ModelParams*> models;
    for (auto& c : ckpts) models.push_back(&c.model);
    std::string out;
    for (const auto& in : read_prediction_inputs(ensemble_input)) {
      out += utf8::encode(in.source) + "\t" +
             utf8::encode(ensemble_predict(models, in.source, in.attributes,
                                           train_config.max_write)) +
             "\n";
    }
    emit(ensemble_out, out);
    return 0;
  }

  if (cmd_eval->parsed()) {
    auto targets = [&](const std::string& path) {
      std::vector<std::u32string> out;
      std::size_t line_no = 0;
      for (const auto& line : read_lines(path)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        const std::size_t tab = line.rfind('\t');
        if (tab == std::string::npos) {
          throw DataError(path + ": line " + std::to_string(line_no) + ": no tab separator");
        }
        out.push_back(utf8::decode(line.substr(tab + 1)));
      }
      return out;
    };
    std::cout << exact_match_accuracy(targets(eval_predictions), targets(eval_references)) << "\n";
    return 0;
  }

  if (cmd_analyze->parsed()) {
    fs::create_directories(global.out_dir);
    if (cmd_trace->parsed()) {
      Checkpoint ckpt = load_checkpoint(trace_ckpt);
      const TrainingExample parsed =
          parse_sigmorphon_line(trace_input + "\t" + trace_feats + "\tx", 1);
      const AlignmentTrace trace =
          attention_trace(ckpt.model, parsed.source, parsed.attributes, train_config.max_write);
      write_file_atomic((fs::path(global.out_dir) / "trace.csv").string(), trace_to_csv(trace));
      write_file_atomic((fs::path(global.out_dir) / "trace.svg").string(), trace_to_svg(trace));
      std::cout << "wrote trace.csv and trace.svg to " << global.out_dir << "\n";
    } else if (cmd_repr->parsed()) {
      Checkpoint ckpt = load_checkpoint(repr_ckpt);
      DatasetSpec spec = dataset;
      spec.train_path = repr_data;
      const Corpus corpus = load_corpus(repr_data, spec);
      const RepresentationExport rep =
          export_representations(ckpt.model, corpus, repr_k, global.seed);
      write_file_atomic((fs::path(global.out_dir) / "representations.csv").string(),
                        representations_to_csv(rep));
      write_file_atomic((fs::path(global.out_dir) / "representations_by_char.svg").string(),
                        representations_to_svg(rep, false));
      write_file_atomic((fs::path(global.out_dir) / "representations_by_position.svg").string(),
                        representations_to_svg(rep, true));
      std::cout << "wrote representations.csv and two SVGs to " << global.out_dir << "\n";
    } else if (cmd_curves->parsed()) {
      const auto streams = load_metric_streams(curve_files);
      write_file_atomic((fs::path(global.out_dir) / "learning_curves.csv").string(),
                        learning_curves_csv(streams));
      write_file_atomic((fs::path(global.out_dir) / "learning_curves.svg").string(),
                        learning_curves_svg(streams));
      std::cout << "wrote learning_curves.csv and learning_curves.svg to " << global.out_dir << "\n";
    }
    return 0;
  }

  if (cmd_pipeline->parsed()) {
    PipelineConfig pc;
    pc.dataset = dataset;
    pc.train = train_config;
    pc.out_dir = global.out_dir;
    pc.ensemble_members = pipeline_members;
    if (!pipeline_variant.empty()) {
      if (pipeline_variant != "hard" && pipeline_variant != "soft") {
        throw DataError("--variant must be hard or soft");
      }
      pc.train.net.variant = pipeline_variant == "hard" ? Variant::kHard : Variant::kSoft;
    }
    std::cout << run_pipeline(pc);
    return 0;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const PipelineError& e) {
    std::cerr << "pipeline failure " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
