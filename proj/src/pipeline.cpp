#include "hardmono/pipeline.hpp"

#include <filesystem>
#include <map>

#include <json.hpp>

#include "hardmono/analysis.hpp"
#include "hardmono/inference.hpp"
#include "hardmono/utf8.hpp"

namespace hardmono {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

std::string attrs_key(const std::map<std::string, std::string>& attrs) {
  std::string key;
  for (const auto& [k, v] : attrs) {
    if (!key.empty()) key += ",";
    key += k + "=" + v;
  }
  return key.empty() ? "(none)" : key;
}

}  // namespace

std::string run_pipeline(const PipelineConfig& config) {
  if (config.ensemble_members < 1) throw PipelineError("config", "ensemble_members must be >= 1");
  const fs::path out(config.out_dir.empty() ? "." : config.out_dir);
  fs::create_directories(out);

  const Corpus train_corpus = stage("ingest", [&] {
    if (config.dataset.train_path.empty()) throw DataError("no train file configured");
    Corpus c = load_corpus(config.dataset.train_path, config.dataset);
    if (c.empty()) throw DataError("train corpus is empty: " + config.dataset.train_path);
    return c;
  });
  const Corpus dev_corpus = stage("ingest", [&] {
    return config.dataset.dev_path.empty() ? Corpus{}
                                           : load_corpus(config.dataset.dev_path, config.dataset);
  });
  const Corpus test_corpus = stage("ingest", [&] {
    return config.dataset.test_path.empty() ? Corpus{}
                                            : load_corpus(config.dataset.test_path, config.dataset);
  });

  // Alignment + oracle artifacts (hard variant trains its own aligner
  // again internally; these files are the inspectable record).
  if (config.train.net.variant == Variant::kHard) {
    stage("align", [&] {
      std::vector<std::pair<std::u32string, std::u32string>> pairs;
      for (const auto& ex : train_corpus) pairs.emplace_back(ex.source, ex.target);
      const AlignmentModel model =
          train_aligner(pairs, config.train.aligner_iterations, config.train.aligner_smoothing);
      std::string alignments, oracles;
      for (const auto& ex : train_corpus) {
        const AlignmentList a = align(ex.source, ex.target, model);
        alignments += serialize_alignment(a) + "\n";
        oracles += serialize_actions(derive_actions(a)) + "\n";
      }
      write_file_atomic((out / "alignments.txt").string(), alignments);
      write_file_atomic((out / "oracle_actions.txt").string(), oracles);
      return 0;
    });
  }

  std::vector<Checkpoint> members;
  json member_summaries = json::array();
  for (int m = 0; m < config.ensemble_members; ++m) {
    TrainConfig tc = config.train;
    tc.seed = config.train.seed + static_cast<std::uint64_t>(m);
    TrainResult r = stage("train", [&] { return train(train_corpus, dev_corpus, tc); });
    const std::string tag = "member_" + std::to_string(m);
    const std::string ckpt_path = (out / (tag + ".ckpt.json")).string();
    stage("train", [&] {
      save_checkpoint(ckpt_path, r.best);
      write_file_atomic((out / (tag + ".metrics.csv")).string(), metrics_to_csv(r.metrics));
      return 0;
    });
    member_summaries.push_back({{"seed", tc.seed},
                                {"checkpoint", ckpt_path},
                                {"best_epoch", r.best.epoch},
                                {"dev_accuracy", r.best.dev_accuracy}});
    members.push_back(std::move(r.best));
  }

  auto predict_corpus = [&](const Corpus& corpus, const std::string& name) {
    return stage("predict", [&] {
      std::vector<ModelParams*> models;
      for (auto& ckpt : members) models.push_back(&ckpt.model);
      std::vector<std::u32string> predictions;
      std::string tsv;
      for (const auto& ex : corpus) {
        const std::u32string y =
            ensemble_predict(models, ex.source, ex.attributes, config.train.max_write);
        predictions.push_back(y);
        TrainingExample row = ex;
        row.target = y;
        tsv += serialize_sigmorphon(row) + "\n";
      }
      if (!corpus.empty()) {
        write_file_atomic((out / (name + "_predictions.tsv")).string(), tsv);
      }
      return predictions;
    });
  };

  auto evaluate = [&](const Corpus& corpus, const std::vector<std::u32string>& predictions) {
    json j;
    if (corpus.empty()) return j;
    std::vector<std::u32string> refs;
    for (const auto& ex : corpus) refs.push_back(ex.target);
    j["accuracy"] = exact_match_accuracy(predictions, refs);
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_type;  // hits, total
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      auto& [hits, total] = per_type[attrs_key(corpus[i].attributes)];
      hits += (predictions[i] == refs[i]);
      ++total;
    }
    json types = json::object();
    double sum = 0.0;
    for (const auto& [key, ht] : per_type) {
      const double acc = static_cast<double>(ht.first) / static_cast<double>(ht.second);
      types[key] = {{"accuracy", acc}, {"count", ht.second}};
      sum += acc;
    }
    j["per_type"] = types;
    j["per_type_average"] = sum / static_cast<double>(per_type.size());
    return j;
  };

  json summary;
  summary["out_dir"] = out.string();
  summary["variant"] = config.train.net.variant == Variant::kHard ? "hard" : "soft";
  summary["members"] = member_summaries;

  const auto train_pred = predict_corpus(train_corpus, "train");
  summary["train"] = stage("evaluate", [&] { return evaluate(train_corpus, train_pred); });
  if (!dev_corpus.empty()) {
    const auto dev_pred = predict_corpus(dev_corpus, "dev");
    summary["dev"] = stage("evaluate", [&] { return evaluate(dev_corpus, dev_pred); });
  }
  if (!test_corpus.empty()) {
    const auto test_pred = predict_corpus(test_corpus, "test");
    summary["test"] = stage("evaluate", [&] { return evaluate(test_corpus, test_pred); });
  }

  const std::string text = summary.dump(2) + "\n";
  write_file_atomic((out / "summary.json").string(), text);
  return text;
}

}  // namespace hardmono
