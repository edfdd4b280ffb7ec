#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "hardmono/analysis.hpp"
#include "hardmono/checkpoint.hpp"

using namespace hardmono;

namespace {

ModelParams small_model(const Corpus& corpus, Variant variant = Variant::kHard) {
  NetworkConfig c;
  c.char_emb_dim = 4;
  c.attr_emb_dim = 2;
  c.hidden_dim = 5;
  c.num_layers = 2;
  c.variant = variant;
  Rng rng(19);
  return ModelParams::create(c, build_vocabulary(corpus), rng);
}

}  // namespace

TEST_CASE("exact match accuracy counts codepoint-identical strings") {
  CHECK(exact_match_accuracy({U"lege", U"fliege"}, {U"lege", U"fliege"}) == 1.0);
  CHECK(exact_match_accuracy({U"lege", U"flöge"}, {U"lege", U"fliege"}) == 0.5);
  CHECK(exact_match_accuracy({U"a"}, {U"b"}) == 0.0);
}

TEST_CASE("exact match accuracy rejects bad shapes") {
  CHECK_THROWS_AS(exact_match_accuracy({U"a"}, {U"a", U"b"}), DataError);
  CHECK_THROWS_AS(exact_match_accuracy({}, {}), DataError);
}

TEST_CASE("oracle trace is a column-stochastic one-hot matrix") {
  const ActionSequence s = {Action::write(U'a'), Action::step(), Action::write(U'b'),
                            Action::step(), Action::end()};
  const AlignmentTrace t = oracle_trace(U"ab", s);
  CHECK(t.matrix.rows() == 2);
  CHECK(t.matrix.cols() == 5);
  for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) {
    CHECK(t.matrix.col(j).sum() == 1.0);
    CHECK(t.matrix.col(j).maxCoeff() == 1.0);
  }
}

TEST_CASE("a deletion shows up as two consecutive columns on adjacent rows") {
  // legte -> lege: after the deletion step the pointer dwells on 'e'
  const ActionSequence s = {Action::write(U'l'), Action::step(), Action::write(U'e'),
                            Action::step(), Action::write(U'g'), Action::step(),
                            Action::step(), Action::write(U'e'), Action::step(),
                            Action::end()};
  const AlignmentTrace t = oracle_trace(U"legte", s);
  // columns 5 and 6 are the two steps consuming g and t
  CHECK(t.matrix(2, 5) == 1.0);  // row g
  CHECK(t.matrix(3, 6) == 1.0);  // row t
  CHECK(t.matrix(4, 7) == 1.0);  // final write attends the last e
}

TEST_CASE("hard attention trace matches the decode pointer trail") {
  Corpus corpus = {{U"ab", {}, U"ba"}};
  ModelParams m = small_model(corpus);
  const AlignmentTrace t = attention_trace(m, U"ab", {});
  CHECK(t.matrix.rows() == 2);
  CHECK(t.matrix.cols() == static_cast<Eigen::Index>(t.actions.size()));
  for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) CHECK(t.matrix.col(j).sum() == 1.0);
}

TEST_CASE("soft attention trace columns are distributions") {
  Corpus corpus = {{U"abc", {}, U"cb"}};
  ModelParams m = small_model(corpus, Variant::kSoft);
  const AlignmentTrace t = attention_trace(m, U"abc", {});
  CHECK(t.matrix.rows() == 3);
  for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) {
    CHECK(std::abs(t.matrix.col(j).sum() - 1.0) < 1e-9);
    CHECK(t.matrix.col(j).minCoeff() > 0.0);
  }
}

TEST_CASE("trace csv has a header plus one row per input character") {
  const AlignmentTrace t = oracle_trace(U"ab", {Action::write(U'x'), Action::end()});
  const std::string csv = trace_to_csv(t);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.rfind("input,x,⊣\n", 0) == 0);
}

TEST_CASE("trace svg contains one cell per matrix entry") {
  const AlignmentTrace t = oracle_trace(U"abc", {Action::step(), Action::end()});
  const std::string svg = trace_to_svg(t);
  std::size_t rects = 0, pos = 0;
  while ((pos = svg.find("<rect", pos)) != std::string::npos) { ++rects; ++pos; }
  CHECK(rects == 6);
  CHECK(svg.find("<svg") == 0);
}

TEST_CASE("representation export samples exactly k rows with finite coordinates") {
  Corpus corpus = {{U"legte", {}, U"lege"}, {U"sagte", {}, U"sage"}, {U"fragte", {}, U"frage"}};
  ModelParams m = small_model(corpus);
  const RepresentationExport rep = export_representations(m, corpus, 9, 4);
  CHECK(rep.rows.size() == 9);
  for (const auto& r : rep.rows) {
    CHECK(std::isfinite(r.coord_x));
    CHECK(std::isfinite(r.coord_y));
    CHECK(r.relative_position >= 0.0);
    CHECK(r.relative_position <= 1.0);
  }
  const std::string csv = representations_to_csv(rep);
  CHECK(csv.rfind("# centered=true\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 9);
  for (const bool by_pos : {false, true}) {
    const std::string svg = representations_to_svg(rep, by_pos);
    std::size_t circles = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) { ++circles; ++pos; }
    CHECK(circles == 9);
  }
}

TEST_CASE("oversampling the corpus is rejected") {
  Corpus corpus = {{U"ab", {}, U"ba"}};
  ModelParams m = small_model(corpus);
  CHECK_THROWS_AS(export_representations(m, corpus, 100, 1), DataError);
}

TEST_CASE("metric streams round-trip through files into aligned curves") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const std::string hard_path = (dir / "hard.csv").string();
  const std::string soft_path = (dir / "soft.csv").string();
  write_file_atomic(hard_path,
                    "epoch,train_loss,train_acc,dev_acc\n1,2.0,0.25,0.5\n2,1.0,0.5,0.25\n");
  write_file_atomic(soft_path, "epoch,train_loss,train_acc,dev_acc\n1,2.5,0.25,\n3,0.5,0.75,0.5\n");

  const auto streams = load_metric_streams({hard_path, soft_path});
  std::remove(hard_path.c_str());
  std::remove(soft_path.c_str());

  REQUIRE(streams.size() == 2);
  CHECK(streams[0].name == "hard");
  CHECK(streams[1].name == "soft");
  CHECK(streams[0].metrics.size() == 2);
  CHECK_FALSE(streams[1].metrics[0].dev_evaluated);

  const std::string csv = learning_curves_csv(streams);
  CHECK(csv.rfind("epoch,hard_train_acc,hard_dev_acc,soft_train_acc,soft_dev_acc\n", 0) == 0);
  // epoch 2 exists only for hard, epoch 3 only for soft: gaps stay empty
  CHECK(csv.find("\n2,0.5,0.25,,\n") != std::string::npos);
  CHECK(csv.find("\n3,,,0.75,0.5\n") != std::string::npos);

  const std::string svg = learning_curves_svg(streams);
  CHECK(svg.find("hard-train") != std::string::npos);
  CHECK(svg.find("soft-dev") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("malformed metric rows name the file and line") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "bad_metrics.csv").string();
  write_file_atomic(path, "epoch,train_loss,train_acc,dev_acc\nnot-a-number,1,2,3\n");
  CHECK_THROWS_WITH_AS(load_metric_streams({path}), doctest::Contains("line 2"), DataError);
  std::remove(path.c_str());
}
