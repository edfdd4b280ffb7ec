#include <doctest.h>

#include <algorithm>

#include "hardmono/config.hpp"
#include "hardmono/data.hpp"

using namespace hardmono;

TEST_CASE("sigmorphon line parses fields and features") {
  const auto ex = parse_sigmorphon_line("fliegen\tpos=V,tense=PST\tflog", 1);
  CHECK(ex.source == U"fliegen");
  CHECK(ex.target == U"flog");
  REQUIRE(ex.attributes.size() == 2);
  CHECK(ex.attributes.at("pos") == "V");
  CHECK(ex.attributes.at("tense") == "PST");
}

TEST_CASE("wrong field count names the line") {
  CHECK_THROWS_WITH_AS(parse_sigmorphon_line("fliegen\tflog", 17), doctest::Contains("line 17"),
                       DataError);
}

TEST_CASE("empty feature field yields an empty attribute map") {
  const auto ex = parse_sigmorphon_line("ab\t\tba", 1);
  CHECK(ex.attributes.empty());
}

TEST_CASE("bare tags become name = value attributes") {
  const auto ex = parse_sigmorphon_line("ab\tV,PST\tba", 1);
  CHECK(ex.attributes.at("V") == "V");
  CHECK(ex.attributes.at("PST") == "PST");
}

TEST_CASE("parse-serialize-parse is the identity") {
  for (const char* line : {"fliegen\tpos=V,tense=PST\tflog", "ab\t\tba", "härten\tcase=NOM\thärte"}) {
    const auto once = parse_sigmorphon_line(line, 1);
    const auto twice = parse_sigmorphon_line(serialize_sigmorphon(once), 1);
    CHECK(once.source == twice.source);
    CHECK(once.target == twice.target);
    CHECK(once.attributes == twice.attributes);
  }
}

TEST_CASE("celex pairs carry the configured inflection type") {
  const auto ex = parse_celex_pair_line("legte\tlege", "13SIA", 1);
  CHECK(ex.source == U"legte");
  CHECK(ex.attributes.at("type") == "13SIA");
}

TEST_CASE("vocabulary layout and id spaces") {
  const Corpus corpus = {{U"ab", {}, U"b"}};
  const Vocabulary v = build_vocabulary(corpus);
  CHECK(v.num_inputs() == 4);  // UNK, BOS, a, b
  CHECK(v.num_outputs() == 2);  // UNK, b
  CHECK(v.num_actions() == v.num_outputs() + 2);
  CHECK(v.input_id(U'a') >= 2);
  CHECK(v.input_id(U'z') == Vocabulary::kInputUnk);
  CHECK(v.output_id(U'z') == Vocabulary::kOutputUnk);
}

TEST_CASE("vocabulary is order independent") {
  Corpus a = {{U"xy", {{"k", "1"}}, U"y"}, {U"ab", {{"k", "2"}}, U"b"}};
  Corpus b = a;
  std::reverse(b.begin(), b.end());
  CHECK(build_vocabulary(a) == build_vocabulary(b));
}

TEST_CASE("attribute slots map missing attributes to NA") {
  const Corpus corpus = {{U"a", {{"pos", "V"}, {"num", "SG"}}, U"b"},
                         {U"c", {{"pos", "N"}}, U"d"}};
  const Vocabulary v = build_vocabulary(corpus);
  REQUIRE(v.attribute_names == std::vector<std::string>{"num", "pos"});
  const auto slots = v.attribute_slot_ids({{"pos", "V"}});
  CHECK(slots[0] == 0);  // num -> NA
  CHECK(slots[1] == v.attribute_value_id(1, "V"));
  CHECK(v.attribute_value_id(0, "unseen") == 0);
}

TEST_CASE("config text parses and applies") {
  TrainConfig train;
  DatasetSpec dataset;
  apply_config(parse_config_text("variant = soft\nhidden_dim = 64\n# comment\nseed=9\n"
                                 "format = celex-pairs\ninflection_type = 13SIA\n"),
               train, dataset);
  CHECK(train.net.variant == Variant::kSoft);
  CHECK(train.net.hidden_dim == 64);
  CHECK(train.seed == 9);
  CHECK(dataset.format == DatasetFormat::kCelexPairs);
  CHECK(dataset.inflection_type == "13SIA");
}

TEST_CASE("unknown config keys are rejected") {
  TrainConfig train;
  DatasetSpec dataset;
  CHECK_THROWS_WITH_AS(apply_config(parse_config_text("hiden_dim = 3\n"), train, dataset),
                       doctest::Contains("hiden_dim"), DataError);
}
