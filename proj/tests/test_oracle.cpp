#include <doctest.h>

#include <random>

#include "hardmono/oracle.hpp"

using namespace hardmono;

namespace {

AlignmentList identity_alignment(const std::u32string& s) {
  AlignmentList a;
  for (char32_t c : s) a.push_back({c, c});
  return a;
}

// Random monotonic alignment over random strings; returns (x, y, alignment).
struct RandomCase {
  std::u32string x, y;
  AlignmentList alignment;
};

RandomCase random_alignment(std::mt19937& gen) {
  std::uniform_int_distribution<int> len(1, 12), chr(0, 7), shape(0, 9);
  RandomCase rc;
  const int pairs = len(gen);
  for (int i = 0; i < pairs; ++i) {
    const int s = shape(gen);
    const char32_t src = static_cast<char32_t>(U'a' + chr(gen));
    const char32_t tgt = static_cast<char32_t>(U'a' + chr(gen));
    if (s < 6) {
      rc.alignment.push_back({src, tgt});
      rc.x.push_back(src);
      rc.y.push_back(tgt);
    } else if (s < 8) {
      rc.alignment.push_back({src, std::nullopt});
      rc.x.push_back(src);
    } else {
      rc.alignment.push_back({std::nullopt, tgt});
      rc.y.push_back(tgt);
    }
  }
  if (rc.x.empty()) {
    rc.x.push_back(U'a');
    rc.alignment.push_back({U'a', std::nullopt});
  }
  return rc;
}

}  // namespace

TEST_CASE("identity alignment produces write-step pairs") {
  const ActionSequence s = derive_actions(identity_alignment(U"abc"));
  const ActionSequence expected = {Action::write(U'a'), Action::step(), Action::write(U'b'),
                                   Action::step(), Action::write(U'c'), Action::step(),
                                   Action::end()};
  CHECK(s == expected);
}

TEST_CASE("deletion becomes two consecutive steps") {
  const AlignmentList a = {{U'l', U'l'}, {U'e', U'e'}, {U'g', U'g'},
                           {U't', std::nullopt}, {U'e', U'e'}};
  const ActionSequence expected = {Action::write(U'l'), Action::step(), Action::write(U'e'),
                                   Action::step(), Action::write(U'g'), Action::step(),
                                   Action::step(), Action::write(U'e'), Action::step(),
                                   Action::end()};
  CHECK(derive_actions(a) == expected);
  CHECK(execute_actions(U"legte", derive_actions(a)).output == U"lege");
}

TEST_CASE("insertion becomes consecutive writes after the step") {
  const AlignmentList a = {{U'f', U'f'}, {U'l', U'l'}, {U'o', U'i'},
                           {std::nullopt, U'e'}, {U'g', U'g'}, {std::nullopt, U'e'}};
  const ActionSequence expected = {Action::write(U'f'), Action::step(), Action::write(U'l'),
                                   Action::step(), Action::write(U'i'), Action::write(U'e'),
                                   Action::step(), Action::write(U'g'), Action::write(U'e'),
                                   Action::step(), Action::end()};
  CHECK(derive_actions(a) == expected);
  CHECK(execute_actions(U"flog", derive_actions(a)).output == U"fliege");
}

TEST_CASE("executing an empty program writes nothing") {
  const auto r = execute_actions(U"abc", {Action::end()});
  CHECK(r.output.empty());
  CHECK(r.hit_end);
}

TEST_CASE("writes without steps keep the pointer at one") {
  const auto r = execute_actions(U"ab", {Action::write(U'x'), Action::write(U'y'), Action::end()});
  CHECK(r.output == U"xy");
  for (std::size_t p : r.pointer_trace) CHECK(p == 1);
}

TEST_CASE("pointer clamps at the end of the input") {
  const ActionSequence s = {Action::step(), Action::step(), Action::step(), Action::step(),
                            Action::end()};
  const auto r = execute_actions(U"ab", s);
  CHECK(r.pointer_trace == std::vector<std::size_t>{1, 2, 2, 2, 2});
}

TEST_CASE("malformed sequences are rejected") {
  CHECK_THROWS_AS(validate_actions({}), DataError);
  CHECK_THROWS_AS(validate_actions({Action::write(U'a')}), DataError);
  CHECK_THROWS_AS(validate_actions({Action::end(), Action::write(U'a'), Action::end()}), DataError);
}

TEST_CASE("round-trip property over random monotonic alignments") {
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const RandomCase rc = random_alignment(gen);
    const ActionSequence s = derive_actions(rc.alignment);
    CHECK(execute_actions(rc.x, s).output == rc.y);
    CHECK(s.size() <= rc.x.size() + rc.y.size() + 1);
  }
}

TEST_CASE("step count always equals the input length") {
  std::mt19937 gen(99);
  for (int trial = 0; trial < 500; ++trial) {
    const RandomCase rc = random_alignment(gen);
    std::size_t steps = 0;
    for (const Action& act : derive_actions(rc.alignment)) steps += (act.kind == ActionKind::kStep);
    CHECK(steps == rc.x.size());
  }
}

TEST_CASE("action serialization round-trips") {
  const ActionSequence s = {Action::write(U'f'), Action::step(), Action::write(U'ä'),
                            Action::step(), Action::end()};
  CHECK(parse_actions(serialize_actions(s)) == s);
}
