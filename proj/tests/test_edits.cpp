#include <doctest.h>

#include "classlift/edits.hpp"

using namespace classlift;

TEST_CASE("splice batches apply left to right and record replayable offsets") {
  std::string text = "abc def ghi";
  std::vector<Splice> trace;
  std::vector<Splice> batch = {
      {8, "ghi", "GHI!", kPhaseRule1, "C"},
      {0, "abc", "x", kPhaseRule1, "C"},
      {4, "def", "defdef", kPhaseRule1, "C"},
  };
  REQUIRE(applySplices(&text, batch, &trace));
  CHECK(text == "x defdef GHI!");

  REQUIRE(trace.size() == 3);
  CHECK(trace[0].offset == 0);
  CHECK(trace[1].offset == 2);  // after "abc" -> "x" shrank by 2
  CHECK(trace[2].offset == 9);

  auto replayed = replaySplices("abc def ghi", trace);
  REQUIRE(replayed);
  CHECK(*replayed == text);
}

TEST_CASE("insertions at the same offset keep batch order") {
  std::string text = "ab";
  std::vector<Splice> trace;
  std::vector<Splice> batch = {
      {1, "", "1", kPhaseRule2, ""},
      {1, "", "2", kPhaseRule2, ""},
  };
  REQUIRE(applySplices(&text, batch, &trace));
  CHECK(text == "a12b");
  CHECK(trace[0].offset == 1);
  CHECK(trace[1].offset == 2);
}

TEST_CASE("overlaps and mismatches are rejected without mutating") {
  std::string text = "hello world";
  SUBCASE("overlap") {
    std::vector<Splice> batch = {{0, "hello", "x", 1, ""}, {3, "lo", "y", 1, ""}};
    CHECK(!applySplices(&text, batch, nullptr));
    CHECK(text == "hello world");
  }
  SUBCASE("before mismatch") {
    std::vector<Splice> batch = {{0, "jello", "x", 1, ""}};
    CHECK(!applySplices(&text, batch, nullptr));
    CHECK(text == "hello world");
  }
  SUBCASE("out of range") {
    std::vector<Splice> batch = {{9, "ldx", "x", 1, ""}};
    CHECK(!applySplices(&text, batch, nullptr));
  }
}

TEST_CASE("replay detects divergence") {
  std::vector<Splice> trace = {{0, "zzz", "x", 1, ""}};
  CHECK(!replaySplices("abc", trace).has_value());
}

TEST_CASE("multi-batch traces replay across stages") {
  std::string text = "one two three";
  std::vector<Splice> trace;
  REQUIRE(applySplices(&text, {{0, "one", "ONE", 1, ""}}, &trace));
  REQUIRE(applySplices(&text, {{4, "two", "2", 2, ""}, {8, "three", "3", 2, ""}}, &trace));
  CHECK(text == "ONE 2 3");
  auto replayed = replaySplices("one two three", trace);
  REQUIRE(replayed);
  CHECK(*replayed == "ONE 2 3");
}
