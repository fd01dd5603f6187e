#include "constel/protocol.hpp"

#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace constel;
using namespace constel::testing;

namespace {

SemanticDescriptor descriptor_of(std::initializer_list<std::pair<Label, std::uint32_t>> entries) {
  SemanticDescriptor d;
  for (const auto& [label, count] : entries) d.counts[label] = count;
  return d;
}

}  // namespace

TEST_CASE("ten robots split eighty labels into eight each") {
  const auto assignment = assign_labels(10, 80);
  REQUIRE(assignment.shards.size() == 10);
  for (std::size_t robot = 0; robot < 10; ++robot) {
    CHECK(assignment.shards[robot] == LabelRange{static_cast<Label>(8 * robot),
                                                 static_cast<Label>(8 * robot + 8)});
  }
}

TEST_CASE("single robot owns the whole universe") {
  const auto assignment = assign_labels(1, 80);
  REQUIRE(assignment.shards.size() == 1);
  CHECK(assignment.shards[0] == LabelRange{0, 80});
}

TEST_CASE("three robots over eighty labels get 27, 27, 26") {
  const auto assignment = assign_labels(3, 80);
  REQUIRE(assignment.shards.size() == 3);
  CHECK(assignment.shards[0].size() == 27);
  CHECK(assignment.shards[1].size() == 27);
  CHECK(assignment.shards[2].size() == 26);
  CHECK(assignment.shards[0].first == 0);
  CHECK(assignment.shards[2].last == 80);
}

TEST_CASE("more robots than labels is an error") {
  CHECK_THROWS_AS(assign_labels(81, 80), std::invalid_argument);
  CHECK_THROWS_AS(assign_labels(0, 80), std::invalid_argument);
}

TEST_CASE("shards partition the universe and ownership is consistent") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t labels = 1 + rng() % 256;
    const std::size_t robots = 1 + rng() % labels;
    const auto assignment = assign_labels(robots, labels);
    REQUIRE(assignment.shards.size() == robots);
    CHECK(assignment.num_labels() == labels);
    Label next = 0;
    for (std::size_t robot = 0; robot < robots; ++robot) {
      const LabelRange& shard = assignment.shards[robot];
      CHECK(shard.first == next);
      CHECK(shard.size() >= labels / robots);
      CHECK(shard.size() <= labels / robots + 1);
      next = shard.last;
    }
    CHECK(next == labels);
    for (Label l = 0; l < labels; ++l) {
      CHECK(assignment.shards[assignment.owner_of(l)].contains(l));
    }
  }
}

TEST_CASE("split_query routes each class to its shard owner") {
  // 4 robots over 8 classes: shards [0,1] [2,3] [4,5] [6,7].
  // book = 2 (robot 1), bottle = 4 and chair = 5 (robot 2).
  const auto assignment = assign_labels(4, 8);
  const auto desc = descriptor_of({{2, 1}, {4, 2}, {5, 1}});
  const auto messages = split_query(desc, assignment, {3, 42});
  REQUIRE(messages.size() == 2);
  REQUIRE(messages.count(1) == 1);
  REQUIRE(messages.count(2) == 1);
  CHECK(messages.at(1).origin == FrameId{3, 42});
  CHECK(messages.at(1).entries == std::vector<PartialQueryMsg::Entry>{{2, 1}});
  CHECK(messages.at(2).entries == std::vector<PartialQueryMsg::Entry>{{4, 2}, {5, 1}});
}

TEST_CASE("empty descriptor splits into no messages") {
  CHECK(split_query({}, assign_labels(4, 8), {0, 0}).empty());
}

TEST_CASE("descriptor within the querier's own shard needs no remote message") {
  const auto assignment = assign_labels(4, 8);
  const auto messages = split_query(descriptor_of({{0, 1}, {1, 3}}), assignment, {0, 7});
  REQUIRE(messages.size() == 1);
  CHECK(messages.count(0) == 1);  // local entry only
}

TEST_CASE("split messages reconstruct the descriptor support exactly") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto desc = random_descriptor(rng, 80, 15, 14);
    const std::size_t robots = 1 + rng() % 12;
    const auto assignment = assign_labels(robots, 80);
    const auto messages = split_query(desc, assignment, {0, 1});
    SemanticDescriptor reassembled;
    for (const auto& [robot, msg] : messages) {
      CHECK(!msg.entries.empty());
      for (const auto& entry : msg.entries) {
        CHECK(assignment.owner_of(entry.label) == robot);
        CHECK(reassembled.counts.count(entry.label) == 0);  // no duplication
        reassembled.counts[entry.label] = entry.count;
      }
    }
    CHECK(reassembled.counts == desc.counts);  // counts < 15 here, no saturation
  }
}

TEST_CASE("first query against an empty store returns nothing") {
  PartialStore store{LabelRange{0, 80}, {}};
  const auto response =
      handle_partial_query(store, {{0, 0}, {{5, 1}}}, {4, 200});
  CHECK(response.candidates.empty());
  CHECK(store.entries.size() == 1);  // stored after comparison
}

TEST_CASE("identical partial from another robot comes back") {
  PartialStore store{LabelRange{0, 80}, {}};
  QueryParams params{4, 200};
  handle_partial_query(store, {{2, 17}, {{5, 2}, {9, 1}}}, params);
  const auto response = handle_partial_query(store, {{0, 3}, {{5, 2}, {9, 1}}}, params);
  REQUIRE(response.candidates.size() == 1);
  CHECK(response.candidates[0] == FrameId{2, 17});
}

TEST_CASE("zero-score partials are never returned as candidates") {
  PartialStore store{LabelRange{0, 80}, {}};
  QueryParams params{4, 200};
  handle_partial_query(store, {{2, 17}, {{5, 2}}}, params);
  const auto response = handle_partial_query(store, {{0, 3}, {{9, 1}}}, params);
  CHECK(response.candidates.empty());
}

TEST_CASE("same-robot neighbors are excluded from candidates") {
  PartialStore store{LabelRange{0, 80}, {}};
  QueryParams params{4, 200};
  handle_partial_query(store, {{0, 100}, {{5, 2}}}, params);
  handle_partial_query(store, {{0, 500}, {{5, 2}}}, params);
  const auto response = handle_partial_query(store, {{0, 250}, {{5, 2}}}, params);
  REQUIRE(response.candidates.size() == 1);  // frame 100 is 150 away: excluded
  CHECK(response.candidates[0] == FrameId{0, 500});
}

TEST_CASE("labels outside the shard are rejected") {
  PartialStore store{LabelRange{0, 8}, {}};
  CHECK_THROWS_AS(handle_partial_query(store, {{0, 0}, {{9, 1}}}, {4, 200}),
                  std::invalid_argument);
}

TEST_CASE("top candidates equal a brute-force scan of the store") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    PartialStore store{LabelRange{0, 80}, {}};
    PartialStore mirror{LabelRange{0, 80}, {}};
    QueryParams params{4, 200};
    // six stored partials with assorted overlaps
    for (std::uint32_t i = 0; i < 6; ++i) {
      const auto desc = random_descriptor(rng, 80, 6, 9);
      PartialQueryMsg msg;
      msg.origin = {static_cast<std::uint16_t>(1 + i % 3), 1000 * i};
      for (const auto& [label, count] : desc.counts) {
        msg.entries.push_back({label, static_cast<std::uint8_t>(std::min<std::uint32_t>(count, 15))});
      }
      if (msg.entries.empty()) msg.entries.push_back({static_cast<Label>(i), 1});
      handle_partial_query(store, msg, params);
      handle_partial_query(mirror, msg, params);
    }
    SemanticDescriptor query;
    PartialQueryMsg query_msg;
    query_msg.origin = {0, 123};
    const auto desc = random_descriptor(rng, 80, 6, 9);
    for (const auto& [label, count] : desc.counts) {
      const auto saturated = static_cast<std::uint8_t>(std::min<std::uint32_t>(count, 15));
      query_msg.entries.push_back({label, saturated});
      query.counts[label] = saturated;
    }
    if (query_msg.entries.empty()) {
      query_msg.entries.push_back({7, 2});
      query.counts[7] = 2;
    }
    const auto expected =
        brute_force_candidates(mirror, query, query_msg.origin, params.max_candidates,
                               params.neighbor_exclusion, 80);
    const auto response = handle_partial_query(store, query_msg, params);
    CHECK(response.candidates == expected);
  }
}

TEST_CASE("top candidates match the oracle on a thousand-entry store") {
  std::mt19937 rng(53);
  PartialStore store{LabelRange{0, 80}, {}};
  PartialStore mirror{LabelRange{0, 80}, {}};
  QueryParams params{4, 200};
  for (std::uint32_t i = 0; i < 1000; ++i) {
    PartialQueryMsg msg;
    msg.origin = {static_cast<std::uint16_t>(rng() % 6), i * 37};
    Label label = static_cast<Label>(rng() % 70);
    const std::size_t entries = 1 + rng() % 4;
    for (std::size_t e = 0; e < entries; ++e) {
      msg.entries.push_back({label, static_cast<std::uint8_t>(1 + rng() % 9)});
      label = static_cast<Label>(label + 1 + rng() % 3);
    }
    handle_partial_query(store, msg, params);
    handle_partial_query(mirror, msg, params);
  }
  for (int trial = 0; trial < 20; ++trial) {
    PartialQueryMsg query_msg;
    query_msg.origin = {static_cast<std::uint16_t>(rng() % 6), 50000 + trial};
    Label label = static_cast<Label>(rng() % 70);
    SemanticDescriptor query;
    for (std::size_t e = 0; e < 3; ++e) {
      const auto count = static_cast<std::uint8_t>(1 + rng() % 9);
      query_msg.entries.push_back({label, count});
      query.counts[label] = count;
      label = static_cast<Label>(label + 1 + rng() % 4);
    }
    const auto expected = brute_force_candidates(mirror, query, query_msg.origin,
                                                 params.max_candidates,
                                                 params.neighbor_exclusion, 80);
    const auto response = handle_partial_query(store, query_msg, params);
    handle_partial_query(mirror, query_msg, params);  // keep the stores in step
    CHECK(response.candidates == expected);
  }
}

TEST_CASE("split_query saturates counts at the wire maximum") {
  const auto messages = split_query(descriptor_of({{2, 20}}), assign_labels(4, 8), {0, 0});
  REQUIRE(messages.count(1) == 1);
  CHECK(messages.at(1).entries == std::vector<PartialQueryMsg::Entry>{{2, 15}});
}

TEST_CASE("score ties go to the earlier arrival") {
  PartialStore store{LabelRange{0, 80}, {}};
  QueryParams params{1, 200};
  handle_partial_query(store, {{1, 10}, {{5, 1}}}, params);
  handle_partial_query(store, {{2, 20}, {{5, 1}}}, params);  // same score later
  const auto response = handle_partial_query(store, {{3, 30}, {{5, 1}}}, params);
  REQUIRE(response.candidates.size() == 1);
  CHECK(response.candidates[0] == FrameId{1, 10});
}

TEST_CASE("full-query targets are the robots owning the most candidates") {
  CandidateResponseMsg r1{{{3, 1}, {3, 2}, {1, 5}}};
  CandidateResponseMsg r2{{{3, 9}, {3, 10}, {3, 11}, {1, 6}}};
  CHECK(select_full_query_targets({r1, r2}, 1) == std::vector<std::uint16_t>{3});
  CHECK(select_full_query_targets({}, 4).empty());
  // counts {1: 2, 2: 2, 3: 1} -> tie broken toward the lower robot id
  CandidateResponseMsg r3{{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}};
  CHECK(select_full_query_targets({r3}, 2) == std::vector<std::uint16_t>{1, 2});
}

TEST_CASE("full query against an empty store is empty") {
  ConstellationStore store;
  const auto response = handle_full_query(store, {{0, 0}, {}}, {});
  CHECK(response.entries.empty());
}

TEST_CASE("full query finds the decoded twin of a stored scene") {
  std::mt19937 rng(41);
  Constellation scene = random_constellation(rng, {1, 50}, 10, 80);
  while (scene.objects.empty()) scene = random_constellation(rng, {1, 50}, 10, 80);

  ConstellationStore store;
  store.entries.push_back(quantize_constellation(scene));

  const FullQueryMsg msg = decode_full_query(encode(FullQueryMsg{{0, 700}, scene.objects}));
  const auto response = handle_full_query(store, msg, {});
  REQUIRE(response.entries.size() == 1);
  CHECK(response.entries[0].frame == FrameId{1, 50});
  CHECK(response.entries[0].quantized_score == 255);  // identical twin: score 1.0
}

TEST_CASE("scores below the reporting threshold are dropped") {
  // stored scene shares half its semantics with the query
  ConstellationStore store;
  store.entries.push_back({{1, 0},
                           {{73, {0, 0, 0}}, {73, {2, 0, 0}}, {56, {0, 1, 0}}}});
  Constellation query{{0, 900},
                      {{73, {0, 0, 0}}, {56, {0, 1, 0}}, {39, {5, 5, 5}}}};

  FullCheckParams params;
  params.score_threshold = 0.25;  // hand-computed score is 0.5
  auto scored = score_against_store(store, query, params);
  REQUIRE(scored.size() == 1);
  CHECK(scored[0].score == 0.5);

  params.score_threshold = 0.6;
  CHECK(score_against_store(store, query, params).empty());
}

TEST_CASE("full check respects neighbor exclusion") {
  std::mt19937 rng(43);
  Constellation scene = random_constellation(rng, {0, 100}, 8, 80);
  while (scene.objects.empty()) scene = random_constellation(rng, {0, 100}, 8, 80);
  ConstellationStore store;
  store.entries.push_back(scene);

  Constellation query = scene;
  query.id = {0, 150};  // same robot, 50 frames apart
  CHECK(score_against_store(store, query, {}).empty());
  query.id = {0, 400};
  CHECK(score_against_store(store, query, {}).size() == 1);
}
