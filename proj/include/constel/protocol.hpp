#pragma once
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "constel/core.hpp"
#include "constel/matching.hpp"
#include "constel/wire.hpp"

namespace constel {

/// Partition of the label universe into contiguous shards, one per robot.
/// Shard sizes differ by at most one; the first (num_labels mod num_robots)
/// robots own the larger shards.
struct LabelAssignment {
  std::vector<LabelRange> shards;

  std::uint16_t owner_of(Label label) const;  // throws std::out_of_range outside the universe
  std::size_t num_labels() const;
  std::size_t num_robots() const { return shards.size(); }
};

LabelAssignment assign_labels(std::size_t num_robots, std::size_t num_labels);

/// Restricts `desc` to each robot's shard and builds one partial query per
/// robot whose shard intersects the descriptor's support. Robots with an
/// empty intersection receive nothing. Counts saturate at the wire maximum
/// of 15. Keys are robot ids, ascending.
std::map<std::uint16_t, PartialQueryMsg> split_query(const SemanticDescriptor& desc,
                                                     const LabelAssignment& assignment,
                                                     FrameId origin);

/// Partial descriptors one robot has stored for its shard, in arrival order.
struct PartialStore {
  struct Entry {
    FrameId origin;
    SemanticDescriptor partial;
  };
  LabelRange shard;
  std::vector<Entry> entries;
};

struct QueryParams {
  std::size_t max_candidates = 4;         // frames returned per partial query
  std::uint32_t neighbor_exclusion = 200; // same-robot frame distance treated as trivial
};

/// Scores `msg` against every stored partial, then appends it to the store.
/// Returns the origins of up to `max_candidates` stored partials with the
/// highest Jaccard scores, skipping zero scores and neighbor-excluded frames;
/// ties go to the earlier arrival.
CandidateResponseMsg handle_partial_query(PartialStore& store, const PartialQueryMsg& msg,
                                          const QueryParams& params);

/// Ranks robots by how many candidate frames across all responses they own
/// and returns the top `max_robots` robot ids (ties to the lower id).
std::vector<std::uint16_t> select_full_query_targets(
    const std::vector<CandidateResponseMsg>& responses, std::size_t max_robots);

/// Constellations a robot has recorded from its own frames, arrival order.
struct ConstellationStore {
  std::vector<Constellation> entries;
};

struct FullCheckParams {
  double match_distance = 0.25;
  double score_threshold = 0.25;
  std::uint32_t neighbor_exclusion = 200;
};

struct ScoredFrame {
  FrameId frame;
  double score = 0.0;
};

/// Pair score of `query` against every stored constellation, neighbor
/// exclusion applied; only scores at or above the threshold are returned,
/// in store order, full precision.
std::vector<ScoredFrame> score_against_store(const ConstellationStore& store,
                                             const Constellation& query,
                                             const FullCheckParams& params);

ScoreResponseMsg make_score_response(std::span<const ScoredFrame> scored);

ScoreResponseMsg handle_full_query(const ConstellationStore& store, const FullQueryMsg& msg,
                                   const FullCheckParams& params);

}  // namespace constel
