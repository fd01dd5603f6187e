#include "constel/protocol.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace constel {

std::uint16_t LabelAssignment::owner_of(Label label) const {
  for (std::size_t robot = 0; robot < shards.size(); ++robot) {
    if (shards[robot].contains(label)) return static_cast<std::uint16_t>(robot);
  }
  throw std::out_of_range("label " + std::to_string(label) + " outside the assigned universe");
}

std::size_t LabelAssignment::num_labels() const {
  return shards.empty() ? 0 : shards.back().last;
}

LabelAssignment assign_labels(std::size_t num_robots, std::size_t num_labels) {
  if (num_robots == 0) throw std::invalid_argument("assign_labels: no robots");
  if (num_labels == 0 || num_labels > 0xffff) {
    throw std::invalid_argument("assign_labels: unsupported universe size");
  }
  if (num_robots > num_labels) {
    throw std::invalid_argument("assign_labels: more robots than labels, a robot would own none");
  }
  const std::size_t base = num_labels / num_robots;
  const std::size_t larger = num_labels % num_robots;
  LabelAssignment assignment;
  assignment.shards.reserve(num_robots);
  std::size_t next = 0;
  for (std::size_t robot = 0; robot < num_robots; ++robot) {
    const std::size_t size = base + (robot < larger ? 1 : 0);
    assignment.shards.push_back(
        {static_cast<Label>(next), static_cast<Label>(next + size)});
    next += size;
  }
  return assignment;
}

std::map<std::uint16_t, PartialQueryMsg> split_query(const SemanticDescriptor& desc,
                                                     const LabelAssignment& assignment,
                                                     FrameId origin) {
  std::map<std::uint16_t, PartialQueryMsg> out;
  for (const auto& [label, count] : desc.counts) {
    const std::uint16_t robot = assignment.owner_of(label);
    auto [it, inserted] = out.try_emplace(robot);
    if (inserted) it->second.origin = origin;
    const std::uint8_t saturated =
        static_cast<std::uint8_t>(std::min<std::uint32_t>(count, 15));
    it->second.entries.push_back({label, saturated});  // map order keeps labels ascending
  }
  return out;
}

CandidateResponseMsg handle_partial_query(PartialStore& store, const PartialQueryMsg& msg,
                                          const QueryParams& params) {
  SemanticDescriptor query;
  for (const auto& entry : msg.entries) {
    if (!store.shard.contains(entry.label)) {
      throw std::invalid_argument("partial query label " + std::to_string(entry.label) +
                                  " outside this robot's shard");
    }
    query.counts[entry.label] = entry.count;
  }

  struct Candidate {
    double score;
    std::size_t arrival;
    FrameId origin;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < store.entries.size(); ++i) {
    const auto& stored = store.entries[i];
    if (neighbor_excluded(stored.origin, msg.origin, params.neighbor_exclusion)) continue;
    const double score = jaccard(query, stored.partial);
    if (score > 0.0) candidates.push_back({score, i, stored.origin});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.score > b.score; });

  CandidateResponseMsg response;
  const std::size_t take = std::min(params.max_candidates, candidates.size());
  response.candidates.reserve(take);
  for (std::size_t i = 0; i < take; ++i) response.candidates.push_back(candidates[i].origin);

  store.entries.push_back({msg.origin, std::move(query)});
  return response;
}

std::vector<std::uint16_t> select_full_query_targets(
    const std::vector<CandidateResponseMsg>& responses, std::size_t max_robots) {
  std::map<std::uint16_t, std::size_t> frames_per_robot;
  for (const auto& response : responses) {
    for (const FrameId candidate : response.candidates) ++frames_per_robot[candidate.robot];
  }
  std::vector<std::pair<std::uint16_t, std::size_t>> ranked(frames_per_robot.begin(),
                                                            frames_per_robot.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::uint16_t> targets;
  const std::size_t take = std::min(max_robots, ranked.size());
  targets.reserve(take);
  for (std::size_t i = 0; i < take; ++i) targets.push_back(ranked[i].first);
  return targets;
}

std::vector<ScoredFrame> score_against_store(const ConstellationStore& store,
                                             const Constellation& query,
                                             const FullCheckParams& params) {
  std::vector<ScoredFrame> out;
  for (const Constellation& stored : store.entries) {
    if (neighbor_excluded(stored.id, query.id, params.neighbor_exclusion)) continue;
    const PairScore scored = pair_score(query, stored, params.match_distance);
    if (scored.score >= params.score_threshold) out.push_back({stored.id, scored.score});
  }
  return out;
}

ScoreResponseMsg make_score_response(std::span<const ScoredFrame> scored) {
  ScoreResponseMsg msg;
  msg.entries.reserve(scored.size());
  for (const ScoredFrame& frame : scored) {
    msg.entries.push_back({frame.frame, quantize_score(frame.score)});
  }
  return msg;
}

ScoreResponseMsg handle_full_query(const ConstellationStore& store, const FullQueryMsg& msg,
                                   const FullCheckParams& params) {
  const Constellation query{msg.origin, msg.objects};
  const std::vector<ScoredFrame> scored = score_against_store(store, query, params);
  return make_score_response(scored);
}

}  // namespace constel
