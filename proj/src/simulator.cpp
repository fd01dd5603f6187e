#include "constel/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace constel {

const char* to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::PartialQuery: return "partial_query";
    case MessageKind::CandidateResponse: return "candidate_response";
    case MessageKind::FullQuery: return "full_query";
    case MessageKind::ScoreResponse: return "score_response";
    case MessageKind::Broadcast: return "broadcast";
  }
  return "unknown";
}

MessageKind message_kind_from_string(const std::string& name) {
  for (const MessageKind kind :
       {MessageKind::PartialQuery, MessageKind::CandidateResponse, MessageKind::FullQuery,
        MessageKind::ScoreResponse, MessageKind::Broadcast}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown message kind: " + name);
}

const char* to_string(SimMode mode) {
  return mode == SimMode::Centralized ? "centralized" : "decentralized";
}

std::uint64_t BandwidthLedger::total_bytes() const {
  std::uint64_t total = 0;
  for (const auto& entry : entries) total += entry.bytes;
  return total;
}

std::uint64_t BandwidthLedger::total_bytes(MessageKind kind) const {
  std::uint64_t total = 0;
  for (const auto& entry : entries) {
    if (entry.kind == kind) total += entry.bytes;
  }
  return total;
}

std::map<FrameId, std::uint64_t> BandwidthLedger::per_query_totals() const {
  std::map<FrameId, std::uint64_t> totals;
  for (const auto& entry : entries) totals[entry.query] += entry.bytes;
  return totals;
}

std::map<std::uint16_t, std::uint64_t> BandwidthLedger::per_robot_sent() const {
  std::map<std::uint16_t, std::uint64_t> totals;
  for (const auto& entry : entries) totals[entry.from] += entry.bytes;
  return totals;
}

std::vector<std::pair<std::uint16_t, std::size_t>> arrival_order(const FleetStreams& streams) {
  std::size_t longest = 0;
  for (const auto& stream : streams) longest = std::max(longest, stream.size());
  std::vector<std::pair<std::uint16_t, std::size_t>> order;
  for (std::size_t position = 0; position < longest; ++position) {
    for (std::size_t robot = 0; robot < streams.size(); ++robot) {
      if (position < streams[robot].size()) {
        order.emplace_back(static_cast<std::uint16_t>(robot), position);
      }
    }
  }
  return order;
}

namespace {

void validate_streams(const FleetConfig& config, const FleetStreams& streams) {
  if (streams.empty()) throw std::invalid_argument("simulator: no robot streams");
  if (streams.size() > 256) throw std::invalid_argument("simulator: more than 256 robots");
  if (config.num_robots != streams.size()) {
    throw std::invalid_argument("simulator: config.num_robots does not match the stream count");
  }
  if (config.num_labels == 0 || config.num_labels > 256) {
    throw std::invalid_argument("simulator: label universe must fit one wire byte (1..256)");
  }
  for (std::size_t robot = 0; robot < streams.size(); ++robot) {
    const RobotStream& stream = streams[robot];
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const Constellation& c = stream[i];
      if (c.id.robot != robot) {
        throw std::invalid_argument("simulator: constellation robot id does not match its stream");
      }
      if (i > 0 && c.id.frame <= stream[i - 1].id.frame) {
        throw std::invalid_argument("simulator: frame ids must increase within a stream");
      }
      for (const auto& object : c.objects) {
        if (object.label >= config.num_labels) {
          throw std::invalid_argument("simulator: object label outside the universe");
        }
        if (!object.position.allFinite()) {
          throw std::invalid_argument("simulator: non-finite object position");
        }
      }
    }
  }
}

}  // namespace

SimulationResult run_centralized(const FleetConfig& config, const FleetStreams& streams,
                                 bool apply_wire_quantization) {
  validate_streams(config, streams);
  SimulationResult result;
  result.mode = SimMode::Centralized;

  std::vector<Constellation> history;
  for (const auto& [robot, position] : arrival_order(streams)) {
    const Constellation& raw = streams[robot][position];
    const Constellation current = apply_wire_quantization ? quantize_constellation(raw) : raw;
    for (const Constellation& previous : history) {
      if (neighbor_excluded(current.id, previous.id, config.neighbor_exclusion)) continue;
      const PairScore scored = pair_score(current, previous, config.match_distance);
      if (scored.score >= config.score_threshold) {
        result.records.push_back({current.id, previous.id, scored.score});
      }
    }
    // Baseline cost: the full constellation broadcast to every other robot.
    const std::uint64_t size = full_query_wire_size(current.objects.size());
    for (std::size_t other = 0; other < streams.size(); ++other) {
      if (other == robot) continue;
      result.ledger.add(current.id, MessageKind::Broadcast, robot,
                        static_cast<std::uint16_t>(other), size);
    }
    history.push_back(current);
  }
  return result;
}

SimulationResult run_decentralized(const FleetConfig& config, const FleetStreams& streams) {
  validate_streams(config, streams);
  const LabelAssignment assignment = assign_labels(streams.size(), config.num_labels);
  const QueryParams query_params{config.max_candidates, config.neighbor_exclusion};
  const FullCheckParams check_params{config.match_distance, config.score_threshold,
                                     config.neighbor_exclusion};

  std::vector<PartialStore> partial_stores(streams.size());
  for (std::size_t robot = 0; robot < streams.size(); ++robot) {
    partial_stores[robot].shard = assignment.shards[robot];
  }
  std::vector<ConstellationStore> constellation_stores(streams.size());

  SimulationResult result;
  result.mode = SimMode::Decentralized;

  for (const auto& [robot, position] : arrival_order(streams)) {
    const Constellation& raw = streams[robot][position];
    const FrameId query_id = raw.id;

    // Step 1: partial semantic queries to the shard owners of the seen
    // classes; every message goes through the codec, self-delivery is free.
    const SemanticDescriptor descriptor = build_semantic_descriptor(raw);
    std::vector<CandidateResponseMsg> responses;
    for (const auto& [target, partial] : split_query(descriptor, assignment, query_id)) {
      const auto query_bytes = encode(partial);
      const bool local = target == robot;
      result.ledger.add(query_id, MessageKind::PartialQuery, robot, target,
                        local ? 0 : query_bytes.size());
      const PartialQueryMsg delivered = decode_partial_query(query_bytes);
      const CandidateResponseMsg response =
          handle_partial_query(partial_stores[target], delivered, query_params);
      const auto response_bytes = encode(response);
      result.ledger.add(query_id, MessageKind::CandidateResponse, target, robot,
                        local ? 0 : response_bytes.size());
      responses.push_back(decode_candidate_response(response_bytes));
    }

    // Step 2: the full constellation goes to the robots owning the most
    // candidate frames; each compares it against its own recorded history.
    const std::vector<std::uint16_t> targets =
        select_full_query_targets(responses, config.max_full_query_targets);
    if (!targets.empty()) {
      const FullQueryMsg full_query{query_id, raw.objects};
      const auto full_bytes = encode(full_query);
      const FullQueryMsg delivered = decode_full_query(full_bytes);
      const Constellation decoded{delivered.origin, delivered.objects};
      for (const std::uint16_t target : targets) {
        const bool local = target == robot;
        result.ledger.add(query_id, MessageKind::FullQuery, robot, target,
                          local ? 0 : full_bytes.size());
        const std::vector<ScoredFrame> scored =
            score_against_store(constellation_stores[target], decoded, check_params);
        const auto response_bytes = encode(make_score_response(scored));
        result.ledger.add(query_id, MessageKind::ScoreResponse, target, robot,
                          local ? 0 : response_bytes.size());
        for (const ScoredFrame& frame : scored) {
          result.records.push_back({query_id, frame.frame, frame.score});
        }
      }
    }

    // The robot records its own constellation as its wire-quantized twin, so
    // later comparisons see exactly what a remote peer would have seen.
    constellation_stores[robot].entries.push_back(quantize_constellation(raw));
  }
  return result;
}

FleetStreams split_stream(const RobotStream& sequence, std::size_t num_robots) {
  if (num_robots == 0 || num_robots > 256) {
    throw std::invalid_argument("split_stream: robot count must be in 1..256");
  }
  const std::size_t base = sequence.size() / num_robots;
  const std::size_t larger = sequence.size() % num_robots;
  FleetStreams streams(num_robots);
  std::size_t next = 0;
  for (std::size_t robot = 0; robot < num_robots; ++robot) {
    const std::size_t size = base + (robot < larger ? 1 : 0);
    streams[robot].reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
      Constellation c = sequence[next++];
      c.id = {static_cast<std::uint16_t>(robot), static_cast<std::uint32_t>(i)};
      streams[robot].push_back(std::move(c));
    }
  }
  return streams;
}

BandwidthReport bandwidth_report(const BandwidthLedger& ledger, std::uint64_t hop_count) {
  if (hop_count == 0) throw std::invalid_argument("bandwidth_report: hop count must be >= 1");
  BandwidthReport report;
  report.hop_count = hop_count;
  report.reference_descriptor_bytes = 512 * hop_count;
  for (const auto& entry : ledger.entries) {
    report.bytes_by_kind[entry.kind] += entry.bytes * hop_count;
    report.total_bytes += entry.bytes * hop_count;
  }
  const auto per_query = ledger.per_query_totals();
  report.num_queries = per_query.size();
  for (const auto& [query, bytes] : per_query) {
    report.max_query_bytes = std::max(report.max_query_bytes, bytes * hop_count);
  }
  if (!per_query.empty()) {
    report.mean_query_bytes =
        static_cast<double>(report.total_bytes) / static_cast<double>(per_query.size());
  }
  return report;
}

}  // namespace constel
