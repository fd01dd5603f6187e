#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "constel/core.hpp"
#include "constel/protocol.hpp"

namespace constel {

/// Fleet-wide parameters. Defaults follow the reference configuration:
/// up to 4 candidate frames per partial response, full queries to up to
/// 4 robots, 0.25 m association distance, 0.25 score threshold, 200-frame
/// neighbor exclusion, 80-class label universe.
struct FleetConfig {
  std::uint16_t num_robots = 1;
  std::size_t num_labels = kDefaultNumLabels;
  std::size_t max_candidates = 4;          // candidate frames per partial response
  std::size_t max_full_query_targets = 4;  // robots receiving the full constellation
  double match_distance = 0.25;            // meters
  double score_threshold = 0.25;
  std::uint32_t neighbor_exclusion = 200;  // frames
};

enum class MessageKind : std::uint8_t {
  PartialQuery,
  CandidateResponse,
  FullQuery,
  ScoreResponse,
  Broadcast,  // centralized baseline: full constellation to every other robot
};

const char* to_string(MessageKind kind);
MessageKind message_kind_from_string(const std::string& name);  // throws std::invalid_argument

/// One delivered message: which query it served, its kind, endpoints, and
/// its exact encoded size. Local (same-robot) deliveries carry 0 bytes.
struct LedgerEntry {
  FrameId query;
  MessageKind kind = MessageKind::PartialQuery;
  std::uint16_t from = 0;
  std::uint16_t to = 0;
  std::uint64_t bytes = 0;
};

struct BandwidthLedger {
  std::vector<LedgerEntry> entries;

  void add(FrameId query, MessageKind kind, std::uint16_t from, std::uint16_t to,
           std::uint64_t bytes) {
    entries.push_back({query, kind, from, to, bytes});
  }
  std::uint64_t total_bytes() const;
  std::uint64_t total_bytes(MessageKind kind) const;
  std::map<FrameId, std::uint64_t> per_query_totals() const;
  std::map<std::uint16_t, std::uint64_t> per_robot_sent() const;
};

struct SimilarityRecord {
  FrameId query;  // the later frame, the one whose query produced the record
  FrameId match;  // the previously registered frame
  double score = 0.0;
};

enum class SimMode : std::uint8_t { Centralized, Decentralized };

const char* to_string(SimMode mode);

struct SimulationResult {
  SimMode mode = SimMode::Centralized;
  std::vector<SimilarityRecord> records;
  BandwidthLedger ledger;
};

using RobotStream = std::vector<Constellation>;
using FleetStreams = std::vector<RobotStream>;

/// Global frame arrival order: round-robin across robots by stream position.
/// Returns (robot, position-in-stream) pairs.
std::vector<std::pair<std::uint16_t, std::size_t>> arrival_order(const FleetStreams& streams);

/// Upper-bound baseline: each arriving constellation is pair-scored against
/// every previously registered one (neighbor exclusion applied); no protocol
/// runs. The ledger charges the naive alternative, broadcasting the
/// constellation to every other robot. With `apply_wire_quantization` the
/// constellations are first snapped to the wire fixed-point grid, which makes
/// the scores directly comparable to a decentralized run.
SimulationResult run_centralized(const FleetConfig& config, const FleetStreams& streams,
                                 bool apply_wire_quantization = false);

/// Full two-step protocol per arriving frame: split the semantic descriptor
/// across shard owners, gather candidate responses, send the full
/// constellation to the best-ranked robots, collect their scores. Every
/// message is encoded, byte-accounted (0 for self-delivery), and decoded at
/// the recipient, so all scoring runs on wire-quantized data. Deterministic
/// for fixed inputs.
SimulationResult run_decentralized(const FleetConfig& config, const FleetStreams& streams);

/// Splits one sequence into `num_robots` contiguous sub-trajectories of
/// near-equal length (first remainder chunks one longer) and renumbers
/// frames per robot from 0.
FleetStreams split_stream(const RobotStream& sequence, std::size_t num_robots);

struct BandwidthReport {
  std::uint64_t hop_count = 1;
  std::map<MessageKind, std::uint64_t> bytes_by_kind;  // hop-multiplied
  std::uint64_t total_bytes = 0;
  std::size_t num_queries = 0;
  double mean_query_bytes = 0.0;
  std::uint64_t max_query_bytes = 0;
  // Per-query cost of shipping one fixed-size opaque global descriptor
  // (512 B) over the same hop count, for comparison.
  std::uint64_t reference_descriptor_bytes = 512;
};

BandwidthReport bandwidth_report(const BandwidthLedger& ledger, std::uint64_t hop_count = 1);

}  // namespace constel
