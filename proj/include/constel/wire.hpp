#pragma once
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "constel/core.hpp"

namespace constel {

/// Raised on malformed buffers (framing) and on values that do not fit the
/// wire representation (label > 255, frame > 65535, position out of
/// fixed-point range, zero counts).
class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Wire format. All multi-byte integers are little-endian. This byte layout is
// the external contract; see README for the normative description.
//
//   FrameId            robot:u8, frame:u16          (3 bytes)
//   PartialQueryMsg    FrameId, k label bytes in strictly ascending order,
//                      then ceil(k/2) count bytes: entry i occupies the low
//                      nibble of byte i/2 when i is even, the high nibble
//                      when i is odd; an odd tail pads the high nibble with
//                      zero. Counts are 4-bit, in [1,15] (saturated at 15).
//                      Total: 3 + ceil(1.5 k) bytes.
//   CandidateResponse  n FrameIds.                  (3 n bytes)
//   FullQueryMsg       FrameId, then per object: label:u8, x:i16, y:i16,
//                      z:i16 in centimeter fixed point (0.01 m resolution,
//                      range +-327.67 m).           (3 + 7 m bytes)
//   ScoreResponseMsg   per pair: FrameId, score:u8 in steps of 1/255.
//                                                   (4 n bytes)
//
// Messages carry no length prefix: the transport (here, the simulator)
// delivers whole buffers, and the decoder reconstructs counts from the
// buffer length, rejecting lengths no element count can produce.
// ---------------------------------------------------------------------------

struct PartialQueryMsg {
  struct Entry {
    Label label = 0;
    std::uint8_t count = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };
  FrameId origin;
  std::vector<Entry> entries;  // strictly ascending labels, counts in [1,15]

  friend bool operator==(const PartialQueryMsg&, const PartialQueryMsg&) = default;
};

struct CandidateResponseMsg {
  std::vector<FrameId> candidates;

  friend bool operator==(const CandidateResponseMsg&, const CandidateResponseMsg&) = default;
};

struct FullQueryMsg {
  FrameId origin;
  std::vector<ObjectPoint> objects;
};

bool operator==(const FullQueryMsg& a, const FullQueryMsg& b);

struct ScoreResponseMsg {
  struct Entry {
    FrameId frame;
    std::uint8_t quantized_score = 0;  // score * 255, rounded

    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  friend bool operator==(const ScoreResponseMsg&, const ScoreResponseMsg&) = default;
};

// Fixed-point position codec: 0.01 m steps, symmetric range +-327.67 m.
std::int16_t encode_coordinate(double meters);  // throws CodecError out of range
double decode_coordinate(std::int16_t fixed);
double quantize_coordinate(double meters);  // decode(encode(meters))

/// The constellation as it survives a full-query round trip: identical
/// labels and order, positions snapped to the wire's fixed-point grid.
Constellation quantize_constellation(const Constellation& c);

std::uint8_t quantize_score(double score);  // clamps to [0,1]
double dequantize_score(std::uint8_t quantized);

// Closed-form encoded sizes in bytes.
std::size_t partial_query_wire_size(std::size_t num_entries);      // 3 + ceil(1.5 k)
std::size_t candidate_response_wire_size(std::size_t num_frames);  // 3 n
std::size_t full_query_wire_size(std::size_t num_objects);         // 3 + 7 m
std::size_t score_response_wire_size(std::size_t num_pairs);       // 4 n

std::vector<std::uint8_t> encode(const PartialQueryMsg& msg);
std::vector<std::uint8_t> encode(const CandidateResponseMsg& msg);
std::vector<std::uint8_t> encode(const FullQueryMsg& msg);
std::vector<std::uint8_t> encode(const ScoreResponseMsg& msg);

PartialQueryMsg decode_partial_query(std::span<const std::uint8_t> bytes);
CandidateResponseMsg decode_candidate_response(std::span<const std::uint8_t> bytes);
FullQueryMsg decode_full_query(std::span<const std::uint8_t> bytes);
ScoreResponseMsg decode_score_response(std::span<const std::uint8_t> bytes);

}  // namespace constel
