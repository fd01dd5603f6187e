#include "constel/wire.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace constel {

namespace {

constexpr std::int64_t kFixedPointMax = 32767;  // +-327.67 m at 0.01 m steps
constexpr std::uint8_t kCountMax = 15;          // 4-bit count, saturating

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::uint16_t get_u16(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return static_cast<std::uint16_t>(bytes[offset] | (bytes[offset + 1] << 8));
}

void put_frame_id(std::vector<std::uint8_t>& out, FrameId id) {
  if (id.robot > 0xff) throw CodecError("robot index exceeds one byte: " + std::to_string(id.robot));
  if (id.frame > 0xffff) throw CodecError("frame index exceeds two bytes: " + std::to_string(id.frame));
  out.push_back(static_cast<std::uint8_t>(id.robot));
  put_u16(out, static_cast<std::uint16_t>(id.frame));
}

FrameId get_frame_id(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return FrameId{bytes[offset], get_u16(bytes, offset + 1)};
}

void put_i16(std::vector<std::uint8_t>& out, std::int16_t v) {
  put_u16(out, static_cast<std::uint16_t>(v));
}

std::int16_t get_i16(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return static_cast<std::int16_t>(get_u16(bytes, offset));
}

void put_label(std::vector<std::uint8_t>& out, Label label) {
  if (label > 0xff) throw CodecError("label index exceeds one byte: " + std::to_string(label));
  out.push_back(static_cast<std::uint8_t>(label));
}

}  // namespace

bool operator==(const FullQueryMsg& a, const FullQueryMsg& b) {
  if (a.origin != b.origin || a.objects.size() != b.objects.size()) return false;
  for (std::size_t i = 0; i < a.objects.size(); ++i) {
    if (a.objects[i].label != b.objects[i].label) return false;
    if (a.objects[i].position != b.objects[i].position) return false;
  }
  return true;
}

std::int16_t encode_coordinate(double meters) {
  if (!std::isfinite(meters)) throw CodecError("position is not finite");
  const std::int64_t fixed = std::llround(meters * 100.0);
  if (fixed < -kFixedPointMax || fixed > kFixedPointMax) {
    throw CodecError("position out of fixed-point range: " + std::to_string(meters));
  }
  return static_cast<std::int16_t>(fixed);
}

double decode_coordinate(std::int16_t fixed) { return static_cast<double>(fixed) / 100.0; }

double quantize_coordinate(double meters) { return decode_coordinate(encode_coordinate(meters)); }

Constellation quantize_constellation(const Constellation& c) {
  Constellation out;
  out.id = c.id;
  out.objects.reserve(c.objects.size());
  for (const auto& object : c.objects) {
    ObjectPoint q;
    q.label = object.label;
    for (int axis = 0; axis < 3; ++axis) q.position[axis] = quantize_coordinate(object.position[axis]);
    out.objects.push_back(q);
  }
  return out;
}

std::uint8_t quantize_score(double score) {
  const double clamped = std::clamp(score, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(clamped * 255.0));
}

double dequantize_score(std::uint8_t quantized) { return static_cast<double>(quantized) / 255.0; }

std::size_t partial_query_wire_size(std::size_t num_entries) {
  return 3 + num_entries + (num_entries + 1) / 2;
}

std::size_t candidate_response_wire_size(std::size_t num_frames) { return 3 * num_frames; }

std::size_t full_query_wire_size(std::size_t num_objects) { return 3 + 7 * num_objects; }

std::size_t score_response_wire_size(std::size_t num_pairs) { return 4 * num_pairs; }

std::vector<std::uint8_t> encode(const PartialQueryMsg& msg) {
  std::vector<std::uint8_t> out;
  out.reserve(partial_query_wire_size(msg.entries.size()));
  put_frame_id(out, msg.origin);
  for (std::size_t i = 0; i < msg.entries.size(); ++i) {
    if (i > 0 && msg.entries[i].label <= msg.entries[i - 1].label) {
      throw CodecError("partial query entries must have strictly ascending labels");
    }
    if (msg.entries[i].count == 0) throw CodecError("partial query entry with zero count");
    put_label(out, msg.entries[i].label);
  }
  for (std::size_t i = 0; i < msg.entries.size(); i += 2) {
    const std::uint8_t low = std::min(msg.entries[i].count, kCountMax);
    std::uint8_t high = 0;
    if (i + 1 < msg.entries.size()) high = std::min(msg.entries[i + 1].count, kCountMax);
    out.push_back(static_cast<std::uint8_t>(low | (high << 4)));
  }
  return out;
}

PartialQueryMsg decode_partial_query(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 3) throw CodecError("partial query shorter than its frame id");
  const std::size_t rest = bytes.size() - 3;
  // k entries occupy k + ceil(k/2) bytes: 3m for even k = 2m, 3m + 2 for odd
  // k = 2m + 1. A remainder of 1 mod 3 matches no entry count.
  std::size_t num_entries = 0;
  switch (rest % 3) {
    case 0: num_entries = rest / 3 * 2; break;
    case 2: num_entries = (rest - 2) / 3 * 2 + 1; break;
    default: throw CodecError("partial query length matches no entry count");
  }
  PartialQueryMsg msg;
  msg.origin = get_frame_id(bytes, 0);
  msg.entries.resize(num_entries);
  for (std::size_t i = 0; i < num_entries; ++i) {
    msg.entries[i].label = bytes[3 + i];
    if (i > 0 && msg.entries[i].label <= msg.entries[i - 1].label) {
      throw CodecError("partial query labels not strictly ascending");
    }
  }
  const std::size_t counts_at = 3 + num_entries;
  for (std::size_t i = 0; i < num_entries; ++i) {
    const std::uint8_t byte = bytes[counts_at + i / 2];
    const std::uint8_t count = (i % 2 == 0) ? (byte & 0x0f) : (byte >> 4);
    if (count == 0) throw CodecError("partial query entry with zero count");
    msg.entries[i].count = count;
  }
  if (num_entries % 2 == 1 && (bytes[counts_at + num_entries / 2] >> 4) != 0) {
    throw CodecError("partial query padding nibble not zero");
  }
  return msg;
}

std::vector<std::uint8_t> encode(const CandidateResponseMsg& msg) {
  std::vector<std::uint8_t> out;
  out.reserve(candidate_response_wire_size(msg.candidates.size()));
  for (const FrameId id : msg.candidates) put_frame_id(out, id);
  return out;
}

CandidateResponseMsg decode_candidate_response(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 3 != 0) throw CodecError("candidate response length not a multiple of 3");
  CandidateResponseMsg msg;
  msg.candidates.reserve(bytes.size() / 3);
  for (std::size_t offset = 0; offset < bytes.size(); offset += 3) {
    msg.candidates.push_back(get_frame_id(bytes, offset));
  }
  return msg;
}

std::vector<std::uint8_t> encode(const FullQueryMsg& msg) {
  std::vector<std::uint8_t> out;
  out.reserve(full_query_wire_size(msg.objects.size()));
  put_frame_id(out, msg.origin);
  for (const auto& object : msg.objects) {
    put_label(out, object.label);
    for (int axis = 0; axis < 3; ++axis) put_i16(out, encode_coordinate(object.position[axis]));
  }
  return out;
}

FullQueryMsg decode_full_query(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 3) throw CodecError("full query shorter than its frame id");
  if ((bytes.size() - 3) % 7 != 0) throw CodecError("full query length matches no object count");
  FullQueryMsg msg;
  msg.origin = get_frame_id(bytes, 0);
  const std::size_t num_objects = (bytes.size() - 3) / 7;
  msg.objects.reserve(num_objects);
  for (std::size_t i = 0; i < num_objects; ++i) {
    const std::size_t offset = 3 + 7 * i;
    ObjectPoint object;
    object.label = bytes[offset];
    for (int axis = 0; axis < 3; ++axis) {
      object.position[axis] = decode_coordinate(get_i16(bytes, offset + 1 + 2 * axis));
    }
    msg.objects.push_back(object);
  }
  return msg;
}

std::vector<std::uint8_t> encode(const ScoreResponseMsg& msg) {
  std::vector<std::uint8_t> out;
  out.reserve(score_response_wire_size(msg.entries.size()));
  for (const auto& entry : msg.entries) {
    put_frame_id(out, entry.frame);
    out.push_back(entry.quantized_score);
  }
  return out;
}

ScoreResponseMsg decode_score_response(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 4 != 0) throw CodecError("score response length not a multiple of 4");
  ScoreResponseMsg msg;
  msg.entries.reserve(bytes.size() / 4);
  for (std::size_t offset = 0; offset < bytes.size(); offset += 4) {
    msg.entries.push_back({get_frame_id(bytes, offset), bytes[offset + 3]});
  }
  return msg;
}

}  // namespace constel
