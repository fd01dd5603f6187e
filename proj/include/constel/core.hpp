#pragma once
#include <Eigen/Core>
#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace constel {

/// Object class index within the detector's label universe [0, num_labels).
using Label = std::uint16_t;

/// Default label universe size (COCO-style 80-class detectors).
inline constexpr std::size_t kDefaultNumLabels = 80;

/// One detected object: class label plus 3D position in the source frame's
/// camera coordinates, meters.
struct ObjectPoint {
  Label label = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
};

/// Identifies one frame of one robot's stream.
struct FrameId {
  std::uint16_t robot = 0;
  std::uint32_t frame = 0;

  friend auto operator<=>(const FrameId&, const FrameId&) = default;
};

/// All object points extracted from one frame; the unit of place description.
/// Object order is ingestion order and stays stable: indices into `objects`
/// identify objects throughout matching.
struct Constellation {
  FrameId id;
  std::vector<ObjectPoint> objects;  // may be empty (frame with no detections)
};

/// Sparse label -> count histogram of a constellation. No zero entries are
/// stored; the sum of counts equals the object count of the source.
struct SemanticDescriptor {
  std::map<Label, std::uint32_t> counts;

  std::uint64_t total() const;
  std::uint32_t at(Label label) const;  // 0 if absent
  bool empty() const { return counts.empty(); }

  friend bool operator==(const SemanticDescriptor&, const SemanticDescriptor&) = default;
};

/// Contiguous half-open label interval [first, last).
struct LabelRange {
  Label first = 0;
  Label last = 0;

  bool contains(Label l) const { return l >= first && l < last; }
  std::size_t size() const { return static_cast<std::size_t>(last) - first; }

  friend bool operator==(const LabelRange&, const LabelRange&) = default;
};

SemanticDescriptor build_semantic_descriptor(const Constellation& c);

/// Jaccard index of two histograms: sum of per-label minima over sum of
/// per-label maxima. Returns 0 when neither side has any object (no evidence
/// of similarity, not an error).
double jaccard(const SemanticDescriptor& a, const SemanticDescriptor& b);

/// Jaccard restricted to the labels in `labels` (a shard, or the full
/// universe for a global comparison).
double jaccard(const SemanticDescriptor& a, const SemanticDescriptor& b, LabelRange labels);

/// Sum over labels of min(a[l], b[l]): the number of objects the two
/// histograms have in common.
std::uint64_t intersection_count(const SemanticDescriptor& a, const SemanticDescriptor& b);

/// True when the two frames belong to the same robot and are fewer than
/// `exclusion_frames` apart; such pairs are never reported as loop closures.
bool neighbor_excluded(FrameId a, FrameId b, std::uint32_t exclusion_frames);

}  // namespace constel
