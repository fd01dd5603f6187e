#pragma once
#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <vector>

#include "constel/detection_log.hpp"
#include "constel/simulator.hpp"

namespace constel {

/// Per-frame estimate of where the observed scene sits in the world, plus
/// the distance-to-score ramp: score(a, b) = max(0, 1 - dist / cutoff).
struct GroundTruth {
  std::map<FrameId, Eigen::Vector3d> scene_positions;
  double cutoff = 1.0;  // meters; score reaches 0 at this scene distance

  bool has(FrameId id) const { return scene_positions.count(id) != 0; }
  double score(FrameId a, FrameId b) const;
};

/// Scene position per frame: the centroid of the frame's object points
/// transformed into the world frame by the camera pose. Frames without a
/// pose or without objects are skipped with a warning on stderr.
GroundTruth ground_truth_from_poses(const DetectionLog& log, double cutoff = 1.0);

struct PRPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct PRCurve {
  std::vector<PRPoint> points;  // thresholds descending, recall non-decreasing
  double auc = 0.0;
  bool no_detections = false;
};

/// Sweeps the record scores as decision thresholds. A record counts as a
/// true positive when its ground-truth score is at least
/// `gt_positive_threshold`; neighbor-excluded pairs and pairs not covered by
/// the ground truth are ignored on both sides. AUC is the trapezoidal area
/// over recall, anchored at recall 0 with the first point's precision.
PRCurve evaluate(const std::vector<SimilarityRecord>& records, const GroundTruth& ground_truth,
                 double gt_positive_threshold, std::uint32_t neighbor_exclusion);

/// Dense symmetric score matrix over a caller-chosen frame indexing.
struct SimilarityMatrix {
  std::size_t size = 0;
  std::vector<double> values;  // row-major, size * size

  double at(std::size_t row, std::size_t col) const { return values[row * size + col]; }
};

/// Entries below `threshold` stay 0. Records whose frames are missing from
/// `frame_index` are skipped.
SimilarityMatrix build_similarity_matrix(const std::vector<SimilarityRecord>& records,
                                         const std::map<FrameId, std::size_t>& frame_index,
                                         std::size_t num_frames, double threshold);

/// Frame -> row mapping in global arrival order, for matrix export.
std::map<FrameId, std::size_t> frame_index_of(const FleetStreams& streams);

}  // namespace constel
