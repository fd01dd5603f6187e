#include "constel/evaluation.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace constel {

double GroundTruth::score(FrameId a, FrameId b) const {
  const auto ia = scene_positions.find(a);
  const auto ib = scene_positions.find(b);
  if (ia == scene_positions.end() || ib == scene_positions.end()) {
    throw std::out_of_range("ground truth does not cover the requested frame pair");
  }
  const double distance = (ia->second - ib->second).norm();
  return std::max(0.0, 1.0 - distance / cutoff);
}

GroundTruth ground_truth_from_poses(const DetectionLog& log, double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("ground truth cutoff must be positive");
  GroundTruth gt;
  gt.cutoff = cutoff;
  for (const FrameRecord& record : log.frames) {
    if (!record.pose) {
      std::cerr << "warning: frame (" << record.id.robot << ", " << record.id.frame
                << ") has no pose, excluded from ground truth\n";
      continue;
    }
    if (record.objects.empty()) {
      std::cerr << "warning: frame (" << record.id.robot << ", " << record.id.frame
                << ") has no objects, excluded from ground truth\n";
      continue;
    }
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const ObjectPoint& object : record.objects) centroid += object.position;
    centroid /= static_cast<double>(record.objects.size());
    gt.scene_positions[record.id] = record.pose->to_world(centroid);
  }
  return gt;
}

PRCurve evaluate(const std::vector<SimilarityRecord>& records, const GroundTruth& ground_truth,
                 double gt_positive_threshold, std::uint32_t neighbor_exclusion) {
  // Deduplicate records per unordered frame pair, keeping the best score.
  std::map<std::pair<FrameId, FrameId>, double> best;
  for (const SimilarityRecord& record : records) {
    if (!ground_truth.has(record.query) || !ground_truth.has(record.match)) continue;
    if (neighbor_excluded(record.query, record.match, neighbor_exclusion)) continue;
    if (record.query == record.match) continue;
    const auto key = std::minmax(record.query, record.match);
    auto [it, inserted] = best.try_emplace({key.first, key.second}, record.score);
    if (!inserted) it->second = std::max(it->second, record.score);
  }

  // Positive pairs over the ground-truth frame universe.
  std::vector<FrameId> frames;
  frames.reserve(ground_truth.scene_positions.size());
  for (const auto& [id, position] : ground_truth.scene_positions) frames.push_back(id);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (std::size_t j = i + 1; j < frames.size(); ++j) {
      if (neighbor_excluded(frames[i], frames[j], neighbor_exclusion)) continue;
      if (ground_truth.score(frames[i], frames[j]) >= gt_positive_threshold) ++positives;
    }
  }

  PRCurve curve;
  if (best.empty()) {
    curve.no_detections = true;
    return curve;
  }

  struct Detection {
    double score;
    bool correct;
  };
  std::vector<Detection> detections;
  detections.reserve(best.size());
  for (const auto& [pair, score] : best) {
    detections.push_back({score, ground_truth.score(pair.first, pair.second) >= gt_positive_threshold});
  }
  std::sort(detections.begin(), detections.end(),
            [](const Detection& a, const Detection& b) { return a.score > b.score; });

  // One PR point per distinct threshold; records tied on a score enter
  // together, matching the ">= threshold" decision rule.
  std::size_t true_positives = 0;
  std::size_t accepted = 0;
  std::size_t i = 0;
  while (i < detections.size()) {
    const double threshold = detections[i].score;
    while (i < detections.size() && detections[i].score == threshold) {
      ++accepted;
      if (detections[i].correct) ++true_positives;
      ++i;
    }
    PRPoint point;
    point.threshold = threshold;
    point.precision = static_cast<double>(true_positives) / static_cast<double>(accepted);
    point.recall =
        positives == 0 ? 0.0 : static_cast<double>(true_positives) / static_cast<double>(positives);
    curve.points.push_back(point);
  }

  double auc = 0.0;
  double previous_recall = 0.0;
  double previous_precision = curve.points.front().precision;
  for (const PRPoint& point : curve.points) {
    auc += (point.recall - previous_recall) * (point.precision + previous_precision) / 2.0;
    previous_recall = point.recall;
    previous_precision = point.precision;
  }
  curve.auc = auc;
  return curve;
}

SimilarityMatrix build_similarity_matrix(const std::vector<SimilarityRecord>& records,
                                         const std::map<FrameId, std::size_t>& frame_index,
                                         std::size_t num_frames, double threshold) {
  SimilarityMatrix matrix;
  matrix.size = num_frames;
  matrix.values.assign(num_frames * num_frames, 0.0);
  for (const SimilarityRecord& record : records) {
    if (record.score < threshold) continue;
    const auto row = frame_index.find(record.query);
    const auto col = frame_index.find(record.match);
    if (row == frame_index.end() || col == frame_index.end()) continue;
    if (row->second >= num_frames || col->second >= num_frames) continue;
    matrix.values[row->second * num_frames + col->second] = record.score;
    matrix.values[col->second * num_frames + row->second] = record.score;
  }
  return matrix;
}

std::map<FrameId, std::size_t> frame_index_of(const FleetStreams& streams) {
  std::map<FrameId, std::size_t> index;
  std::size_t next = 0;
  for (const auto& [robot, position] : arrival_order(streams)) {
    index[streams[robot][position].id] = next++;
  }
  return index;
}

}  // namespace constel
