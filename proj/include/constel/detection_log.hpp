#pragma once
#include <Eigen/Geometry>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "constel/simulator.hpp"

namespace constel {

class LogParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Camera pose of a frame in the world frame: p_world = orientation * p_cam
/// + position. Only used for ground-truth scoring.
struct CameraPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();

  Eigen::Vector3d to_world(const Eigen::Vector3d& p_cam) const {
    return orientation * p_cam + position;
  }
};

struct FrameRecord {
  FrameId id;
  std::optional<CameraPose> pose;
  std::vector<ObjectPoint> objects;
};

/// In-memory form of a detection log file: pre-extracted object detections,
/// one record per frame, the upstream contract that replaces any particular
/// detector. See README for the file format.
struct DetectionLog {
  std::size_t num_labels = kDefaultNumLabels;
  std::uint16_t num_robots = 1;
  std::vector<FrameRecord> frames;

  /// Per-robot constellation streams, one entry per robot in [0, num_robots),
  /// frames in file order (which load enforces to be id order).
  FleetStreams streams() const;
};

/// Parses a detection log. Malformed input raises LogParseError naming the
/// offending line; rejected conditions include unknown schema versions,
/// labels outside the declared universe, robot ids outside the declared
/// fleet, and non-increasing frame ids within a robot.
DetectionLog load_detection_log(const std::filesystem::path& path);

void save_detection_log(const DetectionLog& log, const std::filesystem::path& path);

}  // namespace constel
