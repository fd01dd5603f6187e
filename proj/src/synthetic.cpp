#include "constel/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace constel {

namespace {

// All draws reduce to raw mt19937_64 output with explicit arithmetic, so a
// fixed seed yields the same stream on every platform (std::*_distribution
// implementations are not portable).
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {  // Box-Muller
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

  Eigen::Quaterniond rotation() {
    Eigen::Quaterniond q(normal(), normal(), normal(), normal());
    q.normalize();
    return q;
  }

 private:
  std::mt19937_64 engine_;
};

struct Scene {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();  // world frame
  std::vector<ObjectPoint> objects;                  // world frame
};

}  // namespace

std::pair<DetectionLog, GroundTruth> generate_synthetic_world(const SyntheticWorldParams& params) {
  if (params.num_scenes == 0) throw std::invalid_argument("synthetic world needs scenes");
  if (params.visits_per_scene == 0) throw std::invalid_argument("synthetic world needs visits");
  if (params.num_robots == 0) throw std::invalid_argument("synthetic world needs robots");
  if (params.min_objects == 0 || params.min_objects > params.max_objects) {
    throw std::invalid_argument("bad objects-per-scene range");
  }
  if (params.num_labels == 0 || params.num_labels > 256) {
    throw std::invalid_argument("label universe must be in 1..256");
  }
  if (!(params.noise_sigma >= 0.0)) throw std::invalid_argument("noise sigma must be >= 0");

  DeterministicRng rng(params.seed);

  // Scene layouts on a sparse world grid; 4 m spacing keeps distinct scenes
  // beyond the default 1 m ground-truth cutoff.
  constexpr double kGridSpacing = 4.0;
  constexpr std::size_t kGridColumns = 64;
  std::vector<Scene> scenes(params.num_scenes);
  for (std::size_t s = 0; s < scenes.size(); ++s) {
    Scene& scene = scenes[s];
    scene.center = Eigen::Vector3d(static_cast<double>(s % kGridColumns) * kGridSpacing,
                                   static_cast<double>(s / kGridColumns) * kGridSpacing, 0.0);
    const std::size_t count =
        params.min_objects + rng.below(params.max_objects - params.min_objects + 1);
    scene.objects.resize(count);
    for (ObjectPoint& object : scene.objects) {
      object.label = static_cast<Label>(rng.below(params.num_labels));
      object.position = scene.center + Eigen::Vector3d(rng.uniform(-1.0, 1.0),
                                                       rng.uniform(-1.0, 1.0),
                                                       rng.uniform(-0.5, 0.5));
    }
  }

  // Visit schedule: every round covers all scenes once, in a fresh order, so
  // revisits of one scene land on different robots under round-robin dealing.
  std::vector<std::size_t> schedule;
  schedule.reserve(params.num_scenes * params.visits_per_scene);
  for (std::size_t round = 0; round < params.visits_per_scene; ++round) {
    std::vector<std::size_t> order(params.num_scenes);
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    rng.shuffle(order);
    schedule.insert(schedule.end(), order.begin(), order.end());
  }

  DetectionLog log;
  log.num_labels = params.num_labels;
  log.num_robots = params.num_robots;
  log.frames.reserve(schedule.size());

  for (std::size_t slot = 0; slot < schedule.size(); ++slot) {
    const Scene& scene = scenes[schedule[slot]];

    CameraPose pose;
    pose.orientation = rng.rotation();
    pose.position = scene.center + Eigen::Vector3d(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                                                   rng.uniform(-0.5, 0.5));
    const Eigen::Quaterniond world_to_camera = pose.orientation.conjugate();

    FrameRecord record;
    record.id = {static_cast<std::uint16_t>(slot % params.num_robots),
                 static_cast<std::uint32_t>(slot / params.num_robots)};
    record.pose = pose;
    record.objects.reserve(scene.objects.size());
    for (const ObjectPoint& object : scene.objects) {
      Eigen::Vector3d world = object.position;
      if (params.noise_sigma > 0.0) {
        world += params.noise_sigma * Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
      }
      ObjectPoint seen;
      seen.label = object.label;
      seen.position = world_to_camera * (world - pose.position);
      record.objects.push_back(seen);
    }
    rng.shuffle(record.objects);  // detector output order is not stable
    log.frames.push_back(std::move(record));
  }

  GroundTruth gt = ground_truth_from_poses(log, 1.0);
  return {std::move(log), std::move(gt)};
}

}  // namespace constel
