#include "constel/detection_log.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "json.hpp"

namespace constel {

namespace {

using nlohmann::json;

constexpr const char* kFormatName = "constel-detections";
constexpr int kSchemaVersion = 1;

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw LogParseError("line " + std::to_string(line) + ": " + what);
}

double finite_number(const json& value, std::size_t line, const char* what) {
  if (!value.is_number()) fail(line, std::string(what) + " is not a number");
  const double number = value.get<double>();
  if (!std::isfinite(number)) fail(line, std::string(what) + " is not finite");
  return number;
}

}  // namespace

FleetStreams DetectionLog::streams() const {
  FleetStreams streams(num_robots);
  for (const FrameRecord& record : frames) {
    if (record.id.robot >= num_robots) {
      throw std::out_of_range("frame record robot id outside the declared fleet");
    }
    streams[record.id.robot].push_back({record.id, record.objects});
  }
  return streams;
}

DetectionLog load_detection_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LogParseError("cannot open " + path.string());

  DetectionLog log;
  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  std::map<std::uint16_t, std::int64_t> last_frame;

  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json parsed;
    try {
      parsed = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(line_number, std::string("invalid JSON: ") + e.what());
    }
    if (!parsed.is_object()) fail(line_number, "record is not a JSON object");

    if (!have_header) {
      if (parsed.value("format", "") != kFormatName) {
        fail(line_number, "missing or unknown format header");
      }
      const int version = parsed.value("version", -1);
      if (version != kSchemaVersion) {
        fail(line_number, "unsupported schema version " + std::to_string(version));
      }
      if (!parsed.contains("num_labels") || !parsed["num_labels"].is_number_unsigned()) {
        fail(line_number, "header lacks num_labels");
      }
      if (!parsed.contains("num_robots") || !parsed["num_robots"].is_number_unsigned()) {
        fail(line_number, "header lacks num_robots");
      }
      log.num_labels = parsed["num_labels"].get<std::size_t>();
      log.num_robots = parsed["num_robots"].get<std::uint16_t>();
      if (log.num_labels == 0 || log.num_labels > 0xffff) fail(line_number, "num_labels out of range");
      if (log.num_robots == 0) fail(line_number, "num_robots must be positive");
      have_header = true;
      continue;
    }

    FrameRecord record;
    if (!parsed.contains("robot") || !parsed["robot"].is_number_unsigned()) {
      fail(line_number, "frame record lacks robot id");
    }
    if (!parsed.contains("frame") || !parsed["frame"].is_number_unsigned()) {
      fail(line_number, "frame record lacks frame id");
    }
    const std::uint64_t robot = parsed["robot"].get<std::uint64_t>();
    const std::uint64_t frame = parsed["frame"].get<std::uint64_t>();
    if (robot >= log.num_robots) {
      fail(line_number, "robot id " + std::to_string(robot) + " outside the declared fleet");
    }
    if (frame > 0xffffffffull) fail(line_number, "frame id out of range");
    record.id = {static_cast<std::uint16_t>(robot), static_cast<std::uint32_t>(frame)};

    const auto it = last_frame.find(record.id.robot);
    if (it != last_frame.end() && static_cast<std::int64_t>(frame) <= it->second) {
      fail(line_number, "frame ids must be strictly increasing per robot");
    }
    last_frame[record.id.robot] = static_cast<std::int64_t>(frame);

    if (parsed.contains("pose") && !parsed["pose"].is_null()) {
      const json& pose = parsed["pose"];
      if (!pose.is_array() || pose.size() != 7) {
        fail(line_number, "pose must be [x, y, z, qx, qy, qz, qw]");
      }
      CameraPose camera;
      for (int i = 0; i < 3; ++i) camera.position[i] = finite_number(pose[i], line_number, "pose");
      camera.orientation = Eigen::Quaterniond(
          finite_number(pose[6], line_number, "pose"), finite_number(pose[3], line_number, "pose"),
          finite_number(pose[4], line_number, "pose"), finite_number(pose[5], line_number, "pose"));
      record.pose = camera;
    }

    if (!parsed.contains("objects") || !parsed["objects"].is_array()) {
      fail(line_number, "frame record lacks an objects array");
    }
    for (const json& entry : parsed["objects"]) {
      if (!entry.is_array() || entry.size() != 4 || !entry[0].is_number_unsigned()) {
        fail(line_number, "object must be [label, x, y, z]");
      }
      const std::uint64_t label = entry[0].get<std::uint64_t>();
      if (label >= log.num_labels) {
        fail(line_number, "label " + std::to_string(label) + " outside the declared universe of " +
                              std::to_string(log.num_labels));
      }
      ObjectPoint object;
      object.label = static_cast<Label>(label);
      for (int axis = 0; axis < 3; ++axis) {
        object.position[axis] = finite_number(entry[axis + 1], line_number, "object position");
      }
      record.objects.push_back(object);
    }
    log.frames.push_back(std::move(record));
  }
  if (!have_header) throw LogParseError(path.string() + ": missing header line");
  return log;
}

void save_detection_log(const DetectionLog& log, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  json header;
  header["format"] = kFormatName;
  header["version"] = kSchemaVersion;
  header["num_labels"] = log.num_labels;
  header["num_robots"] = log.num_robots;
  out << header.dump() << '\n';
  for (const FrameRecord& record : log.frames) {
    json line;
    line["robot"] = record.id.robot;
    line["frame"] = record.id.frame;
    if (record.pose) {
      const CameraPose& pose = *record.pose;
      line["pose"] = {pose.position.x(),      pose.position.y(),      pose.position.z(),
                      pose.orientation.x(),   pose.orientation.y(),   pose.orientation.z(),
                      pose.orientation.w()};
    }
    json objects = json::array();
    for (const ObjectPoint& object : record.objects) {
      objects.push_back({object.label, object.position.x(), object.position.y(),
                         object.position.z()});
    }
    line["objects"] = std::move(objects);
    out << line.dump() << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace constel
