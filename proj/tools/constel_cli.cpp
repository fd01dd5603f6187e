// Command-line front end: synthetic world generation, centralized and
// decentralized playback, PR evaluation, bandwidth reports, matrix export.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "constel/detection_log.hpp"
#include "constel/evaluation.hpp"
#include "constel/io.hpp"
#include "constel/simulator.hpp"
#include "constel/synthetic.hpp"

namespace {

using namespace constel;

void add_fleet_flags(CLI::App& cmd, FleetConfig& config) {
  // fleet size comes from the log (or --split), not from a flag
  cmd.add_option("--labels", config.num_labels, "Label universe size")->capture_default_str();
  cmd.add_option("--max-candidates", config.max_candidates,
                 "Candidate frames returned per partial query")
      ->capture_default_str();
  cmd.add_option("--max-full-queries", config.max_full_query_targets,
                 "Robots receiving the full constellation")
      ->capture_default_str();
  cmd.add_option("--match-distance", config.match_distance,
                 "Association distance threshold, meters")
      ->capture_default_str();
  cmd.add_option("--score-threshold", config.score_threshold,
                 "Minimum loop-closure score reported")
      ->capture_default_str();
  cmd.add_option("--neighbor-exclusion", config.neighbor_exclusion,
                 "Same-robot frame distance ignored as trivial")
      ->capture_default_str();
}

int run(int argc, char** argv) {
  CLI::App app{"Object-constellation place recognition simulator"};
  app.require_subcommand(1);

  // synth
  SyntheticWorldParams synth_params;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic detection log");
  synth->add_option("--seed", synth_params.seed, "RNG seed")->capture_default_str();
  synth->add_option("--scenes", synth_params.num_scenes, "Distinct scenes")->capture_default_str();
  synth->add_option("--visits", synth_params.visits_per_scene, "Visits per scene")
      ->capture_default_str();
  synth->add_option("--noise", synth_params.noise_sigma, "Per-axis position noise, meters")
      ->capture_default_str();
  synth->add_option("--min-objects", synth_params.min_objects, "Objects per scene, lower bound")
      ->capture_default_str();
  synth->add_option("--max-objects", synth_params.max_objects, "Objects per scene, upper bound")
      ->capture_default_str();
  synth->add_option("--robots", synth_params.num_robots, "Fleet size")->capture_default_str();
  synth->add_option("--labels", synth_params.num_labels, "Label universe size")
      ->capture_default_str();
  synth->add_option("--out", synth_out, "Output detection log path")->required();

  // simulate
  FleetConfig sim_config;
  std::string sim_log;
  std::string sim_mode = "decentralized";
  bool sim_quantize = false;
  std::size_t sim_split = 0;
  std::string sim_records;
  std::string sim_ledger;
  CLI::App* simulate = app.add_subcommand("simulate", "Play a detection log through the fleet");
  simulate->add_option("--log", sim_log, "Detection log path")->required();
  simulate->add_option("--mode", sim_mode, "centralized or decentralized")
      ->check(CLI::IsMember({"centralized", "decentralized"}))
      ->capture_default_str();
  simulate->add_flag("--quantize", sim_quantize,
                     "Centralized only: snap positions to the wire fixed-point grid");
  simulate->add_option("--split", sim_split,
                       "Split a single-robot log into this many sub-trajectories");
  simulate->add_option("--records", sim_records, "Output records CSV")->required();
  simulate->add_option("--ledger", sim_ledger, "Output bandwidth ledger CSV");
  add_fleet_flags(*simulate, sim_config);

  // evaluate
  std::string eval_log;
  std::string eval_records;
  double eval_gt_threshold = 0.5;
  double eval_cutoff = 1.0;
  std::uint32_t eval_exclusion = 200;
  std::string eval_out;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Precision-recall against ground truth");
  evaluate_cmd->add_option("--log", eval_log, "Detection log with poses")->required();
  evaluate_cmd->add_option("--records", eval_records, "Records CSV from simulate")->required();
  evaluate_cmd->add_option("--gt-threshold", eval_gt_threshold,
                           "Ground-truth score treated as a true place match")
      ->capture_default_str();
  evaluate_cmd->add_option("--cutoff", eval_cutoff, "Scene distance where ground truth reaches 0")
      ->capture_default_str();
  evaluate_cmd->add_option("--neighbor-exclusion", eval_exclusion,
                           "Same-robot frame distance ignored as trivial")
      ->capture_default_str();
  evaluate_cmd->add_option("--out", eval_out, "Output PR curve CSV")->required();

  // bandwidth
  std::string bw_ledger;
  std::uint64_t bw_hops = 1;
  std::string bw_out;
  CLI::App* bandwidth = app.add_subcommand("bandwidth", "Aggregate a bandwidth ledger");
  bandwidth->add_option("--ledger", bw_ledger, "Ledger CSV from simulate")->required();
  bandwidth->add_option("--hops", bw_hops, "Relay hops per message")->capture_default_str();
  bandwidth->add_option("--out", bw_out, "Output report CSV");

  // export-matrix
  std::string mx_log;
  std::string mx_records;
  double mx_threshold = 0.25;
  std::string mx_out;
  CLI::App* export_matrix = app.add_subcommand("export-matrix", "Dense similarity matrix");
  export_matrix->add_option("--log", mx_log, "Detection log path")->required();
  export_matrix->add_option("--records", mx_records, "Records CSV from simulate")->required();
  export_matrix->add_option("--threshold", mx_threshold, "Scores below this are zeroed")
      ->capture_default_str();
  export_matrix->add_option("--out", mx_out, "Output basename (.csv and .pgm appended)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (synth->parsed()) {
    auto [log, gt] = generate_synthetic_world(synth_params);
    save_detection_log(log, synth_out);
    std::cout << "wrote " << log.frames.size() << " frames (" << synth_params.num_scenes
              << " scenes x " << synth_params.visits_per_scene << " visits, "
              << synth_params.num_robots << " robots) to " << synth_out << "\n";
    return 0;
  }

  if (simulate->parsed()) {
    const DetectionLog log = load_detection_log(sim_log);
    FleetStreams streams;
    if (sim_split > 1) {
      if (log.num_robots != 1) {
        std::cerr << "error: --split requires a single-robot log\n";
        return 1;
      }
      streams = split_stream(log.streams().front(), sim_split);
    } else {
      streams = log.streams();
    }
    sim_config.num_robots = static_cast<std::uint16_t>(streams.size());
    if (!simulate->count("--labels")) sim_config.num_labels = log.num_labels;

    SimulationResult result;
    if (sim_mode == "centralized") {
      result = run_centralized(sim_config, streams, sim_quantize);
    } else {
      result = run_decentralized(sim_config, streams);
    }
    save_records_csv(result.records, result.mode, sim_records);
    if (!sim_ledger.empty()) save_ledger_csv(result.ledger, sim_ledger);

    const BandwidthReport report = bandwidth_report(result.ledger);
    std::cout << to_string(result.mode) << ": " << result.records.size() << " records, "
              << report.total_bytes << " bytes over " << report.num_queries << " queries";
    if (report.num_queries > 0) {
      std::printf(" (mean %.1f B/query)", report.mean_query_bytes);
    }
    std::cout << "\n";
    return 0;
  }

  if (evaluate_cmd->parsed()) {
    const DetectionLog log = load_detection_log(eval_log);
    const GroundTruth gt = ground_truth_from_poses(log, eval_cutoff);
    const auto records = load_records_csv(eval_records);
    const PRCurve curve = evaluate(records, gt, eval_gt_threshold, eval_exclusion);
    save_pr_csv(curve, eval_out);
    if (curve.no_detections) {
      std::cout << "no detections; AUC 0\n";
    } else {
      std::printf("AUC %.6f over %zu thresholds\n", curve.auc, curve.points.size());
    }
    return 0;
  }

  if (bandwidth->parsed()) {
    const BandwidthLedger ledger = load_ledger_csv(bw_ledger);
    const BandwidthReport report = bandwidth_report(ledger, bw_hops);
    if (!bw_out.empty()) save_report_csv(report, bw_out);
    std::cout << "total " << report.total_bytes << " bytes at " << report.hop_count << " hop(s), "
              << report.num_queries << " queries";
    if (report.num_queries > 0) {
      std::printf(", mean %.1f B/query vs %llu B/query for a 512 B opaque descriptor",
                  report.mean_query_bytes,
                  static_cast<unsigned long long>(report.reference_descriptor_bytes));
    }
    std::cout << "\n";
    for (const auto& [kind, bytes] : report.bytes_by_kind) {
      std::cout << "  " << to_string(kind) << ": " << bytes << " bytes\n";
    }
    return 0;
  }

  if (export_matrix->parsed()) {
    const DetectionLog log = load_detection_log(mx_log);
    const auto records = load_records_csv(mx_records);
    const auto index = frame_index_of(log.streams());
    const SimilarityMatrix matrix =
        build_similarity_matrix(records, index, log.frames.size(), mx_threshold);
    save_matrix_csv(matrix, mx_out + ".csv");
    save_matrix_pgm(matrix, mx_out + ".pgm");
    std::cout << "wrote " << matrix.size << "x" << matrix.size << " matrix to " << mx_out
              << ".csv and " << mx_out << ".pgm\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const LogParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const CsvError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const CodecError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
