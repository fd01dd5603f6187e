#include "constel/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace constel {

namespace {

// Shortest round-trip-exact decimal for a double.
std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  double parsed = std::strtod(buffer, nullptr);
  if (parsed == value) {
    for (int precision = 1; precision < 17; ++precision) {
      char shorter[64];
      std::snprintf(shorter, sizeof(shorter), "%.*g", precision, value);
      if (std::strtod(shorter, nullptr) == value) return shorter;
    }
  }
  return buffer;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw CsvError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path.string());
  return in;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
  throw CsvError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::uint64_t parse_unsigned(const std::string& field, const std::filesystem::path& path,
                             std::size_t line) {
  try {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(field, &used);
    if (used != field.size()) fail(path, line, "trailing characters in integer field");
    return value;
  } catch (const std::logic_error&) {
    fail(path, line, "expected an unsigned integer, got '" + field + "'");
  }
}

double parse_double(const std::string& field, const std::filesystem::path& path,
                    std::size_t line) {
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || field.empty()) {
    fail(path, line, "expected a number, got '" + field + "'");
  }
  return value;
}

}  // namespace

void save_records_csv(const std::vector<SimilarityRecord>& records, SimMode mode,
                      const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "mode,query_robot,query_frame,match_robot,match_frame,score\n";
  for (const SimilarityRecord& record : records) {
    out << to_string(mode) << ',' << record.query.robot << ',' << record.query.frame << ','
        << record.match.robot << ',' << record.match.frame << ',' << format_double(record.score)
        << '\n';
  }
}

std::vector<SimilarityRecord> load_records_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<SimilarityRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line_number == 1) continue;  // header
    const auto fields = split_fields(line);
    if (fields.size() != 6) fail(path, line_number, "expected 6 fields");
    SimilarityRecord record;
    record.query.robot = static_cast<std::uint16_t>(parse_unsigned(fields[1], path, line_number));
    record.query.frame = static_cast<std::uint32_t>(parse_unsigned(fields[2], path, line_number));
    record.match.robot = static_cast<std::uint16_t>(parse_unsigned(fields[3], path, line_number));
    record.match.frame = static_cast<std::uint32_t>(parse_unsigned(fields[4], path, line_number));
    record.score = parse_double(fields[5], path, line_number);
    records.push_back(record);
  }
  return records;
}

void save_ledger_csv(const BandwidthLedger& ledger, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "query_robot,query_frame,kind,from,to,bytes\n";
  for (const LedgerEntry& entry : ledger.entries) {
    out << entry.query.robot << ',' << entry.query.frame << ',' << to_string(entry.kind) << ','
        << entry.from << ',' << entry.to << ',' << entry.bytes << '\n';
  }
}

BandwidthLedger load_ledger_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  BandwidthLedger ledger;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line_number == 1) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 6) fail(path, line_number, "expected 6 fields");
    LedgerEntry entry;
    entry.query.robot = static_cast<std::uint16_t>(parse_unsigned(fields[0], path, line_number));
    entry.query.frame = static_cast<std::uint32_t>(parse_unsigned(fields[1], path, line_number));
    try {
      entry.kind = message_kind_from_string(fields[2]);
    } catch (const std::invalid_argument& e) {
      fail(path, line_number, e.what());
    }
    entry.from = static_cast<std::uint16_t>(parse_unsigned(fields[3], path, line_number));
    entry.to = static_cast<std::uint16_t>(parse_unsigned(fields[4], path, line_number));
    entry.bytes = parse_unsigned(fields[5], path, line_number);
    ledger.entries.push_back(entry);
  }
  return ledger;
}

void save_pr_csv(const PRCurve& curve, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "threshold,precision,recall\n";
  for (const PRPoint& point : curve.points) {
    out << format_double(point.threshold) << ',' << format_double(point.precision) << ','
        << format_double(point.recall) << '\n';
  }
}

void save_report_csv(const BandwidthReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "metric,value\n";
  out << "hop_count," << report.hop_count << '\n';
  for (const auto& [kind, bytes] : report.bytes_by_kind) {
    out << "bytes_" << to_string(kind) << ',' << bytes << '\n';
  }
  out << "total_bytes," << report.total_bytes << '\n';
  out << "num_queries," << report.num_queries << '\n';
  out << "mean_query_bytes," << format_double(report.mean_query_bytes) << '\n';
  out << "max_query_bytes," << report.max_query_bytes << '\n';
  out << "reference_descriptor_bytes," << report.reference_descriptor_bytes << '\n';
}

void save_matrix_csv(const SimilarityMatrix& matrix, const std::filesystem::path& path) {
  auto out = open_out(path);
  for (std::size_t row = 0; row < matrix.size; ++row) {
    for (std::size_t col = 0; col < matrix.size; ++col) {
      if (col > 0) out << ',';
      out << format_double(matrix.at(row, col));
    }
    out << '\n';
  }
}

void save_matrix_pgm(const SimilarityMatrix& matrix, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "P2\n" << matrix.size << ' ' << matrix.size << "\n255\n";
  for (std::size_t row = 0; row < matrix.size; ++row) {
    for (std::size_t col = 0; col < matrix.size; ++col) {
      const double clamped = std::min(1.0, std::max(0.0, matrix.at(row, col)));
      if (col > 0) out << ' ';
      out << static_cast<int>(std::lround(clamped * 255.0));
    }
    out << '\n';
  }
}

}  // namespace constel
