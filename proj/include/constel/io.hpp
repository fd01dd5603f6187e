#pragma once
#include <filesystem>
#include <vector>

#include "constel/evaluation.hpp"
#include "constel/simulator.hpp"

namespace constel {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mode,query_robot,query_frame,match_robot,match_frame,score
void save_records_csv(const std::vector<SimilarityRecord>& records, SimMode mode,
                      const std::filesystem::path& path);
std::vector<SimilarityRecord> load_records_csv(const std::filesystem::path& path);

// query_robot,query_frame,kind,from,to,bytes
void save_ledger_csv(const BandwidthLedger& ledger, const std::filesystem::path& path);
BandwidthLedger load_ledger_csv(const std::filesystem::path& path);

// threshold,precision,recall
void save_pr_csv(const PRCurve& curve, const std::filesystem::path& path);

// metric,value
void save_report_csv(const BandwidthReport& report, const std::filesystem::path& path);

void save_matrix_csv(const SimilarityMatrix& matrix, const std::filesystem::path& path);

/// ASCII portable graymap (P2), 255 = score 1.0.
void save_matrix_pgm(const SimilarityMatrix& matrix, const std::filesystem::path& path);

}  // namespace constel
