#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ects/bench/pipeline.hpp"

namespace ects {

// Writes records.csv, summaries.csv, ranks.csv, pairwise.csv, pareto.csv and
// skipped.csv into `out_dir` (created if needed), plus ranks.svg when asked.
// Rows keep the bundle's order; derive_reports already sorted them.
void write_reports(const ReportBundle& bundle, const std::filesystem::path& out_dir, bool emit_svg);

std::string records_csv(const std::vector<EvalRecord>& records);
std::string summaries_csv(const std::vector<RunSummary>& summaries);
std::string ranks_csv(const std::vector<RankRow>& ranks);
std::string pairwise_csv(const std::vector<PairwiseRow>& rows);
std::string pareto_csv(const std::vector<ParetoRow>& rows);
std::string skipped_csv(const std::vector<SkipRecord>& rows);

// Mean rank against alpha, one polyline per method.
std::string ranks_svg(const std::vector<RankRow>& ranks);

// Inverse of records_csv / skipped_csv. Malformed input raises DataError
// citing the line.
std::vector<EvalRecord> parse_records_csv(const std::string& text);
std::vector<SkipRecord> parse_skipped_csv(const std::string& text);

std::vector<EvalRecord> read_records_csv(const std::filesystem::path& path);
std::vector<SkipRecord> read_skipped_csv(const std::filesystem::path& path);

}  // namespace ects
