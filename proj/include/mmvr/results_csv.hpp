#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmvr/runner.hpp"

namespace mmvr {

inline constexpr std::string_view kResultsHeader =
    "scenario,n_tx,n_rf,esn0_db,ap,user,rate_dl_bps,rate_ul_bps,d_trans_s,d_proc_s,d_queue_s,"
    "d_total_s,utility,feasible,violations";

/// %.9g; NaN and absent values print as an empty field.
std::string format_float(double v);

/// Header plus one row per record, sorted by (scenario, n_tx, n_rf,
/// esn0_db, ap, user).
void write_results_csv(std::span<const LinkRecord> records, std::ostream& out);

/// Same, written to `path`. Throws IoError with the path on failure.
void write_results_csv(std::span<const LinkRecord> records, const std::filesystem::path& path);

/// Per-codebook mean utility, min/mode delay and best-codebook tables.
void write_summary_csv(const SweepSummary& summary, std::ostream& out);

/// One parsed row, fields as text keyed by header order.
struct CsvRow {
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  /// Column index; throws InvalidInput for a missing column.
  std::size_t column(std::string_view name) const;
};

/// Reads a comma-separated file without quoting. Throws IoError.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

}  // namespace mmvr
