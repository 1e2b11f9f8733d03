#include "mmvr/results_csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mmvr/error.hpp"

namespace mmvr {

std::string format_float(double v) {
  if (std::isnan(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_results_csv(std::span<const LinkRecord> records, std::ostream& out) {
  std::vector<LinkRecord> sorted(records.begin(), records.end());
  std::stable_sort(sorted.begin(), sorted.end(), record_less);
  out << kResultsHeader << '\n';
  for (const auto& r : sorted) {
    out << to_string(r.scenario) << ',' << r.n_tx << ',' << r.n_rf << ',' << format_float(r.esn0_db)
        << ',' << r.ap << ',' << r.user << ',' << format_float(r.rate_dl_bps) << ','
        << format_float(r.rate_ul_bps) << ',' << format_float(r.d_trans_s) << ','
        << format_float(r.d_proc_s) << ',' << format_float(r.d_queue_s) << ','
        << format_float(r.d_total_s) << ',' << (r.utility ? format_float(*r.utility) : "") << ','
        << (r.feasible ? 1 : 0) << ',' << r.violations << '\n';
  }
}

void write_results_csv(std::span<const LinkRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_results_csv(records, out);
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

void write_summary_csv(const SweepSummary& summary, std::ostream& out) {
  out << "table,scenario,n_tx,n_rf,esn0_db,ap,user,value\n";
  for (const auto& u : summary.utilities)
    out << "mean_utility," << to_string(u.scenario) << ',' << u.codebook.n_tx << ','
        << u.codebook.n_rf << ",,,," << format_float(u.mean_utility) << '\n';
  for (const auto& d : summary.delays) {
    out << "min_d_trans_s," << to_string(d.scenario) << ',' << d.codebook.n_tx << ','
        << d.codebook.n_rf << ",," << d.ap << ',' << d.user << ','
        << format_float(d.min_d_trans_s) << '\n';
    out << "mode_d_trans_s," << to_string(d.scenario) << ',' << d.codebook.n_tx << ','
        << d.codebook.n_rf << ",," << d.ap << ',' << d.user << ','
        << format_float(d.mode_d_trans_s) << '\n';
  }
  for (const auto& b : summary.best) {
    out << "best_codebook," << to_string(b.scenario) << ',';
    if (b.codebook) out << b.codebook->n_tx << ',' << b.codebook->n_rf;
    else out << ',';
    out << ',' << format_float(b.esn0_db) << ",,," << (b.codebook ? "" : "infeasible") << '\n';
  }
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidInput("csv: no column named '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view text) {
  auto split_line = [](std::string_view line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
      const auto comma = line.find(',', begin);
      fields.emplace_back(line.substr(begin, comma - begin));
      if (comma == std::string_view::npos) break;
      begin = comma + 1;
    }
    return fields;
  };

  CsvTable table;
  std::size_t begin = 0;
  bool first = true;
  while (begin < text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (first) {
      table.header = split_line(line);
      first = false;
      continue;
    }
    CsvRow row{split_line(line)};
    if (row.fields.size() != table.header.size())
      throw InvalidInput("csv: row has " + std::to_string(row.fields.size()) + " fields, header has " +
                         std::to_string(table.header.size()));
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return parse_csv(buffer.str());
}

}  // namespace mmvr
