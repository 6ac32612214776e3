#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordexp/risk.hpp"
#include "ordexp/types.hpp"

namespace ordexp {

// One (candidate, baseline) comparison at one component index.
struct TableSeries {
  int target = 0;  // zero-based population index
  EstimatorId candidate;
  EstimatorId baseline;
};

struct TableCell {
  int n1 = 0, n2 = 0;
  double sigma1 = 1.0, sigma2 = 1.0;
  double mu1 = 0.0, mu2 = 0.0;
  double p = 1.0;
};

struct TableSpec {
  int id = 0;
  std::string title;
  ScenarioKind kind = ScenarioKind::OrderedScale;
  std::vector<TableSeries> series;
  std::vector<TableCell> cells;
  std::vector<std::string> quirks;  // source-table irregularities worth flagging
};

struct TableOverrides {
  std::optional<std::vector<double>> p_values;
  std::optional<std::vector<std::pair<int, int>>> sizes;
  std::optional<std::vector<double>> row_keys;  // sigma ratios or mu gaps
};

// Built-in grids mirroring the paper's tables (ids 1..13 and 15).
TableSpec builtin_table(int id, const TableOverrides& overrides = {});
std::vector<int> builtin_table_ids();

struct TableRowResult {
  TableCell cell;
  int target = 0;
  EstimatorId candidate;
  EstimatorId baseline;
  double risk = 0.0;      // candidate mean loss
  double se = 0.0;        // candidate standard error
  double baseline_risk = 0.0;
  double pri = 0.0;
};

GridPoint cell_point(const TableSpec& spec, const TableCell& cell, int target);

// Runs every cell; per-cell seeds derive from (seed, table id, cell ordinal)
// so output bytes depend only on the configuration.
std::vector<TableRowResult> run_table(const TableSpec& spec, std::int64_t reps,
                                      std::uint64_t seed);

// CSV field rows (shared by the table and risk subcommands).
std::vector<std::string> csv_header();
std::vector<std::string> csv_fields(int table_id, const TableRowResult& row,
                                    bool display);

}  // namespace ordexp
