#include "ordexp/tables.hpp"

#include <array>
#include <stdexcept>

#include "ordexp/csv.hpp"

namespace ordexp {

namespace {

const std::vector<std::pair<int, int>> kSizes = {
    {5, 5}, {5, 7}, {7, 6}, {8, 10}, {15, 12}};
const std::vector<std::pair<int, int>> kSizesAlt = {
    {8, 8}, {9, 10}, {12, 8}, {14, 15}, {16, 13}};
const std::vector<double> kRatios = {0.1, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95};
const std::vector<double> kGaps = {0.1, 0.2, 0.4, 0.6, 0.9, 1.2, 1.4};
const std::vector<double> kPA = {-1, -0.5, 0.5, 1};
const std::vector<double> kPB = {-4, -2, 2, 4};
const std::vector<double> kPC = {-2.5, -2, 2, 2.5};
const std::vector<double> kPFull = {-4, -2, -1, -0.5, 0.5, 1, 2, 4};
// mu gaps paired with scales, as the pooled- and unequal-scale tables print them
const std::vector<std::pair<double, double>> kGapSigma = {
    {0.1, 0.7}, {0.2, 1.0}, {0.4, 1.5}, {0.6, 2.0},
    {0.9, 2.3}, {1.2, 2.8}, {1.4, 3.0}};
const std::vector<std::array<double, 3>> kGapSigma2 = {
    {0.1, 0.7, 0.5}, {0.2, 1.0, 0.9}, {0.4, 1.5, 1.6}, {0.6, 2.0, 1.9},
    {0.9, 2.3, 2.5}, {1.2, 2.8, 3.0}, {1.4, 3.0, 3.5}};
const std::vector<std::pair<double, double>> kSigmaPairsKnown = {{1.0, 1.5},
                                                                 {3.0, 2.0}};

constexpr EstimatorId kMle{Estimator::MLE};
constexpr EstimatorId kRmle{Estimator::RMLE};
constexpr EstimatorId kBaee{Estimator::BAEE};
constexpr EstimatorId kBlee{Estimator::BLEE};
constexpr EstimatorId kPhi{Estimator::ImprovedOrderedScale};
constexpr EstimatorId kPsi{Estimator::ImprovedKnownScale};
constexpr EstimatorId kVarphi{Estimator::ImprovedEqualScale};
constexpr EstimatorId kZeta{Estimator::ImprovedUnequalScale};
constexpr EstimatorId kRmli{Estimator::RMLEImproved};

}  // namespace

std::vector<int> builtin_table_ids() {
  return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15};
}

TableSpec builtin_table(int id, const TableOverrides& ov) {
  TableSpec spec;
  spec.id = id;

  const auto sizes = ov.sizes.value_or(id == 13 ? kSizesAlt : kSizes);
  auto pvals = [&](const std::vector<double>& def) {
    return ov.p_values.value_or(def);
  };
  auto keys = [&](const std::vector<double>& def) {
    return ov.row_keys.value_or(def);
  };

  auto ordered_scale_cells = [&](const std::vector<double>& ps) {
    for (const auto& [n1, n2] : sizes)
      for (double r : keys(kRatios))
        for (double p : ps)
          spec.cells.push_back({n1, n2, r, 1.0, 0.0, 0.0, p});
  };
  auto known_scale_cells = [&](const std::vector<double>& ps, bool gap_rows) {
    for (const auto& [n1, n2] : sizes)
      for (const auto& [s1, s2] : kSigmaPairsKnown) {
        if (gap_rows) {
          for (double gap : keys(kGaps))
            for (double p : ps)
              spec.cells.push_back({n1, n2, s1, s2, 0.0, gap, p});
        } else {
          for (double p : ps) spec.cells.push_back({n1, n2, s1, s2, 0.0, 0.0, p});
        }
      }
  };

  switch (id) {
    case 1:
    case 2:
      spec.kind = ScenarioKind::OrderedScale;
      spec.title = "PRI of the improved ordered-scale estimators vs the BAEE";
      spec.series = {{0, kPhi, kBaee}, {1, kPhi, kBaee}};
      ordered_scale_cells(pvals(id == 1 ? kPA : kPB));
      break;
    case 3:
    case 5:
      spec.kind = ScenarioKind::OrderedScale;
      spec.title = "PRI of the improved ordered-scale estimators vs the MLE";
      spec.series = {{0, kPhi, kMle}, {1, kPhi, kMle}};
      ordered_scale_cells(pvals(id == 3 ? kPA : kPB));
      if (id == 3)
        spec.quirks.push_back(
            "source table repeats the p=-1 column under p=-0.5 for the (5,7) "
            "block; suspected transcription duplicate, cells here are computed "
            "independently");
      else
        spec.quirks.push_back(
            "source table repeats some adjacent p columns (e.g. (5,5) ratio "
            "0.95 row); suspected transcription duplicates, cells here are "
            "computed independently");
      break;
    case 4:
      spec.kind = ScenarioKind::OrderedScale;
      spec.title = "PRI of the BAEEs vs the MLE under ordered scales";
      spec.series = {{0, kBaee, kMle}, {1, kBaee, kMle}};
      for (const auto& [n1, n2] : sizes)
        for (double p : pvals(kPFull))
          spec.cells.push_back({n1, n2, 1.0, 1.0, 0.0, 0.0, p});
      break;
    case 6:
    case 7:
      spec.kind = ScenarioKind::LocKnownScale;
      spec.title = "PRI of the improved known-scale estimators vs the BLEE";
      spec.series = {{0, kPsi, kBlee}, {1, kPsi, kBlee}};
      known_scale_cells(pvals(id == 6 ? kPA : kPC), true);
      spec.quirks.push_back(
          "source table repeats some adjacent p columns (e.g. the (8,10) "
          "(1,1.5) block); suspected transcription duplicates, cells here are "
          "computed independently");
      break;
    case 8:
      spec.kind = ScenarioKind::LocEqualUnknownScale;
      spec.title = "PRI of the pooled-T BAEEs vs the MLE under equal scales";
      spec.series = {{0, kBaee, kMle}, {1, kBaee, kMle}};
      for (const auto& [n1, n2] : sizes)
        for (double p : pvals(kPFull))
          spec.cells.push_back({n1, n2, 1.0, 1.0, 0.0, 0.0, p});
      break;
    case 9:
      spec.kind = ScenarioKind::LocEqualUnknownScale;
      spec.title = "PRI of the improved equal-scale estimator vs the BAEE";
      spec.series = {{0, kVarphi, kBaee}};
      for (const auto& [n1, n2] : sizes)
        for (const auto& [gap, s] : kGapSigma)
          for (double p : pvals(kPFull))
            spec.cells.push_back({n1, n2, s, s, 0.0, gap, p});
      spec.quirks.push_back(
          "source table repeats some adjacent p columns (e.g. p=1 and p=2 of "
          "the (5,5) block); suspected transcription duplicates, cells here "
          "are computed independently");
      break;
    case 10:
    case 11:
      spec.kind = ScenarioKind::LocKnownScale;
      spec.title = "PRI of the shifted restricted MLE of mu_1 vs the RMLE";
      spec.series = {{0, kRmli, kRmle}};
      known_scale_cells(pvals(id == 10 ? kPA : kPC), true);
      spec.quirks.push_back(
          "source table repeats some adjacent p columns; suspected "
          "transcription duplicates, cells here are computed independently");
      break;
    case 12:
    case 13:
      spec.kind = ScenarioKind::LocKnownScale;
      spec.title = "PRI of the shifted restricted MLE of mu_2 vs the RMLE";
      spec.series = {{1, kRmli, kRmle}};
      known_scale_cells(pvals(id == 12 ? kPA : kPC), false);
      break;
    case 15:
      spec.kind = ScenarioKind::LocUnequalUnknownScale;
      spec.title = "PRI of the improved unequal-scale estimator vs the BAEE";
      spec.series = {{0, kZeta, kBaee}};
      for (const auto& [n1, n2] : sizes)
        for (const auto& [gap, s1, s2] : kGapSigma2)
          for (double p : pvals(kPFull))
            spec.cells.push_back({n1, n2, s1, s2, 0.0, gap, p});
      break;
    default:
      throw std::invalid_argument("unknown table_id " + std::to_string(id) +
                                  " (valid: 1-13, 15)");
  }
  return spec;
}

GridPoint cell_point(const TableSpec& spec, const TableCell& cell, int target) {
  GridPoint point;
  point.scenario.kind = spec.kind;
  point.scenario.populations = {{cell.mu1, cell.sigma1, cell.n1},
                                {cell.mu2, cell.sigma2, cell.n2}};
  point.scenario.target_index = target;
  point.scheme = SchemeConfig::iid();
  point.loss = LossSpec{cell.p, 1.0};
  return point;
}

std::vector<TableRowResult> run_table(const TableSpec& spec, std::int64_t reps,
                                      std::uint64_t seed) {
  std::vector<TableRowResult> rows;
  rows.reserve(spec.cells.size() * spec.series.size());
  std::uint64_t ordinal = 0;
  for (const auto& cell : spec.cells) {
    const std::uint64_t cell_seed =
        mix64(seed, std::uint64_t(spec.id) * 1000003u + ordinal);
    ++ordinal;
    for (const auto& series : spec.series) {
      const GridPoint point = cell_point(spec, cell, series.target);
      const EstimatorId ids[2] = {series.baseline, series.candidate};
      const auto est = mc_risk_many(ids, point, reps, cell_seed);
      TableRowResult row;
      row.cell = cell;
      row.target = series.target;
      row.candidate = series.candidate;
      row.baseline = series.baseline;
      row.risk = est[1].mean_loss;
      row.se = est[1].std_error;
      row.baseline_risk = est[0].mean_loss;
      row.pri = pri(est[0], est[1]).pri_percent;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<std::string> csv_header() {
  return {"table_id", "n1", "n2", "sigma1", "sigma2", "mu1", "mu2",
          "p",        "estimator", "baseline", "risk", "se", "pri"};
}

std::vector<std::string> csv_fields(int table_id, const TableRowResult& row,
                                    bool display) {
  auto num = display ? format_display : format_full;
  const std::string suffix = "[" + std::to_string(row.target + 1) + "]";
  return {std::to_string(table_id),
          std::to_string(row.cell.n1),
          std::to_string(row.cell.n2),
          num(row.cell.sigma1),
          num(row.cell.sigma2),
          num(row.cell.mu1),
          num(row.cell.mu2),
          num(row.cell.p),
          to_string(row.candidate) + suffix,
          to_string(row.baseline) + suffix,
          num(row.risk),
          num(row.se),
          num(row.pri)};
}

}  // namespace ordexp
