#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stgraph::stats {

// Mid-rank convention: ranks 1..N, tied values share the mean of their
// rank block.
std::vector<double> rank_midties(std::span<const double> values);

struct Group {
  std::string label;
  std::vector<double> values;
};

struct PairwiseEntry {
  std::string a;
  std::string b;
  double z = 0.0;
  double p_raw = 1.0;
  double p_adj = 1.0;
  double r_rb = 0.0;  // rank-biserial, positive when a tends larger
};

struct TestReport {
  std::string test;
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::string effect_label;  // "epsilon_squared" or empty
  double effect_size = 0.0;
  bool has_effect = false;
  std::vector<PairwiseEntry> pairwise;
};

// Tie-corrected H with chi-square reference distribution and epsilon
// squared H/(N-1). All observations equal degenerates to H = 0, p = 1.
TestReport kruskal_wallis(const std::vector<Group>& groups);

// Dunn z for every pair (i < j in input order), two-sided normal p,
// Holm step-down adjustment, rank-biserial effect per pair.
std::vector<PairwiseEntry> dunn_pairwise(const std::vector<Group>& groups);

struct MannWhitneyResult {
  double u = 0.0;     // wins of a over b, ties half
  double r_rb = 0.0;  // 2U/(n_a n_b) - 1
};
MannWhitneyResult mann_whitney_rank_biserial(std::span<const double> a,
                                             std::span<const double> b);

// Step-down adjustment; output aligned with the input order.
std::vector<double> holm_adjust(std::span<const double> raw);

struct ContingencyTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::int64_t>> counts;  // rows x cols
};

// Pearson chi-square, no continuity correction. Throws on zero rows or
// columns.
TestReport chi_square_independence(const ContingencyTable& table);

// Upper tail of the chi-square distribution via the regularized
// incomplete gamma function.
double chi2_sf(double x, int df);

// Standard normal upper tail via erfc.
double normal_sf(double z);

std::string report_csv(const TestReport& report);
std::string report_json(const TestReport& report);

}  // namespace stgraph::stats
