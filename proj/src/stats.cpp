#include "stgraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "stgraph/csv.hpp"
#include "stgraph/error.hpp"
#include "stgraph/jsonio.hpp"

namespace stgraph::stats {

std::vector<double> rank_midties(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw usage_error("cannot rank an empty sample");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

namespace {

struct PooledRanks {
  std::vector<double> rank_sums;    // per group
  std::vector<std::size_t> sizes;   // per group
  std::size_t total = 0;
  double tie_sum = 0.0;             // sum over tie blocks of t^3 - t
  bool all_equal = false;
};

PooledRanks pool_and_rank(const std::vector<Group>& groups) {
  PooledRanks out;
  std::vector<double> pooled;
  for (const Group& g : groups) {
    if (g.values.empty()) throw usage_error("group '" + g.label + "' is empty");
    out.sizes.push_back(g.values.size());
    pooled.insert(pooled.end(), g.values.begin(), g.values.end());
  }
  out.total = pooled.size();
  const std::vector<double> ranks = rank_midties(pooled);

  out.rank_sums.assign(groups.size(), 0.0);
  std::size_t offset = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t k = 0; k < out.sizes[gi]; ++k) {
      out.rank_sums[gi] += ranks[offset + k];
    }
    offset += out.sizes[gi];
  }

  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    out.tie_sum += t * t * t - t;
    i = j + 1;
  }
  out.all_equal = !sorted.empty() && sorted.front() == sorted.back();
  return out;
}

}  // namespace

TestReport kruskal_wallis(const std::vector<Group>& groups) {
  if (groups.size() < 2) throw usage_error("kruskal-wallis needs at least 2 groups");
  const PooledRanks pooled = pool_and_rank(groups);
  const double n = static_cast<double>(pooled.total);
  if (pooled.total < 3) throw usage_error("kruskal-wallis needs at least 3 observations");

  TestReport report;
  report.test = "kruskal_wallis";
  report.df = static_cast<int>(groups.size()) - 1;
  report.effect_label = "epsilon_squared";
  report.has_effect = true;

  if (pooled.all_equal) {
    report.statistic = 0.0;
    report.p_value = 1.0;
    report.effect_size = 0.0;
    return report;
  }

  double sum = 0.0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    sum += pooled.rank_sums[gi] * pooled.rank_sums[gi] / static_cast<double>(pooled.sizes[gi]);
  }
  const double h_raw = 12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0);
  const double correction = 1.0 - pooled.tie_sum / (n * n * n - n);
  const double h = h_raw / correction;

  report.statistic = h;
  report.p_value = chi2_sf(std::max(0.0, h), report.df);
  report.effect_size = h / (n - 1.0);
  return report;
}

MannWhitneyResult mann_whitney_rank_biserial(std::span<const double> a,
                                             std::span<const double> b) {
  if (a.empty() || b.empty()) throw usage_error("mann-whitney needs two non-empty samples");
  double u = 0.0;
  for (double av : a) {
    for (double bv : b) {
      if (av > bv) u += 1.0;
      else if (av == bv) u += 0.5;
    }
  }
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  return MannWhitneyResult{u, 2.0 * u / pairs - 1.0};
}

std::vector<double> holm_adjust(std::span<const double> raw) {
  const std::size_t m = raw.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (raw[x] != raw[y]) return raw[x] < raw[y];
    return x < y;
  });
  std::vector<double> adjusted(m);
  double running = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double scaled = static_cast<double>(m - i) * raw[order[i]];
    running = std::max(running, scaled);
    adjusted[order[i]] = std::min(1.0, running);
  }
  return adjusted;
}

std::vector<PairwiseEntry> dunn_pairwise(const std::vector<Group>& groups) {
  if (groups.size() < 2) throw usage_error("pairwise comparison needs at least 2 groups");
  const PooledRanks pooled = pool_and_rank(groups);
  const double n = static_cast<double>(pooled.total);

  std::vector<double> mean_ranks(groups.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    mean_ranks[gi] = pooled.rank_sums[gi] / static_cast<double>(pooled.sizes[gi]);
  }
  const double variance_core = n * (n + 1.0) / 12.0 - pooled.tie_sum / (12.0 * (n - 1.0));

  std::vector<PairwiseEntry> entries;
  std::vector<double> raw_ps;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      PairwiseEntry entry;
      entry.a = groups[i].label;
      entry.b = groups[j].label;
      const double inv = 1.0 / static_cast<double>(pooled.sizes[i]) +
                         1.0 / static_cast<double>(pooled.sizes[j]);
      const double denom = variance_core * inv;
      if (denom > 0.0) {
        entry.z = (mean_ranks[i] - mean_ranks[j]) / std::sqrt(denom);
      } else {
        entry.z = 0.0;  // every pooled value tied
      }
      entry.p_raw = std::min(1.0, 2.0 * normal_sf(std::fabs(entry.z)));
      entry.r_rb = mann_whitney_rank_biserial(groups[i].values, groups[j].values).r_rb;
      raw_ps.push_back(entry.p_raw);
      entries.push_back(std::move(entry));
    }
  }
  const std::vector<double> adjusted = holm_adjust(raw_ps);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].p_adj = adjusted[i];
  return entries;
}

TestReport chi_square_independence(const ContingencyTable& table) {
  const std::size_t rows = table.counts.size();
  if (rows == 0) throw usage_error("empty contingency table");
  const std::size_t cols = table.counts.front().size();
  for (const auto& row : table.counts) {
    if (row.size() != cols) throw usage_error("ragged contingency table");
  }
  if (rows < 2 || cols < 2) throw usage_error("contingency table needs >= 2 rows and columns");

  std::vector<double> row_sum(rows, 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (table.counts[r][c] < 0) throw usage_error("negative count in contingency table");
      const double v = static_cast<double>(table.counts[r][c]);
      row_sum[r] += v;
      col_sum[c] += v;
      total += v;
    }
  }
  if (total <= 0.0) throw invariant_error("degenerate contingency table: empty");
  for (double rs : row_sum) {
    if (rs == 0.0) throw invariant_error("degenerate contingency table: zero row");
  }
  for (double cs : col_sum) {
    if (cs == 0.0) throw invariant_error("degenerate contingency table: zero column");
  }

  double stat = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double expected = row_sum[r] * col_sum[c] / total;
      const double diff = static_cast<double>(table.counts[r][c]) - expected;
      stat += diff * diff / expected;
    }
  }

  TestReport report;
  report.test = "chi_square_independence";
  report.statistic = stat;
  report.df = static_cast<int>((rows - 1) * (cols - 1));
  report.p_value = chi2_sf(stat, report.df);
  return report;
}

namespace {

// Lower regularized incomplete gamma by series expansion; converges for
// x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz continued fraction;
// converges for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi2_sf(double x, int df) {
  if (df < 1) throw usage_error("chi2_sf needs df >= 1");
  if (x < 0.0) throw usage_error("chi2_sf needs x >= 0");
  if (x == 0.0) return 1.0;
  const double a = static_cast<double>(df) / 2.0;
  const double half = x / 2.0;
  if (half < a + 1.0) return 1.0 - gamma_p_series(a, half);
  return gamma_q_contfrac(a, half);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

std::string g12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string report_csv(const TestReport& report) {
  std::ostringstream out;
  out << "row_type,label,statistic,df,p,p_adj,effect\n";
  out << csv_row({"omnibus", report.test, g12(report.statistic), std::to_string(report.df),
                  g12(report.p_value), "",
                  report.has_effect ? g12(report.effect_size) : std::string()});
  for (const PairwiseEntry& e : report.pairwise) {
    out << csv_row({"pairwise", e.a + "|" + e.b, g12(e.z), "", g12(e.p_raw), g12(e.p_adj),
                    g12(e.r_rb)});
  }
  return out.str();
}

std::string report_json(const TestReport& report) {
  json j;
  j["test"] = report.test;
  j["statistic"] = report.statistic;
  j["df"] = report.df;
  j["p_value"] = report.p_value;
  if (report.has_effect) {
    j["effect"] = {{"label", report.effect_label}, {"value", report.effect_size}};
  }
  if (!report.pairwise.empty()) {
    json pairs = json::array();
    for (const PairwiseEntry& e : report.pairwise) {
      pairs.push_back({{"a", e.a},
                       {"b", e.b},
                       {"z", e.z},
                       {"p_raw", e.p_raw},
                       {"p_adj", e.p_adj},
                       {"r_rb", e.r_rb}});
    }
    j["pairwise"] = std::move(pairs);
  }
  return write_canonical(j, [](double v) { return g12(v); });
}

}  // namespace stgraph::stats
