#include "hypart/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hypart/calibration.hpp"
#include "hypart/io.hpp"
#include "hypart/projection.hpp"
#include "hypart/rng.hpp"

namespace hypart {

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> cells)
    : rows_(rows), cols_(cols), t_(std::move(cells)), row_sums_(rows, 0), col_sums_(cols, 0) {
  if (t_.size() != rows * cols) throw DimensionMismatch("table cell count does not match its shape");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::int64_t x = t_[i * cols + j];
      if (x < 0) throw InputError("contingency table entries must be non-negative");
      row_sums_[i] += x;
      col_sums_[j] += x;
      total_ += x;
    }
  }
}

void ContingencyTable::add(std::size_t i, std::size_t j, std::int64_t delta) {
  t_[i * cols_ + j] += delta;
  row_sums_[i] += delta;
  col_sums_[j] += delta;
  total_ += delta;
}

bool ContingencyTable::consistent() const {
  ContingencyTable fresh(rows_, cols_, t_);
  return fresh.row_sums_ == row_sums_ && fresh.col_sums_ == col_sums_ && fresh.total_ == total_;
}

ContingencyTable bc_table(const Hypergraph& h) {
  BipartiteMultigraph p = projection(h, {VertexClass::B, VertexClass::C});
  return ContingencyTable(p.rows, p.cols, std::move(p.mult));
}

ContingencyTable northwest_table(std::span<const std::int64_t> row_sums, std::span<const std::int64_t> col_sums) {
  const std::int64_t rs = std::accumulate(row_sums.begin(), row_sums.end(), std::int64_t{0});
  const std::int64_t cs = std::accumulate(col_sums.begin(), col_sums.end(), std::int64_t{0});
  if (rs != cs) throw SumMismatch("row and column sums differ");
  std::vector<std::int64_t> r(row_sums.begin(), row_sums.end()), c(col_sums.begin(), col_sums.end());
  std::vector<std::int64_t> cells(r.size() * c.size(), 0);
  std::size_t i = 0, j = 0;
  while (i < r.size() && j < c.size()) {
    const std::int64_t x = std::min(r[i], c[j]);
    cells[i * c.size() + j] = x;
    r[i] -= x;
    c[j] -= x;
    if (r[i] == 0) ++i;
    else ++j;
  }
  return ContingencyTable(row_sums.size(), col_sums.size(), std::move(cells));
}

double chi2_statistic(const ContingencyTable& t) {
  if (t.total() == 0) throw EmptyHypergraph("table total is zero");
  const double n = static_cast<double>(t.total());
  double stat = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.row_sums()[i] == 0) continue;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (t.col_sums()[j] == 0) continue;
      const double e = static_cast<double>(t.row_sums()[i]) * static_cast<double>(t.col_sums()[j]) / n;
      const double diff = static_cast<double>(t.at(i, j)) - e;
      stat += diff * diff / e;
    }
  }
  return stat;
}

int degrees_of_freedom(const ContingencyTable& t) {
  const auto nonzero = [](const std::vector<std::int64_t>& v) {
    return static_cast<int>(std::count_if(v.begin(), v.end(), [](std::int64_t x) { return x > 0; }));
  };
  const int r = nonzero(t.row_sums()), c = nonzero(t.col_sums());
  return r > 0 && c > 0 ? (r - 1) * (c - 1) : 0;
}

double aggregation_index(const Hypergraph& h) {
  if (h.edge_count() == 0) throw EmptyHypergraph("aggregation index of an empty hypergraph");
  return chi2_statistic(bc_table(h));
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw InputError("gamma_q needs a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 100000;
  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    // Series for the lower function P(a, x).
    double ap = a, term = 1.0 / a, sum = term;
    for (int n = 0; n < kMaxIter && std::abs(term) > std::abs(sum) * kEps; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
    }
    return std::clamp(1.0 - sum * std::exp(log_prefactor), 0.0, 1.0);
  }
  // Continued fraction for Q(a, x), modified Lentz.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / kTiny, d = 1.0 / b, h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::clamp(std::exp(log_prefactor) * h, 0.0, 1.0);
}

double chi2_sf(double x, int df) {
  if (df <= 0) throw InputError("chi-square needs df >= 1");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

LogFactorial::LogFactorial(std::int64_t max_n) : table_(static_cast<std::size_t>(std::max<std::int64_t>(max_n, 1)) + 1) {
  table_[0] = 0.0;
  for (std::size_t n = 1; n < table_.size(); ++n) table_[n] = table_[n - 1] + std::log(static_cast<double>(n));
}

double LogFactorial::operator()(std::int64_t n) const {
  if (n < 0 || n > max_n()) throw InputError("log-factorial argument out of range");
  return table_[static_cast<std::size_t>(n)];
}

double hypergeometric_log_weight(const ContingencyTable& t) {
  return hypergeometric_log_weight(t, LogFactorial(t.total()));
}

double hypergeometric_log_weight(const ContingencyTable& t, const LogFactorial& lf) {
  double w = -lf(t.total());
  for (std::int64_t r : t.row_sums()) w += lf(r);
  for (std::int64_t c : t.col_sums()) w += lf(c);
  for (std::int64_t x : t.cells()) w -= lf(x);
  return w;
}

std::vector<ContingencyTable> sample_contingency_tables(std::span<const std::int64_t> row_sums,
                                                        std::span<const std::int64_t> col_sums,
                                                        const TableSamplerConfig& config) {
  ContingencyTable t = northwest_table(row_sums, col_sums);
  if (t.rows() < 2 || t.cols() < 2 || t.total() == 0) {
    return std::vector<ContingencyTable>(config.n_samples, t);
  }
  const std::uint64_t thinning =
      config.thinning ? config.thinning : std::max<std::uint64_t>(100, static_cast<std::uint64_t>(t.total()));
  const std::uint64_t burn_in = config.burn_in.value_or(10 * thinning);
  Rng rng(derive_seed(config.seed, 0));

  auto step = [&] {
    const std::size_t i = rng.below(t.rows());
    std::size_t i2 = rng.below(t.rows() - 1);
    if (i2 >= i) ++i2;
    const std::size_t j = rng.below(t.cols());
    std::size_t j2 = rng.below(t.cols() - 1);
    if (j2 >= j) ++j2;
    // (i,j) and (i2,j2) gain a unit, (i,j2) and (i2,j) lose one; the order of
    // the column pair sets the direction.
    const std::int64_t down1 = t.at(i, j2), down2 = t.at(i2, j);
    if (down1 == 0 || down2 == 0) return;
    const double log_ratio = std::log(static_cast<double>(down1)) + std::log(static_cast<double>(down2)) -
                             std::log(static_cast<double>(t.at(i, j) + 1)) -
                             std::log(static_cast<double>(t.at(i2, j2) + 1));
    if (log_ratio < 0.0 && !(rng.uniform() <= std::exp(log_ratio))) return;
    t.add(i, j, 1);
    t.add(i2, j2, 1);
    t.add(i, j2, -1);
    t.add(i2, j, -1);
  };

  for (std::uint64_t s = 0; s < burn_in; ++s) step();
  std::vector<ContingencyTable> out;
  out.reserve(config.n_samples);
  while (out.size() < config.n_samples) {
    for (std::uint64_t s = 0; s < thinning; ++s) step();
    out.push_back(t);
  }
  return out;
}

const char* method_name(TestMethod m) {
  switch (m) {
    case TestMethod::kTheoretical:
      return "theoretical";
    case TestMethod::kExact:
      return "exact";
    case TestMethod::kHypergraph:
      return "hypergraph";
  }
  return "?";
}

TestMethod parse_method(const std::string& name) {
  for (TestMethod m : {TestMethod::kTheoretical, TestMethod::kExact, TestMethod::kHypergraph}) {
    if (name == method_name(m)) return m;
  }
  throw InputError("unknown test method '" + name + "'");
}

double normal_upper_p(double statistic, double mean, double sd) {
  if (sd == 0.0) return statistic <= mean ? 1.0 : 0.0;
  return 0.5 * std::erfc((statistic - mean) / (sd * std::sqrt(2.0)));
}

void summarize_null(TestResult& r) {
  const auto& x = r.null_sample;
  if (x.empty()) throw InputError("empty null sample");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  double sd = x.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  // Statistics of identical tables can differ in the last bits.
  if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) sd = 0.0;
  const double tol = 1e-9 * std::max(1.0, std::abs(r.statistic));
  r.null_mean = mean;
  r.null_sd = sd;
  r.p_value = sd == 0.0 ? (r.statistic <= mean + tol ? 1.0 : 0.0) : normal_upper_p(r.statistic, mean, sd);
  r.empirical_p = static_cast<double>(std::count_if(x.begin(), x.end(),
                                                    [&](double v) { return v >= r.statistic - tol; })) /
                  n;
}

TestResult test_theoretical(const Hypergraph& h) {
  const ContingencyTable t = bc_table(h);
  TestResult r;
  r.method = TestMethod::kTheoretical;
  r.statistic = chi2_statistic(t);
  r.df = degrees_of_freedom(t);
  r.p_value = r.df == 0 ? 1.0 : chi2_sf(r.statistic, r.df);
  return r;
}

TestResult test_exact(const Hypergraph& h, const TableSamplerConfig& config) {
  const ContingencyTable t = bc_table(h);
  TestResult r;
  r.method = TestMethod::kExact;
  r.statistic = chi2_statistic(t);
  r.df = degrees_of_freedom(t);
  for (const ContingencyTable& s : sample_contingency_tables(t.row_sums(), t.col_sums(), config)) {
    r.null_sample.push_back(chi2_statistic(s));
  }
  summarize_null(r);
  return r;
}

TestResult test_hypergraph(const Hypergraph& h, const HypergraphTestConfig& config) {
  const ContingencyTable t = bc_table(h);
  TestResult r;
  r.method = TestMethod::kHypergraph;
  r.statistic = chi2_statistic(t);
  r.df = degrees_of_freedom(t);

  const PartiteDegreeSequence d = h.degree_sequence();
  std::vector<double> temps = config.temperatures;
  if (temps.empty()) {
    CalibrationConfig cc;
    cc.t_min = config.t_min;
    cc.t_max = config.t_max;
    cc.grid_size = config.grid_size;
    cc.pilot_steps = config.calibration_pilot_steps;
    cc.seed = config.sampler.seed;
    temps = calibrate(d, cc).temperatures;
  }
  SamplerConfig sc = config.sampler;
  if (config.start_from_observed && !sc.start) sc.start = h;
  SampleRun run = sample_realizations(d, temps, sc);
  if (run.timed_out) {
    const std::string what = "sampler budget exhausted after " + std::to_string(run.steps) + " steps with " +
                             std::to_string(run.samples.size()) + " of " + std::to_string(sc.n_samples) +
                             " samples";
    throw SamplingTimeout(what, std::move(run));
  }
  for (const Hypergraph& s : run.samples) r.null_sample.push_back(aggregation_index(s));
  summarize_null(r);
  return r;
}

std::string test_result_json(const TestResult& r) {
  nlohmann::ordered_json j;
  j["method"] = method_name(r.method);
  j["statistic"] = round_real(r.statistic);
  j["df"] = r.df;
  j["p_value"] = round_real(r.p_value);
  if (r.empirical_p) j["empirical_p"] = round_real(*r.empirical_p);
  if (r.null_mean) j["null_mean"] = round_real(*r.null_mean);
  if (r.null_sd) j["null_sd"] = round_real(*r.null_sd);
  j["null_samples"] = r.null_sample.size();
  return j.dump(2) + "\n";
}

std::string null_sample_csv(const TestResult& r) {
  std::ostringstream out;
  out << "statistic\n";
  for (double x : r.null_sample) out << format_real(x) << '\n';
  return out.str();
}

double ks_statistic(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw InputError("KS statistic of an empty sample");
  std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return best;
}

}  // namespace hypart
