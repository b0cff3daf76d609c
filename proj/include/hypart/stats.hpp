#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypart/error.hpp"
#include "hypart/hypergraph.hpp"
#include "hypart/sampler.hpp"

namespace hypart {

/// Non-negative integer matrix with cached margins.
class ContingencyTable {
 public:
  ContingencyTable() = default;
  ContingencyTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> cells);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }
  /// Adds delta to one cell and keeps the margins in step.
  void add(std::size_t i, std::size_t j, std::int64_t delta);

  const std::vector<std::int64_t>& cells() const { return t_; }
  const std::vector<std::int64_t>& row_sums() const { return row_sums_; }
  const std::vector<std::int64_t>& col_sums() const { return col_sums_; }
  std::int64_t total() const { return total_; }
  /// True when the cached margins match a recount.
  bool consistent() const;

  friend bool operator==(const ContingencyTable& x, const ContingencyTable& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.t_ == y.t_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> t_;
  std::vector<std::int64_t> row_sums_;
  std::vector<std::int64_t> col_sums_;
  std::int64_t total_ = 0;
};

/// The (B,C)-projection of h as a table: t[b][c] = number of hyperedges through b and c.
ContingencyTable bc_table(const Hypergraph& h);

/// North-west-corner table with the given margins. Throws SumMismatch.
ContingencyTable northwest_table(std::span<const std::int64_t> row_sums, std::span<const std::int64_t> col_sums);

/// Pearson statistic sum (t - e)^2 / e with e = R_i C_j / N over cells with e > 0.
/// Throws EmptyHypergraph when the table total is 0.
double chi2_statistic(const ContingencyTable& t);
/// (non-empty rows - 1) * (non-empty columns - 1), never negative.
int degrees_of_freedom(const ContingencyTable& t);
double aggregation_index(const Hypergraph& h);

/// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
double gamma_q(double a, double x);
/// Upper tail of the chi-square distribution with df degrees of freedom.
double chi2_sf(double x, int df);

/// log n! for n up to a fixed bound, tabulated.
class LogFactorial {
 public:
  explicit LogFactorial(std::int64_t max_n);
  double operator()(std::int64_t n) const;
  std::int64_t max_n() const { return static_cast<std::int64_t>(table_.size()) - 1; }

 private:
  std::vector<double> table_;
};

/// log of the generalized hypergeometric probability of t given its margins:
/// sum log R_i! + sum log C_j! - log N! - sum log t_ij!.
double hypergeometric_log_weight(const ContingencyTable& t);
double hypergeometric_log_weight(const ContingencyTable& t, const LogFactorial& lf);

struct TableSamplerConfig {
  std::size_t n_samples = 1000;
  /// Steps between emissions; 0 selects max(100, N).
  std::uint64_t thinning = 0;
  /// Steps before the first emission; nullopt selects 10 * thinning.
  std::optional<std::uint64_t> burn_in;
  std::uint64_t seed = 1;
};

/// Metropolis-Hastings over tables with fixed margins targeting the
/// generalized hypergeometric distribution. Each step picks an ordered pair
/// of distinct rows and one of distinct columns and shifts one unit around
/// the 2x2 rectangle; moves that would make a cell negative are no-ops.
/// With fewer than two rows or columns the table is forced and is returned
/// n_samples times.
std::vector<ContingencyTable> sample_contingency_tables(std::span<const std::int64_t> row_sums,
                                                        std::span<const std::int64_t> col_sums,
                                                        const TableSamplerConfig& config);

enum class TestMethod { kTheoretical, kExact, kHypergraph };
const char* method_name(TestMethod m);
TestMethod parse_method(const std::string& name);

struct TestResult {
  TestMethod method = TestMethod::kTheoretical;
  double statistic = 0.0;
  double p_value = 1.0;
  int df = 0;
  std::vector<double> null_sample;
  std::optional<double> null_mean;
  std::optional<double> null_sd;
  std::optional<double> empirical_p;
};

/// Upper-tail normal probability of `statistic` under N(mean, sd^2);
/// sd == 0 gives 1 when statistic <= mean and 0 otherwise.
double normal_upper_p(double statistic, double mean, double sd);

/// Fills null_mean, null_sd (unbiased), empirical_p and the normal p-value from null_sample.
void summarize_null(TestResult& r);

TestResult test_theoretical(const Hypergraph& h);
TestResult test_exact(const Hypergraph& h, const TableSamplerConfig& config);

struct HypergraphTestConfig {
  std::vector<double> temperatures;  // empty: calibrate with `calibration`
  SamplerConfig sampler;
  std::uint64_t calibration_pilot_steps = 0;
  double t_min = 0.1;
  double t_max = 100.0;
  std::size_t grid_size = 100;
  /// Start every chain from h itself rather than from sampler.initial.
  bool start_from_observed = true;
};

/// Raised by test_hypergraph when the sampler exhausts its step budget.
class SamplingTimeout : public Timeout {
 public:
  SamplingTimeout(const std::string& what, SampleRun partial) : Timeout(what), run(std::move(partial)) {}
  SampleRun run;
};

TestResult test_hypergraph(const Hypergraph& h, const HypergraphTestConfig& config);

/// Test result as JSON with a fixed key order; the null sample is not included.
std::string test_result_json(const TestResult& r);
/// One-column CSV "statistic" of the null sample.
std::string null_sample_csv(const TestResult& r);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_x - F_y|.
double ks_statistic(std::span<const double> x, std::span<const double> y);

}  // namespace hypart
