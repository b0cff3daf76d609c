#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "hypart/error.hpp"
#include "hypart/stats.hpp"
#include "support.hpp"

using namespace hypart;

namespace {

// Aggregation index straight from an edge list, with its own counting.
double aggregation_from_edges(const Hypergraph& h) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> t;
  std::map<std::uint32_t, double> row, col;
  double n = 0;
  for (const Triple& e : h.edges()) {
    t[{e.b, e.c}] += 1;
    row[e.b] += 1;
    col[e.c] += 1;
    n += 1;
  }
  double x = 0;
  for (const auto& [b, r] : row) {
    for (const auto& [c, s] : col) {
      const double e = r * s / n;
      const auto it = t.find({b, c});
      const double o = it == t.end() ? 0.0 : it->second;
      x += (o - e) * (o - e) / e;
    }
  }
  return x;
}

// One agent per cell count: agent k joins the (b,c) cell it is assigned to.
Hypergraph ones_hypergraph(const std::vector<std::int64_t>& cells, std::uint32_t rows, std::uint32_t cols) {
  const auto n = static_cast<std::uint32_t>(std::accumulate(cells.begin(), cells.end(), std::int64_t{0}));
  Hypergraph h({n, rows, cols});
  std::uint32_t agent = 0;
  for (std::uint32_t b = 0; b < rows; ++b) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      for (std::int64_t k = 0; k < cells[b * cols + c]; ++k) h.insert({agent++, b, c});
    }
  }
  return h;
}

double log_sum_exp(const std::vector<double>& v) {
  double m = -INFINITY;
  for (double x : v) m = std::max(m, x);
  double s = 0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

TEST_CASE("aggregation index examples") {
  CHECK(chi2_statistic(ContingencyTable(2, 2, {1, 1, 1, 1})) == 0.0);
  CHECK(chi2_statistic(ContingencyTable(2, 2, {2, 0, 0, 2})) == doctest::Approx(4.0));
  CHECK(chi2_statistic(ContingencyTable(2, 2, {1, 1, 1, 0})) == doctest::Approx(0.75));
  // A zero row contributes nothing and is left out of df.
  const ContingencyTable padded(3, 2, {2, 0, 0, 0, 0, 2});
  CHECK(chi2_statistic(padded) == doctest::Approx(4.0));
  CHECK(degrees_of_freedom(padded) == 1);
  CHECK(degrees_of_freedom(ContingencyTable(1, 3, {1, 2, 3})) == 0);
  CHECK_THROWS_AS(chi2_statistic(ContingencyTable(2, 2, {0, 0, 0, 0})), EmptyHypergraph);
  CHECK_THROWS_AS(aggregation_index(Hypergraph({2, 2, 2})), EmptyHypergraph);
}

TEST_CASE("aggregation index agrees with an edge-list computation") {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 300; ++trial) {
    const ClassSizes s{3, 3, 3};
    Hypergraph h(s);
    for (std::uint64_t cell = 0; cell < s.cells(); ++cell) {
      if (gen() % 3 == 0) h.insert(h.unpack(cell));
    }
    if (h.empty()) continue;
    const double x = aggregation_index(h);
    CHECK(x >= 0.0);
    CHECK(x == doctest::Approx(aggregation_from_edges(h)).epsilon(1e-12));
    const ContingencyTable t = bc_table(h);
    CHECK(t.consistent());
    CHECK(t.total() == static_cast<std::int64_t>(h.edge_count()));
  }
}

TEST_CASE("contingency table bookkeeping") {
  ContingencyTable t(2, 3, {1, 0, 2, 0, 3, 1});
  CHECK(t.row_sums() == std::vector<std::int64_t>{3, 4});
  CHECK(t.col_sums() == std::vector<std::int64_t>{1, 3, 3});
  CHECK(t.total() == 7);
  t.add(1, 2, 2);
  CHECK(t.at(1, 2) == 3);
  CHECK(t.row_sums()[1] == 6);
  CHECK(t.consistent());
  CHECK_THROWS_AS(ContingencyTable(2, 2, {1, 2, 3}), DimensionMismatch);
  CHECK_THROWS(ContingencyTable(1, 1, {-1}));

  const std::vector<std::int64_t> rows{3, 1}, cols{2, 2};
  const ContingencyTable nw = northwest_table(rows, cols);
  CHECK(nw.cells() == std::vector<std::int64_t>{2, 1, 0, 1});
  const std::vector<std::int64_t> bad{5};
  CHECK_THROWS_AS(northwest_table(rows, bad), SumMismatch);
}

TEST_CASE("chi-square tail") {
  for (int df = 1; df <= 30; ++df) CHECK(chi2_sf(0.0, df) == 1.0);
  for (double x : {0.1, 1.0, 2 * std::log(20.0), 10.0, 50.0}) {
    CHECK(chi2_sf(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-12));
  }
  CHECK(chi2_sf(2 * std::log(20.0), 2) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(std::abs(chi2_sf(3.84146, 1) - 0.05) < 1e-4);
  // df = 1 is the two-sided normal tail.
  for (double x : {0.2, 0.75, 3.0, 12.0}) {
    CHECK(std::abs(chi2_sf(x, 1) - std::erfc(std::sqrt(x / 2))) < 1e-10);
  }
  CHECK_THROWS_AS(chi2_sf(1.0, 0), InputError);
}

TEST_CASE("incomplete gamma matches Boost") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> ua(0.5, 60), ux(0, 150);
  for (int i = 0; i < 2000; ++i) {
    const double a = std::round(ua(gen) * 2) / 2;  // half-integers, as chi-square uses
    const double x = ux(gen);
    CHECK(std::abs(gamma_q(a, x) - boost::math::gamma_q(a, x)) < 1e-10);
  }
}

TEST_CASE("chi-square tail is a decreasing probability") {
  for (int df = 1; df <= 40; df += 3) {
    double prev = 1.0;
    for (double x = 0; x < 200; x += 0.37) {
      const double p = chi2_sf(x, df);
      CHECK(p >= 0.0);
      CHECK(p <= prev + 1e-15);
      prev = p;
    }
  }
}

TEST_CASE("hypergeometric weights") {
  CHECK(hypergeometric_log_weight(ContingencyTable(1, 1, {5})) == doctest::Approx(0.0));
  CHECK(hypergeometric_log_weight(ContingencyTable(2, 2, {1, 0, 0, 1})) == doctest::Approx(-std::log(2.0)));
  CHECK(hypergeometric_log_weight(ContingencyTable(2, 2, {0, 1, 1, 0})) == doctest::Approx(-std::log(2.0)));
  const std::vector<std::vector<std::int64_t>> rows{{2, 1}, {3, 3}, {2, 2, 2}, {4, 1, 1}, {1, 1, 1, 1, 2}};
  const std::vector<std::vector<std::int64_t>> cols{{2, 1}, {4, 2}, {3, 3}, {2, 2, 2}, {3, 3}};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::vector<double> logs;
    const LogFactorial lf(20);
    for (const auto& cells : testsupport::enumerate_tables(rows[k], cols[k])) {
      const ContingencyTable t(rows[k].size(), cols[k].size(), cells);
      logs.push_back(hypergeometric_log_weight(t));
      CHECK(hypergeometric_log_weight(t, lf) == doctest::Approx(logs.back()).epsilon(1e-14));
    }
    CHECK(std::abs(log_sum_exp(logs)) < 1e-9);
  }
}

TEST_CASE("table sampler matches the hypergeometric distribution") {
  const std::vector<std::vector<std::int64_t>> rows{{1, 1}, {2, 1}, {2, 2}, {2, 1, 1}};
  const std::vector<std::vector<std::int64_t>> cols{{1, 1}, {2, 1}, {1, 3}, {2, 2}};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto tables = testsupport::enumerate_tables(rows[k], cols[k]);
    std::map<std::vector<std::int64_t>, double> expected, seen;
    for (const auto& cells : tables) {
      expected[cells] = std::exp(hypergeometric_log_weight(ContingencyTable(rows[k].size(), cols[k].size(), cells)));
    }
    TableSamplerConfig cfg;
    cfg.n_samples = 40000;
    cfg.thinning = 5;
    cfg.seed = 3 + k;
    const auto sample = sample_contingency_tables(rows[k], cols[k], cfg);
    REQUIRE(sample.size() == 40000);
    for (const ContingencyTable& t : sample) {
      CHECK(t.row_sums() == rows[k]);
      CHECK(t.col_sums() == cols[k]);
      seen[t.cells()] += 1.0 / 40000;
    }
    double tv = 0;
    for (const auto& [cells, p] : expected) tv += std::abs(p - seen[cells]);
    CHECK(seen.size() == expected.size());
    MESSAGE("margins " << k << " TV = " << tv / 2);
    CHECK(tv / 2 < 0.02);
  }
}

TEST_CASE("table sampler on degenerate margins and reproducibility") {
  const std::vector<std::int64_t> one{4}, two{1, 3};
  TableSamplerConfig cfg;
  cfg.n_samples = 5;
  const auto forced = sample_contingency_tables(one, two, cfg);
  REQUIRE(forced.size() == 5);
  for (const ContingencyTable& t : forced) CHECK(t.cells() == std::vector<std::int64_t>{1, 3});

  const std::vector<std::int64_t> r{3, 2, 2}, c{4, 3};
  cfg.n_samples = 50;
  cfg.seed = 8;
  CHECK(sample_contingency_tables(r, c, cfg) == sample_contingency_tables(r, c, cfg));
}

TEST_CASE("theoretical test") {
  // [[1,1],[1,1]]: no aggregation at all.
  const TestResult flat = test_theoretical(ones_hypergraph({1, 1, 1, 1}, 2, 2));
  CHECK(flat.statistic == 0.0);
  CHECK(flat.p_value == 1.0);
  CHECK(flat.df == 1);
  // [[2,0],[0,2]] has statistic 4 on one degree of freedom.
  const TestResult diag = test_theoretical(ones_hypergraph({2, 0, 0, 2}, 2, 2));
  CHECK(diag.statistic == doctest::Approx(4.0));
  CHECK(diag.p_value == doctest::Approx(std::erfc(std::sqrt(2.0))).epsilon(1e-10));
  CHECK(diag.p_value == doctest::Approx(chi2_sf(4.0, 1)));
  // Strong aggregation on a larger table.
  const TestResult strong = test_theoretical(ones_hypergraph({30, 0, 0, 0, 30, 0, 0, 0, 30}, 3, 3));
  CHECK(strong.p_value < 1e-20);
  CHECK_FALSE(strong.null_mean);
}

TEST_CASE("normal approximation and null summaries") {
  CHECK(normal_upper_p(0.0, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(normal_upper_p(1.96, 0.0, 1.0) == doctest::Approx(0.025).epsilon(1e-3));
  CHECK(normal_upper_p(3.0, 3.0, 0.0) == 1.0);
  CHECK(normal_upper_p(3.5, 3.0, 0.0) == 0.0);

  TestResult r;
  r.statistic = 2.0;
  r.null_sample = {1, 2, 3, 4};
  summarize_null(r);
  CHECK(*r.null_mean == doctest::Approx(2.5));
  CHECK(*r.null_sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(*r.empirical_p == doctest::Approx(0.75));
  CHECK(r.p_value == doctest::Approx(normal_upper_p(2.0, 2.5, std::sqrt(5.0 / 3.0))));

  TestResult constant;
  constant.statistic = 0.75;
  constant.null_sample = std::vector<double>(10, 0.75);
  summarize_null(constant);
  CHECK(*constant.null_sd == 0.0);
  CHECK(constant.p_value == 1.0);
  constant.statistic = 0.8;
  summarize_null(constant);
  CHECK(constant.p_value == 0.0);

  TestResult empty;
  CHECK_THROWS_AS(summarize_null(empty), InputError);
}

TEST_CASE("exact test") {
  // Perfect independence sits far below the null mean.
  const Hypergraph flat = ones_hypergraph({4, 4, 4, 4}, 2, 2);
  TableSamplerConfig cfg;
  cfg.n_samples = 2000;
  cfg.seed = 2;
  const TestResult r = test_exact(flat, cfg);
  CHECK(r.statistic == 0.0);
  CHECK(r.null_sample.size() == 2000);
  CHECK(r.p_value > 0.7);
  CHECK(*r.empirical_p == 1.0);

  // Margins (2,1)/(2,1): the null puts 2/3 on 0.75 and 1/3 on 3.
  const Hypergraph small = ones_hypergraph({1, 1, 1, 0}, 2, 2);
  cfg.n_samples = 30000;
  const TestResult s = test_exact(small, cfg);
  CHECK(s.statistic == doctest::Approx(0.75));
  CHECK(*s.null_mean == doctest::Approx(2.0 / 3.0 * 0.75 + 1.0 / 3.0 * 3.0).epsilon(0.02));
  CHECK(*s.empirical_p == 1.0);
}

TEST_CASE("hypergraph test on a unique realization") {
  // One agent; the (B,C) graph with degrees (2,1)/(2,1) is forced.
  Hypergraph h({1, 2, 2});
  h.insert({0, 0, 0}), h.insert({0, 0, 1}), h.insert({0, 1, 0});
  HypergraphTestConfig cfg;
  cfg.temperatures = {0.5, 1.0, 2.0};
  cfg.sampler.n_samples = 25;
  cfg.sampler.seed = 4;
  const TestResult r = test_hypergraph(h, cfg);
  CHECK(r.statistic == doctest::Approx(0.75));
  REQUIRE(r.null_sample.size() == 25);
  for (double x : r.null_sample) CHECK(x == doctest::Approx(0.75));
  CHECK(*r.null_sd == 0.0);
  CHECK(r.p_value == 1.0);

  // The same check through calibration instead of a fixed ladder.
  cfg.temperatures.clear();
  cfg.grid_size = 20;
  cfg.calibration_pilot_steps = 2000;
  CHECK(test_hypergraph(h, cfg).p_value == 1.0);

  cfg.temperatures = {0.5, 1.0};
  cfg.sampler.step_budget = 10;
  cfg.sampler.n_samples = 1000;
  cfg.start_from_observed = false;
  try {
    test_hypergraph(h, cfg);
    FAIL("expected a timeout");
  } catch (const SamplingTimeout& e) {
    CHECK(e.run.timed_out);
    CHECK(e.run.steps == 10);
    CHECK(e.run.samples.size() < 1000);
  }
}

TEST_CASE("result serialization") {
  TestResult r;
  r.method = TestMethod::kExact;
  r.statistic = 1.0 / 3.0;
  r.df = 2;
  r.null_sample = {0.5, 1.5};
  summarize_null(r);
  const std::string json = test_result_json(r);
  CHECK(json.find("\"method\": \"exact\"") != std::string::npos);
  CHECK(json.find("0.333333333333") != std::string::npos);
  CHECK(json.find("\"null_samples\": 2") != std::string::npos);
  CHECK(json.find("method") < json.find("statistic"));
  CHECK(null_sample_csv(r) == "statistic\n0.5\n1.5\n");
  CHECK(parse_method("hypergraph") == TestMethod::kHypergraph);
  CHECK(std::string(method_name(TestMethod::kTheoretical)) == "theoretical");
  CHECK_THROWS_AS(parse_method("fisher"), InputError);
}

TEST_CASE("two-sample KS statistic") {
  const std::vector<double> a{1, 2, 3, 4}, b{1, 2, 3, 4}, c{5, 6, 7};
  CHECK(ks_statistic(a, b) == 0.0);
  CHECK(ks_statistic(a, c) == 1.0);
  const std::vector<double> x{1, 2}, y{2, 3};
  CHECK(ks_statistic(x, y) == doctest::Approx(0.5));
  const std::vector<double> none;
  CHECK_THROWS_AS(ks_statistic(a, none), InputError);
}
