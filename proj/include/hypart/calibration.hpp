#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hypart/hypergraph.hpp"

namespace hypart {

struct CalibrationConfig {
  double t_min = 0.1;
  double t_max = 100.0;
  std::size_t grid_size = 100;
  /// MH steps per pilot chain; the first half is discarded. 0 selects
  /// max(20000, 50 * (cells + |E|)).
  std::uint64_t pilot_steps = 0;
  std::uint64_t seed = 1;
  /// Throw EmptyLadder instead of forcing a step when the staircase stalls.
  bool strict = false;
  unsigned threads = 1;
};

/// Pilot statistics at one grid temperature.
struct GridPoint {
  double temperature = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double q25_smoothed = 0.0;
  double q75_smoothed = 0.0;
  bool in_ladder = false;
};

struct TemperatureLadder {
  std::vector<double> temperatures;  // strictly increasing, coldest first
  std::vector<double> q25;           // smoothed quartiles at each rung
  std::vector<double> q75;
  /// Rungs added only because no grid point kept the quartile overlap.
  std::size_t forced_steps = 0;
  std::vector<GridPoint> grid;
};

/// n log-spaced points from t_min to t_max inclusive (n >= 2).
std::vector<double> log_grid(double t_min, double t_max, std::size_t n);

/// Linear-interpolation quantile (type 7) of an ascending sample.
double quantile_sorted(std::span<const double> sorted, double p);

/// Least-squares non-decreasing fit (pool adjacent violators, equal weights).
std::vector<double> isotonic_increasing(std::span<const double> values);

/// Staircase selection over a grid with smoothed quartiles: starts at index 0,
/// then repeatedly moves to the warmest grid point whose q25 does not exceed
/// the current rung's q75, ending at the last grid point. When the next grid
/// point already breaks the overlap it is taken anyway and counted in
/// forced_steps (or EmptyLadder is thrown when strict).
TemperatureLadder staircase(std::vector<GridPoint> grid, bool strict);

/// Runs one pilot MH chain from the empty hypergraph per grid temperature and
/// builds the staircase ladder from the smoothed energy quartiles.
TemperatureLadder calibrate(const PartiteDegreeSequence& d, const CalibrationConfig& config);

std::string ladder_json(const TemperatureLadder& ladder);
TemperatureLadder parse_ladder(const std::string& json_text);
/// temperature,q25,q75,q25_smoothed,q75_smoothed,in_ladder
std::string quartiles_csv(const TemperatureLadder& ladder);

/// Sampler run configuration as read from or written to JSON.
struct RunConfig {
  std::uint64_t seed = 1;
  double t_min = 0.1;
  double t_max = 100.0;
  std::size_t grid_size = 100;
  std::uint64_t pilot_steps = 0;
  std::size_t n_samples = 100;
  std::uint64_t thinning = 0;
  std::uint64_t step_budget = std::numeric_limits<std::uint64_t>::max();
};

std::string run_config_json(const RunConfig& config);
RunConfig parse_run_config(const std::string& json_text);

}  // namespace hypart
