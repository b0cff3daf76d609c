#include "hypart/calibration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hypart/error.hpp"
#include "hypart/io.hpp"
#include "hypart/move.hpp"
#include "hypart/sampler.hpp"

namespace hypart {

using ordered_json = nlohmann::ordered_json;

std::vector<double> log_grid(double t_min, double t_max, std::size_t n) {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw InputError("need 0 < t_min < t_max");
  if (n < 2) throw InputError("grid needs at least 2 points");
  std::vector<double> grid(n);
  const double lo = std::log(t_min), hi = std::log(t_max);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = round_real(std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  grid.front() = round_real(t_min);
  grid.back() = round_real(t_max);
  return grid;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> isotonic_increasing(std::span<const double> values) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      blocks[blocks.size() - 2].sum += blocks.back().sum;
      blocks[blocks.size() - 2].count += blocks.back().count;
      blocks.pop_back();
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& b : blocks) out.insert(out.end(), b.count, b.mean());
  return out;
}

TemperatureLadder staircase(std::vector<GridPoint> grid, bool strict) {
  if (grid.empty()) throw EmptyLadder("empty temperature grid");
  TemperatureLadder ladder;
  std::size_t r = 0;
  grid[0].in_ladder = true;
  while (r + 1 < grid.size()) {
    std::size_t next = r;
    for (std::size_t m = r + 1; m < grid.size(); ++m) {
      if (grid[m].q25_smoothed <= grid[r].q75_smoothed) next = m;
    }
    if (next == r) {
      if (strict) {
        throw EmptyLadder("quartiles do not overlap between " + format_real(grid[r].temperature) + " and " +
                          format_real(grid[r + 1].temperature) + "; refine the grid or lengthen pilots");
      }
      next = r + 1;
      ++ladder.forced_steps;
    }
    grid[next].in_ladder = true;
    r = next;
  }
  for (const GridPoint& g : grid) {
    if (!g.in_ladder) continue;
    ladder.temperatures.push_back(g.temperature);
    ladder.q25.push_back(g.q25_smoothed);
    ladder.q75.push_back(g.q75_smoothed);
  }
  ladder.grid = std::move(grid);
  return ladder;
}

TemperatureLadder calibrate(const PartiteDegreeSequence& d, const CalibrationConfig& config) {
  const std::vector<double> temps = log_grid(config.t_min, config.t_max, config.grid_size);
  const ClassSizes sizes = d.sizes();
  const Hypergraph empty(sizes);
  const std::int64_t e0 = energy(empty, d);
  const std::uint64_t steps =
      config.pilot_steps ? config.pilot_steps
                         : std::max<std::uint64_t>(20000, 50 * (sizes.cells() + static_cast<std::uint64_t>(
                                                                                    std::max<std::int64_t>(0, d.sum(VertexClass::A)))));
  const std::uint64_t burn = steps / 2;

  std::vector<GridPoint> grid(temps.size());
  auto pilot = [&](std::size_t i) {
    ChainState chain{temps[i], empty, e0, Rng(derive_seed(config.seed, i + 1))};
    std::vector<double> energies;
    energies.reserve(steps - burn);
    for (std::uint64_t s = 0; s < steps; ++s) {
      mh_step(chain, d);
      if (s >= burn) energies.push_back(static_cast<double>(chain.energy));
    }
    if (energies.empty()) energies.push_back(static_cast<double>(chain.energy));
    std::sort(energies.begin(), energies.end());
    grid[i].temperature = temps[i];
    grid[i].q25 = quantile_sorted(energies, 0.25);
    grid[i].q75 = quantile_sorted(energies, 0.75);
  };

  const unsigned workers = std::clamp<unsigned>(config.threads, 1u, static_cast<unsigned>(temps.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < temps.size(); ++i) pilot(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < temps.size(); i = next++) pilot(i);
      });
    }
  }

  std::vector<double> q25(grid.size()), q75(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) q25[i] = grid[i].q25, q75[i] = grid[i].q75;
  q25 = isotonic_increasing(q25);
  q75 = isotonic_increasing(q75);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i].q25_smoothed = round_real(q25[i]);
    grid[i].q75_smoothed = round_real(q75[i]);
    grid[i].q25 = round_real(grid[i].q25);
    grid[i].q75 = round_real(grid[i].q75);
  }
  return staircase(std::move(grid), config.strict);
}

std::string ladder_json(const TemperatureLadder& ladder) {
  ordered_json j;
  j["temperatures"] = ladder.temperatures;
  j["q25"] = ladder.q25;
  j["q75"] = ladder.q75;
  j["forced_steps"] = ladder.forced_steps;
  return j.dump(2) + "\n";
}

TemperatureLadder parse_ladder(const std::string& json_text) {
  TemperatureLadder ladder;
  try {
    const auto j = nlohmann::json::parse(json_text);
    ladder.temperatures = j.at("temperatures").get<std::vector<double>>();
    if (j.contains("q25")) ladder.q25 = j.at("q25").get<std::vector<double>>();
    if (j.contains("q75")) ladder.q75 = j.at("q75").get<std::vector<double>>();
    if (j.contains("forced_steps")) ladder.forced_steps = j.at("forced_steps").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("ladder JSON: ") + e.what());
  }
  if (ladder.temperatures.empty()) throw InputError("ladder JSON: no temperatures");
  for (std::size_t i = 0; i < ladder.temperatures.size(); ++i) {
    if (!(ladder.temperatures[i] > 0.0) || (i > 0 && !(ladder.temperatures[i] > ladder.temperatures[i - 1]))) {
      throw InputError("ladder JSON: temperatures must be positive and strictly increasing");
    }
  }
  return ladder;
}

std::string quartiles_csv(const TemperatureLadder& ladder) {
  std::ostringstream out;
  out << "temperature,q25,q75,q25_smoothed,q75_smoothed,in_ladder\n";
  for (const GridPoint& g : ladder.grid) {
    out << format_real(g.temperature) << ',' << format_real(g.q25) << ',' << format_real(g.q75) << ','
        << format_real(g.q25_smoothed) << ',' << format_real(g.q75_smoothed) << ',' << (g.in_ladder ? 1 : 0)
        << '\n';
  }
  return out.str();
}

std::string run_config_json(const RunConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["t_min"] = round_real(c.t_min);
  j["t_max"] = round_real(c.t_max);
  j["grid_size"] = c.grid_size;
  j["pilot_steps"] = c.pilot_steps;
  j["n_samples"] = c.n_samples;
  j["thinning"] = c.thinning;
  j["step_budget"] = c.step_budget;
  return j.dump(2) + "\n";
}

RunConfig parse_run_config(const std::string& json_text) {
  RunConfig c;
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw InputError("run config JSON must be an object");
    c.seed = j.value("seed", c.seed);
    c.t_min = j.value("t_min", c.t_min);
    c.t_max = j.value("t_max", c.t_max);
    c.grid_size = j.value("grid_size", c.grid_size);
    c.pilot_steps = j.value("pilot_steps", c.pilot_steps);
    c.n_samples = j.value("n_samples", c.n_samples);
    c.thinning = j.value("thinning", c.thinning);
    c.step_budget = j.value("step_budget", c.step_budget);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("run config JSON: ") + e.what());
  }
  return c;
}

}  // namespace hypart
