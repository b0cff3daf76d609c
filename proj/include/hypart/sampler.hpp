#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypart/hypergraph.hpp"
#include "hypart/move.hpp"
#include "hypart/rng.hpp"

namespace hypart {

enum class ProposalKind : std::uint8_t { kSwitch = 0, kHingeFlip = 1, kToggle = 2 };

const char* kind_name(ProposalKind kind);

/// The random choices behind one proposal. Slots index Hypergraph::edges().
struct ProposalDraw {
  ProposalKind kind = ProposalKind::kToggle;
  std::size_t first_slot = 0;
  std::size_t second_slot = 0;
  VertexClass cls = VertexClass::A;
  std::uint32_t replacement = 0;
  std::uint64_t cell = 0;
};

/// The move a draw denotes on h, or nullopt when the draw is invalid
/// (empty edge set, identical or degenerate switch, occupied target).
std::optional<Move> move_from_draw(const Hypergraph& h, const ProposalDraw& draw);

struct Proposal {
  ProposalKind kind = ProposalKind::kToggle;
  std::optional<Move> move;
};

/// Switch, hinge flip or toggle with probability 1/3 each.
Proposal propose(const Hypergraph& h, Rng& rng);

/// min(1, exp(-delta / T)).
double acceptance_probability(std::int64_t delta, double temperature);

/// min(1, exp((E_cold - E_warm) * (1/T_cold - 1/T_warm))), evaluated in log space.
double swap_acceptance_probability(std::int64_t energy_cold, std::int64_t energy_warm,
                                   double t_cold, double t_warm);

struct KindCounts {
  std::uint64_t proposed = 0;
  std::uint64_t valid = 0;
  std::uint64_t accepted = 0;
};

struct ChainDiagnostics {
  double temperature = 0.0;
  std::array<KindCounts, 3> kinds{};

  std::uint64_t invalid(ProposalKind k) const {
    const auto& c = kinds[static_cast<std::size_t>(k)];
    return c.proposed - c.valid;
  }
};

struct SwapCounts {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  double rate() const { return attempts ? static_cast<double>(accepted) / attempts : 0.0; }
};

struct EnergySample {
  std::uint64_t step = 0;
  std::size_t chain = 0;
  std::int64_t energy = 0;
};

struct Diagnostics {
  std::vector<ChainDiagnostics> chains;  // one per temperature, coldest first
  std::vector<SwapCounts> swaps;         // pair i is (chain i, chain i+1)
  std::vector<EnergySample> trace;
};

// CSV views of the diagnostics.
std::string moves_csv(const Diagnostics& diag);   // temperature,kind,proposed,valid,accepted
std::string swaps_csv(const Diagnostics& diag);   // pair_index,attempts,accepted
std::string energy_csv(const Diagnostics& diag);  // step,chain_index,energy

/// One Metropolis-Hastings chain at a fixed temperature. `energy` always
/// equals energy(current, d) for the degree sequence the chain is run against.
struct ChainState {
  double temperature = 1.0;
  Hypergraph current;
  std::int64_t energy = 0;
  Rng rng;
};

/// One MH step: propose, then accept with probability min(1, exp(-dE/T)).
/// Invalid proposals leave the state unchanged. Returns true if a move was applied.
bool mh_step(ChainState& state, const PartiteDegreeSequence& d, ChainDiagnostics* diag = nullptr);

/// Replica-exchange ensemble over strictly increasing temperatures.
class ParallelTempering {
 public:
  /// Every chain starts from `initial` (the empty hypergraph when absent).
  /// Chain i draws from the stream derive_seed(seed, i + 1); the swap
  /// schedule uses derive_seed(seed, 0).
  ParallelTempering(PartiteDegreeSequence d, std::vector<double> temperatures, std::uint64_t seed,
                    std::optional<Hypergraph> initial = std::nullopt);

  /// One step of the sequential process: with probability 1/2 an MH step on
  /// a uniformly chosen chain, otherwise a swap attempt on a uniformly chosen
  /// adjacent pair. Returns the index of the chain that moved, or -1 for a swap.
  int step();

  /// Attempts the swap of chains (i, i+1). Returns true if accepted.
  bool attempt_swap(std::size_t i);

  /// Synchronous schedule: in each round every chain takes `steps_per_round`
  /// MH steps independently (chains distributed over `threads` workers), then
  /// at the barrier swaps are attempted on alternating even/odd adjacent pairs.
  /// Results do not depend on the number of threads.
  void run_synchronized(std::size_t rounds, std::size_t steps_per_round, unsigned threads);

  /// Records every chain's energy into the diagnostics trace.
  void record_energies(std::uint64_t step);

  const PartiteDegreeSequence& degrees() const { return d_; }
  std::size_t size() const { return chains_.size(); }
  const ChainState& chain(std::size_t i) const { return chains_[i]; }
  ChainState& chain(std::size_t i) { return chains_[i]; }
  const Diagnostics& diagnostics() const { return diag_; }
  std::uint64_t rounds_completed() const { return rounds_; }

 private:
  PartiteDegreeSequence d_;
  std::vector<ChainState> chains_;
  Rng schedule_;
  Diagnostics diag_;
  std::uint64_t rounds_ = 0;
};

enum class InitialState { kEmpty, kRealize, kGreedy };

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::size_t n_samples = 100;
  /// PT steps between emissions; 0 selects 2 * |E| * (number of chains), so
  /// the coldest chain takes about |E| moves between samples.
  std::uint64_t thinning = 0;
  /// PT steps before the first emission may happen; nullopt selects 10 * thinning.
  std::optional<std::uint64_t> burn_in;
  std::uint64_t step_budget = std::numeric_limits<std::uint64_t>::max();
  /// Record all chain energies every this many PT steps (0 disables).
  std::uint64_t trace_every = 0;
  InitialState initial = InitialState::kEmpty;
  /// When set, every chain starts here and `initial` is ignored.
  std::optional<Hypergraph> start;
};

struct SampleRun {
  std::vector<Hypergraph> samples;
  Diagnostics diagnostics;
  /// Fraction of post-burn-in PT steps at which the coldest chain had energy 0.
  double zero_energy_fraction = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t thinning = 0;
  std::uint64_t burn_in = 0;
  bool timed_out = false;
};

/// Greedy lexicographic fill respecting every target degree; a warm start.
Hypergraph greedy_fill(const PartiteDegreeSequence& d);

/// Runs the sequential PT process and emits a copy of the coldest state each
/// time it has energy 0 and at least `thinning` PT steps have passed since the
/// previous emission (or since the end of burn-in). Stops after n_samples or
/// when the step budget is exhausted (timed_out).
SampleRun sample_realizations(const PartiteDegreeSequence& d, std::span<const double> temperatures,
                              const SamplerConfig& config);

/// Normalized sample autocorrelation for lags 0..max_lag:
/// r_k = [sum_{t<n-k} (x_t - m)(x_{t+k} - m) / (n-k)] / [sum_t (x_t - m)^2 / n].
/// A constant trace yields 1 at lag 0 and 0 elsewhere.
std::vector<double> autocorrelation(std::span<const double> trace, std::size_t max_lag);

/// 3 * n1*n2*n3 - 3 * edges: largest energy gap between states when every
/// prescribed degree is at most half of its maximum.
std::int64_t max_energy_bound(ClassSizes sizes, std::int64_t edges);

/// Sum over vertices of |d(v) - maxdeg(v)/2|; a rough infinite-temperature
/// energy level used for reporting.
double infinite_temperature_energy(const PartiteDegreeSequence& d);

}  // namespace hypart
