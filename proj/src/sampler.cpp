#include "hypart/sampler.hpp"

#include <algorithm>
#include <barrier>
#include <cmath>
#include <sstream>
#include <thread>

#include "hypart/error.hpp"
#include "hypart/io.hpp"
#include "hypart/realize.hpp"

namespace hypart {

namespace {

// Caller guarantees validity (move_from_draw already checked it).
void apply_unchecked(Hypergraph& h, const Move& m) {
  const EdgePair gone = removed_edges(m);
  const EdgePair made = added_edges(m);
  for (int i = 0; i < gone.count; ++i) h.erase(gone.edge[i]);
  for (int i = 0; i < made.count; ++i) h.insert(made.edge[i]);
}

void check_temperatures(std::span<const double> temperatures) {
  if (temperatures.empty()) throw InputError("temperature ladder is empty");
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    if (!(temperatures[i] > 0.0)) throw InputError("temperatures must be positive");
    if (i > 0 && !(temperatures[i] > temperatures[i - 1])) {
      throw InputError("temperatures must be strictly increasing");
    }
  }
}

}  // namespace

const char* kind_name(ProposalKind kind) {
  switch (kind) {
    case ProposalKind::kSwitch:
      return "switch";
    case ProposalKind::kHingeFlip:
      return "hinge-flip";
    case ProposalKind::kToggle:
      return "toggle";
  }
  return "?";
}

std::optional<Move> move_from_draw(const Hypergraph& h, const ProposalDraw& draw) {
  std::optional<Move> m;
  switch (draw.kind) {
    case ProposalKind::kSwitch:
      if (draw.first_slot >= h.edge_count() || draw.second_slot >= h.edge_count()) return std::nullopt;
      m = Move::switch_edges(draw.cls, h.edge(draw.first_slot), h.edge(draw.second_slot));
      break;
    case ProposalKind::kHingeFlip:
      if (draw.first_slot >= h.edge_count()) return std::nullopt;
      m = Move::hinge_flip(draw.cls, h.edge(draw.first_slot), draw.replacement);
      break;
    case ProposalKind::kToggle: {
      if (draw.cell >= h.sizes().cells()) return std::nullopt;
      const Triple t = h.unpack(draw.cell);
      m = h.contains(t) ? Move::toggle_out(t) : Move::toggle_in(t);
      break;
    }
  }
  if (!is_valid(h, *m)) return std::nullopt;
  return m;
}

Proposal propose(const Hypergraph& h, Rng& rng) {
  ProposalDraw draw;
  draw.kind = static_cast<ProposalKind>(rng.below(3));
  const std::size_t edges = h.edge_count();
  switch (draw.kind) {
    case ProposalKind::kSwitch:
      if (edges == 0) return {draw.kind, std::nullopt};
      draw.first_slot = rng.below(edges);
      draw.second_slot = rng.below(edges);
      draw.cls = static_cast<VertexClass>(rng.below(3));
      break;
    case ProposalKind::kHingeFlip: {
      if (edges == 0) return {draw.kind, std::nullopt};
      draw.first_slot = rng.below(edges);
      draw.cls = static_cast<VertexClass>(rng.below(3));
      const std::uint32_t n = h.sizes()[draw.cls];
      if (n < 2) return {draw.kind, std::nullopt};
      const std::uint32_t current = h.edge(draw.first_slot)[draw.cls];
      do {
        draw.replacement = static_cast<std::uint32_t>(rng.below(n));
      } while (draw.replacement == current);
      break;
    }
    case ProposalKind::kToggle:
      if (h.sizes().cells() == 0) return {draw.kind, std::nullopt};
      draw.cell = rng.below(h.sizes().cells());
      break;
  }
  return {draw.kind, move_from_draw(h, draw)};
}

double acceptance_probability(std::int64_t delta, double temperature) {
  if (delta <= 0) return 1.0;
  return std::exp(-static_cast<double>(delta) / temperature);
}

double swap_acceptance_probability(std::int64_t energy_cold, std::int64_t energy_warm, double t_cold,
                                   double t_warm) {
  const double log_ratio =
      static_cast<double>(energy_cold - energy_warm) * (1.0 / t_cold - 1.0 / t_warm);
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

bool mh_step(ChainState& state, const PartiteDegreeSequence& d, ChainDiagnostics* diag) {
  const Proposal p = propose(state.current, state.rng);
  KindCounts scratch;
  KindCounts& counts = diag ? diag->kinds[static_cast<std::size_t>(p.kind)] : scratch;
  ++counts.proposed;
  if (!p.move) return false;
  ++counts.valid;
  const std::int64_t delta = energy_delta(state.current, d, *p.move);
  if (delta > 0 && !(state.rng.uniform() <= acceptance_probability(delta, state.temperature))) {
    return false;
  }
  apply_unchecked(state.current, *p.move);
  state.energy += delta;
  ++counts.accepted;
  return true;
}

ParallelTempering::ParallelTempering(PartiteDegreeSequence d, std::vector<double> temperatures,
                                     std::uint64_t seed, std::optional<Hypergraph> initial)
    : d_(std::move(d)), schedule_(derive_seed(seed, 0)) {
  check_temperatures(temperatures);
  Hypergraph start = initial ? std::move(*initial) : Hypergraph(d_.sizes());
  const std::int64_t e0 = energy(start, d_);
  chains_.reserve(temperatures.size());
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    chains_.push_back({temperatures[i], start, e0, Rng(derive_seed(seed, i + 1))});
    diag_.chains.push_back({temperatures[i], {}});
  }
  diag_.swaps.resize(temperatures.size() - 1);
}

bool ParallelTempering::attempt_swap(std::size_t i) {
  ChainState& cold = chains_[i];
  ChainState& warm = chains_[i + 1];
  ++diag_.swaps[i].attempts;
  const double p = swap_acceptance_probability(cold.energy, warm.energy, cold.temperature, warm.temperature);
  if (p < 1.0 && !(schedule_.uniform() <= p)) return false;
  std::swap(cold.current, warm.current);
  std::swap(cold.energy, warm.energy);
  ++diag_.swaps[i].accepted;
  return true;
}

int ParallelTempering::step() {
  if (schedule_.below(2) == 0) {
    const std::size_t i = schedule_.below(chains_.size());
    mh_step(chains_[i], d_, &diag_.chains[i]);
    return static_cast<int>(i);
  }
  if (chains_.size() >= 2) attempt_swap(schedule_.below(chains_.size() - 1));
  return -1;
}

void ParallelTempering::run_synchronized(std::size_t rounds, std::size_t steps_per_round,
                                         unsigned threads) {
  const std::size_t k = chains_.size();
  auto swap_phase = [this, k]() noexcept {
    for (std::size_t i = rounds_ % 2; i + 1 < k; i += 2) attempt_swap(i);
    ++rounds_;
  };
  auto advance = [&](std::size_t chain) {
    for (std::size_t s = 0; s < steps_per_round; ++s) mh_step(chains_[chain], d_, &diag_.chains[chain]);
  };
  const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(k));
  if (workers == 1) {
    for (std::size_t r = 0; r < rounds; ++r) {
      for (std::size_t c = 0; c < k; ++c) advance(c);
      swap_phase();
    }
    return;
  }
  std::barrier sync(static_cast<std::ptrdiff_t>(workers), swap_phase);
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t c = w; c < k; c += workers) advance(c);
        sync.arrive_and_wait();
      }
    });
  }
}

void ParallelTempering::record_energies(std::uint64_t step) {
  for (std::size_t i = 0; i < chains_.size(); ++i) diag_.trace.push_back({step, i, chains_[i].energy});
}

std::string moves_csv(const Diagnostics& diag) {
  std::ostringstream out;
  out << "temperature,kind,proposed,valid,accepted\n";
  for (const ChainDiagnostics& c : diag.chains) {
    for (std::size_t k = 0; k < 3; ++k) {
      const KindCounts& n = c.kinds[k];
      out << format_real(c.temperature) << ',' << kind_name(static_cast<ProposalKind>(k)) << ','
          << n.proposed << ',' << n.valid << ',' << n.accepted << '\n';
    }
  }
  return out.str();
}

std::string swaps_csv(const Diagnostics& diag) {
  std::ostringstream out;
  out << "pair_index,attempts,accepted\n";
  for (std::size_t i = 0; i < diag.swaps.size(); ++i) {
    out << i << ',' << diag.swaps[i].attempts << ',' << diag.swaps[i].accepted << '\n';
  }
  return out.str();
}

std::string energy_csv(const Diagnostics& diag) {
  std::ostringstream out;
  out << "step,chain_index,energy\n";
  for (const EnergySample& e : diag.trace) out << e.step << ',' << e.chain << ',' << e.energy << '\n';
  return out.str();
}

Hypergraph greedy_fill(const PartiteDegreeSequence& d) {
  const ClassSizes s = d.sizes();
  Hypergraph h(s);
  for (std::uint32_t a = 0; a < s.n1; ++a) {
    for (std::uint32_t b = 0; b < s.n2 && h.degree(VertexClass::A, a) < d.a[a]; ++b) {
      if (h.degree(VertexClass::B, b) >= d.b[b]) continue;
      for (std::uint32_t c = 0; c < s.n3; ++c) {
        if (h.degree(VertexClass::A, a) >= d.a[a] || h.degree(VertexClass::B, b) >= d.b[b]) break;
        if (h.degree(VertexClass::C, c) < d.c[c]) h.insert({a, b, c});
      }
    }
  }
  return h;
}

SampleRun sample_realizations(const PartiteDegreeSequence& d, std::span<const double> temperatures,
                              const SamplerConfig& config) {
  check_temperatures(temperatures);
  if (config.n_samples == 0) throw InputError("n_samples must be at least 1");
  if (validate(d) == DegreeValidity::kNegativeEntry) throw InputError("negative degree");

  SampleRun run;
  const auto edges = static_cast<std::uint64_t>(std::max<std::int64_t>(d.sum(VertexClass::A), 1));
  run.thinning = config.thinning ? config.thinning : 2 * edges * temperatures.size();
  run.burn_in = config.burn_in.value_or(10 * run.thinning);

  std::optional<Hypergraph> initial;
  if (config.start) {
    initial = *config.start;
  } else if (config.initial == InitialState::kRealize) {
    RealizeResult r = realize_any_class(d);
    initial = r.hypergraph ? std::move(*r.hypergraph) : greedy_fill(d);
  } else if (config.initial == InitialState::kGreedy) {
    initial = greedy_fill(d);
  }
  ParallelTempering pt(d, std::vector<double>(temperatures.begin(), temperatures.end()), config.seed,
                       std::move(initial));

  std::uint64_t since_last = 0, observed = 0, zero = 0;
  while (run.samples.size() < config.n_samples) {
    if (run.steps >= config.step_budget) {
      run.timed_out = true;
      break;
    }
    pt.step();
    ++run.steps;
    if (config.trace_every && run.steps % config.trace_every == 0) pt.record_energies(run.steps);
    if (run.steps <= run.burn_in) continue;
    ++observed;
    ++since_last;
    if (pt.chain(0).energy != 0) continue;
    ++zero;
    if (since_last >= run.thinning) {
      run.samples.push_back(pt.chain(0).current);
      since_last = 0;
    }
  }
  run.zero_energy_fraction = observed ? static_cast<double>(zero) / observed : 0.0;
  run.diagnostics = pt.diagnostics();
  return run;
}

std::vector<double> autocorrelation(std::span<const double> trace, std::size_t max_lag) {
  const std::size_t n = trace.size();
  if (n <= max_lag) throw InputError("trace must be longer than max_lag");
  double mean = 0.0;
  for (double x : trace) mean += x;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : trace) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n);
  std::vector<double> out(max_lag + 1, 0.0);
  out[0] = 1.0;
  if (var == 0.0) return out;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) acc += (trace[t] - mean) * (trace[t + k] - mean);
    out[k] = acc / static_cast<double>(n - k) / var;
  }
  return out;
}

std::int64_t max_energy_bound(ClassSizes sizes, std::int64_t edges) {
  return 3 * static_cast<std::int64_t>(sizes.cells()) - 3 * edges;
}

double infinite_temperature_energy(const PartiteDegreeSequence& d) {
  const ClassSizes s = d.sizes();
  const std::array<double, 3> caps = {double(s.n2) * s.n3, double(s.n1) * s.n3, double(s.n1) * s.n2};
  double total = 0.0;
  for (VertexClass cls : kAllClasses) {
    for (std::int64_t x : d.of(cls)) total += std::abs(static_cast<double>(x) - caps[index_of(cls)] / 2.0);
  }
  return total;
}

}  // namespace hypart
