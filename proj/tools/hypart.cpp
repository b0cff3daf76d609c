// hypart: realize, calibrate, sample and test partite 3-uniform hypergraphs.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypart/calibration.hpp"
#include "hypart/dataset.hpp"
#include "hypart/error.hpp"
#include "hypart/io.hpp"
#include "hypart/oracle.hpp"
#include "hypart/realize.hpp"
#include "hypart/sampler.hpp"
#include "hypart/stats.hpp"

namespace fs = std::filesystem;
using namespace hypart;

namespace {

enum Exit : int {
  kOk = 0,
  kNonGraphic = 1,
  kNotAlmostRegular = 2,
  kTimedOut = 3,
  kNoLadder = 4,
  kUsage = 64,
  kBadInput = 65,
  kIo = 66,
};

struct Input {
  PartiteDegreeSequence degrees;
  std::optional<Hypergraph> hypergraph;  // present for triplet data
};

Input load_input(const std::string& path, const IngestOptions& opts) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  Input in;
  if (fs::path(path).extension() == ".json" || (first != std::string::npos && text[first] == '{')) {
    in.degrees = parse_degree_sequence(text);
    return in;
  }
  TripletDataset data = ingest_text(text, opts);
  for (const SkippedRow& row : data.skipped) {
    std::cerr << path << ":" << row.line << ": skipped (" << row.reason << ")\n";
  }
  in.degrees = data.hypergraph.degree_sequence();
  in.hypergraph = std::move(data.hypergraph);
  return in;
}

void add_ingest_options(CLI::App* cmd, IngestOptions& opts) {
  cmd->add_option("--agent-col", opts.agent_col, "Column holding the agent (class A)");
  cmd->add_option("--event-col", opts.event_col, "Column holding the event type (class B)");
  cmd->add_option("--time-col", opts.time_col, "Column holding the time value (class C)");
  cmd->add_option("--time-bucket", opts.time_bucket, "none | day | hour | month | year | prefix:N | %Y-%m-%d");
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HYPART_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("HYPART_SEED is not an unsigned integer");
    }
  }
  return 1;
}

InitialState parse_initial(const std::string& s) {
  if (s == "empty") return InitialState::kEmpty;
  if (s == "realize") return InitialState::kRealize;
  if (s == "greedy") return InitialState::kGreedy;
  throw InputError("unknown initial state '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partite 3-uniform hypergraph degree sequences: realization, sampling and aggregation tests"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hypart 1.0");

  IngestOptions ingest_opts;
  std::uint64_t seed = 1;
  int exit_code = kOk;

  // realize
  std::string realize_in, realize_out;
  auto* realize = app.add_subcommand("realize", "Construct a realization of a third almost-regular degree sequence");
  realize->add_option("degseq", realize_in, "Degree sequence JSON {\"A\":[..],\"B\":[..],\"C\":[..]}")->required();
  realize->add_option("-o,--output", realize_out, "Edge-list output (default stdout)");
  realize->callback([&] {
    const PartiteDegreeSequence d = read_degree_sequence_file(realize_in);
    if (validate(d) == DegreeValidity::kNegativeEntry) throw InputError("negative degree");
    const RealizeResult r = realize_any_class(d);
    switch (r.status) {
      case RealizeStatus::kRealized:
        write_or_print(realize_out, edge_list_string(*r.hypergraph));
        break;
      case RealizeStatus::kNonGraphic:
        std::cout << "NON-GRAPHIC\n";
        exit_code = kNonGraphic;
        break;
      case RealizeStatus::kNotAlmostRegular:
        std::cout << "NOT-ALMOST-REGULAR\n";
        exit_code = kNotAlmostRegular;
        break;
    }
  });

  // calibrate
  std::string cal_in, cal_ladder_out = "ladder.json", cal_quartiles_out = "quartiles.csv", cal_config;
  CalibrationConfig cal;
  auto* calib = app.add_subcommand("calibrate", "Build a temperature ladder from pilot runs");
  calib->add_option("input", cal_in, "Triplet data, edge list or degree sequence JSON")->required();
  calib->add_option("--config", cal_config, "Run config JSON (seed, t_min, t_max, grid_size, pilot_steps)");
  auto* o_tmin = calib->add_option("--t-min", cal.t_min, "Coldest temperature");
  auto* o_tmax = calib->add_option("--t-max", cal.t_max, "Warmest temperature");
  auto* o_grid = calib->add_option("--grid", cal.grid_size, "Number of log-spaced grid temperatures");
  auto* o_pilot = calib->add_option("--pilot-steps", cal.pilot_steps, "MH steps per pilot chain (0: automatic)");
  auto* o_cal_seed = calib->add_option("--seed", seed, "Master seed");
  calib->add_option("--threads", cal.threads, "Worker threads for the pilot chains");
  calib->add_flag("--strict", cal.strict, "Fail instead of forcing a rung when quartiles stop overlapping");
  calib->add_option("--ladder-out", cal_ladder_out, "Ladder JSON output");
  calib->add_option("--quartiles-out", cal_quartiles_out, "Per-grid-point quartile CSV output");
  add_ingest_options(calib, ingest_opts);
  calib->callback([&] {
    if (!cal_config.empty()) {
      const RunConfig rc = parse_run_config(read_text_file(cal_config));
      if (!o_tmin->count()) cal.t_min = rc.t_min;
      if (!o_tmax->count()) cal.t_max = rc.t_max;
      if (!o_grid->count()) cal.grid_size = rc.grid_size;
      if (!o_pilot->count()) cal.pilot_steps = rc.pilot_steps;
      if (!o_cal_seed->count()) seed = rc.seed;
    } else if (!o_cal_seed->count()) {
      seed = default_seed();
    }
    cal.seed = seed;
    const Input in = load_input(cal_in, ingest_opts);
    const TemperatureLadder ladder = calibrate(in.degrees, cal);
    write_or_print(cal_ladder_out, ladder_json(ladder));
    write_text_file(cal_quartiles_out, quartiles_csv(ladder));
    std::cerr << ladder.temperatures.size() << " temperatures";
    if (ladder.forced_steps) std::cerr << " (" << ladder.forced_steps << " forced)";
    std::cerr << "\n";
  });

  // sample
  std::string sample_in, sample_ladder, sample_dir = "samples", sample_config, sample_initial = "empty";
  SamplerConfig sc;
  std::uint64_t burn_in = 0;
  auto* sample = app.add_subcommand("sample", "Sample realizations with parallel tempering");
  sample->add_option("input", sample_in, "Triplet data, edge list or degree sequence JSON")->required();
  sample->add_option("--ladder", sample_ladder, "Ladder JSON from `calibrate`")->required();
  sample->add_option("--config", sample_config, "Run config JSON (seed, n_samples, thinning, step_budget)");
  auto* o_n = sample->add_option("-n,--n", sc.n_samples, "Number of samples");
  auto* o_thin = sample->add_option("--thinning", sc.thinning, "PT steps between samples (0: 2*|E|*chains)");
  auto* o_burn = sample->add_option("--burn-in", burn_in, "PT steps before the first sample (default 10*thinning)");
  auto* o_budget = sample->add_option("--budget", sc.step_budget, "Maximum number of PT steps");
  auto* o_sample_seed = sample->add_option("--seed", seed, "Master seed");
  sample->add_option("--trace-every", sc.trace_every, "Record chain energies every N PT steps (0: off)");
  sample->add_option("--initial", sample_initial, "Initial state: empty | realize | greedy");
  sample->add_option("--out-dir", sample_dir, "Directory for samples and diagnostics");
  add_ingest_options(sample, ingest_opts);
  sample->callback([&] {
    if (!sample_config.empty()) {
      const RunConfig rc = parse_run_config(read_text_file(sample_config));
      if (!o_n->count()) sc.n_samples = rc.n_samples;
      if (!o_thin->count()) sc.thinning = rc.thinning;
      if (!o_budget->count()) sc.step_budget = rc.step_budget;
      if (!o_sample_seed->count()) seed = rc.seed;
    } else if (!o_sample_seed->count()) {
      seed = default_seed();
    }
    sc.seed = seed;
    if (o_burn->count()) sc.burn_in = burn_in;
    sc.initial = parse_initial(sample_initial);
    const Input in = load_input(sample_in, ingest_opts);
    const TemperatureLadder ladder = parse_ladder(read_text_file(sample_ladder));
    const SampleRun run = sample_realizations(in.degrees, ladder.temperatures, sc);

    std::error_code ec;
    fs::create_directories(sample_dir, ec);
    if (ec) throw IoError("cannot create " + sample_dir + ": " + ec.message());
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "sample_%05zu.txt", i);
      write_text_file(fs::path(sample_dir) / name, edge_list_string(run.samples[i]));
    }
    write_text_file(fs::path(sample_dir) / "moves.csv", moves_csv(run.diagnostics));
    write_text_file(fs::path(sample_dir) / "swaps.csv", swaps_csv(run.diagnostics));
    write_text_file(fs::path(sample_dir) / "energy.csv", energy_csv(run.diagnostics));
    nlohmann::ordered_json summary;
    summary["samples"] = run.samples.size();
    summary["steps"] = run.steps;
    summary["thinning"] = run.thinning;
    summary["burn_in"] = run.burn_in;
    summary["zero_energy_fraction"] = round_real(run.zero_energy_fraction);
    summary["max_energy_bound"] = max_energy_bound(in.degrees.sizes(), in.degrees.sum(VertexClass::A));
    summary["timed_out"] = run.timed_out;
    const std::string text = summary.dump(2) + "\n";
    write_text_file(fs::path(sample_dir) / "summary.json", text);
    std::cout << text;
    if (run.timed_out) {
      std::cerr << "timeout: step budget exhausted with " << run.samples.size() << " of " << sc.n_samples
                << " samples\n";
      exit_code = kTimedOut;
    }
  });

  // test
  std::string test_in, test_method = "theoretical", test_ladder, test_out, test_null_csv;
  std::size_t test_n = 1000;
  std::uint64_t test_thinning = 0, test_budget = std::numeric_limits<std::uint64_t>::max();
  auto* test = app.add_subcommand("test", "Chi-square aggregation test on triplet data");
  test->add_option("data", test_in, "Triplet data or edge list")->required();
  test->add_option("--method", test_method, "theoretical | exact | hypergraph")
      ->check(CLI::IsMember({"theoretical", "exact", "hypergraph"}));
  test->add_option("--n-samples", test_n, "Null sample size");
  auto* o_test_seed = test->add_option("--seed", seed, "Master seed");
  test->add_option("--ladder", test_ladder, "Ladder JSON (hypergraph method; calibrated when absent)");
  test->add_option("--thinning", test_thinning, "Steps between null samples (0: automatic)");
  test->add_option("--budget", test_budget, "Maximum PT steps (hypergraph method)");
  test->add_option("-o,--output", test_out, "TestResult JSON output (default stdout)");
  test->add_option("--null-csv", test_null_csv, "Write the null sample as CSV");
  add_ingest_options(test, ingest_opts);
  test->callback([&] {
    if (!o_test_seed->count()) seed = default_seed();
    const Input in = load_input(test_in, ingest_opts);
    if (!in.hypergraph) throw InputError("`test` needs triplet data or an edge list, not a degree sequence");
    TestResult r;
    switch (parse_method(test_method)) {
      case TestMethod::kTheoretical:
        r = test_theoretical(*in.hypergraph);
        break;
      case TestMethod::kExact: {
        TableSamplerConfig tc;
        tc.n_samples = test_n;
        tc.thinning = test_thinning;
        tc.seed = seed;
        r = test_exact(*in.hypergraph, tc);
        break;
      }
      case TestMethod::kHypergraph: {
        HypergraphTestConfig hc;
        if (!test_ladder.empty()) hc.temperatures = parse_ladder(read_text_file(test_ladder)).temperatures;
        hc.sampler.seed = seed;
        hc.sampler.n_samples = test_n;
        hc.sampler.thinning = test_thinning;
        hc.sampler.step_budget = test_budget;
        r = test_hypergraph(*in.hypergraph, hc);
        break;
      }
    }
    write_or_print(test_out, test_result_json(r));
    if (!test_null_csv.empty()) write_text_file(test_null_csv, null_sample_csv(r));
  });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force answers for small instances");
  oracle_cmd->require_subcommand(1);
  std::string enum_in;
  bool enum_list = false;
  auto* o_enum = oracle_cmd->add_subcommand("enum", "Count all realizations (at most 30 cells)");
  o_enum->add_option("degseq", enum_in, "Degree sequence JSON")->required();
  o_enum->add_flag("--list", enum_list, "Also print every realization as an edge list");
  o_enum->callback([&] {
    const PartiteDegreeSequence d = read_degree_sequence_file(enum_in);
    const auto all = oracle::enumerate_realizations(d);
    std::cout << all.size() << " realizations\n";
    if (enum_list) {
      for (const Hypergraph& h : all) std::cout << "\n" << edge_list_string(h);
    }
  });
  std::string conn_in;
  auto* o_conn = oracle_cmd->add_subcommand("connectivity", "Components of the switch graph on all realizations");
  o_conn->add_option("degseq", conn_in, "Degree sequence JSON")->required();
  o_conn->callback([&] {
    const PartiteDegreeSequence d = read_degree_sequence_file(conn_in);
    const auto masks = oracle::enumerate_realization_masks(d);
    std::cout << masks.size() << " realizations, " << oracle::switch_components(d.sizes(), masks)
              << " components\n";
  });
  std::string n3dm_in;
  auto* o_n3dm = oracle_cmd->add_subcommand("n3dm", "Solve a numerical 3-dimensional matching instance and reduce it");
  o_n3dm->add_option("instance", n3dm_in, "Instance JSON {\"k\":..,\"a\":[..],\"b\":..}")->required();
  o_n3dm->callback([&] {
    const oracle::N3dmInstance inst = oracle::parse_n3dm(read_text_file(n3dm_in));
    std::cout << "solvable: " << (oracle::solve_n3dm(inst) ? "yes" : "no") << "\n";
    const PartiteDegreeSequence d = oracle::reduce_n3dm(inst);
    std::cout << "reduced: " << degree_sequence_json(d);
    if (d.sizes().cells() <= oracle::kMaxCells) {
      std::cout << "graphic: " << (oracle::enumerate_realization_masks(d).empty() ? "no" : "yes") << "\n";
    } else {
      std::cout << "graphic: unknown (beyond enumeration cap)\n";
    }
  });

  // ingest
  std::string ingest_in, ingest_out;
  auto* ingest_cmd = app.add_subcommand("ingest", "Convert triplet data to an edge list");
  ingest_cmd->add_option("data", ingest_in, "Comma-separated data with a header row, or an edge list")->required();
  ingest_cmd->add_option("-o,--output", ingest_out, "Edge-list output (default stdout)");
  add_ingest_options(ingest_cmd, ingest_opts);
  ingest_cmd->callback([&] {
    const TripletDataset data = ingest(ingest_in, ingest_opts);
    for (const SkippedRow& row : data.skipped) {
      std::cerr << ingest_in << ":" << row.line << ": skipped (" << row.reason << ")\n";
    }
    write_or_print(ingest_out, edge_list_string(data.hypergraph));
    std::cerr << ingest_summary_json(data);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const EmptyLadder& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoLadder;
  } catch (const Timeout& e) {
    std::cerr << "timeout: " << e.what() << "\n";
    return kTimedOut;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return exit_code;
}
