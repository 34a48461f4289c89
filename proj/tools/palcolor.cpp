// palcolor: command-line front end.
//
//   palcolor color    --input FILE [--format F] [--complement] [palette flags] --out c.json --stats-out s.json
//   palcolor generate --kind random-pauli|gnp --n N [--qubits Q | --p P] --seed S --out FILE
//   palcolor sweep    --input FILE --grid-p ... --grid-a ... --seeds 0,1,2 --out sweep.csv
//   palcolor predict  --train sweep.csv --beta B --n N --m M
//   palcolor baseline --input FILE --ordering LF --out c.json
//   palcolor validate COLORING.json --input FILE [--mode exhaustive|sampled]
//
// Exit codes: 0 ok, 1 improper coloring (validate), 2 input error,
// 3 iteration limit, 4 edge budget exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "palcolor/palcolor.hpp"

namespace {

using namespace palcolor;

constexpr int kExitOk = 0;
constexpr int kExitImproper = 1;
constexpr int kExitInput = 2;
constexpr int kExitIterationLimit = 3;
constexpr int kExitBudget = 4;

struct InputFlags {
  std::string path;
  std::string format = "auto";
  bool complement = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", path, "Pauli text, edge list, MatrixMarket or PCSR file")->required();
    cmd->add_option("--format", format, "pauli, edgelist, mtx, csr or auto (by extension)")
        ->check(CLI::IsMember({"auto", "pauli", "edgelist", "mtx", "csr"}))
        ->capture_default_str();
    cmd->add_flag("--complement", complement, "Color the complement of an explicit graph");
  }
};

struct LoadedInput {
  EdgeOracleView view;
  std::shared_ptr<const PauliSet> pauli;
};

std::string resolve_format(const InputFlags& f) {
  if (f.format != "auto") return f.format;
  auto ends_with = [&](std::string_view ext) {
    return f.path.size() >= ext.size() && f.path.compare(f.path.size() - ext.size(), ext.size(), ext) == 0;
  };
  if (ends_with(".pauli")) return "pauli";
  if (ends_with(".mtx")) return "mtx";
  if (ends_with(".pcsr") || ends_with(".csr")) return "csr";
  return "edgelist";
}

LoadedInput load_input(const InputFlags& f) {
  const std::string format = resolve_format(f);
  std::ifstream in(f.path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot open " + f.path);
  LoadedInput out;
  if (format == "pauli") {
    if (f.complement) throw Error(Errc::bad_params, "--complement does not apply to Pauli input (always the commutation complement)");
    out.pauli = std::make_shared<const PauliSet>(parse_pauli_text(in));
    out.view = EdgeOracleView::complement_of(out.pauli);
    return out;
  }
  ExplicitGraph g;
  if (format == "csr") {
    g = read_csr_binary(in);
  } else {
    ExplicitGraph::BuildReport rep;
    g = load_edge_list(in, format == "mtx" ? GraphFormat::matrix_market : GraphFormat::edge_list, &rep);
    if (rep.self_loops_dropped || rep.duplicates_merged)
      std::cerr << "note: dropped " << rep.self_loops_dropped << " self-loops, merged " << rep.duplicates_merged
                << " duplicate edges\n";
  }
  out.view = EdgeOracleView::of(std::make_shared<const ExplicitGraph>(std::move(g)), f.complement);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::iteration_limit_exceeded: return kExitIterationLimit;
    case Errc::out_of_memory_budget: return kExitBudget;
    default: return kExitInput;
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (double v : parse_grid(text)) {
    if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v)))
      throw Error(Errc::bad_params, "seeds must be non-negative integers");
    seeds.push_back(static_cast<std::uint64_t>(v));
  }
  return seeds;
}

// --------------------------------------------------------------------------

struct ColorCmd {
  InputFlags input;
  double palette_pct = 12.5;
  double alpha = 2.0;
  std::string preset;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 64;
  std::string strategy = "dynamic";
  unsigned threads = 0;
  std::uint64_t edge_budget = 0;
  std::string build_mode = "two-phase";
  std::string out, stats_out, partition_out, conflict_dump;
  bool no_timing = false;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("color", "Color a graph with the palette algorithm");
    input.attach(cmd);
    cmd->add_option("--palette-pct", palette_pct, "Palette size, percent of active vertices")->capture_default_str();
    cmd->add_option("--alpha", alpha, "List size coefficient")->capture_default_str();
    cmd->add_option("--preset", preset, "normal (12.5, 2) or aggressive (3, 30); overrides the two above")
        ->check(CLI::IsMember({"normal", "aggressive"}));
    cmd->add_option("--seed", seed)->capture_default_str();
    cmd->add_option("--max-iterations", max_iterations)->capture_default_str();
    cmd->add_option("--conflict-strategy", strategy, "dynamic, natural, ldf, sdl or random")
        ->check(CLI::IsMember({"dynamic", "natural", "ldf", "sdl", "random"}))
        ->capture_default_str();
    cmd->add_option("--threads", threads, "0 = PALCOLOR_THREADS or all cores")->capture_default_str();
    cmd->add_option("--edge-budget", edge_budget, "Max conflict edges per iteration, 0 = unlimited");
    cmd->add_option("--build-mode", build_mode)->check(CLI::IsMember({"two-phase", "buffered"}))->capture_default_str();
    cmd->add_option("--out", out, "Coloring JSON ('-' for stdout)");
    cmd->add_option("--stats-out", stats_out, "Per-iteration statistics JSON");
    cmd->add_option("--partition-out", partition_out, "Color classes as blank-line separated groups");
    cmd->add_option("--conflict-dump", conflict_dump, "Debug: conflict edges of every iteration");
    cmd->add_flag("--no-timing", no_timing, "Leave wall-clock fields out of the JSON");
    cmd->callback([this] { code = execute(); });
  }

  int code = kExitOk;

  int execute() {
    const auto in = load_input(input);
    PaletteParams params{palette_pct, alpha, seed, max_iterations};
    if (preset == "normal") params = PaletteParams::normal(seed);
    if (preset == "aggressive") params = PaletteParams::aggressive(seed);
    params.max_iterations = max_iterations;

    RunOptions opts;
    opts.strategy = parse_conflict_strategy(strategy);
    opts.build.threads = resolve_threads(threads);
    if (edge_budget > 0) opts.build.edge_budget = edge_budget;
    opts.build.mode = build_mode == "buffered" ? ConflictBuildMode::buffered : ConflictBuildMode::two_phase;

    const auto result = run(in.view, params, opts);
    const auto stats = degree_stats(in.view);

    write_text(out, dump(coloring_json(result)));
    StatsContext ctx;
    ctx.params = params;
    ctx.strategy = strategy;
    ctx.edges = stats.edges;
    ctx.edges_estimated = stats.sampled;
    ctx.timing = !no_timing;
    write_text(stats_out, dump(stats_json(result, ctx)));
    if (!partition_out.empty()) {
      std::ostringstream text;
      write_partition(text, partition_export(result.color, in.view.active()), in.pauli.get());
      write_text(partition_out, text.str());
    }
    if (!conflict_dump.empty()) dump_conflicts(in.view, params, opts);

    std::fprintf(stderr, "%s: n=%zu colors=%zu iterations=%zu peak|Ec|=%zu (%.2f%% of m) status=%s\n",
                 input.path.c_str(), in.view.size(), result.colors_used, result.iterations.size(),
                 result.peak_conflict_edges,
                 stats.edges > 0 ? 100.0 * static_cast<double>(result.peak_conflict_edges) / stats.edges : 0.0,
                 std::string(to_string(result.status)).c_str());
    if (!result.complete()) {
      std::cerr << "error: " << to_string(Errc::iteration_limit_exceeded) << ": " << result.diagnostics << '\n';
      return kExitIterationLimit;
    }
    return kExitOk;
  }

  // Replays the run iteration by iteration to print each conflict graph.
  void dump_conflicts(const EdgeOracleView& input_view, const PaletteParams& params, const RunOptions& opts) const {
    const auto result = run(input_view, params, opts);
    std::ostringstream text;
    EdgeOracleView view = input_view;
    for (const auto& rec : result.iterations) {
      const IterationPlan plan{rec.iteration, rec.palette_size, rec.palette_base, rec.list_size};
      const auto lists = assign_random_lists(plan, view.active(), params.seed, opts.build.threads);
      text << "# iteration " << rec.iteration << '\n';
      write_conflict_edges(text, build_conflict_graph(view, lists, opts.build));
      std::vector<vertex_t> left;
      for (vertex_t v : view.active())
        if (result.colored_in[v] == 0 || result.colored_in[v] > rec.iteration) left.push_back(v);
      view = view.induce(left);
    }
    write_text(conflict_dump, text.str());
  }
};

struct GenerateCmd {
  std::string kind = "random-pauli";
  std::size_t n = 100;
  std::size_t qubits = 8;
  double p = 0.5;
  std::uint64_t seed = 0;
  bool keep_identity = false;
  std::string format = "edgelist";
  std::string out = "-";
  int code = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("generate", "Write a synthetic instance");
    cmd->add_option("--kind", kind)->check(CLI::IsMember({"random-pauli", "gnp"}))->capture_default_str();
    cmd->add_option("--n", n, "Number of strings or vertices")->capture_default_str();
    cmd->add_option("--qubits", qubits, "String length (random-pauli)")->capture_default_str();
    cmd->add_option("--p", p, "Edge probability (gnp)")->capture_default_str();
    cmd->add_option("--seed", seed)->capture_default_str();
    cmd->add_flag("--keep-identity", keep_identity, "Allow the all-identity string");
    cmd->add_option("--format", format, "Graph output: edgelist, mtx or csr")
        ->check(CLI::IsMember({"edgelist", "mtx", "csr"}))
        ->capture_default_str();
    cmd->add_option("--out", out)->capture_default_str();
    cmd->callback([this] { code = execute(); });
  }

  int execute() const {
    std::ostringstream text;
    if (kind == "random-pauli") {
      text << "# random Pauli strings: n=" << n << " qubits=" << qubits << " seed=" << seed << '\n';
      for (const auto& s : random_pauli_strings(n, qubits, seed, !keep_identity)) text << s.str() << '\n';
    } else {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::bad_params, "--p must be in [0, 1]");
      const auto g = gnp_graph(n, p, seed);
      if (format == "mtx")
        write_matrix_market(text, g);
      else if (format == "csr")
        write_csr_binary(text, g);
      else
        write_edge_list(text, g);
    }
    write_text(out, text.str());
    return kExitOk;
  }
};

struct SweepCmd {
  InputFlags input;
  std::string grid_p = "1,2.5,5,7.5,10,12.5,15,17.5,20";
  std::string grid_a = "0.5..4.5";
  std::string seeds = "0";
  std::string instance;
  std::string strategy = "dynamic";
  std::size_t max_iterations = 64;
  unsigned threads = 0;
  std::string out = "-";
  bool append = false;
  int code = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep", "Run every (palette, alpha) cell and write CSV records");
    input.attach(cmd);
    cmd->add_option("--grid-p", grid_p, "Palette percentages: list or lo..hi[:step]")->capture_default_str();
    cmd->add_option("--grid-a", grid_a, "Alpha values: list or lo..hi[:step]")->capture_default_str();
    cmd->add_option("--seeds", seeds, "Seed list, e.g. 0,1,2 or 0..4:1")->capture_default_str();
    cmd->add_option("--instance", instance, "Instance name in the CSV (default: input path)");
    cmd->add_option("--conflict-strategy", strategy)
        ->check(CLI::IsMember({"dynamic", "natural", "ldf", "sdl", "random"}))
        ->capture_default_str();
    cmd->add_option("--max-iterations", max_iterations)->capture_default_str();
    cmd->add_option("--threads", threads, "Concurrent cells")->capture_default_str();
    cmd->add_option("--out", out)->capture_default_str();
    cmd->add_flag("--append", append, "Append to --out without a header");
    cmd->callback([this] { code = execute(); });
  }

  int execute() const {
    const auto in = load_input(input);
    SweepOptions opts;
    opts.instance = instance.empty() ? input.path : instance;
    opts.threads = resolve_threads(threads);
    opts.run.strategy = parse_conflict_strategy(strategy);
    opts.max_iterations = max_iterations;
    const auto gp = parse_grid(grid_p);
    const auto ga = parse_grid(grid_a);
    const auto sd = parse_seeds(seeds);
    const auto res = sweep(in.view, gp, ga, sd, opts);
    std::ostringstream text;
    write_sweep_csv(text, res.records, !append);
    if (append && out != "-") {
      std::ofstream f(out, std::ios::app);
      f << text.str();
    } else {
      write_text(out, text.str());
    }
    for (const auto& f : res.failures)
      std::cerr << "cell palette=" << f.palette_pct << " alpha=" << f.alpha << " seed=" << f.seed
                << " failed: " << f.message << '\n';
    std::cerr << res.records.size() << " records, " << res.failures.size() << " failed cells\n";
    return kExitOk;
  }
};

struct PredictCmd {
  std::vector<std::string> train;
  std::string model_in, model_out;
  std::string betas = "0.1..0.9:0.1";
  std::optional<double> beta;
  double n = 0, m = 0;
  std::size_t k = KnnPredictor::kDefaultK;
  int code = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("predict", "Train the parameter predictor and query it");
    cmd->add_option("--train", train, "Sweep CSV files");
    cmd->add_option("--model", model_in, "Load a saved model instead of training");
    cmd->add_option("--model-out", model_out, "Save the trained model");
    cmd->add_option("--betas", betas, "Training beta grid")->capture_default_str();
    cmd->add_option("--k", k, "Neighbors")->capture_default_str();
    cmd->add_option("--beta", beta, "Quality weight in [0, 1]");
    cmd->add_option("--n", n, "Vertices of the new instance");
    cmd->add_option("--m", m, "Edges of the new instance");
    cmd->callback([this] { code = execute(); });
  }

  int execute() const {
    KnnPredictor model;
    if (!model_in.empty()) {
      std::ifstream in(model_in);
      if (!in) throw Error(Errc::parse_error, "cannot open " + model_in);
      model = KnnPredictor::load(in);
    } else {
      std::vector<SweepRecord> records;
      for (const auto& path : train) {
        std::ifstream in(path);
        if (!in) throw Error(Errc::parse_error, "cannot open " + path);
        auto more = read_sweep_csv(in);
        records.insert(records.end(), more.begin(), more.end());
      }
      if (records.empty()) throw Error(Errc::empty_records, "no training records (use --train or --model)");
      std::vector<double> gp, ga;
      for (const auto& r : records) {
        gp.push_back(r.palette_pct);
        ga.push_back(r.alpha);
      }
      model = KnnPredictor::train(training_points(records, parse_grid(betas)), k, gp, ga);
    }
    if (!model_out.empty()) {
      std::ostringstream text;
      model.save(text);
      write_text(model_out, text.str());
    }
    if (beta) {
      if (!(*beta >= 0.0 && *beta <= 1.0)) throw Error(Errc::bad_params, "--beta must be in [0, 1]");
      const auto [p, a] = model.predict(*beta, n, m);
      Json j{{"format_version", kFormatVersion}, {"beta", *beta}, {"n", n}, {"m", m}, {"palette_pct", p}, {"alpha", a}};
      std::cout << j.dump() << '\n';
    }
    return kExitOk;
  }
};

struct BaselineCmd {
  InputFlags input;
  std::string ordering = "LF";
  std::string out, stats_out;
  bool no_timing = false;
  int code = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("baseline", "Sequential greedy coloring of the full graph");
    input.attach(cmd);
    cmd->add_option("--ordering", ordering, "LF, SL, DLF, ID or NAT")
        ->check(CLI::IsMember({"LF", "SL", "DLF", "ID", "NAT"}))
        ->capture_default_str();
    cmd->add_option("--out", out, "Coloring JSON");
    cmd->add_option("--stats-out", stats_out, "Statistics JSON");
    cmd->add_flag("--no-timing", no_timing);
    cmd->callback([this] { code = execute(); });
  }

  int execute() const {
    const auto in = load_input(input);
    const auto g = greedy_color(in.view, parse_ordering(ordering));
    const auto result = to_coloring_result(g);
    const std::string algorithm = "greedy-" + ordering;
    write_text(out, dump(coloring_json(result, algorithm)));
    StatsContext ctx;
    ctx.algorithm = algorithm;
    ctx.strategy = "none";
    ctx.edges = static_cast<double>(g.stored_adjacency_entries / 2);
    ctx.timing = !no_timing;
    write_text(stats_out, dump(stats_json(result, ctx)));
    std::fprintf(stderr, "%s: n=%zu colors=%zu ordering=%s stored adjacency=%zu\n", input.path.c_str(),
                 in.view.size(), g.colors_used, ordering.c_str(), g.stored_adjacency_entries);
    return kExitOk;
  }
};

struct ValidateCmd {
  InputFlags input;
  std::string coloring;
  std::string stats;
  std::string mode = "exhaustive";
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out = "-";
  int code = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("validate", "Check a coloring and report its metrics");
    cmd->add_option("coloring", coloring, "Coloring JSON")->required();
    input.attach(cmd);
    cmd->add_option("--stats", stats, "Stats JSON of the run, for conflict-edge metrics");
    cmd->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sampled"}))->capture_default_str();
    cmd->add_option("--samples", samples, "Pairs checked in sampled mode")->capture_default_str();
    cmd->add_option("--seed", seed)->capture_default_str();
    cmd->add_option("--threads", threads)->capture_default_str();
    cmd->add_option("--out", out, "Report JSON")->capture_default_str();
    cmd->callback([this] { code = execute(); });
  }

  int execute() const {
    const auto in = load_input(input);
    std::ifstream cf(coloring);
    if (!cf) throw Error(Errc::parse_error, "cannot open " + coloring);
    const auto colors = read_coloring_json(cf);

    std::size_t peak = 0;
    std::vector<IterationRecord> iterations;
    if (!stats.empty()) {
      std::ifstream sf(stats);
      if (!sf) throw Error(Errc::parse_error, "cannot open " + stats);
      try {
        const auto doc = Json::parse(sf);
        peak = doc.at("totals").at("peak_conflict_edges").get<std::size_t>();
        for (const auto& it : doc.at("iterations")) {
          IterationRecord r;
          r.iteration = it.at("iteration").get<std::size_t>();
          r.active = it.at("active").get<std::size_t>();
          r.palette_size = it.at("palette_size").get<std::size_t>();
          r.palette_base = it.at("palette_base").get<std::uint64_t>();
          r.list_size = it.at("list_size").get<std::size_t>();
          r.conflict_vertices = it.at("conflict_vertices").get<std::size_t>();
          r.conflict_edges = it.at("conflict_edges").get<std::size_t>();
          r.colored_unconflicted = it.at("colored_unconflicted").get<std::size_t>();
          r.colored_in_conflict = it.at("colored_in_conflict").get<std::size_t>();
          r.uncolored = it.at("uncolored").get<std::size_t>();
          r.stalled = it.at("stalled").get<bool>();
          r.tracked_entries = it.at("tracked_entries").get<std::size_t>();
          iterations.push_back(r);
        }
      } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, std::string("stats JSON: ") + e.what());
      }
    }

    ValidateOptions opts;
    opts.mode = mode == "sampled" ? ValidationMode::sampled : ValidationMode::exhaustive;
    opts.sample_pairs = samples;
    opts.seed = seed;
    opts.threads = resolve_threads(threads);
    auto rep = validate(in.view, colors, opts, peak);
    rep.iterations = std::move(iterations);
    write_text(out, dump(report_json(rep)));
    std::fprintf(stderr, "%s: proper=%s violations=%zu colors=%zu (%.2f%% of n)\n", coloring.c_str(),
                 rep.proper ? "true" : "false", rep.violation_count, rep.colors_used, rep.color_pct);
    return rep.proper ? kExitOk : kExitImproper;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Palette-based graph coloring and Pauli string grouping"};
  app.require_subcommand(1);
  ColorCmd color;
  GenerateCmd generate;
  SweepCmd sweep_cmd;
  PredictCmd predict;
  BaselineCmd baseline;
  ValidateCmd validate_cmd;
  color.attach(app);
  generate.attach(app);
  sweep_cmd.attach(app);
  predict.attach(app);
  baseline.attach(app);
  validate_cmd.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  for (int rc : {color.code, generate.code, sweep_cmd.code, predict.code, baseline.code, validate_cmd.code})
    if (rc != kExitOk) return rc;
  return kExitOk;
}
