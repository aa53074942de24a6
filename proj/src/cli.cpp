#include "gps/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>

#include "CLI11.hpp"
#include "json.hpp"

#include "gps/estimate.hpp"
#include "gps/instream.hpp"
#include "gps/io.hpp"
#include "gps/metrics.hpp"
#include "gps/oracle.hpp"
#include "gps/reservoir.hpp"
#include "gps/stream.hpp"

namespace gps {

namespace {

struct RunConfig {
  std::string input;
  std::size_t m = 1000;
  std::string weight = "triangle";
  double tri_mult = 9.0;
  double tri_base = 1.0;
  std::string mode = "instream";
  std::uint64_t seed = 1;
  bool permute = true;
  bool relabel = false;
  std::uint64_t track_interval = 0;
  std::string track_output = "tracking.csv";
  std::string output;  // empty = stdout
  std::string snapshot_output;
  std::string format = "json";
  std::size_t trials = 100;
  std::string stat = "triangles";
  std::uint64_t oracle_cap = 2'000'000;
  std::optional<double> max_are;
  bool check_coverage = false;
  unsigned threads = 1;
};

WeightFunction weight_from(const RunConfig& cfg) {
  if (cfg.weight == "uniform") return WeightFunction::uniform();
  return WeightFunction::triangle(cfg.tri_mult, cfg.tri_base);
}

Mode mode_from(const RunConfig& cfg) {
  return cfg.mode == "post" ? Mode::post : Mode::instream;
}

// Maps arbitrary string labels to dense 1-based ids, then feeds the
// canonical integer parser.
StreamSource parse_relabeled(std::istream& in, const std::string& origin) {
  std::unordered_map<std::string, node_id> ids;
  std::ostringstream rewritten;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.front() == '#') continue;
    auto tokens = split_tokens(view);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected two labels",
                       line_no);
    }
    auto id_of = [&](std::string_view tok) {
      auto [it, fresh] =
          ids.emplace(std::string(tok), static_cast<node_id>(ids.size() + 1));
      (void)fresh;
      return it->second;
    };
    rewritten << id_of(tokens[0]) << ' ' << id_of(tokens[1]) << '\n';
  }
  return parse_edge_list_text(rewritten.str(), ParseOptions{}, origin);
}

StreamSource load_stream(const RunConfig& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw ParseError("cannot open " + cfg.input, 0);
  StreamSource s = cfg.relabel ? parse_relabeled(in, cfg.input)
                               : parse_edge_list(in, ParseOptions{}, cfg.input);
  if (cfg.permute) s = permute_stream(s, splitmix64(cfg.seed ^ 0x7065726dULL));
  return s;
}

nlohmann::json config_json(const RunConfig& cfg) {
  return nlohmann::json{{"input", cfg.input},
                        {"m", cfg.m},
                        {"weight_fn", cfg.weight},
                        {"tri_mult", cfg.tri_mult},
                        {"tri_base", cfg.tri_base},
                        {"mode", cfg.mode},
                        {"seed", cfg.seed},
                        {"permute", cfg.permute},
                        {"track_interval", cfg.track_interval}};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path, 0);
  out << text << '\n';
}

int cmd_estimate(const RunConfig& cfg) {
  StreamSource stream = load_stream(cfg);
  const WeightFunction wf = weight_from(cfg);
  const Mode mode = mode_from(cfg);
  Rng rng(splitmix64(cfg.seed));

  Reservoir res(cfg.m, mode);
  InstreamCounters counters;
  std::vector<TrackPoint> track;
  std::uint64_t t = 0;
  auto current_report = [&] {
    return mode == Mode::post ? estimate(res, cfg.threads)
                              : instream_report(counters);
  };
  for (const Edge& e : stream.edges) {
    if (mode == Mode::post) {
      res.update(e, wf, rng);
    } else {
      process_edge(res, counters, e, wf, rng);
    }
    ++t;
    if (cfg.track_interval > 0 && (t % cfg.track_interval == 0 ||
                                   t == stream.edges.size())) {
      track.push_back(
          make_track_point(t, current_report(), res.zstar(), res.size()));
    }
  }
  EstimateReport report = current_report();
  const double zstar = res.zstar();
  const std::size_t sample_size = res.size();

  if (!cfg.snapshot_output.empty()) {
    std::ofstream snap(cfg.snapshot_output);
    if (!snap) throw ParseError("cannot write " + cfg.snapshot_output, 0);
    snap << snapshot_json(res).dump(2) << '\n';
  }

  nlohmann::json out = report_json(report);
  out["format_version"] = kReportFormatVersion;
  out["config"] = config_json(cfg);
  out["meta"] = nlohmann::json{{"m", cfg.m},
                               {"zstar", zstar},
                               {"edges_processed", stream.edges.size()},
                               {"sample_size", sample_size},
                               {"seed", cfg.seed},
                               {"weight_fn", cfg.weight},
                               {"duplicates_dropped", stream.duplicates_dropped},
                               {"self_loops_dropped", stream.self_loops_dropped}};
  emit(cfg.output, out.dump(2));

  if (cfg.track_interval > 0) {
    std::ofstream tout(cfg.track_output);
    if (!tout) throw ParseError("cannot write " + cfg.track_output, 0);
    write_tracking_csv(track, tout);
  }
  return kExitOk;
}

int cmd_oracle(const RunConfig& cfg) {
  StreamSource stream = load_stream(cfg);
  ExactCounts counts = exact_counts(stream.edges);
  nlohmann::json out{{"triangles", counts.triangles},
                     {"wedges", counts.wedges}};
  out["alpha"] =
      counts.alpha ? nlohmann::json(*counts.alpha) : nlohmann::json(nullptr);
  emit(cfg.output, out.dump());
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  StreamSource stream = load_stream(cfg);
  if (stream.edges.size() > cfg.oracle_cap) {
    std::cerr << "verify: refusing exact oracle on " << stream.edges.size()
              << " edges (cap " << cfg.oracle_cap << "; raise --oracle-cap)\n";
    return kExitUsage;
  }
  TrialsOptions opt;
  opt.m = cfg.m;
  opt.wf = weight_from(cfg);
  opt.mode = mode_from(cfg);
  opt.trials = cfg.trials;
  opt.base_seed = cfg.seed;
  opt.stat = cfg.stat == "wedges" ? Stat::wedges : Stat::triangles;
  opt.threads = cfg.threads;
  TrialSummary summary = run_trials(stream, opt);

  bool ok = true;
  std::vector<std::string> notes;
  if (summary.truth == 0.0) {
    notes.push_back("truth is zero: ARE/unbiasedness checks skipped");
  } else if (summary.z_score) {
    if (std::abs(*summary.z_score) > 3.0) {
      ok = false;
      notes.push_back("unbiasedness check failed: |z| > 3");
    }
  }
  if (cfg.max_are && summary.truth > 0.0) {
    if (!summary.are || *summary.are > *cfg.max_are) {
      ok = false;
      notes.push_back("ARE check failed: exceeds --max-are");
    }
  }
  if (cfg.check_coverage &&
      (summary.ci_coverage < 0.90 || summary.ci_coverage > 0.98)) {
    ok = false;
    notes.push_back("coverage check failed: outside [0.90, 0.98]");
  }

  if (cfg.format == "csv") {
    std::ostringstream out;
    out << trial_summary_csv_header() << '\n'
        << trial_summary_csv_row(stream.origin, cfg.m, cfg.mode, cfg.weight,
                                 summary);
    emit(cfg.output, out.str());
  } else {
    nlohmann::json out = trial_summary_json(summary);
    out["format_version"] = kReportFormatVersion;
    out["config"] = config_json(cfg);
    out["config"]["trials"] = cfg.trials;
    out["config"]["stat"] = cfg.stat;
    out["checks_passed"] = ok;
    out["notes"] = notes;
    emit(cfg.output, out.dump(2));
  }
  for (const std::string& n : notes) std::cerr << "verify: " << n << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "edge list file (u v per line)")
      ->required();
  cmd->add_flag("--relabel", cfg.relabel,
                "map arbitrary string labels to dense integer ids");
  cmd->add_option("--output", cfg.output, "output path (default: stdout)");
}

void add_sampling(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--m", cfg.m, "reservoir capacity")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
  cmd->add_option("--weight", cfg.weight, "sampling weight function")
      ->check(CLI::IsMember({"uniform", "triangle"}));
  cmd->add_option("--tri-mult", cfg.tri_mult, "triangle weight multiplier");
  cmd->add_option("--tri-base", cfg.tri_base, "triangle weight base");
  cmd->add_option("--mode", cfg.mode, "estimation mode")
      ->check(CLI::IsMember({"post", "instream"}));
  cmd->add_option("--seed", cfg.seed, "base seed");
  cmd->add_flag("--permute,!--no-permute", cfg.permute,
                "randomly permute arrival order (default on)");
  cmd->add_option("--threads", cfg.threads, "threads for estimation/trials");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Priority-sampled edge reservoir with unbiased triangle, wedge and "
      "clustering estimation over graph streams"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* est = app.add_subcommand(
      "estimate", "stream a graph and report subgraph count estimates");
  add_common(est, cfg);
  add_sampling(est, cfg);
  est->add_option("--track-interval", cfg.track_interval,
                  "emit a tracking row every N arrivals (0 = off)");
  est->add_option("--track-output", cfg.track_output,
                  "tracking CSV path (default tracking.csv)");
  est->add_option("--snapshot-output", cfg.snapshot_output,
                  "write the final reservoir snapshot JSON here");
  est->add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json"}));

  CLI::App* orc =
      app.add_subcommand("oracle", "exact triangle/wedge/clustering counts");
  add_common(orc, cfg);

  CLI::App* ver = app.add_subcommand(
      "verify", "multi-trial unbiasedness and coverage verification");
  add_common(ver, cfg);
  add_sampling(ver, cfg);
  ver->add_option("--trials", cfg.trials, "number of independent trials")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}));
  ver->add_option("--stat", cfg.stat, "statistic under test")
      ->check(CLI::IsMember({"triangles", "wedges"}));
  ver->add_option("--max-are", cfg.max_are,
                  "fail when |mean - truth| / truth exceeds this");
  ver->add_flag("--check-coverage", cfg.check_coverage,
                "require 95% CI coverage within [0.90, 0.98]");
  ver->add_option("--oracle-cap", cfg.oracle_cap,
                  "refuse exact counting above this edge count");
  ver->add_option("--format", cfg.format, "summary format")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (est->parsed()) return cmd_estimate(cfg);
    if (orc->parsed()) return cmd_oracle(cfg);
    return cmd_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace gps
