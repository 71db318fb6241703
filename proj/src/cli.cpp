#include "trajsampler/cli.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trajsampler/bench.hpp"
#include "trajsampler/config.hpp"
#include "trajsampler/error.hpp"
#include "trajsampler/io.hpp"
#include "trajsampler/samplers.hpp"

namespace trajsampler {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct SampleArgs {
  std::string generator = "cv_gauss";
  std::string sampler = "mc";
  std::size_t n = 20;
  std::size_t warmup = 0;  // 0 = default ceil(n/2)
  double beta = 0.5;
  std::size_t pool = 512;
  int dim = 0;  // 0 = generator default
  std::uint64_t seed = 0;
  double speed = 1.2;        // m/s
  double heading_deg = 0.0;  // direction of travel
};

Scene walker_scene(double speed, double heading_deg) {
  const double h = heading_deg * std::numbers::pi / 180.0;
  const Point2 v{speed * std::cos(h), speed * std::sin(h)};
  Scene scene;
  Agent agent;
  for (int t = 0; t < kObsLen; ++t) agent.observed.points.push_back((t * kFrameDt) * v);
  scene.agents.push_back(std::move(agent));
  return scene;
}

GeneratorSpec generator_from_args(const std::string& name, int dim) {
  GeneratorSpec spec;
  spec.kind = generator_kind_from_string(name);
  if (dim > 0) spec.latent_dim = dim;
  spec.validate();
  return spec;
}

SamplerConfig sampler_from_args(const SampleArgs& a, const std::string& kind) {
  SamplerConfig cfg;
  cfg.kind = sampler_kind_from_string(kind);
  cfg.n = a.n;
  if (a.warmup > 0) cfg.warmup = a.warmup;
  cfg.acquisition.beta = a.beta;
  cfg.acquisition.pool_size = a.pool;
  cfg.seed = a.seed;
  cfg.validate();
  return cfg;
}

void add_sampling_options(CLI::App* cmd, SampleArgs& a) {
  cmd->add_option("--generator", a.generator, "cv_gauss | turn_mixture | endpoint_cond")->capture_default_str();
  cmd->add_option("--n", a.n, "samples per session")->capture_default_str();
  cmd->add_option("--warmup", a.warmup, "warm-up samples (default ceil(n/2))");
  cmd->add_option("--beta", a.beta, "UCB exploration weight")->capture_default_str();
  cmd->add_option("--pool", a.pool, "acquisition candidate pool size")->capture_default_str();
  cmd->add_option("--dim", a.dim, "latent dimension (default per generator)");
  cmd->add_option("--seed", a.seed, "random seed")->capture_default_str();
  cmd->add_option("--speed", a.speed, "observed walking speed, m/s")->capture_default_str();
  cmd->add_option("--heading", a.heading_deg, "observed heading, degrees")->capture_default_str();
}

json trajectory_json(const Trajectory& t) {
  json pts = json::array();
  for (const auto& p : t.points) pts.push_back({p.x, p.y});
  return pts;
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

int run_bench(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<std::size_t> threads,
              const std::string& csv, const std::string& json_out, std::ostream& out) {
  BenchConfig cfg = load_bench_config(config_path);
  if (seed) {
    cfg.eval.seed = *seed;
    cfg.raw["seed"] = *seed;
  }
  if (threads) cfg.eval.threads = *threads;
  if (!csv.empty()) cfg.csv_path = csv;
  if (!json_out.empty()) cfg.json_path = json_out;

  const auto corpus = load_corpus(cfg, std::filesystem::path(config_path).parent_path());
  if (corpus.empty()) throw validation_error("corpus is empty after windowing");
  EvalReport report = evaluate(corpus, cfg.generator, cfg.samplers, cfg.eval);
  report.config = cfg.raw;
  emit_report(report, cfg.csv_path, cfg.json_path);

  out << "dataset  sampler  subset  minADE  minFDE  gainADE%  gainFDE%\n";
  for (const auto& r : report.rows) {
    if (r.dataset != "AVG") continue;
    out << r.dataset << "  " << r.sampler << "  " << r.subset << "  " << fmt4(r.min_ade) << "  " << fmt4(r.min_fde)
        << "  " << (r.gain_ade ? fmt4(*r.gain_ade) : "-") << "  " << (r.gain_fde ? fmt4(*r.gain_fde) : "-") << "\n";
  }
  return kExitOk;
}

int run_sample(const SampleArgs& a, std::ostream& out) {
  const GeneratorSpec spec = generator_from_args(a.generator, a.dim);
  const auto generator = make_generator(spec);
  const LatentPrior prior(generator->latent_dim());
  const SamplerConfig cfg = sampler_from_args(a, a.sampler);
  const Scene scene = walker_scene(a.speed, a.heading_deg);
  const SessionResult r = run_session(scene, 0, *generator, prior, cfg);

  json latents = json::array();
  for (const auto& z : r.latents) {
    json coords = json::array();
    for (int i = 0; i < z.dim(); ++i) coords.push_back(z[i]);
    latents.push_back(std::move(coords));
  }
  json trajectories = json::array();
  for (const auto& t : r.trajectories) trajectories.push_back(trajectory_json(t));
  const json doc = {
      {"generator", generator_spec_to_json(spec)},
      {"sampler", std::string(to_string(cfg.kind))},
      {"n", cfg.n},
      {"warmup", cfg.effective_warmup()},
      {"seed", cfg.seed},
      {"observed", trajectory_json(scene.agents.front().observed)},
      {"latents", latents},
      {"trajectories", trajectories},
      {"scores", r.scores},
  };
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int run_exception_split(const std::vector<std::string>& inputs, const std::string& config_path, double q,
                        bool global_pool, const WindowOptions& windows, const KalmanParams& kalman,
                        const std::string& out_path, std::ostream& out) {
  std::vector<Scene> scenes;
  KalmanParams params = kalman;
  if (!config_path.empty()) {
    const BenchConfig cfg = load_bench_config(config_path);
    scenes = load_corpus(cfg, std::filesystem::path(config_path).parent_path());
    params = cfg.eval.kalman;
  }
  for (const auto& input : inputs) {
    const std::filesystem::path p(input);
    auto part = window_scenes(parse_trajectories_file(p), p.stem().string(), windows,
                              static_cast<std::int64_t>(scenes.size()));
    for (auto& s : part) scenes.push_back(std::move(s));
  }
  if (scenes.empty() && inputs.empty() && config_path.empty()) {
    throw validation_error("exception-split needs --input files or --config");
  }
  const auto picked = exception_select(scenes, params, q, global_pool);
  std::string csv = "dataset,scene_id,agent_id,deviation\n";
  for (const auto& r : picked) {
    csv += r.dataset + ',' + std::to_string(r.scene_id) + ',' + std::to_string(r.agent_id) + ',' + fmt4(r.deviation) +
           '\n';
  }
  if (out_path.empty()) {
    out << csv;
  } else {
    write_text_file(out_path, csv);
    out << "selected " << picked.size() << " agents -> " << out_path << "\n";
  }
  return kExitOk;
}

int run_histogram(const SampleArgs& a, const std::vector<std::string>& samplers, std::size_t sessions,
                  const HistogramBins& bins, const std::string& out_path, std::ostream& out) {
  const GeneratorSpec spec = generator_from_args(a.generator, a.dim);
  const auto generator = make_generator(spec);
  const LatentPrior prior(generator->latent_dim());
  const Scene scene = walker_scene(a.speed, a.heading_deg);
  std::vector<SessionResult> results;
  for (const auto& kind : samplers) {
    SamplerConfig cfg = sampler_from_args(a, kind);
    for (std::size_t k = 0; k < sessions; ++k) {
      cfg.seed = derive_seed(a.seed, {k});
      results.push_back(run_session(scene, 0, *generator, prior, cfg));
    }
  }
  if (out_path.empty()) {
    out << histogram_to_csv(latent_histogram(results, bins));
  } else {
    emit_histogram(results, bins, out_path);
    out << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Latent-code samplers for stochastic trajectory predictors: MC, QMC and GP-UCB sequential sampling"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string csv_out, json_out;
  auto* bench = app.add_subcommand("bench", "run the benchmark described by a JSON config");
  bench->add_option("--config", config_path, "benchmark config (JSON)")->required();
  bench->add_option("--seed", seed, "override the config's global seed");
  bench->add_option("--threads", threads, "worker threads (0 = all cores)");
  bench->add_option("--csv", csv_out, "override the report CSV path");
  bench->add_option("--json", json_out, "override the report JSON path");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "run one sampling session and print it as JSON");
  add_sampling_options(sample, sample_args);
  sample->add_option("--sampler", sample_args.sampler, "mc | qmc | bo | bo_qmc")->capture_default_str();

  std::vector<std::string> inputs;
  std::string split_config, split_out;
  double q = 0.04;
  bool global_pool = false;
  WindowOptions windows;
  KalmanParams kalman;
  auto* split = app.add_subcommand("exception-split", "select the most Kalman-deviated agents of a corpus");
  split->add_option("--input", inputs, "ETH/UCY text file (dataset name = file stem); repeatable");
  split->add_option("--config", split_config, "take the corpus from a benchmark config instead");
  split->add_option("--q", q, "fraction selected per dataset")->capture_default_str();
  split->add_flag("--global-pool", global_pool, "rank over the whole corpus instead of per dataset");
  split->add_option("--stride", windows.stride, "window stride")->capture_default_str();
  split->add_option("--frame-step", windows.frame_step, "frame increment (0 = detect)")->capture_default_str();
  split->add_option("--process-noise", kalman.process_noise)->capture_default_str();
  split->add_option("--measurement-noise", kalman.measurement_noise)->capture_default_str();
  split->add_option("--out", split_out, "output CSV (default stdout)");

  SampleArgs hist_args;
  hist_args.generator = "turn_mixture";
  std::vector<std::string> hist_samplers{"mc", "qmc", "bo"};
  std::size_t sessions = 200;
  HistogramBins bins;
  std::string hist_out;
  auto* hist = app.add_subcommand("histogram", "frequency histogram of the first latent coordinate per sampler");
  add_sampling_options(hist, hist_args);
  hist->add_option("--samplers", hist_samplers, "sampler kinds")->delimiter(',')->capture_default_str();
  hist->add_option("--sessions", sessions, "sessions per sampler")->capture_default_str();
  hist->add_option("--bins", bins.count, "bin count")->capture_default_str();
  hist->add_option("--lo", bins.lo, "lower edge")->capture_default_str();
  hist->add_option("--hi", bins.hi, "upper edge")->capture_default_str();
  hist->add_option("--out", hist_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (bench->parsed()) return run_bench(config_path, seed, threads, csv_out, json_out, out);
    if (sample->parsed()) return run_sample(sample_args, out);
    if (split->parsed()) {
      return run_exception_split(inputs, split_config, q, global_pool, windows, kalman, split_out, out);
    }
    if (hist->parsed()) return run_histogram(hist_args, hist_samplers, sessions, bins, hist_out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kIo ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace trajsampler
