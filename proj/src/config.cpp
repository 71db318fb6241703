#include "trajsampler/config.hpp"

#include <algorithm>
#include <initializer_list>

#include "trajsampler/error.hpp"

namespace trajsampler {

namespace {

using nlohmann::json;

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw validation_error(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw validation_error(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

GeneratorSpec generator_spec_from_json(const json& j) {
  check_keys(j, "generator",
             {"kind", "latent_dim", "heading_gain", "speed_gain", "endpoint_gain", "modes", "turn_angle",
              "jitter_speed_gain", "jitter_heading_gain"});
  GeneratorSpec spec;
  spec.kind = generator_kind_from_string(j.at("kind").get<std::string>());
  if (spec.kind == GeneratorKind::kTurnMixture) spec.latent_dim = 2;
  read(j, "latent_dim", spec.latent_dim);
  read(j, "heading_gain", spec.heading_gain);
  read(j, "speed_gain", spec.speed_gain);
  read(j, "endpoint_gain", spec.endpoint_gain);
  read(j, "turn_angle", spec.turn_angle);
  read(j, "jitter_speed_gain", spec.jitter_speed_gain);
  read(j, "jitter_heading_gain", spec.jitter_heading_gain);
  if (j.contains("modes")) {
    const json& m = j.at("modes");
    check_keys(m, "generator.modes", {"straight", "left", "right", "uturn"});
    spec.modes = ModeTable{0.0, 0.0, 0.0, 0.0};
    read(m, "straight", spec.modes.straight);
    read(m, "left", spec.modes.left);
    read(m, "right", spec.modes.right);
    read(m, "uturn", spec.modes.uturn);
  }
  spec.validate();
  return spec;
}

json generator_spec_to_json(const GeneratorSpec& spec) {
  return {
      {"kind", std::string(to_string(spec.kind))},
      {"latent_dim", spec.latent_dim},
      {"heading_gain", spec.heading_gain},
      {"speed_gain", spec.speed_gain},
      {"endpoint_gain", spec.endpoint_gain},
      {"modes",
       {{"straight", spec.modes.straight}, {"left", spec.modes.left}, {"right", spec.modes.right},
        {"uturn", spec.modes.uturn}}},
      {"turn_angle", spec.turn_angle},
      {"jitter_speed_gain", spec.jitter_speed_gain},
      {"jitter_heading_gain", spec.jitter_heading_gain},
  };
}

SamplerConfig sampler_config_from_json(const json& j) {
  check_keys(j, "sampler", {"kind", "label", "n", "warmup", "beta", "pool_size", "noise_variance", "seed"});
  SamplerConfig cfg;
  cfg.kind = sampler_kind_from_string(j.at("kind").get<std::string>());
  read(j, "label", cfg.label);
  read(j, "n", cfg.n);
  if (j.contains("warmup")) cfg.warmup = j.at("warmup").get<std::size_t>();
  read(j, "beta", cfg.acquisition.beta);
  read(j, "pool_size", cfg.acquisition.pool_size);
  read(j, "noise_variance", cfg.noise_variance);
  read(j, "seed", cfg.seed);
  cfg.validate();
  return cfg;
}

void BenchConfig::validate() const {
  generator.validate();
  if (samplers.empty()) throw validation_error("config needs at least one sampler");
  for (const auto& s : samplers) s.validate();
  eval.validate();
  if (!corpus.synthetic && corpus.files.empty()) throw validation_error("config corpus has no source");
  if (corpus.synthetic && !corpus.files.empty()) {
    throw validation_error("config corpus must be either synthetic or files, not both");
  }
}

BenchConfig bench_config_from_json(const json& j) {
  try {
    check_keys(j, "config",
               {"seed", "repeats", "exception_fraction", "global_pool", "scoring", "threads", "turn_subset",
                "generator", "samplers", "corpus", "kalman", "output"});
    BenchConfig cfg;
    cfg.raw = j;
    cfg.generator = generator_spec_from_json(j.at("generator"));
    for (const auto& s : j.at("samplers")) cfg.samplers.push_back(sampler_config_from_json(s));

    read(j, "seed", cfg.eval.seed);
    read(j, "repeats", cfg.eval.repeats);
    read(j, "exception_fraction", cfg.eval.exception_fraction);
    read(j, "global_pool", cfg.eval.global_pool);
    read(j, "threads", cfg.eval.threads);
    if (j.contains("scoring")) {
      const auto mode = j.at("scoring").get<std::string>();
      if (mode == "per_agent") {
        cfg.eval.scoring = ScoringMode::kPerAgent;
      } else if (mode == "scene_shared") {
        cfg.eval.scoring = ScoringMode::kSceneShared;
      } else {
        throw validation_error("scoring must be 'per_agent' or 'scene_shared'");
      }
    }
    if (j.contains("kalman")) {
      const json& k = j.at("kalman");
      check_keys(k, "kalman", {"process_noise", "measurement_noise"});
      read(k, "process_noise", cfg.eval.kalman.process_noise);
      read(k, "measurement_noise", cfg.eval.kalman.measurement_noise);
    }

    const json& c = j.at("corpus");
    check_keys(c, "corpus", {"synthetic", "files", "stride", "frame_step"});
    read(c, "stride", cfg.corpus.windows.stride);
    read(c, "frame_step", cfg.corpus.windows.frame_step);
    if (c.contains("synthetic")) {
      const json& s = c.at("synthetic");
      check_keys(s, "corpus.synthetic",
                 {"datasets", "agents_per_scene", "min_speed", "max_speed", "area", "obs_noise"});
      SyntheticCorpusSpec spec;
      if (s.contains("datasets")) {
        spec.datasets.clear();
        for (const auto& d : s.at("datasets")) {
          check_keys(d, "corpus.synthetic.datasets[]", {"name", "scenes"});
          spec.datasets.push_back({d.at("name").get<std::string>(), d.at("scenes").get<std::size_t>()});
        }
      }
      read(s, "agents_per_scene", spec.agents_per_scene);
      read(s, "min_speed", spec.min_speed);
      read(s, "max_speed", spec.max_speed);
      read(s, "area", spec.area);
      read(s, "obs_noise", spec.obs_noise);
      spec.validate();
      cfg.corpus.synthetic = spec;
    }
    if (c.contains("files")) {
      for (const auto& f : c.at("files")) {
        check_keys(f, "corpus.files[]", {"dataset", "path"});
        cfg.corpus.files.push_back({f.at("dataset").get<std::string>(), f.at("path").get<std::string>()});
      }
    }

    cfg.eval.turn_subset = cfg.generator.kind == GeneratorKind::kTurnMixture && cfg.corpus.synthetic.has_value();
    read(j, "turn_subset", cfg.eval.turn_subset);

    if (j.contains("output")) {
      const json& o = j.at("output");
      check_keys(o, "output", {"csv", "json"});
      if (o.contains("csv")) cfg.csv_path = o.at("csv").get<std::string>();
      if (o.contains("json")) cfg.json_path = o.at("json").get<std::string>();
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw validation_error(std::string("invalid config: ") + e.what());
  }
}

BenchConfig load_bench_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
  try {
    return bench_config_from_json(j);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<Scene> load_corpus(const BenchConfig& cfg, const std::filesystem::path& base_dir) {
  if (cfg.corpus.synthetic) {
    const auto generator = make_generator(cfg.generator);
    return make_synthetic_corpus(*cfg.corpus.synthetic, *generator, derive_seed(cfg.eval.seed, {0xC0DE}));
  }
  std::vector<Scene> scenes;
  for (const auto& f : cfg.corpus.files) {
    const auto path = f.path.is_absolute() || base_dir.empty() ? f.path : base_dir / f.path;
    auto part = window_scenes(parse_trajectories_file(path), f.dataset, cfg.corpus.windows,
                              static_cast<std::int64_t>(scenes.size()));
    for (auto& s : part) scenes.push_back(std::move(s));
  }
  return scenes;
}

}  // namespace trajsampler
