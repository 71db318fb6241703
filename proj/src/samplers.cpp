#include "trajsampler/samplers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include "trajsampler/error.hpp"
#include "trajsampler/normal.hpp"
#include "trajsampler/sobol.hpp"

namespace trajsampler {

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kMC: return "MC";
    case SamplerKind::kQMC: return "QMC";
    case SamplerKind::kBO: return "BO";
    case SamplerKind::kBOQMC: return "BO_QMC";
  }
  return "?";
}

SamplerKind sampler_kind_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  if (s == "MC") return SamplerKind::kMC;
  if (s == "QMC") return SamplerKind::kQMC;
  if (s == "BO") return SamplerKind::kBO;
  if (s == "BO_QMC" || s == "BO+QMC") return SamplerKind::kBOQMC;
  throw validation_error("unknown sampler kind '" + std::string(name) + "'");
}

void SamplerConfig::validate() const {
  if (n < 1) throw validation_error("sampler needs n >= 1");
  const std::size_t w = effective_warmup();
  if (w < 1 || w > n) throw validation_error("sampler warm-up must satisfy 1 <= w <= n");
  if (!(noise_variance >= 0.0)) throw validation_error("sampler noise variance must be >= 0");
  acquisition.validate();
}

std::vector<LatentPoint> mc_draw(const LatentPrior& prior, std::size_t n, Rng& rng) { return prior.draw(n, rng); }

std::vector<LatentPoint> qmc_draw(const LatentPrior& prior, std::size_t n) {
  const auto points = sobol_points(n, prior.dim());
  std::vector<LatentPoint> out;
  out.reserve(n);
  for (const auto& u : points) {
    Eigen::VectorXd z(prior.dim());
    for (int j = 0; j < prior.dim(); ++j) z[j] = inverse_normal_cdf(u[j]);
    out.emplace_back(std::move(z));
  }
  return out;
}

std::uint64_t session_seed(std::uint64_t global_seed, std::uint64_t repeat, std::int64_t scene_id,
                           std::int64_t agent_id) {
  return derive_seed(global_seed,
                     {repeat, static_cast<std::uint64_t>(scene_id), static_cast<std::uint64_t>(agent_id)});
}

namespace {

struct Sampled {
  std::vector<LatentPoint> latents;
  std::vector<std::vector<Trajectory>> trajectories;  // [sample][history]
  std::vector<double> scores;
  std::vector<std::size_t> fit_sizes;
  std::optional<SurrogatePrior> surrogate;
};

void record(Sampled& out, const PseudoScorer& scorer, LatentPoint z) {
  auto ev = scorer.evaluate(z);
  out.latents.push_back(std::move(z));
  out.trajectories.push_back(std::move(ev.trajectories));
  out.scores.push_back(ev.score);
}

Sampled sample(const PseudoScorer& scorer, const LatentPrior& prior, const SamplerConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  Sampled out;
  out.latents.reserve(cfg.n);

  switch (cfg.kind) {
    case SamplerKind::kMC:
      for (auto& z : mc_draw(prior, cfg.n, rng)) record(out, scorer, std::move(z));
      return out;
    case SamplerKind::kQMC:
      for (auto& z : qmc_draw(prior, cfg.n)) record(out, scorer, std::move(z));
      return out;
    case SamplerKind::kBO:
    case SamplerKind::kBOQMC:
      break;
  }

  const std::size_t w = cfg.effective_warmup();
  auto warm = cfg.kind == SamplerKind::kBOQMC ? qmc_draw(prior, w) : mc_draw(prior, w, rng);
  for (auto& z : warm) record(out, scorer, std::move(z));
  if (w == cfg.n) return out;

  std::vector<ScoredSample> observed;
  observed.reserve(cfg.n);
  for (std::size_t i = 0; i < w; ++i) observed.push_back({out.latents[i], out.scores[i]});
  const SurrogatePrior hyper = surrogate_prior_from_warmup(observed);
  out.surrogate = hyper;

  for (std::size_t step = w; step < cfg.n; ++step) {
    const GPState gp = fit_gp(observed, hyper.kernel, cfg.noise_variance, hyper.prior_mean);
    out.fit_sizes.push_back(gp.size());
    LatentPoint next = maximize_acquisition(gp, cfg.acquisition, prior, rng);
    record(out, scorer, next);
    observed.push_back({std::move(next), out.scores.back()});
  }
  return out;
}

std::vector<Trajectory> observed_histories(const Scene& scene) {
  std::vector<Trajectory> obs;
  obs.reserve(scene.agents.size());
  for (const auto& a : scene.agents) obs.push_back(a.observed);
  return obs;
}

}  // namespace

SessionResult run_session(const Scene& scene, std::int64_t agent_id, const Generator& generator,
                          const LatentPrior& prior, const SamplerConfig& cfg) {
  const auto it = std::find_if(scene.agents.begin(), scene.agents.end(),
                               [&](const Agent& a) { return a.id == agent_id; });
  if (it == scene.agents.end()) {
    throw validation_error("agent " + std::to_string(agent_id) + " not found in scene " + std::to_string(scene.id));
  }
  const auto start = std::chrono::steady_clock::now();
  Sampled s;
  try {
    const PseudoScorer scorer(generator, {it->observed}, prior);
    s = sample(scorer, prior, cfg);
  } catch (const Error& e) {
    throw Error(e.kind(), "session (scene " + std::to_string(scene.id) + ", agent " + std::to_string(agent_id) +
                              ", sampler " + cfg.effective_label() + "): " + e.what());
  }
  SessionResult result;
  result.latents = std::move(s.latents);
  result.scores = std::move(s.scores);
  result.trajectories.reserve(result.latents.size());
  for (auto& per_sample : s.trajectories) result.trajectories.push_back(std::move(per_sample.front()));
  result.sampler = cfg;
  result.fit_sizes = std::move(s.fit_sizes);
  result.surrogate = s.surrogate;
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<SessionResult> run_scene_session(const Scene& scene, const Generator& generator,
                                             const LatentPrior& prior, const SamplerConfig& cfg) {
  if (scene.agents.empty()) throw validation_error("scene " + std::to_string(scene.id) + " has no agents");
  const auto start = std::chrono::steady_clock::now();
  Sampled s;
  try {
    const PseudoScorer scorer(generator, observed_histories(scene), prior);
    s = sample(scorer, prior, cfg);
  } catch (const Error& e) {
    throw Error(e.kind(), "scene session (scene " + std::to_string(scene.id) + ", sampler " +
                              cfg.effective_label() + "): " + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<SessionResult> results(scene.agents.size());
  for (std::size_t l = 0; l < scene.agents.size(); ++l) {
    SessionResult& r = results[l];
    r.latents = s.latents;
    r.scores = s.scores;
    r.trajectories.reserve(s.latents.size());
    for (const auto& per_sample : s.trajectories) r.trajectories.push_back(per_sample[l]);
    r.sampler = cfg;
    r.fit_sizes = s.fit_sizes;
    r.surrogate = s.surrogate;
    r.wall_time = elapsed;
  }
  return results;
}

}  // namespace trajsampler
