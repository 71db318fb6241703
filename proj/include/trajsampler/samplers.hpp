#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajsampler/acquisition.hpp"
#include "trajsampler/generators.hpp"
#include "trajsampler/latent.hpp"
#include "trajsampler/latent_gp.hpp"
#include "trajsampler/trajectory.hpp"

namespace trajsampler {

enum class SamplerKind { kMC, kQMC, kBO, kBOQMC };

std::string_view to_string(SamplerKind kind);
SamplerKind sampler_kind_from_string(std::string_view name);  // case-insensitive; "bo_qmc" and "bo+qmc" both accepted

struct SamplerConfig {
  SamplerKind kind = SamplerKind::kMC;
  std::string label;           // report row name; defaults to the kind name
  std::size_t n = 20;          // total samples per session
  std::optional<std::size_t> warmup;  // defaults to ceil(n / 2)
  AcquisitionConfig acquisition;
  double noise_variance = 1e-6;
  std::uint64_t seed = 0;

  std::size_t effective_warmup() const { return warmup.value_or((n + 1) / 2); }
  std::string effective_label() const { return label.empty() ? std::string(to_string(kind)) : label; }
  void validate() const;
};

struct SessionResult {
  std::vector<LatentPoint> latents;
  std::vector<Trajectory> trajectories;
  std::vector<double> scores;
  SamplerConfig sampler;
  double wall_time = 0.0;  // seconds
  /// Number of scored samples the surrogate was fit on at each BO step.
  std::vector<std::size_t> fit_sizes;
  /// Hyperparameters fixed after warm-up (BO kinds only).
  std::optional<SurrogatePrior> surrogate;
};

/// n i.i.d. prior draws.
std::vector<LatentPoint> mc_draw(const LatentPrior& prior, std::size_t n, Rng& rng);

/// First n Sobol points (zero point skipped) pushed through the normal
/// quantile coordinate-wise. Deterministic.
std::vector<LatentPoint> qmc_draw(const LatentPrior& prior, std::size_t n);

/// Seed of the session for (repeat, scene, agent) under a global seed. Does
/// not depend on the sampler, so all samplers share warm-up draws.
std::uint64_t session_seed(std::uint64_t global_seed, std::uint64_t repeat, std::int64_t scene_id,
                           std::int64_t agent_id);

/// Samples cfg.n latent codes for one agent and records the generated
/// futures and their pseudo-scores. Randomness comes only from cfg.seed.
SessionResult run_session(const Scene& scene, std::int64_t agent_id, const Generator& generator,
                          const LatentPrior& prior, const SamplerConfig& cfg);

/// Scene-shared variant: one latent sequence drives every agent and the
/// score sums over agents. Returns one result per agent, all with the same
/// latents and scores.
std::vector<SessionResult> run_scene_session(const Scene& scene, const Generator& generator,
                                             const LatentPrior& prior, const SamplerConfig& cfg);

}  // namespace trajsampler
