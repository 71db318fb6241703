#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trajsampler/generators.hpp"
#include "trajsampler/kalman.hpp"
#include "trajsampler/samplers.hpp"
#include "trajsampler/trajectory.hpp"

namespace trajsampler {

// --- corpora ----------------------------------------------------------------

struct SyntheticDataset {
  std::string name = "synthetic";
  std::size_t scenes = 100;
};

/// Straight-walking observed histories with ground-truth futures drawn from
/// the generator at z ~ N(0, I). The truth latent is recorded on each agent.
struct SyntheticCorpusSpec {
  std::vector<SyntheticDataset> datasets{SyntheticDataset{}};
  std::size_t agents_per_scene = 1;
  double min_speed = 0.8;  // m/s
  double max_speed = 1.6;
  double area = 10.0;       // start positions uniform in [-area, area]^2
  double obs_noise = 0.0;   // std-dev of Gaussian noise on observed positions, meters

  void validate() const;
};

std::vector<Scene> make_synthetic_corpus(const SyntheticCorpusSpec& spec, const Generator& generator,
                                         std::uint64_t seed);

// --- exception subset ---------------------------------------------------------

struct AgentRef {
  std::string dataset;
  std::int64_t scene_id = 0;
  std::int64_t agent_id = 0;
  double deviation = 0.0;  // FDE of the Kalman reference against ground truth, meters

  friend bool operator==(const AgentRef&, const AgentRef&) = default;
};

/// Kalman-FDE deviation of every agent, in corpus order.
std::vector<AgentRef> agent_deviations(const std::vector<Scene>& scenes, const KalmanParams& p);

/// Top ceil(q * count) most deviated agents of each dataset (or of the whole
/// corpus when global_pool is set). Ties keep (scene id, agent id) order.
std::vector<AgentRef> exception_select(const std::vector<Scene>& scenes, const KalmanParams& p, double q = 0.04,
                                       bool global_pool = false);

// --- evaluation -------------------------------------------------------------

enum class ScoringMode { kPerAgent, kSceneShared };

struct EvalOptions {
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  double exception_fraction = 0.04;
  bool global_pool = false;
  KalmanParams kalman;
  ScoringMode scoring = ScoringMode::kPerAgent;
  /// Adds a "turn" subset (agents whose truth latent maps to a non-straight
  /// mode). Needs a turn_mixture generator and labeled agents.
  bool turn_subset = false;
  std::size_t threads = 1;  // 0 = hardware concurrency

  void validate() const;
};

struct ReportRow {
  std::string dataset;  // dataset name or "AVG"
  std::string sampler;  // sampler label
  std::string subset;   // "full", "exception-4%", "turn"
  double min_ade = 0.0;
  double min_fde = 0.0;
  std::optional<double> gain_ade;  // percent vs the MC row; unset without an MC sampler
  std::optional<double> gain_fde;
  std::size_t repeats = 1;
  std::size_t agents = 0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct EvalReport {
  std::vector<ReportRow> rows;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
  nlohmann::json config;  // echo of the configuration that produced the report

  const ReportRow* find(std::string_view dataset, std::string_view sampler, std::string_view subset) const;
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

std::string exception_subset_label(double q);

/// Runs every sampler on every agent (or scene, in scene-shared mode) for
/// each repeat and averages Best-of-N metrics: per agent, then per dataset,
/// then over repeats. AVG rows average the dataset rows. Gains are computed
/// from unrounded values against the first MC sampler.
EvalReport evaluate(const std::vector<Scene>& corpus, const GeneratorSpec& generator,
                    const std::vector<SamplerConfig>& samplers, const EvalOptions& options);

}  // namespace trajsampler
