#include "trajsampler/acquisition.hpp"

#include <cmath>

#include "trajsampler/error.hpp"
#include "trajsampler/metrics.hpp"

namespace trajsampler {

void AcquisitionConfig::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw validation_error("acquisition beta must be >= 0");
  if (pool_size < 1) throw validation_error("acquisition candidate pool size must be >= 1");
}

PseudoScorer::PseudoScorer(const Generator& generator, std::vector<Trajectory> observed, const LatentPrior& prior)
    : generator_(&generator), observed_(std::move(observed)), mode_(prior.mode()) {
  if (observed_.empty()) throw validation_error("pseudo scorer needs at least one observed history");
  if (prior.dim() != generator.latent_dim()) {
    throw validation_error("prior dimension " + std::to_string(prior.dim()) + " does not match generator latent dim " +
                           std::to_string(generator.latent_dim()));
  }
  references_.reserve(observed_.size());
  for (const auto& x : observed_) references_.push_back(generator_->generate(x, mode_));
}

PseudoScorer::Evaluation PseudoScorer::evaluate(const LatentPoint& z) const {
  Evaluation ev;
  ev.trajectories.reserve(observed_.size());
  double total = 0.0;
  for (std::size_t l = 0; l < observed_.size(); ++l) {
    ev.trajectories.push_back(generator_->generate(observed_[l], z));
    total += ade(ev.trajectories.back(), references_[l]);
  }
  ev.score = -total;
  return ev;
}

double ucb(const PosteriorMoment& m, double beta) { return m.mean + std::sqrt(beta * m.variance); }

std::size_t argmax_acquisition(const GPState& state, double beta, std::span<const LatentPoint> pool) {
  if (pool.empty()) throw validation_error("acquisition candidate pool is empty");
  std::size_t best = 0;
  double best_value = ucb(posterior(state, pool[0]), beta);
  for (std::size_t i = 1; i < pool.size(); ++i) {
    const double v = ucb(posterior(state, pool[i]), beta);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

LatentPoint maximize_acquisition(const GPState& state, const AcquisitionConfig& cfg, const LatentPrior& prior,
                                 Rng& rng) {
  cfg.validate();
  const std::vector<LatentPoint> pool = prior.draw(cfg.pool_size, rng);
  return pool[argmax_acquisition(state, cfg.beta, pool)];
}

}  // namespace trajsampler
