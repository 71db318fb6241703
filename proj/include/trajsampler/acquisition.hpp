#pragma once

#include <span>
#include <vector>

#include "trajsampler/generators.hpp"
#include "trajsampler/latent.hpp"
#include "trajsampler/latent_gp.hpp"
#include "trajsampler/trajectory.hpp"

namespace trajsampler {

struct AcquisitionConfig {
  double beta = 0.5;
  std::size_t pool_size = 512;

  void validate() const;
};

/// Unsupervised score for a latent code: minus the summed ADE between the
/// trajectories generated at z and those generated at the prior mode. With
/// one observed history this is the per-agent score; with several it is the
/// scene-shared score where one z drives every agent.
class PseudoScorer {
 public:
  PseudoScorer(const Generator& generator, std::vector<Trajectory> observed, const LatentPrior& prior);

  struct Evaluation {
    std::vector<Trajectory> trajectories;  // one per observed history
    double score = 0.0;
  };

  Evaluation evaluate(const LatentPoint& z) const;
  double score(const LatentPoint& z) const { return evaluate(z).score; }

  const std::vector<Trajectory>& references() const { return references_; }
  const LatentPoint& mode() const { return mode_; }

 private:
  const Generator* generator_;
  std::vector<Trajectory> observed_;
  LatentPoint mode_;
  std::vector<Trajectory> references_;
};

/// mean + sqrt(beta * variance).
double ucb(const PosteriorMoment& m, double beta);

/// Index of the pool member with the largest UCB value; ties go to the
/// lowest index. The whole pool is scanned before choosing.
std::size_t argmax_acquisition(const GPState& state, double beta, std::span<const LatentPoint> pool);

/// Draws cfg.pool_size candidates from the prior using rng and returns the
/// UCB maximizer among them.
LatentPoint maximize_acquisition(const GPState& state, const AcquisitionConfig& cfg, const LatentPrior& prior,
                                 Rng& rng);

}  // namespace trajsampler
