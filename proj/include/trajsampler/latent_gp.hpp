#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "trajsampler/latent.hpp"

namespace trajsampler {

/// One surrogate observation: a latent code and the score it produced.
struct ScoredSample {
  LatentPoint z;
  double score = 0.0;
};

/// Extended precision for the Gram factorization; condition numbers near
/// 1e9 occur at noise 1e-6.
using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

enum class KernelKind { kSquaredExponential };

struct KernelConfig {
  KernelKind kind = KernelKind::kSquaredExponential;
  double lengthscale = 1.0;
  double signal_variance = 1.0;

  void validate() const;
};

/// Posterior mean and variance of the surrogate at one latent code.
struct PosteriorMoment {
  double mean = 0.0;
  double variance = 0.0;
};

/// sigma_f^2 * exp(-|z - z'|^2 / (2 l^2)).
double kernel_eval(const LatentPoint& z, const LatentPoint& z_prime, const KernelConfig& cfg);

/// Fitted exact GP over latent codes. Immutable after construction, so a
/// state may be queried from several threads at once.
class GPState {
 public:
  const KernelConfig& kernel() const { return kernel_; }
  double noise_variance() const { return noise_variance_; }
  /// Noise actually added to the Gram diagonal (noise_variance + any jitter
  /// needed to factor it).
  double effective_noise() const { return effective_noise_; }
  double prior_mean() const { return prior_mean_; }
  const std::vector<ScoredSample>& observations() const { return observations_; }
  std::size_t size() const { return observations_.size(); }
  /// Input dimension, or -1 while no observation fixes it.
  int dim() const { return dim_; }

  /// Lower Cholesky factor L with L L^T = K + effective_noise * I.
  const MatrixXld& chol() const { return chol_; }
  /// (K + effective_noise * I)^{-1} (s - mu0).
  const VectorXld& alpha() const { return alpha_; }

 private:
  friend GPState fit_gp(std::vector<ScoredSample> samples, const KernelConfig& cfg, double noise_variance,
                        double prior_mean);
  friend PosteriorMoment posterior(const GPState& state, const LatentPoint& z);

  KernelConfig kernel_;
  double noise_variance_ = 0.0;
  double effective_noise_ = 0.0;
  double prior_mean_ = 0.0;
  int dim_ = -1;
  std::vector<ScoredSample> observations_;
  Eigen::MatrixXd inputs_;  // one observation per row
  MatrixXld chol_;
  VectorXld alpha_;
};

/// Factors K + sigma^2 I once. If the factorization breaks down, jitter is
/// added starting at 1e-6 and multiplied by 10 up to 1e-2 before giving up
/// with "kernel matrix not PSD".
GPState fit_gp(std::vector<ScoredSample> samples, const KernelConfig& cfg, double noise_variance, double prior_mean);

/// Closed-form posterior moments. Variance is clamped at zero from below.
PosteriorMoment posterior(const GPState& state, const LatentPoint& z);

/// Hyperparameters derived from the warm-up set and then held fixed for the
/// rest of a session.
struct SurrogatePrior {
  KernelConfig kernel;
  double prior_mean = 0.0;
};

/// Median-heuristic lengthscale (fallback 1 with fewer than two points),
/// signal variance = unbiased sample variance of the scores (fallback 1 with
/// fewer than two scores or a degenerate spread), prior mean = score mean.
SurrogatePrior surrogate_prior_from_warmup(std::span<const ScoredSample> warmup);

/// In-place lower Cholesky of a symmetric matrix. Returns false on a pivot
/// that is not safely positive.
bool cholesky_lower(Eigen::MatrixXd& a);
bool cholesky_lower(MatrixXld& a);

}  // namespace trajsampler
