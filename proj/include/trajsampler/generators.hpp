#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "trajsampler/latent.hpp"
#include "trajsampler/trajectory.hpp"

namespace trajsampler {

/// A stochastic trajectory predictor Y = G(X, z): deterministic given the
/// observed history X and the latent code z.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual int latent_dim() const = 0;
  /// Returns kPredLen future points. Must be a pure function of (observed, z).
  virtual Trajectory generate(const Trajectory& observed, const LatentPoint& z) const = 0;
};

enum class GeneratorKind { kCvGauss, kTurnMixture, kEndpointCond };

std::string_view to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(std::string_view name);

enum class TurnMode { kStraight, kLeft, kRight, kUTurn };

std::string_view to_string(TurnMode mode);

/// Prior probability of each turn-mixture mode. Must sum to one.
struct ModeTable {
  double straight = 0.90;
  double left = 0.05;
  double right = 0.05;
  double uturn = 0.0;

  double probability(TurnMode mode) const;
  void validate() const;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kCvGauss;
  int latent_dim = 2;

  // cv_gauss
  double heading_gain = 0.15;  // rad per unit z1
  double speed_gain = 0.2;     // log-speed per unit z2

  // endpoint_cond
  double endpoint_gain = 1.0;  // meters per unit z

  // turn_mixture
  ModeTable modes;
  double turn_angle = 1.5707963267948966;  // total heading change of a left/right turn, rad
  double jitter_speed_gain = 0.05;         // log-speed per unit z2
  double jitter_heading_gain = 0.05;       // rad per unit z3

  void validate() const;
};

std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec);

/// Constant-velocity extrapolation of the last observed step, heading rotated
/// by heading_gain * z1 and speed scaled by exp(speed_gain * z2). Coordinates
/// past the second do not affect the output. A stationary agent stays put.
class CvGaussGenerator final : public Generator {
 public:
  explicit CvGaussGenerator(const GeneratorSpec& spec);
  int latent_dim() const override { return dim_; }
  Trajectory generate(const Trajectory& observed, const LatentPoint& z) const override;

 private:
  int dim_;
  double heading_gain_;
  double speed_gain_;
};

/// Mode-structured generator. z1 picks the mode by thresholding against
/// prior quantiles: from the bottom of the z1 axis, half the U-turn mass,
/// then the right-turn band, the straight band, the left-turn band, and the
/// other half of the U-turn mass. Remaining coordinates jitter speed (z2) and
/// heading (z3).
class TurnMixtureGenerator final : public Generator {
 public:
  explicit TurnMixtureGenerator(const GeneratorSpec& spec);
  int latent_dim() const override { return dim_; }
  Trajectory generate(const Trajectory& observed, const LatentPoint& z) const override;

  TurnMode mode_of(const LatentPoint& z) const;
  const ModeTable& modes() const { return modes_; }

 private:
  int dim_;
  ModeTable modes_;
  double turn_angle_;
  double jitter_speed_gain_;
  double jitter_heading_gain_;
  // Ascending z1 cut points between consecutive bands (+-inf for empty ones).
  double cut_uturn_low_;
  double cut_right_;
  double cut_straight_;
  double cut_left_;
};

/// Endpoint-conditioned generator: endpoint = CV endpoint + endpoint_gain * z,
/// the path linearly interpolated from the last observed point.
class EndpointGenerator final : public Generator {
 public:
  explicit EndpointGenerator(const GeneratorSpec& spec);
  int latent_dim() const override { return 2; }
  Trajectory generate(const Trajectory& observed, const LatentPoint& z) const override;

 private:
  double endpoint_gain_;
};

struct ModeLabel {
  TurnMode mode = TurnMode::kStraight;
  double probability = 0.0;
};

/// Mode of an agent's ground-truth future and its prior probability. Only
/// defined for turn_mixture generators and agents with a recorded truth latent.
ModeLabel true_mode_of(const Scene& scene, std::int64_t agent_id, const GeneratorSpec& spec);

}  // namespace trajsampler
