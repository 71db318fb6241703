#pragma once

#include <vector>

#include <Eigen/Core>

#include "trajsampler/trajectory.hpp"

namespace trajsampler {

/// Constant-velocity Kalman filter over state (x, y, vx, vy).
struct KalmanParams {
  double dt = kFrameDt;
  double process_noise = 1e-2;      // q, added as q*I each predict
  double measurement_noise = 1e-2;  // r, position measurements r*I

  void validate() const;
};

struct KalmanTrack {
  Eigen::Vector4d state;
  Eigen::Matrix4d covariance;
  /// Covariance trace after initialization and after each measurement
  /// update (kObsLen values).
  std::vector<double> trace_history;
};

/// Filters the observations. The state is initialized from the first two
/// observations (position = first point, velocity = first finite difference)
/// and updated with each subsequent observation.
KalmanTrack kalman_filter(const Trajectory& obs, const KalmanParams& p);

/// Filters kObsLen observations, then propagates kPredLen steps with no
/// measurements. Returns the predicted positions.
Trajectory kalman_cv_predict(const Trajectory& obs, const KalmanParams& p);

}  // namespace trajsampler
