#include "trajsampler/kalman.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "trajsampler/error.hpp"

namespace trajsampler {

void KalmanParams::validate() const {
  if (!(dt > 0.0) || !(process_noise > 0.0) || !(measurement_noise > 0.0)) {
    throw validation_error("Kalman dt, process noise and measurement noise must be positive");
  }
}

namespace {

Eigen::Matrix4d transition(double dt) {
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  return f;
}

}  // namespace

KalmanTrack kalman_filter(const Trajectory& obs, const KalmanParams& p) {
  p.validate();
  check_trajectory(obs, kObsLen, "observed");

  const Eigen::Matrix4d f = transition(p.dt);
  const Eigen::Matrix4d q = p.process_noise * Eigen::Matrix4d::Identity();
  const Eigen::Matrix2d r = p.measurement_noise * Eigen::Matrix2d::Identity();
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;

  KalmanTrack track;
  const Point2 p0 = obs.points[0];
  const Point2 v0 = (1.0 / p.dt) * (obs.points[1] - obs.points[0]);
  track.state << p0.x, p0.y, v0.x, v0.y;
  const double vel_var = 2.0 * p.measurement_noise / (p.dt * p.dt);
  track.covariance = Eigen::Vector4d(p.measurement_noise, p.measurement_noise, vel_var, vel_var).asDiagonal();
  track.trace_history.push_back(track.covariance.trace());

  for (std::size_t k = 1; k < obs.size(); ++k) {
    track.state = f * track.state;
    track.covariance = f * track.covariance * f.transpose() + q;

    const Eigen::Vector2d measured(obs.points[k].x, obs.points[k].y);
    const Eigen::Vector2d innovation = measured - h * track.state;
    const Eigen::Matrix2d s = h * track.covariance * h.transpose() + r;
    const Eigen::Matrix<double, 4, 2> gain = track.covariance * h.transpose() * s.inverse();
    track.state += gain * innovation;
    // Joseph form keeps the covariance symmetric positive definite.
    const Eigen::Matrix4d ikh = Eigen::Matrix4d::Identity() - gain * h;
    track.covariance = ikh * track.covariance * ikh.transpose() + gain * r * gain.transpose();
    track.trace_history.push_back(track.covariance.trace());
  }
  return track;
}

Trajectory kalman_cv_predict(const Trajectory& obs, const KalmanParams& p) {
  const KalmanTrack track = kalman_filter(obs, p);
  const Eigen::Matrix4d f = transition(p.dt);
  Eigen::Vector4d x = track.state;
  Trajectory out;
  out.points.reserve(kPredLen);
  for (int t = 0; t < kPredLen; ++t) {
    x = f * x;
    out.points.push_back({x[0], x[1]});
  }
  return out;
}

}  // namespace trajsampler
