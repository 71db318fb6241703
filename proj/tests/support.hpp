#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "trajsampler/latent.hpp"
#include "trajsampler/latent_gp.hpp"
#include "trajsampler/trajectory.hpp"

namespace ts_test {

using trajsampler::LatentPoint;
using trajsampler::Point2;
using trajsampler::Rng;
using trajsampler::ScoredSample;
using trajsampler::Trajectory;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double gaussian(Rng& rng, double sd = 1.0) { return std::normal_distribution<double>(0.0, sd)(rng); }

inline LatentPoint random_latent(Rng& rng, int d, double sd = 1.0) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = gaussian(rng, sd);
  return LatentPoint(v);
}

/// Straight walk of n points ending wherever it ends; speed in m/s.
inline Trajectory straight_walk(Point2 start, double heading, double speed, int n = trajsampler::kObsLen) {
  Trajectory t;
  const double step = speed * trajsampler::kFrameDt;
  for (int i = 0; i < n; ++i) {
    t.points.push_back({start.x + i * step * std::cos(heading), start.y + i * step * std::sin(heading)});
  }
  return t;
}

inline Trajectory random_observed(Rng& rng) {
  return straight_walk({uniform(rng, -10, 10), uniform(rng, -10, 10)}, uniform(rng, -M_PI, M_PI),
                       uniform(rng, 0.0, 2.0));
}

inline Trajectory random_path(Rng& rng, int n) {
  Trajectory t;
  for (int i = 0; i < n; ++i) t.points.push_back({uniform(rng, -5, 5), uniform(rng, -5, 5)});
  return t;
}

inline trajsampler::Scene one_agent_scene(const Trajectory& observed, std::int64_t scene_id = 0,
                                          std::int64_t agent_id = 0) {
  trajsampler::Scene s;
  s.id = scene_id;
  s.dataset = "test";
  trajsampler::Agent a;
  a.id = agent_id;
  a.observed = observed;
  a.future = straight_walk(observed.points.back(), 0.0, 0.0, trajsampler::kPredLen);
  s.agents.push_back(a);
  return s;
}

/// Smooth response on R^d, a stand-in for pseudo-scores.
inline double smooth_score(const LatentPoint& z, const Eigen::VectorXd& w) {
  return -std::abs(std::sin(z.coords().dot(w))) - 0.1 * z.coords().squaredNorm();
}

/// Posterior moments recomputed from scratch in long double: explicit Gram
/// matrix, full pivot LU solves, no factor reuse.
struct DenseOracle {
  double mean;
  double variance;
};

inline DenseOracle dense_posterior(const std::vector<ScoredSample>& obs, double lengthscale, double signal_variance,
                                   double noise, double mu0, const LatentPoint& q) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const auto n = static_cast<Eigen::Index>(obs.size());
  auto k = [&](const LatentPoint& a, const LatentPoint& b) {
    long double r2 = 0;
    for (int i = 0; i < a.dim(); ++i) {
      const long double t = static_cast<long double>(a[i]) - b[i];
      r2 += t * t;
    }
    return signal_variance * std::exp(-0.5L * r2 / (static_cast<long double>(lengthscale) * lengthscale));
  };
  MatL a(n, n);
  VecL kq(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = k(obs[i].z, obs[j].z) + (i == j ? noise : 0.0L);
    kq[i] = k(obs[i].z, q);
    y[i] = static_cast<long double>(obs[i].score) - mu0;
  }
  const Eigen::FullPivLU<MatL> lu(a);
  const VecL wy = lu.solve(y);
  const VecL wk = lu.solve(kq);
  return {static_cast<double>(mu0 + kq.dot(wy)), static_cast<double>(signal_variance - kq.dot(wk))};
}

}  // namespace ts_test
