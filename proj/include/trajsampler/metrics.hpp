#pragma once

#include <span>

#include "trajsampler/trajectory.hpp"

namespace trajsampler {

/// Mean Euclidean distance over all time steps (meters).
double ade(const Trajectory& pred, const Trajectory& gt);

/// Euclidean distance between final points (meters).
double fde(const Trajectory& pred, const Trajectory& gt);

struct BestOfN {
  double min_ade = 0.0;
  double min_fde = 0.0;
  std::size_t ade_index = 0;  // first index attaining min_ade
  std::size_t fde_index = 0;  // first index attaining min_fde
};

/// Best-of-N: minADE and minFDE minimized independently over the predictions.
BestOfN min_of_n(std::span<const Trajectory> preds, const Trajectory& gt);

/// Percent improvement over the MC value: 100 * (mc - other) / mc.
double gain(double mc_value, double other_value);

}  // namespace trajsampler
