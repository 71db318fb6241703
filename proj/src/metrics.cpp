#include "trajsampler/metrics.hpp"

#include <string>

#include "trajsampler/error.hpp"

namespace trajsampler {

namespace {

void check_pair(const Trajectory& pred, const Trajectory& gt) {
  if (pred.size() != gt.size()) {
    throw validation_error("trajectory length mismatch: " + std::to_string(pred.size()) + " vs " +
                           std::to_string(gt.size()));
  }
  if (gt.size() == 0) throw validation_error("cannot score empty trajectories");
}

}  // namespace

double ade(const Trajectory& pred, const Trajectory& gt) {
  check_pair(pred, gt);
  double sum = 0.0;
  for (std::size_t t = 0; t < gt.size(); ++t) sum += distance(pred.points[t], gt.points[t]);
  return sum / static_cast<double>(gt.size());
}

double fde(const Trajectory& pred, const Trajectory& gt) {
  check_pair(pred, gt);
  return distance(pred.points.back(), gt.points.back());
}

BestOfN min_of_n(std::span<const Trajectory> preds, const Trajectory& gt) {
  if (preds.empty()) throw validation_error("min_of_n needs at least one prediction");
  BestOfN best{ade(preds[0], gt), fde(preds[0], gt), 0, 0};
  for (std::size_t i = 1; i < preds.size(); ++i) {
    const double a = ade(preds[i], gt);
    const double f = fde(preds[i], gt);
    if (a < best.min_ade) {
      best.min_ade = a;
      best.ade_index = i;
    }
    if (f < best.min_fde) {
      best.min_fde = f;
      best.fde_index = i;
    }
  }
  return best;
}

double gain(double mc_value, double other_value) {
  if (!(mc_value > 0.0)) throw validation_error("gain needs a positive MC reference value");
  return 100.0 * (mc_value - other_value) / mc_value;
}

}  // namespace trajsampler
