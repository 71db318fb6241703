#include "trajsampler/trajectory.hpp"

#include <cmath>
#include <string>

#include "trajsampler/error.hpp"

namespace trajsampler {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool Trajectory::all_finite() const {
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  }
  return true;
}

void check_trajectory(const Trajectory& t, std::size_t expected, const char* role) {
  if (t.size() != expected) {
    throw validation_error(std::string(role) + " trajectory must have " + std::to_string(expected) +
                           " points, got " + std::to_string(t.size()));
  }
  if (!t.all_finite()) throw validation_error(std::string(role) + " trajectory has a non-finite coordinate");
}

void check_scene(const Scene& scene) {
  if (scene.agents.empty()) throw validation_error("scene " + std::to_string(scene.id) + " has no agents");
  for (const auto& a : scene.agents) {
    check_trajectory(a.observed, kObsLen, "observed");
    check_trajectory(a.future, kPredLen, "future");
  }
}

}  // namespace trajsampler
