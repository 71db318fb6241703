#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trajsampler/latent.hpp"

namespace trajsampler {

inline constexpr int kObsLen = 8;
inline constexpr int kPredLen = 12;
inline constexpr double kFrameDt = 0.4;  // seconds

/// World position in meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
double distance(Point2 a, Point2 b);

/// Positions sampled every kFrameDt seconds.
struct Trajectory {
  std::vector<Point2> points;

  std::size_t size() const { return points.size(); }
  bool all_finite() const;
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Throws unless the trajectory has exactly `expected` finite points.
void check_trajectory(const Trajectory& t, std::size_t expected, const char* role);

struct Agent {
  std::int64_t id = 0;
  Trajectory observed;  // kObsLen points
  Trajectory future;    // kPredLen points, ground truth
  /// Latent code the ground truth was generated from, when known (synthetic
  /// corpora only). Lets tests label agents by construction.
  std::optional<LatentPoint> truth_latent;
};

struct Scene {
  std::int64_t id = 0;
  std::string dataset;
  std::vector<Agent> agents;
};

void check_scene(const Scene& scene);

}  // namespace trajsampler
