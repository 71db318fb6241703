#include "trajsampler/generators.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "trajsampler/error.hpp"
#include "trajsampler/normal.hpp"

namespace trajsampler {

namespace {

struct Kinematics {
  Point2 last;
  double speed = 0.0;    // m/s
  double heading = 0.0;  // rad
};

// Last observed step; zero displacement means heading 0, speed 0.
Kinematics last_step(const Trajectory& observed) {
  check_trajectory(observed, kObsLen, "observed");
  const Point2 last = observed.points[kObsLen - 1];
  const Point2 step = last - observed.points[kObsLen - 2];
  const double len = std::hypot(step.x, step.y);
  if (len == 0.0) return {last, 0.0, 0.0};
  return {last, len / kFrameDt, std::atan2(step.y, step.x)};
}

void check_latent(const LatentPoint& z, int expected) {
  if (z.dim() != expected) {
    throw validation_error("generator expects a " + std::to_string(expected) + "-d latent, got " +
                           std::to_string(z.dim()));
  }
}

double quantile_or_inf(double u) {
  if (u <= 0.0) return -std::numeric_limits<double>::infinity();
  if (u >= 1.0) return std::numeric_limits<double>::infinity();
  return inverse_normal_cdf(u);
}

Trajectory straight_line(Point2 origin, double speed, double heading) {
  Trajectory out;
  out.points.reserve(kPredLen);
  const Point2 velocity{speed * std::cos(heading), speed * std::sin(heading)};
  for (int t = 1; t <= kPredLen; ++t) out.points.push_back(origin + (t * kFrameDt) * velocity);
  return out;
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kCvGauss: return "cv_gauss";
    case GeneratorKind::kTurnMixture: return "turn_mixture";
    case GeneratorKind::kEndpointCond: return "endpoint_cond";
  }
  return "?";
}

GeneratorKind generator_kind_from_string(std::string_view name) {
  if (name == "cv_gauss") return GeneratorKind::kCvGauss;
  if (name == "turn_mixture") return GeneratorKind::kTurnMixture;
  if (name == "endpoint_cond") return GeneratorKind::kEndpointCond;
  throw validation_error("unknown generator kind '" + std::string(name) + "'");
}

std::string_view to_string(TurnMode mode) {
  switch (mode) {
    case TurnMode::kStraight: return "straight";
    case TurnMode::kLeft: return "left";
    case TurnMode::kRight: return "right";
    case TurnMode::kUTurn: return "uturn";
  }
  return "?";
}

double ModeTable::probability(TurnMode mode) const {
  switch (mode) {
    case TurnMode::kStraight: return straight;
    case TurnMode::kLeft: return left;
    case TurnMode::kRight: return right;
    case TurnMode::kUTurn: return uturn;
  }
  return 0.0;
}

void ModeTable::validate() const {
  for (double p : {straight, left, right, uturn}) {
    if (!(p >= 0.0 && p <= 1.0)) throw validation_error("mode probabilities must lie in [0, 1]");
  }
  if (std::abs(straight + left + right + uturn - 1.0) > 1e-9) {
    throw validation_error("mode probabilities must sum to 1");
  }
}

void GeneratorSpec::validate() const {
  switch (kind) {
    case GeneratorKind::kCvGauss:
      if (latent_dim < 2) throw validation_error("cv_gauss needs latent_dim >= 2");
      break;
    case GeneratorKind::kTurnMixture:
      if (latent_dim < 1) throw validation_error("turn_mixture needs latent_dim >= 1");
      modes.validate();
      break;
    case GeneratorKind::kEndpointCond:
      if (latent_dim != 2) throw validation_error("endpoint_cond needs latent_dim == 2");
      break;
  }
  for (double g : {heading_gain, speed_gain, endpoint_gain, turn_angle, jitter_speed_gain, jitter_heading_gain}) {
    if (!std::isfinite(g)) throw validation_error("generator gains must be finite");
  }
}

std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case GeneratorKind::kCvGauss: return std::make_unique<CvGaussGenerator>(spec);
    case GeneratorKind::kTurnMixture: return std::make_unique<TurnMixtureGenerator>(spec);
    case GeneratorKind::kEndpointCond: return std::make_unique<EndpointGenerator>(spec);
  }
  throw validation_error("unknown generator kind");
}

// --- cv_gauss ---------------------------------------------------------------

CvGaussGenerator::CvGaussGenerator(const GeneratorSpec& spec)
    : dim_(spec.latent_dim), heading_gain_(spec.heading_gain), speed_gain_(spec.speed_gain) {
  if (dim_ < 2) throw validation_error("cv_gauss needs latent_dim >= 2");
}

Trajectory CvGaussGenerator::generate(const Trajectory& observed, const LatentPoint& z) const {
  check_latent(z, dim_);
  const Kinematics k = last_step(observed);
  if (k.speed == 0.0) return Trajectory{std::vector<Point2>(kPredLen, k.last)};
  return straight_line(k.last, k.speed * std::exp(speed_gain_ * z[1]), k.heading + heading_gain_ * z[0]);
}

// --- turn_mixture -------------------------------------------------------------

TurnMixtureGenerator::TurnMixtureGenerator(const GeneratorSpec& spec)
    : dim_(spec.latent_dim),
      modes_(spec.modes),
      turn_angle_(spec.turn_angle),
      jitter_speed_gain_(spec.jitter_speed_gain),
      jitter_heading_gain_(spec.jitter_heading_gain) {
  if (dim_ < 1) throw validation_error("turn_mixture needs latent_dim >= 1");
  modes_.validate();
  const double half_u = 0.5 * modes_.uturn;
  cut_uturn_low_ = quantile_or_inf(half_u);
  cut_right_ = quantile_or_inf(half_u + modes_.right);
  cut_straight_ = quantile_or_inf(half_u + modes_.right + modes_.straight);
  cut_left_ = quantile_or_inf(1.0 - half_u);
}

TurnMode TurnMixtureGenerator::mode_of(const LatentPoint& z) const {
  const double z1 = z[0];
  if (z1 < cut_uturn_low_) return TurnMode::kUTurn;
  if (z1 < cut_right_) return TurnMode::kRight;
  if (z1 < cut_straight_) return TurnMode::kStraight;
  if (z1 < cut_left_) return TurnMode::kLeft;
  return TurnMode::kUTurn;
}

Trajectory TurnMixtureGenerator::generate(const Trajectory& observed, const LatentPoint& z) const {
  check_latent(z, dim_);
  const Kinematics k = last_step(observed);
  if (k.speed == 0.0) return Trajectory{std::vector<Point2>(kPredLen, k.last)};

  double total_turn = 0.0;
  switch (mode_of(z)) {
    case TurnMode::kStraight: break;
    case TurnMode::kLeft: total_turn = turn_angle_; break;
    case TurnMode::kRight: total_turn = -turn_angle_; break;
    case TurnMode::kUTurn: total_turn = z[0] > 0.0 ? std::numbers::pi : -std::numbers::pi; break;
  }
  const double speed = k.speed * (dim_ >= 2 ? std::exp(jitter_speed_gain_ * z[1]) : 1.0);
  const double heading = k.heading + (dim_ >= 3 ? jitter_heading_gain_ * z[2] : 0.0);
  if (total_turn == 0.0) return straight_line(k.last, speed, heading);

  // Heading sweeps linearly through total_turn over the horizon.
  Trajectory out;
  out.points.reserve(kPredLen);
  Point2 p = k.last;
  for (int t = 1; t <= kPredLen; ++t) {
    const double h = heading + total_turn * static_cast<double>(t) / kPredLen;
    p = p + (speed * kFrameDt) * Point2{std::cos(h), std::sin(h)};
    out.points.push_back(p);
  }
  return out;
}

// --- endpoint_cond ------------------------------------------------------------

EndpointGenerator::EndpointGenerator(const GeneratorSpec& spec) : endpoint_gain_(spec.endpoint_gain) {}

Trajectory EndpointGenerator::generate(const Trajectory& observed, const LatentPoint& z) const {
  check_latent(z, 2);
  const Kinematics k = last_step(observed);
  const Point2 cv_end = k.last + (kPredLen * kFrameDt * k.speed) * Point2{std::cos(k.heading), std::sin(k.heading)};
  const Point2 end = cv_end + endpoint_gain_ * Point2{z[0], z[1]};
  Trajectory out;
  out.points.reserve(kPredLen);
  for (int t = 1; t <= kPredLen; ++t) {
    out.points.push_back(k.last + (static_cast<double>(t) / kPredLen) * (end - k.last));
  }
  out.points.back() = end;
  return out;
}

// --- labels -------------------------------------------------------------------

ModeLabel true_mode_of(const Scene& scene, std::int64_t agent_id, const GeneratorSpec& spec) {
  if (spec.kind != GeneratorKind::kTurnMixture) {
    throw validation_error("true_mode_of requires a turn_mixture generator, got " + std::string(to_string(spec.kind)));
  }
  for (const auto& agent : scene.agents) {
    if (agent.id != agent_id) continue;
    if (!agent.truth_latent) {
      throw validation_error("agent " + std::to_string(agent_id) + " in scene " + std::to_string(scene.id) +
                             " has no recorded truth latent");
    }
    const TurnMixtureGenerator gen(spec);
    const TurnMode mode = gen.mode_of(*agent.truth_latent);
    return {mode, spec.modes.probability(mode)};
  }
  throw validation_error("agent " + std::to_string(agent_id) + " not found in scene " + std::to_string(scene.id));
}

}  // namespace trajsampler
