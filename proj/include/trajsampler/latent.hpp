#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace trajsampler {

/// Session random stream. Every sampler draws from one of these so that a
/// (seed, scene, agent) triple fully determines a session.
using Rng = std::mt19937_64;

/// A latent code z in R^d. Always d >= 1 with finite coordinates.
class LatentPoint {
 public:
  LatentPoint() = default;
  explicit LatentPoint(Eigen::VectorXd coords);
  LatentPoint(std::initializer_list<double> coords);

  static LatentPoint zeros(int dim);

  int dim() const { return static_cast<int>(coords_.size()); }
  const Eigen::VectorXd& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }
  double norm() const { return coords_.norm(); }

  /// Bitwise comparison of coordinates.
  friend bool operator==(const LatentPoint& a, const LatentPoint& b);

 private:
  Eigen::VectorXd coords_;
};

enum class PriorKind { kStandardNormal };

/// Prior over latent codes. Only the isotropic standard normal is supported;
/// its mode is the zero vector.
class LatentPrior {
 public:
  explicit LatentPrior(int dim, PriorKind kind = PriorKind::kStandardNormal);

  int dim() const { return dim_; }
  PriorKind kind() const { return kind_; }
  LatentPoint mode() const;

  /// n i.i.d. draws, consumed from rng in order (coordinate-major per point).
  std::vector<LatentPoint> draw(std::size_t n, Rng& rng) const;

 private:
  int dim_;
  PriorKind kind_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives a stream seed from a base seed and a list of keys
/// (repeat, scene id, agent id, ...). Order of keys matters.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys);

}  // namespace trajsampler
