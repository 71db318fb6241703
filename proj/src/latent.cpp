#include "trajsampler/latent.hpp"

#include <cmath>
#include <string>

#include "trajsampler/error.hpp"

namespace trajsampler {

LatentPoint::LatentPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw validation_error("latent point needs at least one coordinate");
  if (!coords_.allFinite()) throw validation_error("latent point has a non-finite coordinate");
}

LatentPoint::LatentPoint(std::initializer_list<double> coords)
    : LatentPoint(Eigen::Map<const Eigen::VectorXd>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

LatentPoint LatentPoint::zeros(int dim) { return LatentPoint(Eigen::VectorXd::Zero(dim)); }

bool operator==(const LatentPoint& a, const LatentPoint& b) {
  if (a.coords_.size() != b.coords_.size()) return false;
  for (Eigen::Index i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i] != b.coords_[i]) return false;
  }
  return true;
}

LatentPrior::LatentPrior(int dim, PriorKind kind) : dim_(dim), kind_(kind) {
  if (dim < 1) throw validation_error("latent prior dimension must be >= 1, got " + std::to_string(dim));
}

LatentPoint LatentPrior::mode() const { return LatentPoint::zeros(dim_); }

std::vector<LatentPoint> LatentPrior::draw(std::size_t n, Rng& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<LatentPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd z(dim_);
    for (int j = 0; j < dim_; ++j) z[j] = normal(rng);
    out.emplace_back(std::move(z));
  }
  return out;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(base);
  for (auto k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace trajsampler
