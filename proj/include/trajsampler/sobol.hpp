#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace trajsampler {

/// Unscrambled Sobol sequence with Joe-Kuo (new-joe-kuo-6.21201) direction
/// numbers, generated in Gray-code order. Supports up to kMaxDim dimensions
/// and 2^32 - 1 points.
class SobolSequence {
 public:
  static constexpr int kMaxDim = 32;
  static constexpr int kBits = 32;

  explicit SobolSequence(int dim);

  int dim() const { return dim_; }

  /// Next point in [0,1)^d. The first call returns the all-zeros point.
  std::vector<double> next();

  /// Discards the next n points.
  void skip(std::uint64_t n);

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<std::array<std::uint32_t, kBits>> directions_;
  std::vector<std::uint32_t> state_;
};

/// The first n points after the all-zeros point.
std::vector<std::vector<double>> sobol_points(std::size_t n, int dim);

}  // namespace trajsampler
