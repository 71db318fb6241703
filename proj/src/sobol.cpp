#include "trajsampler/sobol.hpp"

#include <bit>
#include <string>

#include "trajsampler/error.hpp"

namespace trajsampler {

namespace {

struct Primitive {
  int degree;
  std::uint32_t coeffs;
  std::uint32_t m[7];
};

// Dimensions 2..32; dimension 1 uses m_k = 1 for every k.
constexpr Primitive kJoeKuo[SobolSequence::kMaxDim - 1] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
    {7, 7, {1, 1, 3, 13, 7, 35, 63}},
    {7, 8, {1, 3, 5, 9, 1, 25, 53}},
    {7, 14, {1, 3, 1, 13, 9, 35, 107}},
    {7, 19, {1, 3, 1, 5, 27, 61, 31}},
    {7, 21, {1, 1, 5, 11, 19, 41, 61}},
    {7, 28, {1, 3, 5, 3, 3, 13, 69}},
    {7, 31, {1, 1, 7, 13, 1, 19, 1}},
    {7, 32, {1, 3, 7, 5, 13, 19, 59}},
    {7, 37, {1, 1, 3, 9, 25, 29, 41}},
    {7, 41, {1, 3, 5, 13, 23, 1, 55}},
    {7, 42, {1, 3, 7, 3, 13, 59, 17}},
};

constexpr double kScale = 1.0 / 4294967296.0;  // 2^-32

}  // namespace

SobolSequence::SobolSequence(int dim) : dim_(dim), directions_(static_cast<std::size_t>(dim)), state_(dim, 0u) {
  if (dim < 1 || dim > kMaxDim) {
    throw validation_error("Sobol dimension must be in [1, " + std::to_string(kMaxDim) + "], got " +
                           std::to_string(dim));
  }
  for (int k = 0; k < kBits; ++k) directions_[0][k] = 1u << (kBits - 1 - k);

  for (int j = 1; j < dim; ++j) {
    const Primitive& p = kJoeKuo[j - 1];
    auto& v = directions_[j];
    const int s = p.degree;
    for (int k = 0; k < s && k < kBits; ++k) v[k] = p.m[k] << (kBits - 1 - k);
    for (int k = s; k < kBits; ++k) {
      std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
      for (int i = 1; i < s; ++i) {
        if ((p.coeffs >> (s - 1 - i)) & 1u) value ^= v[k - i];
      }
      v[k] = value;
    }
  }
}

std::vector<double> SobolSequence::next() {
  std::vector<double> point(dim_);
  for (int j = 0; j < dim_; ++j) point[j] = static_cast<double>(state_[j]) * kScale;
  // Gray-code update: flip the direction number indexed by the lowest zero bit.
  const int c = std::countr_one(index_);
  if (c >= kBits) throw validation_error("Sobol sequence exhausted");
  for (int j = 0; j < dim_; ++j) state_[j] ^= directions_[j][c];
  ++index_;
  return point;
}

void SobolSequence::skip(std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) next();
}

std::vector<std::vector<double>> sobol_points(std::size_t n, int dim) {
  SobolSequence seq(dim);
  seq.skip(1);
  std::vector<std::vector<double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(seq.next());
  return out;
}

}  // namespace trajsampler
