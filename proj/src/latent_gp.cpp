#include "trajsampler/latent_gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "trajsampler/error.hpp"

namespace trajsampler {

namespace {

constexpr double kInitialJitter = 1e-6;
constexpr double kMaxJitter = 1e-2;

void check_dims(int expected, int got) {
  if (expected != got) {
    throw validation_error("latent dimension mismatch: expected " + std::to_string(expected) + ", got " +
                           std::to_string(got));
  }
}

double squared_distance(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) {
  return (a - b).squaredNorm();
}

}  // namespace

void KernelConfig::validate() const {
  if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) {
    throw validation_error("kernel lengthscale must be positive and finite");
  }
  if (!(signal_variance > 0.0) || !std::isfinite(signal_variance)) {
    throw validation_error("kernel signal variance must be positive and finite");
  }
}

double kernel_eval(const LatentPoint& z, const LatentPoint& z_prime, const KernelConfig& cfg) {
  check_dims(z.dim(), z_prime.dim());
  cfg.validate();
  const double r2 = squared_distance(z.coords(), z_prime.coords());
  return cfg.signal_variance * std::exp(-r2 / (2.0 * cfg.lengthscale * cfg.lengthscale));
}

namespace {

template <typename Matrix>
bool cholesky_in_place(Matrix& a) {
  using Scalar = typename Matrix::Scalar;
  const Eigen::Index n = a.rows();
  Scalar max_diag = 0;
  for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  const Scalar tol = static_cast<Scalar>(n) * std::numeric_limits<Scalar>::epsilon() * max_diag;

  for (Eigen::Index j = 0; j < n; ++j) {
    Scalar pivot = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= a(j, k) * a(j, k);
    if (!(pivot > tol)) return false;
    const Scalar ljj = std::sqrt(pivot);
    a(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Scalar v = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / ljj;
    }
  }
  a.template triangularView<Eigen::StrictlyUpper>().setZero();
  return true;
}

long double kernel_ld(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b,
                      const KernelConfig& cfg) {
  long double r2 = 0;
  for (Eigen::Index c = 0; c < a.size(); ++c) {
    const long double t = static_cast<long double>(a[c]) - b[c];
    r2 += t * t;
  }
  const long double l = cfg.lengthscale;
  return cfg.signal_variance * std::exp(-r2 / (2 * l * l));
}

}  // namespace

bool cholesky_lower(Eigen::MatrixXd& a) { return cholesky_in_place(a); }
bool cholesky_lower(MatrixXld& a) { return cholesky_in_place(a); }

GPState fit_gp(std::vector<ScoredSample> samples, const KernelConfig& cfg, double noise_variance,
               double prior_mean) {
  cfg.validate();
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
    throw validation_error("noise variance must be a finite nonnegative number");
  }
  if (!std::isfinite(prior_mean)) throw validation_error("prior mean must be finite");

  GPState state;
  state.kernel_ = cfg;
  state.noise_variance_ = noise_variance;
  state.effective_noise_ = noise_variance;
  state.prior_mean_ = prior_mean;

  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n == 0) return state;

  const int d = samples.front().z.dim();
  state.dim_ = d;
  state.inputs_.resize(n, d);
  VectorXld centered(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    check_dims(d, samples[i].z.dim());
    if (!std::isfinite(samples[i].score)) throw validation_error("scored sample has a non-finite score");
    state.inputs_.row(i) = samples[i].z.coords().transpose();
    centered[i] = static_cast<long double>(samples[i].score) - prior_mean;
  }

  MatrixXld gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = cfg.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      const long double k = kernel_ld(state.inputs_.row(i).transpose(), state.inputs_.row(j).transpose(), cfg);
      gram(i, j) = k;
      gram(j, i) = k;
    }
  }

  double extra = 0.0;
  while (true) {
    MatrixXld factor = gram;
    factor.diagonal().array() += static_cast<long double>(noise_variance + extra);
    if (cholesky_lower(factor)) {
      state.chol_ = std::move(factor);
      state.effective_noise_ = noise_variance + extra;
      break;
    }
    extra = extra == 0.0 ? kInitialJitter : extra * 10.0;
    if (extra > kMaxJitter * (1.0 + 1e-9)) {
      throw Error(ErrorKind::kNumerical, "kernel matrix not PSD");
    }
  }

  state.alpha_ = state.chol_.triangularView<Eigen::Lower>().solve(centered);
  state.chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(state.alpha_);
  state.observations_ = std::move(samples);
  return state;
}

PosteriorMoment posterior(const GPState& state, const LatentPoint& z) {
  const KernelConfig& cfg = state.kernel_;
  const Eigen::Index n = static_cast<Eigen::Index>(state.observations_.size());
  if (n == 0) return {state.prior_mean_, cfg.signal_variance};
  check_dims(state.dim_, z.dim());

  VectorXld k(n);
  for (Eigen::Index i = 0; i < n; ++i) k[i] = kernel_ld(state.inputs_.row(i).transpose(), z.coords(), cfg);
  const long double mean = state.prior_mean_ + k.dot(state.alpha_);
  const VectorXld v = state.chol_.triangularView<Eigen::Lower>().solve(k);
  const long double variance = cfg.signal_variance - v.squaredNorm();
  return {static_cast<double>(mean), std::max(0.0, static_cast<double>(variance))};
}

SurrogatePrior surrogate_prior_from_warmup(std::span<const ScoredSample> warmup) {
  SurrogatePrior prior;
  const std::size_t n = warmup.size();

  if (n >= 2) {
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        dists.push_back((warmup[i].z.coords() - warmup[j].z.coords()).norm());
      }
    }
    const std::size_t mid = dists.size() / 2;
    std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid), dists.end());
    double median = dists[mid];
    if (dists.size() % 2 == 0) {
      const double lower = *std::max_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid));
      median = 0.5 * (median + lower);
    }
    if (median > 0.0 && std::isfinite(median)) prior.kernel.lengthscale = median;
  }

  if (n >= 1) {
    double sum = 0.0;
    for (const auto& s : warmup) sum += s.score;
    prior.prior_mean = sum / static_cast<double>(n);
  }
  if (n >= 2) {
    double ss = 0.0;
    for (const auto& s : warmup) ss += (s.score - prior.prior_mean) * (s.score - prior.prior_mean);
    const double var = ss / static_cast<double>(n - 1);
    if (var > 1e-12 && std::isfinite(var)) prior.kernel.signal_variance = var;
  }
  return prior;
}

}  // namespace trajsampler
