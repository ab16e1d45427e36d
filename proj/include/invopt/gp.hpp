#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace invopt {

// Squared-exponential kernel with one length scale per input dimension:
// k(x, x') = s^2 exp(-1/2 sum_i ((x_i - x'_i) / l_i)^2).
struct Kernel {
  double signal_variance = 1.0;
  Eigen::VectorXd length_scales;

  double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  // Rows of X are points.
  Eigen::MatrixXd gram(const Eigen::MatrixXd& X) const;
  Eigen::VectorXd cross(const Eigen::MatrixXd& X, const Eigen::VectorXd& x) const;
};

// A prior-belief bump w * exp(-|x - c|^2 / (2 s^2)).
struct PriorBelief {
  Eigen::VectorXd center;
  double width = 1.0;
  double weight = 1.0;
};

// kappa(x) = alpha * u(x), u a sum of prior-belief bumps. Zero without beliefs.
struct ConditioningFn {
  double alpha = 0.0;
  std::vector<PriorBelief> beliefs;

  double influence(const Eigen::VectorXd& x) const;
  double operator()(const Eigen::VectorXd& x) const { return alpha * influence(x); }
};

// Additive shift of the constant prior mean; an empty function means no shift.
using MeanShift = std::function<double(const Eigen::VectorXd&)>;

struct GpPosterior {
  double mean = 0.0;
  double variance = 0.0;
};

// Exact GP regression with a cached Cholesky factor of K + noise I.
// Prior mean m_c(x) = prior_mean + shift(x). Immutable once built.
class GpModel {
 public:
  GpModel(Eigen::MatrixXd X, Eigen::VectorXd y, Kernel kernel, double noise_variance,
          double prior_mean = 0.0, MeanShift shift = {});

  GpPosterior posterior(const Eigen::VectorXd& x) const;
  double prior_mean_at(const Eigen::VectorXd& x) const;
  double log_marginal_likelihood() const { return lml_; }

  const Eigen::MatrixXd& inputs() const noexcept { return X_; }
  const Eigen::VectorXd& outputs() const noexcept { return y_; }
  const Kernel& kernel() const noexcept { return kernel_; }
  double noise_variance() const noexcept { return noise_; }
  // Extra diagonal added on top of noise_variance to make the factorization succeed.
  double jitter() const noexcept { return jitter_; }
  int dimension() const noexcept { return static_cast<int>(X_.cols()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(X_.rows()); }

 private:
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  Kernel kernel_;
  double noise_;
  double prior_mean_;
  MeanShift shift_;
  double jitter_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd alpha_;
  double lml_ = 0.0;
};

struct HyperparameterBounds {
  double length_scale_lo = 1e-3, length_scale_hi = 10.0;
  double signal_variance_lo = 1e-6, signal_variance_hi = 10.0;
  double noise_variance_lo = 1e-10, noise_variance_hi = 1.0;
};

struct GpFitOptions {
  HyperparameterBounds bounds;
  int restarts = 8;
  int max_iterations = 150;
  std::uint64_t seed = 0;
  double prior_mean = 0.0;
  MeanShift shift;
  // Optional first starting point (e.g. the previous fit in a BO loop).
  const Kernel* warm_start = nullptr;
  double warm_noise = 1e-4;
};

// Maximises the log marginal likelihood over (signal variance, length scales,
// noise) in log space by multi-start projected gradient ascent inside the bounds.
// Throws DomainError on shape errors and NumericalError if no start can be factorised.
GpModel gp_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const GpFitOptions& options = {});

}  // namespace invopt
