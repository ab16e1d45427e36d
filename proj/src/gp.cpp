#include "invopt/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "invopt/errors.hpp"
#include "invopt/stochastic.hpp"

namespace invopt {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;  // log(2 pi)

void check_kernel(const Kernel& k, Eigen::Index dim) {
  if (k.length_scales.size() != dim)
    throw DomainError("kernel: " + std::to_string(k.length_scales.size()) + " length scales for " +
                      std::to_string(dim) + "-d inputs");
  if (!(k.signal_variance > 0.0)) throw DomainError("kernel: signal variance must be > 0");
  if ((k.length_scales.array() <= 0.0).any()) throw DomainError("kernel: length scales must be > 0");
}

Eigen::VectorXd shifted_mean(const Eigen::MatrixXd& X, double prior_mean, const MeanShift& shift) {
  Eigen::VectorXd m = Eigen::VectorXd::Constant(X.rows(), prior_mean);
  if (shift)
    for (Eigen::Index i = 0; i < X.rows(); ++i) m(i) += shift(X.row(i).transpose());
  return m;
}

}  // namespace

double Kernel::operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  if (a.size() != b.size() || a.size() != length_scales.size())
    throw DomainError("kernel: dimension mismatch");
  const double r2 = ((a - b).array() / length_scales.array()).square().sum();
  return signal_variance * std::exp(-0.5 * r2);
}

Eigen::MatrixXd Kernel::gram(const Eigen::MatrixXd& X) const {
  const Eigen::MatrixXd Z = X.array().rowwise() / length_scales.transpose().array();
  const Eigen::VectorXd sq = Z.rowwise().squaredNorm();
  Eigen::MatrixXd r2 = (-2.0 * Z * Z.transpose()).colwise() + sq;
  r2.rowwise() += sq.transpose();
  Eigen::MatrixXd K = (-0.5 * r2.array().max(0.0)).exp() * signal_variance;
  K.diagonal().setConstant(signal_variance);
  // Exact symmetry regardless of rounding in the expansion above.
  return 0.5 * (K + K.transpose());
}

Eigen::VectorXd Kernel::cross(const Eigen::MatrixXd& X, const Eigen::VectorXd& x) const {
  if (X.cols() != x.size() || x.size() != length_scales.size())
    throw DomainError("kernel: dimension mismatch");
  const Eigen::ArrayXXd diff = (X.rowwise() - x.transpose()).array().rowwise() / length_scales.transpose().array();
  return (signal_variance * (-0.5 * diff.square().rowwise().sum()).exp()).matrix();
}

double ConditioningFn::influence(const Eigen::VectorXd& x) const {
  double u = 0.0;
  for (const auto& b : beliefs) {
    if (b.center.size() != x.size()) throw DomainError("conditioning: belief dimension mismatch");
    if (!(b.width > 0.0)) throw DomainError("conditioning: belief width must be > 0");
    u += b.weight * std::exp(-(x - b.center).squaredNorm() / (2.0 * b.width * b.width));
  }
  return u;
}

GpModel::GpModel(Eigen::MatrixXd X, Eigen::VectorXd y, Kernel kernel, double noise_variance,
                 double prior_mean, MeanShift shift)
    : X_(std::move(X)),
      y_(std::move(y)),
      kernel_(std::move(kernel)),
      noise_(noise_variance),
      prior_mean_(prior_mean),
      shift_(std::move(shift)) {
  if (X_.rows() != y_.size()) throw DomainError("gp: |X| != |y|");
  if (X_.rows() < 1) throw DomainError("gp: no observations");
  if (!(noise_ >= 0.0)) throw DomainError("gp: noise variance must be >= 0");
  check_kernel(kernel_, X_.cols());

  const Eigen::MatrixXd K = kernel_.gram(X_);
  const double scale = std::max(1.0, kernel_.signal_variance);
  const Eigen::Index n = X_.rows();
  for (double jitter = 0.0;;) {
    Eigen::MatrixXd A = K;
    A.diagonal().array() += noise_ + jitter;
    chol_.compute(A);
    if (chol_.info() == Eigen::Success && (chol_.matrixLLT().diagonal().array() > 0.0).all()) {
      jitter_ = jitter;
      break;
    }
    jitter = jitter == 0.0 ? 1e-12 * scale : jitter * 10.0;
    if (jitter > 1e-2 * scale) {
      std::ostringstream msg;
      msg << "gp: covariance not positive definite after jitter escalation (n=" << n
          << ", signal_variance=" << kernel_.signal_variance << ", noise=" << noise_
          << ", min length scale=" << kernel_.length_scales.minCoeff() << ")";
      throw NumericalError(msg.str());
    }
  }
  const Eigen::VectorXd resid = y_ - shifted_mean(X_, prior_mean_, shift_);
  alpha_ = chol_.solve(resid);
  const double log_det = 2.0 * chol_.matrixLLT().diagonal().array().log().sum();
  lml_ = -0.5 * resid.dot(alpha_) - 0.5 * log_det - 0.5 * static_cast<double>(n) * kLog2Pi;
}

double GpModel::prior_mean_at(const Eigen::VectorXd& x) const {
  return prior_mean_ + (shift_ ? shift_(x) : 0.0);
}

GpPosterior GpModel::posterior(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd k = kernel_.cross(X_, x);
  GpPosterior p;
  p.mean = prior_mean_at(x) + k.dot(alpha_);
  const Eigen::VectorXd v = chol_.matrixL().solve(k);
  p.variance = std::max(0.0, kernel_.signal_variance - v.squaredNorm());
  return p;
}

namespace {

// Log marginal likelihood and its gradient in
// theta = (log signal variance, log length scales..., log noise).
struct LmlObjective {
  const Eigen::MatrixXd& X;
  Eigen::VectorXd resid;
  std::vector<Eigen::MatrixXd> sq_dist;  // per-dimension squared differences

  LmlObjective(const Eigen::MatrixXd& X_, const Eigen::VectorXd& r) : X(X_), resid(r) {
    const Eigen::Index n = X.rows();
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      Eigen::MatrixXd D(n, n);
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
          const double d = X(a, j) - X(b, j);
          D(a, b) = d * d;
        }
      sq_dist.push_back(std::move(D));
    }
  }

  std::optional<double> operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const {
    const Eigen::Index d = X.cols();
    const Eigen::Index n = X.rows();
    Kernel k;
    k.signal_variance = std::exp(theta(0));
    k.length_scales = theta.segment(1, d).array().exp();
    const double noise = std::exp(theta(d + 1));
    const Eigen::MatrixXd Kf = k.gram(X);
    Eigen::MatrixXd K = Kf;
    K.diagonal().array() += noise;
    const Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const Eigen::VectorXd a = llt.solve(resid);
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    if (!std::isfinite(log_det)) return std::nullopt;
    const double value = -0.5 * resid.dot(a) - 0.5 * log_det - 0.5 * static_cast<double>(n) * kLog2Pi;
    const Eigen::MatrixXd W = a * a.transpose() - llt.solve(Eigen::MatrixXd::Identity(n, n));
    grad.resize(d + 2);
    const Eigen::MatrixXd WK = W.cwiseProduct(Kf);
    grad(0) = 0.5 * WK.sum();
    for (Eigen::Index j = 0; j < d; ++j) {
      const double l2 = k.length_scales(j) * k.length_scales(j);
      grad(1 + j) = 0.5 * WK.cwiseProduct(sq_dist[static_cast<std::size_t>(j)]).sum() / l2;
    }
    grad(d + 1) = 0.5 * noise * W.trace();
    if (!std::isfinite(value) || !grad.allFinite()) return std::nullopt;
    return value;
  }
};

struct LogBox {
  Eigen::VectorXd lo, hi;
  Eigen::VectorXd clamp(const Eigen::VectorXd& t) const { return t.cwiseMax(lo).cwiseMin(hi); }
};

// Projected gradient ascent with Armijo backtracking and Barzilai-Borwein steps.
std::optional<std::pair<Eigen::VectorXd, double>> ascend(const LmlObjective& f, const LogBox& box,
                                                         Eigen::VectorXd theta, int max_iterations) {
  theta = box.clamp(theta);
  Eigen::VectorXd g;
  auto value = f(theta, g);
  if (!value) return std::nullopt;
  double step = 0.5 / std::max(1.0, g.lpNorm<Eigen::Infinity>());
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd next, g_next;
    std::optional<double> v_next;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      next = box.clamp(theta + step * g);
      if ((next - theta).lpNorm<Eigen::Infinity>() < 1e-12) break;
      v_next = f(next, g_next);
      if (v_next && *v_next >= *value + 1e-4 * g.dot(next - theta)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd s = next - theta;
    const Eigen::VectorXd yv = g_next - g;
    const double moved = s.lpNorm<Eigen::Infinity>();
    const double gain = *v_next - *value;
    theta = next;
    g = g_next;
    value = v_next;
    if (moved < 1e-7 || gain < 1e-10 * std::max(1.0, std::fabs(*value))) break;
    const double sy = s.dot(yv);
    step = sy < 0.0 ? std::clamp(-s.squaredNorm() / sy, 1e-8, 1e3) : std::min(step * 2.0, 1e3);
  }
  return std::make_pair(theta, *value);
}

}  // namespace

GpModel gp_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const GpFitOptions& options) {
  if (X.rows() != y.size()) throw DomainError("gp_fit: |X| != |y|");
  if (X.rows() < 2) throw DomainError("gp_fit: need at least 2 observations");
  const auto& b = options.bounds;
  if (!(b.length_scale_lo > 0 && b.length_scale_lo <= b.length_scale_hi && b.signal_variance_lo > 0 &&
        b.signal_variance_lo <= b.signal_variance_hi && b.noise_variance_lo > 0 &&
        b.noise_variance_lo <= b.noise_variance_hi))
    throw DomainError("gp_fit: invalid hyperparameter bounds");

  const Eigen::Index d = X.cols();
  const Eigen::VectorXd resid = y - shifted_mean(X, options.prior_mean, options.shift);
  const LmlObjective objective(X, resid);

  LogBox box;
  box.lo.resize(d + 2);
  box.hi.resize(d + 2);
  box.lo(0) = std::log(b.signal_variance_lo);
  box.hi(0) = std::log(b.signal_variance_hi);
  box.lo.segment(1, d).setConstant(std::log(b.length_scale_lo));
  box.hi.segment(1, d).setConstant(std::log(b.length_scale_hi));
  box.lo(d + 1) = std::log(b.noise_variance_lo);
  box.hi(d + 1) = std::log(b.noise_variance_hi);

  std::vector<Eigen::VectorXd> starts;
  Eigen::VectorXd first(d + 2);
  if (options.warm_start && options.warm_start->length_scales.size() == d) {
    first(0) = std::log(options.warm_start->signal_variance);
    first.segment(1, d) = options.warm_start->length_scales.array().log();
    first(d + 1) = std::log(std::max(options.warm_noise, b.noise_variance_lo));
  } else {
    const double var = std::max(1e-12, (resid.array() - resid.mean()).square().mean());
    first(0) = std::log(var);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double range = X.col(j).maxCoeff() - X.col(j).minCoeff();
      first(1 + j) = std::log(range > 0.0 ? 0.3 * range : 1.0);
    }
    first(d + 1) = std::log(1e-4 * var);
  }
  starts.push_back(box.clamp(first));
  for (int r = 1; r < std::max(1, options.restarts); ++r) {
    RngStream rng(options.seed, static_cast<std::uint64_t>(r));
    Eigen::VectorXd t(d + 2);
    for (Eigen::Index i = 0; i < d + 2; ++i) t(i) = box.lo(i) + rng.uniform() * (box.hi(i) - box.lo(i));
    // Keep random starts away from the extreme noise end, where the surface is flat.
    t(d + 1) = std::min(t(d + 1), std::log(std::max(b.noise_variance_lo, 1e-2 * b.noise_variance_hi)));
    starts.push_back(t);
  }

  std::optional<std::pair<Eigen::VectorXd, double>> best;
  for (const auto& s : starts) {
    auto r = ascend(objective, box, s, options.max_iterations);
    if (r && (!best || r->second > best->second)) best = std::move(r);
  }
  if (!best) throw NumericalError("gp_fit: no hyperparameter start gave a factorizable covariance");

  Kernel k;
  k.signal_variance = std::exp(best->first(0));
  k.length_scales = best->first.segment(1, d).array().exp();
  return GpModel(X, y, k, std::exp(best->first(d + 1)), options.prior_mean, options.shift);
}

}  // namespace invopt
