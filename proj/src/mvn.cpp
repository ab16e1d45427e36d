#include "invopt/mvn.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "invopt/errors.hpp"

namespace invopt {

MvnConditional condition_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                             const std::map<int, double>& observed) {
  const auto d = static_cast<int>(mean.size());
  if (cov.rows() != d || cov.cols() != d) throw DomainError("condition_mvn: covariance must be d x d");
  if (observed.empty() || static_cast<int>(observed.size()) >= d)
    throw DomainError("condition_mvn: observed set must be a non-empty proper subset");
  std::vector<int> a, b;
  for (const auto& [i, v] : observed) {
    if (i < 0 || i >= d) throw DomainError("condition_mvn: index " + std::to_string(i) + " out of range");
    if (!std::isfinite(v)) throw DomainError("condition_mvn: observed value must be finite");
    b.push_back(i);
  }
  for (int i = 0; i < d; ++i)
    if (!observed.contains(i)) a.push_back(i);

  const auto na = static_cast<Eigen::Index>(a.size());
  const auto nb = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd Saa(na, na), Sab(na, nb), Sbb(nb, nb);
  Eigen::VectorXd mu_a(na), r(nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    mu_a(i) = mean(a[i]);
    for (Eigen::Index j = 0; j < na; ++j) Saa(i, j) = cov(a[i], a[j]);
    for (Eigen::Index j = 0; j < nb; ++j) Sab(i, j) = cov(a[i], b[j]);
  }
  for (Eigen::Index i = 0; i < nb; ++i) {
    r(i) = observed.at(b[i]) - mean(b[i]);
    for (Eigen::Index j = 0; j < nb; ++j) Sbb(i, j) = cov(b[i], b[j]);
  }

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(Sbb);
  const double scale = std::max(1.0, Sbb.diagonal().cwiseAbs().maxCoeff());
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-14 * scale)
    throw NumericalError("condition_mvn: observed block of the covariance is singular; add a nugget");

  MvnConditional out;
  out.indices = a;
  out.mean = mu_a + Sab * ldlt.solve(r);
  const Eigen::MatrixXd C = Saa - Sab * ldlt.solve(Sab.transpose());
  out.cov = 0.5 * (C + C.transpose());
  return out;
}

double mvn_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw NumericalError("mvn_density: covariance not positive definite");
  const Eigen::VectorXd z = llt.matrixL().solve(x - mean);
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  const auto d = static_cast<double>(x.size());
  return std::exp(-0.5 * z.squaredNorm() - 0.5 * log_det - 0.5 * d * std::log(2.0 * std::numbers::pi));
}

}  // namespace invopt
