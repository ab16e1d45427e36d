#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

namespace invopt {

struct MvnConditional {
  std::vector<int> indices;  // unobserved components, ascending
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

// Distribution of the unobserved components of N(mean, cov) given the
// observed ones (index -> value), via the Schur complement of cov_bb.
// Throws DomainError on bad indices or shapes, NumericalError if cov_bb is
// singular (add a small nugget to its diagonal).
MvnConditional condition_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                             const std::map<int, double>& observed);

// Density of N(mean, cov) at x.
double mvn_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov);

}  // namespace invopt
