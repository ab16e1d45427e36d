#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "invopt/gp.hpp"

namespace invopt {

struct Bound {
  double lo = 0.0;
  double hi = 1.0;
};

enum class Direction { Maximize, Minimize };
enum class Acquisition { EI, PI };

// Closed-form EI from a posterior (mu, sigma). sigma = 0 gives the plain improvement.
double expected_improvement(double mu, double sigma, double f_best, Direction direction);
double expected_improvement(const GpModel& model, const Eigen::VectorXd& x, double f_best,
                            Direction direction);
// Phi(z), with z the standardized improvement.
double probability_of_improvement(double mu, double sigma, double f_best, Direction direction);
double probability_of_improvement(const GpModel& model, const Eigen::VectorXd& x, double f_best,
                                  Direction direction);

double acquisition_value(const GpModel& model, const Eigen::VectorXd& x, double f_best,
                         Acquisition acquisition, Direction direction);

// Scrambled (randomly shifted) Sobol points inside the box; rows are points.
Eigen::MatrixXd candidate_set(const std::vector<Bound>& box, int count, std::uint64_t seed);

// Latin hypercube: one point per stratum in every dimension, rows are points.
Eigen::MatrixXd latin_hypercube(const std::vector<Bound>& box, int count, std::uint64_t seed);

struct ProposalOptions {
  Acquisition acquisition = Acquisition::EI;
  Direction direction = Direction::Maximize;
  int candidates = 512;
  int refine_top = 8;
  std::uint64_t seed = 0;
  // Extra local-refinement starts (e.g. the incumbent).
  std::vector<Eigen::VectorXd> extra_starts;
};

struct Proposal {
  Eigen::VectorXd x;
  double acquisition = 0.0;
  bool fallback = false;  // acquisition was zero everywhere; highest-mean candidate used
};

// Maximizes the acquisition over the box: scores the candidate set, refines the
// best few by compass search, returns the best point that is not a repeat of
// an existing observation. Ties within 1e-12 go to the lexicographically
// lowest point.
Proposal propose_next(const GpModel& model, const std::vector<Bound>& box, double f_best,
                      const ProposalOptions& options);

struct BoConfig {
  std::vector<Bound> bounds;
  int budget = 40;
  int initial_design = 8;
  Acquisition acquisition = Acquisition::EI;
  Direction direction = Direction::Maximize;
  std::uint64_t seed = 0;
  std::uint64_t objective_seed = 0;
  int candidates = 512;
  int refine_top = 8;

  void validate() const;  // throws ConfigError
};

// Objective evaluated at x; the seed is passed through unchanged on every call.
using Objective = std::function<double(std::span<const double> x, std::uint64_t seed)>;

struct BoStep {
  int iteration = 0;  // 0-based evaluation index
  std::vector<double> x;
  double y = 0.0;
  double incumbent = 0.0;
  bool initial = true;
  double acquisition = 0.0;  // value at proposal; 0 for the initial design
};

// Fitted surrogate in the caller's coordinates and units.
class Surrogate {
 public:
  Surrogate(GpModel model, std::vector<Bound> box, double center, double scale);

  // Conditioned posterior of the objective at x.
  GpPosterior predict(std::span<const double> x) const;
  const GpModel& model() const noexcept { return model_; }

 private:
  GpModel model_;
  std::vector<Bound> box_;
  double center_;
  double scale_;
};

struct BoResult {
  std::vector<double> best_x;
  double best_y = 0.0;
  std::vector<BoStep> history;
  bool aborted = false;
  std::string abort_reason;
  std::optional<Surrogate> surrogate;  // last fit; empty when no fit was made
};

// Initial Latin-hypercube design, then fit / propose / evaluate until the budget
// is spent. The optional conditioning function shifts the GP prior mean.
// An objective that throws or returns a non-finite value ends the run with
// aborted = true and the partial history.
BoResult bo_run(const Objective& objective, const BoConfig& cfg,
                const std::optional<ConditioningFn>& conditioning = std::nullopt);

}  // namespace invopt
