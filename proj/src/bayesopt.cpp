#include "invopt/bayesopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/random/sobol.hpp>

#include "invopt/errors.hpp"
#include "invopt/stochastic.hpp"

namespace invopt {

namespace {

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double improvement(double mu, double f_best, Direction direction) {
  return direction == Direction::Maximize ? mu - f_best : f_best - mu;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

void check_box(const std::vector<Bound>& box) {
  if (box.empty()) throw ConfigError("bounds: at least one dimension required");
  for (std::size_t i = 0; i < box.size(); ++i)
    if (!(std::isfinite(box[i].lo) && std::isfinite(box[i].hi) && box[i].lo < box[i].hi))
      throw ConfigError("bounds: dimension " + std::to_string(i) + " needs finite lo < hi");
}

Eigen::VectorXd from_unit(const Eigen::VectorXd& u, const std::vector<Bound>& box) {
  Eigen::VectorXd x(u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    const auto& b = box[static_cast<std::size_t>(j)];
    x(j) = std::clamp(b.lo + u(j) * (b.hi - b.lo), b.lo, b.hi);
  }
  return x;
}

Eigen::VectorXd clamp_to(const Eigen::VectorXd& x, const std::vector<Bound>& box) {
  Eigen::VectorXd y = x;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    y(i) = std::clamp(y(i), box[static_cast<std::size_t>(i)].lo, box[static_cast<std::size_t>(i)].hi);
  return y;
}

struct Scored {
  Eigen::VectorXd x;
  double value = 0.0;
};

// Compass search on the acquisition, step sizes relative to each box side.
Scored compass_refine(const std::function<double(const Eigen::VectorXd&)>& f, Scored start,
                      const std::vector<Bound>& box) {
  const Eigen::Index d = start.x.size();
  double frac = 0.05;
  int evaluations = 0;
  while (frac > 1e-7 && evaluations < 400) {
    bool improved = false;
    for (Eigen::Index i = 0; i < d && !improved; ++i) {
      const double side = box[static_cast<std::size_t>(i)].hi - box[static_cast<std::size_t>(i)].lo;
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd x = start.x;
        x(i) += sign * frac * side;
        x = clamp_to(x, box);
        if (x == start.x) continue;
        const double v = f(x);
        ++evaluations;
        if (v > start.value) {
          start = {std::move(x), v};
          improved = true;
          break;
        }
      }
    }
    if (!improved) frac *= 0.5;
  }
  return start;
}

}  // namespace

double expected_improvement(double mu, double sigma, double f_best, Direction direction) {
  const double imp = improvement(mu, f_best, direction);
  if (!(sigma > 0.0)) return std::max(imp, 0.0);
  const double z = imp / sigma;
  return std::max(0.0, imp * norm_cdf(z) + sigma * norm_pdf(z));
}

double expected_improvement(const GpModel& model, const Eigen::VectorXd& x, double f_best,
                            Direction direction) {
  const auto p = model.posterior(x);
  return expected_improvement(p.mean, std::sqrt(p.variance), f_best, direction);
}

double probability_of_improvement(double mu, double sigma, double f_best, Direction direction) {
  const double imp = improvement(mu, f_best, direction);
  if (!(sigma > 0.0)) return imp > 0.0 ? 1.0 : 0.0;
  return norm_cdf(imp / sigma);
}

double probability_of_improvement(const GpModel& model, const Eigen::VectorXd& x, double f_best,
                                  Direction direction) {
  const auto p = model.posterior(x);
  return probability_of_improvement(p.mean, std::sqrt(p.variance), f_best, direction);
}

double acquisition_value(const GpModel& model, const Eigen::VectorXd& x, double f_best,
                         Acquisition acquisition, Direction direction) {
  return acquisition == Acquisition::EI ? expected_improvement(model, x, f_best, direction)
                                        : probability_of_improvement(model, x, f_best, direction);
}

Eigen::MatrixXd candidate_set(const std::vector<Bound>& box, int count, std::uint64_t seed) {
  check_box(box);
  if (count < 1) throw ConfigError("candidate count must be >= 1");
  const auto d = static_cast<unsigned>(box.size());
  boost::random::sobol gen(d);
  const double span = static_cast<double>(gen.max()) + 1.0;
  RngStream rng(seed, 0x5eed);
  std::vector<double> shift(d);
  for (auto& s : shift) s = rng.uniform();
  Eigen::MatrixXd C(count, d);
  for (int i = 0; i < count; ++i)
    for (unsigned j = 0; j < d; ++j) {
      double u = static_cast<double>(gen()) / span + shift[j];
      u -= std::floor(u);
      C(i, j) = box[j].lo + u * (box[j].hi - box[j].lo);
    }
  return C;
}

Eigen::MatrixXd latin_hypercube(const std::vector<Bound>& box, int count, std::uint64_t seed) {
  check_box(box);
  if (count < 1) throw ConfigError("design size must be >= 1");
  const auto d = box.size();
  RngStream rng(seed, 0x1a7);
  Eigen::MatrixXd D(count, static_cast<Eigen::Index>(d));
  std::vector<int> perm(static_cast<std::size_t>(count));
  for (std::size_t j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = count - 1; i > 0; --i) {
      const auto k = static_cast<int>(rng.uniform() * (i + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(std::min(k, i))]);
    }
    for (int i = 0; i < count; ++i) {
      const double u = (perm[static_cast<std::size_t>(i)] + rng.uniform()) / count;
      D(i, static_cast<Eigen::Index>(j)) = box[j].lo + u * (box[j].hi - box[j].lo);
    }
  }
  return D;
}

Proposal propose_next(const GpModel& model, const std::vector<Bound>& box, double f_best,
                      const ProposalOptions& options) {
  check_box(box);
  if (static_cast<int>(box.size()) != model.dimension())
    throw DomainError("propose_next: box dimension does not match the model");
  const auto acq = [&](const Eigen::VectorXd& x) {
    return acquisition_value(model, x, f_best, options.acquisition, options.direction);
  };

  const Eigen::MatrixXd C = candidate_set(box, options.candidates, options.seed);
  std::vector<Scored> pool;
  pool.reserve(static_cast<std::size_t>(C.rows()) + options.extra_starts.size());
  for (Eigen::Index i = 0; i < C.rows(); ++i) {
    Eigen::VectorXd x = C.row(i).transpose();
    const double v = acq(x);
    pool.push_back({std::move(x), v});
  }
  const auto better = [](const Scored& a, const Scored& b) {
    if (a.value != b.value) return a.value > b.value;
    return lex_less(a.x, b.x);
  };

  const double max_raw =
      std::max_element(pool.begin(), pool.end(), [](const Scored& a, const Scored& b) {
        return a.value < b.value;
      })->value;
  if (!(max_raw > 0.0)) {
    // Flat acquisition: take the candidate with the best posterior mean.
    Proposal p;
    p.fallback = true;
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < C.rows(); ++i) {
      const Eigen::VectorXd x = C.row(i).transpose();
      const double m = model.posterior(x).mean;
      const double s = options.direction == Direction::Maximize ? m : -m;
      if (s > best + 1e-12 || (std::fabs(s - best) <= 1e-12 && lex_less(x, p.x))) {
        best = std::max(best, s);
        p.x = x;
      }
    }
    p.acquisition = acq(p.x);
    return p;
  }

  std::vector<Scored> starts = pool;
  std::sort(starts.begin(), starts.end(), better);
  starts.resize(std::min<std::size_t>(starts.size(), static_cast<std::size_t>(std::max(0, options.refine_top))));
  for (const auto& e : options.extra_starts) {
    Eigen::VectorXd x = clamp_to(e, box);
    const double v = acq(x);
    starts.push_back({std::move(x), v});
  }
  for (auto& s : starts) pool.push_back(compass_refine(acq, s, box));
  std::sort(pool.begin(), pool.end(), better);

  // Skip points that would repeat an observation.
  const Eigen::MatrixXd& X = model.inputs();
  Eigen::VectorXd side(static_cast<Eigen::Index>(box.size()));
  for (std::size_t j = 0; j < box.size(); ++j) side(static_cast<Eigen::Index>(j)) = box[j].hi - box[j].lo;
  const auto is_repeat = [&](const Eigen::VectorXd& x) {
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      if (((X.row(i).transpose() - x).array() / side.array()).abs().maxCoeff() < 1e-6) return true;
    return false;
  };
  std::vector<const Scored*> fresh;
  for (const auto& s : pool)
    if (!is_repeat(s.x)) fresh.push_back(&s);
  if (fresh.empty()) fresh.push_back(&pool.front());
  const Scored* pick = fresh.front();
  for (const Scored* s : fresh) {
    if (s->value < fresh.front()->value - 1e-12) break;
    if (lex_less(s->x, pick->x)) pick = s;
  }
  return {pick->x, pick->value, false};
}

void BoConfig::validate() const {
  check_box(bounds);
  if (initial_design < 2) throw ConfigError("initial design must have at least 2 points");
  if (budget < initial_design) throw ConfigError("budget must be >= initial design size");
  if (candidates < 1) throw ConfigError("candidate count must be >= 1");
}

Surrogate::Surrogate(GpModel model, std::vector<Bound> box, double center, double scale)
    : model_(std::move(model)), box_(std::move(box)), center_(center), scale_(scale) {}

GpPosterior Surrogate::predict(std::span<const double> x) const {
  if (x.size() != box_.size()) throw DomainError("surrogate: dimension mismatch");
  Eigen::VectorXd u(static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j)
    u(static_cast<Eigen::Index>(j)) = (x[j] - box_[j].lo) / (box_[j].hi - box_[j].lo);
  const auto p = model_.posterior(u);
  return {center_ + scale_ * p.mean, scale_ * scale_ * p.variance};
}

BoResult bo_run(const Objective& objective, const BoConfig& cfg,
                const std::optional<ConditioningFn>& conditioning) {
  cfg.validate();
  const auto d = cfg.bounds.size();
  const auto di = static_cast<Eigen::Index>(d);
  const std::vector<Bound> unit(d, Bound{0.0, 1.0});

  const auto to_x = [&](const Eigen::VectorXd& u) { return from_unit(u, cfg.bounds); };
  const auto kappa = [&](const Eigen::VectorXd& x) { return conditioning ? (*conditioning)(x) : 0.0; };

  BoResult result;
  std::vector<Eigen::VectorXd> U;
  std::vector<double> ys;
  const bool maximize = cfg.direction == Direction::Maximize;
  const auto beats = [&](double a, double b) { return maximize ? a > b : a < b; };

  const auto evaluate = [&](const Eigen::VectorXd& u, bool initial, double acq) -> bool {
    const Eigen::VectorXd x = to_x(u);
    std::vector<double> xv(x.data(), x.data() + x.size());
    double y = 0.0;
    try {
      y = objective(xv, cfg.objective_seed);
    } catch (const std::exception& e) {
      result.aborted = true;
      result.abort_reason = std::string("objective failed: ") + e.what();
      return false;
    }
    if (!std::isfinite(y)) {
      result.aborted = true;
      result.abort_reason = "objective returned a non-finite value";
      return false;
    }
    if (result.history.empty() || beats(y, result.best_y)) {
      result.best_y = y;
      result.best_x = xv;
    }
    BoStep step;
    step.iteration = static_cast<int>(result.history.size());
    step.x = std::move(xv);
    step.y = y;
    step.incumbent = result.best_y;
    step.initial = initial;
    step.acquisition = acq;
    result.history.push_back(std::move(step));
    U.push_back(u);
    ys.push_back(y);
    return true;
  };

  const Eigen::MatrixXd design = latin_hypercube(unit, cfg.initial_design, cfg.seed);
  for (Eigen::Index i = 0; i < design.rows(); ++i)
    if (!evaluate(design.row(i).transpose(), true, 0.0)) return result;

  std::optional<Kernel> previous;
  for (int it = cfg.initial_design; it < cfg.budget; ++it) {
    const auto n = static_cast<Eigen::Index>(U.size());
    Eigen::MatrixXd X(n, di);
    Eigen::VectorXd kx(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      X.row(i) = U[static_cast<std::size_t>(i)].transpose();
      kx(i) = kappa(to_x(U[static_cast<std::size_t>(i)]));
      y(i) = ys[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd r = y - kx;
    const double center = r.mean();
    const double sd = std::sqrt((r.array() - center).square().sum() / static_cast<double>(std::max<Eigen::Index>(1, n - 1)));
    const double scale = sd > 1e-12 * std::max(1.0, std::fabs(center)) ? sd : 1.0;

    GpFitOptions fit;
    fit.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(it));
    if (conditioning)
      fit.shift = [cond = *conditioning, box = cfg.bounds, scale](const Eigen::VectorXd& u) {
        return cond(from_unit(u, box)) / scale;
      };
    if (previous) fit.warm_start = &*previous;
    GpModel model = gp_fit(X, (y.array() - center) / scale, fit);
    previous = model.kernel();

    ProposalOptions po;
    po.acquisition = cfg.acquisition;
    po.direction = cfg.direction;
    po.candidates = cfg.candidates;
    po.refine_top = cfg.refine_top;
    po.seed = derive_seed(cfg.seed, 0x8000 + static_cast<std::uint64_t>(it));
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < ys.size(); ++i)
      if (beats(ys[i], ys[best_i])) best_i = i;
    po.extra_starts.push_back(U[best_i]);
    const Proposal p = propose_next(model, unit, (ys[best_i] - center) / scale, po);

    result.surrogate.emplace(model, cfg.bounds, center, scale);
    if (!evaluate(p.x, false, p.acquisition)) return result;
  }
  return result;
}

}  // namespace invopt
