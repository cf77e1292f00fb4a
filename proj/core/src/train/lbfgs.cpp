#include "sclon/train/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "sclon/error.hpp"

namespace sclon::train {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Trial {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;
  std::vector<double> x;
  std::vector<double> g;
};

// Minimizer of the cubic through (a, fa, da) and (b, fb, db), or the midpoint
// when it falls outside the safeguarded interval.
double cubic_step(const Trial& a, const Trial& b) {
  const double lo = std::min(a.alpha, b.alpha), hi = std::max(a.alpha, b.alpha);
  const double margin = 0.1 * (hi - lo);
  const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.slope * b.slope;
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
    if (std::isfinite(t) && t > lo + margin && t < hi - margin) return t;
  }
  return 0.5 * (lo + hi);
}

class LineSearch {
 public:
  LineSearch(const Objective& obj, const std::vector<double>& x, double f0, double slope0,
             const std::vector<double>& d, const LbfgsOptions& opt)
      : obj_(obj), x_(x), d_(d), f0_(f0), slope0_(slope0), opt_(opt) {}

  // Strong Wolfe point, or nothing after max_line_search evaluations.
  std::optional<Trial> run(double alpha1) {
    Trial prev;
    prev.alpha = 0.0;
    prev.f = f0_;
    prev.slope = slope0_;
    double alpha = alpha1;
    for (int i = 1; evals_ < opt_.max_line_search; ++i) {
      Trial cur = eval(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0_ + opt_.c1 * alpha * slope0_ || (i > 1 && cur.f >= prev.f))
        return zoom(prev, cur);
      if (std::abs(cur.slope) <= -opt_.c2 * slope0_) return cur;
      if (cur.slope >= 0.0) return zoom(cur, prev);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return std::nullopt;
  }

  int evaluations() const { return evals_; }
  std::optional<Trial> best_armijo() const { return armijo_; }

 private:
  Trial eval(double alpha) {
    Trial t;
    t.alpha = alpha;
    t.x.resize(x_.size());
    t.g.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) t.x[i] = x_[i] + alpha * d_[i];
    ++evals_;
    try {
      t.f = obj_(t.x, t.g);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonFinite) throw;
      t.f = std::numeric_limits<double>::infinity();
    }
    t.slope = std::isfinite(t.f) ? dot(t.g, d_) : 0.0;
    if (std::isfinite(t.f) && t.f <= f0_ + opt_.c1 * alpha * slope0_ && (!armijo_ || t.f < armijo_->f)) armijo_ = t;
    return t;
  }

  std::optional<Trial> zoom(Trial lo, Trial hi) {
    while (evals_ < opt_.max_line_search) {
      const double alpha = std::isfinite(hi.f) ? cubic_step(lo, hi) : 0.5 * (lo.alpha + hi.alpha);
      if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
      Trial cur = eval(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0_ + opt_.c1 * alpha * slope0_ || cur.f >= lo.f) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.slope) <= -opt_.c2 * slope0_) return cur;
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(cur);
      }
    }
    return std::nullopt;
  }

  const Objective& obj_;
  const std::vector<double>& x_;
  const std::vector<double>& d_;
  double f0_;
  double slope0_;
  const LbfgsOptions& opt_;
  int evals_ = 0;
  std::optional<Trial> armijo_;
};

}  // namespace

Lbfgs::Lbfgs(std::size_t dimension, LbfgsOptions options) : n_(dimension), opt_(options) {
  require(opt_.memory >= 1, "L-BFGS: memory must be >= 1");
  require(0.0 < opt_.c1 && opt_.c1 < opt_.c2 && opt_.c2 < 1.0, "L-BFGS: need 0 < c1 < c2 < 1");
}

void Lbfgs::reset() {
  s_.clear();
  y_.clear();
  rho_.clear();
}

std::vector<double> Lbfgs::direction(std::span<const double> g) const {
  std::vector<double> q(g.begin(), g.end());
  if (s_.empty()) {
    const double norm = std::sqrt(dot(g, g));
    for (auto& v : q) v = norm > 0.0 ? -v / norm : 0.0;
    return q;
  }
  const std::size_t m = s_.size();
  std::vector<double> a(m);
  for (std::size_t i = m; i-- > 0;) {
    a[i] = rho_[i] * dot(s_[i], q);
    for (std::size_t k = 0; k < n_; ++k) q[k] -= a[i] * y_[i][k];
  }
  const double gamma = dot(s_.back(), y_.back()) / dot(y_.back(), y_.back());
  for (auto& v : q) v *= gamma;
  for (std::size_t i = 0; i < m; ++i) {
    const double b = rho_[i] * dot(y_[i], q);
    for (std::size_t k = 0; k < n_; ++k) q[k] += s_[i][k] * (a[i] - b);
  }
  for (auto& v : q) v = -v;
  return q;
}

Lbfgs::Step Lbfgs::step(const Objective& objective, std::vector<double>& x, double& f, std::vector<double>& g) {
  require(x.size() == n_ && g.size() == n_, "L-BFGS: dimension mismatch");
  for (double v : g)
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "L-BFGS: non-finite gradient");
  Step result;
  result.f = f;

  std::vector<double> d = direction(g);
  double slope = dot(g, d);
  if (!(slope < 0.0)) {
    reset();
    d = direction(g);
    slope = dot(g, d);
    result.restarted = true;
  }
  if (!(slope < 0.0)) return result;

  LineSearch search(objective, x, f, slope, d, opt_);
  auto found = search.run(1.0);
  result.evaluations = search.evaluations();
  if (!found && !result.restarted) {
    // Steepest-descent restart for this iteration.
    reset();
    d = direction(g);
    slope = dot(g, d);
    LineSearch retry(objective, x, f, slope, d, opt_);
    found = retry.run(1.0);
    result.evaluations += retry.evaluations();
    if (!found) found = retry.best_armijo();
    result.restarted = true;
  } else if (!found) {
    found = search.best_armijo();
  }
  if (!found) return result;

  std::vector<double> s(n_), y(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    s[k] = found->x[k] - x[k];
    y[k] = found->g[k] - g[k];
  }
  const double sy = dot(s, y);
  if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y)) && sy > 0.0) {
    s_.push_back(std::move(s));
    y_.push_back(std::move(y));
    rho_.push_back(1.0 / sy);
    if (static_cast<int>(s_.size()) > opt_.memory) {
      s_.pop_front();
      y_.pop_front();
      rho_.pop_front();
    }
  }
  x = std::move(found->x);
  g = std::move(found->g);
  f = found->f;
  result.f = f;
  result.accepted = true;
  return result;
}

MinimizeResult minimize_lbfgs(const Objective& objective, std::vector<double> x0, const LbfgsOptions& options,
                              const IterationCallback& callback) {
  MinimizeResult res;
  res.x = std::move(x0);
  std::vector<double> g(res.x.size());
  res.f = objective(res.x, g);
  res.evaluations = 1;
  if (!std::isfinite(res.f)) fail(ErrorCode::NonFinite, "L-BFGS: non-finite objective at the start");
  res.history.push_back(res.f);
  double running_min = res.f;
  Lbfgs opt(res.x.size(), options);
  while (true) {
    if (res.f == 0.0) {
      res.reason = StopReason::ZeroLoss;
      break;
    }
    if (dot(g, g) == 0.0) {
      res.reason = StopReason::ZeroGradient;
      break;
    }
    if (res.iterations >= options.plateau.max_iters) {
      res.reason = StopReason::MaxIterations;
      break;
    }
    if (plateau_check(res.history, options.plateau)) {
      res.reason = StopReason::Plateau;
      break;
    }
    const auto st = opt.step(objective, res.x, res.f, g);
    res.evaluations += st.evaluations;
    if (!st.accepted) {
      res.reason = StopReason::LineSearchStalled;
      break;
    }
    ++res.iterations;
    res.history.push_back(res.f);
    if (callback) callback(res.iterations, res.f);
    running_min = std::min(running_min, res.f);
    if (res.f > options.divergence_factor * running_min) {
      res.reason = StopReason::Diverged;
      break;
    }
  }
  return res;
}

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::Plateau:
      return "plateau";
    case StopReason::MaxIterations:
      return "max_iterations";
    case StopReason::ZeroLoss:
      return "zero_loss";
    case StopReason::ZeroGradient:
      return "zero_gradient";
    case StopReason::LineSearchStalled:
      return "line_search_stalled";
    case StopReason::Diverged:
      return "diverged";
  }
  return "unknown";
}

}  // namespace sclon::train
