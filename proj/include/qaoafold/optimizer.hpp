#pragma once

// Box-constrained quasi-Newton minimizer with forward-difference gradients.
// Periodic coordinates wrap instead of clamping.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace qaoafold {

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> periodic;

  std::size_t size() const { return lower.size(); }

  double project(std::size_t i, double v) const {
    if (periodic[i]) {
      const double span = upper[i] - lower[i];
      v = std::fmod(v - lower[i], span);
      if (v < 0) v += span;
      return lower[i] + v;
    }
    return std::clamp(v, lower[i], upper[i]);
  }

  std::vector<double> project(std::vector<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = project(i, x[i]);
    return x;
  }
};

struct MinimizeOptions {
  int max_evaluations = 200;
  double fd_step = 1e-3;
  double gradient_tol = 1e-8;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::quiet_NaN();  // NaN when nothing was evaluated
  int evaluations = 0;
};

class BoxedBfgs {
 public:
  using Objective = std::function<double(const std::vector<double>&)>;

  BoxedBfgs(Objective f, Box box, MinimizeOptions opt) : f_(std::move(f)), box_(std::move(box)), opt_(opt) {}

  MinimizeResult minimize(const std::vector<double>& x0) {
    const std::size_t n = x0.size();
    best_ = {box_.project(x0), std::numeric_limits<double>::quiet_NaN(), 0};
    evals_ = 0;
    std::vector<double> x = best_.x;
    double fx = 0.0;
    if (!eval(x, fx)) return best_;

    std::vector<double> g;
    if (!gradient(x, fx, g)) return best_;
    std::vector<double> hinv(n * n, 0.0);
    bool fresh = true;
    reset(hinv, g);

    while (true) {
      std::vector<double> d(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[i] -= hinv[i * n + j] * g[j];
      }
      pin_active(x, g, d);
      double slope = dot(g, d);
      if (!(slope < 0.0)) {
        if (fresh) break;
        reset(hinv, g);
        fresh = true;
        continue;
      }
      double pg = 0.0;
      for (std::size_t i = 0; i < n; ++i) pg = std::max(pg, std::abs(d[i]));
      if (pg < opt_.gradient_tol) break;

      // Backtracking along the projected path.
      double alpha = 1.0;
      std::vector<double> xn(n), step(n);
      double fn = 0.0;
      bool accepted = false;
      for (int bt = 0; bt < 12; ++bt) {
        for (std::size_t i = 0; i < n; ++i) {
          xn[i] = box_.project(i, x[i] + alpha * d[i]);
          step[i] = box_.periodic[i] ? alpha * d[i] : xn[i] - x[i];
        }
        if (!eval(xn, fn)) return best_;
        if (fn <= fx + 1e-4 * dot(g, step)) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        if (fresh) break;
        reset(hinv, g);
        fresh = true;
        continue;
      }

      std::vector<double> gn;
      if (!gradient(xn, fn, gn)) return best_;
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = gn[i] - g[i];
      const double sy = dot(step, y);
      if (sy > 1e-12) {
        if (fresh) {
          // Scale the initial inverse Hessian before the first update.
          const double scale = sy / dot(y, y);
          std::fill(hinv.begin(), hinv.end(), 0.0);
          for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = scale;
        }
        bfgs_update(hinv, step, y, sy);
        fresh = false;
      }
      x = std::move(xn);
      fx = fn;
      g = std::move(gn);
    }
    return best_;
  }

 private:
  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  bool eval(const std::vector<double>& x, double& out) {
    if (evals_ >= opt_.max_evaluations) return false;
    out = f_(x);
    ++evals_;
    best_.evaluations = evals_;
    if (std::isnan(best_.value) || out < best_.value) {
      best_.value = out;
      best_.x = x;
    }
    return true;
  }

  bool gradient(const std::vector<double>& x, double fx, std::vector<double>& g) {
    const std::size_t n = x.size();
    if (evals_ + static_cast<int>(n) > opt_.max_evaluations) return false;
    g.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double h = opt_.fd_step;
      if (!box_.periodic[i] && x[i] + h > box_.upper[i]) h = -h;
      std::vector<double> xp = x;
      xp[i] = box_.project(i, x[i] + h);
      double fp = 0.0;
      eval(xp, fp);
      g[i] = (fp - fx) / h;
    }
    return true;
  }

  /// Zero components that would push a clamped coordinate out of the box.
  void pin_active(const std::vector<double>& x, const std::vector<double>& g, std::vector<double>& d) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (box_.periodic[i]) continue;
      const bool at_lo = x[i] <= box_.lower[i] && d[i] < 0 && g[i] > 0;
      const bool at_hi = x[i] >= box_.upper[i] && d[i] > 0 && g[i] < 0;
      if (at_lo || at_hi) d[i] = 0.0;
    }
  }

  /// Steepest descent with a step of about 0.1 rad in the largest component.
  void reset(std::vector<double>& hinv, const std::vector<double>& g) const {
    const std::size_t n = g.size();
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    const double scale = gmax > 0 ? 0.1 / gmax : 1.0;
    std::fill(hinv.begin(), hinv.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = scale;
  }

  static void bfgs_update(std::vector<double>& h, const std::vector<double>& s, const std::vector<double>& y,
                          double sy) {
    const std::size_t n = s.size();
    std::vector<double> hy(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) hy[i] += h[i * n + j] * y[j];
    }
    const double yhy = dot(y, hy);
    const double rho = 1.0 / sy;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        h[i * n + j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
      }
    }
  }

  Objective f_;
  Box box_;
  MinimizeOptions opt_;
  MinimizeResult best_;
  int evals_ = 0;
};

inline MinimizeResult minimize_boxed(BoxedBfgs::Objective f, const std::vector<double>& x0, Box box,
                                     MinimizeOptions opt = {}) {
  return BoxedBfgs(std::move(f), std::move(box), opt).minimize(x0);
}

}  // namespace qaoafold
