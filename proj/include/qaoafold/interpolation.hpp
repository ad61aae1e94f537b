#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "qaoafold/common.hpp"

namespace qaoafold {

/// Angles of a level-p circuit: betas[l] and gammas[l] drive layer l.
struct ParameterSchedule {
  std::vector<double> betas;
  std::vector<double> gammas;

  int level() const { return static_cast<int>(betas.size()); }

  void validate() const {
    if (betas.size() != gammas.size() || betas.empty()) {
      throw InputError("schedule needs equally many betas and gammas (at least one)");
    }
  }

  friend bool operator==(const ParameterSchedule&, const ParameterSchedule&) = default;
};

/// Chebyshev-type abscissae cos(i pi / p), i = 1..p.
inline std::vector<double> chebyshev_nodes(int p) {
  std::vector<double> x(static_cast<std::size_t>(p));
  for (int i = 1; i <= p; ++i) x[static_cast<std::size_t>(i - 1)] = std::cos(i * std::numbers::pi / p);
  return x;
}

/// Barycentric form of the interpolating polynomial through (nodes, values),
/// evaluated at t. Valid outside the node range as well.
inline double barycentric_eval(std::span<const double> nodes, std::span<const double> values, double t) {
  const std::size_t m = nodes.size();
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double diff = t - nodes[j];
    if (std::abs(diff) < 1e-14) return values[j];
    double w = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k != j) w /= nodes[j] - nodes[k];
    }
    num += w * values[j] / diff;
    den += w / diff;
  }
  return num / den;
}

/// Level p -> p + 1: betas and gammas are each placed on the level-p nodes and
/// the interpolant is read off at the level-(p+1) nodes.
inline ParameterSchedule interpolate_schedule(const ParameterSchedule& s) {
  s.validate();
  const int p = s.level();
  const auto from = chebyshev_nodes(p);
  const auto to = chebyshev_nodes(p + 1);
  ParameterSchedule out;
  for (double t : to) {
    out.betas.push_back(barycentric_eval(from, s.betas, t));
    out.gammas.push_back(barycentric_eval(from, s.gammas, t));
  }
  return out;
}

}  // namespace qaoafold
