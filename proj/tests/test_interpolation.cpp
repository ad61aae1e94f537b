#include <gtest/gtest.h>

#include <random>

#include "qaoafold/interpolation.hpp"

using namespace qaoafold;

namespace {

// Solve the Vandermonde system for the monomial coefficients, then evaluate
// with Horner. Independent of the barycentric formula.
double vandermonde_eval(const std::vector<double>& x, const std::vector<double>& y, double t) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    double v = 1.0;
    for (std::size_t c = 0; c < n; ++c, v *= x[r]) a[r][c] = v;
    a[r][n] = y[r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  double acc = 0.0;
  for (std::size_t c = n; c-- > 0;) acc = acc * t + a[c][n] / a[c][c];
  return acc;
}

// Lagrange form.
double lagrange_eval(const std::vector<double>& x, const std::vector<double>& y, double t) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double l = 1.0;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (k != j) l *= (t - x[k]) / (x[j] - x[k]);
    s += y[j] * l;
  }
  return s;
}

}  // namespace

TEST(Interpolation, Nodes) {
  const auto n = chebyshev_nodes(2);
  EXPECT_NEAR(n[0], 0.0, 1e-15);
  EXPECT_NEAR(n[1], -1.0, 1e-15);
}

TEST(Interpolation, ConstantAndLinear) {
  for (int p = 1; p <= 8; ++p) {
    ParameterSchedule c{std::vector<double>(static_cast<std::size_t>(p), 0.4),
                        std::vector<double>(static_cast<std::size_t>(p), -0.2)};
    const auto next = interpolate_schedule(c);
    ASSERT_EQ(next.level(), p + 1);
    for (int l = 0; l <= p; ++l) {
      EXPECT_NEAR(next.betas[static_cast<std::size_t>(l)], 0.4, 1e-12);
      EXPECT_NEAR(next.gammas[static_cast<std::size_t>(l)], -0.2, 1e-12);
    }
    if (p < 2) continue;
    const auto from = chebyshev_nodes(p), to = chebyshev_nodes(p + 1);
    ParameterSchedule lin;
    for (double x : from) {
      lin.betas.push_back(1.0 + 2.0 * x);
      lin.gammas.push_back(0.3 - x);
    }
    const auto ln = interpolate_schedule(lin);
    for (int l = 0; l <= p; ++l) {
      EXPECT_NEAR(ln.betas[static_cast<std::size_t>(l)], 1.0 + 2.0 * to[static_cast<std::size_t>(l)], 1e-12);
      EXPECT_NEAR(ln.gammas[static_cast<std::size_t>(l)], 0.3 - to[static_cast<std::size_t>(l)], 1e-12);
    }
  }
}

TEST(Interpolation, TwoToThree) {
  const auto s = interpolate_schedule({{0.1, 0.3}, {0.0, 0.0}});
  // Line through (0, 0.1) and (-1, 0.3): 0.1 - 0.2 t at t = 0.5, -0.5, -1.
  EXPECT_NEAR(s.betas[0], 0.0, 1e-12);
  EXPECT_NEAR(s.betas[1], 0.2, 1e-12);
  EXPECT_NEAR(s.betas[2], 0.3, 1e-12);
}

TEST(Interpolation, MatchesIndependentOracles) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + trial % 8;
    ParameterSchedule s;
    for (int l = 0; l < p; ++l) {
      s.betas.push_back(u(rng));
      s.gammas.push_back(u(rng));
    }
    const auto next = interpolate_schedule(s);
    const auto from = chebyshev_nodes(p), to = chebyshev_nodes(p + 1);
    for (int l = 0; l <= p; ++l) {
      const double t = to[static_cast<std::size_t>(l)];
      EXPECT_NEAR(next.betas[static_cast<std::size_t>(l)], vandermonde_eval(from, s.betas, t), 1e-9);
      EXPECT_NEAR(next.gammas[static_cast<std::size_t>(l)], lagrange_eval(from, s.gammas, t), 1e-9);
    }
  }
}

TEST(Interpolation, RejectsMalformed) {
  EXPECT_THROW(interpolate_schedule({{0.1}, {}}), InputError);
  EXPECT_THROW(interpolate_schedule({}), InputError);
}
