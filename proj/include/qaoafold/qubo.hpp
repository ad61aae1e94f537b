#pragma once

// Stem-selection objective (a maximization QUBO) and its Ising cost
// Hamiltonian. Spin convention: bit b maps to z = 1 - 2b, so a selected stem
// is z = -1, and the Ising energy is the negated objective.

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qaoafold/common.hpp"
#include "qaoafold/rna_model.hpp"

namespace qaoafold {

struct QuboParams {
  double epsilon = 6.0;  // averaged free bases per stem
  double c_p = 0.0;      // pseudoknot weight

  void validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InputError("epsilon must be >= 0");
    if (!(std::abs(c_p) <= 1.0)) throw InputError("c_p must lie in [-1, 1]");
  }
};

using TermKey = std::pair<int, int>;

/// C(x) = offset + sum_i linear[i] x_i + sum_{(i,j)} quadratic[(i,j)] x_i x_j,
/// quadratic keys stored with j < i.
struct QuboModel {
  int n = 0;
  std::vector<double> linear;
  std::map<TermKey, double> quadratic;
  double offset = 0.0;
  std::vector<std::string> labels;

  double evaluate(Bits x) const {
    double v = offset;
    for (int i = 0; i < n; ++i) {
      if (bit(x, i)) v += linear[static_cast<std::size_t>(i)];
    }
    for (const auto& [key, w] : quadratic) {
      if (bit(x, key.first) && bit(x, key.second)) v += w;
    }
    return v;
  }
};

/// E(z) = constant + sum_i h[i] z_i + sum_{(i,j)} J[(i,j)] z_i z_j with keys i < j.
struct IsingModel {
  int n = 0;
  std::vector<double> h;
  std::map<TermKey, double> J;
  double constant = 0.0;

  double energy(Bits x) const {
    const auto spin = [x](int q) { return bit(x, q) ? -1.0 : 1.0; };
    double e = constant;
    for (int i = 0; i < n; ++i) e += h[static_cast<std::size_t>(i)] * spin(i);
    for (const auto& [key, w] : J) e += w * spin(key.first) * spin(key.second);
    return e;
  }
};

inline double penalty(const Stem& s1, const Stem& s2, const QuboParams& params) {
  const double len = s1.k + s2.k;
  if (stems_overlap(s1, s2)) return -len;
  if (stems_pseudoknot(s1, s2)) return params.c_p * len;
  return 0.0;
}

/// Term-by-term evaluation of the stem-selection objective; independent of
/// the coefficient tables built by build_qubo.
inline double objective(Bits selection, const StemSet& stems, const QuboParams& params) {
  const double nseq = stems.sequence().size();
  double c = 0.0;
  for (int i = 0; i < stems.size(); ++i) {
    if (!bit(selection, i)) continue;
    const double k = stems[i].k;
    c += 2.0 * k;
    c -= nseq / (2.0 * k + params.epsilon);
    for (int j = 0; j < i; ++j) {
      if (bit(selection, j)) c += penalty(stems[i], stems[j], params);
    }
  }
  return c;
}

inline std::string stem_label(const Stem& s) {
  return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + "," + std::to_string(s.k) + ")";
}

inline QuboModel build_qubo(const StemSet& stems, const QuboParams& params) {
  params.validate();
  const double nseq = stems.sequence().size();
  QuboModel m;
  m.n = stems.size();
  for (int i = 0; i < m.n; ++i) {
    const double k = stems[i].k;
    m.linear.push_back(2.0 * k - nseq / (2.0 * k + params.epsilon));
    m.labels.push_back(stem_label(stems[i]));
    for (int j = 0; j < i; ++j) {
      const double w = penalty(stems[i], stems[j], params);
      if (w != 0.0) m.quadratic[{i, j}] = w;
    }
  }
  return m;
}

/// Substitutes x = (1 - z) / 2 and negates. With `domains`, quadratic terms
/// inside a domain are dropped before the substitution (the constrained
/// mixer never visits states selecting two stems of one domain) and one
/// zero-coefficient dummy qubit per domain is appended.
inline IsingModel to_ising(const QuboModel& model, const std::vector<Domain>* domains = nullptr) {
  std::vector<int> domain_of(static_cast<std::size_t>(model.n), -1);
  int extra = 0;
  if (domains != nullptr) {
    for (std::size_t d = 0; d < domains->size(); ++d) {
      for (int s : (*domains)[d].members) domain_of.at(static_cast<std::size_t>(s)) = static_cast<int>(d);
    }
    extra = static_cast<int>(domains->size());
  }
  IsingModel is;
  is.n = model.n + extra;
  is.h.assign(static_cast<std::size_t>(is.n), 0.0);
  is.constant = -model.offset;
  for (int i = 0; i < model.n; ++i) {
    const double l = model.linear[static_cast<std::size_t>(i)];
    is.constant -= l / 2.0;
    is.h[static_cast<std::size_t>(i)] += l / 2.0;
  }
  for (const auto& [key, k] : model.quadratic) {
    const auto [i, j] = key;
    if (domains != nullptr && domain_of[static_cast<std::size_t>(i)] >= 0 &&
        domain_of[static_cast<std::size_t>(i)] == domain_of[static_cast<std::size_t>(j)]) {
      continue;
    }
    // -k x_i x_j = -k/4 (1 - z_i - z_j + z_i z_j)
    is.constant -= k / 4.0;
    is.h[static_cast<std::size_t>(i)] += k / 4.0;
    is.h[static_cast<std::size_t>(j)] += k / 4.0;
    is.J[{std::min(i, j), std::max(i, j)}] -= k / 4.0;
  }
  return is;
}

inline double ising_energy(const IsingModel& ising, Bits bits) { return ising.energy(bits); }

struct BruteForceResult {
  std::vector<Bits> optima;  // every argmax, ascending
  double value = 0.0;
};

/// Exhaustive maximization over all 2^n selections.
inline BruteForceResult brute_force_solve(const QuboModel& model) {
  check_qubits(model.n, "exhaustive search");
  BruteForceResult r;
  r.value = model.evaluate(0);
  r.optima = {0};
  const Bits count = Bits{1} << model.n;
  for (Bits x = 1; x < count; ++x) {
    const double v = model.evaluate(x);
    if (v > r.value + kEnergyTol) {
      r.value = v;
      r.optima = {x};
    } else if (std::abs(v - r.value) <= kEnergyTol) {
      r.optima.push_back(x);
    }
  }
  return r;
}

inline nlohmann::json to_json(const QuboModel& m) {
  nlohmann::json quad = nlohmann::json::array();
  for (const auto& [key, w] : m.quadratic) quad.push_back({{"i", key.first}, {"j", key.second}, {"value", w}});
  return {{"sense", "maximize"}, {"n", m.n},         {"labels", m.labels},
          {"linear", m.linear},  {"quadratic", quad}, {"offset", m.offset}};
}

inline nlohmann::json to_json(const IsingModel& is) {
  nlohmann::json coup = nlohmann::json::array();
  for (const auto& [key, w] : is.J) coup.push_back({{"i", key.first}, {"j", key.second}, {"value", w}});
  return {{"spin_convention", "z = 1 - 2b"}, {"n", is.n}, {"h", is.h}, {"J", coup}, {"constant", is.constant}};
}

}  // namespace qaoafold
