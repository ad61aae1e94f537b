#pragma once

// Structure scoring and benchmark sweeps.
//
// Sensitivity and specificity follow the base-level definitions used for
// the stem-QUBO benchmarks: sensitivity = TP / (TP + FP) and specificity =
// TN / (TN + FN), where a base is "positive" when the prediction pairs it.
// A predicted pair counts as true only if the reference pairs the base with
// the same partner. Empty categories score 1.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qaoafold/common.hpp"
#include "qaoafold/qaoa.hpp"
#include "qaoafold/rna_model.hpp"

namespace qaoafold {

struct ReferenceStructure {
  std::string id;
  std::vector<BasePair> pairs;  // i < j, sorted

  /// Throws unless every base appears in at most one pair within `length`.
  void validate(int length) const {
    std::vector<int> seen(static_cast<std::size_t>(length) + 1, 0);
    for (auto [i, j] : pairs) {
      if (i < 1 || j > length || i >= j) {
        throw InputError("reference pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
      }
      if (++seen[static_cast<std::size_t>(i)] > 1 || ++seen[static_cast<std::size_t>(j)] > 1) {
        throw InputError("reference pairs a base twice near (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
};

struct ScoreReport {
  double tp = 0, fp = 0, tn = 0, fn = 0;  // means when averaged
  double sensitivity = 1.0;
  double specificity = 1.0;
  int degenerate_count = 1;
};

inline double ratio_or_one(double num, double den) { return den == 0.0 ? 1.0 : num / den; }

inline ScoreReport score(const std::vector<BasePair>& prediction, const ReferenceStructure& reference,
                         const Sequence& seq) {
  const int n = seq.size();
  reference.validate(n);
  std::vector<int> ref(static_cast<std::size_t>(n) + 1, 0);
  for (auto [i, j] : reference.pairs) {
    ref[static_cast<std::size_t>(i)] = j;
    ref[static_cast<std::size_t>(j)] = i;
  }
  std::vector<std::set<int>> pred(static_cast<std::size_t>(n) + 1);
  for (auto [i, j] : prediction) {
    if (i < 1 || j < 1 || i > n || j > n || i == j) {
      throw InputError("predicted pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    pred[static_cast<std::size_t>(i)].insert(j);
    pred[static_cast<std::size_t>(j)].insert(i);
  }
  ScoreReport r;
  for (int b = 1; b <= n; ++b) {
    const auto& p = pred[static_cast<std::size_t>(b)];
    const int partner = ref[static_cast<std::size_t>(b)];
    if (!p.empty()) {
      (partner != 0 && p.contains(partner) ? r.tp : r.fp) += 1;
    } else {
      (partner == 0 ? r.tn : r.fn) += 1;
    }
  }
  r.sensitivity = ratio_or_one(r.tp, r.tp + r.fp);
  r.specificity = ratio_or_one(r.tn, r.tn + r.fn);
  return r;
}

/// Component-wise mean over equally optimal predictions.
inline ScoreReport score_degenerate(const std::vector<std::vector<BasePair>>& predictions,
                                    const ReferenceStructure& reference, const Sequence& seq) {
  if (predictions.empty()) throw InputError("need at least one prediction");
  ScoreReport acc;
  acc.sensitivity = acc.specificity = 0.0;
  for (const auto& p : predictions) {
    const auto r = score(p, reference, seq);
    acc.tp += r.tp;
    acc.fp += r.fp;
    acc.tn += r.tn;
    acc.fn += r.fn;
    acc.sensitivity += r.sensitivity;
    acc.specificity += r.specificity;
  }
  const double k = static_cast<double>(predictions.size());
  acc.tp /= k;
  acc.fp /= k;
  acc.tn /= k;
  acc.fn /= k;
  acc.sensitivity /= k;
  acc.specificity /= k;
  acc.degenerate_count = static_cast<int>(predictions.size());
  return acc;
}

inline nlohmann::json to_json(const ScoreReport& r) {
  return {{"tp", r.tp},
          {"fp", r.fp},
          {"tn", r.tn},
          {"fn", r.fn},
          {"sensitivity", r.sensitivity},
          {"specificity", r.specificity},
          {"degenerate_count", r.degenerate_count}};
}

// ---------------------------------------------------------------------------
// Summary statistics.

struct Summary {
  int count = 0;
  double mean = 0, min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Quartiles by linear interpolation between order statistics.
inline Summary summarize_values(std::vector<double> v) {
  Summary s;
  s.count = static_cast<int>(v.size());
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  const auto q = [&](double f) {
    const double pos = f * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  s.min = v.front();
  s.max = v.back();
  s.q1 = q(0.25);
  s.median = q(0.5);
  s.q3 = q(0.75);
  return s;
}

inline nlohmann::json to_json(const Summary& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"min", s.min},  {"q1", s.q1},
          {"median", s.median}, {"q3", s.q3},   {"max", s.max}};
}

// ---------------------------------------------------------------------------
// Level sweep.

struct LevelSweepRow {
  std::string instance;
  MixerKind mixer = MixerKind::X;
  int p_max = 0;
  int terminating_level = 0;
  double ground_frequency = 0.0;
  double infeasible_frequency = 0.0;
  bool found_optimum = false;
};

struct LevelSweep {
  std::vector<LevelSweepRow> rows;
  std::map<std::pair<MixerKind, int>, Summary> ground;  // by (mixer, p_max)
};

/// Noiseless solves at every p_max in `levels` for every instance and
/// mixer. Each (instance, mixer) is solved once at the largest p_max and the
/// shorter runs are read off its prefix.
inline LevelSweep sweep_levels(const std::vector<StemSet>& instances, const QuboParams& params, const QaoaConfig& base,
                               std::vector<int> levels, const std::vector<MixerKind>& mixers) {
  if (levels.empty()) throw InputError("level sweep needs at least one p_max");
  if (!base.noise.noiseless()) throw InputError("level sweeps are noiseless; use the noise sweep");
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  LevelSweep out;
  std::map<std::pair<MixerKind, int>, std::vector<double>> values;
  for (MixerKind m : mixers) {
    for (const auto& stems : instances) {
      QaoaConfig cfg = base;
      cfg.mixer = m;
      cfg.p_max = levels.back();
      cfg.p_start = std::min(cfg.p_start, levels.front());
      const QaoaProblem prob(stems, params, m);
      const QaoaResult full = solve(prob, cfg);
      for (int p : levels) {
        QaoaConfig at = cfg;
        at.p_max = p;
        const QaoaResult r = truncate_result(prob, full, p, at);
        const auto& last = r.levels.back();
        out.rows.push_back({stems.sequence().id(), m, p, r.terminating_level, last.ground_frequency,
                            last.infeasible_frequency, r.found_optimum()});
        values[{m, p}].push_back(last.ground_frequency);
      }
    }
  }
  for (auto& [key, v] : values) out.ground[key] = summarize_values(v);
  return out;
}

inline std::string to_csv(const LevelSweep& s) {
  std::ostringstream os;
  os << "instance,mixer,p_max,terminating_level,ground_frequency,infeasible_frequency,found_optimum\n";
  for (const auto& r : s.rows) {
    os << r.instance << ',' << to_string(r.mixer) << ',' << r.p_max << ',' << r.terminating_level << ','
       << r.ground_frequency << ',' << r.infeasible_frequency << ',' << (r.found_optimum ? 1 : 0) << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const LevelSweep& s) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [key, sum] : s.ground) {
    cells.push_back({{"mixer", to_string(key.first)}, {"p_max", key.second}, {"ground_frequency", to_json(sum)}});
  }
  return {{"kind", "levels"}, {"cells", cells}};
}

// ---------------------------------------------------------------------------
// Noise sweep.

struct NoiseSweepRow {
  std::string instance;
  MixerKind mixer = MixerKind::X;
  double two_qubit_error = 0.0;
  double ground_frequency = 0.0;
  double infeasible_frequency = 0.0;
  int trajectories = 0;
};

struct NoiseSweep {
  std::vector<NoiseSweepRow> rows;
  std::map<std::pair<MixerKind, double>, Summary> ground;
  std::map<std::pair<MixerKind, double>, Summary> infeasible;
};

/// Optimizes each instance noiselessly (config as given), then replays the
/// final schedule under each two-qubit error rate with the readout errors of
/// `base.noise`. One trajectory per shot; every error rate reuses the seed of
/// the final noiseless level, so p2 = 0 without readout error reproduces the
/// noiseless samples.
inline NoiseSweep sweep_noise(const std::vector<StemSet>& instances, const QuboParams& params, const QaoaConfig& base,
                              const std::vector<double>& error_rates, const std::vector<MixerKind>& mixers) {
  if (error_rates.empty()) throw InputError("noise sweep needs at least one error rate");
  NoiseSweep out;
  std::map<std::pair<MixerKind, double>, std::vector<double>> g, inf;
  for (MixerKind m : mixers) {
    for (const auto& stems : instances) {
      QaoaConfig cfg = base;
      cfg.mixer = m;
      cfg.noise = {};
      const QaoaProblem prob(stems, params, m);
      const QaoaResult clean = solve(prob, cfg);
      const LevelRecord& last = clean.levels.back();
      const Circuit circ = prob.circuit(last.schedule);
      for (double p2 : error_rates) {
        NoiseSpec noise = base.noise;
        noise.two_qubit_error = p2;
        noise.validate();
        LevelRecord rec = last;
        rec.samples = run_noisy(circ, &prob.cost(), noise, cfg.shots, level_seed(cfg.seed, last.p));
        summarize(prob, rec);
        out.rows.push_back({stems.sequence().id(), m, p2, rec.ground_frequency, rec.infeasible_frequency, cfg.shots});
        g[{m, p2}].push_back(rec.ground_frequency);
        inf[{m, p2}].push_back(rec.infeasible_frequency);
      }
    }
  }
  for (auto& [key, v] : g) out.ground[key] = summarize_values(v);
  for (auto& [key, v] : inf) out.infeasible[key] = summarize_values(v);
  return out;
}

inline std::string to_csv(const NoiseSweep& s) {
  std::ostringstream os;
  os << "instance,mixer,two_qubit_error,ground_frequency,infeasible_frequency,trajectories\n";
  for (const auto& r : s.rows) {
    os << r.instance << ',' << to_string(r.mixer) << ',' << r.two_qubit_error << ',' << r.ground_frequency << ','
       << r.infeasible_frequency << ',' << r.trajectories << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const NoiseSweep& s) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [key, sum] : s.ground) {
    cells.push_back({{"mixer", to_string(key.first)},
                     {"two_qubit_error", key.second},
                     {"ground_frequency", to_json(sum)},
                     {"infeasible_frequency", to_json(s.infeasible.at(key))}});
  }
  return {{"kind", "noise"}, {"cells", cells}};
}

}  // namespace qaoafold
