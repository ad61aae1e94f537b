#pragma once

// QAOA solver loop: warm start at p_start, optimize, stop once a sampled
// state passes stop_frequency, otherwise interpolate to the next level until
// p_max.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qaoafold/common.hpp"
#include "qaoafold/interpolation.hpp"
#include "qaoafold/optimizer.hpp"
#include "qaoafold/qubo.hpp"
#include "qaoafold/rna_model.hpp"
#include "qaoafold/simulator.hpp"

namespace qaoafold {

inline constexpr double kBetaPeriod = std::numbers::pi;
inline constexpr double kGammaBound = 2 * std::numbers::pi;

/// What the per-level optimizer minimizes over the exact output distribution.
/// `Dropoff` is the post-selected mean energy; `Expectation` keeps every state.
enum class LossTarget { Dropoff, Expectation };

/// Default warm starts, regenerated with `qaoafold warmup` on the calibration
/// set (see data/calibration.fasta).
inline ParameterSchedule default_warmup(MixerKind mixer) {
  if (mixer == MixerKind::X) return {{0.6031, 0.4324}, {0.1539, 0.3546}};
  return {{0.4800, 0.2674}, {0.3640, 0.3438}};
}

struct QaoaConfig {
  int p_start = 2;
  int p_max = 8;
  int shots = 1000;
  double dropoff = 0.10;
  double stop_frequency = 0.90;
  MixerKind mixer = MixerKind::X;
  int max_evaluations = 200;
  double fd_step = 1e-3;
  LossTarget loss_target = LossTarget::Expectation;
  std::uint64_t seed = 0;
  ParameterSchedule warmup_x = default_warmup(MixerKind::X);
  ParameterSchedule warmup_xy = default_warmup(MixerKind::ParityXY);
  NoiseSpec noise;
  bool noise_reoptimize = false;  // default: reuse the noiseless schedule
  int noise_trajectories = 200;   // per loss evaluation when re-optimizing

  const ParameterSchedule& warmup() const { return mixer == MixerKind::X ? warmup_x : warmup_xy; }

  void validate() const {
    if (p_start < 1 || p_start > p_max) throw InputError("need 1 <= p_start <= p_max");
    if (shots < 1) throw InputError("shots must be at least 1");
    if (!(dropoff >= 0.0 && dropoff < stop_frequency && stop_frequency <= 1.0)) {
      throw InputError("need 0 <= dropoff < stop_frequency <= 1");
    }
    if (max_evaluations < 0) throw InputError("optimizer budget must be non-negative");
    if (!(fd_step > 0.0)) throw InputError("finite-difference step must be positive");
    if (noise_trajectories < 1) throw InputError("need at least one noise trajectory");
    warmup_x.validate();
    warmup_xy.validate();
    noise.validate();
  }
};

/// Everything derived from one (stems, params, mixer) triple.
class QaoaProblem {
 public:
  QaoaProblem(StemSet stems, QuboParams params, MixerKind mixer)
      : stems_(std::move(stems)),
        params_(params),
        mixer_(mixer),
        qubo_(build_qubo(stems_, params_)),
        domains_(partition_domains(stems_)),
        full_ising_(to_ising(qubo_)),
        cost_(mixer == MixerKind::X ? full_ising_ : to_ising(qubo_, &domains_)),
        mixer_spec_(mixer == MixerKind::X ? MixerSpec::x() : MixerSpec::parity_xy(domains_)),
        optimum_(brute_force_solve(qubo_)),
        optimal_set_(optimum_.optima.begin(), optimum_.optima.end()) {
    if (stems_.empty()) throw InputError("QAOA needs at least one stem");
  }

  const StemSet& stems() const { return stems_; }
  const QuboParams& params() const { return params_; }
  MixerKind mixer() const { return mixer_; }
  const QuboModel& qubo() const { return qubo_; }
  const std::vector<Domain>& domains() const { return domains_; }
  /// Hamiltonian of the circuit (domain-reduced for ParityXY).
  const IsingModel& ising() const { return cost_.ising; }
  const IsingModel& full_ising() const { return full_ising_; }
  const CostLayer& cost() const { return cost_; }
  const MixerSpec& mixer_spec() const { return mixer_spec_; }
  const BruteForceResult& optimum() const { return optimum_; }

  int stem_qubits() const { return stems_.size(); }
  int qubits() const { return cost_.ising.n; }
  Bits stem_bits(Bits x) const { return x & low_mask(stem_qubits()); }

  /// Exactly one excitation per domain ring (always true for the X mixer).
  bool in_subspace(Bits x) const {
    for (const auto& ring : mixer_spec_.rings) {
      int w = 0;
      for (int q : ring) w += bit(x, q) ? 1 : 0;
      if (w != 1) return false;
    }
    return true;
  }

  bool feasible(Bits x) const { return in_subspace(x) && selection_feasible(stems_, stem_bits(x)); }
  bool is_ground(Bits x) const { return in_subspace(x) && optimal_set_.contains(stem_bits(x)); }
  double objective_of(Bits x) const { return qubo_.evaluate(stem_bits(x)); }

  /// Composite circuit: initial state, then (cost, mixer) per layer.
  Circuit circuit(const ParameterSchedule& s) const {
    Circuit c;
    c.n = qubits();
    if (mixer_ == MixerKind::X) {
      for (int q = 0; q < c.n; ++q) c.add(GateKind::H, q);
    } else {
      for (const auto& ring : mixer_spec_.rings) append_w_state(c, ring);
    }
    for (int l = 0; l < s.level(); ++l) {
      c.add(GateKind::Cost, -1, -1, s.gammas[static_cast<std::size_t>(l)]);
      append_mixer(c, s.betas[static_cast<std::size_t>(l)]);
    }
    return c;
  }

  void append_mixer(Circuit& c, double beta) const {
    if (mixer_ == MixerKind::X) {
      c.add(GateKind::XMixer, -1, -1, beta);
      return;
    }
    for (const auto& ring : mixer_spec_.rings) {
      for (auto [qa, qb] : ring_edges(ring)) c.add(GateKind::XYPair, qa, qb, beta);
    }
  }

  QuantumState run(const ParameterSchedule& s) const { return run_circuit(circuit(s), &cost_); }

 private:
  StemSet stems_;
  QuboParams params_;
  MixerKind mixer_;
  QuboModel qubo_;
  std::vector<Domain> domains_;
  IsingModel full_ising_;
  CostLayer cost_;
  MixerSpec mixer_spec_;
  BruteForceResult optimum_;
  std::set<Bits> optimal_set_;
};

// ---------------------------------------------------------------------------
// Loss.

/// Frequency-weighted mean energy over the entries whose frequency is at
/// least `dropoff`, weights renormalized; all entries if none survive.
inline double loss(const SampleSet& samples, const IsingModel& ising, double dropoff) {
  if (samples.entries.empty()) throw InputError("loss of an empty sample set");
  double wsum = 0.0, esum = 0.0;
  for (std::size_t e = 0; e < samples.entries.size(); ++e) {
    const double f = samples.frequency(e);
    if (f < dropoff) continue;
    wsum += f;
    esum += f * ising.energy(samples.entries[e].first);
  }
  if (wsum > 0.0) return esum / wsum;
  for (std::size_t e = 0; e < samples.entries.size(); ++e) {
    esum += samples.frequency(e) * ising.energy(samples.entries[e].first);
  }
  return esum;
}

/// Same rule on an exact distribution (frequencies are probabilities).
inline double loss_from_distribution(std::span<const double> probs, std::span<const double> energies,
                                     double dropoff) {
  double wsum = 0.0, esum = 0.0, total = 0.0, all = 0.0;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    total += probs[x];
    all += probs[x] * energies[x];
    if (probs[x] >= dropoff) {
      wsum += probs[x];
      esum += probs[x] * energies[x];
    }
  }
  return wsum > 0.0 ? esum / wsum : all / total;
}

// ---------------------------------------------------------------------------
// One level.

struct LevelRecord {
  int p = 0;
  ParameterSchedule schedule;
  SampleSet samples;
  double loss = 0.0;
  double ground_frequency = 0.0;
  double infeasible_frequency = 0.0;  // outside the one-per-domain subspace
  double max_frequency = 0.0;
  int evaluations = 0;
};

inline Box schedule_box(int p) {
  Box b;
  for (int l = 0; l < p; ++l) {
    b.lower.push_back(0.0);
    b.upper.push_back(kBetaPeriod);
    b.periodic.push_back(true);
  }
  for (int l = 0; l < p; ++l) {
    b.lower.push_back(-kGammaBound);
    b.upper.push_back(kGammaBound);
    b.periodic.push_back(false);
  }
  return b;
}

inline std::vector<double> pack(const ParameterSchedule& s) {
  std::vector<double> v = s.betas;
  v.insert(v.end(), s.gammas.begin(), s.gammas.end());
  return v;
}

inline ParameterSchedule unpack(const std::vector<double>& v) {
  const auto p = static_cast<std::ptrdiff_t>(v.size() / 2);
  return {{v.begin(), v.begin() + p}, {v.begin() + p, v.end()}};
}

/// Fills the frequency summaries of a record from its samples.
inline void summarize(const QaoaProblem& prob, LevelRecord& rec) {
  rec.ground_frequency = rec.infeasible_frequency = rec.max_frequency = 0.0;
  for (std::size_t e = 0; e < rec.samples.entries.size(); ++e) {
    const Bits x = rec.samples.entries[e].first;
    const double f = rec.samples.frequency(e);
    if (prob.is_ground(x)) rec.ground_frequency += f;
    if (!prob.in_subspace(x)) rec.infeasible_frequency += f;
    rec.max_frequency = std::max(rec.max_frequency, f);
  }
}

namespace detail {

/// Equal counts: lower energy first, then bitstring.
inline void order_entries(SampleSet& s, const std::vector<double>& energies) {
  std::stable_sort(s.entries.begin(), s.entries.end(), [&](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second > r.second;
    const double el = energies[l.first], er = energies[r.first];
    if (el != er) return el < er;
    return l.first < r.first;
  });
}

}  // namespace detail

inline std::uint64_t level_seed(std::uint64_t seed, int p) { return mix_seed(seed, 100 + static_cast<std::uint64_t>(p)); }

/// Optimizes the 2p angles of one level from `start`, then samples `shots`
/// outcomes of the best circuit. The optimizer works on the exact output
/// distribution (or the trajectory-averaged one when re-optimizing under
/// noise); the returned loss is the sampled one.
inline LevelRecord optimize(const QaoaProblem& prob, const ParameterSchedule& start, const QaoaConfig& cfg) {
  start.validate();
  const int p = start.level();
  const std::uint64_t seed = level_seed(cfg.seed, p);
  const bool noisy = cfg.noise_reoptimize && !cfg.noise.noiseless();
  const double cut = cfg.loss_target == LossTarget::Dropoff ? cfg.dropoff : 0.0;
  const auto& energies = prob.cost().energies;
  const auto target = [&](const std::vector<double>& probs) { return loss_from_distribution(probs, energies, cut); };

  const auto objective = [&](const std::vector<double>& v) {
    const auto sched = unpack(v);
    if (noisy) {
      const NoisyExecutor ex(prob.circuit(sched), &prob.cost(), cfg.noise);
      return target(ex.average_distribution(cfg.noise_trajectories, seed));
    }
    return target(prob.run(sched).probabilities());
  };

  MinimizeOptions mo;
  mo.max_evaluations = cfg.max_evaluations;
  mo.fd_step = cfg.fd_step;
  const auto box = schedule_box(p);
  const auto best = minimize_boxed(objective, pack(start), box, mo);

  LevelRecord rec;
  rec.p = p;
  rec.schedule = unpack(best.x);
  rec.evaluations = best.evaluations;
  const auto circ = prob.circuit(rec.schedule);
  rec.samples = cfg.noise.noiseless() || !cfg.noise_reoptimize
                    ? sample(run_circuit(circ, &prob.cost()), cfg.shots, seed)
                    : run_noisy(circ, &prob.cost(), cfg.noise, cfg.shots, seed);
  detail::order_entries(rec.samples, energies);
  rec.loss = loss(rec.samples, prob.ising(), cfg.dropoff);
  summarize(prob, rec);
  return rec;
}

// ---------------------------------------------------------------------------
// Full solve.

enum class Termination { StopFrequency, PMax, Trivial };

inline std::string to_string(Termination t) {
  switch (t) {
    case Termination::StopFrequency: return "stop_frequency";
    case Termination::PMax: return "p_max";
    case Termination::Trivial: return "trivial";
  }
  return "?";
}

struct QaoaResult {
  MixerKind mixer = MixerKind::X;
  int stem_qubits = 0;
  int qubits = 0;
  /// Lowest-energy feasible retained samples (stem bits only), ascending.
  std::vector<Bits> best_selections;
  double best_energy = 0.0;     // Ising energy = -objective
  double best_objective = 0.0;
  std::vector<LevelRecord> levels;
  std::optional<LevelRecord> noisy;  // final schedule replayed under noise
  int terminating_level = 0;
  Termination reason = Termination::Trivial;
  double optimum_objective = 0.0;  // exhaustive reference
  std::vector<Bits> optimum_selections;

  double ground_frequency() const {
    if (noisy) return noisy->ground_frequency;
    return levels.empty() ? 1.0 : levels.back().ground_frequency;
  }
  bool found_optimum() const { return std::abs(best_objective - optimum_objective) <= kEnergyTol; }
};

namespace detail {

/// Lowest full-model energy among retained samples of `sets`. ParityXY
/// samples outside the one-per-domain subspace (only reachable under noise)
/// are skipped; if nothing qualifies the empty selection is reported.
inline void pick_solution(const QaoaProblem& prob, const std::vector<const SampleSet*>& sets, double dropoff,
                          QaoaResult& r) {
  bool any = false;
  std::set<Bits> best;
  r.best_objective = 0.0;
  for (const SampleSet* s : sets) {
    bool kept_any = false;
    for (std::size_t e = 0; e < s->entries.size(); ++e) kept_any = kept_any || s->frequency(e) >= dropoff;
    for (std::size_t e = 0; e < s->entries.size(); ++e) {
      if (kept_any && s->frequency(e) < dropoff) continue;
      const Bits x = s->entries[e].first;
      if (!prob.in_subspace(x)) continue;
      const double c = prob.objective_of(x);
      if (!any || c > r.best_objective + kEnergyTol) {
        any = true;
        r.best_objective = c;
        best = {prob.stem_bits(x)};
      } else if (std::abs(c - r.best_objective) <= kEnergyTol) {
        best.insert(prob.stem_bits(x));
      }
    }
  }
  if (!any) best = {0};
  r.best_selections.assign(best.begin(), best.end());
  r.best_energy = -r.best_objective;
}

}  // namespace detail

/// Recomputes termination and solution from `levels`. Used by solve() and to
/// read off the p_max = k result from the prefix of a longer run.
inline QaoaResult finalize(const QaoaProblem& prob, std::vector<LevelRecord> levels, const QaoaConfig& cfg) {
  QaoaResult r;
  r.mixer = prob.mixer();
  r.stem_qubits = prob.stem_qubits();
  r.qubits = prob.qubits();
  r.optimum_objective = prob.optimum().value;
  r.optimum_selections = prob.optimum().optima;
  r.levels = std::move(levels);
  r.terminating_level = r.levels.back().p;
  r.reason = r.levels.back().max_frequency > cfg.stop_frequency ? Termination::StopFrequency : Termination::PMax;
  std::vector<const SampleSet*> sets;
  for (const auto& l : r.levels) sets.push_back(&l.samples);
  detail::pick_solution(prob, sets, cfg.dropoff, r);
  return r;
}

inline ParameterSchedule starting_schedule(const QaoaConfig& cfg) {
  ParameterSchedule s = cfg.warmup();
  if (cfg.p_start == 1) return {{s.betas.front()}, {s.gammas.front()}};
  while (s.level() < cfg.p_start) s = interpolate_schedule(s);
  while (s.level() > cfg.p_start) {
    s.betas.pop_back();
    s.gammas.pop_back();
  }
  return s;
}

/// Prefix of a longer run that a solve with the given p_max would have
/// produced (levels are seeded per level, so the prefixes coincide).
inline QaoaResult truncate_result(const QaoaProblem& prob, const QaoaResult& full, int p_max, const QaoaConfig& cfg) {
  std::vector<LevelRecord> kept;
  for (const auto& l : full.levels) {
    if (l.p <= p_max) kept.push_back(l);
  }
  if (kept.empty()) throw InputError("p_max below the first level of the run");
  return finalize(prob, std::move(kept), cfg);
}

inline QaoaResult trivial_result(MixerKind mixer) {
  QaoaResult r;
  r.mixer = mixer;
  r.best_selections = {0};
  r.optimum_selections = {0};
  r.reason = Termination::Trivial;
  return r;
}

inline QaoaResult solve(const QaoaProblem& prob, const QaoaConfig& cfg) {
  cfg.validate();
  check_qubits(prob.qubits(), "QAOA circuit");
  std::vector<LevelRecord> levels;
  ParameterSchedule sched = starting_schedule(cfg);
  for (int p = cfg.p_start; p <= cfg.p_max; ++p) {
    levels.push_back(optimize(prob, sched, cfg));
    if (levels.back().max_frequency > cfg.stop_frequency || p == cfg.p_max) break;
    sched = interpolate_schedule(levels.back().schedule);
  }
  QaoaResult r = finalize(prob, std::move(levels), cfg);
  if (!cfg.noise.noiseless() && !cfg.noise_reoptimize) {
    LevelRecord rec = r.levels.back();
    rec.samples = run_noisy(prob.circuit(rec.schedule), &prob.cost(), cfg.noise, cfg.shots,
                            level_seed(cfg.seed, rec.p));
    detail::order_entries(rec.samples, prob.cost().energies);
    rec.loss = loss(rec.samples, prob.ising(), cfg.dropoff);
    rec.evaluations = 0;
    summarize(prob, rec);
    std::vector<const SampleSet*> sets{&rec.samples};
    detail::pick_solution(prob, sets, cfg.dropoff, r);
    r.noisy = std::move(rec);
  }
  return r;
}

inline QaoaResult solve(const StemSet& stems, const QuboParams& params, const QaoaConfig& cfg) {
  cfg.validate();
  if (stems.empty()) return trivial_result(cfg.mixer);
  const int qubits = cfg.mixer == MixerKind::X ? stems.size()
                                               : stems.size() + static_cast<int>(partition_domains(stems).size());
  check_qubits(qubits, "QAOA circuit");
  return solve(QaoaProblem(stems, params, cfg.mixer), cfg);
}

// ---------------------------------------------------------------------------
// Warm-up calibration.

struct WarmupOptions {
  int grid = 16;              // points per parameter axis
  double gamma_lo = 0.0;
  double gamma_hi = 1.0;
  int polish_evaluations = 200;  // local refinement from the best grid point; 0 disables
  LossTarget loss_target = LossTarget::Expectation;
  double dropoff = 0.10;
};

struct WarmupResult {
  ParameterSchedule schedule;                  // component-wise mean
  std::vector<ParameterSchedule> per_instance;  // each instance's optimum
  std::vector<double> per_instance_loss;
};

/// Circular mean for angles with period `period`.
inline double periodic_mean(const std::vector<double>& v, double period) {
  double c = 0.0, s = 0.0;
  for (double a : v) {
    c += std::cos(2 * std::numbers::pi * a / period);
    s += std::sin(2 * std::numbers::pi * a / period);
  }
  double m = std::atan2(s, c) * period / (2 * std::numbers::pi);
  if (m < 0) m += period;
  if (m >= period) m -= period;
  return m;
}

/// Exhaustive level-2 grid search per instance (optionally polished by the
/// local optimizer), then the mean over instances. The conjugate-symmetric
/// copy (beta, gamma) -> (-beta, -gamma) is folded onto gamma_1 >= 0 first.
inline WarmupResult warmup_parameters(const std::vector<QaoaProblem>& problems, const WarmupOptions& opt) {
  if (problems.empty()) throw InputError("warm-up needs at least one instance");
  if (opt.grid < 1) throw InputError("warm-up grid needs at least one point per axis");
  std::vector<double> betas, gammas;
  for (int i = 0; i < opt.grid; ++i) {
    betas.push_back(kBetaPeriod * i / opt.grid);
    gammas.push_back(opt.grid == 1 ? opt.gamma_lo
                                   : opt.gamma_lo + (opt.gamma_hi - opt.gamma_lo) * i / (opt.grid - 1));
  }
  const double cut = opt.loss_target == LossTarget::Dropoff ? opt.dropoff : 0.0;
  WarmupResult out;
  for (const auto& prob : problems) {
    const auto& energies = prob.cost().energies;
    ParameterSchedule best;
    double best_loss = std::numeric_limits<double>::infinity();
    // Reuse the state after the first layer across the inner loops.
    for (double g1 : gammas) {
      for (double b1 : betas) {
        const QuantumState first = prob.run({{b1}, {g1}});
        for (double g2 : gammas) {
          QuantumState after_cost = first;
          apply_cost_layer(after_cost, prob.cost(), g2);
          for (double b2 : betas) {
            QuantumState st = after_cost;
            Circuit mix;
            mix.n = prob.qubits();
            prob.append_mixer(mix, b2);
            for (const auto& g : mix.gates) apply_gate(st, g, &prob.cost());
            const double l = loss_from_distribution(st.probabilities(), energies, cut);
            if (l < best_loss - 1e-12) {
              best_loss = l;
              best = {{b1, b2}, {g1, g2}};
            }
          }
        }
      }
    }
    if (opt.polish_evaluations > 0) {
      const auto objective = [&](const std::vector<double>& v) {
        return loss_from_distribution(prob.run(unpack(v)).probabilities(), energies, cut);
      };
      MinimizeOptions mo;
      mo.max_evaluations = opt.polish_evaluations;
      const auto r = minimize_boxed(objective, pack(best), schedule_box(2), mo);
      if (r.value < best_loss) {
        best_loss = r.value;
        best = unpack(r.x);
      }
    }
    if (best.gammas[0] < 0) {
      for (auto& b : best.betas) b = std::fmod(kBetaPeriod - b, kBetaPeriod);
      for (auto& g : best.gammas) g = -g;
    }
    out.per_instance.push_back(best);
    out.per_instance_loss.push_back(best_loss);
  }
  for (int l = 0; l < 2; ++l) {
    std::vector<double> b, g;
    for (const auto& s : out.per_instance) {
      b.push_back(s.betas[static_cast<std::size_t>(l)]);
      g.push_back(s.gammas[static_cast<std::size_t>(l)]);
    }
    out.schedule.betas.push_back(periodic_mean(b, kBetaPeriod));
    double gm = 0.0;
    for (double v : g) gm += v;
    out.schedule.gammas.push_back(gm / static_cast<double>(g.size()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gate counts.

/// Two-qubit gates for the ZZ terms of a fully overlapping domain of size d
/// (two CNOTs per term).
inline int x_cost_two_qubit_gates(int d) { return d * d - d; }

/// Two-qubit gates of one parity XY mixer layer on a domain of size d plus
/// its dummy: four CNOTs per ring edge, d + 1 edges (one edge when d == 1).
inline int pxy_mixer_two_qubit_gates(int d) {
  if (d <= 0) return 0;
  return 4 * (d == 1 ? 1 : d + 1);
}

struct DomainGateCounts {
  int size = 0;
  int cost_within = 0;  // two-qubit gates for ZZ terms inside the domain
  int mixer = 0;        // two-qubit gates of this domain's mixer ring
};

struct GateCountReport {
  MixerKind mixer = MixerKind::X;
  int level = 0;
  int state_prep = 0;       // once per circuit
  int cost_per_level = 0;
  int mixer_per_level = 0;
  std::vector<DomainGateCounts> domains;

  int per_level() const { return cost_per_level + mixer_per_level; }
  int total() const { return state_prep + level * per_level(); }
};

/// Counts CNOT/CRY gates in the elementary decomposition of each part of the
/// level-p circuit.
inline GateCountReport gate_count_report(const QaoaProblem& prob, int p) {
  GateCountReport r;
  r.mixer = prob.mixer();
  r.level = p;
  const auto count = [&](const Circuit& c) { return expand_composites(c, &prob.ising()).count_two_qubit(); };
  Circuit prep = prob.circuit({});
  r.state_prep = count(prep);
  Circuit cost;
  cost.n = prob.qubits();
  cost.add(GateKind::Cost, -1, -1, 1.0);
  r.cost_per_level = count(cost);
  Circuit mix;
  mix.n = prob.qubits();
  prob.append_mixer(mix, 1.0);
  r.mixer_per_level = count(mix);

  for (const auto& d : prob.domains()) {
    DomainGateCounts dc;
    dc.size = d.size();
    for (const auto& [key, w] : prob.ising().J) {
      const bool a = std::binary_search(d.members.begin(), d.members.end(), key.first);
      const bool b = std::binary_search(d.members.begin(), d.members.end(), key.second);
      if (a && b && w != 0.0) dc.cost_within += 2;
    }
    if (prob.mixer() == MixerKind::ParityXY) {
      std::vector<int> ring = d.members;
      ring.push_back(d.dummy_index);
      dc.mixer = 4 * static_cast<int>(ring_edges(ring).size());
    }
    r.domains.push_back(dc);
  }
  return r;
}

inline GateCountReport gate_count_report(const StemSet& stems, const QuboParams& params, MixerKind mixer, int p) {
  if (stems.empty()) {
    GateCountReport r;
    r.mixer = mixer;
    r.level = p;
    return r;
  }
  return gate_count_report(QaoaProblem(stems, params, mixer), p);
}

}  // namespace qaoafold
