#pragma once

// Dense statevector simulation of the QAOA circuits.
//
// Circuits are flat gate lists. Besides elementary gates they may contain
// three composite gates (the diagonal cost layer, the X mixer, and the
// exp(i beta (XX + YY)) pair rotation). Noiseless runs apply composites
// directly; noisy trajectories expand them into CNOT-based decompositions so
// that two-qubit depolarizing errors can be injected after every CNOT/CRY.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qaoafold/common.hpp"
#include "qaoafold/qubo.hpp"
#include "qaoafold/rna_model.hpp"

namespace qaoafold {

using Amplitude = std::complex<double>;

class QuantumState {
 public:
  QuantumState() = default;

  /// |0...0> on n qubits.
  explicit QuantumState(int n) : n_(n) {
    if (n < 0) throw InputError("negative qubit count");
    check_qubits(n, "state");
    amps_.assign(std::size_t{1} << n, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
  }

  int qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude& operator[](std::size_t x) { return amps_[x]; }
  const Amplitude& operator[](std::size_t x) const { return amps_[x]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t x = 0; x < amps_.size(); ++x) p[x] = std::norm(amps_[x]);
    return p;
  }

 private:
  int n_ = 0;
  std::vector<Amplitude> amps_;
};

inline QuantumState init_uniform(int n) {
  if (n < 1) throw InputError("uniform superposition needs at least one qubit");
  QuantumState s(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  for (auto& amp : s.amplitudes()) amp = a;
  return s;
}

// ---------------------------------------------------------------------------
// Elementary gate kernels.

struct Matrix2 {
  Amplitude m00, m01, m10, m11;
};

inline Matrix2 gate_h() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {r, r, r, -r};
}
inline Matrix2 gate_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Matrix2 gate_y() { return {0.0, Amplitude{0, -1}, Amplitude{0, 1}, 0.0}; }
inline Matrix2 gate_z() { return {1.0, 0.0, 0.0, -1.0}; }
/// exp(-i theta X / 2)
inline Matrix2 gate_rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, Amplitude{0, -s}, Amplitude{0, -s}, c};
}
inline Matrix2 gate_ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, -s, s, c};
}
inline Matrix2 gate_rz(double theta) {
  return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

inline void apply_1q(QuantumState& st, int q, const Matrix2& g) {
  const std::size_t stride = std::size_t{1} << q;
  auto a = st.amplitudes();
  for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
    for (std::size_t x = base; x < base + stride; ++x) {
      const Amplitude a0 = a[x], a1 = a[x + stride];
      a[x] = g.m00 * a0 + g.m01 * a1;
      a[x + stride] = g.m10 * a0 + g.m11 * a1;
    }
  }
}

inline void apply_controlled(QuantumState& st, int control, int target, const Matrix2& g) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  auto a = st.amplitudes();
  for (std::size_t x = 0; x < a.size(); ++x) {
    if ((x & cmask) == 0 || (x & tmask) != 0) continue;
    const Amplitude a0 = a[x], a1 = a[x | tmask];
    a[x] = g.m00 * a0 + g.m01 * a1;
    a[x | tmask] = g.m10 * a0 + g.m11 * a1;
  }
}

// ---------------------------------------------------------------------------
// QAOA layers.

/// Diagonal of the cost Hamiltonian over every basis state.
struct CostLayer {
  IsingModel ising;
  std::vector<double> energies;

  explicit CostLayer(IsingModel model) : ising(std::move(model)) {
    check_qubits(ising.n, "cost layer");
    const std::size_t dim = std::size_t{1} << ising.n;
    energies.resize(dim);
    for (std::size_t x = 0; x < dim; ++x) energies[x] = ising.energy(x);
  }
};

/// a_x <- a_x exp(-i gamma E(x))
inline void apply_cost_layer(QuantumState& st, const CostLayer& cost, double gamma) {
  auto a = st.amplitudes();
  if (cost.energies.size() != a.size()) throw InputError("cost layer does not match the state size");
  for (std::size_t x = 0; x < a.size(); ++x) a[x] *= std::polar(1.0, -gamma * cost.energies[x]);
}

/// exp(i beta X) = cos(beta) I + i sin(beta) X on every qubit.
inline void apply_x_mixer(QuantumState& st, double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  const Matrix2 g{c, Amplitude{0, s}, Amplitude{0, s}, c};
  for (int q = 0; q < st.qubits(); ++q) apply_1q(st, q, g);
}

/// exp(i beta (X_a X_b + Y_a Y_b)): rotates within span{|01>, |10>} by 2 beta
/// and leaves |00>, |11> untouched.
inline void apply_xy_pair(QuantumState& st, int qa, int qb, double beta) {
  const double c = std::cos(2 * beta), s = std::sin(2 * beta);
  const std::size_t ma = std::size_t{1} << qa, mb = std::size_t{1} << qb;
  auto a = st.amplitudes();
  for (std::size_t x = 0; x < a.size(); ++x) {
    if ((x & ma) == 0 || (x & mb) != 0) continue;
    const std::size_t y = (x & ~ma) | mb;  // partner with the excitation moved
    const Amplitude ax = a[x], ay = a[y];
    a[x] = c * ax + Amplitude{0, s} * ay;
    a[y] = Amplitude{0, s} * ax + c * ay;
  }
}

enum class MixerKind { X, ParityXY };

inline std::string to_string(MixerKind k) { return k == MixerKind::X ? "x" : "xy"; }

/// For ParityXY each ring lists the member-stem qubits of one domain in
/// ascending order followed by the domain's dummy qubit.
struct MixerSpec {
  MixerKind kind = MixerKind::X;
  std::vector<std::vector<int>> rings;

  static MixerSpec x() { return {}; }

  static MixerSpec parity_xy(const std::vector<Domain>& domains) {
    MixerSpec m;
    m.kind = MixerKind::ParityXY;
    for (const auto& d : domains) {
      std::vector<int> ring = d.members;
      ring.push_back(d.dummy_index);
      m.rings.push_back(std::move(ring));
    }
    return m;
  }

  void validate(int n) const {
    if (kind != MixerKind::ParityXY) return;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& r : rings) {
      if (r.size() < 2) throw InputError("XY ring needs at least two qubits");
      for (int q : r) {
        if (q < 0 || q >= n || seen[static_cast<std::size_t>(q)]) throw InputError("malformed XY ring");
        seen[static_cast<std::size_t>(q)] = true;
      }
    }
  }
};

/// Ring edges in application order: pairs starting at odd 1-based positions,
/// then pairs starting at even positions. The closing edge (last, first)
/// belongs to the class of the last position. A two-qubit ring has a single
/// edge.
inline std::vector<std::pair<int, int>> ring_edges(const std::vector<int>& ring) {
  const std::size_t m = ring.size();
  if (m < 2) return {};
  if (m == 2) return {{ring[0], ring[1]}};
  std::vector<std::pair<int, int>> out;
  for (std::size_t parity = 0; parity < 2; ++parity) {
    for (std::size_t e = parity; e < m; e += 2) out.emplace_back(ring[e], ring[(e + 1) % m]);
  }
  return out;
}

inline void apply_parity_xy_mixer(QuantumState& st, const MixerSpec& spec, double beta) {
  if (spec.kind != MixerKind::ParityXY) throw InputError("mixer is not a parity XY mixer");
  spec.validate(st.qubits());
  for (const auto& ring : spec.rings) {
    for (auto [qa, qb] : ring_edges(ring)) apply_xy_pair(st, qa, qb, beta);
  }
}

// ---------------------------------------------------------------------------
// Circuits.

enum class GateKind { H, X, RX, RY, RZ, CNOT, CRY, Cost, XMixer, XYPair };

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::CNOT: return "cnot";
    case GateKind::CRY: return "cry";
    case GateKind::Cost: return "cost";
    case GateKind::XMixer: return "x_mixer";
    case GateKind::XYPair: return "xy_pair";
  }
  return "?";
}

/// `a` is the target (or control for CNOT/CRY), `b` the second qubit.
struct Gate {
  GateKind kind;
  int a = -1;
  int b = -1;
  double angle = 0.0;

  bool two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CRY; }
  bool composite() const {
    return kind == GateKind::Cost || kind == GateKind::XMixer || kind == GateKind::XYPair;
  }
};

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;

  void add(GateKind k, int a = -1, int b = -1, double angle = 0.0) { gates.push_back({k, a, b, angle}); }

  int count_two_qubit() const {
    return static_cast<int>(std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.two_qubit(); }));
  }
};

/// Applies one gate. Cost gates need the cost layer of the circuit.
inline void apply_gate(QuantumState& st, const Gate& g, const CostLayer* cost) {
  switch (g.kind) {
    case GateKind::H: apply_1q(st, g.a, gate_h()); break;
    case GateKind::X: apply_1q(st, g.a, gate_x()); break;
    case GateKind::RX: apply_1q(st, g.a, gate_rx(g.angle)); break;
    case GateKind::RY: apply_1q(st, g.a, gate_ry(g.angle)); break;
    case GateKind::RZ: apply_1q(st, g.a, gate_rz(g.angle)); break;
    case GateKind::CNOT: apply_controlled(st, g.a, g.b, gate_x()); break;
    case GateKind::CRY: apply_controlled(st, g.a, g.b, gate_ry(g.angle)); break;
    case GateKind::Cost:
      if (cost == nullptr) throw InputError("cost gate without a cost layer");
      apply_cost_layer(st, *cost, g.angle);
      break;
    case GateKind::XMixer: apply_x_mixer(st, g.angle); break;
    case GateKind::XYPair: apply_xy_pair(st, g.a, g.b, g.angle); break;
  }
}

inline QuantumState run_circuit(const Circuit& c, const CostLayer* cost) {
  QuantumState st(c.n);
  for (const auto& g : c.gates) apply_gate(st, g, cost);
  return st;
}

/// Linear W-state cascade on one ring: X on the first qubit, then per step a
/// controlled-RY splitting off the remaining weight and a CNOT back, i.e.
/// 2 (m - 1) two-qubit gates for m qubits.
inline void append_w_state(Circuit& c, const std::vector<int>& ring) {
  const int m = static_cast<int>(ring.size());
  if (m == 0) return;
  c.add(GateKind::X, ring[0]);
  for (int l = 0; l + 1 < m; ++l) {
    const double keep = std::sqrt(1.0 / static_cast<double>(m - l));
    c.add(GateKind::CRY, ring[static_cast<std::size_t>(l)], ring[static_cast<std::size_t>(l + 1)],
          2.0 * std::acos(keep));
    c.add(GateKind::CNOT, ring[static_cast<std::size_t>(l + 1)], ring[static_cast<std::size_t>(l)]);
  }
}

/// Product of per-domain W states, each domain ring holding exactly one
/// excitation. `n` is the total register size (stems plus dummies).
inline QuantumState prepare_w_states(const std::vector<Domain>& domains, int n) {
  if (domains.empty()) throw InputError("W-state preparation needs at least one domain");
  const auto mixer = MixerSpec::parity_xy(domains);
  mixer.validate(n);
  Circuit c;
  c.n = n;
  for (const auto& ring : mixer.rings) append_w_state(c, ring);
  return run_circuit(c, nullptr);
}

/// Rewrites composite gates as H/RX/RZ/CNOT sequences; equal to the
/// composite circuit up to a global phase.
inline Circuit expand_composites(const Circuit& in, const IsingModel* ising) {
  Circuit out;
  out.n = in.n;
  const auto zz = [&out](int qa, int qb, double theta) {  // exp(-i theta/2 Z_a Z_b)
    out.add(GateKind::CNOT, qa, qb);
    out.add(GateKind::RZ, qb, -1, theta);
    out.add(GateKind::CNOT, qa, qb);
  };
  for (const auto& g : in.gates) {
    switch (g.kind) {
      case GateKind::Cost: {
        if (ising == nullptr) throw InputError("cost gate without an Ising model");
        for (int q = 0; q < ising->n; ++q) {
          const double h = ising->h[static_cast<std::size_t>(q)];
          if (h != 0.0) out.add(GateKind::RZ, q, -1, 2.0 * g.angle * h);
        }
        for (const auto& [key, w] : ising->J) zz(key.first, key.second, 2.0 * g.angle * w);
        break;
      }
      case GateKind::XMixer:
        for (int q = 0; q < in.n; ++q) out.add(GateKind::RX, q, -1, -2.0 * g.angle);
        break;
      case GateKind::XYPair: {
        // exp(i b XX) then exp(i b YY); both are exp(i b ZZ) in a rotated basis.
        out.add(GateKind::H, g.a);
        out.add(GateKind::H, g.b);
        zz(g.a, g.b, -2.0 * g.angle);
        out.add(GateKind::H, g.a);
        out.add(GateKind::H, g.b);
        out.add(GateKind::RX, g.a, -1, std::numbers::pi / 2);
        out.add(GateKind::RX, g.b, -1, std::numbers::pi / 2);
        zz(g.a, g.b, -2.0 * g.angle);
        out.add(GateKind::RX, g.a, -1, -std::numbers::pi / 2);
        out.add(GateKind::RX, g.b, -1, -std::numbers::pi / 2);
        break;
      }
      default: out.gates.push_back(g);
    }
  }
  return out;
}

inline nlohmann::json to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : c.gates) {
    nlohmann::json qubits = nlohmann::json::array();
    if (g.a >= 0) qubits.push_back(g.a);
    if (g.b >= 0) qubits.push_back(g.b);
    gates.push_back({{"gate", gate_name(g.kind)}, {"qubits", qubits}, {"angle", g.angle}});
  }
  return {{"qubits", c.n}, {"two_qubit_gates", c.count_two_qubit()}, {"gates", gates}};
}

// ---------------------------------------------------------------------------
// Measurement.

struct SampleSet {
  int n = 0;
  int shots = 0;
  std::vector<std::pair<Bits, int>> entries;  // count descending, then bits ascending

  double frequency(std::size_t e) const { return static_cast<double>(entries[e].second) / shots; }

  double frequency_of(Bits x) const {
    for (const auto& [b, c] : entries) {
      if (b == x) return static_cast<double>(c) / shots;
    }
    return 0.0;
  }

  static SampleSet from_counts(int n, const std::map<Bits, int>& counts) {
    SampleSet s;
    s.n = n;
    for (const auto& [b, c] : counts) {
      s.entries.emplace_back(b, c);
      s.shots += c;
    }
    std::stable_sort(s.entries.begin(), s.entries.end(),
                     [](const auto& l, const auto& r) { return l.second > r.second; });
    return s;
  }
};

inline nlohmann::json to_json(const SampleSet& s) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& [b, c] : s.entries) counts.push_back({{"bits", bits_to_string(b, s.n)}, {"count", c}});
  return {{"qubits", s.n}, {"shots", s.shots}, {"counts", counts}};
}

namespace detail {

inline std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    acc += probs[x];
    cdf[x] = acc;
  }
  return cdf;
}

inline Bits draw(const std::vector<double>& cdf, double u) {
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  // Skip zero-probability states sitting at the boundary.
  while (it != cdf.begin() && *(it - 1) == *it) --it;
  return static_cast<Bits>(it - cdf.begin());
}

}  // namespace detail

/// Multinomial sampling of `shots` outcomes from a probability vector, one
/// uniform draw per shot from a seeded mt19937_64.
inline SampleSet sample_distribution(std::span<const double> probs, int n, int shots, std::uint64_t seed) {
  if (shots < 1) throw InputError("shots must be at least 1");
  const auto cdf = detail::cumulative(probs);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::map<Bits, int> counts;
  for (int s = 0; s < shots; ++s) ++counts[detail::draw(cdf, uni(rng))];
  return SampleSet::from_counts(n, counts);
}

inline SampleSet sample(const QuantumState& st, int shots, std::uint64_t seed) {
  const auto p = st.probabilities();
  return sample_distribution(p, st.qubits(), shots, seed);
}

// ---------------------------------------------------------------------------
// Noise.

struct NoiseSpec {
  double two_qubit_error = 0.0;  // depolarizing probability per CNOT/CRY
  double readout_p10 = 0.0;      // P(read 1 | true 0)
  double readout_p01 = 0.0;      // P(read 0 | true 1)

  bool noiseless() const { return two_qubit_error == 0.0 && readout_p10 == 0.0 && readout_p01 == 0.0; }

  void validate() const {
    for (double p : {two_qubit_error, readout_p10, readout_p01}) {
      if (!(p >= 0.0 && p <= 1.0)) throw InputError("noise probabilities must lie in [0, 1]");
    }
  }
};

/// Noisy execution of a circuit (composites allowed). Everything needed to
/// replay a trajectory is built once.
class NoisyExecutor {
 public:
  NoisyExecutor(const Circuit& circuit, const CostLayer* cost, NoiseSpec noise)
      : circuit_(circuit), cost_(cost), noise_(noise) {
    noise_.validate();
    elementary_ = expand_composites(circuit_, cost_ != nullptr ? &cost_->ising : nullptr);
    for (std::size_t g = 0; g < elementary_.gates.size(); ++g) {
      if (elementary_.gates[g].two_qubit()) two_qubit_at_.push_back(g);
    }
    ideal_ = run_circuit(circuit_, cost_).probabilities();
  }

  const Circuit& elementary() const { return elementary_; }
  const std::vector<double>& ideal_probabilities() const { return ideal_; }

  /// One trajectory per shot. Streams: measurement uses `seed` exactly as
  /// sample() does, so error-free trajectories reproduce the ideal sampler;
  /// error events and readout flips use two derived streams.
  SampleSet run(int shots, std::uint64_t seed) const {
    if (shots < 1) throw InputError("shots must be at least 1");
    const auto ideal_cdf = detail::cumulative(ideal_);
    std::mt19937_64 meas(seed), events(mix_seed(seed, 1)), readout(mix_seed(seed, 2));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::map<Bits, int> counts;
    std::vector<std::pair<std::size_t, int>> errs;
    for (int s = 0; s < shots; ++s) {
      draw_errors(events, errs);
      Bits outcome = 0;
      if (errs.empty()) {
        outcome = detail::draw(ideal_cdf, uni(meas));
      } else {
        const auto probs = trajectory(errs).probabilities();
        outcome = detail::draw(detail::cumulative(probs), uni(meas));
      }
      counts[flip_readout(outcome, readout)]++;
    }
    return SampleSet::from_counts(circuit_.n, counts);
  }

  /// Mean output distribution (readout channel included) over `trajectories`
  /// fixed-seed trajectories. Smooth in the circuit angles, so it can drive a
  /// finite-difference optimizer.
  std::vector<double> average_distribution(int trajectories, std::uint64_t seed) const {
    std::vector<double> acc(ideal_.size(), 0.0);
    std::mt19937_64 events(mix_seed(seed, 1));
    std::vector<std::pair<std::size_t, int>> errs;
    int clean = 0;
    for (int t = 0; t < trajectories; ++t) {
      draw_errors(events, errs);
      if (errs.empty()) {
        ++clean;
        continue;
      }
      const auto p = trajectory(errs).probabilities();
      for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += p[x];
    }
    for (std::size_t x = 0; x < acc.size(); ++x) acc[x] = (acc[x] + clean * ideal_[x]) / trajectories;
    return apply_readout_channel(std::move(acc));
  }

 private:
  void draw_errors(std::mt19937_64& rng, std::vector<std::pair<std::size_t, int>>& errs) const {
    errs.clear();
    if (noise_.two_qubit_error <= 0.0) return;
    std::bernoulli_distribution hit(noise_.two_qubit_error);
    std::uniform_int_distribution<int> pauli(1, 15);
    for (std::size_t g : two_qubit_at_) {
      if (hit(rng)) errs.emplace_back(g, pauli(rng));
    }
  }

  /// Pauli code p in 1..15: low two bits act on gate qubit a, high two on b,
  /// each 0=I 1=X 2=Y 3=Z.
  static void apply_pauli(QuantumState& st, int q, int code) {
    if (code == 1) apply_1q(st, q, gate_x());
    if (code == 2) apply_1q(st, q, gate_y());
    if (code == 3) apply_1q(st, q, gate_z());
  }

  QuantumState trajectory(const std::vector<std::pair<std::size_t, int>>& errs) const {
    QuantumState st(elementary_.n);
    std::size_t next = 0;
    for (std::size_t g = 0; g < elementary_.gates.size(); ++g) {
      const Gate& gate = elementary_.gates[g];
      apply_gate(st, gate, cost_);
      while (next < errs.size() && errs[next].first == g) {
        apply_pauli(st, gate.a, errs[next].second & 3);
        apply_pauli(st, gate.b, errs[next].second >> 2);
        ++next;
      }
    }
    return st;
  }

  Bits flip_readout(Bits x, std::mt19937_64& rng) const {
    if (noise_.readout_p10 <= 0.0 && noise_.readout_p01 <= 0.0) return x;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int q = 0; q < circuit_.n; ++q) {
      const double p = bit(x, q) ? noise_.readout_p01 : noise_.readout_p10;
      if (uni(rng) < p) x ^= Bits{1} << q;
    }
    return x;
  }

  std::vector<double> apply_readout_channel(std::vector<double> p) const {
    if (noise_.readout_p10 <= 0.0 && noise_.readout_p01 <= 0.0) return p;
    for (int q = 0; q < circuit_.n; ++q) {
      const std::size_t m = std::size_t{1} << q;
      for (std::size_t x = 0; x < p.size(); ++x) {
        if (x & m) continue;
        const double p0 = p[x], p1 = p[x | m];
        p[x] = p0 * (1 - noise_.readout_p10) + p1 * noise_.readout_p01;
        p[x | m] = p0 * noise_.readout_p10 + p1 * (1 - noise_.readout_p01);
      }
    }
    return p;
  }

  Circuit circuit_;
  const CostLayer* cost_;
  NoiseSpec noise_;
  Circuit elementary_;
  std::vector<std::size_t> two_qubit_at_;
  std::vector<double> ideal_;
};

inline SampleSet run_noisy(const Circuit& circuit, const CostLayer* cost, const NoiseSpec& noise, int shots,
                           std::uint64_t seed) {
  return NoisyExecutor(circuit, cost, noise).run(shots, seed);
}

}  // namespace qaoafold
