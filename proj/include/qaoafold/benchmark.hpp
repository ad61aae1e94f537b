#pragma once

// Synthetic benchmark instances: helices planted into a filler background.
// Fillers are drawn from {A, C}, which pair with nothing in the filler, so
// every stem involves at least one planted base. Planted U and G still pair
// with filler A and C, which produces competing, overlapping stems.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qaoafold/common.hpp"
#include "qaoafold/qubo.hpp"
#include "qaoafold/rna_model.hpp"

namespace qaoafold {

struct BenchmarkOptions {
  int min_length = 20;
  int max_length = 36;
  int min_helices = 1;
  int max_helices = 3;
  int min_helix = 3;
  int max_helix = 5;
  int min_stems = 2;
  int max_stems = 10;
  int max_qubits_x = 12;   // N
  int max_qubits_xy = 16;  // N + N_d
  StemOptions stems;
  QuboParams params;
  /// Reject instances whose exhaustive optimum selects overlapping stems.
  bool require_feasible_optimum = true;
};

struct BenchmarkInstance {
  Sequence sequence;
  std::vector<BasePair> reference;  // the planted helices
  StemSet stems;
};

namespace detail {

inline char partner(char b, std::mt19937_64& rng) {
  switch (b) {
    case 'A': return 'U';
    case 'C': return 'G';
    case 'G': return rng() % 3 == 0 ? 'U' : 'C';
    default: return rng() % 3 == 0 ? 'G' : 'A';
  }
}

/// One attempt; false on rejection.
inline bool try_instance(std::mt19937_64& rng, const BenchmarkOptions& opt, BenchmarkInstance& out) {
  const auto uniform = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  const int n = uniform(opt.min_length, opt.max_length);
  std::string bases(static_cast<std::size_t>(n), ' ');
  for (auto& c : bases) c = rng() % 2 ? 'A' : 'C';
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
  std::vector<BasePair> planted;
  const std::string pool = "ACGU";
  const int helices = uniform(opt.min_helices, opt.max_helices);
  for (int h = 0; h < helices; ++h) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      const int k = uniform(opt.min_helix, opt.max_helix);
      const int span = 2 * k + opt.stems.min_loop + 1;  // shortest legal helix footprint
      if (span > n) break;
      const int i = uniform(1, n - span + 1);
      const int j = uniform(i + span - 1, n);
      bool free = true;
      for (int t = 0; t < k; ++t) free = free && !used[static_cast<std::size_t>(i + t)] && !used[static_cast<std::size_t>(j - t)];
      if (!free) continue;
      for (int t = 0; t < k; ++t) {
        const char b = pool[rng() % 4];
        bases[static_cast<std::size_t>(i + t - 1)] = b;
        bases[static_cast<std::size_t>(j - t - 1)] = partner(b, rng);
        used[static_cast<std::size_t>(i + t)] = used[static_cast<std::size_t>(j - t)] = true;
        planted.emplace_back(i + t, j - t);
      }
      break;
    }
  }
  if (planted.empty()) return false;
  Sequence seq(bases);
  StemSet stems = enumerate_stems(seq, opt.stems);
  const int nstems = stems.size();
  if (nstems < opt.min_stems || nstems > opt.max_stems || nstems > opt.max_qubits_x) return false;
  if (nstems + static_cast<int>(partition_domains(stems).size()) > opt.max_qubits_xy) return false;
  if (opt.require_feasible_optimum) {
    const auto best = brute_force_solve(build_qubo(stems, opt.params));
    for (Bits x : best.optima) {
      if (!selection_feasible(stems, x)) return false;
    }
  }
  std::sort(planted.begin(), planted.end());
  out = {std::move(seq), std::move(planted), std::move(stems)};
  return true;
}

}  // namespace detail

/// `count` instances from one seeded stream, ids "<prefix>_NN".
inline std::vector<BenchmarkInstance> generate_benchmark(int count, std::uint64_t seed, const BenchmarkOptions& opt = {},
                                                         const std::string& prefix = "bench") {
  if (count < 0) throw InputError("instance count must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<BenchmarkInstance> out;
  long attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100000L * (count + 1)) throw InputError("benchmark options admit no instances");
    BenchmarkInstance inst{Sequence("A"), {}, {}};
    if (!detail::try_instance(rng, opt, inst)) continue;
    char id[64];
    std::snprintf(id, sizeof id, "%s_%02d", prefix.c_str(), static_cast<int>(out.size()) + 1);
    inst.sequence = Sequence(inst.sequence.bases(), id);
    inst.stems = StemSet(inst.sequence, inst.stems.stems());
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace qaoafold
