#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qaoafold {

/// Malformed or invalid user input (bad symbols, unbalanced brackets, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resource guard was violated, e.g. too many qubits for dense simulation.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest register the dense simulator and the exhaustive solver accept.
inline constexpr int kMaxQubits = 24;

/// Absolute tolerance used when comparing energies for degeneracy.
inline constexpr double kEnergyTol = 1e-9;

/// Computational basis index. Qubit q is bit q of the integer, so the
/// decision variable x_{q+1} lives in bit q.
using Bits = std::uint64_t;

inline bool bit(Bits x, int q) { return ((x >> q) & 1u) != 0; }

inline int popcount(Bits x) { return std::popcount(x); }

inline Bits low_mask(int n) { return n >= 64 ? ~Bits{0} : ((Bits{1} << n) - 1); }

/// Renders the low `n` bits with qubit 0 first, i.e. "x1 x2 ... xn".
inline std::string bits_to_string(Bits x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if (bit(x, q)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

inline Bits bits_from_string(std::string_view s) {
  if (s.size() > 64) throw InputError("bitstring longer than 64 characters");
  Bits x = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    if (s[q] == '1') {
      x |= Bits{1} << q;
    } else if (s[q] != '0') {
      throw InputError("bitstring may contain only 0 and 1: '" + std::string(s) + "'");
    }
  }
  return x;
}

inline void check_qubits(int n, std::string_view what) {
  if (n > kMaxQubits) {
    throw GuardError(std::string(what) + " needs " + std::to_string(n) + " qubits; the limit is " +
                     std::to_string(kMaxQubits) +
                     " (try a larger --min-stem or a shorter sequence)");
  }
}

/// SplitMix64 finalizer; derives independent stream seeds from one user seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qaoafold
