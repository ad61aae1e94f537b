#pragma once

// Sequences, stems and the relations between stems (overlap, pseudoknot,
// domains). Base positions are 1-based throughout the public API.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qaoafold/common.hpp"

namespace qaoafold {

using BasePair = std::pair<int, int>;  // (i, j) with i < j, 1-based

inline bool is_base(char c) { return c == 'A' || c == 'C' || c == 'G' || c == 'U'; }

/// A-U, C-G and the G-U wobble pair.
inline bool can_pair(char a, char b) {
  if (a > b) std::swap(a, b);
  return (a == 'A' && b == 'U') || (a == 'C' && b == 'G') || (a == 'G' && b == 'U');
}

class Sequence {
 public:
  Sequence() = default;

  /// Uppercases, maps T to U and rejects anything outside ACGU.
  explicit Sequence(std::string_view bases, std::string id = {}) : id_(std::move(id)) {
    bases_.reserve(bases.size());
    for (std::size_t p = 0; p < bases.size(); ++p) {
      char c = static_cast<char>(std::toupper(static_cast<unsigned char>(bases[p])));
      if (c == 'T') c = 'U';
      if (!is_base(c)) {
        throw InputError("invalid base '" + std::string(1, bases[p]) + "' at position " +
                         std::to_string(p + 1) + (id_.empty() ? "" : " of " + id_));
      }
      bases_.push_back(c);
    }
    if (bases_.empty()) throw InputError("empty sequence" + (id_.empty() ? "" : ": " + id_));
  }

  const std::string& id() const { return id_; }
  const std::string& bases() const { return bases_; }
  int size() const { return static_cast<int>(bases_.size()); }
  /// 1-based access.
  char at(int pos) const { return bases_.at(static_cast<std::size_t>(pos - 1)); }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::string id_;
  std::string bases_;
};

/// Pairs (i, j), (i+1, j-1), ..., (i+k-1, j-k+1). k == 0 marks a dummy stem.
struct Stem {
  int i = 0;
  int j = 0;
  int k = 0;

  bool is_dummy() const { return k == 0; }
  int inner_i() const { return i + k - 1; }
  int inner_j() const { return j - k + 1; }

  std::vector<BasePair> pairs() const {
    std::vector<BasePair> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) out.emplace_back(i + t, j - t);
    return out;
  }

  bool covers(int pos) const {
    return k > 0 && ((pos >= i && pos <= inner_i()) || (pos >= inner_j() && pos <= j));
  }

  friend auto operator<=>(const Stem&, const Stem&) = default;
};

struct StemOptions {
  int min_len = 3;
  /// Minimum number of unpaired bases enclosed by a pair: (i, j) needs j - i > min_loop.
  int min_loop = 3;
  /// Report only runs that cannot be extended in either direction.
  bool maximal_only = true;

  /// Every run of length >= 3 including sub-stems, no loop minimum. This is
  /// the enumeration behind the 18-stem PKB092 overlap figure.
  static StemOptions exhaustive() { return {3, 0, false}; }
};

class PairingMatrix {
 public:
  explicit PairingMatrix(const Sequence& seq, int min_loop = 3)
      : n_(seq.size()), cells_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0) {
    for (int a = 1; a <= n_; ++a) {
      for (int b = a + 1; b <= n_; ++b) {
        if (b - a > min_loop && can_pair(seq.at(a), seq.at(b))) {
          cell(a, b) = 1;
          cell(b, a) = 1;
        }
      }
    }
  }

  int size() const { return n_; }

  /// 1-based; false outside the matrix.
  bool operator()(int a, int b) const {
    if (a < 1 || b < 1 || a > n_ || b > n_) return false;
    return cells_[index(a, b)] != 0;
  }

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(b - 1);
  }
  unsigned char& cell(int a, int b) { return cells_[index(a, b)]; }

  int n_;
  std::vector<unsigned char> cells_;
};

inline PairingMatrix pairing_matrix(const Sequence& seq, int min_loop = 3) {
  return PairingMatrix(seq, min_loop);
}

class StemSet {
 public:
  StemSet() = default;

  /// Sorts into canonical order and validates every stem against `seq`.
  StemSet(Sequence seq, std::vector<Stem> stems) : seq_(std::move(seq)), stems_(std::move(stems)) {
    std::sort(stems_.begin(), stems_.end());
    for (std::size_t s = 0; s < stems_.size(); ++s) {
      const Stem& st = stems_[s];
      if (st.k < 1) throw InputError("stem " + std::to_string(s + 1) + " has no pairs");
      if (st.i < 1 || st.j > seq_.size() || st.inner_i() >= st.inner_j()) {
        throw InputError("stem (" + std::to_string(st.i) + "," + std::to_string(st.j) + "," +
                         std::to_string(st.k) + ") does not fit the sequence");
      }
      for (auto [a, b] : st.pairs()) {
        if (!can_pair(seq_.at(a), seq_.at(b))) {
          throw InputError("stem pair (" + std::to_string(a) + "," + std::to_string(b) +
                           ") is not a legal base pair");
        }
      }
      if (s > 0 && stems_[s - 1] == st) throw InputError("duplicate stem");
    }
  }

  const Sequence& sequence() const { return seq_; }
  const std::vector<Stem>& stems() const { return stems_; }
  int size() const { return static_cast<int>(stems_.size()); }
  bool empty() const { return stems_.empty(); }
  const Stem& operator[](int s) const { return stems_[static_cast<std::size_t>(s)]; }

 private:
  Sequence seq_;
  std::vector<Stem> stems_;
};

/// Walks anti-diagonal runs of the pairing matrix. Each maximal run is
/// traversed once from its outermost pair, so the scan is O(N_seq^2) plus
/// the size of the output.
inline StemSet enumerate_stems(const Sequence& seq, const StemOptions& opt = {}) {
  if (opt.min_len < 1) throw InputError("minimum stem length must be at least 1");
  if (opt.min_loop < 0) throw InputError("minimum loop size must be non-negative");
  const PairingMatrix m(seq, opt.min_loop);
  const int n = seq.size();
  std::vector<Stem> out;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (!m(a, b) || m(a - 1, b + 1)) continue;  // not the outer end of a run
      int len = 0;
      while (a + len < b - len && m(a + len, b - len)) ++len;
      if (len < opt.min_len) continue;
      if (opt.maximal_only) {
        out.push_back({a, b, len});
        continue;
      }
      for (int off = 0; off + opt.min_len <= len; ++off) {
        for (int k = opt.min_len; off + k <= len; ++k) out.push_back({a + off, b - off, k});
      }
    }
  }
  return StemSet(seq, std::move(out));
}

/// True iff the base positions of the two stems intersect.
inline bool stems_overlap(const Stem& s1, const Stem& s2) {
  if (s1.is_dummy() || s2.is_dummy()) return false;
  const auto hit = [](int lo1, int hi1, int lo2, int hi2) { return lo1 <= hi2 && lo2 <= hi1; };
  return hit(s1.i, s1.inner_i(), s2.i, s2.inner_i()) || hit(s1.i, s1.inner_i(), s2.inner_j(), s2.j) ||
         hit(s1.inner_j(), s1.j, s2.i, s2.inner_i()) || hit(s1.inner_j(), s1.j, s2.inner_j(), s2.j);
}

/// Crossing (non-nested, non-disjoint) pairing intervals of two
/// non-overlapping stems. Overlapping stems are never reported as a pseudoknot.
inline bool stems_pseudoknot(const Stem& s1, const Stem& s2) {
  if (s1.is_dummy() || s2.is_dummy() || stems_overlap(s1, s2)) return false;
  return (s1.i < s2.i && s2.i < s1.j && s1.j < s2.j) || (s2.i < s1.i && s1.i < s2.j && s2.j < s1.j);
}

struct Domain {
  std::vector<int> members;  // 0-based stem indices, ascending
  int dummy_index = -1;      // qubit of the zero-length dummy stem

  int size() const { return static_cast<int>(members.size()); }
};

/// Greedy left-to-right scan over the canonical stem order: a stem joins the
/// current domain only if it overlaps every member, otherwise it opens a new
/// one. Dummy qubits are numbered after the stems, one per domain.
inline std::vector<Domain> partition_domains(const StemSet& stems) {
  std::vector<Domain> out;
  for (int s = 0; s < stems.size(); ++s) {
    bool joins = !out.empty() && std::all_of(out.back().members.begin(), out.back().members.end(),
                                             [&](int m) { return stems_overlap(stems[m], stems[s]); });
    if (!joins) out.emplace_back();
    out.back().members.push_back(s);
  }
  for (std::size_t d = 0; d < out.size(); ++d) out[d].dummy_index = stems.size() + static_cast<int>(d);
  return out;
}

struct Structure {
  std::vector<BasePair> pairs;  // sorted
  bool conflict = false;        // two selected stems overlap
};

/// Union of the base pairs of the selected stems (bit s selects stem s).
inline Structure structure_from_selection(const StemSet& stems, Bits selection) {
  Structure out;
  std::vector<int> chosen;
  for (int s = 0; s < stems.size(); ++s) {
    if (!bit(selection, s)) continue;
    for (int c : chosen) out.conflict = out.conflict || stems_overlap(stems[c], stems[s]);
    chosen.push_back(s);
    for (const auto& p : stems[s].pairs()) out.pairs.push_back(p);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
  return out;
}

/// True iff no two selected stems overlap.
inline bool selection_feasible(const StemSet& stems, Bits selection) {
  for (int a = 0; a < stems.size(); ++a) {
    if (!bit(selection, a)) continue;
    for (int b = a + 1; b < stems.size(); ++b) {
      if (bit(selection, b) && stems_overlap(stems[a], stems[b])) return false;
    }
  }
  return true;
}

}  // namespace qaoafold
