#pragma once

// File formats (FASTA, dot-bracket), configuration files and JSON reports.

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qaoafold/common.hpp"
#include "qaoafold/evaluation.hpp"
#include "qaoafold/qaoa.hpp"
#include "qaoafold/qubo.hpp"
#include "qaoafold/rna_model.hpp"

namespace qaoafold {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kConfigEnv = "QAOAFOLD_CONFIG";

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(trim(line));
  return out;
}

inline std::string header_id(const std::string& line, int lineno) {
  std::string id = trim(std::string_view(line).substr(1));
  id = id.substr(0, id.find_first_of(" \t"));
  if (id.empty()) throw InputError("line " + std::to_string(lineno) + ": record header without an id");
  return id;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FASTA.

/// One Sequence per '>' record; sequence lines are concatenated. Blank lines
/// and ';' comments are skipped.
inline std::vector<Sequence> parse_fasta(const std::string& text) {
  std::vector<Sequence> out;
  std::string id, bases;
  bool open = false;
  int lineno = 0;
  const auto flush = [&] {
    if (open) out.emplace_back(bases, id);
  };
  for (const auto& line : detail::lines(text)) {
    ++lineno;
    if (line.empty() || line[0] == ';') continue;
    if (line[0] == '>') {
      flush();
      id = detail::header_id(line, lineno);
      bases.clear();
      open = true;
      continue;
    }
    if (!open) throw InputError("line " + std::to_string(lineno) + ": sequence data before the first '>' header");
    for (char c : line) {
      if (c != ' ' && c != '\t') bases.push_back(c);
    }
  }
  flush();
  return out;
}

inline std::vector<Sequence> read_fasta(const std::string& path) { return parse_fasta(read_text(path)); }

// ---------------------------------------------------------------------------
// Dot-bracket.

inline constexpr std::string_view kOpen = "([{<";
inline constexpr std::string_view kClose = ")]}>";

/// Stack matching per bracket layer; layers may cross each other.
inline ReferenceStructure parse_dotbracket(std::string_view annotation, int length, std::string id = {}) {
  if (static_cast<int>(annotation.size()) != length) {
    throw InputError("dot-bracket has " + std::to_string(annotation.size()) + " symbols for a sequence of " +
                     std::to_string(length));
  }
  ReferenceStructure ref{std::move(id), {}};
  std::vector<int> stacks[4];
  for (std::size_t p = 0; p < annotation.size(); ++p) {
    const char c = annotation[p];
    const int pos = static_cast<int>(p) + 1;
    if (c == '.' || c == '-' || c == ',' || c == ':' || c == '_') continue;
    if (const auto o = kOpen.find(c); o != std::string_view::npos) {
      stacks[o].push_back(pos);
    } else if (const auto cl = kClose.find(c); cl != std::string_view::npos) {
      if (stacks[cl].empty()) throw InputError("unmatched '" + std::string(1, c) + "' at position " + std::to_string(pos));
      ref.pairs.emplace_back(stacks[cl].back(), pos);
      stacks[cl].pop_back();
    } else {
      throw InputError("unexpected symbol '" + std::string(1, c) + "' at position " + std::to_string(pos));
    }
  }
  for (std::size_t l = 0; l < 4; ++l) {
    if (!stacks[l].empty()) {
      throw InputError("unmatched '" + std::string(1, kOpen[l]) + "' at position " + std::to_string(stacks[l].back()));
    }
  }
  std::sort(ref.pairs.begin(), ref.pairs.end());
  return ref;
}

inline ReferenceStructure parse_dotbracket(std::string_view annotation, const Sequence& seq) {
  return parse_dotbracket(annotation, seq.size(), seq.id());
}

/// Greedy layer assignment in order of the 5' base: each pair goes to the
/// first layer where it crosses nothing already placed.
inline std::string to_dotbracket(std::vector<BasePair> pairs, int length) {
  std::sort(pairs.begin(), pairs.end());
  std::string s(static_cast<std::size_t>(length), '.');
  std::vector<std::vector<BasePair>> layers(4);
  for (auto [i, j] : pairs) {
    if (i < 1 || j > length || i >= j) {
      throw InputError("pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    if (s[static_cast<std::size_t>(i - 1)] != '.' || s[static_cast<std::size_t>(j - 1)] != '.') {
      throw InputError("base paired twice at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    std::size_t l = 0;
    for (; l < layers.size(); ++l) {
      const bool crosses = std::any_of(layers[l].begin(), layers[l].end(), [&](const BasePair& q) {
        return (q.first < i && i < q.second && q.second < j) || (i < q.first && q.first < j && j < q.second);
      });
      if (!crosses) break;
    }
    if (l == layers.size()) throw InputError("structure needs more than four bracket layers");
    layers[l].emplace_back(i, j);
    s[static_cast<std::size_t>(i - 1)] = kOpen[l];
    s[static_cast<std::size_t>(j - 1)] = kClose[l];
  }
  return s;
}

struct DbnRecord {
  Sequence sequence;
  ReferenceStructure reference;
};

/// Records of three lines: ">id", bases, dot-bracket.
inline std::vector<DbnRecord> parse_dbn(const std::string& text) {
  std::vector<DbnRecord> out;
  std::vector<std::pair<int, std::string>> body;
  int lineno = 0;
  for (const auto& line : detail::lines(text)) {
    ++lineno;
    if (!line.empty() && line[0] != ';') body.emplace_back(lineno, line);
  }
  for (std::size_t k = 0; k < body.size(); k += 3) {
    const auto& [ln, head] = body[k];
    if (head[0] != '>' || k + 2 >= body.size()) {
      throw InputError("line " + std::to_string(ln) + ": expected '>id', sequence and structure lines");
    }
    Sequence seq(body[k + 1].second, detail::header_id(head, ln));
    auto ref = parse_dotbracket(body[k + 2].second, seq);
    ref.validate(seq.size());
    out.push_back({std::move(seq), std::move(ref)});
  }
  return out;
}

inline std::vector<DbnRecord> read_dbn(const std::string& path) { return parse_dbn(read_text(path)); }

inline std::string format_dbn(const std::vector<DbnRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += ">" + r.sequence.id() + "\n" + r.sequence.bases() + "\n" +
           to_dotbracket(r.reference.pairs, r.sequence.size()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration.

struct RunConfig {
  QuboParams qubo;
  StemOptions stems;
  QaoaConfig qaoa;
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<std::string_view> keys,
                           std::string_view where) {
  if (!j.is_object()) throw InputError("config: '" + std::string(where) + "' must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw InputError("config: unknown key '" + k + "' in '" + std::string(where) + "'");
    }
  }
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("config: bad value for '") + key + "'");
  }
}

inline ParameterSchedule read_schedule(const nlohmann::json& j, const ParameterSchedule& fallback, const char* where) {
  ParameterSchedule s = fallback;
  reject_unknown(j, {"betas", "gammas"}, where);
  read(j, "betas", s.betas);
  read(j, "gammas", s.gammas);
  s.validate();
  return s;
}

}  // namespace detail

inline MixerKind parse_mixer(std::string_view s) {
  if (s == "x") return MixerKind::X;
  if (s == "xy") return MixerKind::ParityXY;
  throw InputError("unknown mixer '" + std::string(s) + "' (expected x or xy)");
}

inline std::string to_string(LossTarget t) { return t == LossTarget::Dropoff ? "dropoff" : "expectation"; }

inline LossTarget parse_loss_target(std::string_view s) {
  if (s == "dropoff") return LossTarget::Dropoff;
  if (s == "expectation") return LossTarget::Expectation;
  throw InputError("unknown loss target '" + std::string(s) + "' (expected dropoff or expectation)");
}

inline nlohmann::json to_json(const ParameterSchedule& s) { return {{"betas", s.betas}, {"gammas", s.gammas}}; }

inline nlohmann::json to_json(const RunConfig& c) {
  const auto& q = c.qaoa;
  return {
      {"qubo", {{"epsilon", c.qubo.epsilon}, {"c_p", c.qubo.c_p}}},
      {"stems", {{"min_length", c.stems.min_len}, {"min_loop", c.stems.min_loop}, {"maximal_only", c.stems.maximal_only}}},
      {"qaoa",
       {{"p_start", q.p_start},
        {"p_max", q.p_max},
        {"shots", q.shots},
        {"dropoff", q.dropoff},
        {"stop_frequency", q.stop_frequency},
        {"mixer", to_string(q.mixer)},
        {"max_evaluations", q.max_evaluations},
        {"fd_step", q.fd_step},
        {"loss_target", to_string(q.loss_target)},
        {"seed", q.seed},
        {"noise",
         {{"two_qubit_error", q.noise.two_qubit_error},
          {"readout_p10", q.noise.readout_p10},
          {"readout_p01", q.noise.readout_p01}}},
        {"noise_reoptimize", q.noise_reoptimize},
        {"noise_trajectories", q.noise_trajectories}}},
      {"warmup", {{"x", to_json(q.warmup_x)}, {"xy", to_json(q.warmup_xy)}}}};
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  detail::reject_unknown(j, {"qubo", "stems", "qaoa", "warmup"}, "root");
  if (j.contains("qubo")) {
    const auto& q = j["qubo"];
    detail::reject_unknown(q, {"epsilon", "c_p"}, "qubo");
    detail::read(q, "epsilon", c.qubo.epsilon);
    detail::read(q, "c_p", c.qubo.c_p);
  }
  if (j.contains("stems")) {
    const auto& s = j["stems"];
    detail::reject_unknown(s, {"min_length", "min_loop", "maximal_only"}, "stems");
    detail::read(s, "min_length", c.stems.min_len);
    detail::read(s, "min_loop", c.stems.min_loop);
    detail::read(s, "maximal_only", c.stems.maximal_only);
  }
  if (j.contains("qaoa")) {
    const auto& q = j["qaoa"];
    detail::reject_unknown(q,
                           {"p_start", "p_max", "shots", "dropoff", "stop_frequency", "mixer", "max_evaluations",
                            "fd_step", "loss_target", "seed", "noise", "noise_reoptimize", "noise_trajectories"},
                           "qaoa");
    auto& o = c.qaoa;
    detail::read(q, "p_start", o.p_start);
    detail::read(q, "p_max", o.p_max);
    detail::read(q, "shots", o.shots);
    detail::read(q, "dropoff", o.dropoff);
    detail::read(q, "stop_frequency", o.stop_frequency);
    detail::read(q, "max_evaluations", o.max_evaluations);
    detail::read(q, "fd_step", o.fd_step);
    detail::read(q, "seed", o.seed);
    detail::read(q, "noise_reoptimize", o.noise_reoptimize);
    detail::read(q, "noise_trajectories", o.noise_trajectories);
    std::string text;
    if (q.contains("mixer")) {
      detail::read(q, "mixer", text);
      o.mixer = parse_mixer(text);
    }
    if (q.contains("loss_target")) {
      detail::read(q, "loss_target", text);
      o.loss_target = parse_loss_target(text);
    }
    if (q.contains("noise")) {
      const auto& n = q["noise"];
      detail::reject_unknown(n, {"two_qubit_error", "readout_p10", "readout_p01"}, "qaoa.noise");
      detail::read(n, "two_qubit_error", o.noise.two_qubit_error);
      detail::read(n, "readout_p10", o.noise.readout_p10);
      detail::read(n, "readout_p01", o.noise.readout_p01);
    }
  }
  if (j.contains("warmup")) {
    const auto& w = j["warmup"];
    detail::reject_unknown(w, {"x", "xy"}, "warmup");
    if (w.contains("x")) c.qaoa.warmup_x = detail::read_schedule(w["x"], c.qaoa.warmup_x, "warmup.x");
    if (w.contains("xy")) c.qaoa.warmup_xy = detail::read_schedule(w["xy"], c.qaoa.warmup_xy, "warmup.xy");
  }
  c.qubo.validate();
  c.qaoa.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return config_from_json(j);
}

/// Explicit path first, then $QAOAFOLD_CONFIG, then built-in defaults.
inline std::string resolve_config_path(const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') return env;
  return {};
}

// ---------------------------------------------------------------------------
// Reports.

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  nlohmann::json config;
  std::uint64_t seed = 0;
  bool timestamps = false;  // off by default so repeated runs are byte-identical
  std::time_t started = 0;
};

inline std::string iso_time(std::time_t t) {
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json j = {{"tool", "qaoafold"},  {"version", kVersion}, {"command", m.command},
                      {"inputs", m.inputs},  {"seed", m.seed},      {"config", m.config}};
  if (m.timestamps) {
    j["started"] = iso_time(m.started);
    j["finished"] = iso_time(std::time(nullptr));
  }
  return j;
}

inline nlohmann::json pairs_json(const std::vector<BasePair>& pairs) {
  nlohmann::json a = nlohmann::json::array();
  for (auto [i, j] : pairs) a.push_back({i, j});
  return a;
}

inline nlohmann::json stem_json(const Stem& s) { return {{"i", s.i}, {"j", s.j}, {"k", s.k}}; }

/// One entry per degenerate optimal selection.
inline nlohmann::json selections_json(const StemSet& stems, const std::vector<Bits>& selections) {
  nlohmann::json out = nlohmann::json::array();
  for (Bits x : selections) {
    const auto st = structure_from_selection(stems, x);
    nlohmann::json chosen = nlohmann::json::array();
    for (int s = 0; s < stems.size(); ++s) {
      if (bit(x, s)) chosen.push_back(s);
    }
    out.push_back({{"bits", bits_to_string(x, stems.size())},
                   {"stems", chosen},
                   {"pairs", pairs_json(st.pairs)},
                   {"conflict", st.conflict},
                   {"dot_bracket", st.conflict ? "" : to_dotbracket(st.pairs, stems.sequence().size())}});
  }
  return out;
}

inline nlohmann::json to_json(const LevelRecord& l) {
  return {{"p", l.p},
          {"schedule", to_json(l.schedule)},
          {"loss", l.loss},
          {"ground_frequency", l.ground_frequency},
          {"infeasible_frequency", l.infeasible_frequency},
          {"max_frequency", l.max_frequency},
          {"evaluations", l.evaluations},
          {"samples", to_json(l.samples)}};
}

inline nlohmann::json result_json(const QaoaResult& r, const StemSet& stems) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) levels.push_back(to_json(l));
  nlohmann::json j = {{"method", std::string("qaoa-") + to_string(r.mixer)},
                      {"stem_qubits", r.stem_qubits},
                      {"qubits", r.qubits},
                      {"best_objective", r.best_objective},
                      {"best_energy", r.best_energy},
                      {"solutions", selections_json(stems, r.best_selections)},
                      {"optimum_objective", r.optimum_objective},
                      {"found_optimum", r.found_optimum()},
                      {"terminating_level", r.terminating_level},
                      {"termination", to_string(r.reason)},
                      {"ground_frequency", r.ground_frequency()},
                      {"levels", levels}};
  j["noisy"] = r.noisy ? to_json(*r.noisy) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json brute_json(const BruteForceResult& r, const StemSet& stems) {
  return {{"method", "brute"},
          {"stem_qubits", stems.size()},
          {"best_objective", r.value},
          {"best_energy", -r.value},
          {"solutions", selections_json(stems, r.optima)}};
}

inline nlohmann::json to_json(const GateCountReport& r) {
  nlohmann::json doms = nlohmann::json::array();
  for (const auto& d : r.domains) doms.push_back({{"size", d.size}, {"cost_within", d.cost_within}, {"mixer", d.mixer}});
  return {{"mixer", to_string(r.mixer)},
          {"level", r.level},
          {"state_prep", r.state_prep},
          {"cost_per_level", r.cost_per_level},
          {"mixer_per_level", r.mixer_per_level},
          {"per_level", r.per_level()},
          {"total", r.total()},
          {"domains", doms}};
}

inline nlohmann::json stems_json(const StemSet& stems) {
  nlohmann::json list = nlohmann::json::array(), doms = nlohmann::json::array();
  for (const auto& s : stems.stems()) list.push_back(stem_json(s));
  for (const auto& d : partition_domains(stems)) {
    doms.push_back({{"members", d.members}, {"dummy_qubit", d.dummy_index}});
  }
  return {{"sequence", {{"id", stems.sequence().id()}, {"bases", stems.sequence().bases()}}},
          {"count", stems.size()},
          {"stems", list},
          {"domains", doms}};
}

}  // namespace qaoafold
