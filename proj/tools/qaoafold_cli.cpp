// qaoafold: stem enumeration, QUBO export, brute-force and QAOA folding,
// scoring and benchmark sweeps.
//
// Exit codes: 0 ok, 1 input error, 2 resource guard, 3 internal failure.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qaoafold/qaoafold.hpp"

using namespace qaoafold;
using json = nlohmann::json;

namespace {

struct InputOpts {
  std::string seq;
  std::string fasta;
  std::string dbn;
};

struct ModelOpts {
  std::string config;
  double epsilon = 0;
  double c_p = 0;
  int min_stem = 0;
  int min_loop = 0;
  bool all_substems = false;
};

struct Loaded {
  Sequence seq;
  std::optional<ReferenceStructure> reference;
};

void add_inputs(CLI::App* app, InputOpts& in) {
  auto* s = app->add_option("--seq", in.seq, "RNA sequence given inline");
  auto* f = app->add_option("--fasta", in.fasta, "FASTA file with one or more sequences");
  auto* d = app->add_option("--dbn", in.dbn, "dot-bracket file (>id, sequence, structure per record)");
  s->excludes(f)->excludes(d);
  f->excludes(d);
}

std::vector<std::string> input_paths(const InputOpts& in) {
  if (!in.fasta.empty()) return {in.fasta};
  if (!in.dbn.empty()) return {in.dbn};
  return {};
}

std::vector<Loaded> load_inputs(const InputOpts& in) {
  std::vector<Loaded> out;
  if (!in.seq.empty()) {
    out.push_back({Sequence(in.seq, "input"), std::nullopt});
  } else if (!in.fasta.empty()) {
    for (auto& s : read_fasta(in.fasta)) out.push_back({std::move(s), std::nullopt});
  } else if (!in.dbn.empty()) {
    for (auto& r : read_dbn(in.dbn)) out.push_back({std::move(r.sequence), std::move(r.reference)});
  } else {
    throw InputError("no input: give --seq, --fasta or --dbn");
  }
  return out;
}

void add_model(CLI::App* app, ModelOpts& m) {
  app->add_option("--config", m.config, std::string("JSON config file (default: $") + kConfigEnv + ")");
  app->add_option("--epsilon", m.epsilon, "free-base weight in the stem reward");
  app->add_option("--cp", m.c_p, "pseudoknot weight in [-1, 1]");
  app->add_option("--min-stem", m.min_stem, "minimum stem length")->check(CLI::PositiveNumber);
  app->add_option("--min-loop", m.min_loop, "minimum hairpin loop")->check(CLI::NonNegativeNumber);
  app->add_flag("--all-substems", m.all_substems, "also list every sub-run of each maximal stem");
}

RunConfig resolve_config(const CLI::App* app, const ModelOpts& m) {
  const std::string path = resolve_config_path(m.config);
  RunConfig c = path.empty() ? RunConfig{} : load_config(path);
  if (app->count("--epsilon")) c.qubo.epsilon = m.epsilon;
  if (app->count("--cp")) c.qubo.c_p = m.c_p;
  if (app->count("--min-stem")) c.stems.min_len = m.min_stem;
  if (app->count("--min-loop")) c.stems.min_loop = m.min_loop;
  if (m.all_substems) c.stems.maximal_only = false;
  c.qubo.validate();
  return c;
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

RunManifest manifest(const std::string& command, const std::vector<std::string>& inputs, const RunConfig& c,
                     bool timestamps, std::time_t started) {
  RunManifest m;
  m.command = command;
  m.inputs = inputs;
  m.config = to_json(c);
  m.seed = c.qaoa.seed;
  m.timestamps = timestamps;
  m.started = started;
  return m;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::vector<MixerKind> parse_mixers(const std::string& text) {
  std::vector<MixerKind> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_mixer(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO/QAOA RNA secondary structure prediction"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  std::string output;
  bool timestamps = false;
  app.add_option("-o,--output", output, "write JSON here instead of stdout");
  app.add_flag("--timestamps", timestamps, "record start/finish times in the manifest");
  const std::time_t started = std::time(nullptr);

  // stems
  InputOpts stems_in;
  ModelOpts stems_model;
  auto* stems_cmd = app.add_subcommand("stems", "enumerate stems and domains");
  add_inputs(stems_cmd, stems_in);
  add_model(stems_cmd, stems_model);

  // qubo
  InputOpts qubo_in;
  ModelOpts qubo_model;
  bool qubo_domains = false;
  auto* qubo_cmd = app.add_subcommand("qubo", "emit the QUBO and Ising models");
  add_inputs(qubo_cmd, qubo_in);
  add_model(qubo_cmd, qubo_model);
  qubo_cmd->add_flag("--domains", qubo_domains, "domain-reduced Ising model with dummy qubits");

  // solve
  InputOpts solve_in;
  ModelOpts solve_model;
  std::string method = "qaoa-x";
  int pmax = 0, shots = 0, budget = 0;
  std::uint64_t seed = 0;
  double noise_p2 = 0;
  std::string readout;
  bool reoptimize = false, gates = false;
  auto* solve_cmd = app.add_subcommand("solve", "fold sequences");
  add_inputs(solve_cmd, solve_in);
  add_model(solve_cmd, solve_model);
  solve_cmd->add_option("--method", method, "brute | qaoa-x | qaoa-xy")
      ->check(CLI::IsMember({"brute", "qaoa-x", "qaoa-xy"}));
  auto* o_pmax = solve_cmd->add_option("--pmax", pmax, "maximum QAOA level")->check(CLI::PositiveNumber);
  auto* o_shots = solve_cmd->add_option("--shots", shots, "measurements per level")->check(CLI::PositiveNumber);
  auto* o_seed = solve_cmd->add_option("--seed", seed, "random seed");
  auto* o_budget = solve_cmd->add_option("--max-evaluations", budget, "optimizer budget per level")
                       ->check(CLI::NonNegativeNumber);
  auto* o_p2 = solve_cmd->add_option("--noise-p2", noise_p2, "two-qubit depolarizing probability")
                   ->check(CLI::Range(0.0, 1.0));
  auto* o_ro = solve_cmd->add_option("--readout", readout, "readout error: p or p10,p01");
  auto* o_reopt = solve_cmd->add_flag("--reoptimize-noise", reoptimize, "optimize against the noisy circuit");
  auto* o_gates = solve_cmd->add_flag("--gate-counts", gates, "include the two-qubit gate count report");

  // score
  std::string score_seq, score_ref, score_pred, score_ref_file, score_pred_file;
  auto* score_cmd = app.add_subcommand("score", "compare predicted and reference structures");
  score_cmd->add_option("--seq", score_seq, "sequence for inline structures");
  score_cmd->add_option("--reference", score_ref, "reference dot-bracket");
  score_cmd->add_option("--prediction", score_pred, "predicted dot-bracket");
  score_cmd->add_option("--reference-file", score_ref_file, "reference .dbn file");
  score_cmd->add_option("--prediction-file", score_pred_file, "predicted .dbn file (ids must match)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "benchmark sweeps");
  sweep_cmd->require_subcommand(1);
  sweep_cmd->fallthrough();
  InputOpts sweep_in;
  ModelOpts sweep_model;
  std::string sweep_mixers = "x,xy", sweep_levels_text = "2,3,4,5,6,7,8",
              sweep_rates = "0.001,0.005,0.01,0.02", sweep_csv;
  std::uint64_t sweep_seed = 0;
  int sweep_level = 2;
  double sweep_readout = 0.0;
  auto* levels_cmd = sweep_cmd->add_subcommand("levels", "ground-state frequency against p_max");
  auto* noise_cmd = sweep_cmd->add_subcommand("noise", "ground-state frequency against two-qubit error");
  for (auto* c : {levels_cmd, noise_cmd}) {
    add_inputs(c, sweep_in);
    add_model(c, sweep_model);
    c->add_option("--mixers", sweep_mixers, "comma-separated: x, xy");
    c->add_option("--csv", sweep_csv, "also write one CSV row per cell");
    c->add_option("--seed", sweep_seed, "random seed");
  }
  levels_cmd->add_option("--levels", sweep_levels_text, "comma-separated p_max values");
  noise_cmd->add_option("--rates", sweep_rates, "comma-separated two-qubit error rates");
  noise_cmd->add_option("--level", sweep_level, "QAOA level of the replayed circuit")->check(CLI::PositiveNumber);
  noise_cmd->add_option("--readout", sweep_readout, "symmetric readout error")->check(CLI::Range(0.0, 1.0));

  // warmup
  InputOpts warm_in;
  ModelOpts warm_model;
  int warm_grid = 16, warm_polish = 200;
  double warm_gamma_max = 1.0;
  std::string warm_mixers = "x,xy", warm_write;
  auto* warm_cmd = app.add_subcommand("warmup", "regenerate level-2 warm-start schedules");
  add_inputs(warm_cmd, warm_in);
  add_model(warm_cmd, warm_model);
  warm_cmd->add_option("--grid", warm_grid, "grid points per angle")->check(CLI::PositiveNumber);
  warm_cmd->add_option("--gamma-max", warm_gamma_max, "upper end of the gamma grid");
  warm_cmd->add_option("--polish", warm_polish, "local optimizer budget after the grid (0: none)")
      ->check(CLI::NonNegativeNumber);
  warm_cmd->add_option("--mixers", warm_mixers, "comma-separated: x, xy");
  warm_cmd->add_option("--write-config", warm_write, "store the schedules in this config file");

  // generate
  int gen_count = 24, gen_min = 2, gen_max = 10, gen_max_len = 36;
  std::uint64_t gen_seed = 1;
  std::string gen_prefix = "bench";
  auto* gen_cmd = app.add_subcommand("generate", "synthetic benchmark instances as .dbn");
  gen_cmd->add_option("--count", gen_count)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--min-stems", gen_min)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-stems", gen_max)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-length", gen_max_len)->check(CLI::Range(20, 200));
  gen_cmd->add_option("--prefix", gen_prefix);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*stems_cmd) {
      const RunConfig c = resolve_config(stems_cmd, stems_model);
      json records = json::array();
      for (const auto& in : load_inputs(stems_in)) records.push_back(stems_json(enumerate_stems(in.seq, c.stems)));
      emit({{"manifest", to_json(manifest("stems", input_paths(stems_in), c, timestamps, started))},
            {"records", records}},
           output);
      return 0;
    }

    if (*qubo_cmd) {
      const RunConfig c = resolve_config(qubo_cmd, qubo_model);
      json records = json::array();
      for (const auto& in : load_inputs(qubo_in)) {
        const StemSet stems = enumerate_stems(in.seq, c.stems);
        const QuboModel q = build_qubo(stems, c.qubo);
        const auto doms = partition_domains(stems);
        records.push_back({{"id", in.seq.id()},
                           {"qubo", to_json(q)},
                           {"ising", to_json(qubo_domains ? to_ising(q, &doms) : to_ising(q))}});
      }
      emit({{"manifest", to_json(manifest("qubo", input_paths(qubo_in), c, timestamps, started))},
            {"records", records}},
           output);
      return 0;
    }

    if (*solve_cmd) {
      RunConfig c = resolve_config(solve_cmd, solve_model);
      const bool brute = method == "brute";
      if (brute) {
        for (const auto* o : {o_pmax, o_shots, o_seed, o_budget, o_p2, o_ro, o_reopt, o_gates}) {
          if (o->count() > 0) throw InputError(o->get_name() + " only applies to the QAOA methods");
        }
      }
      auto& q = c.qaoa;
      q.mixer = method == "qaoa-xy" ? MixerKind::ParityXY : MixerKind::X;
      if (*o_pmax) q.p_max = pmax;
      if (*o_shots) q.shots = shots;
      if (*o_seed) q.seed = seed;
      if (*o_budget) q.max_evaluations = budget;
      if (*o_p2) q.noise.two_qubit_error = noise_p2;
      if (*o_ro) {
        const auto v = parse_list(readout);
        if (v.size() > 2) throw InputError("--readout takes p or p10,p01");
        q.noise.readout_p10 = v[0];
        q.noise.readout_p01 = v.back();
      }
      if (reoptimize) {
        if (q.noise.noiseless()) throw InputError("--reoptimize-noise needs --noise-p2 or --readout");
        q.noise_reoptimize = true;
      }
      if (q.p_start > q.p_max) q.p_start = q.p_max;
      q.validate();

      json records = json::array();
      for (const auto& in : load_inputs(solve_in)) {
        const StemSet stems = enumerate_stems(in.seq, c.stems);
        json rec;
        std::vector<Bits> selections;
        if (brute) {
          const auto r = brute_force_solve(build_qubo(stems, c.qubo));
          rec = brute_json(r, stems);
          selections = r.optima;
        } else {
          const QaoaResult r = solve(stems, c.qubo, q);
          rec = result_json(r, stems);
          selections = r.best_selections;
          if (gates) rec["gate_counts"] = to_json(gate_count_report(stems, c.qubo, q.mixer, r.terminating_level));
        }
        rec["id"] = in.seq.id();
        rec["sequence"] = in.seq.bases();
        if (in.reference) {
          std::vector<std::vector<BasePair>> preds;
          for (Bits x : selections) preds.push_back(structure_from_selection(stems, x).pairs);
          rec["score"] = to_json(score_degenerate(preds, *in.reference, in.seq));
        }
        records.push_back(rec);
      }
      emit({{"manifest", to_json(manifest("solve --method " + method, input_paths(solve_in), c, timestamps,
                                          started))},
            {"records", records}},
           output);
      return 0;
    }

    if (*score_cmd) {
      const bool inline_mode = !score_seq.empty() || !score_ref.empty() || !score_pred.empty();
      const bool file_mode = !score_ref_file.empty() || !score_pred_file.empty();
      if (inline_mode == file_mode) {
        throw InputError("give either --seq/--reference/--prediction or --reference-file/--prediction-file");
      }
      json records = json::array();
      if (inline_mode) {
        if (score_seq.empty() || score_ref.empty() || score_pred.empty()) {
          throw InputError("inline scoring needs --seq, --reference and --prediction");
        }
        const Sequence seq(score_seq, "input");
        const auto ref = parse_dotbracket(score_ref, seq);
        const auto pred = parse_dotbracket(score_pred, seq);
        records.push_back({{"id", seq.id()}, {"score", to_json(score(pred.pairs, ref, seq))}});
      } else {
        if (score_ref_file.empty() || score_pred_file.empty()) {
          throw InputError("file scoring needs --reference-file and --prediction-file");
        }
        const auto refs = read_dbn(score_ref_file);
        const auto preds = read_dbn(score_pred_file);
        for (const auto& p : preds) {
          const auto it = std::find_if(refs.begin(), refs.end(),
                                       [&](const DbnRecord& r) { return r.sequence.id() == p.sequence.id(); });
          if (it == refs.end()) throw InputError("no reference for '" + p.sequence.id() + "'");
          if (it->sequence.bases() != p.sequence.bases()) {
            throw InputError("sequence mismatch for '" + p.sequence.id() + "'");
          }
          records.push_back({{"id", p.sequence.id()},
                             {"score", to_json(score(p.reference.pairs, it->reference, it->sequence))}});
        }
      }
      RunManifest m;
      m.command = "score";
      if (file_mode) m.inputs = {score_ref_file, score_pred_file};
      m.config = nullptr;
      m.timestamps = timestamps;
      m.started = started;
      emit({{"manifest", to_json(m)}, {"records", records}}, output);
      return 0;
    }

    if (*levels_cmd || *noise_cmd) {
      CLI::App* sub = *levels_cmd ? levels_cmd : noise_cmd;
      RunConfig c = resolve_config(sub, sweep_model);
      if (sub->count("--seed")) c.qaoa.seed = sweep_seed;
      std::vector<StemSet> instances;
      for (const auto& in : load_inputs(sweep_in)) instances.push_back(enumerate_stems(in.seq, c.stems));
      const auto mixers = parse_mixers(sweep_mixers);
      json summary;
      std::string csv;
      if (*levels_cmd) {
        std::vector<int> levels;
        for (double v : parse_list(sweep_levels_text)) {
          if (v < 1 || v != static_cast<int>(v)) throw InputError("levels must be positive integers");
          levels.push_back(static_cast<int>(v));
        }
        const auto s = sweep_levels(instances, c.qubo, c.qaoa, levels, mixers);
        summary = to_json(s);
        csv = to_csv(s);
      } else {
        c.qaoa.p_start = c.qaoa.p_max = sweep_level;
        c.qaoa.noise.readout_p10 = c.qaoa.noise.readout_p01 = sweep_readout;
        const auto s = sweep_noise(instances, c.qubo, c.qaoa, parse_list(sweep_rates), mixers);
        summary = to_json(s);
        csv = to_csv(s);
      }
      if (!sweep_csv.empty()) write_text(csv, sweep_csv);
      summary["manifest"] =
          to_json(manifest(std::string("sweep ") + sub->get_name(), input_paths(sweep_in), c, timestamps, started));
      emit(summary, output);
      return 0;
    }

    if (*warm_cmd) {
      RunConfig c = resolve_config(warm_cmd, warm_model);
      WarmupOptions wo;
      wo.grid = warm_grid;
      wo.gamma_hi = warm_gamma_max;
      wo.polish_evaluations = warm_polish;
      wo.loss_target = c.qaoa.loss_target;
      wo.dropoff = c.qaoa.dropoff;
      const auto inputs = load_inputs(warm_in);
      json schedules = json::object(), per = json::object();
      for (MixerKind m : parse_mixers(warm_mixers)) {
        std::vector<QaoaProblem> probs;
        for (const auto& in : inputs) {
          const StemSet stems = enumerate_stems(in.seq, c.stems);
          if (!stems.empty()) probs.emplace_back(stems, c.qubo, m);
        }
        const auto r = warmup_parameters(probs, wo);
        (m == MixerKind::X ? c.qaoa.warmup_x : c.qaoa.warmup_xy) = r.schedule;
        schedules[to_string(m)] = to_json(r.schedule);
        json list = json::array();
        for (std::size_t k = 0; k < r.per_instance.size(); ++k) {
          list.push_back({{"schedule", to_json(r.per_instance[k])}, {"loss", r.per_instance_loss[k]}});
        }
        per[to_string(m)] = list;
      }
      if (!warm_write.empty()) emit(to_json(c), warm_write);
      emit({{"manifest", to_json(manifest("warmup", input_paths(warm_in), c, timestamps, started))},
            {"warmup", schedules},
            {"per_instance", per}},
           output);
      return 0;
    }

    if (*gen_cmd) {
      BenchmarkOptions bo;
      bo.min_stems = gen_min;
      bo.max_stems = gen_max;
      bo.max_length = gen_max_len;
      std::vector<DbnRecord> recs;
      for (auto& b : generate_benchmark(gen_count, gen_seed, bo, gen_prefix)) {
        recs.push_back({b.sequence, {b.sequence.id(), b.reference}});
      }
      const std::string text = format_dbn(recs);
      if (output.empty() || output == "-") {
        std::cout << text;
      } else {
        write_text(text, output);
      }
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
