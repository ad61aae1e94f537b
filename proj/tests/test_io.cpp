#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "qaoafold/benchmark.hpp"
#include "qaoafold/io.hpp"

using namespace qaoafold;

namespace {

std::string data(const std::string& name) { return std::string(QAOAFOLD_DATA_DIR) + "/" + name; }

// Crossing test straight from the definition, independent of the layers.
bool crosses(const BasePair& a, const BasePair& b) {
  return (a.first < b.first && b.first < a.second && a.second < b.second) ||
         (b.first < a.first && a.first < b.second && b.second < a.second);
}

}  // namespace

TEST(Fasta, SingleRecord) {
  const auto s = parse_fasta(">CUACGAUAG example\nCUACGAUAG\n");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].id(), "CUACGAUAG");
  EXPECT_EQ(s[0].size(), 9);
}

TEST(Fasta, EmptyInput) {
  EXPECT_TRUE(parse_fasta("").empty());
  EXPECT_TRUE(parse_fasta("\n\n").empty());
}

TEST(Fasta, MultiLineRecordsAndNormalization) {
  const auto s = parse_fasta("; comment\n>a\nacgt\nTTGG\n\n>b\nGGG AAA\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].bases(), "ACGUUUGG");
  EXPECT_EQ(s[1].bases(), "GGGAAA");
}

TEST(Fasta, InvalidSymbolNamesThePosition) {
  try {
    parse_fasta(">bad\nACGXU\n");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_fasta("ACGU\n"), InputError);
}

TEST(Fasta, ShippedFiles) {
  const auto pkb = read_fasta(data("pkb092.fasta"));
  ASSERT_EQ(pkb.size(), 1u);
  EXPECT_EQ(pkb[0].bases(), "AAAGUCGCUGAAGACUUAAAAUUCAGG");
  EXPECT_EQ(read_fasta(data("calibration.fasta")).size(), 20u);
  EXPECT_THROW(read_fasta(data("missing.fasta")), InputError);
}

TEST(DotBracket, Nested) {
  const auto r = parse_dotbracket("((((...))))", 11);
  const std::vector<BasePair> want{{1, 11}, {2, 10}, {3, 9}, {4, 8}};
  EXPECT_EQ(r.pairs, want);
}

TEST(DotBracket, CrossingLayers) {
  const auto r = parse_dotbracket("((..[[..))..]]", 14);
  const std::vector<BasePair> want{{1, 10}, {2, 9}, {5, 14}, {6, 13}};
  EXPECT_EQ(r.pairs, want);
  EXPECT_TRUE(crosses(r.pairs[0], r.pairs[2]));
}

TEST(DotBracket, AllDots) { EXPECT_TRUE(parse_dotbracket("......", 6).pairs.empty()); }

TEST(DotBracket, Errors) {
  EXPECT_THROW(parse_dotbracket("((...)", 6), InputError);
  EXPECT_THROW(parse_dotbracket("(...))", 6), InputError);
  EXPECT_THROW(parse_dotbracket("(...)", 6), InputError);
  EXPECT_THROW(parse_dotbracket("(.x.)", 5), InputError);
  EXPECT_THROW(parse_dotbracket("(...]", 5), InputError);
}

TEST(DotBracket, RoundTripRandomStructures) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 10 + static_cast<int>(rng() % 40);
    std::vector<int> free(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) free[static_cast<std::size_t>(p)] = p + 1;
    std::shuffle(free.begin(), free.end(), rng);
    const int m = static_cast<int>(rng() % 6);
    std::vector<BasePair> pairs;
    for (int k = 0; k + 1 < 2 * m && k + 1 < n; k += 2) {
      const int a = free[static_cast<std::size_t>(k)], b = free[static_cast<std::size_t>(k + 1)];
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(pairs.begin(), pairs.end());
    std::string text;
    try {
      text = to_dotbracket(pairs, n);
    } catch (const InputError&) {
      continue;  // needs a fifth layer
    }
    EXPECT_EQ(parse_dotbracket(text, n).pairs, pairs) << text;
  }
}

TEST(Dbn, ShippedBenchmarkParses) {
  const auto recs = read_dbn(data("benchmark.dbn"));
  ASSERT_EQ(recs.size(), 24u);
  EXPECT_EQ(recs[0].sequence.id(), "bench_01");
  EXPECT_EQ(parse_dbn(format_dbn(recs)).size(), recs.size());
}

TEST(Dbn, MatchesTheGenerator) {
  const auto recs = read_dbn(data("benchmark.dbn"));
  const auto gen = generate_benchmark(24, 1);
  for (std::size_t k = 0; k < gen.size(); ++k) {
    EXPECT_EQ(recs[k].sequence.bases(), gen[k].sequence.bases());
    EXPECT_EQ(recs[k].reference.pairs, gen[k].reference);
  }
}

TEST(Dbn, Truncated) { EXPECT_THROW(parse_dbn(">a\nACGU\n"), InputError); }

TEST(Config, RoundTrip) {
  RunConfig c;
  c.qubo.c_p = -0.5;
  c.stems.min_len = 4;
  c.qaoa.p_max = 5;
  c.qaoa.mixer = MixerKind::ParityXY;
  c.qaoa.loss_target = LossTarget::Dropoff;
  c.qaoa.noise.two_qubit_error = 0.01;
  c.qaoa.warmup_x = {{0.1, 0.2}, {0.3, 0.4}};
  const auto back = config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Config, PartialAndStrict) {
  const auto c = config_from_json(nlohmann::json::parse(R"({"qubo": {"epsilon": 4}})"));
  EXPECT_DOUBLE_EQ(c.qubo.epsilon, 4.0);
  EXPECT_EQ(c.qaoa.p_max, 8);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"qubo": {"epsilom": 4}})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"qubo": {"c_p": 2}})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"qaoa": {"mixer": "z"}})")), InputError);
}

TEST(Config, ShippedDefaultsMatchTheBuiltIns) {
  const auto c = load_config(data("config/default.json"));
  const QaoaConfig builtin;
  for (int l = 0; l < 2; ++l) {
    EXPECT_NEAR(c.qaoa.warmup_x.betas[l], builtin.warmup_x.betas[l], 1e-4);
    EXPECT_NEAR(c.qaoa.warmup_x.gammas[l], builtin.warmup_x.gammas[l], 1e-4);
    EXPECT_NEAR(c.qaoa.warmup_xy.betas[l], builtin.warmup_xy.betas[l], 1e-4);
    EXPECT_NEAR(c.qaoa.warmup_xy.gammas[l], builtin.warmup_xy.gammas[l], 1e-4);
  }
}

TEST(Config, EnvironmentOverride) {
  ::unsetenv(kConfigEnv);
  EXPECT_EQ(resolve_config_path(""), "");
  ::setenv(kConfigEnv, "/tmp/x.json", 1);
  EXPECT_EQ(resolve_config_path(""), "/tmp/x.json");
  EXPECT_EQ(resolve_config_path("a.json"), "a.json");
  ::unsetenv(kConfigEnv);
}

TEST(Manifest, TimestampsAreOptIn) {
  RunManifest m;
  m.command = "solve";
  EXPECT_FALSE(to_json(m).contains("started"));
  m.timestamps = true;
  EXPECT_TRUE(to_json(m).contains("started"));
  EXPECT_EQ(to_json(m)["version"], kVersion);
}
