#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qaoafold/benchmark.hpp"
#include "qaoafold/evaluation.hpp"
#include "qaoafold/io.hpp"

using namespace qaoafold;

namespace {

const Sequence kTwelve("GGGAAAAAACCC", "twelve");
const ReferenceStructure kHairpin{"twelve", {{1, 12}, {2, 11}, {3, 10}}};

}  // namespace

TEST(Score, PerfectPrediction) {
  const auto r = score(kHairpin.pairs, kHairpin, kTwelve);
  EXPECT_EQ(r.tp, 6);
  EXPECT_EQ(r.fp, 0);
  EXPECT_EQ(r.tn, 6);
  EXPECT_EQ(r.fn, 0);
  EXPECT_DOUBLE_EQ(r.sensitivity, 1.0);
  EXPECT_DOUBLE_EQ(r.specificity, 1.0);
}

TEST(Score, EmptyPredictionAgainstAHairpin) {
  const auto r = score({}, kHairpin, kTwelve);
  EXPECT_EQ(r.tp + r.fp, 0);
  EXPECT_EQ(r.tn, 6);
  EXPECT_EQ(r.fn, 6);
  EXPECT_DOUBLE_EQ(r.sensitivity, 1.0);
  EXPECT_DOUBLE_EQ(r.specificity, 0.5);
}

TEST(Score, WrongPartnerCostsTwoBases) {
  // Base 3 pairs with 9 instead of 10: 3 and 9 become false positives and
  // 10 a false negative.
  const auto r = score({{1, 12}, {2, 11}, {3, 9}}, kHairpin, kTwelve);
  EXPECT_EQ(r.tp, 4);
  EXPECT_EQ(r.fp, 2);
  EXPECT_EQ(r.tn, 5);
  EXPECT_EQ(r.fn, 1);
  EXPECT_DOUBLE_EQ(r.sensitivity, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.specificity, 5.0 / 6.0);
}

TEST(Score, BothEmpty) {
  const auto r = score({}, {"x", {}}, kTwelve);
  EXPECT_EQ(r.tn, 12);
  EXPECT_DOUBLE_EQ(r.sensitivity, 1.0);
  EXPECT_DOUBLE_EQ(r.specificity, 1.0);
}

TEST(Score, CountsPartitionTheSequence) {
  std::mt19937_64 rng(3);
  for (const auto& b : generate_benchmark(30, 12)) {
    const ReferenceStructure ref{b.sequence.id(), b.reference};
    const auto best = brute_force_solve(build_qubo(b.stems, {}));
    auto pred = structure_from_selection(b.stems, best.optima[0]).pairs;
    const auto r = score(pred, ref, b.sequence);
    EXPECT_EQ(r.tp + r.fp + r.tn + r.fn, b.sequence.size());
    EXPECT_EQ(r.tp + r.fp, 2.0 * static_cast<double>(pred.size()));
    std::shuffle(pred.begin(), pred.end(), rng);
    const auto again = score(pred, ref, b.sequence);
    EXPECT_EQ(again.tp, r.tp);
    EXPECT_EQ(again.fn, r.fn);
  }
}

TEST(Score, RejectsInvalidInput) {
  EXPECT_THROW(score({{0, 5}}, kHairpin, kTwelve), InputError);
  EXPECT_THROW(score({{1, 13}}, kHairpin, kTwelve), InputError);
  const ReferenceStructure twice{"bad", {{1, 12}, {1, 11}}};
  EXPECT_THROW(score({}, twice, kTwelve), InputError);
}

TEST(ScoreDegenerate, SingleEqualsScore) {
  const std::vector<BasePair> p{{1, 12}, {2, 11}, {3, 9}};
  const auto a = score(p, kHairpin, kTwelve);
  const auto b = score_degenerate({p}, kHairpin, kTwelve);
  EXPECT_DOUBLE_EQ(a.sensitivity, b.sensitivity);
  EXPECT_DOUBLE_EQ(a.specificity, b.specificity);
  EXPECT_EQ(b.degenerate_count, 1);
}

TEST(ScoreDegenerate, IdenticalCopies) {
  const std::vector<BasePair> p{{1, 12}, {2, 11}, {3, 9}};
  const auto one = score(p, kHairpin, kTwelve);
  const auto four = score_degenerate({p, p, p, p}, kHairpin, kTwelve);
  EXPECT_DOUBLE_EQ(four.sensitivity, one.sensitivity);
  EXPECT_DOUBLE_EQ(four.specificity, one.specificity);
  EXPECT_DOUBLE_EQ(four.tp, one.tp);
  EXPECT_EQ(four.degenerate_count, 4);
}

TEST(ScoreDegenerate, MeanOfTwo) {
  // Sensitivities 1.0 and 0.5.
  const std::vector<BasePair> exact = kHairpin.pairs;
  const std::vector<BasePair> half{{1, 12}, {4, 9}};
  ASSERT_DOUBLE_EQ(score(half, kHairpin, kTwelve).sensitivity, 0.5);
  EXPECT_DOUBLE_EQ(score_degenerate({exact, half}, kHairpin, kTwelve).sensitivity, 0.75);
  EXPECT_THROW(score_degenerate({}, kHairpin, kTwelve), InputError);
}

TEST(ScoreDegenerate, PseudoknotReferenceWithTiedOptima) {
  // small_05 carries a planted pseudoknot; at c_p = 0 the QUBO has two tied
  // optima that score differently against it.
  const auto recs = read_dbn(std::string(QAOAFOLD_DATA_DIR) + "/small.dbn");
  const auto it = std::find_if(recs.begin(), recs.end(), [](const auto& r) { return r.sequence.id() == "small_05"; });
  ASSERT_NE(it, recs.end());
  const auto stems = enumerate_stems(it->sequence);
  const auto best = brute_force_solve(build_qubo(stems, {}));
  ASSERT_EQ(best.optima.size(), 2u);
  std::vector<std::vector<BasePair>> preds;
  std::vector<double> sens;
  for (Bits x : best.optima) {
    preds.push_back(structure_from_selection(stems, x).pairs);
    sens.push_back(score(preds.back(), it->reference, it->sequence).sensitivity);
  }
  ASSERT_NE(sens[0], sens[1]);
  const double m = score_degenerate(preds, it->reference, it->sequence).sensitivity;
  EXPECT_GT(m, std::min(sens[0], sens[1]));
  EXPECT_LT(m, std::max(sens[0], sens[1]));
}

TEST(Summary, TypeSevenQuartiles) {
  const auto s = summarize_values({4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.q1, 1.75);
  EXPECT_DOUBLE_EQ(s.q3, 3.25);
  EXPECT_EQ(summarize_values({}).count, 0);
}

TEST(SweepLevels, SingleStemIsNearOneEverywhere) {
  const StemSet one = enumerate_stems(Sequence("CUACGAUAG", "one"));
  QaoaConfig cfg;
  const auto s = sweep_levels({one}, {}, cfg, {2, 3, 4}, {MixerKind::X, MixerKind::ParityXY});
  ASSERT_EQ(s.rows.size(), 6u);
  for (const auto& r : s.rows) EXPECT_GT(r.ground_frequency, 0.9);
}

TEST(SweepLevels, DeterministicAndCsvShaped) {
  const auto inst = generate_benchmark(2, 31);
  std::vector<StemSet> stems;
  for (const auto& b : inst) stems.push_back(b.stems);
  QaoaConfig cfg;
  cfg.seed = 5;
  const auto a = sweep_levels(stems, {}, cfg, {3, 2}, {MixerKind::X});
  const auto b = sweep_levels(stems, {}, cfg, {2, 3}, {MixerKind::X});
  const std::string csv = to_csv(a);
  EXPECT_EQ(csv, to_csv(b));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4);
  EXPECT_EQ(a.ground.size(), 2u);
  cfg.noise.two_qubit_error = 0.01;
  EXPECT_THROW(sweep_levels(stems, {}, cfg, {2}, {MixerKind::X}), InputError);
}

TEST(SweepNoise, ZeroErrorMatchesTheNoiselessRun) {
  const auto inst = generate_benchmark(2, 41);
  std::vector<StemSet> stems;
  for (const auto& b : inst) stems.push_back(b.stems);
  QaoaConfig cfg;
  cfg.p_start = cfg.p_max = 2;
  const auto noise = sweep_noise(stems, {}, cfg, {0.0, 0.05}, {MixerKind::X, MixerKind::ParityXY});
  const auto clean = sweep_levels(stems, {}, cfg, {2}, {MixerKind::X, MixerKind::ParityXY});
  for (MixerKind m : {MixerKind::X, MixerKind::ParityXY}) {
    EXPECT_DOUBLE_EQ(noise.ground.at({m, 0.0}).mean, clean.ground.at({m, 2}).mean);
    EXPECT_LT(noise.ground.at({m, 0.05}).mean, noise.ground.at({m, 0.0}).mean);
  }
  EXPECT_GT(noise.infeasible.at({MixerKind::ParityXY, 0.05}).mean,
            noise.infeasible.at({MixerKind::ParityXY, 0.0}).mean);
  EXPECT_DOUBLE_EQ(noise.infeasible.at({MixerKind::X, 0.05}).mean, 0.0);
}
