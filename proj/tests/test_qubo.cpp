#include <gtest/gtest.h>

#include <random>

#include "qaoafold/qubo.hpp"

using namespace qaoafold;

namespace {

// Random pairable sequence plus every sub-stem, trimmed to at most `cap` stems.
StemSet random_instance(std::mt19937_64& rng, int cap) {
  const std::string alphabet = "ACGU";
  while (true) {
    std::string bases;
    const int n = 14 + static_cast<int>(rng() % 24);
    for (int i = 0; i < n; ++i) bases += alphabet[rng() % 4];
    const Sequence seq(bases);
    auto all = enumerate_stems(seq, {2, 3, false}).stems();
    if (all.size() < 2) continue;
    std::shuffle(all.begin(), all.end(), rng);
    if (static_cast<int>(all.size()) > cap) all.resize(static_cast<std::size_t>(cap));
    return StemSet(seq, all);
  }
}

}  // namespace

TEST(Penalty, Cases) {
  const QuboParams p;
  EXPECT_DOUBLE_EQ(penalty({1, 20, 3}, {3, 30, 4}, p), -7.0);
  EXPECT_DOUBLE_EQ(penalty({1, 20, 3}, {10, 30, 3}, p), 0.0);  // pseudoknot, c_p = 0
  EXPECT_DOUBLE_EQ(penalty({1, 20, 3}, {10, 30, 3}, {6.0, 0.5}), 3.0);
  EXPECT_DOUBLE_EQ(penalty({1, 20, 3}, {5, 15, 3}, p), 0.0);  // nested
}

TEST(Objective, HandValues) {
  const StemSet one(Sequence("CUACGAUAG"), {{1, 9, 3}});
  const QuboParams p;
  EXPECT_DOUBLE_EQ(objective(0, one, p), 0.0);
  EXPECT_DOUBLE_EQ(objective(1, one, p), 5.25);

  // Two overlapping k=3 stems on a 20-base sequence.
  const StemSet two(Sequence("GGGGAAAAAAAAACCCCAAA"), {{1, 17, 3}, {2, 16, 3}});
  ASSERT_TRUE(stems_overlap(two[0], two[1]));
  EXPECT_NEAR(objective(0b11, two, p), 12.0 - 2.0 * 20.0 / 12.0 - 6.0, 1e-12);
}

TEST(BuildQubo, SingleStem) {
  const auto m = build_qubo(StemSet(Sequence("CUACGAUAG"), {{1, 9, 3}}), {});
  ASSERT_EQ(m.n, 1);
  EXPECT_DOUBLE_EQ(m.linear[0], 5.25);
  EXPECT_TRUE(m.quadratic.empty());
  EXPECT_EQ(m.labels[0], "(1,9,3)");
}

TEST(BuildQubo, RejectsBadParams) {
  const StemSet one(Sequence("CUACGAUAG"), {{1, 9, 3}});
  EXPECT_THROW(build_qubo(one, {-1.0, 0.0}), InputError);
  EXPECT_THROW(build_qubo(one, {6.0, 2.0}), InputError);
}

TEST(ToIsing, SingleVariable) {
  QuboModel m;
  m.n = 1;
  m.linear = {5.25};
  const auto is = to_ising(m);
  EXPECT_DOUBLE_EQ(is.h[0], 2.625);
  EXPECT_DOUBLE_EQ(is.constant, -2.625);
  EXPECT_DOUBLE_EQ(is.energy(1), -5.25);
  EXPECT_DOUBLE_EQ(is.energy(0), 0.0);
}

TEST(ToIsing, ZeroModel) {
  QuboModel m;
  m.n = 3;
  m.linear.assign(3, 0.0);
  const auto is = to_ising(m);
  for (double h : is.h) EXPECT_EQ(h, 0.0);
  EXPECT_TRUE(is.J.empty());
  EXPECT_EQ(is.constant, 0.0);
}

TEST(ToIsing, ExhaustiveEquivalence) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cp(-1.0, 1.0), eps(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto stems = random_instance(rng, 12);
    const QuboParams params{eps(rng), cp(rng)};
    const auto m = build_qubo(stems, params);
    const auto is = to_ising(m);
    for (Bits x = 0; x < (Bits{1} << m.n); ++x) {
      const double c = objective(x, stems, params);
      ASSERT_NEAR(m.evaluate(x), c, 1e-9);
      ASSERT_NEAR(ising_energy(is, x), -c, 1e-9);
    }
  }
}

TEST(ToIsing, DomainModeDropsIntraDomainTerms) {
  const auto stems = enumerate_stems(Sequence("AAAGUCGCUGAAGACUUAAAAUUCAGG"), StemOptions::exhaustive());
  const auto doms = partition_domains(stems);
  const auto m = build_qubo(stems, {});
  const auto is = to_ising(m, &doms);
  EXPECT_EQ(is.n, stems.size() + static_cast<int>(doms.size()));
  std::vector<int> dom_of(static_cast<std::size_t>(stems.size()));
  for (std::size_t d = 0; d < doms.size(); ++d) {
    for (int s : doms[d].members) dom_of[static_cast<std::size_t>(s)] = static_cast<int>(d);
    EXPECT_EQ(is.h[static_cast<std::size_t>(doms[d].dummy_index)], 0.0);
  }
  for (const auto& [key, w] : is.J) {
    EXPECT_NE(dom_of[static_cast<std::size_t>(key.first)], dom_of[static_cast<std::size_t>(key.second)]);
  }
  // On selections with at most one stem per domain the energy is unchanged.
  const auto full = to_ising(m);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    Bits x = 0;
    for (const auto& d : doms) {
      const auto pick = rng() % (d.members.size() + 1);
      x |= Bits{1} << (pick < d.members.size() ? d.members[pick] : d.dummy_index);
    }
    EXPECT_NEAR(is.energy(x), full.energy(x & low_mask(stems.size())), 1e-9);
  }
}

TEST(BruteForce, Cases) {
  const auto m = build_qubo(enumerate_stems(Sequence("CUACGAUAG")), {});
  const auto r = brute_force_solve(m);
  EXPECT_EQ(r.optima, (std::vector<Bits>{1}));
  EXPECT_DOUBLE_EQ(r.value, 5.25);

  QuboModel empty;
  const auto e = brute_force_solve(empty);
  EXPECT_EQ(e.value, 0.0);

  // Two crossing stems of equal length under a pseudoknot penalty large
  // enough that only one can be kept: either choice is optimal.
  const StemSet pk(Sequence("GGGAAAAGGGAAAACCCAAAACCC"), {{1, 17, 3}, {8, 24, 3}});
  ASSERT_TRUE(stems_pseudoknot(pk[0], pk[1]));
  const auto deg = brute_force_solve(build_qubo(pk, {0.0, -1.0}));
  EXPECT_GE(deg.optima.size(), 2u);

  QuboModel big;
  big.n = 25;
  big.linear.assign(25, 0.0);
  EXPECT_THROW(brute_force_solve(big), GuardError);
}

TEST(Json, Shapes) {
  const auto m = build_qubo(enumerate_stems(Sequence("CUACGAUAG")), {});
  const auto j = to_json(m);
  EXPECT_EQ(j["sense"], "maximize");
  EXPECT_EQ(j["n"], 1);
  const auto ji = to_json(to_ising(m));
  EXPECT_EQ(ji["spin_convention"], "z = 1 - 2b");
}
