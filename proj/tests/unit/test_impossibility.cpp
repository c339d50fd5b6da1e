#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rankvote/clones.hpp"
#include "rankvote/errors.hpp"
#include "rankvote/impossibility.hpp"

using namespace rankvote;
using testing_support::load;

namespace {

using Names = std::vector<Candidate>;

bool matches_template(const Profile& p, const PTemplate& t) {
  const auto expected = t.matrix();
  const auto wins = oracle::pairwise(p);
  for (std::size_t i = 0; i < t.candidates.size(); ++i) {
    for (std::size_t j = 0; j < t.candidates.size(); ++j) {
      if (i != j && wins.at(t.candidates[i]).at(t.candidates[j]) != expected(i, j)) return false;
    }
  }
  return true;
}

// A fixed order over candidate ids drawn from a seeded shuffle; ids outside
// the drawn list go last in declaration order.
NamedOrder shuffled_order(std::uint64_t seed) {
  Names ids{"a", "b", "c", "d", "a_star", "b_star"};
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  return {"shuffled-" + std::to_string(seed), [ids](const OrderQuery& q) {
            for (const auto& c : ids) {
              if (q.profile.find(c) && std::find(q.compared.begin(), q.compared.end(), c) == q.compared.end()) return c;
            }
            for (const auto& c : q.profile.candidates()) {
              if (std::find(q.compared.begin(), q.compared.end(), c) == q.compared.end()) return c;
            }
            return Candidate{};
          }};
}

}  // namespace

TEST(PTemplate, SevenVoterMatrix) {
  const auto t = PTemplate::seven_voter_example();
  const auto m = t.matrix();
  const std::vector<std::int64_t> expected{0, 3, 4, 7, 4, 0, 4, 7, 3, 3, 0, 5, 0, 0, 2, 0};
  EXPECT_EQ(m.cells(), expected);
  EXPECT_TRUE(matches_template(load("pseudo_7.ballots"), t));
}

TEST(PTemplate, Validation) {
  auto t = PTemplate::seven_voter_example();
  t.shared = {4};
  EXPECT_THROW(t.validate(), PreconditionError);
  t = PTemplate::seven_voter_example();
  t.among = {9};
  EXPECT_THROW(t.validate(), PreconditionError);
  EXPECT_THROW(PTemplate::tied_family(7), PreconditionError);
  EXPECT_THROW(PTemplate::tied_family(2), PreconditionError);
}

TEST(SevenVoterExample, PseudoClonesButNotClones) {
  const auto p = load("pseudo_7.ballots");
  EXPECT_EQ(detect_pseudo_clones(p), (std::vector<PseudoClonePair>{{"a", "b"}}));
  EXPECT_FALSE(is_clone_set(p, Names{"a", "b"}));
  EXPECT_FALSE(is_clone_set(p, Names{"a", "b", "c"}));
}

TEST(RealizeProfile, SevenVoterTemplate) {
  const auto t = PTemplate::seven_voter_example();
  const auto p = realize_profile(t);
  EXPECT_EQ(p.num_voters(), 7u);
  EXPECT_TRUE(matches_template(p, t));
  EXPECT_EQ(detect_pseudo_clones(p), (std::vector<PseudoClonePair>{{"a", "b"}}));
}

TEST(RealizeProfile, TiedFamilyAcrossEvenN) {
  for (std::int64_t n = 4; n <= 12; n += 2) {
    const auto t = PTemplate::tied_family(n);
    const auto p = realize_profile(t);
    EXPECT_EQ(p.num_voters(), static_cast<std::uint64_t>(n));
    EXPECT_TRUE(matches_template(p, t)) << n;
    EXPECT_TRUE(oracle::equal_tally_pairs(p).count({"a", "b"})) << n;
    for (const auto& k : oracle::clone_subsets(p)) EXPECT_FALSE(k.count("a") && k.count("b")) << n;
  }
}

TEST(RealizeProfile, Infeasible) {
  auto t = PTemplate::seven_voter_example();
  t.r = 0;
  EXPECT_THROW(realize_profile(t), InfeasibleError);
  t = PTemplate::seven_voter_example();
  t.shared = {7, 7};
  EXPECT_THROW(realize_profile(t), InfeasibleError);
  t = PTemplate::seven_voter_example();
  t.n = 40;
  EXPECT_THROW(realize_profile(t), PreconditionError);
}

class FamilyTest : public ::testing::TestWithParam<std::int64_t> {
 protected:
  ClonedFamily family() const { return build_cloned_variants(realize_profile(PTemplate::tied_family(GetParam()))); }
};

TEST_P(FamilyTest, ClonedVariantsHaveRequestedTallies) {
  const auto f = family();
  const auto n = GetParam();
  const auto wa = oracle::pairwise(f.sigma_a);
  const auto wb = oracle::pairwise(f.sigma_b);
  EXPECT_EQ(f.r_clone, n / 2 + 1);
  EXPECT_EQ(wa.at("a").at("a_star"), f.r_clone);
  EXPECT_EQ(wa.at("a_star").at("b"), n / 2);
  EXPECT_EQ(wa.at("b").at("a_star"), n / 2);
  EXPECT_EQ(wb.at("b").at("b_star"), f.r_clone);
  EXPECT_EQ(wb.at("a").at("b_star"), n / 2);
  EXPECT_TRUE(is_clone_set(f.sigma_a, Names{"a", "a_star"}));
  EXPECT_TRUE(is_clone_set(f.sigma_b, Names{"b", "b_star"}));
  EXPECT_EQ(remove_candidates(f.sigma_a, Names{"a_star"}), f.sigma);
  EXPECT_EQ(remove_candidates(f.sigma_b, Names{"b_star"}), f.sigma);
}

TEST_P(FamilyTest, IsomorphicUnderPhi) {
  const auto f = family();
  EXPECT_EQ(f.phi.at("a"), "b");
  EXPECT_EQ(f.phi.at("a_star"), "b_star");
  EXPECT_EQ(f.phi.at("b"), "a");
  EXPECT_EQ(f.phi.at("c"), "c");
  EXPECT_TRUE(isomorphic_under(pairwise_matrix(f.sigma_a), f.sigma_a, pairwise_matrix(f.sigma_b), f.sigma_b, f.phi));

  // Cell-by-cell check through the name-based oracle.
  const auto wa = oracle::pairwise(f.sigma_a);
  const auto wb = oracle::pairwise(f.sigma_b);
  for (const auto& x : f.sigma_a.candidates()) {
    for (const auto& y : f.sigma_a.candidates()) EXPECT_EQ(wa.at(x).at(y), wb.at(f.phi.at(x)).at(f.phi.at(y)));
  }

  Relabeling straight = f.phi;
  straight["a"] = "a";
  straight["b"] = "b";
  EXPECT_FALSE(
      isomorphic_under(pairwise_matrix(f.sigma_a), f.sigma_a, pairwise_matrix(f.sigma_b), f.sigma_b, straight));
}

TEST_P(FamilyTest, EveryRowContradicts) {
  const auto table = contradiction_table(family());
  ASSERT_EQ(table.size(), 6u);
  for (const auto& row : table) {
    EXPECT_TRUE(row.contradiction);
    EXPECT_NE(row.pi_from_a, row.pi_from_b);
  }
}

TEST_P(FamilyTest, NoOrderPassesEveryCondition) {
  const auto f = family();
  for (const auto& order : builtin_orders()) EXPECT_FALSE(audit_schulze_protocol(order, f).all_pass) << order.name;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EXPECT_FALSE(audit_schulze_protocol(shuffled_order(seed), f).all_pass) << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(EvenVoters, FamilyTest, ::testing::Values(4, 6, 8, 10));

TEST(ContradictionTable, FirstRows) {
  const auto table = contradiction_table(build_cloned_variants(realize_profile(PTemplate::tied_family(8))));
  ASSERT_EQ(table.size(), 6u);
  EXPECT_EQ(table[0].pi_a_order, (Names{"a", "a_star", "b"}));
  EXPECT_EQ(table[0].pi_b_order, (Names{"b", "b_star", "a"}));
  EXPECT_EQ(table[0].pi_from_a, (Names{"a", "b"}));
  EXPECT_EQ(table[0].pi_from_b, (Names{"b", "a"}));
  EXPECT_EQ(table[1].pi_a_order, (Names{"a", "b", "a_star"}));
  EXPECT_EQ(table[1].pi_from_a, (Names{"b", "a"}));
  EXPECT_EQ(table[1].pi_from_b, (Names{"a", "b"}));
}

TEST(BuildClonedVariants, Preconditions) {
  EXPECT_THROW(build_cloned_variants(load("pseudo_7.ballots")), PreconditionError);
  const auto sigma = realize_profile(PTemplate::tied_family(8));
  EXPECT_THROW(build_cloned_variants(sigma, 4), PreconditionError);
  EXPECT_THROW(build_cloned_variants(sigma, 9), PreconditionError);
  EXPECT_THROW(build_cloned_variants(sigma, std::nullopt, "a", "c"), PreconditionError);
}

TEST(Knockout, SchulzeFixture) {
  const auto p = load("d3.ballots");
  for (const auto& order : builtin_orders()) {
    const auto run = run_schulze_knockout(p, order.fn);
    EXPECT_EQ(run.survivors, Names{"d"}) << order.name;
    EXPECT_EQ(run.comparison_order.size(), 4u);
    ASSERT_TRUE(run.list());
    EXPECT_EQ(run.list()->survivor(), "d");
  }
}

TEST(Knockout, RejectsRepeatedCandidate) {
  const OrderFn always_a = [](const OrderQuery&) { return Candidate{"a"}; };
  EXPECT_THROW(run_schulze_knockout(load("d3.ballots"), always_a), PreconditionError);
}

TEST(Knockout, DynamicOrderSeesState) {
  std::size_t calls = 0;
  const OrderFn watch = [&](const OrderQuery& q) {
    EXPECT_EQ(q.compared.size(), calls);
    ++calls;
    for (const auto& c : q.profile.candidates()) {
      if (std::find(q.compared.begin(), q.compared.end(), c) == q.compared.end()) return c;
    }
    return Candidate{};
  };
  run_schulze_knockout(load("d3.ballots"), watch);
  EXPECT_EQ(calls, 4u);
}
