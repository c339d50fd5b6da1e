#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rankvote/clocked.hpp"
#include "rankvote/clones.hpp"
#include "rankvote/errors.hpp"
#include "rankvote/impossibility.hpp"
#include "rankvote/rules.hpp"
#include "rankvote/suites.hpp"

using namespace rankvote;

namespace {

constexpr std::size_t kTrials = 200;

Profile draw(std::size_t trial, std::size_t min_m, std::size_t max_m, std::uint64_t max_n = 15) {
  auto rng = trial_rng(4242, trial);
  const auto m = std::uniform_int_distribution<std::size_t>(min_m, max_m)(rng);
  const auto n = std::uniform_int_distribution<std::uint64_t>(1, max_n)(rng);
  return random_profile(rng, m, n);
}

std::set<std::set<std::string>> as_sets(const std::vector<CloneSet>& sets) {
  std::set<std::set<std::string>> out;
  for (const auto& s : sets) out.insert(std::set<std::string>(s.begin(), s.end()));
  return out;
}

}  // namespace

TEST(Property, SerializeRoundTrip) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 1, 6);
    EXPECT_EQ(parse_profile(serialize_profile(p)), p);
  }
}

TEST(Property, CloneThenRemoveIsIdentity) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 2, 5);
    auto rng = trial_rng(7, t);
    std::vector<Placement> where(p.num_ballots());
    for (auto& w : where) w = rng() % 2 ? Placement::kAbove : Placement::kBelow;
    const auto target = p.name(rng() % p.num_candidates());
    const auto cloned = clone_candidate(p, target, "x", ClonePlacement::per_ballot(where));
    EXPECT_EQ(remove_candidates(cloned, std::vector<Candidate>{"x"}), p);
    if (p.num_candidates() >= 2) {
      EXPECT_TRUE(is_clone_set(cloned, std::vector<Candidate>{target, "x"}));
      EXPECT_TRUE(as_sets(detect_clone_sets(cloned)).count({target, "x"}));
    }
    const auto wins = oracle::pairwise(cloned);
    for (const auto& c : p.candidates()) {
      if (c == target) continue;
      EXPECT_EQ(wins.at("x").at(c), wins.at(target).at(c));
      EXPECT_EQ(wins.at(c).at("x"), wins.at(c).at(target));
    }
  }
}

TEST(Property, PermuteInverseRoundTrip) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 1, 6);
    auto rng = trial_rng(9, t);
    const auto tau = random_relabeling(rng, p);
    EXPECT_EQ(permute_candidates(permute_candidates(p, tau), inverse(tau)), p);
  }
}

TEST(Property, PairwiseMatchesOracle) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 2, 6);
    const auto pw = pairwise_matrix(p);
    const auto wins = oracle::pairwise(p);
    const auto n = static_cast<std::int64_t>(p.num_voters());
    for (std::size_t i = 0; i < p.num_candidates(); ++i) {
      for (std::size_t j = 0; j < p.num_candidates(); ++j) {
        EXPECT_EQ(pw(i, j), wins.at(p.name(i)).at(p.name(j)));
        if (i != j) EXPECT_EQ(pw(i, j) + pw(j, i), n);
      }
    }
  }
}

TEST(Property, CloneDetectionMatchesSubsetOracle) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    // Few voters so that non-trivial clone sets actually occur.
    const auto p = draw(t, 2, 6, 3);
    EXPECT_EQ(as_sets(detect_clone_sets(p)), oracle::clone_subsets(p)) << serialize_profile(p);
  }
}

TEST(Property, PseudoClonesMatchOracle) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 3, 5, 6);
    std::set<std::set<std::string>> expected;
    const auto clone_sets = oracle::clone_subsets(p);
    for (const auto& pair : oracle::equal_tally_pairs(p)) {
      const bool together = std::any_of(clone_sets.begin(), clone_sets.end(), [&](const auto& k) {
        return std::includes(k.begin(), k.end(), pair.begin(), pair.end());
      });
      if (!together) expected.insert(pair);
    }
    std::set<std::set<std::string>> got;
    for (const auto& pc : detect_pseudo_clones(p)) got.insert({pc.a, pc.b});
    EXPECT_EQ(got, expected) << serialize_profile(p);
  }
}

TEST(Property, SchulzeStrengthsMatchPathOracle) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 2, 5);
    const auto s = schulze_strengths(pairwise_matrix(p));
    const auto expected = oracle::path_strengths(p);
    for (std::size_t i = 0; i < p.num_candidates(); ++i) {
      for (std::size_t j = 0; j < p.num_candidates(); ++j) {
        if (i != j) EXPECT_EQ(s(i, j), expected.at(p.name(i)).at(p.name(j)));
      }
    }
  }
}

TEST(Property, ScoresMatchHandCount) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 1, 6);
    const auto plu = oracle::plurality_scores(p);
    const auto bor = oracle::borda_scores(p);
    const auto rp = plurality(p, TiePolicy::kLexicographic);
    const auto rb = borda(p, TiePolicy::kLexicographic);
    for (std::size_t c = 0; c < p.num_candidates(); ++c) {
      EXPECT_EQ(std::get<ScoreDetail>(rp.detail).scores[c], plu.at(p.name(c)));
      EXPECT_EQ(std::get<ScoreDetail>(rb.detail).scores[c], bor.at(p.name(c)));
    }
  }
}

TEST(Property, StvAgreesWithOracleAndClock) {
  std::size_t compared = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 2, 5);
    const auto expected = oracle::stv_order(p);
    if (!expected) {
      EXPECT_THROW(stv(p), TieError);
      EXPECT_THROW(ce_stv(p), TieError);
      continue;
    }
    ++compared;
    EXPECT_EQ(p.names(std::get<StvDetail>(stv(p).detail).elimination_order), *expected);
    EXPECT_EQ(ce_stv(p).list.order(), *expected);
  }
  EXPECT_GT(compared, kTrials / 10);
}

TEST(Property, RankedPairsAgreesWithOracleAndClock) {
  std::size_t compared = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 2, 5);
    const auto expected = oracle::ranked_pairs_winner(p);
    if (!expected) continue;
    ++compared;
    EXPECT_EQ(ranked_pairs(p).winner_name, *expected);
    EXPECT_EQ(ce_rp(p).list.survivor(), *expected);
  }
  EXPECT_GT(compared, kTrials / 10);
}

TEST(Property, EliminationListsPartitionCandidates) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto p = draw(t, 2, 5);
    for (const auto protocol : {Protocol::kStv, Protocol::kRankedPairs}) {
      try {
        const auto run = run_protocol(protocol, p);
        EXPECT_EQ(run.list.size() + 1, p.num_candidates());
        auto all = run.list.order();
        all.push_back(run.list.survivor());
        std::sort(all.begin(), all.end());
        auto names = p.candidates();
        std::sort(names.begin(), names.end());
        EXPECT_EQ(all, names);
        for (std::size_t i = 0; i < run.list.size(); ++i) {
          const auto fi = run.list.prefix(i), next = run.list.prefix(i + 1);
          EXPECT_TRUE(std::equal(fi.begin(), fi.end(), next.begin()));
        }
        EXPECT_TRUE(check_access_pattern(protocol, p, run.transcript).pass);
      } catch (const TieError&) {
      }
    }
  }
}

TEST(Property, BordaFlipElectsB) {
  for (std::size_t t = 0; t < kTrials; ++t) {
    auto rng = trial_rng(11, t);
    const auto a_votes = 2 + rng() % 60;
    const auto b_votes = 1 + rng() % (a_votes - 1);
    const auto p = parse_profile(std::to_string(a_votes) + ": a > b\n" + std::to_string(b_votes) + ": b > a\n");
    EXPECT_EQ(borda(borda_flip(p)).winner_name, "b") << a_votes << "/" << b_votes;
  }
}

TEST(Property, IocHoldsForCloneProofRules) {
  SuiteOptions o;
  o.trials = kTrials;
  o.seed = 77;
  const auto report = run_ioc_suite(o, {Rule::kStv, Rule::kRankedPairs, Rule::kSchulze});
  for (const auto& e : report.rules) {
    EXPECT_EQ(e.tally.failures, 0u) << to_string(e.rule) << " " << e.tally.first_failure.value_or("");
    EXPECT_GT(e.tally.conclusive, 0u);
  }
}

TEST(Property, ClockedConditionsHold) {
  SuiteOptions o;
  o.trials = 100;
  o.seed = 78;
  const auto report = run_oioc_suite(o, 10);
  EXPECT_TRUE(oioc_suite_passes(report)) << render_text(report);
  for (const auto& e : report.protocols) EXPECT_GT(e.condition1.conclusive, 0u);
}

TEST(Property, SuitesAreDeterministic) {
  SuiteOptions o;
  o.trials = 30;
  o.seed = 5;
  EXPECT_EQ(to_tree(run_oioc_suite(o, 5)).dump(), to_tree(run_oioc_suite(o, 5)).dump());
  EXPECT_EQ(serialize_profile(random_trial(o, 17).profile), serialize_profile(random_trial(o, 17).profile));
}

TEST(Property, ContradictionForEveryCloneTally) {
  for (std::int64_t n = 4; n <= 10; n += 2) {
    const auto sigma = realize_profile(PTemplate::tied_family(n));
    for (std::int64_t r = n / 2 + 1; r <= n; ++r) {
      try {
        const auto f = build_cloned_variants(sigma, r);
        EXPECT_TRUE(
            isomorphic_under(pairwise_matrix(f.sigma_a), f.sigma_a, pairwise_matrix(f.sigma_b), f.sigma_b, f.phi));
        for (const auto& row : contradiction_table(f)) EXPECT_TRUE(row.contradiction) << n << " " << r;
        for (const auto& order : builtin_orders()) EXPECT_FALSE(audit_schulze_protocol(order, f).all_pass);
      } catch (const InfeasibleError&) {
      }
    }
  }
}
