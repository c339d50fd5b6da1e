#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rankvote/errors.hpp"
#include "rankvote/rules.hpp"

using namespace rankvote;
using testing_support::load;

namespace {

std::int64_t score(const Profile& p, const TallyResult& r, const char* c) {
  return std::get<ScoreDetail>(r.detail).scores.at(p.index_of(c));
}

std::vector<Candidate> stv_names(const Profile& p, const TallyResult& r) {
  return p.names(std::get<StvDetail>(r.detail).elimination_order);
}

std::string edge(const Profile& p, const EdgeDecision& e) {
  return (e.kept ? "" : "~") + p.name(e.from) + p.name(e.to);
}

const Profile kCycle = parse_profile("1: a > b > c\n1: b > c > a\n1: c > a > b");

}  // namespace

TEST(Plurality, HundredVoters) {
  const auto p = load("a1.ballots");
  const auto r = plurality(p);
  EXPECT_EQ(r.winner_name, "a");
  EXPECT_EQ(score(p, r, "a"), 62);
  EXPECT_EQ(score(p, r, "b"), 38);
}

TEST(Plurality, CloneSplitsVote) {
  const auto p = load("a1_cloned.ballots");
  const auto r = plurality(p);
  EXPECT_EQ(r.winner_name, "b");
  EXPECT_EQ(score(p, r, "a"), 28);
  EXPECT_EQ(score(p, r, "a2"), 34);
  EXPECT_EQ(score(p, r, "b"), 38);
}

TEST(Plurality, TieNeedsPolicy) {
  const auto p = load("tied.ballots");
  EXPECT_THROW(plurality(p), TieError);
  const auto r = plurality(p, TiePolicy::kLexicographic);
  EXPECT_EQ(r.winner_name, "a");
  EXPECT_TRUE(r.tie_broken);
}

TEST(Borda, TwoCandidates) {
  const auto p = load("a2.ballots");
  const auto r = borda(p);
  EXPECT_EQ(r.winner_name, "a");
  EXPECT_EQ(score(p, r, "a"), 62);
  EXPECT_EQ(score(p, r, "b"), 38);
}

TEST(Borda, CloneFlipsWinner) {
  const auto p = load("a2_cloned.ballots");
  const auto r = borda(p);
  EXPECT_EQ(r.winner_name, "b");
  EXPECT_EQ(score(p, r, "a"), 124);
  EXPECT_EQ(score(p, r, "b"), 138);
  EXPECT_EQ(score(p, r, "b2"), 38);
}

TEST(Borda, MatchesHandCount) {
  for (const auto* name : {"d1.ballots", "d2_cloned.ballots", "d3_cloned.ballots", "clones_35.ballots"}) {
    const auto p = load(name);
    const auto expected = oracle::borda_scores(p);
    const auto r = borda(p, TiePolicy::kLexicographic);
    for (const auto& c : p.candidates()) EXPECT_EQ(score(p, r, c.c_str()), expected.at(c)) << name << " " << c;
  }
}

TEST(Stv, EliminationOrders) {
  const auto d1 = load("d1.ballots");
  const auto r1 = stv(d1);
  EXPECT_EQ(stv_names(d1, r1), (std::vector<Candidate>{"d", "c", "a"}));
  EXPECT_EQ(r1.winner_name, "b");

  const auto d1cx = load("d1_cx.ballots");
  const auto r2 = stv(d1cx);
  EXPECT_EQ(stv_names(d1cx, r2), (std::vector<Candidate>{"c", "d", "cx", "a"}));
  EXPECT_EQ(r2.winner_name, "b");
}

TEST(Stv, TwoClonesNeedDeclaredPolicy) {
  const auto p = load("d1_cx_bx.ballots");
  try {
    stv(p);
    FAIL();
  } catch (const TieError& e) {
    EXPECT_EQ(e.round(), std::optional<std::size_t>(1));
  }
  const auto r = stv(p, TiePolicy::kDeclared);
  EXPECT_EQ(stv_names(p, r), (std::vector<Candidate>{"bx", "c", "d", "cx", "a"}));
  EXPECT_EQ(r.winner_name, "b");
  EXPECT_TRUE(r.tie_broken);
}

TEST(Stv, RoundTallies) {
  const auto p = load("d1.ballots");
  const auto r = stv(p);
  const auto& d = std::get<StvDetail>(r.detail);
  ASSERT_EQ(d.round_tallies.size(), 3u);
  EXPECT_EQ(d.round_tallies[0], (std::vector<std::int64_t>{6, 8, 4, 3}));
  EXPECT_EQ(d.round_tallies[2], (std::vector<std::int64_t>{6, 15, 0, 0}));
}

TEST(Stv, SingleCandidate) {
  const auto r = stv(parse_profile("3: x"));
  EXPECT_EQ(r.winner_name, "x");
}

TEST(Pairwise, MatchesOracleAndComplements) {
  for (const auto* name : {"d1.ballots", "d2.ballots", "d3_cloned.ballots", "pseudo_7.ballots"}) {
    const auto p = load(name);
    const auto pw = pairwise_matrix(p);
    const auto expected = oracle::pairwise(p);
    const auto n = static_cast<std::int64_t>(p.num_voters());
    for (std::size_t i = 0; i < p.num_candidates(); ++i) {
      EXPECT_EQ(pw(i, i), 0);
      for (std::size_t j = 0; j < p.num_candidates(); ++j) {
        EXPECT_EQ(pw(i, j), expected.at(p.name(i)).at(p.name(j)));
        if (i != j) EXPECT_EQ(pw(i, j) + pw(j, i), n);
      }
    }
  }
}

TEST(RankedPairs, MajorityEntries) {
  const auto p = load("d2.ballots");
  const auto m = majority_matrix(p);
  auto at = [&](const char* x, const char* y) { return m(p.index_of(x), p.index_of(y)); };
  EXPECT_EQ(at("a", "c"), 23);
  EXPECT_EQ(at("a", "b"), 1);
  EXPECT_EQ(at("b", "c"), 9);
  EXPECT_EQ(at("c", "d"), 7);
  EXPECT_EQ(at("d", "a"), 3);
  EXPECT_EQ(at("d", "b"), 5);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), -m(j, i));
  }
}

TEST(RankedPairs, EdgeSequence) {
  const auto p = load("d2.ballots");
  const auto r = ranked_pairs(p);
  std::vector<std::string> seq;
  for (const auto& e : std::get<RankedPairsDetail>(r.detail).edge_log) seq.push_back(edge(p, e));
  EXPECT_EQ(seq, (std::vector<std::string>{"ac", "bc", "cd", "~db", "~da", "ab"}));
  EXPECT_EQ(r.winner_name, "a");
  EXPECT_FALSE(r.tie_broken);
}

TEST(RankedPairs, ClonedEdgeSequence) {
  const auto p = load("d2_cloned.ballots");
  const auto r = ranked_pairs(p);
  std::vector<std::string> seq;
  for (const auto& e : std::get<RankedPairsDetail>(r.detail).edge_log) seq.push_back(edge(p, e));
  // Inside an equal-margin group the later-declared winner goes first.
  EXPECT_EQ(seq, (std::vector<std::string>{"acx", "ac", "bcx", "bc", "cxd", "cd", "~db", "cxc", "~da", "ab"}));
  EXPECT_EQ(r.winner_name, "a");
}

TEST(RankedPairs, OrderDependentTie) {
  EXPECT_THROW(ranked_pairs(kCycle), TieError);
  const auto r = ranked_pairs(kCycle, TiePolicy::kLexicographic);
  EXPECT_TRUE(r.tie_broken);
}

TEST(RankedPairs, MatchesOracleOnFixtures) {
  for (const auto* name : {"d1.ballots", "d2.ballots", "d3.ballots", "clones_35.ballots"}) {
    const auto p = load(name);
    if (auto w = oracle::ranked_pairs_winner(p)) EXPECT_EQ(ranked_pairs(p).winner_name, *w) << name;
  }
}

TEST(Schulze, PairwiseRowAndStrengths) {
  const auto p = load("d3.ballots");
  const auto r = schulze(p);
  const auto& d = std::get<SchulzeDetail>(r.detail);
  auto idx = [&](const char* c) { return p.index_of(c); };
  EXPECT_EQ(d.pairwise(idx("a"), idx("a")), 0);
  EXPECT_EQ(d.pairwise(idx("a"), idx("b")), 8);
  EXPECT_EQ(d.pairwise(idx("a"), idx("c")), 14);
  EXPECT_EQ(d.pairwise(idx("a"), idx("d")), 10);
  EXPECT_EQ(d.strength(idx("a"), idx("b")), 14);
  EXPECT_EQ(d.strength(idx("b"), idx("d")), 12);
  EXPECT_EQ(d.strength(idx("d"), idx("b")), 19);
  EXPECT_EQ(d.strength(idx("d"), idx("c")), 13);
  EXPECT_EQ(r.winner_name, "d");
}

TEST(Schulze, StrengthsMatchPathEnumeration) {
  for (const auto* name : {"d1.ballots", "d2_cloned.ballots", "d3.ballots", "d3_cloned.ballots", "pseudo_7.ballots"}) {
    const auto p = load(name);
    const auto s = schulze_strengths(pairwise_matrix(p));
    const auto expected = oracle::path_strengths(p);
    for (std::size_t i = 0; i < p.num_candidates(); ++i) {
      for (std::size_t j = 0; j < p.num_candidates(); ++j) {
        if (i != j) EXPECT_EQ(s(i, j), expected.at(p.name(i)).at(p.name(j))) << name;
      }
    }
  }
}

TEST(Schulze, ClonedProfileElectsClone) {
  const auto p = load("d3_cloned.ballots");
  const auto r = schulze(p);
  const auto& s = std::get<SchulzeDetail>(r.detail).strength;
  EXPECT_EQ(s(p.index_of("dx"), p.index_of("d")), 16);
  EXPECT_EQ(s(p.index_of("d"), p.index_of("dx")), 12);
  EXPECT_EQ(r.winner_name, "dx");
}

TEST(Schulze, CycleNeedsPolicy) {
  EXPECT_THROW(schulze(kCycle), TieError);
  const auto r = schulze(kCycle, TiePolicy::kLexicographic);
  EXPECT_EQ(r.winner_name, "a");
  EXPECT_TRUE(r.tie_broken);
}

TEST(Tally, Dispatch) {
  const auto p = load("d1.ballots");
  EXPECT_EQ(tally(Rule::kStv, p).rule, Rule::kStv);
  EXPECT_EQ(parse_rule("ranked_pairs"), Rule::kRankedPairs);
  EXPECT_EQ(parse_rule("rp"), Rule::kRankedPairs);
  EXPECT_EQ(to_string(Rule::kRankedPairs), "rp");
  EXPECT_FALSE(parse_rule("copeland"));
}
