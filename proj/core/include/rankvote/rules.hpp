#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "rankvote/ballots.hpp"
#include "rankvote/locked_graph.hpp"
#include "rankvote/ties.hpp"

namespace rankvote {

/// Square integer matrix indexed by candidate declaration order. The tag
/// keeps pairwise, majority and strength matrices from being mixed up.
template <class Tag>
class CandidateMatrix {
 public:
  using value_type = std::int64_t;

  CandidateMatrix() = default;
  explicit CandidateMatrix(std::size_t m) : m_(m), cells_(m * m, 0) {}

  std::size_t size() const noexcept { return m_; }
  value_type& operator()(std::size_t i, std::size_t j) { return cells_[i * m_ + j]; }
  value_type operator()(std::size_t i, std::size_t j) const { return cells_[i * m_ + j]; }
  const std::vector<value_type>& cells() const noexcept { return cells_; }

  bool operator==(const CandidateMatrix&) const = default;

 private:
  std::size_t m_ = 0;
  std::vector<value_type> cells_;
};

struct PairwiseTag {};
struct MajorityTag {};
struct StrengthTag {};

/// P[i][j] = voters ranking i ahead of j.
using PairwiseMatrix = CandidateMatrix<PairwiseTag>;
/// M[i][j] = P[i][j] - P[j][i].
using MajorityMatrix = CandidateMatrix<MajorityTag>;
/// S[i][j] = width of the widest i->j path in the Schulze graph.
using StrengthMatrix = CandidateMatrix<StrengthTag>;

enum class Rule { kPlurality, kBorda, kStv, kRankedPairs, kSchulze };

std::string_view to_string(Rule rule);
/// Accepts plurality, borda, stv, rp (or ranked_pairs) and schulze.
std::optional<Rule> parse_rule(std::string_view text);

/// Plurality first-place counts or Borda points, per candidate index.
struct ScoreDetail {
  std::vector<std::int64_t> scores;
};

struct StvDetail {
  std::vector<CandidateIndex> elimination_order;
  /// round_tallies[r][c] = first-choice votes of c at round r+1; eliminated
  /// candidates keep a zero entry.
  std::vector<std::vector<std::int64_t>> round_tallies;
};

struct EdgeDecision {
  CandidateIndex from = 0;
  CandidateIndex to = 0;
  std::int64_t margin = 0;
  bool kept = false;

  bool operator==(const EdgeDecision&) const = default;
};

struct RankedPairsDetail {
  MajorityMatrix majority;
  std::vector<EdgeDecision> edge_log;
};

struct SchulzeDetail {
  PairwiseMatrix pairwise;
  StrengthMatrix strength;
  std::vector<CandidateIndex> ranking;
};

using TallyDetail = std::variant<ScoreDetail, StvDetail, RankedPairsDetail, SchulzeDetail>;

struct TallyResult {
  Rule rule = Rule::kPlurality;
  CandidateIndex winner = 0;
  Candidate winner_name;
  TallyDetail detail;
  TiePolicy tie_policy = TiePolicy::kError;
  /// Set when the tie policy actually decided something; such results are
  /// non-canonical.
  bool tie_broken = false;
};

TallyResult plurality(const Profile& p, TiePolicy policy = TiePolicy::kError);
TallyResult borda(const Profile& p, TiePolicy policy = TiePolicy::kError);
/// Runs to a single survivor. TieError carries the 1-based round.
TallyResult stv(const Profile& p, TiePolicy policy = TiePolicy::kError);

PairwiseMatrix pairwise_matrix(const Profile& p);
MajorityMatrix majority_matrix(const Profile& p);
MajorityMatrix majority_matrix(const PairwiseMatrix& pairwise);

/// A positive majority entry M[winner][loser] = margin > 0.
struct MajorityEntry {
  CandidateIndex winner = 0;
  CandidateIndex loser = 0;
  std::int64_t margin = 0;

  bool operator==(const MajorityEntry&) const = default;
};

/// Positive entries grouped by equal margin, groups in decreasing margin,
/// entries inside a group in (winner, loser) index order.
std::vector<std::vector<MajorityEntry>> majority_groups(const MajorityMatrix& m);

/// Reorders an equal-margin group by a tie priority: least favored winner
/// first, then least favored loser.
void order_by_priority(std::vector<MajorityEntry>& group, std::span<const std::size_t> priority);

/// Kept flags (aligned with `group`) for locking the group into `graph`, when
/// the set of kept edges is the same for every processing order. nullopt when
/// the order matters or the group is too large to decide.
std::optional<std::vector<bool>> order_free_outcome(const LockedGraph& graph, std::span<const MajorityEntry> group);

/// Ranked Pairs. Without a tie policy, an equal-margin group is accepted
/// only if its kept edges do not depend on the order it is processed in;
/// otherwise TieError.
TallyResult ranked_pairs(const Profile& p, TiePolicy policy = TiePolicy::kError);

/// Floyd-Warshall widest paths over edges i->j with P[i][j] > P[j][i].
StrengthMatrix schulze_strengths(const PairwiseMatrix& pairwise);

/// Candidates x with S[x][y] >= S[y][x] for every y.
std::vector<CandidateIndex> schulze_winners(const StrengthMatrix& strength);

TallyResult schulze(const Profile& p, TiePolicy policy = TiePolicy::kError);

TallyResult tally(Rule rule, const Profile& p, TiePolicy policy = TiePolicy::kError);

}  // namespace rankvote
