#include "rankvote/ties.hpp"

#include <algorithm>
#include <numeric>

#include "rankvote/errors.hpp"

namespace rankvote {

std::string_view to_string(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::kError: return "error";
    case TiePolicy::kLexicographic: return "lex";
    case TiePolicy::kDeclared: return "declared";
  }
  return "error";
}

std::optional<TiePolicy> parse_tie_policy(std::string_view text) {
  if (text == "error" || text == "none") return TiePolicy::kError;
  if (text == "lex") return TiePolicy::kLexicographic;
  if (text == "declared") return TiePolicy::kDeclared;
  return std::nullopt;
}

std::vector<std::size_t> tie_priority(const Profile& p, TiePolicy policy) {
  const auto m = p.num_candidates();
  std::vector<std::size_t> priority;
  switch (policy) {
    case TiePolicy::kError:
      break;
    case TiePolicy::kDeclared:
      priority.resize(m);
      std::iota(priority.begin(), priority.end(), std::size_t{0});
      break;
    case TiePolicy::kLexicographic: {
      std::vector<CandidateIndex> order(m);
      std::iota(order.begin(), order.end(), CandidateIndex{0});
      std::sort(order.begin(), order.end(), [&](auto x, auto y) { return p.name(x) < p.name(y); });
      priority.resize(m);
      for (std::size_t rank = 0; rank < m; ++rank) priority[order[rank]] = rank;
      break;
    }
  }
  return priority;
}

CandidateIndex most_favored(std::span<const CandidateIndex> tied, std::span<const std::size_t> priority) {
  if (tied.empty() || priority.empty()) throw InternalError("most_favored needs a tied set and a priority");
  return *std::min_element(tied.begin(), tied.end(), [&](auto x, auto y) { return priority[x] < priority[y]; });
}

CandidateIndex least_favored(std::span<const CandidateIndex> tied, std::span<const std::size_t> priority) {
  if (tied.empty() || priority.empty()) throw InternalError("least_favored needs a tied set and a priority");
  return *std::max_element(tied.begin(), tied.end(), [&](auto x, auto y) { return priority[x] < priority[y]; });
}

}  // namespace rankvote
