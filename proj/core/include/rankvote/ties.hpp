#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rankvote/ballots.hpp"

namespace rankvote {

/// How a rule proceeds when it meets a tie.
///
/// kError is the canonical behaviour: the rule throws TieError. The other two
/// policies break ties with a fixed priority over candidates and are
/// non-canonical; results computed under them are flagged as such.
///   kLexicographic  priority by ascending candidate id
///   kDeclared       priority by declaration order (earlier = favored)
/// A favored candidate wins a tied top score, survives a tied elimination,
/// and among equal-margin Ranked Pairs entries the pair whose winner (then
/// loser) is least favored is considered first.
enum class TiePolicy { kError, kLexicographic, kDeclared };

std::string_view to_string(TiePolicy policy);
std::optional<TiePolicy> parse_tie_policy(std::string_view text);

/// priority[c] = 0 for the most favored candidate. Empty for kError.
std::vector<std::size_t> tie_priority(const Profile& p, TiePolicy policy);

/// Most / least favored member of a non-empty tied set.
CandidateIndex most_favored(std::span<const CandidateIndex> tied, std::span<const std::size_t> priority);
CandidateIndex least_favored(std::span<const CandidateIndex> tied, std::span<const std::size_t> priority);

}  // namespace rankvote
