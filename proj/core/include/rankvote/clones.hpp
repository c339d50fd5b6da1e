#pragma once

#include <span>
#include <vector>

#include "rankvote/ballots.hpp"
#include "rankvote/rules.hpp"
#include "rankvote/ties.hpp"

namespace rankvote {

/// Members of a clone set, in declaration order of the profile they came from.
using CloneSet = std::vector<Candidate>;

/// A clone set together with the member that stays when the others are
/// removed.
struct CloneSpec {
  CloneSet members;
  Candidate representative;
};

/// True iff K occupies consecutive positions in every ballot.
/// Throws PreconditionError unless 2 <= |K| < m, ProfileError on unknown or
/// repeated ids.
bool is_clone_set(const Profile& p, std::span<const Candidate> k);

/// Every clone set of p (not only maximal ones), ordered by size and then by
/// declaration indices. Any clone set is an interval of ballot 0, so only
/// those O(m^2) intervals are tested.
std::vector<CloneSet> detect_clone_sets(const Profile& p);

struct PseudoClonePair {
  Candidate a;
  Candidate b;

  bool operator==(const PseudoClonePair&) const = default;
};

/// Unordered pairs with identical pairwise tallies against every third
/// candidate that no clone set contains together. Requires m >= 3.
std::vector<PseudoClonePair> detect_pseudo_clones(const Profile& p);

/// Two-candidate profile won by a under Borda, with at least one voter
/// ranking b first: appends Q = floor((P1(a) - P1(b)) / P) + 1 clones of b in
/// a chain directly below b, where P1 is the first-place count and P the
/// number of b-first voters. Borda elects b on the result.
Profile borda_flip(const Profile& p);

struct IocVerdict {
  Rule rule = Rule::kPlurality;
  CloneSet clone_set;
  Candidate representative;
  Candidate winner_with;
  Candidate winner_without;
  bool ioc_holds = false;
  bool tie_broken = false;
};

/// Tallies p and p with K \ {d} removed. If the original winner is a clone,
/// d must win the reduced profile; otherwise the winner must not change.
/// A TieError from either tally is rethrown with the check named in its
/// context.
IocVerdict verify_ioc(const Profile& p, Rule rule, const CloneSpec& spec, TiePolicy policy = TiePolicy::kError);

}  // namespace rankvote
