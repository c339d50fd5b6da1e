#include "rankvote/clones.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rankvote/errors.hpp"

namespace rankvote {

namespace {

bool contiguous_everywhere(const Profile& p, const std::vector<bool>& member, std::size_t size) {
  for (const auto& b : p.ballots()) {
    std::size_t first = b.ranking.size();
    std::size_t last = 0;
    for (std::size_t k = 0; k < b.ranking.size(); ++k) {
      if (!member[b.ranking[k]]) continue;
      first = std::min(first, k);
      last = k;
    }
    if (last + 1 - first != size) return false;
  }
  return true;
}

Candidate fresh_id(const Profile& p, const Candidate& base, std::size_t& suffix) {
  for (;; ++suffix) {
    auto id = base + std::to_string(suffix);
    if (!p.find(id)) return id;
  }
}

}  // namespace

bool is_clone_set(const Profile& p, std::span<const Candidate> k) {
  const auto m = p.num_candidates();
  if (k.size() < 2 || k.size() >= m) {
    throw PreconditionError("clone set must have at least 2 members and leave a candidate out");
  }
  std::vector<bool> member(m, false);
  for (const auto& id : k) {
    const auto idx = p.index_of(id);
    if (member[idx]) throw ProfileError("candidate '" + id + "' repeated in clone set");
    member[idx] = true;
  }
  return contiguous_everywhere(p, member, k.size());
}

std::vector<CloneSet> detect_clone_sets(const Profile& p) {
  const auto m = p.num_candidates();
  std::vector<std::vector<CandidateIndex>> found;
  if (m < 3 || p.num_ballots() == 0) return {};
  const auto& anchor = p.ballots().front().ranking;
  for (std::size_t len = 2; len < m; ++len) {
    for (std::size_t start = 0; start + len <= m; ++start) {
      std::vector<bool> member(m, false);
      for (std::size_t k = start; k < start + len; ++k) member[anchor[k]] = true;
      if (!contiguous_everywhere(p, member, len)) continue;
      std::vector<CandidateIndex> set(anchor.begin() + static_cast<std::ptrdiff_t>(start),
                                      anchor.begin() + static_cast<std::ptrdiff_t>(start + len));
      std::sort(set.begin(), set.end());
      found.push_back(std::move(set));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::vector<CloneSet> out;
  out.reserve(found.size());
  for (const auto& set : found) out.push_back(p.names(set));
  return out;
}

std::vector<PseudoClonePair> detect_pseudo_clones(const Profile& p) {
  const auto m = p.num_candidates();
  if (m < 3) throw PreconditionError("pseudo-clones need at least 3 candidates");
  const auto pw = pairwise_matrix(p);
  const auto sets = detect_clone_sets(p);
  std::vector<PseudoClonePair> out;
  for (CandidateIndex i = 0; i < m; ++i) {
    for (CandidateIndex j = i + 1; j < m; ++j) {
      bool same = true;
      for (CandidateIndex k = 0; k < m && same; ++k) {
        if (k == i || k == j) continue;
        same = pw(i, k) == pw(j, k) && pw(k, i) == pw(k, j);
      }
      if (!same) continue;
      const bool together = std::any_of(sets.begin(), sets.end(), [&](const CloneSet& s) {
        return std::find(s.begin(), s.end(), p.name(i)) != s.end() &&
               std::find(s.begin(), s.end(), p.name(j)) != s.end();
      });
      if (!together) out.push_back({p.name(i), p.name(j)});
    }
  }
  return out;
}

Profile borda_flip(const Profile& p) {
  if (p.num_candidates() != 2) throw PreconditionError("borda_flip needs exactly 2 candidates");
  const auto result = borda(p);
  const auto a = result.winner;
  const auto b = 1 - a;
  std::int64_t first_a = 0;
  std::int64_t first_b = 0;
  for (const auto& ballot : p.ballots()) {
    (ballot.ranking.front() == a ? first_a : first_b) += static_cast<std::int64_t>(ballot.count);
  }
  if (first_b < 1) throw PreconditionError("borda_flip needs at least one voter ranking the loser first");
  const auto q = (first_a - first_b) / first_b + 1;

  Profile out = p;
  Candidate last = p.name(b);
  std::size_t suffix = 2;
  for (std::int64_t k = 0; k < q; ++k) {
    auto id = fresh_id(out, p.name(b), suffix);
    out = clone_candidate(out, last, id, ClonePlacement::always(Placement::kBelow));
    last = std::move(id);
  }
  return out;
}

IocVerdict verify_ioc(const Profile& p, Rule rule, const CloneSpec& spec, TiePolicy policy) {
  const auto& k = spec.members;
  if (std::find(k.begin(), k.end(), spec.representative) == k.end()) {
    throw PreconditionError("representative '" + spec.representative + "' is not in the clone set");
  }
  if (!is_clone_set(p, k)) throw PreconditionError("candidates do not form a clone set of the profile");

  std::vector<Candidate> drop;
  for (const auto& c : k) {
    if (c != spec.representative) drop.push_back(c);
  }
  const auto reduced = remove_candidates(p, drop);

  auto run = [&](const Profile& q, const char* which) {
    try {
      return tally(rule, q, policy);
    } catch (const TieError& e) {
      throw TieError("verify_ioc " + std::string(to_string(rule)) + " " + which + ": " + e.context(), e.tied(),
                     e.round());
    }
  };
  const auto with = run(p, "with clones");
  const auto without = run(reduced, "without clones");

  IocVerdict v;
  v.rule = rule;
  std::vector<CandidateIndex> idx = p.indices(k);
  std::sort(idx.begin(), idx.end());
  v.clone_set = p.names(idx);
  v.representative = spec.representative;
  v.winner_with = with.winner_name;
  v.winner_without = without.winner_name;
  v.tie_broken = with.tie_broken || without.tie_broken;
  const bool clone_won = std::find(k.begin(), k.end(), v.winner_with) != k.end();
  v.ioc_holds = clone_won ? v.winner_without == spec.representative : v.winner_without == v.winner_with;
  return v;
}

}  // namespace rankvote
