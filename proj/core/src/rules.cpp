#include "rankvote/rules.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rankvote/errors.hpp"

namespace rankvote {

namespace {

constexpr std::size_t kMaxEnumeratedGroup = 6;

std::vector<CandidateIndex> argmax_set(const std::vector<std::int64_t>& scores) {
  const auto best = *std::max_element(scores.begin(), scores.end());
  std::vector<CandidateIndex> out;
  for (CandidateIndex c = 0; c < scores.size(); ++c) {
    if (scores[c] == best) out.push_back(c);
  }
  return out;
}

TallyResult score_result(Rule rule, const Profile& p, std::vector<std::int64_t> scores, TiePolicy policy) {
  if (p.num_candidates() == 0) throw PreconditionError("profile has no candidates");
  TallyResult r;
  r.rule = rule;
  r.tie_policy = policy;
  const auto top = argmax_set(scores);
  if (top.size() == 1) {
    r.winner = top.front();
  } else if (policy == TiePolicy::kError) {
    throw TieError(std::string(to_string(rule)) + " winner", p.names(top));
  } else {
    r.winner = most_favored(top, tie_priority(p, policy));
    r.tie_broken = true;
  }
  r.winner_name = p.name(r.winner);
  r.detail = ScoreDetail{std::move(scores)};
  return r;
}

std::string pair_label(const Profile& p, const MajorityEntry& e) {
  return p.name(e.winner) + ">" + p.name(e.loser);
}

std::vector<bool> lock_sequentially(LockedGraph graph, std::span<const MajorityEntry> group,
                                    std::span<const std::size_t> order) {
  std::vector<bool> kept(group.size(), false);
  for (const auto idx : order) {
    const auto& e = group[idx];
    if (!graph.closes_cycle(e.winner, e.loser)) {
      graph.add(e.winner, e.loser);
      kept[idx] = true;
    }
  }
  return kept;
}

}  // namespace

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kPlurality: return "plurality";
    case Rule::kBorda: return "borda";
    case Rule::kStv: return "stv";
    case Rule::kRankedPairs: return "rp";
    case Rule::kSchulze: return "schulze";
  }
  return "plurality";
}

std::optional<Rule> parse_rule(std::string_view text) {
  if (text == "plurality") return Rule::kPlurality;
  if (text == "borda") return Rule::kBorda;
  if (text == "stv") return Rule::kStv;
  if (text == "rp" || text == "ranked_pairs") return Rule::kRankedPairs;
  if (text == "schulze") return Rule::kSchulze;
  return std::nullopt;
}

TallyResult plurality(const Profile& p, TiePolicy policy) {
  std::vector<std::int64_t> scores(p.num_candidates(), 0);
  for (const auto& b : p.ballots()) scores[b.ranking.front()] += static_cast<std::int64_t>(b.count);
  return score_result(Rule::kPlurality, p, std::move(scores), policy);
}

TallyResult borda(const Profile& p, TiePolicy policy) {
  const auto m = p.num_candidates();
  std::vector<std::int64_t> scores(m, 0);
  for (const auto& b : p.ballots()) {
    for (std::size_t k = 0; k < m; ++k) {
      scores[b.ranking[k]] += static_cast<std::int64_t>((m - 1 - k) * b.count);
    }
  }
  return score_result(Rule::kBorda, p, std::move(scores), policy);
}

TallyResult stv(const Profile& p, TiePolicy policy) {
  const auto m = p.num_candidates();
  if (m == 0) throw PreconditionError("profile has no candidates");
  const auto priority = tie_priority(p, policy);
  TallyResult r;
  r.rule = Rule::kStv;
  r.tie_policy = policy;
  StvDetail detail;
  std::vector<bool> alive(m, true);

  for (std::size_t round = 1; round < m; ++round) {
    std::vector<std::int64_t> tallies(m, 0);
    for (const auto& b : p.ballots()) {
      const auto top = *std::find_if(b.ranking.begin(), b.ranking.end(), [&](auto c) { return alive[c]; });
      tallies[top] += static_cast<std::int64_t>(b.count);
    }
    std::int64_t fewest = -1;
    for (CandidateIndex c = 0; c < m; ++c) {
      if (alive[c] && (fewest < 0 || tallies[c] < fewest)) fewest = tallies[c];
    }
    std::vector<CandidateIndex> tied;
    for (CandidateIndex c = 0; c < m; ++c) {
      if (alive[c] && tallies[c] == fewest) tied.push_back(c);
    }
    CandidateIndex out = tied.front();
    if (tied.size() > 1) {
      if (policy == TiePolicy::kError) throw TieError("stv elimination", p.names(tied), round);
      out = least_favored(tied, priority);
      r.tie_broken = true;
    }
    alive[out] = false;
    detail.elimination_order.push_back(out);
    detail.round_tallies.push_back(std::move(tallies));
  }

  r.winner = static_cast<CandidateIndex>(std::find(alive.begin(), alive.end(), true) - alive.begin());
  r.winner_name = p.name(r.winner);
  r.detail = std::move(detail);
  return r;
}

PairwiseMatrix pairwise_matrix(const Profile& p) {
  const auto m = p.num_candidates();
  PairwiseMatrix out(m);
  std::vector<std::size_t> pos(m);
  for (const auto& b : p.ballots()) {
    for (std::size_t k = 0; k < m; ++k) pos[b.ranking[k]] = k;
    for (CandidateIndex i = 0; i < m; ++i) {
      for (CandidateIndex j = 0; j < m; ++j) {
        if (pos[i] < pos[j]) out(i, j) += static_cast<std::int64_t>(b.count);
      }
    }
  }
  return out;
}

MajorityMatrix majority_matrix(const PairwiseMatrix& pairwise) {
  const auto m = pairwise.size();
  MajorityMatrix out(m);
  for (CandidateIndex i = 0; i < m; ++i) {
    for (CandidateIndex j = 0; j < m; ++j) out(i, j) = pairwise(i, j) - pairwise(j, i);
  }
  return out;
}

MajorityMatrix majority_matrix(const Profile& p) { return majority_matrix(pairwise_matrix(p)); }

std::vector<std::vector<MajorityEntry>> majority_groups(const MajorityMatrix& m) {
  std::vector<MajorityEntry> entries;
  for (CandidateIndex i = 0; i < m.size(); ++i) {
    for (CandidateIndex j = 0; j < m.size(); ++j) {
      if (m(i, j) > 0) entries.push_back({i, j, m(i, j)});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.margin > y.margin; });
  std::vector<std::vector<MajorityEntry>> groups;
  for (const auto& e : entries) {
    if (groups.empty() || groups.back().front().margin != e.margin) groups.emplace_back();
    groups.back().push_back(e);
  }
  return groups;
}

void order_by_priority(std::vector<MajorityEntry>& group, std::span<const std::size_t> priority) {
  std::stable_sort(group.begin(), group.end(), [&](const auto& x, const auto& y) {
    if (priority[x.winner] != priority[y.winner]) return priority[x.winner] > priority[y.winner];
    return priority[x.loser] > priority[y.loser];
  });
}

std::optional<std::vector<bool>> order_free_outcome(const LockedGraph& graph, std::span<const MajorityEntry> group) {
  const auto k = group.size();
  std::vector<bool> kept(k, false);
  bool all_forced = true;
  for (std::size_t idx = 0; idx < k; ++idx) {
    const auto& e = group[idx];
    if (graph.reaches(e.loser, e.winner)) continue;
    LockedGraph widened = graph;
    for (std::size_t other = 0; other < k; ++other) {
      if (other != idx) widened.add(group[other].winner, group[other].loser);
    }
    if (widened.reaches(e.loser, e.winner)) {
      all_forced = false;
      break;
    }
    kept[idx] = true;
  }
  if (all_forced) return kept;
  if (k > kMaxEnumeratedGroup) return std::nullopt;

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto first = lock_sequentially(graph, group, order);
  while (std::next_permutation(order.begin(), order.end())) {
    if (lock_sequentially(graph, group, order) != first) return std::nullopt;
  }
  return first;
}

TallyResult ranked_pairs(const Profile& p, TiePolicy policy) {
  const auto m = p.num_candidates();
  if (m == 0) throw PreconditionError("profile has no candidates");
  auto priority = tie_priority(p, policy);
  if (priority.empty()) priority = tie_priority(p, TiePolicy::kDeclared);

  TallyResult r;
  r.rule = Rule::kRankedPairs;
  r.tie_policy = policy;
  RankedPairsDetail detail;
  detail.majority = majority_matrix(p);
  LockedGraph graph(m);

  for (auto& group : majority_groups(detail.majority)) {
    if (group.size() > 1) {
      const auto free = order_free_outcome(graph, group);
      if (!free) {
        if (policy == TiePolicy::kError) {
          std::vector<std::string> tied;
          for (const auto& e : group) tied.push_back(pair_label(p, e));
          throw TieError("ranked pairs margin " + std::to_string(group.front().margin), std::move(tied));
        }
        r.tie_broken = true;
      }
      order_by_priority(group, priority);
    }
    for (const auto& e : group) {
      const bool keep = !graph.closes_cycle(e.winner, e.loser);
      if (keep) graph.add(e.winner, e.loser);
      detail.edge_log.push_back({e.winner, e.loser, e.margin, keep});
    }
  }

  const auto sources = graph.sources();
  if (sources.empty()) throw InternalError("ranked pairs graph has no source");
  if (sources.size() == 1) {
    r.winner = sources.front();
  } else if (policy == TiePolicy::kError) {
    throw TieError("ranked pairs source", p.names(sources));
  } else {
    r.winner = most_favored(sources, priority);
    r.tie_broken = true;
  }
  r.winner_name = p.name(r.winner);
  r.detail = std::move(detail);
  return r;
}

StrengthMatrix schulze_strengths(const PairwiseMatrix& pairwise) {
  const auto m = pairwise.size();
  StrengthMatrix s(m);
  for (CandidateIndex i = 0; i < m; ++i) {
    for (CandidateIndex j = 0; j < m; ++j) {
      if (i != j && pairwise(i, j) > pairwise(j, i)) s(i, j) = pairwise(i, j);
    }
  }
  for (CandidateIndex k = 0; k < m; ++k) {
    for (CandidateIndex i = 0; i < m; ++i) {
      if (i == k) continue;
      for (CandidateIndex j = 0; j < m; ++j) {
        if (j == i || j == k) continue;
        s(i, j) = std::max(s(i, j), std::min(s(i, k), s(k, j)));
      }
    }
  }
  return s;
}

std::vector<CandidateIndex> schulze_winners(const StrengthMatrix& strength) {
  std::vector<CandidateIndex> out;
  for (CandidateIndex x = 0; x < strength.size(); ++x) {
    bool beaten = false;
    for (CandidateIndex y = 0; y < strength.size() && !beaten; ++y) beaten = strength(y, x) > strength(x, y);
    if (!beaten) out.push_back(x);
  }
  return out;
}

TallyResult schulze(const Profile& p, TiePolicy policy) {
  const auto m = p.num_candidates();
  if (m == 0) throw PreconditionError("profile has no candidates");
  TallyResult r;
  r.rule = Rule::kSchulze;
  r.tie_policy = policy;
  SchulzeDetail detail;
  detail.pairwise = pairwise_matrix(p);
  detail.strength = schulze_strengths(detail.pairwise);
  const auto& s = detail.strength;

  if (policy == TiePolicy::kError) {
    std::vector<std::size_t> wins(m, 0);
    for (CandidateIndex i = 0; i < m; ++i) {
      for (CandidateIndex j = i + 1; j < m; ++j) {
        if (s(i, j) == s(j, i)) throw TieError("schulze ranking", {p.name(i), p.name(j)});
        ++wins[s(i, j) > s(j, i) ? i : j];
      }
    }
    detail.ranking.resize(m);
    std::vector<bool> seen(m, false);
    for (CandidateIndex c = 0; c < m; ++c) {
      const auto place = m - 1 - wins[c];
      if (seen[place]) throw InternalError("schulze relation is not a strict total order");
      seen[place] = true;
      detail.ranking[place] = c;
    }
  } else {
    const auto priority = tie_priority(p, policy);
    std::vector<bool> placed(m, false);
    for (std::size_t step = 0; step < m; ++step) {
      std::vector<CandidateIndex> unbeaten;
      for (CandidateIndex x = 0; x < m; ++x) {
        if (placed[x]) continue;
        bool beaten = false;
        for (CandidateIndex y = 0; y < m && !beaten; ++y) beaten = !placed[y] && s(y, x) > s(x, y);
        if (!beaten) unbeaten.push_back(x);
      }
      if (unbeaten.empty()) throw InternalError("schulze relation has a cycle");
      if (unbeaten.size() > 1) r.tie_broken = true;
      const auto next = most_favored(unbeaten, priority);
      placed[next] = true;
      detail.ranking.push_back(next);
    }
  }

  r.winner = detail.ranking.front();
  r.winner_name = p.name(r.winner);
  r.detail = std::move(detail);
  return r;
}

TallyResult tally(Rule rule, const Profile& p, TiePolicy policy) {
  switch (rule) {
    case Rule::kPlurality: return plurality(p, policy);
    case Rule::kBorda: return borda(p, policy);
    case Rule::kStv: return stv(p, policy);
    case Rule::kRankedPairs: return ranked_pairs(p, policy);
    case Rule::kSchulze: return schulze(p, policy);
  }
  throw InternalError("unknown rule");
}

}  // namespace rankvote
