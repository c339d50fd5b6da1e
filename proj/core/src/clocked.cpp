#include "rankvote/clocked.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rankvote/errors.hpp"
#include "rankvote/locked_graph.hpp"

namespace rankvote {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join(const std::vector<Candidate>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out + "]";
}

bool contains(const std::vector<Candidate>& items, const Candidate& c) {
  return std::find(items.begin(), items.end(), c) != items.end();
}

ConditionReport passed(Condition c, std::string instance) { return {c, std::move(instance), true, std::nullopt}; }

ConditionReport failed(Condition c, std::string instance, std::string witness) {
  return {c, std::move(instance), false, std::move(witness)};
}

EliminationList finish(const Profile& p, const std::vector<bool>& eliminated,
                       const std::vector<CandidateIndex>& order) {
  const auto survivor =
      static_cast<CandidateIndex>(std::find(eliminated.begin(), eliminated.end(), false) - eliminated.begin());
  return EliminationList(p.names(order), p.name(survivor));
}

std::vector<std::string> pair_labels(const Profile& p, const std::vector<MajorityEntry>& group) {
  std::vector<std::string> out;
  for (const auto& e : group) out.push_back(p.name(e.winner) + ">" + p.name(e.loser));
  return out;
}

}  // namespace

EliminationList::EliminationList(std::vector<Candidate> order, Candidate survivor)
    : order_(std::move(order)), survivor_(std::move(survivor)) {
  std::set<Candidate> seen(order_.begin(), order_.end());
  if (seen.size() != order_.size()) throw PreconditionError("elimination list repeats a candidate");
  if (seen.count(survivor_)) throw PreconditionError("survivor '" + survivor_ + "' is also eliminated");
}

std::vector<Candidate> EliminationList::prefix(std::size_t i) const {
  if (i > order_.size()) throw PreconditionError("prefix index beyond the elimination list");
  return {order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(i)};
}

std::size_t event_round(const TranscriptEvent& event) {
  return std::visit([](const auto& e) { return e.round; }, event);
}

std::string format_event(const TranscriptEvent& event) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const ReadEvent& e) {
                   os << "READ ballot=" << e.ballot << " rank=" << e.rank << " round=" << e.round;
                 },
                 [&](const ConsumeEvent& e) {
                   os << "CONSUME pair=" << e.winner << "," << e.loser << " value=" << e.value
                      << " round=" << e.round;
                 },
                 [&](const EdgeEvent& e) {
                   os << "EDGE " << e.from << "->" << e.to << (e.kept ? " kept" : " skipped") << " round=" << e.round;
                 },
                 [&](const ElimEvent& e) { os << "ELIM " << e.candidate << " round=" << e.round; },
             },
             event);
  return os.str();
}

std::string Transcript::to_lines() const {
  std::string out;
  for (const auto& e : events) {
    out += format_event(e);
    out += '\n';
  }
  return out;
}

std::string_view to_string(Protocol protocol) { return protocol == Protocol::kStv ? "stv" : "rp"; }

std::optional<Protocol> parse_protocol(std::string_view text) {
  if (text == "stv") return Protocol::kStv;
  if (text == "rp") return Protocol::kRankedPairs;
  return std::nullopt;
}

Rule reference_rule(Protocol protocol) { return protocol == Protocol::kStv ? Rule::kStv : Rule::kRankedPairs; }

ClockedRun ce_stv(const Profile& p, TiePolicy policy) {
  const auto m = p.num_candidates();
  if (m < 2) throw PreconditionError("clocked protocols need at least 2 candidates");
  const auto priority = tie_priority(p, policy);
  auto view = tracked_view(p);
  ClockedRun run;
  run.tie_policy = policy;
  auto& events = run.transcript.events;

  auto read = [&](std::size_t ballot, std::size_t rank, std::size_t round) {
    events.push_back(ReadEvent{ballot, rank, round});
    return view.read(ballot, rank, round);
  };

  const auto lines = view.num_ballots();
  std::vector<std::size_t> frontier(lines, 0);
  std::vector<CandidateIndex> top(lines);
  for (std::size_t b = 0; b < lines; ++b) top[b] = read(b, 0, 1);

  std::vector<bool> eliminated(m, false);
  std::vector<CandidateIndex> order;
  for (std::size_t round = 1; round < m; ++round) {
    std::vector<std::uint64_t> votes(m, 0);
    for (std::size_t b = 0; b < lines; ++b) votes[top[b]] += view.count(b);

    std::vector<CandidateIndex> tied;
    std::uint64_t fewest = 0;
    for (CandidateIndex c = 0; c < m; ++c) {
      if (eliminated[c]) continue;
      if (tied.empty() || votes[c] < fewest) {
        tied = {c};
        fewest = votes[c];
      } else if (votes[c] == fewest) {
        tied.push_back(c);
      }
    }
    auto out = tied.front();
    if (tied.size() > 1) {
      if (policy == TiePolicy::kError) throw TieError("ce_stv elimination", p.names(tied), round);
      out = least_favored(tied, priority);
      run.tie_broken = true;
    }
    eliminated[out] = true;
    order.push_back(out);
    events.push_back(ElimEvent{p.name(out), round});
    if (round + 1 == m) break;

    for (std::size_t b = 0; b < lines; ++b) {
      while (eliminated[top[b]]) {
        ++frontier[b];
        top[b] = read(b, frontier[b], round);
      }
    }
  }

  run.list = finish(p, eliminated, order);
  run.access_log = view.access_log();
  return run;
}

ClockedRun ce_rp(const Profile& p, TiePolicy policy) {
  const auto m = p.num_candidates();
  if (m < 2) throw PreconditionError("clocked protocols need at least 2 candidates");
  auto priority = tie_priority(p, policy);
  if (priority.empty()) priority = tie_priority(p, TiePolicy::kDeclared);
  auto view = tracked_view(p);
  ClockedRun run;
  run.tie_policy = policy;
  auto& events = run.transcript.events;

  // Step 0: read every column and fill the majority matrix from what was read.
  PairwiseMatrix pairwise(m);
  std::vector<std::size_t> pos(m);
  for (std::size_t b = 0; b < view.num_ballots(); ++b) {
    for (std::size_t k = 0; k < m; ++k) {
      events.push_back(ReadEvent{b, k, 0});
      pos[view.read(b, k, 0)] = k;
    }
    for (CandidateIndex i = 0; i < m; ++i) {
      for (CandidateIndex j = 0; j < m; ++j) {
        if (pos[i] < pos[j]) pairwise(i, j) += static_cast<std::int64_t>(view.count(b));
      }
    }
  }
  const auto majority = majority_matrix(pairwise);

  LockedGraph graph(m);
  std::vector<bool> eliminated(m, false);
  std::vector<CandidateIndex> order;
  std::size_t round = 1;

  for (auto& group : majority_groups(majority)) {
    if (order.size() + 1 == m) break;
    if (group.size() > 1) {
      const auto free = order_free_outcome(graph, group);
      if (!free) {
        if (policy == TiePolicy::kError) {
          throw TieError("ce_rp margin " + std::to_string(group.front().margin), pair_labels(p, group), round);
        }
        run.tie_broken = true;
      } else {
        std::set<CandidateIndex> fresh;
        for (std::size_t k = 0; k < group.size(); ++k) {
          if ((*free)[k] && !eliminated[group[k].loser]) fresh.insert(group[k].loser);
        }
        if (fresh.size() > 1) {
          if (policy == TiePolicy::kError) {
            const std::vector<CandidateIndex> names(fresh.begin(), fresh.end());
            throw TieError("ce_rp elimination order", p.names(names), round);
          }
          run.tie_broken = true;
        }
      }
      order_by_priority(group, priority);
    }
    for (const auto& e : group) {
      if (order.size() + 1 == m) break;
      events.push_back(ConsumeEvent{p.name(e.winner), p.name(e.loser), e.margin, round});
      const bool keep = !graph.closes_cycle(e.winner, e.loser);
      events.push_back(EdgeEvent{p.name(e.winner), p.name(e.loser), keep, round});
      if (!keep) continue;
      graph.add(e.winner, e.loser);
      if (eliminated[e.loser]) continue;
      eliminated[e.loser] = true;
      order.push_back(e.loser);
      events.push_back(ElimEvent{p.name(e.loser), round});
      ++round;
    }
  }

  if (order.size() + 1 < m) {
    // Entries ran out: zero majorities left several sources.
    std::vector<CandidateIndex> sources;
    for (CandidateIndex c = 0; c < m; ++c) {
      if (!eliminated[c]) sources.push_back(c);
    }
    if (policy == TiePolicy::kError) throw TieError("ce_rp termination", p.names(sources), round);
    run.tie_broken = true;
    const auto keep = most_favored(sources, priority);
    std::sort(sources.begin(), sources.end(), [&](auto x, auto y) { return priority[x] > priority[y]; });
    for (const auto c : sources) {
      if (c == keep) continue;
      eliminated[c] = true;
      order.push_back(c);
      events.push_back(ElimEvent{p.name(c), round++});
    }
  }

  run.list = finish(p, eliminated, order);
  run.access_log = view.access_log();
  return run;
}

ClockedRun run_protocol(Protocol protocol, const Profile& p, TiePolicy policy) {
  return protocol == Protocol::kStv ? ce_stv(p, policy) : ce_rp(p, policy);
}

std::string_view to_string(Condition condition) {
  switch (condition) {
    case Condition::kClonesConsistency: return "C1";
    case Condition::kNeutrality: return "C3";
    case Condition::kWinner: return "C4";
    case Condition::kAccessPattern: return "C2-surrogate";
  }
  return "C1";
}

ConditionReport check_condition1(const EliminationList& f, const EliminationList& f_reduced, const CloneSpec& spec) {
  const auto& k = spec.members;
  const auto& d = spec.representative;
  if (!contains(k, d)) throw PreconditionError("representative '" + d + "' is not in the clone set");
  const auto instance = "K=" + join(k) + " d=" + d + " F=" + join(f.order()) + " F'=" + join(f_reduced.order());

  for (std::size_t i = 1; i <= f.size(); ++i) {
    const auto fi = f.prefix(i);
    const bool clone_alive = std::any_of(k.begin(), k.end(), [&](const auto& g) { return !contains(fi, g); });
    std::vector<Candidate> projected;
    if (clone_alive) {
      for (const auto& c : fi) {
        if (!contains(k, c)) projected.push_back(c);
      }
    } else {
      const auto last = *std::find_if(fi.rbegin(), fi.rend(), [&](const auto& c) { return contains(k, c); });
      for (const auto& c : fi) {
        if (c == last) {
          projected.push_back(d);
        } else if (!contains(k, c)) {
          projected.push_back(c);
        }
      }
    }
    const bool match = projected.size() <= f_reduced.size() && projected == f_reduced.prefix(projected.size());
    if (!match) {
      return failed(Condition::kClonesConsistency, instance,
                    "i=" + std::to_string(i) + std::string(clone_alive ? " clause a: " : " clause b: ") +
                        join(projected) + " is not a prefix of F'");
    }
  }
  return passed(Condition::kClonesConsistency, instance);
}

ConditionReport check_condition1(const Profile& p, const EliminationList& f, const EliminationList& f_reduced,
                                 const CloneSpec& spec) {
  if (!is_clone_set(p, spec.members)) throw PreconditionError("candidates do not form a clone set of the profile");
  return check_condition1(f, f_reduced, spec);
}

ConditionReport check_condition1(Protocol protocol, const Profile& p, const CloneSpec& spec, TiePolicy policy) {
  if (!contains(spec.members, spec.representative)) {
    throw PreconditionError("representative '" + spec.representative + "' is not in the clone set");
  }
  if (!is_clone_set(p, spec.members)) throw PreconditionError("candidates do not form a clone set of the profile");
  std::vector<Candidate> drop;
  for (const auto& c : spec.members) {
    if (c != spec.representative) drop.push_back(c);
  }
  const auto reduced = remove_candidates(p, drop);
  const auto full = run_protocol(protocol, p, policy);
  const auto part = run_protocol(protocol, reduced, policy);
  auto report = check_condition1(full.list, part.list, spec);
  report.instance = std::string(to_string(protocol)) + " " + report.instance;
  return report;
}

namespace {

// Under the declared policy the priority travels with the relabeling.
Profile relabel_for(const Profile& p, const Relabeling& tau, TiePolicy policy) {
  auto permuted = permute_candidates(p, tau);
  if (policy != TiePolicy::kDeclared) return permuted;
  std::vector<Candidate> order;
  for (const auto& c : p.candidates()) order.push_back(tau.at(c));
  std::vector<NamedBallot> ballots;
  for (const auto& b : permuted.ballots()) ballots.push_back({b.count, permuted.names(b.ranking)});
  return Profile::from_named(std::move(order), ballots);
}

}  // namespace

ConditionReport check_neutrality(Protocol protocol, const Profile& p, const Relabeling& tau, TiePolicy policy) {
  const auto permuted = relabel_for(p, tau, policy);
  const auto base = run_protocol(protocol, p, policy).list;
  const auto moved = run_protocol(protocol, permuted, policy).list;
  std::vector<Candidate> expected;
  for (const auto& c : base.order()) expected.push_back(tau.at(c));
  const auto expected_survivor = tau.at(base.survivor());

  std::string instance = std::string(to_string(protocol)) + " tau=";
  for (const auto& [from, to] : tau) {
    if (from != to) instance += from + "->" + to + " ";
  }
  instance += "F=" + join(base.order());
  if (moved.order() == expected && moved.survivor() == expected_survivor) {
    return passed(Condition::kNeutrality, instance);
  }
  return failed(Condition::kNeutrality, instance,
                "expected " + join(expected) + " survivor " + expected_survivor + ", got " + join(moved.order()) +
                    " survivor " + moved.survivor());
}

ConditionReport check_condition4(Protocol protocol, Rule rule, const Profile& p, TiePolicy policy) {
  const auto run = run_protocol(protocol, p, policy);
  const auto result = tally(rule, p, policy);
  const auto instance = std::string(to_string(protocol)) + " vs " + std::string(to_string(rule));
  if (run.list.survivor() == result.winner_name) return passed(Condition::kWinner, instance);
  return failed(Condition::kWinner, instance,
                "survivor " + run.list.survivor() + " but winner " + result.winner_name);
}

ConditionReport check_access_pattern(Protocol protocol, const Profile& p, const Transcript& transcript) {
  const auto instance = std::string(to_string(protocol)) + " transcript of " +
                        std::to_string(transcript.events.size()) + " events";
  if (protocol == Protocol::kRankedPairs) {
    std::optional<std::int64_t> previous;
    for (std::size_t idx = 0; idx < transcript.events.size(); ++idx) {
      const auto* consume = std::get_if<ConsumeEvent>(&transcript.events[idx]);
      if (!consume) continue;
      if (previous && consume->value > *previous) {
        return failed(Condition::kAccessPattern, instance,
                      "event " + std::to_string(idx) + " consumed " + std::to_string(consume->value) + " after " +
                          std::to_string(*previous));
      }
      previous = consume->value;
    }
    return passed(Condition::kAccessPattern, instance);
  }

  std::vector<bool> eliminated(p.num_candidates(), false);
  for (std::size_t idx = 0; idx < transcript.events.size(); ++idx) {
    const auto& event = transcript.events[idx];
    if (const auto* elim = std::get_if<ElimEvent>(&event)) {
      eliminated[p.index_of(elim->candidate)] = true;
      continue;
    }
    const auto* read = std::get_if<ReadEvent>(&event);
    if (!read) continue;
    if (read->ballot >= p.num_ballots() || read->rank >= p.num_candidates()) {
      return failed(Condition::kAccessPattern, instance, "event " + std::to_string(idx) + " reads outside the profile");
    }
    const auto& ranking = p.ballots()[read->ballot].ranking;
    std::size_t frontier = 0;
    while (frontier + 1 < ranking.size() && eliminated[ranking[frontier]]) ++frontier;
    if (read->rank > frontier) {
      return failed(Condition::kAccessPattern, instance,
                    "event " + std::to_string(idx) + " reads ballot " + std::to_string(read->ballot) + " rank " +
                        std::to_string(read->rank) + " below frontier " + std::to_string(frontier));
    }
  }
  return passed(Condition::kAccessPattern, instance);
}

ConditionReport check_access_pattern(Protocol protocol, const Profile& p, TiePolicy policy) {
  return check_access_pattern(protocol, p, run_protocol(protocol, p, policy).transcript);
}

}  // namespace rankvote
