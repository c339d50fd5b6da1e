#include "rankvote/suites.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "rankvote/errors.hpp"

namespace rankvote {

namespace {

template <class T>
T uniform(std::mt19937_64& rng, T lo, T hi) {
  return std::uniform_int_distribution<T>(lo, hi)(rng);
}

void check_list_shape(const Profile& p, const EliminationList& list, Tally& tally, std::size_t trial) {
  std::vector<Candidate> all = list.order();
  all.push_back(list.survivor());
  std::sort(all.begin(), all.end());
  auto names = p.candidates();
  std::sort(names.begin(), names.end());
  if (list.size() + 1 != p.num_candidates() || all != names) {
    tally.record_failure(trial, "F=[" + join_names(list.order()) + "] survivor " + list.survivor() +
                                    " does not partition the candidates");
    return;
  }
  ++tally.conclusive;
}

template <class F>
void guarded(Tally& tally, F&& body) {
  try {
    body();
  } catch (const TieError&) {
    ++tally.inconclusive;
  }
}

void record(Tally& tally, std::size_t trial, const ConditionReport& r) {
  if (r.pass) {
    ++tally.conclusive;
  } else {
    tally.record_failure(trial, r.instance + ": " + r.witness.value_or(""));
  }
}

}  // namespace

void Tally::record_failure(std::size_t trial, const std::string& what) {
  ++conclusive;
  ++failures;
  if (!first_failure) first_failure = "trial " + std::to_string(trial) + ": " + what;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(std::uint64_t{index} >> 32)};
  return std::mt19937_64(seq);
}

Profile random_profile(std::mt19937_64& rng, std::size_t m, std::uint64_t n) {
  if (m < 1 || m > 26 || n < 1) throw PreconditionError("random profiles need 1..26 candidates and a voter");
  std::vector<Candidate> names;
  for (std::size_t c = 0; c < m; ++c) names.emplace_back(1, static_cast<char>('a' + c));
  std::vector<Ballot> ballots;
  std::map<std::vector<CandidateIndex>, std::size_t> line_of;
  std::vector<CandidateIndex> ranking(m);
  for (std::uint64_t v = 0; v < n; ++v) {
    std::iota(ranking.begin(), ranking.end(), CandidateIndex{0});
    std::shuffle(ranking.begin(), ranking.end(), rng);
    const auto [it, inserted] = line_of.try_emplace(ranking, ballots.size());
    if (inserted) {
      ballots.push_back({ranking, 1});
    } else {
      ++ballots[it->second].count;
    }
  }
  return Profile(std::move(names), std::move(ballots));
}

CloneInjection inject_random_clones(std::mt19937_64& rng, const Profile& base) {
  const auto target = base.name(uniform<std::size_t>(rng, 0, base.num_candidates() - 1));
  const std::size_t copies = uniform<int>(rng, 0, 9) < 7 ? 1 : 2;
  Profile p = base;
  CloneSet members{target};
  for (std::size_t k = 0; k < copies; ++k) {
    const auto& source = members[uniform<std::size_t>(rng, 0, members.size() - 1)];
    std::string id = target + std::to_string(k + 2);
    while (p.find(id)) id += "_";
    std::vector<Placement> where(p.num_ballots());
    for (auto& w : where) w = uniform<int>(rng, 0, 1) ? Placement::kAbove : Placement::kBelow;
    p = clone_candidate(p, source, id, ClonePlacement::per_ballot(std::move(where)));
    members.push_back(id);
  }
  const auto rep = members[uniform<std::size_t>(rng, 0, members.size() - 1)];
  std::vector<CandidateIndex> idx = p.indices(members);
  std::sort(idx.begin(), idx.end());
  CloneSpec spec{p.names(idx), rep};
  return {std::move(p), std::move(spec)};
}

CloneInjection random_trial(const SuiteOptions& options, std::size_t index) {
  auto rng = trial_rng(options.seed, index);
  const auto m = uniform<std::size_t>(rng, options.min_candidates, options.max_candidates);
  const auto n = uniform<std::uint64_t>(rng, options.min_voters, options.max_voters);
  return inject_random_clones(rng, random_profile(rng, m, n));
}

Relabeling random_relabeling(std::mt19937_64& rng, const Profile& p) {
  auto image = p.candidates();
  std::shuffle(image.begin(), image.end(), rng);
  Relabeling tau;
  for (std::size_t k = 0; k < image.size(); ++k) tau[p.name(k)] = image[k];
  return tau;
}

IocSuiteReport run_ioc_suite(const SuiteOptions& options, const std::vector<Rule>& rules) {
  IocSuiteReport report{options, {}};
  for (const auto rule : rules) report.rules.push_back({rule, {}});
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const auto inj = random_trial(options, trial);
    for (auto& entry : report.rules) {
      guarded(entry.tally, [&] {
        const auto v = verify_ioc(inj.profile, entry.rule, inj.spec);
        if (v.ioc_holds) {
          ++entry.tally.conclusive;
        } else {
          entry.tally.record_failure(trial, "K={" + join_names(v.clone_set) + "} d=" + v.representative +
                                                " winner with " + v.winner_with + ", without " + v.winner_without);
        }
      });
    }
  }
  return report;
}

OiocSuiteReport run_oioc_suite(const SuiteOptions& options, std::size_t permutations) {
  OiocSuiteReport report{options, permutations, {}};
  for (const auto protocol : {Protocol::kStv, Protocol::kRankedPairs}) {
    ProtocolTally t;
    t.protocol = protocol;
    report.protocols.push_back(t);
  }

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const auto inj = random_trial(options, trial);
    const auto& p = inj.profile;
    // A separate stream keeps the profile of trial i independent of how many
    // draws the checks below make.
    auto rng = trial_rng(options.seed ^ 0x9e3779b97f4a7c15ULL, trial);

    std::vector<CloneSpec> specs{inj.spec};
    for (const auto& set : detect_clone_sets(p)) {
      if (set == inj.spec.members) continue;
      specs.push_back({set, set[uniform<std::size_t>(rng, 0, set.size() - 1)]});
    }
    std::vector<Relabeling> taus;
    for (std::size_t k = 0; k < permutations; ++k) taus.push_back(random_relabeling(rng, p));

    for (auto& entry : report.protocols) {
      const auto protocol = entry.protocol;
      for (const auto& spec : specs) {
        guarded(entry.condition1, [&] { record(entry.condition1, trial, check_condition1(protocol, p, spec)); });
      }
      for (const auto& tau : taus) {
        guarded(entry.neutrality, [&] { record(entry.neutrality, trial, check_neutrality(protocol, p, tau)); });
      }
      guarded(entry.winner, [&] {
        record(entry.winner, trial, check_condition4(protocol, reference_rule(protocol), p));
      });
      guarded(entry.access, [&] {
        const auto run = run_protocol(protocol, p);
        record(entry.access, trial, check_access_pattern(protocol, p, run.transcript));
        check_list_shape(p, run.list, entry.prefix, trial);
      });
    }
  }
  return report;
}

NeutralitySuiteReport run_neutrality_suite(const SuiteOptions& options, std::size_t permutations) {
  NeutralitySuiteReport report{options, permutations, {}};
  for (const auto protocol : {Protocol::kStv, Protocol::kRankedPairs}) report.protocols.push_back({protocol, {}});
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    auto rng = trial_rng(options.seed, trial);
    const auto m = uniform<std::size_t>(rng, options.min_candidates, options.max_candidates);
    const auto n = uniform<std::uint64_t>(rng, options.min_voters, options.max_voters);
    const auto p = random_profile(rng, m, n);
    std::vector<Relabeling> taus;
    for (std::size_t k = 0; k < permutations; ++k) taus.push_back(random_relabeling(rng, p));
    for (auto& [protocol, tally] : report.protocols) {
      for (const auto& tau : taus) {
        guarded(tally, [&] { record(tally, trial, check_neutrality(protocol, p, tau)); });
      }
    }
  }
  return report;
}

bool ioc_suite_passes(const IocSuiteReport& r) {
  for (const auto& entry : r.rules) {
    const bool clone_proof =
        entry.rule == Rule::kStv || entry.rule == Rule::kRankedPairs || entry.rule == Rule::kSchulze;
    if (clone_proof && entry.tally.failures != 0) return false;
    if (!clone_proof && entry.tally.failures == 0) return false;
  }
  return true;
}

bool oioc_suite_passes(const OiocSuiteReport& r) {
  return std::all_of(r.protocols.begin(), r.protocols.end(), [](const ProtocolTally& t) {
    return t.condition1.failures + t.neutrality.failures + t.winner.failures + t.access.failures +
               t.prefix.failures ==
           0;
  });
}

bool neutrality_suite_passes(const NeutralitySuiteReport& r) {
  return std::all_of(r.protocols.begin(), r.protocols.end(), [](const auto& e) { return e.second.failures == 0; });
}

Tree to_tree(const Tally& t) {
  Tree out;
  out["conclusive"] = t.conclusive;
  out["inconclusive"] = t.inconclusive;
  out["failures"] = t.failures;
  if (t.first_failure) out["first_failure"] = *t.first_failure;
  return out;
}

namespace {

Tree options_tree(const char* suite, const SuiteOptions& o) {
  Tree t;
  t["suite"] = suite;
  t["seed"] = o.seed;
  t["trials"] = o.trials;
  t["candidates"] = Tree::array({o.min_candidates, o.max_candidates});
  t["voters"] = Tree::array({o.min_voters, o.max_voters});
  return t;
}

std::string tally_line(const std::string& label, const Tally& t) {
  std::ostringstream os;
  os << "  " << label << ": conclusive=" << t.conclusive << " inconclusive=" << t.inconclusive
     << " failures=" << t.failures;
  if (t.first_failure) os << "  first: " << *t.first_failure;
  os << '\n';
  return os.str();
}

}  // namespace

Tree to_tree(const IocSuiteReport& r) {
  Tree t = options_tree("ioc", r.options);
  Tree rules = Tree::array();
  for (const auto& e : r.rules) {
    Tree entry = to_tree(e.tally);
    entry["rule"] = std::string(to_string(e.rule));
    rules.push_back(std::move(entry));
  }
  t["rules"] = std::move(rules);
  t["pass"] = ioc_suite_passes(r);
  return t;
}

Tree to_tree(const OiocSuiteReport& r) {
  Tree t = options_tree("oioc", r.options);
  t["permutations"] = r.permutations;
  Tree protocols = Tree::array();
  for (const auto& e : r.protocols) {
    Tree entry;
    entry["protocol"] = std::string(to_string(e.protocol));
    entry["C1"] = to_tree(e.condition1);
    entry["C3"] = to_tree(e.neutrality);
    entry["C4"] = to_tree(e.winner);
    entry["C2-surrogate"] = to_tree(e.access);
    entry["prefixes"] = to_tree(e.prefix);
    protocols.push_back(std::move(entry));
  }
  t["protocols"] = std::move(protocols);
  t["pass"] = oioc_suite_passes(r);
  return t;
}

Tree to_tree(const NeutralitySuiteReport& r) {
  Tree t = options_tree("neutrality", r.options);
  t["permutations"] = r.permutations;
  Tree protocols = Tree::array();
  for (const auto& [protocol, tally] : r.protocols) {
    Tree entry = to_tree(tally);
    entry["protocol"] = std::string(to_string(protocol));
    protocols.push_back(std::move(entry));
  }
  t["protocols"] = std::move(protocols);
  t["pass"] = neutrality_suite_passes(r);
  return t;
}

std::string render_text(const IocSuiteReport& r) {
  std::ostringstream os;
  os << "ioc suite: seed=" << r.options.seed << " trials=" << r.options.trials << '\n';
  for (const auto& e : r.rules) os << tally_line(std::string(to_string(e.rule)), e.tally);
  os << "result: " << (ioc_suite_passes(r) ? "pass" : "FAIL") << '\n';
  return os.str();
}

std::string render_text(const OiocSuiteReport& r) {
  std::ostringstream os;
  os << "oioc suite: seed=" << r.options.seed << " trials=" << r.options.trials
     << " permutations=" << r.permutations << '\n';
  for (const auto& e : r.protocols) {
    const std::string p(to_string(e.protocol));
    os << tally_line(p + " C1", e.condition1) << tally_line(p + " C3", e.neutrality)
       << tally_line(p + " C4", e.winner) << tally_line(p + " C2-surrogate", e.access)
       << tally_line(p + " prefixes", e.prefix);
  }
  os << "result: " << (oioc_suite_passes(r) ? "pass" : "FAIL") << '\n';
  return os.str();
}

std::string render_text(const NeutralitySuiteReport& r) {
  std::ostringstream os;
  os << "neutrality suite: seed=" << r.options.seed << " trials=" << r.options.trials
     << " permutations=" << r.permutations << '\n';
  for (const auto& [protocol, tally] : r.protocols) os << tally_line(std::string(to_string(protocol)), tally);
  os << "result: " << (neutrality_suite_passes(r) ? "pass" : "FAIL") << '\n';
  return os.str();
}

}  // namespace rankvote
