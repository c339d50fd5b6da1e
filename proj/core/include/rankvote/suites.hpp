#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rankvote/ballots.hpp"
#include "rankvote/clocked.hpp"
#include "rankvote/clones.hpp"
#include "rankvote/report.hpp"
#include "rankvote/rules.hpp"

namespace rankvote {

struct SuiteOptions {
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  std::size_t min_candidates = 3;
  std::size_t max_candidates = 5;
  std::uint64_t min_voters = 3;
  std::uint64_t max_voters = 15;
};

/// Generator for trial `index` of a suite seeded with `seed`; each trial can
/// be replayed on its own.
std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t index);

/// n uniformly random rankings over candidates a, b, c, ...; equal rankings
/// share one counted ballot line.
Profile random_profile(std::mt19937_64& rng, std::size_t m, std::uint64_t n);

struct CloneInjection {
  Profile profile;
  CloneSpec spec;
};

/// Clones a random candidate once or twice with random per-ballot placement
/// and picks a random representative.
CloneInjection inject_random_clones(std::mt19937_64& rng, const Profile& base);

/// Base profile and clone injection for one trial.
CloneInjection random_trial(const SuiteOptions& options, std::size_t index);

struct Tally {
  std::size_t conclusive = 0;
  std::size_t inconclusive = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_failure;

  void record_failure(std::size_t trial, const std::string& what);
};

struct RuleTally {
  Rule rule = Rule::kPlurality;
  Tally tally;
};

struct IocSuiteReport {
  SuiteOptions options;
  std::vector<RuleTally> rules;
};

/// verify_ioc on every trial for each rule; TieError counts as inconclusive.
IocSuiteReport run_ioc_suite(const SuiteOptions& options,
                             const std::vector<Rule>& rules = {Rule::kPlurality, Rule::kBorda, Rule::kStv,
                                                               Rule::kRankedPairs, Rule::kSchulze});

struct ProtocolTally {
  Protocol protocol = Protocol::kStv;
  Tally condition1;
  Tally neutrality;
  Tally winner;
  Tally access;
  Tally prefix;
};

struct OiocSuiteReport {
  SuiteOptions options;
  std::size_t permutations = 20;
  std::vector<ProtocolTally> protocols;
};

/// Per trial and protocol: Condition 1 against the injected clone set and
/// every detected clone set, neutrality under `permutations` random
/// relabelings, the winner condition, the access-pattern surrogate and the
/// prefix invariants of F.
OiocSuiteReport run_oioc_suite(const SuiteOptions& options, std::size_t permutations = 20);

struct NeutralitySuiteReport {
  SuiteOptions options;
  std::size_t permutations = 20;
  std::vector<std::pair<Protocol, Tally>> protocols;
};

NeutralitySuiteReport run_neutrality_suite(const SuiteOptions& options, std::size_t permutations = 20);

Tree to_tree(const Tally& t);
Tree to_tree(const IocSuiteReport& r);
Tree to_tree(const OiocSuiteReport& r);
Tree to_tree(const NeutralitySuiteReport& r);
std::string render_text(const IocSuiteReport& r);
std::string render_text(const OiocSuiteReport& r);
std::string render_text(const NeutralitySuiteReport& r);

/// Expected outcomes: no IoC failure for stv, rp and schulze; at least one
/// for plurality and borda.
bool ioc_suite_passes(const IocSuiteReport& r);
/// No failure of any tracked condition.
bool oioc_suite_passes(const OiocSuiteReport& r);
bool neutrality_suite_passes(const NeutralitySuiteReport& r);

/// A uniformly random bijection on the profile's candidates.
Relabeling random_relabeling(std::mt19937_64& rng, const Profile& p);

}  // namespace rankvote
