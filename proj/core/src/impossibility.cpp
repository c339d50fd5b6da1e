#include "rankvote/impossibility.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "rankvote/clones.hpp"
#include "rankvote/errors.hpp"

namespace rankvote {

namespace {

constexpr std::size_t kMaxSearchCandidates = 5;
constexpr std::int64_t kMaxSearchVoters = 30;

bool contains(const std::vector<Candidate>& items, const Candidate& c) {
  return std::find(items.begin(), items.end(), c) != items.end();
}

std::string join(const std::vector<Candidate>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out + "]";
}

class ProfileSearch {
 public:
  ProfileSearch(const PTemplate& t, PairwiseMatrix target) : t_(t), target_(std::move(target)) {
    const auto m = t.candidates.size();
    std::vector<CandidateIndex> perm(m);
    std::iota(perm.begin(), perm.end(), CandidateIndex{0});
    do {
      rankings_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (CandidateIndex i = 0; i < m; ++i) {
      for (CandidateIndex j = i + 1; j < m; ++j) pairs_.emplace_back(i, j);
    }
    // ahead_[k][q]: ranking k puts the first member of pair q ahead.
    ahead_.assign(rankings_.size(), std::vector<char>(pairs_.size(), 0));
    for (std::size_t k = 0; k < rankings_.size(); ++k) {
      std::vector<std::size_t> pos(m);
      for (std::size_t r = 0; r < m; ++r) pos[rankings_[k][r]] = r;
      for (std::size_t q = 0; q < pairs_.size(); ++q) ahead_[k][q] = pos[pairs_[q].first] < pos[pairs_[q].second];
    }
    // Suffix availability of each orientation.
    can_raise_.assign(rankings_.size() + 1, std::vector<char>(pairs_.size(), 0));
    can_lower_.assign(rankings_.size() + 1, std::vector<char>(pairs_.size(), 0));
    for (std::size_t k = rankings_.size(); k-- > 0;) {
      for (std::size_t q = 0; q < pairs_.size(); ++q) {
        can_raise_[k][q] = can_raise_[k + 1][q] || ahead_[k][q];
        can_lower_[k][q] = can_lower_[k + 1][q] || !ahead_[k][q];
      }
    }
    current_.assign(pairs_.size(), 0);
    counts_.assign(rankings_.size(), 0);
  }

  std::optional<Profile> run() {
    if (!feasible(0, t_.n)) return std::nullopt;
    return descend(0, t_.n);
  }

 private:
  std::int64_t target(std::size_t q) const { return target_(pairs_[q].first, pairs_[q].second); }

  bool feasible(std::size_t k, std::int64_t remaining) const {
    for (std::size_t q = 0; q < pairs_.size(); ++q) {
      const auto need = target(q) - current_[q];
      if (need < 0) return false;
      if (need > (can_raise_[k][q] ? remaining : 0)) return false;
      if (!can_lower_[k][q] && need != remaining) return false;
    }
    return true;
  }

  std::optional<Profile> descend(std::size_t k, std::int64_t remaining) {
    if (remaining == 0) return accept();
    if (k == rankings_.size()) return std::nullopt;
    std::int64_t most = remaining;
    for (std::size_t q = 0; q < pairs_.size(); ++q) {
      if (ahead_[k][q]) most = std::min(most, target(q) - current_[q]);
    }
    for (std::int64_t c = most; c >= 0; --c) {
      apply(k, c);
      if (feasible(k + 1, remaining - c)) {
        if (auto found = descend(k + 1, remaining - c)) return found;
      }
      apply(k, -c);
    }
    return std::nullopt;
  }

  void apply(std::size_t k, std::int64_t c) {
    counts_[k] += c;
    for (std::size_t q = 0; q < pairs_.size(); ++q) {
      if (ahead_[k][q]) current_[q] += c;
    }
  }

  std::optional<Profile> accept() const {
    std::vector<Ballot> ballots;
    for (std::size_t k = 0; k < rankings_.size(); ++k) {
      if (counts_[k] > 0) ballots.push_back({rankings_[k], static_cast<std::uint64_t>(counts_[k])});
    }
    Profile p(t_.candidates, std::move(ballots));
    for (const auto& set : detect_clone_sets(p)) {
      if (contains(set, t_.candidates[0]) && contains(set, t_.candidates[1])) return std::nullopt;
    }
    return p;
  }

  const PTemplate& t_;
  PairwiseMatrix target_;
  std::vector<std::vector<CandidateIndex>> rankings_;
  std::vector<std::pair<CandidateIndex, CandidateIndex>> pairs_;
  std::vector<std::vector<char>> ahead_;
  std::vector<std::vector<char>> can_raise_;
  std::vector<std::vector<char>> can_lower_;
  std::vector<std::int64_t> current_;
  std::vector<std::int64_t> counts_;
};

/// Ballot lines whose counts sum to `target`, by subset-sum DP.
std::optional<std::vector<bool>> pick_lines(const Profile& p, std::int64_t target) {
  const auto& ballots = p.ballots();
  const auto cap = static_cast<std::size_t>(target);
  // reach[k][s]: some subset of the first k lines sums to s.
  std::vector<std::vector<char>> reach(ballots.size() + 1, std::vector<char>(cap + 1, 0));
  reach[0][0] = 1;
  for (std::size_t k = 0; k < ballots.size(); ++k) {
    const auto w = ballots[k].count;
    for (std::size_t s = 0; s <= cap; ++s) {
      if (!reach[k][s]) continue;
      reach[k + 1][s] = 1;
      if (s + w <= cap) reach[k + 1][s + w] = 1;
    }
  }
  if (!reach[ballots.size()][cap]) return std::nullopt;
  std::vector<bool> chosen(ballots.size(), false);
  auto s = cap;
  for (std::size_t k = ballots.size(); k-- > 0;) {
    if (reach[k][s]) continue;
    chosen[k] = true;
    s -= ballots[k].count;
  }
  return chosen;
}

Candidate fresh_id(const Profile& p, const Candidate& base) {
  Candidate id = base + "_star";
  while (p.find(id)) id += "_";
  return id;
}

std::vector<Candidate> relative_order(const std::vector<Candidate>& order, const std::vector<Candidate>& keep) {
  std::vector<Candidate> out;
  for (const auto& c : order) {
    if (contains(keep, c)) out.push_back(c);
  }
  return out;
}

/// Order of `other` and the later of {clone, original} in `order`, with the
/// later one written as `original`.
std::vector<Candidate> implied_order(const std::vector<Candidate>& order, const Candidate& original,
                                     const Candidate& clone, const Candidate& other) {
  const auto pos = [&](const Candidate& c) { return std::find(order.begin(), order.end(), c) - order.begin(); };
  const auto last_clone = std::max(pos(original), pos(clone));
  return last_clone < pos(other) ? std::vector<Candidate>{original, other} : std::vector<Candidate>{other, original};
}

ConditionReport make_report(Condition c, std::string instance, std::optional<std::string> witness) {
  ConditionReport r;
  r.condition = c;
  r.instance = std::move(instance);
  r.pass = !witness.has_value();
  r.witness = std::move(witness);
  return r;
}

std::optional<std::string> neutrality_witness(const Profile& p, const OrderFn& order, const KnockoutRun& base) {
  const auto& names = p.candidates();
  std::vector<Candidate> image = names;
  std::sort(image.begin(), image.end());
  std::vector<Candidate> sorted_names = image;
  do {
    Relabeling tau;
    for (std::size_t k = 0; k < names.size(); ++k) tau[sorted_names[k]] = image[k];
    const auto moved = run_schulze_knockout(permute_candidates(p, tau), order);
    std::vector<Candidate> expected;
    for (const auto& c : base.eliminated) expected.push_back(tau.at(c));
    std::vector<Candidate> expected_survivors;
    for (const auto& c : base.survivors) expected_survivors.push_back(tau.at(c));
    std::sort(expected_survivors.begin(), expected_survivors.end());
    auto got_survivors = moved.survivors;
    std::sort(got_survivors.begin(), got_survivors.end());
    if (moved.eliminated != expected || got_survivors != expected_survivors) {
      std::string t;
      for (const auto& [from, to] : tau) {
        if (from != to) t += from + "->" + to + " ";
      }
      return "tau " + t + "gives F=" + join(moved.eliminated) + ", expected " + join(expected);
    }
  } while (std::next_permutation(image.begin(), image.end()));
  return std::nullopt;
}

}  // namespace

PTemplate PTemplate::seven_voter_example() {
  PTemplate t;
  t.n = 7;
  t.r = 3;
  t.shared = {4, 7};
  t.among = {5};
  return t;
}

PTemplate PTemplate::tied_family(std::int64_t n) {
  if (n < 4 || n % 2 != 0) throw PreconditionError("the tied family needs an even voter count of at least 4");
  PTemplate t;
  t.n = n;
  t.r = n / 2;
  t.shared = {n / 2 - 1, 1};
  t.among = {n / 2 + 1};
  return t;
}

void PTemplate::validate() const {
  const auto m = candidates.size();
  if (m < 3) throw PreconditionError("template needs at least 3 candidates");
  if (n < 1) throw PreconditionError("template needs at least one voter");
  if (shared.size() != m - 2) throw PreconditionError("template needs one shared cell per further candidate");
  const auto others = m - 2;
  if (among.size() != others * (others - 1) / 2) {
    throw PreconditionError("template needs one cell per pair of further candidates");
  }
  std::set<Candidate> unique(candidates.begin(), candidates.end());
  if (unique.size() != m) throw PreconditionError("template candidates must be distinct");
  for (const auto& c : candidates) {
    if (!is_valid_candidate_id(c)) throw PreconditionError("invalid candidate id '" + c + "'");
  }
  auto in_range = [&](std::int64_t v) { return v >= 0 && v <= n; };
  if (!in_range(r) || !std::all_of(shared.begin(), shared.end(), in_range) ||
      !std::all_of(among.begin(), among.end(), in_range)) {
    throw PreconditionError("template cells must lie in [0, n]");
  }
}

PairwiseMatrix PTemplate::matrix() const {
  validate();
  const auto m = candidates.size();
  PairwiseMatrix p(m);
  auto set = [&](std::size_t i, std::size_t j, std::int64_t v) {
    p(i, j) = v;
    p(j, i) = n - v;
  };
  set(0, 1, r);
  for (std::size_t k = 2; k < m; ++k) {
    set(0, k, shared[k - 2]);
    set(1, k, shared[k - 2]);
  }
  std::size_t idx = 0;
  for (std::size_t i = 2; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) set(i, j, among[idx++]);
  }
  return p;
}

Profile realize_profile(const PTemplate& t) {
  auto target = t.matrix();
  if (t.candidates.size() > kMaxSearchCandidates || t.n > kMaxSearchVoters) {
    throw PreconditionError("profile search is limited to 5 candidates and 30 voters");
  }
  if (t.r == 0 || t.r == t.n) throw InfeasibleError("P[a,b] must lie strictly between 0 and n");
  if (std::all_of(t.shared.begin(), t.shared.end(), [&](auto v) { return v == 0 || v == t.n; })) {
    throw InfeasibleError("some candidate must separate a and b, so a shared cell must lie strictly inside (0, n)");
  }
  ProfileSearch search(t, std::move(target));
  if (auto found = search.run()) return std::move(*found);
  throw InfeasibleError("no profile with " + std::to_string(t.n) + " voters realizes the template");
}

ClonedFamily build_cloned_variants(const Profile& sigma_prime, std::optional<std::int64_t> r_clone, const Candidate& a,
                                   const Candidate& b) {
  const auto n = static_cast<std::int64_t>(sigma_prime.num_voters());
  const auto ia = sigma_prime.index_of(a);
  const auto ib = sigma_prime.index_of(b);
  const auto pw = pairwise_matrix(sigma_prime);
  if (n % 2 != 0 || pw(ia, ib) * 2 != n) throw PreconditionError("cloned variants need P[a,b] = n/2");
  const auto pseudo = detect_pseudo_clones(sigma_prime);
  const bool listed = std::any_of(pseudo.begin(), pseudo.end(), [&](const auto& pc) {
    return (pc.a == a && pc.b == b) || (pc.a == b && pc.b == a);
  });
  if (!listed) throw PreconditionError("'" + a + "' and '" + b + "' are not pseudo-clones");
  const auto r = r_clone.value_or(n / 2 + 1);
  if (r * 2 <= n || r > n) throw PreconditionError("r_clone must lie in (n/2, n]");

  const auto lines = pick_lines(sigma_prime, r);
  if (!lines) throw InfeasibleError("no set of ballot lines sums to r_clone = " + std::to_string(r));
  std::vector<Placement> where;
  for (const bool below : *lines) where.push_back(below ? Placement::kBelow : Placement::kAbove);
  const auto placement = ClonePlacement::per_ballot(std::move(where));

  ClonedFamily f{sigma_prime, sigma_prime, sigma_prime, a, b, fresh_id(sigma_prime, a), fresh_id(sigma_prime, b), r, {}};
  f.sigma_a = clone_candidate(sigma_prime, a, f.a_star, placement);
  f.sigma_b = clone_candidate(sigma_prime, b, f.b_star, placement);
  for (const auto& c : f.sigma_a.candidates()) f.phi[c] = c;
  f.phi[a] = b;
  f.phi[b] = a;
  f.phi.erase(f.a_star);
  f.phi[f.a_star] = f.b_star;

  const auto pa = pairwise_matrix(f.sigma_a);
  const auto pb = pairwise_matrix(f.sigma_b);
  if (pa(f.sigma_a.index_of(a), f.sigma_a.index_of(f.a_star)) != r ||
      pb(f.sigma_b.index_of(b), f.sigma_b.index_of(f.b_star)) != r) {
    throw InternalError("clone placement missed r_clone");
  }
  return f;
}

bool isomorphic_under(const PairwiseMatrix& px, const Profile& x, const PairwiseMatrix& py, const Profile& y,
                      const Relabeling& phi) {
  if (px.size() != py.size() || x.num_candidates() != px.size() || y.num_candidates() != py.size()) return false;
  std::vector<CandidateIndex> image(px.size());
  for (CandidateIndex i = 0; i < px.size(); ++i) {
    const auto it = phi.find(x.name(i));
    if (it == phi.end()) return false;
    const auto j = y.find(it->second);
    if (!j) return false;
    image[i] = *j;
  }
  for (CandidateIndex i = 0; i < px.size(); ++i) {
    for (CandidateIndex j = 0; j < px.size(); ++j) {
      if (px(i, j) != py(image[i], image[j])) return false;
    }
  }
  return true;
}

std::vector<OrderCase> contradiction_table(const ClonedFamily& f) {
  const auto& s = f.sigma;
  const auto pw = pairwise_matrix(s);
  const auto n = static_cast<std::int64_t>(s.num_voters());
  const auto ia = s.index_of(f.a);
  const auto ib = s.index_of(f.b);
  for (CandidateIndex c = 0; c < s.num_candidates(); ++c) {
    if (c == ia || c == ib) continue;
    if (pw(c, ia) * 2 <= n || pw(c, ib) * 2 <= n) {
      throw PreconditionError("candidate '" + s.name(c) + "' must beat both pseudo-clones");
    }
  }
  if (!isomorphic_under(pairwise_matrix(f.sigma_a), f.sigma_a, pairwise_matrix(f.sigma_b), f.sigma_b, f.phi)) {
    throw PreconditionError("cloned variants are not isomorphic under phi");
  }

  const std::vector<std::vector<Candidate>> rows = {
      {f.a, f.a_star, f.b}, {f.a, f.b, f.a_star}, {f.a_star, f.a, f.b},
      {f.a_star, f.b, f.a}, {f.b, f.a, f.a_star}, {f.b, f.a_star, f.a},
  };
  std::vector<OrderCase> out;
  for (const auto& row : rows) {
    OrderCase oc;
    oc.pi_a_order = row;
    for (const auto& c : row) oc.pi_b_order.push_back(f.phi.at(c));
    oc.pi_from_a = implied_order(oc.pi_a_order, f.a, f.a_star, f.b);
    oc.pi_from_b = implied_order(oc.pi_b_order, f.b, f.b_star, f.a);
    oc.contradiction = relative_order(oc.pi_from_a, {f.a, f.b}) != relative_order(oc.pi_from_b, {f.a, f.b});
    out.push_back(std::move(oc));
  }
  return out;
}

std::vector<NamedOrder> builtin_orders() {
  auto first_uncompared = [](const OrderQuery& q, const std::vector<CandidateIndex>& preference) {
    for (const auto c : preference) {
      if (!contains(q.compared, q.profile.name(c))) return q.profile.name(c);
    }
    throw InternalError("no candidate left to compare");
  };
  std::vector<NamedOrder> out;
  out.push_back({"declaration", [=](const OrderQuery& q) {
                   std::vector<CandidateIndex> order(q.profile.num_candidates());
                   std::iota(order.begin(), order.end(), CandidateIndex{0});
                   return first_uncompared(q, order);
                 }});
  out.push_back({"reverse-declaration", [=](const OrderQuery& q) {
                   std::vector<CandidateIndex> order(q.profile.num_candidates());
                   std::iota(order.rbegin(), order.rend(), CandidateIndex{0});
                   return first_uncompared(q, order);
                 }});
  out.push_back({"copeland", [=](const OrderQuery& q) {
                   const auto m = q.profile.num_candidates();
                   std::vector<std::int64_t> score(m, 0);
                   for (CandidateIndex i = 0; i < m; ++i) {
                     for (CandidateIndex j = 0; j < m; ++j) {
                       if (q.pairwise(i, j) > q.pairwise(j, i)) ++score[i];
                       if (q.pairwise(i, j) < q.pairwise(j, i)) --score[i];
                     }
                   }
                   std::vector<CandidateIndex> order(m);
                   std::iota(order.begin(), order.end(), CandidateIndex{0});
                   std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return score[x] > score[y]; });
                   return first_uncompared(q, order);
                 }});
  out.push_back({"strongest-vs-standing", [=](const OrderQuery& q) {
                   const auto m = q.profile.num_candidates();
                   std::vector<std::int64_t> support(m, 0);
                   for (CandidateIndex i = 0; i < m; ++i) {
                     for (CandidateIndex j = 0; j < m; ++j) {
                       const auto& name = q.profile.name(j);
                       const bool standing = q.compared.empty() ||
                                             (contains(q.compared, name) && !contains(q.eliminated, name));
                       if (i != j && standing) support[i] += q.pairwise(i, j);
                     }
                   }
                   std::vector<CandidateIndex> order(m);
                   std::iota(order.begin(), order.end(), CandidateIndex{0});
                   std::stable_sort(order.begin(), order.end(),
                                    [&](auto x, auto y) { return support[x] > support[y]; });
                   return first_uncompared(q, order);
                 }});
  return out;
}

std::optional<EliminationList> KnockoutRun::list() const {
  if (survivors.size() != 1) return std::nullopt;
  return EliminationList(eliminated, survivors.front());
}

KnockoutRun run_schulze_knockout(const Profile& p, const OrderFn& order) {
  const auto m = p.num_candidates();
  if (m < 2) throw PreconditionError("knockout needs at least 2 candidates");
  const auto pw = pairwise_matrix(p);
  const auto s = schulze_strengths(pw);
  KnockoutRun run;

  auto next = [&] {
    const OrderQuery q{p, pw, run.comparison_order, run.eliminated};
    auto c = order(q);
    if (!p.find(c) || contains(run.comparison_order, c)) {
      throw PreconditionError("order function returned '" + c + "', which is unknown or already compared");
    }
    run.comparison_order.push_back(std::move(c));
  };

  next();
  while (run.comparison_order.size() < m) {
    next();
    std::size_t fresh = 0;
    for (const auto& loser : run.comparison_order) {
      if (contains(run.eliminated, loser)) continue;
      const auto l = p.index_of(loser);
      const bool beaten = std::any_of(run.comparison_order.begin(), run.comparison_order.end(), [&](const auto& w) {
        const auto x = p.index_of(w);
        return s(x, l) > s(l, x);
      });
      if (beaten) {
        run.eliminated.push_back(loser);
        ++fresh;
      }
    }
    run.per_step.push_back(fresh);
  }
  for (const auto& c : run.comparison_order) {
    if (!contains(run.eliminated, c)) run.survivors.push_back(c);
  }
  return run;
}

AuditReport audit_schulze_protocol(const NamedOrder& order, const ClonedFamily& f) {
  AuditReport report;
  report.order_name = order.name;
  report.run_sigma = run_schulze_knockout(f.sigma, order.fn);
  report.run_a = run_schulze_knockout(f.sigma_a, order.fn);
  report.run_b = run_schulze_knockout(f.sigma_b, order.fn);

  struct Member {
    const char* label;
    const Profile* profile;
    const KnockoutRun* run;
  };
  const std::vector<Member> members = {
      {"sigma'", &f.sigma, &report.run_sigma},
      {"sigma'_a", &f.sigma_a, &report.run_a},
      {"sigma'_b", &f.sigma_b, &report.run_b},
  };
  auto& checks = report.checks;

  for (const auto& mem : members) {
    std::optional<std::string> witness;
    for (std::size_t step = 0; step < mem.run->per_step.size() && !witness; ++step) {
      if (mem.run->per_step[step] != 1) {
        witness = "step " + std::to_string(step + 1) + " eliminated " + std::to_string(mem.run->per_step[step]);
      }
    }
    checks.push_back(make_report(Condition::kAccessPattern, std::string(mem.label) + " one elimination per step",
                                 witness));
  }

  const auto base = report.run_sigma.list();
  auto clone_check = [&](const KnockoutRun& run, const char* label, const CloneSpec& spec) {
    const auto cloned = run.list();
    const std::string instance = std::string(label) + " vs sigma' K=" + join(spec.members) + " d=" + spec.representative;
    if (!cloned || !base) {
      checks.push_back(make_report(Condition::kClonesConsistency, instance, "no unique survivor"));
      return;
    }
    auto r = check_condition1(*cloned, *base, spec);
    r.instance = instance;
    checks.push_back(std::move(r));
  };
  clone_check(report.run_a, "sigma'_a", {{f.a, f.a_star}, f.a});
  clone_check(report.run_b, "sigma'_b", {{f.b, f.b_star}, f.b});

  for (const auto& mem : members) {
    checks.push_back(make_report(Condition::kNeutrality, std::string(mem.label) + " all relabelings",
                                 neutrality_witness(*mem.profile, order.fn, *mem.run)));
  }

  for (const auto& mem : members) {
    const auto winners = schulze_winners(schulze_strengths(pairwise_matrix(*mem.profile)));
    std::optional<std::string> witness;
    if (winners.size() != 1) {
      witness = "no unique Schulze winner";
    } else if (mem.run->survivors != std::vector<Candidate>{mem.profile->name(winners.front())}) {
      witness = "survivors " + join(mem.run->survivors) + " but Schulze winner " + mem.profile->name(winners.front());
    }
    checks.push_back(make_report(Condition::kWinner, std::string(mem.label) + " survivor vs Schulze", witness));
  }

  report.all_pass = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  return report;
}

}  // namespace rankvote
