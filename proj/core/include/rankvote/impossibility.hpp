#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rankvote/ballots.hpp"
#include "rankvote/clocked.hpp"
#include "rankvote/rules.hpp"

namespace rankvote {

/// Target pairwise matrix for a profile in which candidates[0] and
/// candidates[1] (a and b) are pseudo-clones:
///   P[a,b] = r, P[b,a] = n - r
///   P[a,c_k] = P[b,c_k] = shared[k] for every further candidate c_k
///   P[c_i,c_j] = among[...] for i < j, upper triangle in row-major order
/// Every remaining cell is n minus its mirror.
struct PTemplate {
  std::int64_t n = 0;
  std::vector<Candidate> candidates{"a", "b", "c", "d"};
  std::int64_t r = 0;
  std::vector<std::int64_t> shared;
  std::vector<std::int64_t> among;

  /// The 7-voter example: r = 3, shared = {4, 7}, P[c,d] = 5.
  static PTemplate seven_voter_example();
  /// Even n >= 4 with r = n/2 and every further candidate beating a and b:
  /// P[a,c] = n/2 - 1, P[a,d] = 1, P[c,d] = n/2 + 1.
  static PTemplate tied_family(std::int64_t n);

  /// Throws PreconditionError on malformed shapes or cells outside [0, n].
  void validate() const;
  PairwiseMatrix matrix() const;
};

/// Exhaustive search over counts per ranking (m! rankings) for a profile with
/// exactly the template's pairwise matrix in which no clone set contains both
/// a and b. Requires m <= 5 and n <= 30. InfeasibleError when none exists,
/// including r in {0, n} or every shared cell in {0, n}.
Profile realize_profile(const PTemplate& t);

struct ClonedFamily {
  Profile sigma;    ///< sigma' : a and b pseudo-clones with P[a,b] = n/2
  Profile sigma_a;  ///< a cloned into a_star with P[a,a_star] = r_clone
  Profile sigma_b;  ///< b cloned into b_star with P[b,b_star] = r_clone
  Candidate a;
  Candidate b;
  Candidate a_star;
  Candidate b_star;
  std::int64_t r_clone = 0;
  /// Maps sigma_a's candidates onto sigma_b's: a->b, a_star->b_star, b->a.
  Relabeling phi;
};

/// Clones a and b of sigma' with a placement vector chosen by subset sum over
/// ballot counts. r_clone defaults to n/2 + 1. Throws PreconditionError when
/// (a, b) are not pseudo-clones with P[a,b] = n/2 or r_clone is outside
/// (n/2, n], InfeasibleError when no subset of ballot lines sums to r_clone.
ClonedFamily build_cloned_variants(const Profile& sigma_prime, std::optional<std::int64_t> r_clone = std::nullopt,
                                   const Candidate& a = "a", const Candidate& b = "b");

/// P_x[i][j] == P_y[phi(i)][phi(j)] for every pair.
bool isomorphic_under(const PairwiseMatrix& px, const Profile& x, const PairwiseMatrix& py, const Profile& y,
                      const Relabeling& phi);

/// One row of the table: an order of {a, a_star, b} in pi'_a, its image in
/// pi'_b, and the order of {a, b} in pi' forced by each variant.
struct OrderCase {
  std::vector<Candidate> pi_a_order;
  std::vector<Candidate> pi_b_order;
  std::vector<Candidate> pi_from_a;
  std::vector<Candidate> pi_from_b;
  bool contradiction = false;
};

/// All 3! orders. Requires every other candidate to beat a and b in sigma'.
std::vector<OrderCase> contradiction_table(const ClonedFamily& family);

/// What an order function sees before choosing the next candidate to compare.
struct OrderQuery {
  const Profile& profile;
  const PairwiseMatrix& pairwise;
  const std::vector<Candidate>& compared;
  const std::vector<Candidate>& eliminated;
};

/// Returns the next candidate to bring into the comparisons. Must return a
/// candidate not yet compared.
using OrderFn = std::function<Candidate(const OrderQuery&)>;

struct NamedOrder {
  std::string name;
  OrderFn fn;
};

/// Declaration order, reverse declaration order, descending Copeland score,
/// and a dynamic order preferring the candidate strongest against the
/// candidates still standing.
std::vector<NamedOrder> builtin_orders();

/// Schulze knockout: the first two candidates from the order are compared,
/// then each newcomer is compared by strength with every candidate compared
/// before it; candidates beaten in a step join F in comparison order.
struct KnockoutRun {
  std::vector<Candidate> comparison_order;
  std::vector<Candidate> eliminated;
  /// Number of candidates eliminated at each step.
  std::vector<std::size_t> per_step;
  std::vector<Candidate> survivors;

  std::optional<EliminationList> list() const;
};

KnockoutRun run_schulze_knockout(const Profile& p, const OrderFn& order);

struct AuditReport {
  std::string order_name;
  KnockoutRun run_sigma;
  KnockoutRun run_a;
  KnockoutRun run_b;
  std::vector<ConditionReport> checks;
  bool all_pass = false;
};

/// Condition 1 for sigma_a and sigma_b against sigma', neutrality over every
/// relabeling of each member, the winner condition against the Schulze
/// winner, and a one-elimination-per-step check.
AuditReport audit_schulze_protocol(const NamedOrder& order, const ClonedFamily& family);

}  // namespace rankvote
