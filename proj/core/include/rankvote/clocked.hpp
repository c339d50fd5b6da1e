#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rankvote/ballots.hpp"
#include "rankvote/clones.hpp"
#include "rankvote/rules.hpp"
#include "rankvote/ties.hpp"

namespace rankvote {

/// Ordered list F of eliminated candidates. F_i is the first i entries.
class EliminationList {
 public:
  EliminationList() = default;
  /// Throws PreconditionError on repeated candidates or when the survivor is
  /// also listed as eliminated.
  EliminationList(std::vector<Candidate> order, Candidate survivor);

  const std::vector<Candidate>& order() const noexcept { return order_; }
  const Candidate& survivor() const noexcept { return survivor_; }
  std::size_t size() const noexcept { return order_.size(); }
  /// F_i for i in [0, size()].
  std::vector<Candidate> prefix(std::size_t i) const;

  bool operator==(const EliminationList&) const = default;

 private:
  std::vector<Candidate> order_;
  Candidate survivor_;
};

struct ReadEvent {
  std::size_t ballot = 0;
  std::size_t rank = 0;
  std::size_t round = 0;
  bool operator==(const ReadEvent&) const = default;
};

/// A majority-matrix entry taken out of play (set to NULL).
struct ConsumeEvent {
  Candidate winner;
  Candidate loser;
  std::int64_t value = 0;
  std::size_t round = 0;
  bool operator==(const ConsumeEvent&) const = default;
};

struct EdgeEvent {
  Candidate from;
  Candidate to;
  bool kept = false;
  std::size_t round = 0;
  bool operator==(const EdgeEvent&) const = default;
};

struct ElimEvent {
  Candidate candidate;
  std::size_t round = 0;
  bool operator==(const ElimEvent&) const = default;
};

using TranscriptEvent = std::variant<ReadEvent, ConsumeEvent, EdgeEvent, ElimEvent>;

std::size_t event_round(const TranscriptEvent& event);
/// `READ ballot=3 rank=1 round=2`, `CONSUME pair=a,c value=23 round=1`,
/// `EDGE a->c kept round=1`, `ELIM c round=1`.
std::string format_event(const TranscriptEvent& event);

struct Transcript {
  std::vector<TranscriptEvent> events;

  /// One formatted event per line.
  std::string to_lines() const;
  bool operator==(const Transcript&) const = default;
};

enum class Protocol { kStv, kRankedPairs };

std::string_view to_string(Protocol protocol);
/// Accepts stv and rp.
std::optional<Protocol> parse_protocol(std::string_view text);
/// The rule a protocol clocks.
Rule reference_rule(Protocol protocol);

struct ClockedRun {
  EliminationList list;
  Transcript transcript;
  /// Every profile cell handed out by the tracked view.
  std::vector<CellRead> access_log;
  TiePolicy tie_policy = TiePolicy::kError;
  bool tie_broken = false;
};

/// Column-frontier STV. Rounds are 1-based; cells are read only when a
/// column's frontier moves onto them.
ClockedRun ce_stv(const Profile& p, TiePolicy policy = TiePolicy::kError);

/// Clocked Ranked Pairs. Round 0 reads every cell to build the majority
/// matrix; round i ends when an inserted edge points at a candidate not yet
/// eliminated. Without a tie policy, equal entries are accepted only if their
/// kept edges and the order of the eliminations they cause do not depend on
/// how the tie is broken.
ClockedRun ce_rp(const Profile& p, TiePolicy policy = TiePolicy::kError);

ClockedRun run_protocol(Protocol protocol, const Profile& p, TiePolicy policy = TiePolicy::kError);

enum class Condition { kClonesConsistency, kNeutrality, kWinner, kAccessPattern };

/// "C1", "C3", "C4", "C2-surrogate".
std::string_view to_string(Condition condition);

struct ConditionReport {
  Condition condition = Condition::kClonesConsistency;
  std::string instance;
  bool pass = false;
  /// Present iff pass is false.
  std::optional<std::string> witness;
};

/// Clauses (a)/(b) for every i in 1..|F|. F' prefixes are matched by
/// existence for each i independently. Only requires d in K.
ConditionReport check_condition1(const EliminationList& f, const EliminationList& f_reduced, const CloneSpec& spec);

/// Same, after checking that K is a clone set of p.
ConditionReport check_condition1(const Profile& p, const EliminationList& f, const EliminationList& f_reduced,
                                 const CloneSpec& spec);

/// Runs the protocol on p and on p without K \ {d}, then checks.
ConditionReport check_condition1(Protocol protocol, const Profile& p, const CloneSpec& spec,
                                 TiePolicy policy = TiePolicy::kError);

/// F(permuted profile) must equal tau applied to F(p), survivor included.
ConditionReport check_neutrality(Protocol protocol, const Profile& p, const Relabeling& tau,
                                 TiePolicy policy = TiePolicy::kError);

/// The protocol survivor must equal the winner of `rule`.
ConditionReport check_condition4(Protocol protocol, Rule rule, const Profile& p,
                                 TiePolicy policy = TiePolicy::kError);

/// Replays a transcript. STV: every READ is at or above the topmost
/// non-eliminated entry of its column at that moment. RP: consumed values
/// never increase.
ConditionReport check_access_pattern(Protocol protocol, const Profile& p, const Transcript& transcript);

ConditionReport check_access_pattern(Protocol protocol, const Profile& p, TiePolicy policy = TiePolicy::kError);

}  // namespace rankvote
