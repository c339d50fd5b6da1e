#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rankvote {

using Candidate = std::string;
using CandidateIndex = std::size_t;

/// One ballot line: a strict ranking over every candidate of the profile
/// (top = most preferred) together with how many voters cast it.
struct Ballot {
  std::vector<CandidateIndex> ranking;
  std::uint64_t count = 1;

  bool operator==(const Ballot&) const = default;
};

/// Ballot expressed with candidate ids instead of indices.
struct NamedBallot {
  std::uint64_t count = 1;
  std::vector<Candidate> ranking;
};

/// A preference profile. Immutable once constructed; candidate order is the
/// declaration order and every matrix in the library is indexed by it.
/// Ballot lines are kept exactly as given (never merged or reordered) so that
/// ballot indices stay stable for transcripts.
class Profile {
 public:
  Profile(std::vector<Candidate> candidates, std::vector<Ballot> ballots);

  static Profile from_named(std::vector<Candidate> candidates, const std::vector<NamedBallot>& ballots);

  const std::vector<Candidate>& candidates() const noexcept { return candidates_; }
  std::size_t num_candidates() const noexcept { return candidates_.size(); }
  const std::vector<Ballot>& ballots() const noexcept { return ballots_; }
  std::size_t num_ballots() const noexcept { return ballots_.size(); }
  std::uint64_t num_voters() const noexcept { return num_voters_; }

  const Candidate& name(CandidateIndex c) const { return candidates_.at(c); }
  std::optional<CandidateIndex> find(std::string_view id) const;
  /// Throws ProfileError for an unknown id.
  CandidateIndex index_of(std::string_view id) const;

  std::vector<Candidate> names(std::span<const CandidateIndex> indices) const;
  std::vector<CandidateIndex> indices(std::span<const Candidate> ids) const;

  bool operator==(const Profile&) const = default;

 private:
  std::vector<Candidate> candidates_;
  std::vector<Ballot> ballots_;
  std::uint64_t num_voters_ = 0;
};

/// True iff `id` is a non-empty token over [A-Za-z0-9_].
bool is_valid_candidate_id(std::string_view id);

/// Ballot file grammar:
///   `#` comment to end of line; blank lines ignored
///   optional header  `candidates: id1, id2, ...`  (before any ballot line)
///   ballot line      `COUNT: id1 > id2 > ... > idm`
/// Without a header, candidates are declared in order of first appearance.
Profile parse_profile(std::string_view text);

/// Header line followed by one line per ballot, in order.
std::string serialize_profile(const Profile& p);

/// Deletes `drop` from every ballot, survivors keep their relative order and
/// the remaining candidates keep their declaration order.
Profile remove_candidates(const Profile& p, std::span<const Candidate> drop);

enum class Placement { kBelow, kAbove };

/// Where a clone is inserted relative to its target, per ballot line.
class ClonePlacement {
 public:
  static ClonePlacement always(Placement where) { return ClonePlacement(where); }
  static ClonePlacement per_ballot(std::vector<Placement> where) { return ClonePlacement(std::move(where)); }

  bool is_global() const noexcept { return global_.has_value(); }
  std::size_t size() const noexcept { return per_ballot_.size(); }
  Placement at(std::size_t ballot) const { return global_ ? *global_ : per_ballot_.at(ballot); }

 private:
  explicit ClonePlacement(Placement where) : global_(where) {}
  explicit ClonePlacement(std::vector<Placement> where) : per_ballot_(std::move(where)) {}

  std::optional<Placement> global_;
  std::vector<Placement> per_ballot_;
};

/// Inserts `new_id` directly above or below `target` in every ballot. The new
/// candidate is appended to the declaration order. {target, new_id} is a set
/// of clones of the result.
Profile clone_candidate(const Profile& p, const Candidate& target, const Candidate& new_id,
                        const ClonePlacement& placement = ClonePlacement::always(Placement::kBelow));

/// Candidate relabeling; must be a bijection on the profile's candidate set.
using Relabeling = std::map<Candidate, Candidate>;

Relabeling inverse(const Relabeling& tau);
Relabeling identity_relabeling(const Profile& p);

/// Replaces every occurrence of c by tau(c) inside the ballots. The
/// declaration order (and therefore matrix indexing) is left untouched, so a
/// rule that depends on candidate position rather than on the votes is
/// exposed by a relabeled run.
Profile permute_candidates(const Profile& p, const Relabeling& tau);

/// One profile-cell read: ballot line index, 0-based rank position and the
/// protocol round during which it happened.
struct CellRead {
  std::size_t ballot = 0;
  std::size_t rank = 0;
  std::size_t round = 0;

  bool operator==(const CellRead&) const = default;
};

/// Read-through view of a profile that records every ranking cell it hands
/// out. Single writer: one protocol run owns one view. The profile must
/// outlive the view.
class TrackedProfile {
 public:
  explicit TrackedProfile(const Profile& base) : base_(&base) {}

  CandidateIndex read(std::size_t ballot, std::size_t rank, std::size_t round);

  const Profile& base() const noexcept { return *base_; }
  std::size_t num_ballots() const noexcept { return base_->num_ballots(); }
  std::size_t num_candidates() const noexcept { return base_->num_candidates(); }
  /// Multiplicity is ballot metadata, not a ranking cell; not logged.
  std::uint64_t count(std::size_t ballot) const { return base_->ballots().at(ballot).count; }

  const std::vector<CellRead>& access_log() const noexcept { return log_; }

 private:
  const Profile* base_;
  std::vector<CellRead> log_;
};

inline TrackedProfile tracked_view(const Profile& p) { return TrackedProfile(p); }

}  // namespace rankvote
