#include "rankvote/ballots.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "rankvote/errors.hpp"

namespace rankvote {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void check_ranking(const std::vector<CandidateIndex>& ranking, std::size_t m, std::size_t ballot) {
  if (ranking.size() != m) {
    throw ProfileError("ballot " + std::to_string(ballot) + " ranks " + std::to_string(ranking.size()) +
                       " candidates, expected " + std::to_string(m));
  }
  std::vector<bool> seen(m, false);
  for (auto c : ranking) {
    if (c >= m) throw ProfileError("ballot " + std::to_string(ballot) + " references an unknown candidate");
    if (seen[c]) throw ProfileError("ballot " + std::to_string(ballot) + " ranks a candidate twice");
    seen[c] = true;
  }
}

}  // namespace

bool is_valid_candidate_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Profile::Profile(std::vector<Candidate> candidates, std::vector<Ballot> ballots)
    : candidates_(std::move(candidates)), ballots_(std::move(ballots)) {
  if (candidates_.empty()) throw ProfileError("profile needs at least one candidate");
  std::set<std::string_view> ids;
  for (const auto& c : candidates_) {
    if (!is_valid_candidate_id(c)) throw ProfileError("invalid candidate id '" + c + "'");
    if (!ids.insert(c).second) throw ProfileError("duplicate candidate id '" + c + "'");
  }
  if (ballots_.empty()) throw ProfileError("profile needs at least one ballot");
  for (std::size_t b = 0; b < ballots_.size(); ++b) {
    if (ballots_[b].count == 0) throw ProfileError("ballot " + std::to_string(b) + " has zero count");
    check_ranking(ballots_[b].ranking, candidates_.size(), b);
    num_voters_ += ballots_[b].count;
  }
}

Profile Profile::from_named(std::vector<Candidate> candidates, const std::vector<NamedBallot>& ballots) {
  std::map<std::string_view, CandidateIndex> lookup;
  for (std::size_t i = 0; i < candidates.size(); ++i) lookup.emplace(candidates[i], i);
  std::vector<Ballot> out;
  out.reserve(ballots.size());
  for (const auto& nb : ballots) {
    Ballot b;
    b.count = nb.count;
    for (const auto& id : nb.ranking) {
      auto it = lookup.find(id);
      if (it == lookup.end()) throw ProfileError("unknown candidate '" + id + "'");
      b.ranking.push_back(it->second);
    }
    out.push_back(std::move(b));
  }
  return Profile(std::move(candidates), std::move(out));
}

std::optional<CandidateIndex> Profile::find(std::string_view id) const {
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (candidates_[i] == id) return i;
  }
  return std::nullopt;
}

CandidateIndex Profile::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw ProfileError("unknown candidate '" + std::string(id) + "'");
}

std::vector<Candidate> Profile::names(std::span<const CandidateIndex> indices) const {
  std::vector<Candidate> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(name(i));
  return out;
}

std::vector<CandidateIndex> Profile::indices(std::span<const Candidate> ids) const {
  std::vector<CandidateIndex> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(index_of(id));
  return out;
}

Profile parse_profile(std::string_view text) {
  std::vector<Candidate> declared;
  bool have_header = false;
  bool seen_ballot = false;
  std::vector<NamedBallot> ballots;
  std::vector<std::size_t> ballot_lines;

  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'COUNT: ranking' or 'candidates: ...'");
    const auto head = trim(line.substr(0, colon));
    const auto body = trim(line.substr(colon + 1));

    if (head == "candidates") {
      if (have_header) throw ParseError(line_no, "duplicate candidates header");
      if (seen_ballot) throw ParseError(line_no, "candidates header must precede ballot lines");
      have_header = true;
      for (auto tok : split(body, ',')) {
        const auto id = trim(tok);
        if (!is_valid_candidate_id(id)) throw ParseError(line_no, "invalid candidate id '" + std::string(id) + "'");
        if (std::find(declared.begin(), declared.end(), id) != declared.end()) {
          throw ParseError(line_no, "duplicate candidate '" + std::string(id) + "' in header");
        }
        declared.emplace_back(id);
      }
      continue;
    }

    std::int64_t count = 0;
    const auto* first = head.data();
    const auto* last = head.data() + head.size();
    if (!head.empty() && head.front() == '-') throw ParseError(line_no, "ballot count must be positive");
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last) throw ParseError(line_no, "invalid ballot count '" + std::string(head) + "'");
    if (count <= 0) throw ParseError(line_no, "ballot count must be positive");

    NamedBallot nb;
    nb.count = static_cast<std::uint64_t>(count);
    for (auto tok : split(body, '>')) {
      const auto id = trim(tok);
      if (!is_valid_candidate_id(id)) throw ParseError(line_no, "invalid candidate id '" + std::string(id) + "'");
      if (std::find(nb.ranking.begin(), nb.ranking.end(), id) != nb.ranking.end()) {
        throw ParseError(line_no, "duplicate candidate '" + std::string(id) + "' in ranking");
      }
      const bool known = std::find(declared.begin(), declared.end(), id) != declared.end();
      if (!known) {
        if (have_header) throw ParseError(line_no, "unknown candidate '" + std::string(id) + "'");
        declared.emplace_back(id);
      }
      nb.ranking.emplace_back(id);
    }
    seen_ballot = true;
    ballots.push_back(std::move(nb));
    ballot_lines.push_back(line_no);
  }

  if (ballots.empty()) throw ParseError(0, "no ballot lines");
  for (std::size_t b = 0; b < ballots.size(); ++b) {
    if (ballots[b].ranking.size() != declared.size()) {
      for (const auto& c : declared) {
        if (std::find(ballots[b].ranking.begin(), ballots[b].ranking.end(), c) == ballots[b].ranking.end()) {
          throw ParseError(ballot_lines[b], "missing candidate '" + c + "' in ranking");
        }
      }
    }
  }
  return Profile::from_named(std::move(declared), ballots);
}

std::string serialize_profile(const Profile& p) {
  std::ostringstream out;
  out << "candidates: ";
  for (std::size_t i = 0; i < p.num_candidates(); ++i) out << (i ? ", " : "") << p.name(i);
  out << '\n';
  for (const auto& b : p.ballots()) {
    out << b.count << ": ";
    for (std::size_t r = 0; r < b.ranking.size(); ++r) out << (r ? " > " : "") << p.name(b.ranking[r]);
    out << '\n';
  }
  return out.str();
}

Profile remove_candidates(const Profile& p, std::span<const Candidate> drop) {
  std::vector<bool> dropped(p.num_candidates(), false);
  for (const auto& id : drop) dropped[p.index_of(id)] = true;
  const auto kept = static_cast<std::size_t>(std::count(dropped.begin(), dropped.end(), false));
  if (kept == 0) throw ProfileError("cannot remove every candidate");

  std::vector<CandidateIndex> remap(p.num_candidates(), 0);
  std::vector<Candidate> survivors;
  for (std::size_t c = 0; c < p.num_candidates(); ++c) {
    if (dropped[c]) continue;
    remap[c] = survivors.size();
    survivors.push_back(p.name(c));
  }

  std::vector<Ballot> ballots;
  ballots.reserve(p.num_ballots());
  for (const auto& b : p.ballots()) {
    Ballot nb;
    nb.count = b.count;
    for (auto c : b.ranking) {
      if (!dropped[c]) nb.ranking.push_back(remap[c]);
    }
    ballots.push_back(std::move(nb));
  }
  return Profile(std::move(survivors), std::move(ballots));
}

Profile clone_candidate(const Profile& p, const Candidate& target, const Candidate& new_id,
                        const ClonePlacement& placement) {
  const auto t = p.index_of(target);
  if (p.find(new_id)) throw ProfileError("candidate id '" + new_id + "' already exists");
  if (!is_valid_candidate_id(new_id)) throw ProfileError("invalid candidate id '" + new_id + "'");
  if (!placement.is_global() && placement.size() != p.num_ballots()) {
    throw ProfileError("placement vector has " + std::to_string(placement.size()) + " entries for " +
                       std::to_string(p.num_ballots()) + " ballots");
  }

  const CandidateIndex clone = p.num_candidates();
  auto candidates = p.candidates();
  candidates.push_back(new_id);

  std::vector<Ballot> ballots;
  ballots.reserve(p.num_ballots());
  for (std::size_t b = 0; b < p.num_ballots(); ++b) {
    const auto& src = p.ballots()[b];
    Ballot nb;
    nb.count = src.count;
    nb.ranking.reserve(src.ranking.size() + 1);
    for (auto c : src.ranking) {
      if (c == t && placement.at(b) == Placement::kAbove) nb.ranking.push_back(clone);
      nb.ranking.push_back(c);
      if (c == t && placement.at(b) == Placement::kBelow) nb.ranking.push_back(clone);
    }
    ballots.push_back(std::move(nb));
  }
  return Profile(std::move(candidates), std::move(ballots));
}

Relabeling inverse(const Relabeling& tau) {
  Relabeling inv;
  for (const auto& [from, to] : tau) {
    if (!inv.emplace(to, from).second) throw ProfileError("relabeling is not injective at '" + to + "'");
  }
  return inv;
}

Relabeling identity_relabeling(const Profile& p) {
  Relabeling id;
  for (const auto& c : p.candidates()) id.emplace(c, c);
  return id;
}

Profile permute_candidates(const Profile& p, const Relabeling& tau) {
  if (tau.size() != p.num_candidates()) throw ProfileError("relabeling does not cover exactly the candidate set");
  std::vector<CandidateIndex> image(p.num_candidates());
  std::vector<bool> hit(p.num_candidates(), false);
  for (std::size_t c = 0; c < p.num_candidates(); ++c) {
    auto it = tau.find(p.name(c));
    if (it == tau.end()) throw ProfileError("relabeling misses candidate '" + p.name(c) + "'");
    const auto target = p.find(it->second);
    if (!target) throw ProfileError("relabeling maps outside the candidate set: '" + it->second + "'");
    if (hit[*target]) throw ProfileError("relabeling is not a bijection");
    hit[*target] = true;
    image[c] = *target;
  }

  std::vector<Ballot> ballots;
  ballots.reserve(p.num_ballots());
  for (const auto& b : p.ballots()) {
    Ballot nb;
    nb.count = b.count;
    for (auto c : b.ranking) nb.ranking.push_back(image[c]);
    ballots.push_back(std::move(nb));
  }
  return Profile(p.candidates(), std::move(ballots));
}

CandidateIndex TrackedProfile::read(std::size_t ballot, std::size_t rank, std::size_t round) {
  const auto& b = base_->ballots().at(ballot);
  const auto c = b.ranking.at(rank);
  log_.push_back(CellRead{ballot, rank, round});
  return c;
}

}  // namespace rankvote
