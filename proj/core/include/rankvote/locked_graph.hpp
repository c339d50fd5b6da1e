#pragma once

#include <cstddef>
#include <vector>

#include "rankvote/ballots.hpp"

namespace rankvote {

/// Directed graph over candidate indices that grows one edge at a time.
/// Candidate sets are tiny, so reachability is a plain DFS over an
/// adjacency matrix.
class LockedGraph {
 public:
  explicit LockedGraph(std::size_t n) : n_(n), adj_(n * n, 0), in_degree_(n, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool has_edge(CandidateIndex from, CandidateIndex to) const { return adj_[from * n_ + to] != 0; }
  std::size_t in_degree(CandidateIndex v) const { return in_degree_[v]; }

  /// True if a directed path leads from `from` to `to` (trivially when equal).
  bool reaches(CandidateIndex from, CandidateIndex to) const;

  /// Adding from->to would close a directed cycle.
  bool closes_cycle(CandidateIndex from, CandidateIndex to) const { return reaches(to, from); }

  void add(CandidateIndex from, CandidateIndex to);

  std::vector<CandidateIndex> sources() const;
  bool is_acyclic() const;

 private:
  std::size_t n_;
  std::vector<char> adj_;
  std::vector<std::size_t> in_degree_;
};

}  // namespace rankvote
