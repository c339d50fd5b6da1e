#include "rankvote/locked_graph.hpp"

namespace rankvote {

bool LockedGraph::reaches(CandidateIndex from, CandidateIndex to) const {
  if (from == to) return true;
  std::vector<char> seen(n_, 0);
  std::vector<CandidateIndex> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (CandidateIndex v = 0; v < n_; ++v) {
      if (!adj_[u * n_ + v] || seen[v]) continue;
      if (v == to) return true;
      seen[v] = 1;
      stack.push_back(v);
    }
  }
  return false;
}

void LockedGraph::add(CandidateIndex from, CandidateIndex to) {
  auto& cell = adj_[from * n_ + to];
  if (cell) return;
  cell = 1;
  ++in_degree_[to];
}

std::vector<CandidateIndex> LockedGraph::sources() const {
  std::vector<CandidateIndex> out;
  for (CandidateIndex v = 0; v < n_; ++v) {
    if (in_degree_[v] == 0) out.push_back(v);
  }
  return out;
}

bool LockedGraph::is_acyclic() const {
  // Kahn's algorithm.
  auto indeg = in_degree_;
  std::vector<CandidateIndex> ready;
  for (CandidateIndex v = 0; v < n_; ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const auto u = ready.back();
    ready.pop_back();
    ++removed;
    for (CandidateIndex v = 0; v < n_; ++v) {
      if (adj_[u * n_ + v] && --indeg[v] == 0) ready.push_back(v);
    }
  }
  return removed == n_;
}

}  // namespace rankvote
