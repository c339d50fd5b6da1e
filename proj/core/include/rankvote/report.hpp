#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankvote/ballots.hpp"
#include "rankvote/clocked.hpp"
#include "rankvote/clones.hpp"
#include "rankvote/impossibility.hpp"
#include "rankvote/rules.hpp"

namespace rankvote {

/// Structured report tree. Keys keep insertion order so output is stable.
using Tree = nlohmann::ordered_json;

Tree to_tree(const Profile& p);
Tree to_tree(const Profile& p, const TallyResult& result);
Tree to_tree(const IocVerdict& verdict);
Tree to_tree(const ClockedRun& run, Protocol protocol, bool with_transcript);
Tree to_tree(const ConditionReport& report);
Tree to_tree(const std::vector<CloneSet>& sets);
Tree to_tree(const std::vector<PseudoClonePair>& pairs);
Tree to_tree(const OrderCase& row);
Tree to_tree(const AuditReport& audit);

/// Rows of cells under a header of candidate ids.
template <class Tag>
Tree matrix_tree(const CandidateMatrix<Tag>& m) {
  Tree rows = Tree::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Tree row = Tree::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Fixed-width table with candidate ids as row and column labels.
std::string render_matrix(const std::vector<Candidate>& names, const std::vector<std::vector<std::string>>& cells,
                          const std::string& corner);

template <class Tag>
std::string render_matrix(const Profile& p, const CandidateMatrix<Tag>& m, const std::string& corner) {
  std::vector<std::vector<std::string>> cells(m.size(), std::vector<std::string>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) cells[i][j] = std::to_string(m(i, j));
  }
  return render_matrix(p.candidates(), cells, corner);
}

/// Strengths as (S[i][j], n - S[i][j]) pairs, diagonal 0.
std::string render_strength_pairs(const Profile& p, const StrengthMatrix& s);

std::string render_text(const Profile& p, const TallyResult& result);
std::string render_text(const IocVerdict& verdict);
std::string render_text(const ClockedRun& run, Protocol protocol, bool with_transcript);
std::string render_text(const ConditionReport& report);
/// Columns: pi'_a, pi'_b, pi' from a, pi' from b, contradiction.
std::string render_table(const std::vector<OrderCase>& rows);
std::string render_text(const AuditReport& audit);

std::string join_names(const std::vector<Candidate>& names, const std::string& sep = ", ");

}  // namespace rankvote
