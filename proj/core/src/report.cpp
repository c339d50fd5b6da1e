#include "rankvote/report.hpp"

#include <algorithm>
#include <sstream>

namespace rankvote {

namespace {

std::string order_pattern(const std::vector<Candidate>& order) {
  std::string out = "{ (...)";
  for (const auto& c : order) out += c + "(...)";
  return out + " }";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string join_names(const std::vector<Candidate>& names, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

Tree to_tree(const Profile& p) {
  Tree t;
  t["candidates"] = p.candidates();
  Tree ballots = Tree::array();
  for (const auto& b : p.ballots()) {
    Tree line;
    line["count"] = b.count;
    line["ranking"] = p.names(b.ranking);
    ballots.push_back(std::move(line));
  }
  t["ballots"] = std::move(ballots);
  t["num_voters"] = p.num_voters();
  return t;
}

Tree to_tree(const Profile& p, const TallyResult& result) {
  Tree t;
  t["rule"] = std::string(to_string(result.rule));
  t["winner"] = result.winner_name;
  t["candidates"] = p.candidates();
  std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ScoreDetail>) {
          Tree scores;
          for (std::size_t c = 0; c < d.scores.size(); ++c) scores[p.name(c)] = d.scores[c];
          t["scores"] = std::move(scores);
        } else if constexpr (std::is_same_v<D, StvDetail>) {
          t["elimination_order"] = p.names(d.elimination_order);
          Tree rounds = Tree::array();
          for (std::size_t r = 0; r < d.round_tallies.size(); ++r) {
            Tree round;
            round["round"] = r + 1;
            Tree tallies;
            for (std::size_t c = 0; c < d.round_tallies[r].size(); ++c) {
              if (std::find(d.elimination_order.begin(), d.elimination_order.begin() + static_cast<std::ptrdiff_t>(r),
                            c) == d.elimination_order.begin() + static_cast<std::ptrdiff_t>(r)) {
                tallies[p.name(c)] = d.round_tallies[r][c];
              }
            }
            round["tallies"] = std::move(tallies);
            round["eliminated"] = p.name(d.elimination_order[r]);
            rounds.push_back(std::move(round));
          }
          t["rounds"] = std::move(rounds);
        } else if constexpr (std::is_same_v<D, RankedPairsDetail>) {
          Tree log = Tree::array();
          for (const auto& e : d.edge_log) {
            Tree entry;
            entry["from"] = p.name(e.from);
            entry["to"] = p.name(e.to);
            entry["margin"] = e.margin;
            entry["kept"] = e.kept;
            log.push_back(std::move(entry));
          }
          t["edge_log"] = std::move(log);
          t["matrices"]["majority"] = matrix_tree(d.majority);
        } else {
          const auto n = static_cast<std::int64_t>(p.num_voters());
          t["matrices"]["pairwise"] = matrix_tree(d.pairwise);
          t["matrices"]["strength"] = matrix_tree(d.strength);
          Tree pairs = Tree::array();
          for (std::size_t i = 0; i < d.strength.size(); ++i) {
            Tree row = Tree::array();
            for (std::size_t j = 0; j < d.strength.size(); ++j) {
              row.push_back(i == j ? Tree::array({0, 0}) : Tree::array({d.strength(i, j), n - d.strength(i, j)}));
            }
            pairs.push_back(std::move(row));
          }
          t["matrices"]["strength_pairs"] = std::move(pairs);
          t["ranking"] = p.names(d.ranking);
        }
      },
      result.detail);
  t["tie_policy"] = std::string(to_string(result.tie_policy));
  t["non_canonical"] = result.tie_broken;
  return t;
}

Tree to_tree(const IocVerdict& v) {
  Tree t;
  t["rule"] = std::string(to_string(v.rule));
  t["clone_set"] = v.clone_set;
  t["representative"] = v.representative;
  t["winner_with"] = v.winner_with;
  t["winner_without"] = v.winner_without;
  t["ioc_holds"] = v.ioc_holds;
  t["non_canonical"] = v.tie_broken;
  return t;
}

Tree to_tree(const ClockedRun& run, Protocol protocol, bool with_transcript) {
  Tree t;
  t["protocol"] = std::string(to_string(protocol));
  t["elimination_order"] = run.list.order();
  Tree prefixes = Tree::array();
  for (std::size_t i = 1; i <= run.list.size(); ++i) prefixes.push_back(run.list.prefix(i));
  t["prefixes"] = std::move(prefixes);
  t["survivor"] = run.list.survivor();
  t["tie_policy"] = std::string(to_string(run.tie_policy));
  t["non_canonical"] = run.tie_broken;
  t["cells_read"] = run.access_log.size();
  if (with_transcript) {
    Tree events = Tree::array();
    for (const auto& e : run.transcript.events) events.push_back(format_event(e));
    t["transcript"] = std::move(events);
  }
  return t;
}

Tree to_tree(const ConditionReport& r) {
  Tree t;
  t["condition"] = std::string(to_string(r.condition));
  t["instance"] = r.instance;
  t["pass"] = r.pass;
  if (r.witness) t["witness"] = *r.witness;
  return t;
}

Tree to_tree(const std::vector<CloneSet>& sets) {
  Tree t = Tree::array();
  for (const auto& s : sets) t.push_back(s);
  return t;
}

Tree to_tree(const std::vector<PseudoClonePair>& pairs) {
  Tree t = Tree::array();
  for (const auto& pc : pairs) t.push_back(Tree::array({pc.a, pc.b}));
  return t;
}

Tree to_tree(const OrderCase& row) {
  Tree t;
  t["pi_a"] = row.pi_a_order;
  t["pi_b"] = row.pi_b_order;
  t["pi_from_a"] = row.pi_from_a;
  t["pi_from_b"] = row.pi_from_b;
  t["contradiction"] = row.contradiction;
  return t;
}

Tree to_tree(const AuditReport& audit) {
  auto run_tree = [](const KnockoutRun& run) {
    Tree t;
    t["comparison_order"] = run.comparison_order;
    t["elimination_order"] = run.eliminated;
    t["per_step"] = run.per_step;
    t["survivors"] = run.survivors;
    return t;
  };
  Tree t;
  t["order_function"] = audit.order_name;
  t["runs"]["sigma"] = run_tree(audit.run_sigma);
  t["runs"]["sigma_a"] = run_tree(audit.run_a);
  t["runs"]["sigma_b"] = run_tree(audit.run_b);
  Tree checks = Tree::array();
  for (const auto& c : audit.checks) checks.push_back(to_tree(c));
  t["checks"] = std::move(checks);
  t["all_pass"] = audit.all_pass;
  return t;
}

std::string render_matrix(const std::vector<Candidate>& names, const std::vector<std::vector<std::string>>& cells,
                          const std::string& corner) {
  std::size_t width = corner.size();
  for (const auto& n : names) width = std::max(width, n.size());
  for (const auto& row : cells) {
    for (const auto& c : row) width = std::max(width, c.size());
  }
  width += 2;
  std::ostringstream os;
  os << pad(corner, width);
  for (const auto& n : names) os << pad(n, width);
  os << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) {
    os << pad(names[i], width);
    for (const auto& c : cells[i]) os << pad(c, width);
    os << '\n';
  }
  return os.str();
}

std::string render_strength_pairs(const Profile& p, const StrengthMatrix& s) {
  const auto n = static_cast<std::int64_t>(p.num_voters());
  std::vector<std::vector<std::string>> cells(s.size(), std::vector<std::string>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      cells[i][j] = i == j ? "0" : "(" + std::to_string(s(i, j)) + "," + std::to_string(n - s(i, j)) + ")";
    }
  }
  return render_matrix(p.candidates(), cells, "S");
}

std::string render_text(const Profile& p, const TallyResult& result) {
  std::ostringstream os;
  os << "rule: " << to_string(result.rule) << '\n';
  os << "winner: " << result.winner_name << '\n';
  std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, ScoreDetail>) {
          os << "scores:";
          for (std::size_t c = 0; c < d.scores.size(); ++c) os << ' ' << p.name(c) << '=' << d.scores[c];
          os << '\n';
        } else if constexpr (std::is_same_v<D, StvDetail>) {
          os << "elimination_order: [" << join_names(p.names(d.elimination_order)) << "]\n";
          for (std::size_t r = 0; r < d.round_tallies.size(); ++r) {
            os << "round " << r + 1 << ':';
            for (std::size_t c = 0; c < d.round_tallies[r].size(); ++c) {
              const auto first = d.elimination_order.begin();
              if (std::find(first, first + static_cast<std::ptrdiff_t>(r), c) != first + static_cast<std::ptrdiff_t>(r)) {
                continue;
              }
              os << ' ' << p.name(c) << '=' << d.round_tallies[r][c];
            }
            os << " -> eliminate " << p.name(d.elimination_order[r]) << '\n';
          }
        } else if constexpr (std::is_same_v<D, RankedPairsDetail>) {
          os << "majority matrix:\n" << render_matrix(p, d.majority, "M");
          os << "edge_log:\n";
          for (const auto& e : d.edge_log) {
            os << "  " << p.name(e.from) << "->" << p.name(e.to) << " margin=" << e.margin
               << (e.kept ? " kept" : " skipped") << '\n';
          }
        } else {
          os << "pairwise matrix:\n" << render_matrix(p, d.pairwise, "P");
          os << "strength matrix:\n" << render_strength_pairs(p, d.strength);
          os << "ranking: " << join_names(p.names(d.ranking), " > ") << '\n';
        }
      },
      result.detail);
  if (result.tie_broken) os << "note: non-canonical, ties broken by policy " << to_string(result.tie_policy) << '\n';
  return os.str();
}

std::string render_text(const IocVerdict& v) {
  std::ostringstream os;
  os << "rule: " << to_string(v.rule) << '\n';
  os << "clone_set: {" << join_names(v.clone_set) << "} representative: " << v.representative << '\n';
  os << "winner_with: " << v.winner_with << '\n';
  os << "winner_without: " << v.winner_without << '\n';
  os << "ioc_holds: " << (v.ioc_holds ? "true" : "false") << '\n';
  if (v.tie_broken) os << "note: non-canonical, ties broken by policy\n";
  return os.str();
}

std::string render_text(const ClockedRun& run, Protocol protocol, bool with_transcript) {
  std::ostringstream os;
  os << "protocol: " << to_string(protocol) << '\n';
  os << "F: [" << join_names(run.list.order()) << "]\n";
  for (std::size_t i = 1; i <= run.list.size(); ++i) {
    os << "F_" << i << ": [" << join_names(run.list.prefix(i)) << "]\n";
  }
  os << "survivor: " << run.list.survivor() << '\n';
  os << "cells read: " << run.access_log.size() << '\n';
  if (run.tie_broken) os << "note: non-canonical, ties broken by policy " << to_string(run.tie_policy) << '\n';
  if (with_transcript) os << "transcript:\n" << run.transcript.to_lines();
  return os.str();
}

std::string render_text(const ConditionReport& r) {
  std::string out = std::string(to_string(r.condition)) + " " + (r.pass ? "pass" : "FAIL") + "  " + r.instance;
  if (r.witness) out += "  witness: " + *r.witness;
  return out + "\n";
}

std::string render_table(const std::vector<OrderCase>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"pi'_a", "pi'_b", "pi' from a", "pi' from b", "contradiction"});
  for (const auto& r : rows) {
    cells.push_back({order_pattern(r.pi_a_order), order_pattern(r.pi_b_order), order_pattern(r.pi_from_a),
                     order_pattern(r.pi_from_b), r.contradiction ? "true" : "false"});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size() + 2);
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k + 1 == row.size() ? row[k] : pad(row[k], width[k]));
    os << '\n';
  }
  return os.str();
}

std::string render_text(const AuditReport& audit) {
  std::ostringstream os;
  os << "order function: " << audit.order_name << '\n';
  auto line = [&](const char* label, const KnockoutRun& run) {
    os << "  " << label << " compared [" << join_names(run.comparison_order) << "] F=[" << join_names(run.eliminated)
       << "] survivors [" << join_names(run.survivors) << "]\n";
  };
  line("sigma'  ", audit.run_sigma);
  line("sigma'_a", audit.run_a);
  line("sigma'_b", audit.run_b);
  for (const auto& c : audit.checks) os << "  " << render_text(c);
  os << "  all conditions pass: " << (audit.all_pass ? "yes" : "no") << '\n';
  return os.str();
}

}  // namespace rankvote
