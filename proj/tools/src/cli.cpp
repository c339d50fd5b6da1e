#include "rankvote_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rankvote/ballots.hpp"
#include "rankvote/clocked.hpp"
#include "rankvote/clones.hpp"
#include "rankvote/errors.hpp"
#include "rankvote/impossibility.hpp"
#include "rankvote/report.hpp"
#include "rankvote/rules.hpp"
#include "rankvote/suites.hpp"

namespace rankvote::cli {

namespace {

struct Options {
  std::string format = "text";
  std::string tiebreak;
  std::string file;

  std::string rule;
  std::string protocol;
  bool transcript = false;

  std::string target;
  std::string new_id;
  std::string place = "below";

  std::vector<std::string> clone_set;
  std::string rep;
  std::vector<std::string> tau;
  bool random = false;
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  std::size_t permutations = 20;

  std::int64_t n = 8;
  std::optional<std::int64_t> r_clone;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Command {
 public:
  Command(const Options& o, std::istream& in, std::ostream& out) : o_(o), in_(in), out_(out) {
    if (o_.tiebreak.empty()) {
      policy_ = TiePolicy::kError;
    } else if (auto p = parse_tie_policy(o_.tiebreak)) {
      policy_ = *p;
    } else {
      throw UsageError("unknown tie-break policy '" + o_.tiebreak + "'");
    }
  }

  int tally() {
    const auto p = load();
    const auto result = rankvote::tally(*parse_rule(o_.rule), p, policy_);
    emit(to_tree(p, result), [&] { return render_text(p, result); });
    return kOk;
  }

  int clocked() {
    const auto p = load();
    const auto protocol = *parse_protocol(o_.protocol);
    const auto run = run_protocol(protocol, p, policy_);
    emit(to_tree(run, protocol, o_.transcript), [&] { return render_text(run, protocol, o_.transcript); });
    return kOk;
  }

  int clones_detect() {
    const auto p = load();
    const auto sets = detect_clone_sets(p);
    const auto pseudo = p.num_candidates() >= 3 ? detect_pseudo_clones(p) : std::vector<PseudoClonePair>{};
    Tree t;
    t["clone_sets"] = to_tree(sets);
    t["pseudo_clones"] = to_tree(pseudo);
    emit(t, [&] {
      std::ostringstream os;
      os << "clone sets: " << sets.size() << '\n';
      for (const auto& s : sets) os << "  {" << join_names(s) << "}\n";
      os << "pseudo-clone pairs: " << pseudo.size() << '\n';
      for (const auto& pc : pseudo) os << "  (" << pc.a << ", " << pc.b << ")\n";
      return os.str();
    });
    return kOk;
  }

  int clones_inject() {
    const auto p = load();
    Placement where = Placement::kBelow;
    if (o_.place == "above") where = Placement::kAbove;
    const auto cloned = clone_candidate(p, o_.target, o_.new_id, ClonePlacement::always(where));
    emit(to_tree(cloned), [&] { return serialize_profile(cloned); });
    return kOk;
  }

  int verify_ioc() {
    if (o_.random) {
      const auto report = run_ioc_suite(suite_options(500));
      emit(to_tree(report), [&] { return render_text(report); });
      return ioc_suite_passes(report) ? kOk : kVerificationFailed;
    }
    const auto p = load();
    const auto verdict = rankvote::verify_ioc(p, require_rule(), require_spec(), policy_);
    emit(to_tree(verdict), [&] { return render_text(verdict); });
    return verdict.ioc_holds ? kOk : kVerificationFailed;
  }

  int verify_oioc() {
    if (o_.random) {
      const auto report = run_oioc_suite(suite_options(300), o_.permutations);
      emit(to_tree(report), [&] { return render_text(report); });
      return oioc_suite_passes(report) ? kOk : kVerificationFailed;
    }
    const auto p = load();
    const auto protocol = require_protocol();
    std::vector<ConditionReport> checks;
    std::vector<CloneSpec> specs;
    if (!o_.clone_set.empty()) {
      specs.push_back(require_spec());
    } else {
      for (const auto& set : detect_clone_sets(p)) specs.push_back({set, set.front()});
    }
    for (const auto& spec : specs) checks.push_back(check_condition1(protocol, p, spec, policy_));
    for (const auto& tau : relabelings(p)) checks.push_back(check_neutrality(protocol, p, tau, policy_));
    checks.push_back(check_condition4(protocol, reference_rule(protocol), p, policy_));
    checks.push_back(check_access_pattern(protocol, p, policy_));
    return emit_checks("oioc", protocol, checks);
  }

  int verify_neutrality() {
    if (o_.random) {
      const auto report = run_neutrality_suite(suite_options(300), o_.permutations);
      emit(to_tree(report), [&] { return render_text(report); });
      return neutrality_suite_passes(report) ? kOk : kVerificationFailed;
    }
    const auto p = load();
    const auto protocol = require_protocol();
    std::vector<ConditionReport> checks;
    for (const auto& tau : relabelings(p)) checks.push_back(check_neutrality(protocol, p, tau, policy_));
    return emit_checks("neutrality", protocol, checks);
  }

  int demo() {
    const auto tmpl = PTemplate::tied_family(o_.n);
    const auto sigma = realize_profile(tmpl);
    const auto family = build_cloned_variants(sigma, o_.r_clone);
    const auto p_sigma = pairwise_matrix(family.sigma);
    const auto p_a = pairwise_matrix(family.sigma_a);
    const auto p_b = pairwise_matrix(family.sigma_b);
    const bool iso = isomorphic_under(p_a, family.sigma_a, p_b, family.sigma_b, family.phi);
    const auto pseudo = detect_pseudo_clones(family.sigma);
    const auto table = contradiction_table(family);
    std::vector<AuditReport> audits;
    for (const auto& order : builtin_orders()) audits.push_back(audit_schulze_protocol(order, family));

    const bool all_contradict =
        std::all_of(table.begin(), table.end(), [](const OrderCase& r) { return r.contradiction; });
    const bool none_all_pass =
        std::none_of(audits.begin(), audits.end(), [](const AuditReport& a) { return a.all_pass; });
    const bool pass = iso && all_contradict && none_all_pass && table.size() == 6;

    Tree t;
    t["n"] = tmpl.n;
    t["r"] = tmpl.r;
    t["r_clone"] = family.r_clone;
    t["sigma"] = to_tree(family.sigma);
    t["sigma_a"] = to_tree(family.sigma_a);
    t["sigma_b"] = to_tree(family.sigma_b);
    t["pairwise"] = {{"sigma", matrix_tree(p_sigma)}, {"sigma_a", matrix_tree(p_a)}, {"sigma_b", matrix_tree(p_b)}};
    t["pseudo_clones"] = to_tree(pseudo);
    Tree phi;
    for (const auto& c : family.sigma_a.candidates()) phi[c] = family.phi.at(c);
    t["phi"] = phi;
    t["isomorphic"] = iso;
    Tree rows = Tree::array();
    for (const auto& r : table) rows.push_back(to_tree(r));
    t["table"] = std::move(rows);
    Tree audit_tree = Tree::array();
    for (const auto& a : audits) audit_tree.push_back(to_tree(a));
    t["audits"] = std::move(audit_tree);
    t["pass"] = pass;

    emit(t, [&] {
      std::ostringstream os;
      os << "pseudo-clone family: n=" << tmpl.n << " P[a,b]=" << tmpl.r << " r_clone=" << family.r_clone << "\n\n";
      os << "sigma':\n" << serialize_profile(family.sigma);
      os << "pairwise matrix sigma':\n" << render_matrix(family.sigma, p_sigma, "P") << '\n';
      os << "pseudo-clone pairs:";
      for (const auto& pc : pseudo) os << " (" << pc.a << ", " << pc.b << ")";
      os << "\n\nsigma'_a:\n" << serialize_profile(family.sigma_a);
      os << "pairwise matrix sigma'_a:\n" << render_matrix(family.sigma_a, p_a, "P") << '\n';
      os << "sigma'_b:\n" << serialize_profile(family.sigma_b);
      os << "pairwise matrix sigma'_b:\n" << render_matrix(family.sigma_b, p_b, "P") << '\n';
      os << "phi:";
      for (const auto& c : family.sigma_a.candidates()) os << ' ' << c << "->" << family.phi.at(c);
      os << "\nisomorphism: " << (iso ? "verified" : "FAILED") << "\n\n";
      os << render_table(table) << '\n';
      for (const auto& a : audits) os << render_text(a);
      os << "result: " << (pass ? "pass" : "FAIL") << '\n';
      return os.str();
    });
    return pass ? kOk : kVerificationFailed;
  }

 private:
  Profile load() {
    if (o_.file.empty()) throw UsageError("a ballot file is required");
    std::stringstream ss;
    if (o_.file == "-") {
      ss << in_.rdbuf();
    } else {
      std::ifstream f(o_.file);
      if (!f) throw UsageError("cannot open '" + o_.file + "'");
      ss << f.rdbuf();
    }
    try {
      return parse_profile(ss.str());
    } catch (const ParseError& e) {
      throw ParseError(e.line(), o_.file + ": " + e.what());
    }
  }

  Rule require_rule() const {
    if (o_.rule.empty()) throw UsageError("--rule is required");
    return *parse_rule(o_.rule);
  }

  Protocol require_protocol() const {
    if (o_.protocol.empty()) throw UsageError("--protocol is required");
    return *parse_protocol(o_.protocol);
  }

  CloneSpec require_spec() const {
    if (o_.clone_set.empty()) throw UsageError("--clone-set is required");
    return {o_.clone_set, o_.rep.empty() ? o_.clone_set.front() : o_.rep};
  }

  SuiteOptions suite_options(std::size_t default_trials) const {
    SuiteOptions s;
    s.trials = o_.trials ? o_.trials : default_trials;
    s.seed = o_.seed;
    return s;
  }

  std::vector<Relabeling> relabelings(const Profile& p) const {
    if (!o_.tau.empty()) {
      Relabeling tau = identity_relabeling(p);
      for (const auto& pair : o_.tau) {
        const auto parts = split(pair, '=');
        if (parts.size() != 2) throw UsageError("--tau expects from=to pairs, got '" + pair + "'");
        tau[parts[0]] = parts[1];
      }
      return {tau};
    }
    auto rng = trial_rng(o_.seed, 0);
    std::vector<Relabeling> out;
    for (std::size_t k = 0; k < o_.permutations; ++k) out.push_back(random_relabeling(rng, p));
    return out;
  }

  int emit_checks(const char* what, Protocol protocol, const std::vector<ConditionReport>& checks) {
    const bool pass = std::all_of(checks.begin(), checks.end(), [](const ConditionReport& c) { return c.pass; });
    Tree t;
    t["verify"] = what;
    t["protocol"] = std::string(to_string(protocol));
    t["file"] = o_.file;
    Tree list = Tree::array();
    for (const auto& c : checks) list.push_back(to_tree(c));
    t["checks"] = std::move(list);
    t["pass"] = pass;
    emit(t, [&] {
      std::string s;
      for (const auto& c : checks) s += render_text(c);
      return s + "result: " + (pass ? "pass" : "FAIL") + "\n";
    });
    return pass ? kOk : kVerificationFailed;
  }

  template <class Text>
  void emit(const Tree& tree, Text&& text) {
    if (o_.format == "tree") {
      out_ << tree.dump(2) << '\n';
    } else {
      out_ << text();
    }
  }

  const Options& o_;
  std::istream& in_;
  std::ostream& out_;
  TiePolicy policy_ = TiePolicy::kError;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Ranked-ballot tallies, clocked elections and clone analysis", "rankvote"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "tree"}));
  app.add_option("--tiebreak", o.tiebreak, "tie-break policy")->check(CLI::IsMember({"lex", "declared"}));

  const std::vector<std::string> rules{"plurality", "borda", "stv", "rp", "ranked_pairs", "schulze"};
  const std::vector<std::string> protocols{"stv", "rp"};

  auto* tally = app.add_subcommand("tally", "winner and tally detail of one rule");
  tally->add_option("--rule", o.rule)->required()->check(CLI::IsMember(rules));
  tally->add_option("file", o.file, "ballot file or -")->required();

  auto* clocked = app.add_subcommand("clocked", "run a clocked election protocol");
  clocked->add_option("--protocol", o.protocol)->required()->check(CLI::IsMember(protocols));
  clocked->add_flag("--transcript", o.transcript, "print the event log");
  clocked->add_option("file", o.file, "ballot file or -")->required();

  auto* clones = app.add_subcommand("clones", "clone-set analysis");
  clones->require_subcommand(1);
  auto* detect = clones->add_subcommand("detect", "list clone sets and pseudo-clone pairs");
  detect->add_option("file", o.file, "ballot file or -")->required();
  auto* inject = clones->add_subcommand("inject", "add a clone of a candidate");
  inject->add_option("--target", o.target)->required();
  inject->add_option("--id", o.new_id)->required();
  inject->add_option("--place", o.place)->check(CLI::IsMember({"above", "below"}));
  inject->add_option("file", o.file, "ballot file or -")->required();

  auto* verify = app.add_subcommand("verify", "clone independence and clocked-election checks");
  verify->require_subcommand(1);
  auto add_verify = [&](const char* name, const char* desc) {
    auto* sub = verify->add_subcommand(name, desc);
    sub->add_option("file", o.file, "ballot file or -");
    sub->add_flag("--random", o.random, "run the seeded randomized suite");
    sub->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed);
    return sub;
  };
  auto* v_ioc = add_verify("ioc", "independence of clones for one rule");
  v_ioc->add_option("--rule", o.rule)->check(CLI::IsMember(rules));
  v_ioc->add_option("--clone-set", o.clone_set)->delimiter(',')->allow_extra_args(false);
  v_ioc->add_option("--rep", o.rep);
  auto* v_oioc = add_verify("oioc", "conditions of a clocked election");
  v_oioc->add_option("--protocol", o.protocol)->check(CLI::IsMember(protocols));
  v_oioc->add_option("--clone-set", o.clone_set)->delimiter(',')->allow_extra_args(false);
  v_oioc->add_option("--rep", o.rep);
  v_oioc->add_option("--tau", o.tau)->delimiter(',')->allow_extra_args(false);
  v_oioc->add_option("--permutations", o.permutations)->check(CLI::PositiveNumber);
  auto* v_neutral = add_verify("neutrality", "relabeling commutes with the protocol");
  v_neutral->add_option("--protocol", o.protocol)->check(CLI::IsMember(protocols));
  v_neutral->add_option("--tau", o.tau)->delimiter(',')->allow_extra_args(false);
  v_neutral->add_option("--permutations", o.permutations)->check(CLI::PositiveNumber);

  auto* demo = app.add_subcommand("demo", "worked demonstrations");
  demo->require_subcommand(1);
  auto* schulze_demo = demo->add_subcommand("schulze-impossibility", "pseudo-clone family and order table");
  schulze_demo->add_option("--n", o.n, "even voter count");
  schulze_demo->add_option("--r-clone", o.r_clone, "P[a,a_star] in the cloned variants");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Command cmd(o, in, out);
    if (tally->parsed()) return cmd.tally();
    if (clocked->parsed()) return cmd.clocked();
    if (detect->parsed()) return cmd.clones_detect();
    if (inject->parsed()) return cmd.clones_inject();
    if (v_ioc->parsed()) return cmd.verify_ioc();
    if (v_oioc->parsed()) return cmd.verify_oioc();
    if (v_neutral->parsed()) return cmd.verify_neutrality();
    if (schulze_demo->parsed()) return cmd.demo();
    throw UsageError("no command");
  } catch (const TieError& e) {
    err << "tie: " << e.what() << (o.file.empty() ? "" : " (" + o.file + ")")
        << "; rerun with --tiebreak lex|declared\n";
    return kTie;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace rankvote::cli
