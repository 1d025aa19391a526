#include "ethica/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ethica/corpus.hpp"
#include "ethica/error.hpp"
#include "ethica/experiments.hpp"
#include "ethica/registry.hpp"
#include "ethica/search.hpp"

namespace ethica {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_selectors(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Loaded {
  FiniteModel model;
  std::vector<FidelityFlag> flags;
};

Loaded load_model(const std::string& source) {
  constexpr std::string_view prefix = "corpus:";
  if (source.starts_with(prefix)) {
    const auto& m = corpus_model(std::string_view(source).substr(prefix.size()));
    return {m.model, m.fidelity_flags};
  }
  std::ifstream in(source);
  if (!in) throw Error("cannot read model file '" + source + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return {parse_model(buffer.str()), {}};
}

void print_report(const VerificationReport& r, std::ostream& out) {
  out << r.verdict_text();
  if (r.verdict == Verdict::Confirmed) out << "; witness " << format_tuple(r.witnesses.front());
  out << '\n';
  out << "model: " << r.model_name << '\n';
  for (const auto& p : r.premises) {
    out << "premise " << p.id << ": " << (p.holds ? "true" : "false") << '\n';
  }
  out << "target " << r.target << ": " << (r.target_holds ? "true" : "false") << '\n';
  if (!r.witnesses.empty()) {
    std::vector<std::string> vars = r.witness_variables;
    out << "witnesses " << format_tuple(vars) << ":\n";
    for (const auto& w : r.witnesses) out << "  " << format_tuple(w) << '\n';
  }
  for (auto f : r.fidelity_flags) out << "fidelity flag: " << to_string(f) << '\n';
}

struct Options {
  std::string premises;
  std::string target;
  std::size_t max_things = 4;
  std::optional<std::size_t> max_worlds;
  std::optional<std::string> support;
  bool no_prune = false;
  bool json = false;
  bool strict = false;
  bool timing = false;
  std::size_t workers = 0;
  std::string model;
  std::string experiment;
  std::string probe;
};

SearchConfig search_config(const Options& o) {
  SearchConfig c;
  c.max_thing_size = o.max_things;
  c.max_world_size = o.max_worlds;
  if (o.support) c.support_predicates = split_selectors(*o.support);
  c.pruning = o.no_prune ? Pruning::None : Pruning::Canonical;
  c.workers = o.workers;
  return c;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto loaded = load_model(o.model);
  const auto report = verify(loaded.model, split_selectors(o.premises), o.target, loaded.flags);
  if (o.json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    print_report(report, out);
  }
  return report.verdict == Verdict::Confirmed ? kExitOk : kExitExpectationFailed;
}

int cmd_search(const Options& o, bool verdict_only, std::ostream& out) {
  const Query query{split_selectors(o.premises), o.target};
  const auto config = search_config(o);
  const auto verdict = entails_bounded(query.premises, query.target, config);
  const UniverseSizes bound = verdict.bound;
  std::optional<VerificationReport> check;
  if (verdict.refuted()) {
    check = verify(verdict.refutation().model, query.premises, query.target);
  }
  const RenderOptions render{o.strict, o.timing};

  if (o.json) {
    json j = to_json(verdict, query, bound, render);
    if (check) j["verification"] = to_json(*check);
    out << j.dump(2) << '\n';
  } else if (verdict_only) {
    out << verdict.text() << '\n';
  } else {
    out << describe(query) << '\n';
    out << "verdict: " << verdict.text() << '\n';
    if (verdict.refuted()) {
      out << "model:\n" << serialize_model(verdict.refutation().model);
      out << "verify: " << check->verdict_text();
      if (!check->witnesses.empty()) out << "; witness " << format_tuple(check->witnesses.front());
      out << '\n';
    } else {
      out << "no counterexample with at most " << describe_bound(bound)
          << "; this is not a claim of unbounded validity\n";
    }
    const auto& s = verdict.stats;
    out << "candidates visited: " << s.candidates_visited << '\n';
    out << "pruned subtrees: " << s.pruned_subtrees << '\n';
    out << "sizes exhausted:";
    for (const auto& z : s.sizes_exhausted) out << ' ' << describe_bound(z);
    out << '\n';
    out << "support:";
    for (const auto& p : s.support) out << ' ' << p;
    out << (s.within_support ? " (other predicates frozen false)" : "") << '\n';
    if (o.timing) out << "elapsed: " << s.elapsed_seconds << " s\n";
  }
  if (check && check->verdict != Verdict::Confirmed) return kExitExpectationFailed;
  return kExitOk;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  std::vector<const ExperimentSpec*> specs;
  if (o.experiment == "all") {
    for (const auto& s : bundled_experiments()) specs.push_back(&s);
  } else {
    specs.push_back(&bundled_experiment(o.experiment));
  }
  const RunOptions run{o.workers, o.no_prune ? std::optional(Pruning::None) : std::nullopt, {}};
  const RenderOptions render{o.strict, o.timing};
  bool ok = true;
  json all = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto result = run_experiment(*specs[i], run);
    ok = ok && result.expectation_met();
    if (o.json) {
      all.push_back(to_json(result, render));
    } else {
      if (i) out << '\n';
      out << to_markdown(result, render);
    }
  }
  if (o.json) out << (specs.size() == 1 ? all.front() : all).dump(2) << '\n';
  return ok ? kExitOk : kExitExpectationFailed;
}

int cmd_table(const Options& o, std::ostream& out) {
  const RunOptions run{o.workers, o.no_prune ? std::optional(Pruning::None) : std::nullopt, {}};
  const RenderOptions render{o.strict, o.timing};
  const auto rows = reducibility_table(run, render);
  if (o.json) {
    out << table_json(rows, render).dump(2) << '\n';
  } else {
    out << table_markdown(rows, render);
  }
  const bool ok = std::all_of(rows.begin(), rows.end(),
                              [](const TableRow& r) { return r.result.expectation_met(); });
  return ok ? kExitOk : kExitExpectationFailed;
}

int cmd_probe(const Options& o, std::ostream& out) {
  if (o.probe != "full-register") throw UnknownNameError("unknown probe '" + o.probe + "'");
  const auto p = conjecture_probe_full_register(search_config(o));
  const RenderOptions render{o.strict, o.timing};
  const UniverseSizes bound = p.verdict.bound;
  const bool sound = !p.verification || p.verification->verdict == Verdict::Confirmed;
  if (o.json) {
    json j = to_json(p.verdict, p.query, bound, render);
    if (p.verification) j["verification"] = to_json(*p.verification);
    out << j.dump(2) << '\n';
  } else {
    out << "probe full-register: " << describe(p.query) << '\n';
    out << "verdict: " << p.verdict.text() << '\n';
    if (p.verdict.refuted()) {
      out << "model:\n" << serialize_model(p.verdict.refutation().model);
      out << "verify: " << p.verification->verdict_text();
      if (!p.verification->witnesses.empty()) {
        out << "; witness " << format_tuple(p.verification->witnesses.front());
      }
      out << '\n';
    } else {
      out << "no counterexample up to " << describe_bound(bound) << '\n';
    }
    out << "candidates visited: " << p.verdict.stats.candidates_visited << '\n';
    out << "pruned subtrees: " << p.verdict.stats.pruned_subtrees << '\n';
    out << "no expectation attached: the answer is open\n";
  }
  return sound ? kExitOk : kExitExpectationFailed;
}

int cmd_export(const Options& o, std::ostream& out) {
  if (o.json) {
    json entries = json::array();
    for (const auto& e : catalogue()) {
      entries.push_back({{"id", e.id},
                         {"section", to_string(e.section)},
                         {"status", to_string(e.status)},
                         {"citation", e.citation},
                         {"statement", e.statement},
                         {"formula", to_string(e.formula)}});
    }
    json bundle_list = json::array();
    for (const auto& b : bundles()) bundle_list.push_back({{"name", b.name}, {"members", b.members}});
    out << json{{"axioms", entries}, {"bundles", bundle_list}}.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& e : catalogue()) {
    out << "## " << e.id << " [" << to_string(e.section) << ", " << to_string(e.status) << "]\n";
    out << e.statement << '\n' << to_string(e.formula) << '\n' << e.citation << "\n\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-model workbench for the Ethica I axiom system", "ethica"};
  app.require_subcommand(1);
  Options o;

  auto search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--premises", o.premises, "axiom ids or bundles, comma separated")
        ->required();
    cmd->add_option("--target", o.target, "target axiom id")->required();
    cmd->add_option("--max-things", o.max_things, "largest thing universe")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-worlds", o.max_worlds, "largest world universe");
    cmd->add_option("--support", o.support, "predicates allowed non-empty tables");
    cmd->add_flag("--no-prune", o.no_prune, "disable symmetry pruning");
    cmd->add_flag("--json", o.json, "JSON output");
    cmd->add_flag("--timing", o.timing, "include elapsed time");
    cmd->add_option("--workers", o.workers, "search threads (0 = all cores)");
  };

  auto* verify_cmd = app.add_subcommand("verify", "check a model against premises and a target");
  verify_cmd->add_option("model", o.model, "model file or corpus:NAME")->required();
  verify_cmd->add_option("--premises", o.premises, "axiom ids or bundles")->required();
  verify_cmd->add_option("--target", o.target, "target axiom id")->required();
  verify_cmd->add_flag("--json", o.json, "JSON output");

  auto* search_cmd = app.add_subcommand("search", "bounded countermodel search");
  search_flags(search_cmd);
  auto* entail_cmd = app.add_subcommand("entail", "bounded entailment, verdict only");
  search_flags(entail_cmd);

  auto* experiment_cmd = app.add_subcommand("experiment", "bundled demote experiments");
  auto* run_cmd = experiment_cmd->add_subcommand("run", "run one experiment or all");
  experiment_cmd->require_subcommand(1);
  run_cmd->add_option("name", o.experiment, "experiment name or 'all'")->required();
  run_cmd->add_flag("--json", o.json, "JSON output");
  run_cmd->add_flag("--strict-claims", o.strict, "verdicts only, no outcome labels");
  run_cmd->add_flag("--timing", o.timing, "include elapsed time");
  run_cmd->add_flag("--no-prune", o.no_prune, "disable symmetry pruning");
  run_cmd->add_option("--workers", o.workers, "search threads (0 = all cores)");

  auto* table_cmd = app.add_subcommand("table", "reducibility table");
  table_cmd->add_flag("--json", o.json, "JSON output");
  table_cmd->add_flag("--strict-claims", o.strict, "verdicts only, no outcome labels");
  table_cmd->add_flag("--timing", o.timing, "include elapsed time");
  table_cmd->add_flag("--no-prune", o.no_prune, "disable symmetry pruning");
  table_cmd->add_option("--workers", o.workers, "search threads (0 = all cores)");

  auto* probe_cmd = app.add_subcommand("probe", "open conjecture probes");
  probe_cmd->add_option("name", o.probe, "probe name (full-register)")->required();
  probe_cmd->add_option("--max-things", o.max_things, "largest thing universe")
      ->check(CLI::PositiveNumber);
  probe_cmd->add_flag("--no-prune", o.no_prune, "disable symmetry pruning");
  probe_cmd->add_flag("--json", o.json, "JSON output");
  probe_cmd->add_flag("--timing", o.timing, "include elapsed time");
  probe_cmd->add_option("--workers", o.workers, "search threads (0 = all cores)");

  auto* export_cmd = app.add_subcommand("export-axioms", "dump the axiom catalogue");
  export_cmd->add_flag("--json", o.json, "JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (search_cmd->parsed()) return cmd_search(o, false, out);
    if (entail_cmd->parsed()) return cmd_search(o, true, out);
    if (run_cmd->parsed()) return cmd_experiment(o, out);
    if (table_cmd->parsed()) return cmd_table(o, out);
    if (probe_cmd->parsed()) return cmd_probe(o, out);
    if (export_cmd->parsed()) return cmd_export(o, out);
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const InsufficientEvidenceError& e) {
    err << "insufficient evidence: " << e.what() << '\n';
    return kExitExpectationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ethica
