#include "ethica/experiments.hpp"

#include <sstream>

#include "ethica/error.hpp"
#include "ethica/registry.hpp"

namespace ethica {

namespace {

using json = nlohmann::ordered_json;

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string braces(const std::vector<std::string>& ids) { return "{" + join(ids, ", ") + "}"; }

std::vector<std::string> premise_ids(const Query& q) { return ids_of(axiom_set(q.premises)); }

std::string_view to_string(Expect e) {
  return e == Expect::Refuted ? "Refuted" : "NoCounterexample";
}

bool matches(Expect e, const EntailmentVerdict& v) { return v.refuted() == (e == Expect::Refuted); }

SearchConfig config_for(const ExperimentSpec& spec, const RunOptions& options) {
  SearchConfig c = spec.config;
  c.workers = options.workers;
  if (options.pruning) c.pruning = *options.pruning;
  if (options.node_budget) c.node_budget = options.node_budget;
  return c;
}

ExperimentSpec make(std::string name, std::string axiom, std::string sigma, Query forward,
                    std::size_t things, std::size_t worlds = 0) {
  ExperimentSpec s;
  s.name = std::move(name);
  s.axiom = std::move(axiom);
  s.sigma_label = std::move(sigma);
  s.forward = std::move(forward);
  s.config.max_thing_size = things;
  if (worlds) s.config.max_world_size = worlds;
  return s;
}

std::vector<ExperimentSpec> build_fixtures() {
  std::vector<ExperimentSpec> all;

  auto a12 = make("A12_demote", "A12", "PSRSubstance", {{"PSRSubstance"}, "A12"}, 4);
  a12.auxiliary = Query{{"PSRSubstance"}, "PropV_allshared"};
  a12.corpus_witness = "A12CounterModel";
  a12.in_table = true;
  a12.expectation = Expectation{Expect::Refuted, std::nullopt, Expect::NoCounterexample, {},
                                OutcomeClass::PartialReduction};
  all.push_back(std::move(a12));

  auto a13 = make("A13_demote", "A13", "PSRSelfCause", {{"PSRSelfCause", "A18", "A3m"}, "A13"}, 3,
                  2);
  a13.backward_open = true;
  a13.in_table = true;
  a13.notes = {"bridge A3m is a formula decided here, not a stated one",
               "the converse direction has no tested premise set and is reported open"};
  a13.table_qualifiers = {"bridge set {A18, A3m} decided here", "converse open"};
  a13.expectation = Expectation{Expect::NoCounterexample, std::nullopt, std::nullopt, {},
                                OutcomeClass::EqualStrengthTranslation};
  all.push_back(std::move(a13));

  auto converse = make("A13_converse", "A13", "A13 + bridges", {{"A13", "A18", "A3m"}, "A23"}, 3, 2);
  converse.notes = {"no expected verdict: the converse derivation is open"};
  all.push_back(std::move(converse));

  auto a14 = make("A14_demote", "A14", "PSREssencePerception", {{"PSREssencePerception"}, "A14"}, 4);
  a14.backward = Query{{"A14"}, "A24"};
  a14.in_table = true;
  a14.table_qualifiers = {"trivial redescription"};
  a14.expectation = Expectation{Expect::NoCounterexample, Expect::NoCounterexample, std::nullopt,
                                {}, OutcomeClass::EqualStrengthTranslation};
  all.push_back(std::move(a14));

  auto a15 = make("A15_decomposition", "A15", "PSRPlenitude", {{"PSRPlenitude"}, "A15"}, 3);
  a15.components = {Query{{"A25"}, "A15"}, Query{{"A26"}, "A15"}};
  a15.corpus_witness = "A15CounterModel";
  a15.witness_query = Query{{"A25"}, "A15"};
  a15.in_table = true;
  a15.expectation = Expectation{Expect::NoCounterexample, std::nullopt, std::nullopt,
                                {Expect::Refuted, Expect::Refuted}, OutcomeClass::DecompositionOnly};
  all.push_back(std::move(a15));

  auto plenitude = make("A15_plenitude_only", "A15", "A25", {{"A25"}, "A15"}, 3);
  plenitude.corpus_witness = "A15CounterModel";
  plenitude.notes = {"component of the A15 decomposition"};
  plenitude.expectation = Expectation{Expect::Refuted, std::nullopt, std::nullopt, {},
                                      OutcomeClass::FullIrreducibility};
  all.push_back(std::move(plenitude));

  return all;
}

std::string bound_text(const ExperimentResult& r) {
  return describe_bound(search_bound(r.spec));
}

std::string strict_text(const ExperimentResult& r) {
  std::string out = "forward " + r.forward.text();
  if (r.backward) out += "; backward " + r.backward->text();
  if (r.spec.backward_open) out += "; backward not tested";
  if (r.auxiliary) out += "; auxiliary " + r.auxiliary->text();
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    out += "; component " + braces(premise_ids(r.spec.components[i])) + " " +
           r.components[i].text();
  }
  return out;
}

json stats_json(const SearchStats& s, const RenderOptions& options) {
  json sizes = json::array();
  for (const auto& z : s.sizes_exhausted) sizes.push_back(describe_bound(z));
  json j{{"candidates_visited", s.candidates_visited},
         {"pruned_subtrees", s.pruned_subtrees},
         {"propagations", s.propagations},
         {"sizes_exhausted", sizes},
         {"support", s.support},
         {"within_support", s.within_support}};
  if (options.timing) j["elapsed_seconds"] = s.elapsed_seconds;
  return j;
}

}  // namespace

std::string_view to_string(OutcomeClass outcome) {
  switch (outcome) {
    case OutcomeClass::FullReduction: return "FullReduction";
    case OutcomeClass::EqualStrengthTranslation: return "EqualStrengthTranslation";
    case OutcomeClass::PartialReduction: return "PartialReduction";
    case OutcomeClass::DecompositionOnly: return "DecompositionOnly";
    case OutcomeClass::FullIrreducibility: return "FullIrreducibility";
  }
  return "?";
}

std::string_view outcome_label(OutcomeClass outcome) {
  switch (outcome) {
    case OutcomeClass::FullReduction: return "Full reduction";
    case OutcomeClass::EqualStrengthTranslation: return "Equal-strength translation";
    case OutcomeClass::PartialReduction: return "Partial reduction; full irreducible";
    case OutcomeClass::DecompositionOnly: return "Decomposition only";
    case OutcomeClass::FullIrreducibility: return "Full irreducibility";
  }
  return "?";
}

std::string describe(const Query& query) {
  return braces(premise_ids(query)) + " ⊨ " + query.target;
}

OutcomeClass classify_outcome(const Evidence& e) {
  if (!e.forward) throw InsufficientEvidenceError("no forward verdict");
  if (e.forward->refuted()) {
    if (e.auxiliary && !e.auxiliary->refuted()) return OutcomeClass::PartialReduction;
    return OutcomeClass::FullIrreducibility;
  }
  if (!e.components.empty()) {
    bool all_refuted = true;
    for (const auto* c : e.components) all_refuted = all_refuted && c && c->refuted();
    if (all_refuted) return OutcomeClass::DecompositionOnly;
  }
  if (e.backward) {
    return e.backward->refuted() ? OutcomeClass::FullReduction
                                 : OutcomeClass::EqualStrengthTranslation;
  }
  if (e.backward_open) return OutcomeClass::EqualStrengthTranslation;
  throw InsufficientEvidenceError(
      "forward search found no counterexample, but there is no backward or component evidence");
}

const std::vector<ExperimentSpec>& bundled_experiments() {
  static const std::vector<ExperimentSpec> all = build_fixtures();
  return all;
}

const ExperimentSpec& bundled_experiment(std::string_view name) {
  for (const auto& s : bundled_experiments()) {
    if (s.name == name) return s;
  }
  throw UnknownNameError("unknown experiment '" + std::string(name) + "'");
}

UniverseSizes search_bound(const ExperimentSpec& spec) {
  return {spec.config.max_thing_size, spec.config.max_world_size.value_or(0)};
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  const SearchConfig config = config_for(spec, options);
  auto run = [&](const Query& q) { return entails_bounded(q.premises, q.target, config); };

  ExperimentResult r{spec.name, spec, run(spec.forward), {}, {}, {}, {}, {}, {}, {}, true, {}};
  if (spec.backward) r.backward = run(*spec.backward);
  if (spec.auxiliary) r.auxiliary = run(*spec.auxiliary);
  for (const auto& c : spec.components) r.components.push_back(run(c));

  // Every refuting model must survive an independent evaluation.
  auto check_model = [&](const EntailmentVerdict& v, const Query& q) {
    if (!v.refuted()) return;
    const auto report = verify(v.refutation().model, q.premises, q.target);
    if (report.verdict != Verdict::Confirmed) {
      r.models_verified = false;
      r.mismatches.push_back(describe(q) + ": refuting model not confirmed (" +
                             report.verdict_text() + ")");
    }
  };
  check_model(r.forward, spec.forward);
  if (r.backward) check_model(*r.backward, *spec.backward);
  if (r.auxiliary) check_model(*r.auxiliary, *spec.auxiliary);
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    check_model(r.components[i], spec.components[i]);
  }

  Evidence evidence{&r.forward, r.backward ? &*r.backward : nullptr, spec.backward_open,
                    r.auxiliary ? &*r.auxiliary : nullptr, {}};
  for (const auto& c : r.components) evidence.components.push_back(&c);
  try {
    r.outcome = classify_outcome(evidence);
  } catch (const InsufficientEvidenceError& e) {
    r.mismatches.push_back(std::string("classification: ") + e.what());
  }

  if (spec.corpus_witness) {
    const auto& model = corpus_model(*spec.corpus_witness);
    const Query& q = spec.witness_query ? *spec.witness_query : spec.forward;
    r.corpus_verification = verify(model, q.premises, q.target);
    r.fidelity_flags = model.fidelity_flags;
    if (r.corpus_verification->verdict != Verdict::Confirmed) {
      r.mismatches.push_back(model.name + " against " + describe(q) + ": " +
                             r.corpus_verification->verdict_text());
    }
  }

  if (spec.expectation) {
    const auto& x = *spec.expectation;
    auto expect = [&](std::string_view what, Expect e, const EntailmentVerdict& v) {
      if (!matches(e, v)) {
        r.mismatches.push_back(std::string(what) + ": expected " + std::string(to_string(e)) +
                               ", got " + v.text());
      }
    };
    expect("forward", x.forward, r.forward);
    if (x.backward && r.backward) expect("backward", *x.backward, *r.backward);
    if (x.auxiliary && r.auxiliary) expect("auxiliary", *x.auxiliary, *r.auxiliary);
    for (std::size_t i = 0; i < x.components.size() && i < r.components.size(); ++i) {
      expect("component " + braces(premise_ids(spec.components[i])), x.components[i],
             r.components[i]);
    }
    if (x.outcome && r.outcome && *x.outcome != *r.outcome) {
      r.mismatches.push_back("outcome: expected " + std::string(to_string(*x.outcome)) + ", got " +
                             std::string(to_string(*r.outcome)));
    }
  }

  // Caveats.
  const auto bound = describe_bound(search_bound(spec));
  r.caveats.push_back("verdicts cover models up to " + bound +
                      " only; no claim of unbounded validity");
  bool restricted = !r.forward.refuted() && r.forward.stats.within_support;
  if (r.backward) restricted = restricted || (!r.backward->refuted() && r.backward->stats.within_support);
  if (r.auxiliary) {
    restricted = restricted || (!r.auxiliary->refuted() && r.auxiliary->stats.within_support);
  }
  if (restricted) {
    r.caveats.push_back(
        "exhaustion is within support: predicates absent from the premises and target stay false");
  }
  if (r.outcome == OutcomeClass::FullIrreducibility || r.outcome == OutcomeClass::PartialReduction) {
    r.caveats.push_back("irreducibility holds against the tested premise set only");
  }
  for (const auto& n : spec.notes) r.caveats.push_back(n);
  for (auto f : r.fidelity_flags) {
    r.caveats.push_back("corpus model carries fidelity flag " + std::string(to_string(f)));
  }
  return r;
}

json to_json(const VerificationReport& r) {
  json premises = json::array();
  for (const auto& p : r.premises) premises.push_back({{"id", p.id}, {"holds", p.holds}});
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(w);
  json flags = json::array();
  for (auto f : r.fidelity_flags) flags.push_back(to_string(f));
  return {{"model", r.model_name},
          {"premises", premises},
          {"target", r.target},
          {"target_holds", r.target_holds},
          {"witness_variables", r.witness_variables},
          {"witnesses", witnesses},
          {"fidelity_flags", flags},
          {"verdict", r.verdict_text()}};
}

json to_json(const EntailmentVerdict& v, const Query& q, UniverseSizes bound,
             const RenderOptions& options) {
  json j{{"premises", premise_ids(q)},
         {"target", q.target},
         {"verdict", v.refuted() ? "Refuted" : "NoCounterexampleUpTo"},
         {"text", v.text()},
         {"bound", {{"things", bound.things}, {"worlds", bound.worlds}}}};
  if (v.refuted()) {
    const auto& r = v.refutation();
    j["size"] = {{"things", r.size.things}, {"worlds", r.size.worlds}};
    j["model"] = serialize_model(r.model);
  }
  j["stats"] = stats_json(v.stats, options);
  return j;
}

json to_json(const ExperimentResult& r, const RenderOptions& options) {
  const auto bound = search_bound(r.spec);
  json j{{"name", r.name}, {"forward", to_json(r.forward, r.spec.forward, bound, options)}};
  if (r.backward) {
    j["backward"] = to_json(*r.backward, *r.spec.backward, bound, options);
  } else if (r.spec.backward_open) {
    j["backward"] = {{"verdict", "Open"}};
  }
  if (r.auxiliary) j["auxiliary"] = to_json(*r.auxiliary, *r.spec.auxiliary, bound, options);
  if (!r.components.empty()) {
    json comps = json::array();
    for (std::size_t i = 0; i < r.components.size(); ++i) {
      comps.push_back(to_json(r.components[i], r.spec.components[i], bound, options));
    }
    j["components"] = comps;
  }
  if (r.outcome) {
    j["outcome"] = options.strict_claims ? json(nullptr) : json(to_string(*r.outcome));
  } else {
    j["outcome"] = nullptr;
  }
  j["caveats"] = r.caveats;
  json flags = json::array();
  for (auto f : r.fidelity_flags) flags.push_back(to_string(f));
  j["fidelity_flags"] = flags;
  if (r.corpus_verification) j["corpus_verification"] = to_json(*r.corpus_verification);

  SearchStats total = r.forward.stats;
  auto add = [&](const EntailmentVerdict& v) {
    total.candidates_visited += v.stats.candidates_visited;
    total.pruned_subtrees += v.stats.pruned_subtrees;
    total.propagations += v.stats.propagations;
    total.elapsed_seconds += v.stats.elapsed_seconds;
  };
  if (r.backward) add(*r.backward);
  if (r.auxiliary) add(*r.auxiliary);
  for (const auto& c : r.components) add(c);
  json stats{{"candidates_visited", total.candidates_visited},
             {"pruned_subtrees", total.pruned_subtrees},
             {"propagations", total.propagations}};
  if (options.timing) stats["elapsed_seconds"] = total.elapsed_seconds;
  j["stats"] = stats;
  j["expectation"] = {{"attached", r.spec.expectation.has_value()},
                      {"met", r.expectation_met()},
                      {"mismatches", r.mismatches}};
  return j;
}

std::string to_markdown(const ExperimentResult& r, const RenderOptions& options) {
  std::ostringstream os;
  os << "### " << r.name << "\n\n";
  auto verdict_line = [&](std::string_view role, const Query& q, const EntailmentVerdict& v) {
    os << "- " << role << ": " << describe(q) << " → " << v.text() << '\n';
    os << "  - stats: " << v.stats.candidates_visited << " candidates, " << v.stats.pruned_subtrees
       << " pruned, support " << braces(v.stats.support);
    if (options.timing) os << ", " << v.stats.elapsed_seconds << " s";
    os << '\n';
  };
  verdict_line("forward", r.spec.forward, r.forward);
  if (r.backward) verdict_line("backward", *r.spec.backward, *r.backward);
  if (r.spec.backward_open) os << "- backward: open (no tested premise set)\n";
  if (r.auxiliary) verdict_line("auxiliary", *r.spec.auxiliary, *r.auxiliary);
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    verdict_line("component", r.spec.components[i], r.components[i]);
  }
  if (r.corpus_verification) {
    const auto& v = *r.corpus_verification;
    os << "- corpus model " << v.model_name << ": " << v.verdict_text();
    if (!v.witnesses.empty()) os << "; witness " << format_tuple(v.witnesses.front());
    os << '\n';
  }
  if (!options.strict_claims && r.outcome) {
    os << "- outcome: " << to_string(*r.outcome) << " (" << outcome_label(*r.outcome)
       << ", within tested premise set and bound " << bound_text(r) << ")\n";
  }
  os << "- caveats:\n";
  for (const auto& c : r.caveats) os << "  - " << c << '\n';
  if (r.spec.expectation) {
    os << "- expectation: " << (r.expectation_met() ? "met" : "NOT met") << '\n';
  }
  for (const auto& m : r.mismatches) os << "  - mismatch: " << m << '\n';
  if (r.forward.refuted()) {
    os << "\n```\n" << serialize_model(r.forward.refutation().model) << "```\n";
  }
  return os.str();
}

std::vector<TableRow> reducibility_table(const RunOptions& options, const RenderOptions& render) {
  std::vector<TableRow> rows;
  for (const auto& spec : bundled_experiments()) {
    if (!spec.in_table) continue;
    std::optional<ExperimentResult> run;
    try {
      run = run_experiment(spec, options);
    } catch (const Error& e) {
      std::string done;
      for (const auto& row : rows) done += " " + row.axiom;
      throw Error("table row " + spec.axiom + " failed (completed rows:" +
                  (done.empty() ? std::string(" none") : done) + "): " + e.what());
    }
    ExperimentResult result = std::move(*run);
    std::vector<std::string> qualifiers = spec.table_qualifiers;
    qualifiers.push_back("within " + spec.sigma_label + ", bound " + bound_text(result));
    std::string text;
    if (render.strict_claims || !result.outcome) {
      text = strict_text(result) + " (bound " + bound_text(result) + ")";
    } else {
      text = std::string(outcome_label(*result.outcome)) + " (" + join(qualifiers, "; ") + ")";
    }
    rows.push_back({spec.axiom, spec.sigma_label + " " + braces(premise_ids(spec.forward)),
                    std::move(text),
                    std::move(result)});
  }
  return rows;
}

std::string table_markdown(const std::vector<TableRow>& rows, const RenderOptions& options) {
  std::ostringstream os;
  if (options.strict_claims) {
    os << "| Axiom | Demote Σ | Verdicts |\n|---|---|---|\n";
  } else {
    os << "| Axiom | Demote Σ | Outcome | Class |\n|---|---|---|---|\n";
  }
  for (const auto& row : rows) {
    os << "| " << row.axiom << " | " << row.sigma << " | " << row.text;
    if (!options.strict_claims) {
      os << " | " << (row.result.outcome ? to_string(*row.result.outcome) : "unclassified");
    }
    os << " |\n";
  }
  return os.str();
}

json table_json(const std::vector<TableRow>& rows, const RenderOptions& options) {
  json out = json::array();
  for (const auto& row : rows) {
    json j{{"axiom", row.axiom}, {"sigma", row.sigma}, {"text", row.text}};
    j["outcome"] = options.strict_claims || !row.result.outcome
                       ? json(nullptr)
                       : json(to_string(*row.result.outcome));
    j["experiment"] = to_json(row.result, options);
    out.push_back(std::move(j));
  }
  return {{"rows", out}};
}

ProbeResult conjecture_probe_full_register(const SearchConfig& config) {
  ProbeResult p{Query{{"SectionIBridges", "A22"}, "A12"},
                entails_bounded(std::vector<std::string>{"SectionIBridges", "A22"}, "A12", config),
                std::nullopt};
  if (p.verdict.refuted()) {
    p.verification = verify(p.verdict.refutation().model, p.query.premises, p.query.target);
  }
  return p;
}

}  // namespace ethica
