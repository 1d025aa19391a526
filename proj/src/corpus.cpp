#include "ethica/corpus.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ethica/error.hpp"
#include "ethica/evaluate.hpp"
#include "ethica/registry.hpp"

namespace ethica {

namespace {

// Predicates that coincide with the substance set in both corpus models.
constexpr const char* kSubstanceFlags[] = {"inItself", "perSeConceived", "involvesExistence",
                                           "natureRequiresExistence", "absolutelyInfinite"};

CorpusModel build_a12() {
  FiniteModel m(ethica_signature(), "A12CounterModel", {"s1", "s2", "a_shared", "a_only_s1"});
  for (const char* p : kSubstanceFlags) {
    m.set(p, {"s1"});
    m.set(p, {"s2"});
  }
  for (const char* p : {"inAnother", "conceivedThroughAnother"}) {
    m.set(p, {"a_shared"});
    m.set(p, {"a_only_s1"});
  }
  m.set("intellectPerceivesAsEssence", {"s1", "s1"});
  m.set("intellectPerceivesAsEssence", {"s1", "a_shared"});
  m.set("intellectPerceivesAsEssence", {"s1", "a_only_s1"});
  m.set("intellectPerceivesAsEssence", {"s2", "s2"});
  m.set("intellectPerceivesAsEssence", {"s2", "a_shared"});
  m.fill("expressesEternalEssence", true);
  return {"A12CounterModel", std::move(m), "four-element A12 counter-model (PSRSubstance)",
          {FidelityFlag::UniformEternalEssence, FidelityFlag::TwoCategoryCollapse}};
}

CorpusModel build_a15() {
  FiniteModel m(ethica_signature(), "A15CounterModel", {"g1", "g2", "attr_g2"});
  for (const char* p : kSubstanceFlags) {
    m.set(p, {"g1"});
    m.set(p, {"g2"});
  }
  for (const char* p : {"inAnother", "conceivedThroughAnother"}) m.set(p, {"attr_g2"});
  m.set("intellectPerceivesAsEssence", {"g1", "g1"});
  m.set("intellectPerceivesAsEssence", {"g2", "g2"});
  m.set("intellectPerceivesAsEssence", {"g2", "attr_g2"});
  m.fill("expressesEternalEssence", true);
  return {"A15CounterModel", std::move(m), "three-element A15 counter-model (plenitude only)",
          {FidelityFlag::UniformEternalEssence, FidelityFlag::TwoCategoryCollapse}};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct PendingPred {
  std::size_t line;
  std::size_t predicate;
  bool full = false;
  std::vector<std::vector<std::string>> tuples;
};

std::vector<std::vector<std::string>> parse_tuples(std::string_view rest, std::size_t line,
                                                   bool& full) {
  std::vector<std::vector<std::string>> tuples;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
  };
  for (skip_space(); i < rest.size(); skip_space()) {
    if (rest[i] == '*') {
      full = true;
      ++i;
    } else if (rest[i] == '(') {
      const auto close = rest.find(')', i);
      if (close == std::string_view::npos) throw ParseError(line, "unterminated tuple");
      std::vector<std::string> tuple;
      auto inner = rest.substr(i + 1, close - i - 1);
      std::size_t start = 0;
      while (true) {
        const auto comma = inner.find(',', start);
        tuple.emplace_back(trim(inner.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      tuples.push_back(std::move(tuple));
      i = close + 1;
    } else {
      const auto start = i;
      while (i < rest.size() && rest[i] != ' ' && rest[i] != '\t' && rest[i] != '(') ++i;
      tuples.push_back({std::string(rest.substr(start, i - start))});
    }
  }
  if (full && !tuples.empty()) throw ParseError(line, "'*' must be the only entry of a pred line");
  return tuples;
}

std::vector<std::string> labels_line(const std::vector<std::string>& tokens, std::size_t line) {
  std::vector<std::string> labels(tokens.begin() + 1, tokens.end());
  std::vector<std::string> seen;
  for (const auto& l : labels) {
    if (!valid_label(l)) throw ParseError(line, "invalid label '" + l + "'");
    if (std::find(seen.begin(), seen.end(), l) != seen.end()) {
      throw ParseError(line, "duplicate element label '" + l + "'");
    }
    seen.push_back(l);
  }
  return labels;
}

}  // namespace

std::string_view to_string(FidelityFlag flag) {
  return flag == FidelityFlag::UniformEternalEssence ? "F1-uniform-eternal-essence"
                                                     : "F2-two-category-collapse";
}

const CorpusModel& a12_counter_model() {
  static const CorpusModel m = build_a12();
  return m;
}

const CorpusModel& a15_counter_model() {
  static const CorpusModel m = build_a15();
  return m;
}

const std::vector<const CorpusModel*>& corpus() {
  static const std::vector<const CorpusModel*> all = {&a12_counter_model(), &a15_counter_model()};
  return all;
}

const CorpusModel& corpus_model(std::string_view name) {
  for (const auto* m : corpus()) {
    if (m->name == name) return *m;
  }
  throw UnknownNameError("unknown corpus model '" + std::string(name) + "'");
}

FiniteModel parse_model(std::string_view text) {
  const auto signature = ethica_signature();
  std::optional<std::string> name;
  std::optional<std::vector<std::string>> things;
  std::optional<std::vector<std::string>> worlds;
  std::vector<PendingPred> preds;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto tokens = words(line);
    const auto& keyword = tokens.front();
    if (keyword == "pred") {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'pred <name>: ...'");
      const std::string pname(trim(line.substr(4, colon - 4)));
      const auto index = signature->index_of(pname);
      if (!index) throw ParseError(line_no, "unknown predicate '" + pname + "'");
      if (!name) throw ParseError(line_no, "expected 'model <name>' before pred lines");
      if (!things) throw ParseError(line_no, "'things' must be declared before pred lines");
      if (std::any_of(preds.begin(), preds.end(),
                      [&](const PendingPred& p) { return p.predicate == *index; })) {
        throw ParseError(line_no, "duplicate pred line for " + pname);
      }
      PendingPred p{line_no, *index, false, {}};
      p.tuples = parse_tuples(line.substr(colon + 1), line_no, p.full);
      preds.push_back(std::move(p));
    } else if (!name) {
      if (keyword != "model") throw ParseError(line_no, "expected 'model <name>'");
      if (tokens.size() != 2 || !valid_label(tokens[1])) {
        throw ParseError(line_no, "expected 'model <name>'");
      }
      name = tokens[1];
    } else if (keyword == "things") {
      if (things) throw ParseError(line_no, "duplicate 'things' line");
      if (!preds.empty()) throw ParseError(line_no, "'things' must precede pred lines");
      things = labels_line(tokens, line_no);
      if (things->empty()) throw ParseError(line_no, "thing universe must be non-empty");
    } else if (keyword == "worlds") {
      if (worlds) throw ParseError(line_no, "duplicate 'worlds' line");
      if (!preds.empty()) throw ParseError(line_no, "'worlds' must precede pred lines");
      worlds = labels_line(tokens, line_no);
    } else if (keyword == "model") {
      throw ParseError(line_no, "duplicate 'model' line");
    } else {
      throw ParseError(line_no, "unknown keyword '" + keyword + "'");
    }
  }
  if (!name) throw ParseError(line_no, "missing 'model <name>' line");
  if (!things) throw ParseError(line_no, "missing 'things' line");

  FiniteModel model(signature, *name, *things, worlds.value_or(std::vector<std::string>{}));
  for (const auto& p : preds) {
    const auto& decl = signature->at(p.predicate);
    if (p.full) {
      if (tuple_count(decl, model.sizes()) == 0) {
        throw ParseError(p.line, decl.name + ": '*' over an empty universe");
      }
      model.fill(decl.name, true);
      continue;
    }
    for (const auto& tuple : p.tuples) {
      if (tuple.size() != decl.arity()) {
        throw ParseError(p.line, decl.name + " expects " + std::to_string(decl.arity()) +
                                     "-tuples, got " + format_tuple(tuple));
      }
      std::vector<std::size_t> args;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        const Sort sort = decl.argument_sorts[i];
        const auto e = model.find(sort, tuple[i]);
        if (!e) {
          throw ParseError(p.line, "element '" + tuple[i] + "' is not in the " +
                                       std::string(to_string(sort)) + " universe");
        }
        args.push_back(*e);
      }
      model.set(p.predicate, args, true);
    }
  }
  return model;
}

std::string serialize_model(const FiniteModel& model) {
  std::ostringstream os;
  os << "model " << model.name() << '\n';
  os << "things";
  for (const auto& l : model.universe(Sort::Thing)) os << ' ' << l;
  os << '\n';
  if (model.size(Sort::World) > 0) {
    os << "worlds";
    for (const auto& l : model.universe(Sort::World)) os << ' ' << l;
    os << '\n';
  }
  const auto& sig = model.signature();
  for (std::size_t p = 0; p < sig.size(); ++p) {
    const auto count = model.true_count(p);
    if (count == 0) continue;
    const auto& decl = sig.at(p);
    os << "pred " << decl.name << ':';
    const auto total = tuple_count(decl, model.sizes());
    if (count == total) {
      os << " *\n";
      continue;
    }
    const auto& table = model.raw_table(p);
    for (std::size_t i = 0; i < total; ++i) {
      if (!table[i]) continue;
      const auto args = tuple_at(decl, model.sizes(), i);
      os << ' ';
      if (decl.arity() == 1) {
        os << model.universe(decl.argument_sorts[0])[args[0]];
        continue;
      }
      os << '(';
      for (std::size_t k = 0; k < args.size(); ++k) {
        if (k) os << ',';
        os << model.universe(decl.argument_sorts[k])[args[k]];
      }
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Confirmed: return "confirmed";
    case Verdict::PremiseFailure: return "premise-failure";
    case Verdict::TargetNotFalsified: return "target-not-falsified";
  }
  return "?";
}

std::string VerificationReport::verdict_text() const {
  if (verdict == Verdict::PremiseFailure) return "premise-failure(" + failed_premise.value() + ")";
  return std::string(to_string(verdict));
}

std::string format_tuple(const std::vector<std::string>& labels) {
  std::string out = "(";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += labels[i];
  }
  return out + ")";
}

VerificationReport verify(const FiniteModel& model, const std::vector<std::string>& premises,
                          const std::string& target, std::vector<FidelityFlag> fidelity_flags) {
  auto require_sorted = [&](const AxiomEntry& e) {
    if (auto err = check_sorted(e.formula, model.signature())) {
      throw SortError(e.id + ": " + *err);
    }
  };

  VerificationReport report;
  report.model_name = model.name();
  report.target = target;
  report.fidelity_flags = std::move(fidelity_flags);

  for (const auto& entry : axiom_set(premises)) {
    require_sorted(entry);
    const bool holds = evaluate(entry.formula, model);
    report.premises.push_back({entry.id, holds});
    if (!holds && !report.failed_premise) report.failed_premise = entry.id;
  }

  const auto& goal = axiom(target);
  require_sorted(goal);
  report.target_holds = evaluate(goal.formula, model);

  // Peel the outermost universal block.
  struct Binder {
    std::string name;
    Sort sort;
  };
  std::vector<Binder> block;
  const Formula* matrix = &goal.formula;
  while (const auto* q = std::get_if<node::Quantified>(&matrix->node().value)) {
    if (q->quantifier != Quantifier::ForAll) break;
    block.push_back({q->variable, q->sort});
    matrix = &q->body;
  }
  for (const auto& b : block) report.witness_variables.push_back(b.name);

  if (!report.target_holds) {
    std::vector<std::size_t> tuple(block.size(), 0);
    const bool any_empty = std::any_of(block.begin(), block.end(),
                                       [&](const Binder& b) { return model.size(b.sort) == 0; });
    while (!any_empty) {
      Assignment assignment;
      for (std::size_t i = 0; i < block.size(); ++i) {
        assignment.bind(block[i].name, block[i].sort, tuple[i]);
      }
      if (!evaluate(*matrix, model, assignment)) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < block.size(); ++i) {
          labels.push_back(model.universe(block[i].sort)[tuple[i]]);
        }
        report.witnesses.push_back(std::move(labels));
      }
      // Odometer increment, last variable fastest.
      std::size_t k = block.size();
      while (k > 0) {
        --k;
        if (++tuple[k] < model.size(block[k].sort)) break;
        tuple[k] = 0;
        if (k == 0) {
          k = block.size() + 1;
          break;
        }
      }
      if (k == block.size() + 1 || block.empty()) break;
    }
  }

  if (report.failed_premise) {
    report.verdict = Verdict::PremiseFailure;
  } else if (!report.target_holds && !report.witnesses.empty()) {
    report.verdict = Verdict::Confirmed;
  } else {
    report.verdict = Verdict::TargetNotFalsified;
  }
  return report;
}

VerificationReport verify(const CorpusModel& model, const std::vector<std::string>& premises,
                          const std::string& target) {
  return verify(model.model, premises, target, model.fidelity_flags);
}

}  // namespace ethica
