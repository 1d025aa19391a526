#include "ethica/registry.hpp"

#include <algorithm>
#include <set>

#include "ethica/error.hpp"

namespace ethica {

namespace {

constexpr Sort T = Sort::Thing;
constexpr Sort W = Sort::World;

Formula p1(const char* name, Term a) { return pred(name, {std::move(a)}); }
Formula p2(const char* name, Term a, Term b) { return pred(name, {std::move(a), std::move(b)}); }

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = [] {
    std::vector<Definition> d;
    d.reserve(5);  // `attr` below must stay valid
    d.push_back({"Substance",
                 {{"x", T}},
                 conjunction({p1("inItself", var("x")), p1("perSeConceived", var("x"))})});
    d.push_back({"Attribute",
                 {{"a", T}, {"s", T}},
                 conjunction({d[0].apply({var("s")}),
                              p2("intellectPerceivesAsEssence", var("s"), var("a"))})});
    d.push_back({"Mode",
                 {{"x", T}},
                 conjunction({p1("inAnother", var("x")), p1("conceivedThroughAnother", var("x"))})});
    const Definition& attr = d[1];
    d.push_back({"IsGod",
                 {{"g", T}},
                 conjunction({d[0].apply({var("g")}), p1("absolutelyInfinite", var("g")),
                              exists("a", T, attr.apply({var("a"), var("g")})),
                              forall("a", T,
                                     implies(attr.apply({var("a"), var("g")}),
                                             p2("expressesEternalEssence", var("g"), var("a"))))})});
    d.push_back({"sameNature",
                 {{"x", T}, {"y", T}},
                 exists("a", T,
                        conjunction({attr.apply({var("a"), var("x")}),
                                     attr.apply({var("a"), var("y")})}))});
    return d;
  }();
  return defs;
}

struct Draft {
  const char* id;
  Section section;
  Formula formula;
  const char* statement;
  const char* citation;
  AxiomStatus status;
};

std::vector<AxiomEntry> build_catalogue() {
  using S = Section;
  using St = AxiomStatus;
  const Term x = var("x"), y = var("y"), a = var("a"), s = var("s"), g = var("g");
  const Term s1 = var("s1"), s2 = var("s2"), g1 = var("g1"), g2 = var("g2");
  const Term c = var("c"), e = var("e"), w = var("w");

  const Draft drafts[] = {
      {"A1", S::SectionI, forall("x", T, disjunction({p1("inItself", x), p1("inAnother", x)})),
       "∀ x, inItself(x) ∨ inAnother(x)", "Ethica I Ax. 1", St::DecidedHere},
      {"A1e", S::SectionI,
       forall("x", T, negation(conjunction({p1("inItself", x), p1("inAnother", x)}))),
       "∀ x, ¬(inItself(x) ∧ inAnother(x))", "exclusive reading of Ethica I Ax. 1", St::Stated},
      {"A8", S::SectionI, forall("x", T, iff(p1("inItself", x), p1("perSeConceived", x))),
       "∀ x, inItself(x) ↔ perSeConceived(x)", "parallelism of Ethica I Def. 3", St::Stated},
      {"A9", S::SectionI,
       forall("x", T, iff(p1("inAnother", x), p1("conceivedThroughAnother", x))),
       "∀ x, inAnother(x) ↔ conceivedThroughAnother(x)", "parallelism of Ethica I Def. 5",
       St::Stated},
      {"A10", S::SectionI,
       forall({"s", "a"}, T, implies(attribute(a, s), p1("perSeConceived", a))),
       "∀ s a, Attribute(a, s) → perSeConceived(a)", "attribute conception bridge, Ethica I Def. 4",
       St::DecidedHere},
      {"A11", S::SectionI,
       forall("x", T, iff(p1("involvesExistence", x), p1("natureRequiresExistence", x))),
       "∀ x, involvesExistence(x) ↔ natureRequiresExistence(x)", "causa sui clause, Ethica I Def. 1",
       St::Stated},
      {"A12", S::SectionIII,
       forall({"s1", "s2", "a"}, T,
              implies(attribute(a, s1), implies(attribute(a, s2), equals(s1, s2)))),
       "∀ s1 s2 a, Attribute(a, s1) → Attribute(a, s2) → s1 = s2",
       "ax_substanceIdByAttribute; content of Ethica I P5", St::Stated},
      {"A13", S::SectionIII, forall("s", T, implies(substance(s), p1("involvesExistence", s))),
       "∀ s, Substance(s) → involvesExistence(s)", "content of Ethica I P7", St::DecidedHere},
      {"A14", S::SectionIII, forall("s", T, implies(substance(s), exists("a", T, attribute(a, s)))),
       "∀ s, Substance(s) → ∃ a, Attribute(a, s)", "prerequisite of Ethica I P14", St::DecidedHere},
      {"A15", S::SectionIII,
       forall({"g", "s", "a"}, T,
              implies(is_god(g), implies(substance(s), implies(attribute(a, s), attribute(a, g))))),
       "∀ g s a, IsGod(g) → Substance(s) → Attribute(a, s) → Attribute(a, g)",
       "ax_IsGod_has_attribute_of; universality premise of Ethica I P14", St::Stated},
      {"A18", S::ModalBridge,
       forall("x", T, iff(p1("involvesExistence", x), forall("w", W, p2("existsAt", x, w)))),
       "∀ x, involvesExistence(x) ↔ ∀ w, existsAt(x, w)", "ModalEthicaAxioms bridge", St::Stated},
      {"A19", S::ModalBridge, forall("x", T, iff(p1("perSeConceived", x), p2("conceptualDep", x, x))),
       "∀ x, perSeConceived(x) ↔ conceptualDep(x, x)", "ConceptualStructure bridge",
       St::DecidedHere},
      {"A20", S::ModalBridge,
       forall("x", T,
              iff(p1("conceivedThroughAnother", x),
                  exists("y", T, conjunction({distinct(y, x), p2("conceptualDep", x, y)})))),
       "∀ x, conceivedThroughAnother(x) ↔ ∃ y, y ≠ x ∧ conceptualDep(x, y)",
       "ConceptualStructure bridge", St::DecidedHere},
      {"A21", S::ModalBridge,
       forall({"c", "e"}, T,
              iff(p2("cause", c, e), forall("w", W, pred("causeAt", {c, e, w})))),
       "∀ c e, cause(c, e) ↔ ∀ w, causeAt(c, e, w)", "world-uniform cause bridge (ModalCausalWorld)",
       St::DecidedHere},
      {"A3m", S::ModalBridge,
       forall({"c", "e"}, T, forall("w", W, implies(pred("causeAt", {c, e, w}), p2("existsAt", e, w)))),
       "∀ c e w, causeAt(c, e, w) → existsAt(e, w)",
       "Ethica I Ax. 3 bridge (ModalCausalWorld)", St::DecidedHere},
      {"A22", S::PSRCandidate,
       forall({"s1", "s2"}, T,
              implies(substance(s1),
                      implies(substance(s2),
                              implies(distinct(s1, s2),
                                      exists("a", T,
                                             disjunction({conjunction({attribute(a, s1),
                                                                       negation(attribute(a, s2))}),
                                                          conjunction({attribute(a, s2),
                                                                       negation(attribute(a, s1))})})))))),
       "∀ s1 s2, Substance(s1) → Substance(s2) → s1 ≠ s2 → ∃ a, (Attribute(a, s1) ∧ ¬Attribute(a, s2)) "
       "∨ (Attribute(a, s2) ∧ ¬Attribute(a, s1))",
       "ax_PSR_substance_distinguishability (PSRSubstance)", St::Stated},
      {"A23", S::PSRCandidate,
       forall("s", T, implies(substance(s), forall("w", W, pred("causeAt", {s, s, w})))),
       "∀ s w, Substance(s) → causeAt(s, s, w)", "PSRSelfCause", St::DecidedHere},
      {"A24", S::PSRCandidate,
       forall("s", T,
              implies(substance(s), exists("a", T, p2("intellectPerceivesAsEssence", s, a)))),
       "∀ s, Substance(s) → ∃ a, intellectPerceivesAsEssence(s, a)", "PSREssencePerception",
       St::DecidedHere},
      {"A25", S::PSRCandidate,
       forall({"a", "s"}, T,
              implies(substance(s),
                      implies(attribute(a, s),
                              exists("g", T, conjunction({is_god(g), attribute(a, g)}))))),
       "∀ a s, Substance(s) → Attribute(a, s) → ∃ g, IsGod(g) ∧ Attribute(a, g)",
       "ax_plenitude_attribute (PSRPlenitude)", St::Stated},
      {"A26", S::PSRCandidate,
       forall({"g1", "g2"}, T, implies(is_god(g1), implies(is_god(g2), equals(g1, g2)))),
       "∀ g1 g2, IsGod(g1) → IsGod(g2) → g1 = g2", "ax_god_unique (PSRPlenitude)", St::Stated},
      {"PropV_allshared", S::SectionIII,
       forall({"s1", "s2"}, T,
              implies(substance(s1),
                      implies(substance(s2),
                              implies(forall("a", T, iff(attribute(a, s1), attribute(a, s2))),
                                      equals(s1, s2))))),
       "∀ s1 s2, Substance(s1) → Substance(s2) → (∀ a, Attribute(a, s1) ↔ Attribute(a, s2)) → s1 = s2",
       "prop_5_demote_via_PSR_all_attributes (all-shared form of Ethica I P5)", St::Stated},
  };

  std::vector<AxiomEntry> out;
  for (const auto& d : drafts) {
    out.push_back({d.id, d.section, rename_bound_apart(d.formula), d.statement, d.citation,
                   d.status});
  }
  return out;
}

}  // namespace

std::shared_ptr<const Signature> ethica_signature() {
  static const auto sig = [] {
    std::vector<PredicateDecl> decls;
    for (const char* name :
         {"inItself", "inAnother", "perSeConceived", "conceivedThroughAnother", "involvesExistence",
          "natureRequiresExistence", "absolutelyInfinite", "freelyExistent", "constrained",
          "eternal"}) {
      decls.push_back({name, {T}});
    }
    for (const char* name : {"limitedBy", "intellectPerceivesAsEssence", "expressesEternalEssence",
                             "conceptualDep", "cause"}) {
      decls.push_back({name, {T, T}});
    }
    decls.push_back({"existsAt", {T, W}});
    decls.push_back({"causeAt", {T, T, W}});
    return std::make_shared<const Signature>(std::move(decls));
  }();
  return sig;
}

Formula Definition::apply(std::vector<Term> args) const {
  if (args.size() != parameters.size()) {
    throw SortError(name + " expects " + std::to_string(parameters.size()) + " arguments");
  }
  // Two-phase substitution so that argument variables named like parameters
  // are not substituted twice.
  Formula f = body;
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    f = substitute(f, parameters[i].first, var("%" + std::to_string(i)));
  }
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    f = substitute(f, "%" + std::to_string(i), args[i]);
  }
  return f;
}

const Definition& definition(std::string_view name) {
  for (const auto& d : definitions()) {
    if (d.name == name) return d;
  }
  throw UnknownNameError("unknown definition '" + std::string(name) + "'");
}

Formula substance(Term x) { return definition("Substance").apply({std::move(x)}); }
Formula attribute(Term attr, Term bearer) {
  return definition("Attribute").apply({std::move(attr), std::move(bearer)});
}
Formula mode(Term x) { return definition("Mode").apply({std::move(x)}); }
Formula is_god(Term g) { return definition("IsGod").apply({std::move(g)}); }
Formula same_nature(Term x, Term y) {
  return definition("sameNature").apply({std::move(x), std::move(y)});
}

std::string_view to_string(Section section) {
  switch (section) {
    case Section::SectionI: return "SectionI";
    case Section::SectionIIPlaceholder: return "SectionII-placeholder";
    case Section::SectionIII: return "SectionIII";
    case Section::ModalBridge: return "ModalBridge";
    case Section::PSRCandidate: return "PSRCandidate";
  }
  return "?";
}

std::string_view to_string(AxiomStatus status) {
  return status == AxiomStatus::Stated ? "stated" : "formula-decided-here";
}

const std::vector<AxiomEntry>& catalogue() {
  static const std::vector<AxiomEntry> entries = build_catalogue();
  return entries;
}

const std::vector<AxiomBundle>& bundles() {
  static const std::vector<AxiomBundle> b = {
      {"PSRSubstance", {"A22"}},
      {"PSRPlenitude", {"A25", "A26"}},
      {"PSRSelfCause", {"A23"}},
      {"PSREssencePerception", {"A24"}},
      {"SectionIBridges", {"A1", "A1e", "A8", "A9", "A10", "A11"}},
      {"ModalBridges", {"A18", "A3m", "A21"}},
  };
  return b;
}

bool has_axiom(std::string_view id) {
  const auto& c = catalogue();
  return std::any_of(c.begin(), c.end(), [&](const AxiomEntry& e) { return e.id == id; });
}

const AxiomEntry& axiom(std::string_view id) {
  for (const auto& e : catalogue()) {
    if (e.id == id) return e;
  }
  throw UnknownNameError("unknown axiom id '" + std::string(id) + "'");
}

std::vector<AxiomEntry> axiom_set(const std::vector<std::string>& selectors) {
  std::vector<AxiomEntry> out;
  std::set<std::string> seen;
  auto add = [&](const std::string& id) {
    if (seen.insert(id).second) out.push_back(axiom(id));
  };
  for (const auto& sel : selectors) {
    const auto& b = bundles();
    auto it = std::find_if(b.begin(), b.end(), [&](const AxiomBundle& x) { return x.name == sel; });
    if (it != b.end()) {
      for (const auto& id : it->members) add(id);
    } else if (has_axiom(sel)) {
      add(sel);
    } else {
      throw UnknownNameError("unknown bundle or axiom id '" + sel + "'");
    }
  }
  return out;
}

std::vector<AxiomEntry> axiom_set(std::string_view selector) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= selector.size()) {
    const auto comma = selector.find(',', start);
    auto piece = selector.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                        : comma - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (!piece.empty()) parts.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return axiom_set(parts);
}

std::vector<std::string> ids_of(const std::vector<AxiomEntry>& entries) {
  std::vector<std::string> ids;
  for (const auto& e : entries) ids.push_back(e.id);
  return ids;
}

}  // namespace ethica
