#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ethica/formula.hpp"
#include "ethica/signature.hpp"

namespace ethica {

/// The fixed signature: ten unary Thing predicates, five binary Thing×Thing
/// predicates, existsAt over Thing×World and causeAt over Thing×Thing×World.
std::shared_ptr<const Signature> ethica_signature();

/// A derived notion. Applying it substitutes the arguments into the body;
/// the result mentions primitives only.
struct Definition {
  std::string name;
  std::vector<std::pair<std::string, Sort>> parameters;
  Formula body;

  Formula apply(std::vector<Term> args) const;
};

/// Substance, Attribute, Mode, IsGod or sameNature; throws UnknownNameError otherwise.
const Definition& definition(std::string_view name);

Formula substance(Term x);
Formula attribute(Term attr, Term bearer);
Formula mode(Term x);
Formula is_god(Term g);
Formula same_nature(Term x, Term y);

enum class Section { SectionI, SectionIIPlaceholder, SectionIII, ModalBridge, PSRCandidate };

enum class AxiomStatus {
  Stated,       // the formula is given symbolically at its source
  DecidedHere,  // only prose is available; the formula is our rendering
};

std::string_view to_string(Section section);
std::string_view to_string(AxiomStatus status);

struct AxiomEntry {
  std::string id;
  Section section;
  Formula formula;
  std::string statement;  // macro-level rendering, e.g. "Attribute(a, s1) → …"
  std::string citation;
  AxiomStatus status;
};

struct AxiomBundle {
  std::string name;
  std::vector<std::string> members;
};

/// All catalogued axioms in catalogue order.
const std::vector<AxiomEntry>& catalogue();
const std::vector<AxiomBundle>& bundles();

const AxiomEntry& axiom(std::string_view id);
bool has_axiom(std::string_view id);

/// Resolves bundle names and axiom ids, keeping first occurrences in order.
std::vector<AxiomEntry> axiom_set(const std::vector<std::string>& selectors);

/// Comma-separated form of the above, e.g. "PSRSubstance,A14". Empty string
/// yields an empty set.
std::vector<AxiomEntry> axiom_set(std::string_view selector);

std::vector<std::string> ids_of(const std::vector<AxiomEntry>& entries);

}  // namespace ethica
