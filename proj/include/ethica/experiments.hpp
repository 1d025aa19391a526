#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ethica/corpus.hpp"
#include "ethica/search.hpp"

namespace ethica {

enum class OutcomeClass {
  FullReduction,
  EqualStrengthTranslation,
  PartialReduction,
  DecompositionOnly,
  FullIrreducibility,
};

std::string_view to_string(OutcomeClass outcome);
/// Human label, e.g. "Partial reduction; full irreducible".
std::string_view outcome_label(OutcomeClass outcome);

/// Premise selectors (ids or bundles) and a target id.
struct Query {
  std::vector<std::string> premises;
  std::string target;
};

std::string describe(const Query& query);

enum class Expect { Refuted, NoCounterexample };

struct Expectation {
  Expect forward;
  std::optional<Expect> backward;
  std::optional<Expect> auxiliary;
  std::vector<Expect> components;
  std::optional<OutcomeClass> outcome;
};

struct ExperimentSpec {
  std::string name;
  std::string axiom;        // table row key
  std::string sigma_label;  // e.g. "PSRSubstance"
  Query forward;
  std::optional<Query> backward;
  /// The converse is declared but has no tested premise set.
  bool backward_open = false;
  /// Restricted form of the target (partial reduction evidence).
  std::optional<Query> auxiliary;
  /// Proper sub-families of the forward premises (decomposition evidence).
  std::vector<Query> components;
  SearchConfig config;
  std::optional<Expectation> expectation;
  std::vector<std::string> notes;
  /// Extra qualifiers printed before "within Σ, bound B" in table rows.
  std::vector<std::string> table_qualifiers;
  bool in_table = false;
  /// Corpus model verified against `witness_query` (forward if unset).
  std::optional<std::string> corpus_witness;
  std::optional<Query> witness_query;
};

/// Verdict evidence consumed by the classifier.
struct Evidence {
  const EntailmentVerdict* forward = nullptr;
  const EntailmentVerdict* backward = nullptr;
  bool backward_open = false;
  const EntailmentVerdict* auxiliary = nullptr;
  std::vector<const EntailmentVerdict*> components;
};

/// Throws InsufficientEvidenceError when no rule applies.
OutcomeClass classify_outcome(const Evidence& evidence);

struct ExperimentResult {
  std::string name;
  ExperimentSpec spec;
  EntailmentVerdict forward;
  std::optional<EntailmentVerdict> backward;
  std::optional<EntailmentVerdict> auxiliary;
  std::vector<EntailmentVerdict> components;
  std::optional<OutcomeClass> outcome;
  std::vector<std::string> caveats;
  std::vector<FidelityFlag> fidelity_flags;
  std::optional<VerificationReport> corpus_verification;
  /// Verifications of every refuting model against its own query.
  bool models_verified = true;
  std::vector<std::string> mismatches;

  bool expectation_met() const { return mismatches.empty(); }
};

/// Bundled fixtures in fixed order.
const std::vector<ExperimentSpec>& bundled_experiments();
const ExperimentSpec& bundled_experiment(std::string_view name);

/// `workers` and `pruning` override the fixture's search configuration.
struct RunOptions {
  std::size_t workers = 0;
  std::optional<Pruning> pruning;
  std::optional<std::uint64_t> node_budget;
};

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

struct RenderOptions {
  bool strict_claims = false;
  bool timing = false;
};

/// Search bound of a fixture: thing bound plus world bound when set.
UniverseSizes search_bound(const ExperimentSpec& spec);

nlohmann::ordered_json to_json(const EntailmentVerdict& verdict, const Query& query,
                               UniverseSizes bound, const RenderOptions& options);
nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const ExperimentResult& result, const RenderOptions& options);
std::string to_markdown(const ExperimentResult& result, const RenderOptions& options);

struct TableRow {
  std::string axiom;
  std::string sigma;
  std::string text;  // outcome label plus caveat suffix, or verdicts under strict claims
  ExperimentResult result;
};

/// Runs the four table experiments (A12, A13, A14, A15 rows).
std::vector<TableRow> reducibility_table(const RunOptions& options = {},
                                         const RenderOptions& render = {});
std::string table_markdown(const std::vector<TableRow>& rows, const RenderOptions& options);
nlohmann::ordered_json table_json(const std::vector<TableRow>& rows, const RenderOptions& options);

struct ProbeResult {
  Query query;
  EntailmentVerdict verdict;
  std::optional<VerificationReport> verification;
};

/// SectionIBridges ∪ {A22} against A12; no expectation attached.
ProbeResult conjecture_probe_full_register(const SearchConfig& config);

}  // namespace ethica
