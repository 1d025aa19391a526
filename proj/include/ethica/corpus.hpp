#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ethica/model.hpp"

namespace ethica {

enum class FidelityFlag {
  UniformEternalEssence,  // F1: expressesEternalEssence is true everywhere
  TwoCategoryCollapse,    // F2: inAnother tracks "not a substance"
};

std::string_view to_string(FidelityFlag flag);

struct CorpusModel {
  std::string name;
  FiniteModel model;
  std::string provenance;
  std::vector<FidelityFlag> fidelity_flags;
};

/// Two substances sharing a_shared, discriminated by a_only_s1.
const CorpusModel& a12_counter_model();

/// Two gods g1, g2 where only g2 perceives attr_g2.
const CorpusModel& a15_counter_model();

const std::vector<const CorpusModel*>& corpus();

/// Lookup by corpus name ("A12CounterModel", "A15CounterModel").
const CorpusModel& corpus_model(std::string_view name);

/// Parses the line-oriented model format:
///
///     model <name>
///     things <label> ...
///     worlds <label> ...                  (optional)
///     pred <name>: <tuple> <tuple> ...    (zero or more; `*` = full table)
///
/// Tuples are `label`, `(l1,l2)` or `(l1,l2,l3)`. `#` starts a comment.
/// Throws ParseError (with line number) on malformed input, unknown
/// predicates, out-of-universe elements and duplicate labels.
FiniteModel parse_model(std::string_view text);

/// Canonical text form; parse_model(serialize_model(m)) == m.
std::string serialize_model(const FiniteModel& model);

enum class Verdict { Confirmed, PremiseFailure, TargetNotFalsified };

std::string_view to_string(Verdict verdict);

struct PremiseResult {
  std::string id;
  bool holds;
};

struct VerificationReport {
  std::string model_name;
  std::vector<PremiseResult> premises;
  std::string target;
  bool target_holds = false;
  /// Variables of the target's outermost universal block, outermost first.
  std::vector<std::string> witness_variables;
  /// Every falsifying assignment of that block, in universe order.
  std::vector<std::vector<std::string>> witnesses;
  std::vector<FidelityFlag> fidelity_flags;
  Verdict verdict = Verdict::TargetNotFalsified;
  std::optional<std::string> failed_premise;

  /// "confirmed", "premise-failure(A26)" or "target-not-falsified".
  std::string verdict_text() const;
};

VerificationReport verify(const FiniteModel& model, const std::vector<std::string>& premises,
                          const std::string& target,
                          std::vector<FidelityFlag> fidelity_flags = {});

VerificationReport verify(const CorpusModel& model, const std::vector<std::string>& premises,
                          const std::string& target);

/// "(s1, s2, a_shared)"
std::string format_tuple(const std::vector<std::string>& labels);

}  // namespace ethica
