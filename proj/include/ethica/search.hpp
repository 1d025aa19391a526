#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ethica/formula.hpp"
#include "ethica/model.hpp"
#include "ethica/registry.hpp"

namespace ethica {

enum class Pruning { None, Canonical };

/// Default propagation budget per universe size; ETHICA_NODE_BUDGET overrides it.
inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct SearchConfig {
  std::size_t max_thing_size = 4;
  /// Defaults to 2 when any formula mentions World, otherwise 0.
  std::optional<std::size_t> max_world_size;
  /// Predicate names allowed non-empty tables. Defaults to those occurring
  /// in the premises and the target.
  std::optional<std::vector<std::string>> support_predicates;
  Pruning pruning = Pruning::Canonical;
  /// 0 = hardware concurrency.
  std::size_t workers = 0;
  std::optional<std::uint64_t> node_budget;
};

struct SearchStats {
  std::uint64_t candidates_visited = 0;
  std::uint64_t pruned_subtrees = 0;
  std::uint64_t propagations = 0;
  /// Sizes searched to exhaustion, in search order.
  std::vector<UniverseSizes> sizes_exhausted;
  std::vector<std::string> support;
  /// True when some predicates were frozen false.
  bool within_support = false;
  double elapsed_seconds = 0.0;
};

struct Refuted {
  FiniteModel model;
  UniverseSizes size;
};

struct NoCounterexampleUpTo {
  UniverseSizes bound;
};

struct EntailmentVerdict {
  std::variant<Refuted, NoCounterexampleUpTo> outcome;
  SearchStats stats;
  /// The searched bound (worlds = 0 when no formula mentions World).
  UniverseSizes bound;

  bool refuted() const noexcept { return std::holds_alternative<Refuted>(outcome); }
  const Refuted& refutation() const { return std::get<Refuted>(outcome); }
  /// "Refuted(size 2)", "Refuted(1 things / 1 worlds)" or
  /// "NoCounterexampleUpTo(4)"; world counts appear
  /// only when the search used worlds.
  std::string text() const;
};

/// "4" or "3 things / 2 worlds".
std::string describe_bound(UniverseSizes sizes);

std::uint64_t effective_node_budget(const SearchConfig& config);

EntailmentVerdict entails_bounded(const std::vector<Formula>& premises, const Formula& target,
                                  const SearchConfig& config);
EntailmentVerdict entails_bounded(const std::vector<AxiomEntry>& premises,
                                  const AxiomEntry& target, const SearchConfig& config);
/// Selectors as accepted by axiom_set.
EntailmentVerdict entails_bounded(const std::vector<std::string>& premises,
                                  const std::string& target, const SearchConfig& config);

std::optional<Refuted> find_countermodel(const std::vector<std::string>& premises,
                                         const std::string& target, const SearchConfig& config);

/// Least relabelling over all sort-respecting permutations, comparing
/// FiniteModel::encoding(). Elements are renamed e0.. and w0..
FiniteModel canonical_form(const FiniteModel& model);

struct NaivePsrPair {
  std::string x;
  std::string y;
  std::vector<std::string> subset;
};

struct NaivePsrResult {
  bool holds = true;
  std::vector<NaivePsrPair> witnesses;
};

/// ∀ x y, x ≠ y → ∃ φ ⊆ Thing, φ x ∧ ¬φ y, with φ ranging over all subsets
/// of the thing universe.
NaivePsrResult check_naive_psr(const FiniteModel& model);

}  // namespace ethica
