#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ethica/formula.hpp"
#include "ethica/model.hpp"
#include "ethica/signature.hpp"

namespace ethica {

/// Propositional literal: variable index shifted left once, low bit = negated.
struct Lit {
  std::uint32_t code = 0;

  static Lit make(std::uint32_t var, bool negated = false) { return Lit{var * 2 + negated}; }
  std::uint32_t var() const noexcept { return code >> 1; }
  bool negated() const noexcept { return code & 1; }
  Lit operator~() const noexcept { return Lit{code ^ 1}; }
  friend bool operator==(Lit, Lit) = default;
  friend auto operator<=>(Lit, Lit) = default;
};

using Clause = std::vector<Lit>;

/// Ground atom: predicate index into the signature plus element indices.
struct Atom {
  std::size_t predicate;
  std::vector<std::size_t> args;
};

/// Numbers the ground atoms of the supported predicates. Variables are laid
/// out predicate by predicate in signature order, tuples in row-major order,
/// so variable order coincides with FiniteModel::encoding() restricted to the
/// support.
class AtomTable {
 public:
  AtomTable(const Signature& signature, UniverseSizes sizes,
            std::vector<std::size_t> support_predicates);

  /// Variable for the atom, or nullopt when the predicate is frozen false.
  std::optional<std::uint32_t> variable(std::size_t predicate,
                                        std::span<const std::size_t> args) const;

  std::size_t size() const noexcept { return total_; }
  Atom atom(std::uint32_t variable) const;
  UniverseSizes sizes() const noexcept { return sizes_; }
  const std::vector<std::size_t>& support() const noexcept { return support_; }
  const Signature& signature() const noexcept { return *signature_; }

 private:
  const Signature* signature_;
  UniverseSizes sizes_;
  std::vector<std::size_t> support_;
  std::vector<std::optional<std::uint32_t>> offset_;  // per predicate
  std::size_t total_ = 0;
};

/// Auxiliary variable defined as the conjunction or disjunction of inputs.
struct Gate {
  std::uint32_t output;
  bool conjunction;
  std::vector<Lit> inputs;
};

/// Clausal form of ground formulas over one fixed universe. Atom variables
/// come first (0 .. atoms.size()-1); each auxiliary variable is fully defined
/// by exactly one gate, and gates are listed inputs-before-outputs.
struct GroundConstraintSet {
  AtomTable atoms;
  std::size_t variable_count = 0;
  std::vector<Gate> gates;
  std::vector<Clause> clauses;

  bool has_empty_clause() const;

  /// Truth value of the clause set once atom values are fixed (gate outputs
  /// are computed from their definitions).
  bool satisfied_by(const std::vector<bool>& atom_values) const;
};

/// Accumulates closed formulas into one GroundConstraintSet.
class Grounder {
 public:
  Grounder(const Signature& signature, UniverseSizes sizes,
           std::vector<std::size_t> support_predicates);

  void assert_formula(const Formula& formula);
  void assert_negation(const Formula& formula);

  GroundConstraintSet finish() &&;

 private:
  struct Impl;
  void assert_impl(const Formula& formula, bool positive);

  const Signature& signature_;
  GroundConstraintSet set_;
};

/// Support = every signature predicate occurring in the formula.
GroundConstraintSet ground(const Formula& formula, const Signature& signature,
                           UniverseSizes sizes);

/// Signature indices (ascending) of the predicates occurring in any formula.
std::vector<std::size_t> support_of(const std::vector<Formula>& formulas,
                                    const Signature& signature);

/// Atom values read off the model's tables, in AtomTable order.
std::vector<bool> atom_values(const AtomTable& atoms, const FiniteModel& model);

/// Grounds the closed formula on the model's universes and evaluates the
/// resulting clause set with the model's tables.
bool evaluate_via_grounding(const Formula& formula, const FiniteModel& model);

}  // namespace ethica
