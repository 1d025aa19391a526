#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ethica {

/// The two sorts of the language. Worlds only exist in models that declare them.
enum class Sort : std::uint8_t { Thing, World };

std::string_view to_string(Sort sort);

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// A universe element referenced directly by sort and position.
struct Constant {
  Sort sort = Sort::Thing;
  std::size_t index = 0;
  friend bool operator==(const Constant&, const Constant&) = default;
};

using Term = std::variant<Variable, Constant>;

Term var(std::string name);
Term thing(std::size_t index);
Term world(std::size_t index);

struct Node;

/// Immutable, cheaply copyable first-order formula. Copies share structure.
class Formula {
 public:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

enum class Connective : std::uint8_t { And, Or };
enum class Quantifier : std::uint8_t { ForAll, Exists };

namespace node {

struct Truth {
  bool value;
};

struct Apply {
  std::string predicate;
  std::vector<Term> args;
};

struct Equal {
  Term lhs;
  Term rhs;
};

struct Not {
  Formula body;
};

/// n-ary conjunction or disjunction; an empty And is true, an empty Or false.
struct Junction {
  Connective connective;
  std::vector<Formula> operands;
};

struct Implies {
  Formula lhs;
  Formula rhs;
};

struct Iff {
  Formula lhs;
  Formula rhs;
};

struct Quantified {
  Quantifier quantifier;
  std::string variable;
  Sort sort;
  Formula body;
};

}  // namespace node

struct Node {
  std::variant<node::Truth, node::Apply, node::Equal, node::Not, node::Junction,
               node::Implies, node::Iff, node::Quantified>
      value;
};

Formula truth(bool value);
Formula pred(std::string predicate, std::vector<Term> args);
Formula equals(Term lhs, Term rhs);
Formula distinct(Term lhs, Term rhs);
Formula negation(Formula body);
Formula conjunction(std::vector<Formula> operands);
Formula disjunction(std::vector<Formula> operands);
Formula implies(Formula lhs, Formula rhs);
Formula iff(Formula lhs, Formula rhs);
Formula forall(std::string variable, Sort sort, Formula body);
Formula exists(std::string variable, Sort sort, Formula body);
/// Nested quantifiers, outermost first: forall({"x","y"}, s, f) = ∀x ∀y f.
Formula forall(std::vector<std::string> variables, Sort sort, Formula body);
Formula exists(std::vector<std::string> variables, Sort sort, Formula body);
Formula forall(std::initializer_list<const char*> variables, Sort sort, Formula body);
Formula exists(std::initializer_list<const char*> variables, Sort sort, Formula body);

std::set<std::string> free_variables(const Formula& formula);
bool is_closed(const Formula& formula);

/// Names of all predicates applied anywhere in the formula.
std::set<std::string> predicates_in(const Formula& formula);

/// True when the formula quantifies over `sort` or contains a constant of it.
bool mentions_sort(const Formula& formula, Sort sort);

/// Capture-avoiding substitution of `replacement` for free occurrences of `variable`.
Formula substitute(const Formula& formula, std::string_view variable, const Term& replacement);

/// Renames binders that shadow an enclosing binder or a free variable, so
/// every variable is bound at most once on each path.
Formula rename_bound_apart(const Formula& formula);

/// Structural equality (binder names included).
bool same_structure(const Formula& a, const Formula& b);

/// Unicode rendering, e.g. `∀ x : Thing, inItself(x) ∨ inAnother(x)`.
/// Constants print as e<i> / w<i> unless labels are supplied.
std::string to_string(const Formula& formula);
std::string to_string(const Formula& formula, const std::vector<std::string>& thing_labels,
                      const std::vector<std::string>& world_labels);
std::string to_string(const Term& term);

}  // namespace ethica
