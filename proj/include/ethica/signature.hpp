#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ethica/formula.hpp"

namespace ethica {

struct PredicateDecl {
  std::string name;
  std::vector<Sort> argument_sorts;

  std::size_t arity() const noexcept { return argument_sorts.size(); }
  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

/// Ordered set of predicate declarations. Order is significant: it fixes the
/// table encoding used by canonical forms and by the search.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<PredicateDecl> predicates);

  /// Adds a declaration. Re-adding an identical declaration is a no-op;
  /// re-typing an existing name throws SortError.
  void add(PredicateDecl decl);

  const PredicateDecl* find(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  const PredicateDecl& at(std::size_t index) const { return predicates_.at(index); }
  std::span<const PredicateDecl> predicates() const { return predicates_; }
  std::size_t size() const noexcept { return predicates_.size(); }

 private:
  std::vector<PredicateDecl> predicates_;
};

/// Renders argument sorts as `(Thing, World)`.
std::string describe_sorts(std::span<const Sort> sorts);

}  // namespace ethica
