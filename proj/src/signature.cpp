#include "ethica/signature.hpp"

#include "ethica/error.hpp"

namespace ethica {

Signature::Signature(std::vector<PredicateDecl> predicates) {
  for (auto& p : predicates) add(std::move(p));
}

void Signature::add(PredicateDecl decl) {
  if (decl.arity() < 1 || decl.arity() > 3) {
    throw SortError("predicate " + decl.name + " must have arity 1, 2 or 3");
  }
  if (const auto* existing = find(decl.name)) {
    if (*existing == decl) return;
    throw SortError("predicate " + decl.name + " is already declared as " +
                    describe_sorts(existing->argument_sorts));
  }
  predicates_.push_back(std::move(decl));
}

const PredicateDecl* Signature::find(std::string_view name) const {
  for (const auto& p : predicates_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    if (predicates_[i].name == name) return i;
  }
  return std::nullopt;
}

std::string describe_sorts(std::span<const Sort> sorts) {
  std::string out = "(";
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    if (i) out += ", ";
    out += to_string(sorts[i]);
  }
  return out + ")";
}

}  // namespace ethica
