#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ethica/formula.hpp"
#include "ethica/model.hpp"
#include "ethica/signature.hpp"

namespace ethica {

/// Partial map from variables to universe elements. Later bindings shadow
/// earlier ones; looking up an unmapped variable throws.
class Assignment {
 public:
  Assignment() = default;

  Assignment& bind(std::string variable, Sort sort, std::size_t element);
  void pop();

  std::pair<Sort, std::size_t> lookup(const std::string& variable) const;
  bool contains(const std::string& variable) const;

 private:
  struct Binding {
    std::string variable;
    Sort sort;
    std::size_t element;
  };
  std::vector<Binding> bindings_;
};

/// Returns std::nullopt when the formula is well-sorted against the signature
/// and every variable is bound exactly once on each path; otherwise a
/// description of the first offending node. Variables listed in `free` are
/// treated as bound by the caller.
std::optional<std::string> check_sorted(const Formula& formula, const Signature& signature,
                                        const std::vector<std::pair<std::string, Sort>>& free = {});

/// Tarskian truth of `formula` in `model`. Quantifiers expand over the finite
/// universe of their sort; quantifying over an empty World universe throws.
bool evaluate(const Formula& formula, const FiniteModel& model,
              const Assignment& assignment = Assignment{});

}  // namespace ethica
