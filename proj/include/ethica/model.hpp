#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ethica/formula.hpp"
#include "ethica/signature.hpp"

namespace ethica {

/// Number of elements per sort, without labels.
struct UniverseSizes {
  std::size_t things = 1;
  std::size_t worlds = 0;

  std::size_t of(Sort sort) const noexcept { return sort == Sort::Thing ? things : worlds; }
  friend bool operator==(const UniverseSizes&, const UniverseSizes&) = default;
};

/// Number of argument tuples of a predicate over the given universes.
std::size_t tuple_count(const PredicateDecl& decl, UniverseSizes sizes);

/// Row-major position of an argument tuple (first argument varies slowest).
std::size_t tuple_index(const PredicateDecl& decl, UniverseSizes sizes,
                        std::span<const std::size_t> args);

std::vector<std::size_t> tuple_at(const PredicateDecl& decl, UniverseSizes sizes,
                                  std::size_t index);

bool valid_label(std::string_view label);

/// A finite structure over a signature. Predicates whose table was never
/// written are everywhere false.
class FiniteModel {
 public:
  FiniteModel(std::shared_ptr<const Signature> signature, std::string name,
              std::vector<std::string> things, std::vector<std::string> worlds = {});

  const std::string& name() const noexcept { return name_; }
  const Signature& signature() const noexcept { return *signature_; }
  const std::shared_ptr<const Signature>& signature_ptr() const noexcept { return signature_; }

  const std::vector<std::string>& universe(Sort sort) const {
    return sort == Sort::Thing ? things_ : worlds_;
  }
  std::size_t size(Sort sort) const noexcept {
    return sort == Sort::Thing ? things_.size() : worlds_.size();
  }
  UniverseSizes sizes() const noexcept { return {things_.size(), worlds_.size()}; }
  std::optional<std::size_t> find(Sort sort, std::string_view label) const;

  bool holds(std::size_t predicate, std::span<const std::size_t> args) const;
  bool holds(std::string_view predicate, std::span<const std::size_t> args) const;
  bool holds(std::string_view predicate, std::initializer_list<std::string_view> labels) const;

  void set(std::size_t predicate, std::span<const std::size_t> args, bool value = true);
  void set(std::string_view predicate, std::initializer_list<std::string_view> labels,
           bool value = true);
  void fill(std::string_view predicate, bool value);

  /// Bits of the table in tuple order. Empty means "never written" (all false).
  const std::vector<bool>& raw_table(std::size_t predicate) const { return tables_.at(predicate); }
  void set_raw_table(std::size_t predicate, std::vector<bool> bits);
  std::size_t true_count(std::size_t predicate) const;

  /// Tables of all predicates concatenated in signature order.
  std::vector<bool> encoding() const;

  friend bool operator==(const FiniteModel& a, const FiniteModel& b);

 private:
  std::vector<std::size_t> resolve(const PredicateDecl& decl,
                                   std::initializer_list<std::string_view> labels) const;
  const PredicateDecl& decl(std::string_view predicate) const;

  std::shared_ptr<const Signature> signature_;
  std::string name_;
  std::vector<std::string> things_;
  std::vector<std::string> worlds_;
  std::vector<std::vector<bool>> tables_;
};

}  // namespace ethica
