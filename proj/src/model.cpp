#include "ethica/model.hpp"

#include <algorithm>
#include <set>

#include "ethica/error.hpp"

namespace ethica {

std::size_t tuple_count(const PredicateDecl& decl, UniverseSizes sizes) {
  std::size_t n = 1;
  for (Sort s : decl.argument_sorts) n *= sizes.of(s);
  return n;
}

std::size_t tuple_index(const PredicateDecl& decl, UniverseSizes sizes,
                        std::span<const std::size_t> args) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < decl.arity(); ++i) {
    index = index * sizes.of(decl.argument_sorts[i]) + args[i];
  }
  return index;
}

std::vector<std::size_t> tuple_at(const PredicateDecl& decl, UniverseSizes sizes,
                                  std::size_t index) {
  std::vector<std::size_t> args(decl.arity());
  for (std::size_t i = decl.arity(); i-- > 0;) {
    const std::size_t n = sizes.of(decl.argument_sorts[i]);
    args[i] = index % n;
    index /= n;
  }
  return args;
}

bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(label.front())) return false;
  return std::all_of(label.begin(), label.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

FiniteModel::FiniteModel(std::shared_ptr<const Signature> signature, std::string name,
                         std::vector<std::string> things, std::vector<std::string> worlds)
    : signature_(std::move(signature)),
      name_(std::move(name)),
      things_(std::move(things)),
      worlds_(std::move(worlds)),
      tables_(signature_->size()) {
  if (things_.empty()) throw Error("model " + name_ + ": thing universe must be non-empty");
  for (const auto* universe : {&things_, &worlds_}) {
    std::set<std::string_view> seen;
    for (const auto& label : *universe) {
      if (!valid_label(label)) throw Error("model " + name_ + ": invalid label '" + label + "'");
      if (!seen.insert(label).second) {
        throw Error("model " + name_ + ": duplicate element label '" + label + "'");
      }
    }
  }
}

std::optional<std::size_t> FiniteModel::find(Sort sort, std::string_view label) const {
  const auto& u = universe(sort);
  auto it = std::find(u.begin(), u.end(), label);
  if (it == u.end()) return std::nullopt;
  return static_cast<std::size_t>(it - u.begin());
}

const PredicateDecl& FiniteModel::decl(std::string_view predicate) const {
  const auto* d = signature_->find(predicate);
  if (!d) throw UnknownNameError("unknown predicate '" + std::string(predicate) + "'");
  return *d;
}

std::vector<std::size_t> FiniteModel::resolve(
    const PredicateDecl& d, std::initializer_list<std::string_view> labels) const {
  if (labels.size() != d.arity()) {
    throw SortError(d.name + " expects " + std::to_string(d.arity()) + " argument" +
                    (d.arity() == 1 ? "" : "s"));
  }
  std::vector<std::size_t> args;
  std::size_t i = 0;
  for (auto label : labels) {
    auto idx = find(d.argument_sorts[i++], label);
    if (!idx) throw Error("element '" + std::string(label) + "' is not in the universe");
    args.push_back(*idx);
  }
  return args;
}

bool FiniteModel::holds(std::size_t predicate, std::span<const std::size_t> args) const {
  const auto& table = tables_.at(predicate);
  if (table.empty()) return false;
  return table[tuple_index(signature_->at(predicate), sizes(), args)];
}

bool FiniteModel::holds(std::string_view predicate, std::span<const std::size_t> args) const {
  return holds(*signature_->index_of(decl(predicate).name), args);
}

bool FiniteModel::holds(std::string_view predicate,
                        std::initializer_list<std::string_view> labels) const {
  const auto& d = decl(predicate);
  return holds(*signature_->index_of(d.name), resolve(d, labels));
}

void FiniteModel::set(std::size_t predicate, std::span<const std::size_t> args, bool value) {
  const auto& d = signature_->at(predicate);
  for (std::size_t i = 0; i < d.arity(); ++i) {
    if (args[i] >= size(d.argument_sorts[i])) {
      throw Error(d.name + ": argument " + std::to_string(i) + " out of range");
    }
  }
  auto& table = tables_[predicate];
  if (table.empty()) {
    if (!value) return;
    table.assign(tuple_count(d, sizes()), false);
  }
  table[tuple_index(d, sizes(), args)] = value;
}

void FiniteModel::set(std::string_view predicate, std::initializer_list<std::string_view> labels,
                      bool value) {
  const auto& d = decl(predicate);
  set(*signature_->index_of(d.name), resolve(d, labels), value);
}

void FiniteModel::fill(std::string_view predicate, bool value) {
  const auto& d = decl(predicate);
  const auto index = *signature_->index_of(d.name);
  tables_[index] = value ? std::vector<bool>(tuple_count(d, sizes()), true) : std::vector<bool>{};
}

void FiniteModel::set_raw_table(std::size_t predicate, std::vector<bool> bits) {
  const auto expected = tuple_count(signature_->at(predicate), sizes());
  if (!bits.empty() && bits.size() != expected) {
    throw Error("table for " + signature_->at(predicate).name + " has wrong size");
  }
  if (std::none_of(bits.begin(), bits.end(), [](bool b) { return b; })) bits.clear();
  tables_.at(predicate) = std::move(bits);
}

std::size_t FiniteModel::true_count(std::size_t predicate) const {
  const auto& t = tables_.at(predicate);
  return static_cast<std::size_t>(std::count(t.begin(), t.end(), true));
}

std::vector<bool> FiniteModel::encoding() const {
  std::vector<bool> bits;
  for (std::size_t p = 0; p < signature_->size(); ++p) {
    const auto n = tuple_count(signature_->at(p), sizes());
    const auto& t = tables_[p];
    for (std::size_t i = 0; i < n; ++i) bits.push_back(!t.empty() && t[i]);
  }
  return bits;
}

bool operator==(const FiniteModel& a, const FiniteModel& b) {
  if (a.name_ != b.name_ || a.things_ != b.things_ || a.worlds_ != b.worlds_) return false;
  if (a.signature_ != b.signature_ &&
      !std::equal(a.signature_->predicates().begin(), a.signature_->predicates().end(),
                  b.signature_->predicates().begin(), b.signature_->predicates().end())) {
    return false;
  }
  return a.encoding() == b.encoding();
}

}  // namespace ethica
