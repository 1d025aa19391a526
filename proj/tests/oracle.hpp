#pragma once

// Test-only oracles. Nothing here calls the grounder or the solver.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ethica/evaluate.hpp"
#include "ethica/formula.hpp"
#include "ethica/model.hpp"
#include "ethica/registry.hpp"

namespace oracle {

using namespace ethica;

inline std::vector<std::string> labels(char prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Enumerates every table assignment of `support` over the given sizes in
/// lexicographic order of the encoding (first bit most significant) and
/// returns the first model satisfying all premises and falsifying the target,
/// judged by the evaluator alone.
inline std::optional<FiniteModel> least_countermodel(const std::vector<Formula>& premises,
                                                     const Formula& target, UniverseSizes sizes,
                                                     const std::vector<std::string>& support) {
  const auto sig = ethica_signature();
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (predicate, tuple)
  std::vector<std::size_t> preds;
  for (std::size_t p = 0; p < sig->size(); ++p) {
    for (const auto& name : support) {
      if (sig->at(p).name == name) preds.push_back(p);
    }
  }
  for (auto p : preds) {
    for (std::size_t t = 0; t < tuple_count(sig->at(p), sizes); ++t) slots.emplace_back(p, t);
  }
  const std::size_t n = slots.size();
  if (n > 24) throw std::runtime_error("oracle space too large");
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    FiniteModel m(sig, "oracle", labels('e', sizes.things), labels('w', sizes.worlds));
    for (auto p : preds) {
      std::vector<bool> bits(tuple_count(sig->at(p), sizes), false);
      for (std::size_t i = 0; i < n; ++i) {
        if (slots[i].first == p) bits[slots[i].second] = (code >> (n - 1 - i)) & 1;
      }
      m.set_raw_table(p, bits);
    }
    bool ok = !evaluate(target, m);
    for (std::size_t i = 0; ok && i < premises.size(); ++i) ok = evaluate(premises[i], m);
    if (ok) return m;
  }
  return std::nullopt;
}

inline std::vector<Formula> formulas_of(const std::vector<std::string>& selectors) {
  std::vector<Formula> out;
  for (const auto& e : axiom_set(selectors)) out.push_back(e.formula);
  return out;
}

/// Model with every table filled independently with probability `density`.
inline FiniteModel random_model(std::mt19937_64& rng, UniverseSizes sizes, double density = 0.4,
                                std::string name = "random") {
  const auto sig = ethica_signature();
  FiniteModel m(sig, std::move(name), labels('e', sizes.things), labels('w', sizes.worlds));
  std::bernoulli_distribution bit(density);
  for (std::size_t p = 0; p < sig->size(); ++p) {
    std::vector<bool> bits(tuple_count(sig->at(p), sizes));
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bit(rng);
    m.set_raw_table(p, bits);
  }
  return m;
}

/// Applies a thing permutation to a model, keeping labels in place.
inline FiniteModel permuted(const FiniteModel& m, const std::vector<std::size_t>& thing_perm) {
  const auto& sig = m.signature();
  FiniteModel out(m.signature_ptr(), m.name(), m.universe(Sort::Thing), m.universe(Sort::World));
  for (std::size_t p = 0; p < sig.size(); ++p) {
    const auto& decl = sig.at(p);
    for (std::size_t t = 0; t < tuple_count(decl, m.sizes()); ++t) {
      auto args = tuple_at(decl, m.sizes(), t);
      if (!m.holds(p, args)) continue;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (decl.argument_sorts[i] == Sort::Thing) args[i] = thing_perm[args[i]];
      }
      out.set(p, args, true);
    }
  }
  return out;
}

/// Random closed formula over Thing (and World when `worlds`), with fresh
/// binder names so that every variable is bound once per path.
class FormulaGen {
 public:
  FormulaGen(std::mt19937_64& rng, bool worlds) : rng_(rng), worlds_(worlds) {}

  Formula closed(int depth) {
    scope_.clear();
    counter_ = 0;
    return gen(depth);
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::optional<std::string> var_of(Sort s) {
    std::vector<std::string> c;
    for (const auto& [name, sort] : scope_) {
      if (sort == s) c.push_back(name);
    }
    if (c.empty()) return std::nullopt;
    return c[pick(static_cast<int>(c.size()))];
  }

  Formula atom() {
    const auto t1 = var_of(Sort::Thing);
    if (!t1) return truth(pick(2) == 0);
    const auto t2 = var_of(Sort::Thing);
    switch (pick(worlds_ ? 6 : 5)) {
      case 0: return pred("inItself", {var(*t1)});
      case 1: return pred("perSeConceived", {var(*t1)});
      case 2: return pred("intellectPerceivesAsEssence", {var(*t1), var(*t2)});
      case 3: return equals(var(*t1), var(*t2));
      case 4: return pred("cause", {var(*t2), var(*t1)});
      default: {
        const auto w = var_of(Sort::World);
        if (!w) return pred("inAnother", {var(*t1)});
        return pick(2) ? pred("existsAt", {var(*t1), var(*w)})
                       : pred("causeAt", {var(*t1), var(*t2), var(*w)});
      }
    }
  }

  Formula gen(int depth) {
    if (depth <= 0) return atom();
    switch (pick(8)) {
      case 0: return negation(gen(depth - 1));
      case 1: return conjunction({gen(depth - 1), gen(depth - 1)});
      case 2: return disjunction({gen(depth - 1), gen(depth - 1)});
      case 3: return implies(gen(depth - 1), gen(depth - 1));
      case 4: return iff(gen(depth - 1), gen(depth - 1));
      case 5:
      case 6:
      case 7: {
        const Sort s = worlds_ && pick(3) == 0 ? Sort::World : Sort::Thing;
        const std::string name = (s == Sort::Thing ? "x" : "w") + std::to_string(counter_++);
        scope_.emplace_back(name, s);
        Formula body = gen(depth - 1);
        scope_.pop_back();
        return pick(2) ? forall(name, s, body) : exists(name, s, body);
      }
    }
    return atom();
  }

  std::mt19937_64& rng_;
  bool worlds_;
  std::vector<std::pair<std::string, Sort>> scope_;
  int counter_ = 0;
};

}  // namespace oracle
