#include "ethica/ground.hpp"

#include <algorithm>

#include "ethica/error.hpp"

namespace ethica {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Ground formula in negation normal form with constants folded away (except
// possibly at the root).
struct PTree {
  enum class Kind : std::uint8_t { Const, Literal, And, Or };
  Kind kind = Kind::Const;
  bool value = true;
  Lit lit{};
  std::vector<PTree> kids;

  static PTree constant(bool v) { return PTree{Kind::Const, v, {}, {}}; }
  static PTree literal(Lit l) { return PTree{Kind::Literal, true, l, {}}; }
};

PTree junction(bool is_and, std::vector<PTree> parts) {
  const auto kind = is_and ? PTree::Kind::And : PTree::Kind::Or;
  std::vector<PTree> kids;
  std::vector<Lit> lits;
  for (auto& p : parts) {
    if (p.kind == PTree::Kind::Const) {
      // Absorbing element short-circuits; neutral element is dropped.
      if (p.value != is_and) return p;
      continue;
    }
    if (p.kind == kind) {
      for (auto& k : p.kids) {
        if (k.kind == PTree::Kind::Literal) lits.push_back(k.lit);
        else kids.push_back(std::move(k));
      }
      continue;
    }
    if (p.kind == PTree::Kind::Literal) {
      lits.push_back(p.lit);
    } else {
      kids.push_back(std::move(p));
    }
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 0; i + 1 < lits.size(); ++i) {
    if (lits[i].var() == lits[i + 1].var()) return PTree::constant(!is_and);
  }
  std::vector<PTree> all;
  all.reserve(lits.size() + kids.size());
  for (Lit l : lits) all.push_back(PTree::literal(l));
  for (auto& k : kids) all.push_back(std::move(k));
  if (all.empty()) return PTree::constant(is_and);
  if (all.size() == 1) return std::move(all.front());
  return PTree{kind, true, {}, std::move(all)};
}

class Expander {
 public:
  Expander(const Signature& signature, const AtomTable& atoms)
      : signature_(signature), atoms_(atoms) {}

  PTree expand(const Formula& f, bool positive) {
    return std::visit(
        overloaded{
            [&](const node::Truth& n) { return PTree::constant(n.value == positive); },
            [&](const node::Apply& n) {
              const auto index = signature_.index_of(n.predicate);
              if (!index) throw SortError("unknown predicate " + n.predicate);
              const auto& decl = signature_.at(*index);
              if (decl.arity() != n.args.size()) {
                throw SortError(n.predicate + " expects " + std::to_string(decl.arity()) +
                                " arguments");
              }
              std::vector<std::size_t> args;
              for (std::size_t i = 0; i < n.args.size(); ++i) {
                const auto c = resolve(n.args[i]);
                if (c.sort != decl.argument_sorts[i]) {
                  throw SortError(n.predicate + " expects " + describe_sorts(decl.argument_sorts));
                }
                args.push_back(c.index);
              }
              const auto v = atoms_.variable(*index, args);
              if (!v) return PTree::constant(!positive);
              return PTree::literal(Lit::make(*v, !positive));
            },
            [&](const node::Equal& n) {
              const auto l = resolve(n.lhs);
              const auto r = resolve(n.rhs);
              if (l.sort != r.sort) throw SortError("equality between different sorts");
              return PTree::constant((l.index == r.index) == positive);
            },
            [&](const node::Not& n) { return expand(n.body, !positive); },
            [&](const node::Junction& n) {
              std::vector<PTree> parts;
              for (const auto& op : n.operands) {
                parts.push_back(expand(op, positive));
                if (parts.back().kind == PTree::Kind::Const) {
                  const bool is_and = (n.connective == Connective::And) == positive;
                  if (parts.back().value != is_and) return parts.back();
                }
              }
              return junction((n.connective == Connective::And) == positive, std::move(parts));
            },
            [&](const node::Implies& n) {
              // a → b  ≡  ¬a ∨ b
              std::vector<PTree> parts;
              parts.push_back(expand(n.lhs, !positive));
              parts.push_back(expand(n.rhs, positive));
              return junction(!positive, std::move(parts));
            },
            [&](const node::Iff& n) {
              // a ↔ b ≡ (a ∧ b) ∨ (¬a ∧ ¬b);  ¬(a ↔ b) ≡ (a ∧ ¬b) ∨ (¬a ∧ b)
              std::vector<PTree> left;
              left.push_back(expand(n.lhs, true));
              left.push_back(expand(n.rhs, positive));
              std::vector<PTree> right;
              right.push_back(expand(n.lhs, false));
              right.push_back(expand(n.rhs, !positive));
              std::vector<PTree> parts;
              parts.push_back(junction(true, std::move(left)));
              parts.push_back(junction(true, std::move(right)));
              return junction(false, std::move(parts));
            },
            [&](const node::Quantified& n) {
              const std::size_t size = atoms_.sizes().of(n.sort);
              if (size == 0) {
                throw EvaluationError("cannot ground quantifier over empty " +
                                      std::string(to_string(n.sort)) + " universe");
              }
              const bool is_and = (n.quantifier == Quantifier::ForAll) == positive;
              std::vector<PTree> parts;
              for (std::size_t e = 0; e < size; ++e) {
                env_.emplace_back(n.variable, Constant{n.sort, e});
                parts.push_back(expand(n.body, positive));
                env_.pop_back();
                if (parts.back().kind == PTree::Kind::Const && parts.back().value != is_and) {
                  return parts.back();
                }
              }
              return junction(is_and, std::move(parts));
            },
        },
        f.node().value);
  }

 private:
  Constant resolve(const Term& t) const {
    if (const auto* c = std::get_if<Constant>(&t)) {
      if (c->index >= atoms_.sizes().of(c->sort)) {
        throw EvaluationError("constant " + to_string(t) + " is outside the universe");
      }
      return *c;
    }
    const auto& name = std::get<Variable>(t).name;
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw EvaluationError("unbound variable " + name);
  }

  const Signature& signature_;
  const AtomTable& atoms_;
  std::vector<std::pair<std::string, Constant>> env_;
};

void add_clause(std::vector<Clause>& clauses, Clause clause) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 0; i + 1 < clause.size(); ++i) {
    if (clause[i].var() == clause[i + 1].var()) return;  // tautology
  }
  clauses.push_back(std::move(clause));
}

class Encoder {
 public:
  explicit Encoder(GroundConstraintSet& set) : set_(set) {}

  void assert_tree(const PTree& t) {
    switch (t.kind) {
      case PTree::Kind::Const:
        if (!t.value) set_.clauses.emplace_back();
        return;
      case PTree::Kind::Literal:
        add_clause(set_.clauses, {t.lit});
        return;
      case PTree::Kind::And:
        for (const auto& k : t.kids) assert_tree(k);
        return;
      case PTree::Kind::Or: {
        Clause clause;
        for (const auto& k : t.kids) clause.push_back(literal_for(k));
        add_clause(set_.clauses, std::move(clause));
        return;
      }
    }
  }

 private:
  Lit literal_for(const PTree& t) {
    if (t.kind == PTree::Kind::Literal) return t.lit;
    // Only And/Or reach here; constants are folded below the root.
    Gate gate{static_cast<std::uint32_t>(set_.variable_count++), t.kind == PTree::Kind::And, {}};
    for (const auto& k : t.kids) gate.inputs.push_back(literal_for(k));
    const Lit out = Lit::make(gate.output);
    Clause big;
    if (gate.conjunction) {
      // out ↔ ∧ inputs
      for (Lit in : gate.inputs) add_clause(set_.clauses, {~out, in});
      big.push_back(out);
      for (Lit in : gate.inputs) big.push_back(~in);
    } else {
      // out ↔ ∨ inputs
      for (Lit in : gate.inputs) add_clause(set_.clauses, {out, ~in});
      big.push_back(~out);
      for (Lit in : gate.inputs) big.push_back(in);
    }
    add_clause(set_.clauses, std::move(big));
    set_.gates.push_back(std::move(gate));
    return out;
  }

  GroundConstraintSet& set_;
};

}  // namespace

AtomTable::AtomTable(const Signature& signature, UniverseSizes sizes,
                     std::vector<std::size_t> support_predicates)
    : signature_(&signature),
      sizes_(sizes),
      support_(std::move(support_predicates)),
      offset_(signature.size()) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  for (std::size_t p : support_) {
    offset_.at(p) = static_cast<std::uint32_t>(total_);
    total_ += tuple_count(signature.at(p), sizes);
  }
}

std::optional<std::uint32_t> AtomTable::variable(std::size_t predicate,
                                                 std::span<const std::size_t> args) const {
  const auto& offset = offset_.at(predicate);
  if (!offset) return std::nullopt;
  return *offset +
         static_cast<std::uint32_t>(tuple_index(signature_->at(predicate), sizes_, args));
}

Atom AtomTable::atom(std::uint32_t variable) const {
  for (std::size_t p : support_) {
    const auto n = tuple_count(signature_->at(p), sizes_);
    if (variable < *offset_[p] + n) {
      return Atom{p, tuple_at(signature_->at(p), sizes_, variable - *offset_[p])};
    }
  }
  throw Error("atom variable out of range");
}

bool GroundConstraintSet::has_empty_clause() const {
  return std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.empty(); });
}

bool GroundConstraintSet::satisfied_by(const std::vector<bool>& atom_values) const {
  std::vector<bool> value(variable_count, false);
  std::copy(atom_values.begin(), atom_values.end(), value.begin());
  auto lit_value = [&](Lit l) { return value[l.var()] != l.negated(); };
  for (const auto& g : gates) {
    bool v = g.conjunction;
    for (Lit in : g.inputs) {
      if (lit_value(in) != g.conjunction) {
        v = !g.conjunction;
        break;
      }
    }
    value[g.output] = v;
  }
  return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), lit_value);
  });
}

Grounder::Grounder(const Signature& signature, UniverseSizes sizes,
                   std::vector<std::size_t> support_predicates)
    : signature_(signature),
      set_{AtomTable(signature, sizes, std::move(support_predicates)), 0, {}, {}} {
  set_.variable_count = set_.atoms.size();
}

void Grounder::assert_impl(const Formula& formula, bool positive) {
  Expander expander(signature_, set_.atoms);
  const PTree tree = expander.expand(formula, positive);
  Encoder(set_).assert_tree(tree);
}

void Grounder::assert_formula(const Formula& formula) { assert_impl(formula, true); }

void Grounder::assert_negation(const Formula& formula) { assert_impl(formula, false); }

GroundConstraintSet Grounder::finish() && { return std::move(set_); }

std::vector<std::size_t> support_of(const std::vector<Formula>& formulas,
                                    const Signature& signature) {
  std::vector<std::size_t> support;
  for (const auto& f : formulas) {
    for (const auto& name : predicates_in(f)) {
      const auto index = signature.index_of(name);
      if (!index) throw SortError("unknown predicate " + name);
      support.push_back(*index);
    }
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

GroundConstraintSet ground(const Formula& formula, const Signature& signature,
                           UniverseSizes sizes) {
  Grounder g(signature, sizes, support_of({formula}, signature));
  g.assert_formula(formula);
  return std::move(g).finish();
}

std::vector<bool> atom_values(const AtomTable& atoms, const FiniteModel& model) {
  std::vector<bool> values(atoms.size());
  for (std::uint32_t v = 0; v < atoms.size(); ++v) {
    const Atom a = atoms.atom(v);
    values[v] = model.holds(a.predicate, a.args);
  }
  return values;
}

bool evaluate_via_grounding(const Formula& formula, const FiniteModel& model) {
  if (model.size(Sort::World) == 0 && mentions_sort(formula, Sort::World)) {
    throw EvaluationError("formula mentions World but model " + model.name() +
                          " declares no world universe");
  }
  const auto set = ground(formula, model.signature(), model.sizes());
  return set.satisfied_by(atom_values(set.atoms, model));
}

}  // namespace ethica
