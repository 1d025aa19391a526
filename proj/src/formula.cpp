#include "ethica/formula.hpp"

#include <sstream>
#include <type_traits>

namespace ethica {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Formula make(decltype(Node::value) value) {
  return Formula(std::make_shared<const Node>(Node{std::move(value)}));
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto term = [&](const Term& t) {
    if (const auto* v = std::get_if<Variable>(&t); v && !bound.contains(v->name)) {
      out.insert(v->name);
    }
  };
  std::visit(overloaded{
                 [](const node::Truth&) {},
                 [&](const node::Apply& n) {
                   for (const auto& a : n.args) term(a);
                 },
                 [&](const node::Equal& n) {
                   term(n.lhs);
                   term(n.rhs);
                 },
                 [&](const node::Not& n) { collect_free(n.body, bound, out); },
                 [&](const node::Junction& n) {
                   for (const auto& op : n.operands) collect_free(op, bound, out);
                 },
                 [&](const node::Implies& n) {
                   collect_free(n.lhs, bound, out);
                   collect_free(n.rhs, bound, out);
                 },
                 [&](const node::Iff& n) {
                   collect_free(n.lhs, bound, out);
                   collect_free(n.rhs, bound, out);
                 },
                 [&](const node::Quantified& n) {
                   const bool fresh = bound.insert(n.variable).second;
                   collect_free(n.body, bound, out);
                   if (fresh) bound.erase(n.variable);
                 },
             },
             f.node().value);
}

bool term_mentions(const Term& t, Sort sort) {
  const auto* c = std::get_if<Constant>(&t);
  return c && c->sort == sort;
}

Term substitute_term(const Term& t, std::string_view variable, const Term& replacement) {
  if (const auto* v = std::get_if<Variable>(&t); v && v->name == variable) return replacement;
  return t;
}

bool same_term(const Term& a, const Term& b) { return a == b; }

// Binding strength used by the printer; higher binds tighter.
int precedence(const Formula& f) {
  return std::visit(overloaded{
                        [](const node::Quantified&) { return 0; },
                        [](const node::Iff&) { return 1; },
                        [](const node::Implies&) { return 2; },
                        [](const node::Junction& n) {
                          if (n.operands.empty()) return 6;
                          return n.connective == Connective::Or ? 3 : 4;
                        },
                        [](const node::Not& n) {
                          return std::holds_alternative<node::Equal>(n.body.node().value) ? 6 : 5;
                        },
                        [](const auto&) { return 6; },
                    },
                    f.node().value);
}

class Printer {
 public:
  Printer(const std::vector<std::string>* things, const std::vector<std::string>* worlds)
      : things_(things), worlds_(worlds) {}

  std::string term(const Term& t) const {
    return std::visit(overloaded{
                          [](const Variable& v) { return v.name; },
                          [&](const Constant& c) {
                            const auto* labels = c.sort == Sort::Thing ? things_ : worlds_;
                            if (labels && c.index < labels->size()) return (*labels)[c.index];
                            return std::string(c.sort == Sort::Thing ? "e" : "w") +
                                   std::to_string(c.index);
                          },
                      },
                      t);
  }

  void print(const Formula& f, int context, std::ostream& os) const {
    const bool parens = precedence(f) < context;
    if (parens) os << '(';
    std::visit(overloaded{
                   [&](const node::Truth& n) { os << (n.value ? "True" : "False"); },
                   [&](const node::Apply& n) {
                     os << n.predicate << '(';
                     for (std::size_t i = 0; i < n.args.size(); ++i) {
                       if (i) os << ", ";
                       os << term(n.args[i]);
                     }
                     os << ')';
                   },
                   [&](const node::Equal& n) { os << term(n.lhs) << " = " << term(n.rhs); },
                   [&](const node::Not& n) {
                     if (const auto* eq = std::get_if<node::Equal>(&n.body.node().value)) {
                       os << term(eq->lhs) << " ≠ " << term(eq->rhs);
                     } else {
                       os << "¬";
                       print(n.body, 5, os);
                     }
                   },
                   [&](const node::Junction& n) {
                     if (n.operands.empty()) {
                       os << (n.connective == Connective::And ? "True" : "False");
                       return;
                     }
                     const char* sep = n.connective == Connective::And ? " ∧ " : " ∨ ";
                     const int inner = n.connective == Connective::And ? 4 : 3;
                     for (std::size_t i = 0; i < n.operands.size(); ++i) {
                       if (i) os << sep;
                       print(n.operands[i], inner, os);
                     }
                   },
                   [&](const node::Implies& n) {
                     print(n.lhs, 3, os);
                     os << " → ";
                     print(n.rhs, 2, os);
                   },
                   [&](const node::Iff& n) {
                     print(n.lhs, 2, os);
                     os << " ↔ ";
                     print(n.rhs, 2, os);
                   },
                   [&](const node::Quantified& n) {
                     os << (n.quantifier == Quantifier::ForAll ? "∀ " : "∃ ") << n.variable;
                     const Formula* body = &n.body;
                     // Merge runs of the same quantifier over the same sort.
                     while (const auto* q = std::get_if<node::Quantified>(&body->node().value)) {
                       if (q->quantifier != n.quantifier || q->sort != n.sort) break;
                       os << ' ' << q->variable;
                       body = &q->body;
                     }
                     os << " : " << to_string(n.sort) << ", ";
                     print(*body, 0, os);
                   },
               },
               f.node().value);
    if (parens) os << ')';
  }

 private:
  const std::vector<std::string>* things_;
  const std::vector<std::string>* worlds_;
};

}  // namespace

std::string_view to_string(Sort sort) { return sort == Sort::Thing ? "Thing" : "World"; }

Term var(std::string name) { return Variable{std::move(name)}; }
Term thing(std::size_t index) { return Constant{Sort::Thing, index}; }
Term world(std::size_t index) { return Constant{Sort::World, index}; }

Formula truth(bool value) { return make(node::Truth{value}); }

Formula pred(std::string predicate, std::vector<Term> args) {
  return make(node::Apply{std::move(predicate), std::move(args)});
}

Formula equals(Term lhs, Term rhs) { return make(node::Equal{std::move(lhs), std::move(rhs)}); }

Formula distinct(Term lhs, Term rhs) { return negation(equals(std::move(lhs), std::move(rhs))); }

Formula negation(Formula body) { return make(node::Not{std::move(body)}); }

Formula conjunction(std::vector<Formula> operands) {
  return make(node::Junction{Connective::And, std::move(operands)});
}

Formula disjunction(std::vector<Formula> operands) {
  return make(node::Junction{Connective::Or, std::move(operands)});
}

Formula implies(Formula lhs, Formula rhs) {
  return make(node::Implies{std::move(lhs), std::move(rhs)});
}

Formula iff(Formula lhs, Formula rhs) { return make(node::Iff{std::move(lhs), std::move(rhs)}); }

Formula forall(std::string variable, Sort sort, Formula body) {
  return make(node::Quantified{Quantifier::ForAll, std::move(variable), sort, std::move(body)});
}

Formula exists(std::string variable, Sort sort, Formula body) {
  return make(node::Quantified{Quantifier::Exists, std::move(variable), sort, std::move(body)});
}

Formula forall(std::vector<std::string> variables, Sort sort, Formula body) {
  for (auto it = variables.rbegin(); it != variables.rend(); ++it) {
    body = forall(std::move(*it), sort, std::move(body));
  }
  return body;
}

Formula exists(std::vector<std::string> variables, Sort sort, Formula body) {
  for (auto it = variables.rbegin(); it != variables.rend(); ++it) {
    body = exists(std::move(*it), sort, std::move(body));
  }
  return body;
}

Formula forall(std::initializer_list<const char*> variables, Sort sort, Formula body) {
  return forall(std::vector<std::string>(variables.begin(), variables.end()), sort, std::move(body));
}

Formula exists(std::initializer_list<const char*> variables, Sort sort, Formula body) {
  return exists(std::vector<std::string>(variables.begin(), variables.end()), sort, std::move(body));
}

std::set<std::string> free_variables(const Formula& formula) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(formula, bound, out);
  return out;
}

bool is_closed(const Formula& formula) { return free_variables(formula).empty(); }

std::set<std::string> predicates_in(const Formula& formula) {
  std::set<std::string> out;
  auto walk = [&](auto&& self, const Formula& f) -> void {
    std::visit(overloaded{
                   [](const node::Truth&) {},
                   [&](const node::Apply& n) { out.insert(n.predicate); },
                   [](const node::Equal&) {},
                   [&](const node::Not& n) { self(self, n.body); },
                   [&](const node::Junction& n) {
                     for (const auto& op : n.operands) self(self, op);
                   },
                   [&](const node::Implies& n) {
                     self(self, n.lhs);
                     self(self, n.rhs);
                   },
                   [&](const node::Iff& n) {
                     self(self, n.lhs);
                     self(self, n.rhs);
                   },
                   [&](const node::Quantified& n) { self(self, n.body); },
               },
               f.node().value);
  };
  walk(walk, formula);
  return out;
}

bool mentions_sort(const Formula& formula, Sort sort) {
  return std::visit(
      overloaded{
          [](const node::Truth&) { return false; },
          [&](const node::Apply& n) {
            for (const auto& a : n.args) {
              if (term_mentions(a, sort)) return true;
            }
            return false;
          },
          [&](const node::Equal& n) {
            return term_mentions(n.lhs, sort) || term_mentions(n.rhs, sort);
          },
          [&](const node::Not& n) { return mentions_sort(n.body, sort); },
          [&](const node::Junction& n) {
            for (const auto& op : n.operands) {
              if (mentions_sort(op, sort)) return true;
            }
            return false;
          },
          [&](const node::Implies& n) {
            return mentions_sort(n.lhs, sort) || mentions_sort(n.rhs, sort);
          },
          [&](const node::Iff& n) {
            return mentions_sort(n.lhs, sort) || mentions_sort(n.rhs, sort);
          },
          [&](const node::Quantified& n) { return n.sort == sort || mentions_sort(n.body, sort); },
      },
      formula.node().value);
}

Formula substitute(const Formula& formula, std::string_view variable, const Term& replacement) {
  return std::visit(
      overloaded{
          [&](const node::Truth&) { return formula; },
          [&](const node::Apply& n) {
            std::vector<Term> args;
            args.reserve(n.args.size());
            for (const auto& a : n.args) args.push_back(substitute_term(a, variable, replacement));
            return pred(n.predicate, std::move(args));
          },
          [&](const node::Equal& n) {
            return equals(substitute_term(n.lhs, variable, replacement),
                          substitute_term(n.rhs, variable, replacement));
          },
          [&](const node::Not& n) { return negation(substitute(n.body, variable, replacement)); },
          [&](const node::Junction& n) {
            std::vector<Formula> ops;
            ops.reserve(n.operands.size());
            for (const auto& op : n.operands) ops.push_back(substitute(op, variable, replacement));
            return make(node::Junction{n.connective, std::move(ops)});
          },
          [&](const node::Implies& n) {
            return implies(substitute(n.lhs, variable, replacement),
                           substitute(n.rhs, variable, replacement));
          },
          [&](const node::Iff& n) {
            return iff(substitute(n.lhs, variable, replacement),
                       substitute(n.rhs, variable, replacement));
          },
          [&](const node::Quantified& n) {
            if (n.variable == variable) return formula;
            const auto free_in_body = free_variables(n.body);
            if (!free_in_body.contains(std::string(variable))) return formula;
            std::string binder = n.variable;
            Formula body = n.body;
            const auto* rv = std::get_if<Variable>(&replacement);
            if (rv && rv->name == binder) {
              // Rename the binder so the replacement is not captured.
              std::string fresh = binder + "'";
              while (fresh == rv->name || free_in_body.contains(fresh)) fresh += "'";
              body = substitute(body, binder, var(fresh));
              binder = fresh;
            }
            return make(node::Quantified{n.quantifier, binder, n.sort,
                                         substitute(body, variable, replacement)});
          },
      },
      formula.node().value);
}

bool same_structure(const Formula& a, const Formula& b) {
  const auto& av = a.node().value;
  const auto& bv = b.node().value;
  if (av.index() != bv.index()) return false;
  return std::visit(
      overloaded{
          [&](const node::Truth& n) { return n.value == std::get<node::Truth>(bv).value; },
          [&](const node::Apply& n) {
            const auto& m = std::get<node::Apply>(bv);
            return n.predicate == m.predicate && n.args == m.args;
          },
          [&](const node::Equal& n) {
            const auto& m = std::get<node::Equal>(bv);
            return same_term(n.lhs, m.lhs) && same_term(n.rhs, m.rhs);
          },
          [&](const node::Not& n) { return same_structure(n.body, std::get<node::Not>(bv).body); },
          [&](const node::Junction& n) {
            const auto& m = std::get<node::Junction>(bv);
            if (n.connective != m.connective || n.operands.size() != m.operands.size()) {
              return false;
            }
            for (std::size_t i = 0; i < n.operands.size(); ++i) {
              if (!same_structure(n.operands[i], m.operands[i])) return false;
            }
            return true;
          },
          [&](const node::Implies& n) {
            const auto& m = std::get<node::Implies>(bv);
            return same_structure(n.lhs, m.lhs) && same_structure(n.rhs, m.rhs);
          },
          [&](const node::Iff& n) {
            const auto& m = std::get<node::Iff>(bv);
            return same_structure(n.lhs, m.lhs) && same_structure(n.rhs, m.rhs);
          },
          [&](const node::Quantified& n) {
            const auto& m = std::get<node::Quantified>(bv);
            return n.quantifier == m.quantifier && n.variable == m.variable &&
                   n.sort == m.sort && same_structure(n.body, m.body);
          },
      },
      av);
}

Formula rename_bound_apart(const Formula& formula) {
  std::set<std::string> in_scope = free_variables(formula);
  auto walk = [&](auto&& self, const Formula& f) -> Formula {
    return std::visit(
        overloaded{
            [&](const node::Not& n) { return negation(self(self, n.body)); },
            [&](const node::Junction& n) {
              std::vector<Formula> ops;
              for (const auto& op : n.operands) ops.push_back(self(self, op));
              return make(node::Junction{n.connective, std::move(ops)});
            },
            [&](const node::Implies& n) { return implies(self(self, n.lhs), self(self, n.rhs)); },
            [&](const node::Iff& n) { return iff(self(self, n.lhs), self(self, n.rhs)); },
            [&](const node::Quantified& n) {
              std::string binder = n.variable;
              Formula body = n.body;
              if (in_scope.contains(binder)) {
                const auto body_free = free_variables(n.body);
                std::string fresh = binder + "'";
                while (in_scope.contains(fresh) || body_free.contains(fresh)) fresh += "'";
                body = substitute(body, binder, var(fresh));
                binder = fresh;
              }
              in_scope.insert(binder);
              Formula renamed = self(self, body);
              in_scope.erase(binder);
              return make(node::Quantified{n.quantifier, binder, n.sort, std::move(renamed)});
            },
            [&](const auto&) { return f; },
        },
        f.node().value);
  };
  return walk(walk, formula);
}

std::string to_string(const Formula& formula) {
  std::ostringstream os;
  Printer(nullptr, nullptr).print(formula, 0, os);
  return os.str();
}

std::string to_string(const Formula& formula, const std::vector<std::string>& thing_labels,
                      const std::vector<std::string>& world_labels) {
  std::ostringstream os;
  Printer(&thing_labels, &world_labels).print(formula, 0, os);
  return os.str();
}

std::string to_string(const Term& term) { return Printer(nullptr, nullptr).term(term); }

}  // namespace ethica
