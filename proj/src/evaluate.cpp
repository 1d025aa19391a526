#include "ethica/evaluate.hpp"

#include <algorithm>
#include <sstream>

#include "ethica/error.hpp"

namespace ethica {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class SortChecker {
 public:
  explicit SortChecker(const Signature& signature) : signature_(signature) {}

  void bind(const std::string& name, Sort sort) { scope_.emplace_back(name, sort); }

  std::optional<std::string> check(const Formula& f) {
    return std::visit(
        overloaded{
            [](const node::Truth&) -> std::optional<std::string> { return std::nullopt; },
            [&](const node::Apply& n) -> std::optional<std::string> {
              const auto* decl = signature_.find(n.predicate);
              if (!decl) return "unknown predicate " + n.predicate;
              if (decl->arity() != n.args.size()) {
                return n.predicate + " expects " + std::to_string(decl->arity()) + " argument" +
                       (decl->arity() == 1 ? "" : "s") + ", got " + std::to_string(n.args.size());
              }
              std::vector<Sort> actual;
              for (const auto& a : n.args) {
                auto s = sort_of(a);
                if (!s) return unbound(a);
                actual.push_back(*s);
              }
              if (actual != decl->argument_sorts) {
                return n.predicate + " expects " + describe_sorts(decl->argument_sorts) +
                       ", got " + describe_sorts(actual);
              }
              return std::nullopt;
            },
            [&](const node::Equal& n) -> std::optional<std::string> {
              auto l = sort_of(n.lhs);
              if (!l) return unbound(n.lhs);
              auto r = sort_of(n.rhs);
              if (!r) return unbound(n.rhs);
              if (*l != *r) {
                return "equality " + to_string(n.lhs) + " = " + to_string(n.rhs) +
                       " compares " + std::string(to_string(*l)) + " with " +
                       std::string(to_string(*r));
              }
              return std::nullopt;
            },
            [&](const node::Not& n) { return check(n.body); },
            [&](const node::Junction& n) -> std::optional<std::string> {
              for (const auto& op : n.operands) {
                if (auto e = check(op)) return e;
              }
              return std::nullopt;
            },
            [&](const node::Implies& n) -> std::optional<std::string> {
              if (auto e = check(n.lhs)) return e;
              return check(n.rhs);
            },
            [&](const node::Iff& n) -> std::optional<std::string> {
              if (auto e = check(n.lhs)) return e;
              return check(n.rhs);
            },
            [&](const node::Quantified& n) -> std::optional<std::string> {
              if (lookup(n.variable)) return "variable " + n.variable + " is bound twice";
              scope_.emplace_back(n.variable, n.sort);
              auto e = check(n.body);
              scope_.pop_back();
              return e;
            },
        },
        f.node().value);
  }

 private:
  std::optional<Sort> lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    return std::nullopt;
  }

  std::optional<Sort> sort_of(const Term& t) const {
    if (const auto* c = std::get_if<Constant>(&t)) return c->sort;
    return lookup(std::get<Variable>(t).name);
  }

  static std::string unbound(const Term& t) { return "unbound variable " + to_string(t); }

  const Signature& signature_;
  std::vector<std::pair<std::string, Sort>> scope_;
};

class Evaluator {
 public:
  Evaluator(const FiniteModel& model, Assignment assignment)
      : model_(model), assignment_(std::move(assignment)) {}

  bool eval(const Formula& f) {
    return std::visit(
        overloaded{
            [](const node::Truth& n) { return n.value; },
            [&](const node::Apply& n) {
              const auto index = model_.signature().index_of(n.predicate);
              if (!index) throw EvaluationError("unknown predicate " + n.predicate);
              const auto& decl = model_.signature().at(*index);
              if (decl.arity() != n.args.size()) {
                throw EvaluationError(n.predicate + " expects " + std::to_string(decl.arity()) +
                                      " arguments");
              }
              std::size_t args[3];
              for (std::size_t i = 0; i < n.args.size(); ++i) {
                auto [sort, element] = resolve(n.args[i]);
                if (sort != decl.argument_sorts[i]) {
                  throw EvaluationError(n.predicate + " expects " +
                                        describe_sorts(decl.argument_sorts));
                }
                args[i] = element;
              }
              return model_.holds(*index, std::span<const std::size_t>(args, n.args.size()));
            },
            [&](const node::Equal& n) {
              auto l = resolve(n.lhs);
              auto r = resolve(n.rhs);
              if (l.first != r.first) throw EvaluationError("equality between different sorts");
              return l.second == r.second;
            },
            [&](const node::Not& n) { return !eval(n.body); },
            [&](const node::Junction& n) {
              if (n.connective == Connective::And) {
                return std::all_of(n.operands.begin(), n.operands.end(),
                                   [&](const Formula& op) { return eval(op); });
              }
              return std::any_of(n.operands.begin(), n.operands.end(),
                                 [&](const Formula& op) { return eval(op); });
            },
            [&](const node::Implies& n) { return !eval(n.lhs) || eval(n.rhs); },
            [&](const node::Iff& n) { return eval(n.lhs) == eval(n.rhs); },
            [&](const node::Quantified& n) {
              const std::size_t size = model_.size(n.sort);
              if (size == 0) {
                throw EvaluationError("model " + model_.name() + " has no " +
                                      std::string(to_string(n.sort)) +
                                      " universe; cannot quantify over " + n.variable);
              }
              const bool universal = n.quantifier == Quantifier::ForAll;
              for (std::size_t e = 0; e < size; ++e) {
                assignment_.bind(n.variable, n.sort, e);
                const bool value = eval(n.body);
                assignment_.pop();
                if (value != universal) return !universal;
              }
              return universal;
            },
        },
        f.node().value);
  }

 private:
  std::pair<Sort, std::size_t> resolve(const Term& t) const {
    if (const auto* c = std::get_if<Constant>(&t)) {
      if (c->index >= model_.size(c->sort)) {
        throw EvaluationError("constant " + to_string(t) + " is outside the universe");
      }
      return {c->sort, c->index};
    }
    return assignment_.lookup(std::get<Variable>(t).name);
  }

  const FiniteModel& model_;
  Assignment assignment_;
};

}  // namespace

Assignment& Assignment::bind(std::string variable, Sort sort, std::size_t element) {
  bindings_.push_back({std::move(variable), sort, element});
  return *this;
}

void Assignment::pop() { bindings_.pop_back(); }

std::pair<Sort, std::size_t> Assignment::lookup(const std::string& variable) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
    if (it->variable == variable) return {it->sort, it->element};
  }
  throw EvaluationError("unbound variable " + variable);
}

bool Assignment::contains(const std::string& variable) const {
  return std::any_of(bindings_.begin(), bindings_.end(),
                     [&](const Binding& b) { return b.variable == variable; });
}

std::optional<std::string> check_sorted(const Formula& formula, const Signature& signature,
                                        const std::vector<std::pair<std::string, Sort>>& free) {
  SortChecker checker(signature);
  for (const auto& [name, sort] : free) checker.bind(name, sort);
  return checker.check(formula);
}

bool evaluate(const Formula& formula, const FiniteModel& model, const Assignment& assignment) {
  if (model.size(Sort::World) == 0 && mentions_sort(formula, Sort::World)) {
    throw EvaluationError("formula mentions World but model " + model.name() +
                          " declares no world universe");
  }
  return Evaluator(model, assignment).eval(formula);
}

}  // namespace ethica
