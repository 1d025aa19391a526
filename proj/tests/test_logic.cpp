#include <doctest.h>

#include "ethica/corpus.hpp"
#include "ethica/error.hpp"
#include "ethica/evaluate.hpp"
#include "ethica/ground.hpp"
#include "ethica/registry.hpp"

using namespace ethica;

namespace {

const Signature& sig() { return *ethica_signature(); }

FiniteModel blank(std::size_t things, std::size_t worlds = 0) {
  std::vector<std::string> t, w;
  for (std::size_t i = 0; i < things; ++i) t.push_back("t" + std::to_string(i));
  for (std::size_t i = 0; i < worlds; ++i) w.push_back("w" + std::to_string(i));
  return FiniteModel(ethica_signature(), "blank", t, w);
}

}  // namespace

TEST_CASE("printer") {
  const auto f = forall({"x", "y"}, Sort::Thing,
                        implies(pred("inItself", {var("x")}), distinct(var("x"), var("y"))));
  CHECK(to_string(f) == "∀ x y : Thing, inItself(x) → x ≠ y");
  CHECK(to_string(conjunction({pred("inItself", {thing(0)}),
                               disjunction({pred("inAnother", {thing(1)}), truth(false)})})) ==
        "inItself(e0) ∧ (inAnother(e1) ∨ False)");
  CHECK(to_string(axiom("A1").formula) == "∀ x : Thing, inItself(x) ∨ inAnother(x)");
}

TEST_CASE("check_sorted") {
  CHECK_FALSE(check_sorted(axiom("A12").formula, sig()));
  const auto arity = check_sorted(
      forall({"x", "y"}, Sort::Thing, pred("inItself", {var("x"), var("y")})), sig());
  REQUIRE(arity);
  CHECK(arity->find("inItself expects 1 argument") != std::string::npos);

  const auto sorts =
      check_sorted(forall("w", Sort::World, pred("existsAt", {var("w"), var("w")})), sig());
  REQUIRE(sorts);
  CHECK(sorts->find("existsAt expects (Thing, World)") != std::string::npos);

  CHECK(check_sorted(pred("inItself", {var("x")}), sig()));
  CHECK_FALSE(check_sorted(pred("inItself", {var("x")}), sig(), {{"x", Sort::Thing}}));
  CHECK(check_sorted(pred("nosuch", {thing(0)}), sig()));
  CHECK(check_sorted(forall("x", Sort::Thing, exists("x", Sort::Thing, truth(true))), sig()));
  CHECK(check_sorted(forall("x", Sort::Thing, forall("w", Sort::World, equals(var("x"), var("w")))),
                     sig()));
}

TEST_CASE("every catalogued formula is closed and well-sorted") {
  for (const auto& e : catalogue()) {
    INFO(e.id);
    CHECK(is_closed(e.formula));
    CHECK_FALSE(check_sorted(e.formula, sig()));
  }
}

TEST_CASE("evaluate on the corpus") {
  const auto& a12 = a12_counter_model().model;
  CHECK(evaluate(substance(thing(0)), a12));
  CHECK_FALSE(evaluate(attribute(thing(3), thing(1)), a12));  // a_only_s1 is not an attribute of s2
  CHECK(evaluate(forall("x", Sort::Thing, equals(var("x"), var("x"))), a12));

  const auto& a15 = a15_counter_model().model;
  CHECK_FALSE(evaluate(attribute(thing(2), thing(0)), a15));
  CHECK(evaluate(is_god(thing(0)), a15));
  CHECK(evaluate(is_god(thing(1)), a15));
}

TEST_CASE("evaluation errors") {
  const auto m = blank(2);
  CHECK_THROWS_AS(evaluate(pred("inItself", {var("x")}), m), EvaluationError);
  CHECK_THROWS_AS(evaluate(axiom("A18").formula, m), EvaluationError);
  CHECK_THROWS_AS(evaluate_via_grounding(axiom("A18").formula, m), EvaluationError);
  CHECK_NOTHROW(evaluate(axiom("A18").formula, blank(2, 1)));
}

TEST_CASE("equality is identity of elements") {
  const auto m = blank(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(evaluate(equals(thing(i), thing(j)), m) == (i == j));
  }
}

TEST_CASE("assignment") {
  Assignment a;
  a.bind("x", Sort::Thing, 1).bind("x", Sort::Thing, 2);
  CHECK(a.lookup("x").second == 2);
  a.pop();
  CHECK(a.lookup("x").second == 1);
  CHECK_FALSE(a.contains("y"));
  CHECK_THROWS_AS(a.lookup("y"), EvaluationError);
  const auto m = blank(3);
  Assignment b;
  b.bind("x", Sort::Thing, 2);
  CHECK(evaluate(equals(var("x"), thing(2)), m, b));
}

TEST_CASE("ground: A1 on two elements") {
  const auto set = ground(axiom("A1").formula, sig(), {2, 0});
  REQUIRE(set.clauses.size() == 2);
  CHECK(set.gates.empty());
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& c = set.clauses[i];
    REQUIRE(c.size() == 2);
    const Atom x = set.atoms.atom(c[0].var());
    const Atom y = set.atoms.atom(c[1].var());
    CHECK_FALSE(c[0].negated());
    CHECK_FALSE(c[1].negated());
    CHECK(sig().at(x.predicate).name == "inItself");
    CHECK(sig().at(y.predicate).name == "inAnother");
    CHECK(x.args == std::vector<std::size_t>{i});
    CHECK(y.args == std::vector<std::size_t>{i});
  }
}

TEST_CASE("ground: distinct constants are unequal") {
  const auto set = ground(forall({"x", "y"}, Sort::Thing, equals(var("x"), var("y"))), sig(),
                          {2, 0});
  CHECK(set.has_empty_clause());
  CHECK_FALSE(ground(forall("x", Sort::Thing, equals(var("x"), var("x"))), sig(), {2, 0})
                  .has_empty_clause());
}

TEST_CASE("ground: A12 on four elements yields one clause per triple with s1 != s2") {
  // Oracle: count the triples directly.
  std::size_t triples = 0;
  for (int s1 = 0; s1 < 4; ++s1) {
    for (int s2 = 0; s2 < 4; ++s2) {
      for (int a = 0; a < 4; ++a) triples += s1 != s2;
    }
  }
  REQUIRE(triples == 48);
  const auto set = ground(axiom("A12").formula, sig(), {4, 0});
  CHECK(set.clauses.size() == triples);
  CHECK(set.gates.empty());
}

TEST_CASE("evaluate_via_grounding agrees on the corpus") {
  const auto& a12 = a12_counter_model().model;
  CHECK(evaluate_via_grounding(axiom("A22").formula, a12));
  CHECK(evaluate(axiom("A22").formula, a12));
  CHECK_FALSE(evaluate_via_grounding(axiom("A12").formula, a12));
  CHECK_FALSE(evaluate(axiom("A12").formula, a12));
  CHECK(evaluate_via_grounding(truth(true), a12));
  for (const auto* cm : corpus()) {
    for (const auto& e : catalogue()) {
      if (mentions_sort(e.formula, Sort::World)) continue;
      INFO(cm->name << " " << e.id);
      CHECK(evaluate_via_grounding(e.formula, cm->model) == evaluate(e.formula, cm->model));
    }
  }
}

TEST_CASE("signature rules") {
  Signature s;
  s.add({"p", {Sort::Thing}});
  CHECK_NOTHROW(s.add({"p", {Sort::Thing}}));
  CHECK(s.size() == 1);
  CHECK_THROWS_AS(s.add({"p", {Sort::Thing, Sort::Thing}}), SortError);
  CHECK_THROWS_AS(s.add({"q", {}}), SortError);
  CHECK_THROWS_AS(s.add({"q", {Sort::Thing, Sort::Thing, Sort::Thing, Sort::Thing}}), SortError);
  CHECK(sig().size() == 17);
  CHECK(sig().find("causeAt")->argument_sorts ==
        std::vector<Sort>{Sort::Thing, Sort::Thing, Sort::World});
}

TEST_CASE("model invariants") {
  CHECK_THROWS(FiniteModel(ethica_signature(), "m", {}));
  CHECK_THROWS(FiniteModel(ethica_signature(), "m", {"a", "a"}));
  CHECK_THROWS(FiniteModel(ethica_signature(), "m", {"1a"}));
  auto m = blank(2);
  m.set("limitedBy", {"t0", "t1"});
  CHECK(m.holds("limitedBy", {"t0", "t1"}));
  CHECK_FALSE(m.holds("limitedBy", {"t1", "t0"}));
  CHECK_FALSE(m.holds("inItself", {"t0"}));
  CHECK_THROWS(m.set("limitedBy", {"t0", "nope"}));
}
