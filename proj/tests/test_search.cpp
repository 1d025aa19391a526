#include <doctest.h>

#include "ethica/corpus.hpp"
#include "ethica/error.hpp"
#include "ethica/evaluate.hpp"
#include "ethica/experiments.hpp"
#include "ethica/search.hpp"
#include "oracle.hpp"

using namespace ethica;

namespace {

EntailmentVerdict refuted_verdict() {
  FiniteModel m(ethica_signature(), "r", {"e0"});
  return {Refuted{m, {1, 0}}, {}, {1, 0}};
}

EntailmentVerdict clean_verdict(std::size_t k = 3) {
  return {NoCounterexampleUpTo{{k, 0}}, {}, {k, 0}};
}

FiniteModel swap_s1_s2(const FiniteModel& m) { return oracle::permuted(m, {1, 0, 2, 3}); }

}  // namespace

TEST_CASE("verdict text") {
  CHECK(refuted_verdict().text() == "Refuted(size 1)");
  CHECK(clean_verdict(4).text() == "NoCounterexampleUpTo(4)");
  CHECK(describe_bound({3, 2}) == "3 things / 2 worlds");
  CHECK(describe_bound({4, 0}) == "4");
  FiniteModel w(ethica_signature(), "w", {"e0"}, {"w0"});
  const EntailmentVerdict with_worlds{Refuted{w, {1, 1}}, {}, {3, 2}};
  CHECK(with_worlds.text() == "Refuted(1 things / 1 worlds)");
}

TEST_CASE("node budget") {
  SearchConfig c;
  c.node_budget = 7;
  CHECK(effective_node_budget(c) == 7);
  SearchConfig tiny;
  tiny.node_budget = 1;
  tiny.max_thing_size = 3;
  tiny.workers = 1;
  CHECK_THROWS_AS(entails_bounded(std::vector<std::string>{"PSRPlenitude"}, "A15", tiny),
                  ResourceLimitError);
}

TEST_CASE("small searches") {
  SearchConfig c;
  c.max_thing_size = 1;
  const auto one = entails_bounded(std::vector<std::string>{"A22"}, "A12", c);
  CHECK_FALSE(one.refuted());
  CHECK(one.text() == "NoCounterexampleUpTo(1)");

  c.max_thing_size = 2;
  const auto two = entails_bounded(std::vector<std::string>{"A22"}, "A12", c);
  REQUIRE(two.refuted());
  CHECK(two.refutation().size == UniverseSizes{2, 0});
  CHECK(evaluate(axiom("A22").formula, two.refutation().model));
  CHECK_FALSE(evaluate(axiom("A12").formula, two.refutation().model));
  CHECK(two.stats.within_support);
  CHECK(two.stats.sizes_exhausted == std::vector<UniverseSizes>{{1, 0}});

  CHECK_THROWS_AS(entails_bounded(std::vector<std::string>{"nope"}, "A12", c), UnknownNameError);

  SearchConfig noworld;
  noworld.max_world_size = 0;
  CHECK_THROWS_AS(entails_bounded(std::vector<std::string>{"A18"}, "A13", noworld), Error);
}

TEST_CASE("find_countermodel") {
  SearchConfig c;
  c.max_thing_size = 2;
  const auto r = find_countermodel({"A12"}, "A22", c);
  REQUIRE(r);
  CHECK(evaluate(axiom("A12").formula, r->model));
  CHECK_FALSE(evaluate(axiom("A22").formula, r->model));
  c.max_thing_size = 3;
  CHECK_FALSE(find_countermodel({"A25", "A26"}, "A15", c));
}

TEST_CASE("canonical_form small cases") {
  FiniteModel single(ethica_signature(), "one", {"e0"});
  single.set("inItself", {"e0"});
  CHECK(canonical_form(single) == single);

  const auto& a12 = a12_counter_model().model;
  CHECK(canonical_form(swap_s1_s2(a12)) == canonical_form(a12));
  CHECK(canonical_form(canonical_form(a12)) == canonical_form(a12));
  CHECK(canonical_form(a12).universe(Sort::Thing) ==
        std::vector<std::string>{"e0", "e1", "e2", "e3"});

  FiniteModel two(ethica_signature(), "two", {"p", "q"});
  two.set("inItself", {"p"});
  FiniteModel other(ethica_signature(), "two", {"p", "q"});
  other.set("inItself", {"q"});
  CHECK(canonical_form(two) == canonical_form(other));
  CHECK(canonical_form(two).encoding() <= two.encoding());
}

TEST_CASE("naive PSR") {
  const auto r = check_naive_psr(a12_counter_model().model);
  CHECK(r.holds);
  bool found = false;
  for (const auto& w : r.witnesses) {
    if (w.x == "s1" && w.y == "s2") {
      found = true;
      CHECK(w.subset == std::vector<std::string>{"s1"});
    }
  }
  CHECK(found);
  CHECK(r.witnesses.size() == 12);

  FiniteModel single(ethica_signature(), "one", {"x"});
  const auto s = check_naive_psr(single);
  CHECK(s.holds);
  CHECK(s.witnesses.empty());
  CHECK(check_naive_psr(a15_counter_model().model).holds);
}

TEST_CASE("classify_outcome") {
  const auto ref = refuted_verdict();
  const auto clean = clean_verdict();

  Evidence partial{&ref, nullptr, false, &clean, {}};
  CHECK(classify_outcome(partial) == OutcomeClass::PartialReduction);

  Evidence irreducible{&ref, nullptr, false, nullptr, {}};
  CHECK(classify_outcome(irreducible) == OutcomeClass::FullIrreducibility);
  Evidence irreducible_aux{&ref, nullptr, false, &ref, {}};
  CHECK(classify_outcome(irreducible_aux) == OutcomeClass::FullIrreducibility);

  Evidence decomposition{&clean, nullptr, false, nullptr, {&ref, &ref}};
  CHECK(classify_outcome(decomposition) == OutcomeClass::DecompositionOnly);

  Evidence equal{&clean, &clean, false, nullptr, {}};
  CHECK(classify_outcome(equal) == OutcomeClass::EqualStrengthTranslation);
  Evidence open{&clean, nullptr, true, nullptr, {}};
  CHECK(classify_outcome(open) == OutcomeClass::EqualStrengthTranslation);

  Evidence full{&clean, &ref, false, nullptr, {}};
  CHECK(classify_outcome(full) == OutcomeClass::FullReduction);

  Evidence none{&clean, nullptr, false, nullptr, {}};
  CHECK_THROWS_AS(classify_outcome(none), InsufficientEvidenceError);
  CHECK_THROWS_AS(classify_outcome(Evidence{}), InsufficientEvidenceError);
  Evidence half{&clean, nullptr, false, nullptr, {&ref, &clean}};
  CHECK_THROWS_AS(classify_outcome(half), InsufficientEvidenceError);
}

TEST_CASE("outcome labels") {
  CHECK(outcome_label(OutcomeClass::PartialReduction) == "Partial reduction; full irreducible");
  CHECK(outcome_label(OutcomeClass::EqualStrengthTranslation) == "Equal-strength translation");
  CHECK(outcome_label(OutcomeClass::DecompositionOnly) == "Decomposition only");
  CHECK(describe(Query{{"A22"}, "A12"}) == "{A22} ⊨ A12");
}

TEST_CASE("bundled fixtures") {
  const auto& all = bundled_experiments();
  REQUIRE(all.size() == 6);
  std::size_t rows = 0;
  for (const auto& s : all) rows += s.in_table;
  CHECK(rows == 4);
  CHECK(bundled_experiment("A13_converse").expectation == std::nullopt);
  CHECK_THROWS_AS(bundled_experiment("nope"), UnknownNameError);
  CHECK(search_bound(bundled_experiment("A13_demote")) == UniverseSizes{3, 2});
}

TEST_CASE("full-register probe at small bounds") {
  SearchConfig c;
  c.max_thing_size = 1;
  const auto one = conjecture_probe_full_register(c);
  CHECK(one.verdict.text() == "NoCounterexampleUpTo(1)");
  CHECK_FALSE(one.verification);

  c.max_thing_size = 2;
  const auto two = conjecture_probe_full_register(c);
  REQUIRE(two.verdict.refuted());
  CHECK(two.verdict.stats.pruned_subtrees > 0);
  REQUIRE(two.verification);
  CHECK(two.verification->verdict == Verdict::Confirmed);
}
