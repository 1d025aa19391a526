#include <doctest.h>

#include <random>

#include "ethica/corpus.hpp"
#include "ethica/evaluate.hpp"
#include "ethica/experiments.hpp"
#include "ethica/ground.hpp"
#include "ethica/search.hpp"
#include "oracle.hpp"

using namespace ethica;

namespace {

constexpr std::uint64_t kSeed = 20261018;

std::vector<Query> bundled_queries() {
  std::vector<Query> out;
  for (const auto& s : bundled_experiments()) {
    out.push_back(s.forward);
    if (s.backward) out.push_back(*s.backward);
    if (s.auxiliary) out.push_back(*s.auxiliary);
    for (const auto& c : s.components) out.push_back(c);
  }
  out.push_back({{"SectionIBridges", "A22"}, "A12"});
  return out;
}

// World bound is left at its default of 2.
SearchConfig config_for(std::size_t things, Pruning pruning, std::size_t workers) {
  SearchConfig c;
  c.max_thing_size = things;
  c.pruning = pruning;
  c.workers = workers;
  return c;
}

}  // namespace

TEST_CASE("evaluator laws on random formulas") {
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 400; ++i) {
    const bool worlds = i % 2;
    oracle::FormulaGen gen(rng, worlds);
    const auto f = gen.closed(3);
    const auto g = gen.closed(3);
    const auto m = oracle::random_model(rng, {1 + std::size_t(i % 3), worlds ? 2u : 0u});
    INFO(to_string(f));
    INFO(to_string(g));
    CHECK(evaluate(negation(negation(f)), m) == evaluate(f, m));
    CHECK(evaluate(negation(conjunction({f, g})), m) ==
          evaluate(disjunction({negation(f), negation(g)}), m));
    CHECK(evaluate(negation(disjunction({f, g})), m) ==
          evaluate(conjunction({negation(f), negation(g)}), m));

    const auto body = disjunction({pred("inItself", {var("z")}),
                                   conjunction({f, pred("perSeConceived", {var("z")})}),
                                   conjunction({negation(g), pred("cause", {var("z"), var("z")})})});
    bool all = true, any = false;
    for (std::size_t e = 0; e < m.size(Sort::Thing); ++e) {
      const bool v = evaluate(substitute(body, "z", thing(e)), m);
      all = all && v;
      any = any || v;
    }
    CHECK(evaluate(forall("z", Sort::Thing, body), m) == all);
    CHECK(evaluate(exists("z", Sort::Thing, body), m) == any);
    CHECK(evaluate(negation(forall("z", Sort::Thing, body)), m) ==
          evaluate(exists("z", Sort::Thing, negation(body)), m));
  }
}

TEST_CASE("grounder agrees with the evaluator on random formulas") {
  std::mt19937_64 rng(kSeed + 1);
  for (int i = 0; i < 400; ++i) {
    const bool worlds = i % 3 == 0;
    oracle::FormulaGen gen(rng, worlds);
    const auto f = gen.closed(4);
    const auto m = oracle::random_model(rng, {1 + std::size_t(i % 3), worlds ? 2u : 0u}, 0.5);
    INFO(to_string(f));
    CHECK(evaluate_via_grounding(f, m) == evaluate(f, m));
  }
}

TEST_CASE("grounder agrees with the evaluator on every catalogued axiom") {
  std::mt19937_64 rng(kSeed + 2);
  std::vector<FiniteModel> models;
  for (const auto* cm : corpus()) models.push_back(cm->model);
  for (int i = 0; i < 60; ++i) {
    models.push_back(oracle::random_model(rng, {1 + std::size_t(i % 3), 1 + std::size_t(i % 2)},
                                          i % 2 ? 0.3 : 0.7));
  }
  for (const auto& m : models) {
    for (const auto& e : catalogue()) {
      if (mentions_sort(e.formula, Sort::World) && m.size(Sort::World) == 0) continue;
      INFO(m.name() << " " << e.id);
      CHECK(evaluate_via_grounding(e.formula, m) == evaluate(e.formula, m));
    }
  }
}

TEST_CASE("canonical_form is idempotent and isomorphism invariant") {
  std::mt19937_64 rng(kSeed + 3);
  const std::vector<std::vector<std::size_t>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int i = 0; i < 1000; ++i) {
    const auto m = oracle::random_model(rng, {3, 0}, 0.3);
    const auto c = canonical_form(m);
    CHECK(canonical_form(c) == c);
    CHECK(c.encoding() <= m.encoding());
    const auto& p = perms[i % perms.size()];
    CHECK(canonical_form(oracle::permuted(m, p)) == c);
  }
  const auto& a12 = a12_counter_model().model;
  CHECK(canonical_form(oracle::permuted(a12, {1, 0, 2, 3})) == canonical_form(a12));
  CHECK(canonical_form(oracle::permuted(a12, {3, 2, 1, 0})) == canonical_form(a12));
}

TEST_CASE("engine finds the least countermodel the brute-force oracle finds") {
  struct Case {
    std::vector<std::string> premises;
    std::string target;
    std::size_t max_things;
  };
  const std::vector<Case> cases = {
      {{"A22"}, "A12", 3}, {{"A12"}, "A22", 2}, {{"A25"}, "A15", 2}, {{"A26"}, "A15", 2},
      {{"A14"}, "A24", 2}, {{"A24"}, "A14", 2}, {{}, "A1", 3},      {{"A12"}, "A14", 2},
  };
  for (const auto& c : cases) {
    const auto premises = oracle::formulas_of(c.premises);
    const auto& target = axiom(c.target).formula;
    std::vector<Formula> all = premises;
    all.push_back(target);
    std::vector<std::string> support;
    for (const auto& f : all) {
      for (const auto& p : predicates_in(f)) {
        if (std::find(support.begin(), support.end(), p) == support.end()) support.push_back(p);
      }
    }

    std::optional<FiniteModel> expected;
    std::size_t expected_size = 0;
    for (std::size_t k = 1; k <= c.max_things && !expected; ++k) {
      expected = oracle::least_countermodel(premises, target, {k, 0}, support);
      expected_size = k;
    }
    for (auto pruning : {Pruning::Canonical, Pruning::None}) {
      SearchConfig cfg;
      cfg.max_thing_size = c.max_things;
      cfg.pruning = pruning;
      const auto v = entails_bounded(c.premises, c.target, cfg);
      INFO(describe(Query{c.premises, c.target}));
      REQUIRE(v.refuted() == expected.has_value());
      if (expected) {
        CHECK(v.refutation().size.things == expected_size);
        CHECK(v.refutation().model.encoding() == expected->encoding());
      }
    }
  }
}

TEST_CASE("pruning soundness at sizes up to 3") {
  for (const auto& q : bundled_queries()) {
    const auto on = entails_bounded(q.premises, q.target,
                                    config_for(3, Pruning::Canonical, 1));
    const auto off = entails_bounded(q.premises, q.target, config_for(3, Pruning::None, 1));
    INFO(describe(q));
    CHECK(on.text() == off.text());
    if (on.refuted()) {
      CHECK(on.refutation().model == off.refutation().model);
    }
  }
}

TEST_CASE("search is deterministic across worker counts") {
  for (const auto& q : bundled_queries()) {
    const auto one = entails_bounded(q.premises, q.target, config_for(3, Pruning::Canonical, 1));
    const auto many = entails_bounded(q.premises, q.target, config_for(3, Pruning::Canonical, 4));
    INFO(describe(q));
    CHECK(one.text() == many.text());
    CHECK(one.stats.candidates_visited == many.stats.candidates_visited);
    CHECK(one.stats.pruned_subtrees == many.stats.pruned_subtrees);
    if (one.refuted()) CHECK(one.refutation().model == many.refutation().model);
  }
}

TEST_CASE("naive PSR holds on seeded random models") {
  std::mt19937_64 rng(kSeed + 4);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t things = 1 + i % 4;
    const auto m = oracle::random_model(rng, {things, 0}, 0.5);
    const auto r = check_naive_psr(m);
    CHECK(r.holds);
    CHECK(r.witnesses.size() == things * (things - 1));
    // Independent check of each witness subset.
    for (const auto& w : r.witnesses) {
      const bool has_x = std::find(w.subset.begin(), w.subset.end(), w.x) != w.subset.end();
      const bool has_y = std::find(w.subset.begin(), w.subset.end(), w.y) != w.subset.end();
      CHECK(has_x);
      CHECK_FALSE(has_y);
    }
  }
}

TEST_CASE("refuting models pass verify") {
  for (const auto& q : bundled_queries()) {
    const auto v = entails_bounded(q.premises, q.target, config_for(3, Pruning::Canonical, 0));
    if (!v.refuted()) continue;
    const auto r = verify(v.refutation().model, q.premises, q.target);
    INFO(describe(q));
    CHECK(r.verdict == Verdict::Confirmed);
  }
}
