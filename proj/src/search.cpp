#include "ethica/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "dpll.hpp"
#include "ethica/error.hpp"
#include "ethica/evaluate.hpp"
#include "ethica/ground.hpp"

namespace ethica {

namespace {

constexpr std::size_t kPrefixDepth = 8;

std::vector<std::string> element_labels(char prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Every (thing permutation, world permutation) pair, identity first.
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> sort_permutations(
    UniverseSizes sizes) {
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
  const auto things = permutations(sizes.things);
  const auto worlds = permutations(sizes.worlds);
  for (const auto& t : things) {
    for (const auto& w : worlds) out.emplace_back(t, w);
  }
  return out;
}

std::vector<std::size_t> apply(const PredicateDecl& decl, const std::vector<std::size_t>& args,
                               const std::vector<std::size_t>& thing_perm,
                               const std::vector<std::size_t>& world_perm) {
  std::vector<std::size_t> out(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    out[i] = decl.argument_sorts[i] == Sort::Thing ? thing_perm[args[i]] : world_perm[args[i]];
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> symmetry_maps(const AtomTable& atoms) {
  std::vector<std::vector<std::uint32_t>> maps;
  const auto& sig = atoms.signature();
  const auto perms = sort_permutations(atoms.sizes());
  for (std::size_t k = 1; k < perms.size(); ++k) {
    std::vector<std::uint32_t> image(atoms.size());
    for (std::uint32_t v = 0; v < atoms.size(); ++v) {
      const Atom atom = atoms.atom(v);
      const auto moved =
          apply(sig.at(atom.predicate), atom.args, perms[k].first, perms[k].second);
      image[v] = *atoms.variable(atom.predicate, moved);
    }
    maps.push_back(std::move(image));
  }
  return maps;
}

/// Lex-leader constraints x ≤lex π(x) for every non-identity symmetry π,
/// chained through fresh "prefix equal so far" variables.
detail::SolverInput solver_input(const GroundConstraintSet& set, bool prune) {
  detail::SolverInput input{&set, set.variable_count, set.clauses, set.clauses.size()};
  if (!prune) return input;
  auto fresh = [&] { return static_cast<std::uint32_t>(input.variable_count++); };
  for (const auto& image : symmetry_maps(set.atoms)) {
    std::vector<std::uint32_t> moved;
    for (std::uint32_t j = 0; j < image.size(); ++j) {
      if (image[j] != j) moved.push_back(j);
    }
    std::optional<Lit> equal_so_far;
    for (std::size_t k = 0; k < moved.size(); ++k) {
      const Lit x = Lit::make(moved[k]);
      const Lit y = Lit::make(image[moved[k]]);
      auto guarded = [&](Clause c) {
        if (equal_so_far) c.insert(c.begin(), ~*equal_so_far);
        input.clauses.push_back(std::move(c));
      };
      guarded({~x, y});
      if (k + 1 == moved.size()) break;
      const Lit next = Lit::make(fresh());
      guarded({~x, ~y, next});
      guarded({x, y, next});
      equal_so_far = next;
    }
  }
  return input;
}

struct SizeOutcome {
  std::optional<std::vector<bool>> atoms;
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::uint64_t propagations = 0;
};

// Splits the space on the first atoms into a fixed job list. The winner is
// the lowest job index with a model, and only jobs up to it are counted, so
// the outcome does not depend on the worker count.
SizeOutcome search_size(const GroundConstraintSet& set, const SearchConfig& config,
                        std::uint64_t budget, std::size_t workers) {
  const auto input = solver_input(set, config.pruning == Pruning::Canonical);
  const std::size_t depth = std::min(kPrefixDepth, set.atoms.size());
  const std::size_t jobs = std::size_t{1} << depth;
  workers = std::max<std::size_t>(1, std::min(workers, jobs));

  std::vector<detail::JobStats> stats(jobs);
  std::vector<std::optional<std::vector<bool>>> found(jobs);
  std::atomic<std::size_t> next_job{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    try {
      for (std::size_t job; (job = next_job.fetch_add(1)) < jobs;) {
        if (job > best.load() || failed.load()) continue;
        // A fresh solver per job keeps learnt clauses, and so statistics,
        // independent of which worker ran which jobs.
        detail::Cdcl solver(input);
        std::vector<bool> prefix(depth);
        for (std::size_t i = 0; i < depth; ++i) prefix[i] = (job >> (depth - 1 - i)) & 1;
        found[job] = solver.solve(prefix, budget, &best, job, stats[job]);
        if (found[job]) {
          auto current = best.load();
          while (job < current && !best.compare_exchange_weak(current, job)) {
          }
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const std::size_t winner = best.load();
  const std::size_t counted = winner == std::numeric_limits<std::size_t>::max() ? jobs : winner + 1;
  SizeOutcome out;
  bool exceeded = false;
  for (std::size_t j = 0; j < counted; ++j) {
    out.nodes += stats[j].nodes;
    out.pruned += stats[j].pruned;
    out.propagations += stats[j].propagations;
    exceeded = exceeded || stats[j].budget_exceeded;
  }
  if (exceeded || out.propagations > budget) {
    throw ResourceLimitError("node budget of " + std::to_string(budget) +
                             " propagation steps exceeded");
  }
  if (winner < jobs) out.atoms = std::move(found[winner]);
  return out;
}

FiniteModel model_from_atoms(const AtomTable& atoms, const std::vector<bool>& values,
                             std::shared_ptr<const Signature> signature) {
  const auto sizes = atoms.sizes();
  FiniteModel model(std::move(signature), "countermodel", element_labels('e', sizes.things),
                    element_labels('w', sizes.worlds));
  for (std::uint32_t v = 0; v < values.size(); ++v) {
    if (!values[v]) continue;
    const Atom atom = atoms.atom(v);
    model.set(atom.predicate, atom.args, true);
  }
  return model;
}

}  // namespace

std::string describe_bound(UniverseSizes sizes) {
  if (sizes.worlds == 0) return std::to_string(sizes.things);
  return std::to_string(sizes.things) + " things / " + std::to_string(sizes.worlds) + " worlds";
}

std::string EntailmentVerdict::text() const {
  if (const auto* r = std::get_if<Refuted>(&outcome)) {
    return r->size.worlds ? "Refuted(" + describe_bound(r->size) + ")"
                          : "Refuted(size " + describe_bound(r->size) + ")";
  }
  return "NoCounterexampleUpTo(" + describe_bound(std::get<NoCounterexampleUpTo>(outcome).bound) +
         ")";
}

std::uint64_t effective_node_budget(const SearchConfig& config) {
  if (config.node_budget) return *config.node_budget;
  if (const char* env = std::getenv("ETHICA_NODE_BUDGET"); env && *env) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw Error(std::string("ETHICA_NODE_BUDGET is not a non-negative integer: ") + env);
  }
  return kDefaultNodeBudget;
}

EntailmentVerdict entails_bounded(const std::vector<Formula>& premises, const Formula& target,
                                  const SearchConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const auto signature = ethica_signature();
  if (config.max_thing_size < 1) throw Error("max_thing_size must be at least 1");

  std::vector<Formula> all = premises;
  all.push_back(target);
  bool needs_world = false;
  for (const auto& f : all) {
    if (auto err = check_sorted(f, *signature)) throw SortError(*err);
    needs_world = needs_world || mentions_sort(f, Sort::World);
  }
  const std::size_t max_worlds = config.max_world_size.value_or(needs_world ? 2 : 0);
  if (needs_world && max_worlds == 0) {
    throw Error("formulas mention World; max_world_size must be at least 1");
  }

  std::vector<std::size_t> support;
  if (config.support_predicates) {
    for (const auto& name : *config.support_predicates) {
      const auto index = signature->index_of(name);
      if (!index) throw UnknownNameError("unknown predicate '" + name + "'");
      support.push_back(*index);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
  } else {
    support = support_of(all, *signature);
  }

  const UniverseSizes bound{config.max_thing_size, needs_world ? max_worlds : 0};
  EntailmentVerdict verdict{NoCounterexampleUpTo{bound}, {}, bound};
  auto& stats = verdict.stats;
  for (auto p : support) stats.support.push_back(signature->at(p).name);
  stats.within_support = support.size() < signature->size();

  const std::uint64_t budget = effective_node_budget(config);
  const std::size_t workers =
      config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());

  auto finish = [&] {
    stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  for (std::size_t things = 1; things <= config.max_thing_size; ++things) {
    for (std::size_t worlds = needs_world ? 1 : 0; worlds <= (needs_world ? max_worlds : 0);
         ++worlds) {
      const UniverseSizes sizes{things, worlds};
      Grounder grounder(*signature, sizes, support);
      for (const auto& p : premises) grounder.assert_formula(p);
      grounder.assert_negation(target);
      const GroundConstraintSet set = std::move(grounder).finish();

      if (!set.has_empty_clause()) {
        const auto outcome = search_size(set, config, budget, workers);
        stats.candidates_visited += outcome.nodes;
        stats.pruned_subtrees += outcome.pruned;
        stats.propagations += outcome.propagations;
        if (outcome.atoms) {
          FiniteModel model = model_from_atoms(set.atoms, *outcome.atoms, signature);
          for (const auto& p : premises) {
            if (!evaluate(p, model)) throw std::logic_error("countermodel violates a premise");
          }
          if (evaluate(target, model)) throw std::logic_error("countermodel satisfies the target");
          verdict.outcome = Refuted{std::move(model), sizes};
          finish();
          return verdict;
        }
      }
      stats.sizes_exhausted.push_back(sizes);
    }
  }
  finish();
  return verdict;
}

EntailmentVerdict entails_bounded(const std::vector<AxiomEntry>& premises,
                                  const AxiomEntry& target, const SearchConfig& config) {
  std::vector<Formula> formulas;
  for (const auto& p : premises) formulas.push_back(p.formula);
  return entails_bounded(formulas, target.formula, config);
}

EntailmentVerdict entails_bounded(const std::vector<std::string>& premises,
                                  const std::string& target, const SearchConfig& config) {
  return entails_bounded(axiom_set(premises), axiom(target), config);
}

std::optional<Refuted> find_countermodel(const std::vector<std::string>& premises,
                                         const std::string& target, const SearchConfig& config) {
  auto verdict = entails_bounded(premises, target, config);
  if (!verdict.refuted()) return std::nullopt;
  return std::get<Refuted>(std::move(verdict.outcome));
}

FiniteModel canonical_form(const FiniteModel& model) {
  const auto& sig = model.signature();
  const auto sizes = model.sizes();
  std::optional<std::vector<bool>> best;
  std::vector<std::vector<bool>> best_tables;

  for (const auto& [tp, wp] : sort_permutations(sizes)) {
    std::vector<std::vector<bool>> tables(sig.size());
    std::vector<bool> encoding;
    for (std::size_t p = 0; p < sig.size(); ++p) {
      const auto& decl = sig.at(p);
      const auto count = tuple_count(decl, sizes);
      tables[p].assign(count, false);
      const auto& raw = model.raw_table(p);
      if (!raw.empty()) {
        for (std::size_t i = 0; i < count; ++i) {
          if (!raw[i]) continue;
          tables[p][tuple_index(decl, sizes, apply(decl, tuple_at(decl, sizes, i), tp, wp))] = true;
        }
      }
      encoding.insert(encoding.end(), tables[p].begin(), tables[p].end());
    }
    if (!best || encoding < *best) {
      best = std::move(encoding);
      best_tables = std::move(tables);
    }
  }

  FiniteModel out(model.signature_ptr(), model.name(), element_labels('e', sizes.things),
                  element_labels('w', sizes.worlds));
  for (std::size_t p = 0; p < sig.size(); ++p) out.set_raw_table(p, std::move(best_tables[p]));
  return out;
}

NaivePsrResult check_naive_psr(const FiniteModel& model) {
  const auto& things = model.universe(Sort::Thing);
  const std::size_t n = things.size();
  NaivePsrResult result;

  auto subset_labels = [&](std::uint64_t mask) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) labels.push_back(things[i]);
    }
    return labels;
  };

  // Masks ordered by (popcount, value); beyond 20 elements the singleton
  // {x} is constructed directly.
  std::vector<std::uint64_t> masks;
  if (n <= 20) {
    masks.resize(std::size_t{1} << n);
    std::iota(masks.begin(), masks.end(), 0);
    std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
      return std::popcount(a) < std::popcount(b);
    });
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      std::optional<std::vector<std::string>> witness;
      if (n > 20) {
        witness = std::vector<std::string>{things[x]};
      } else {
        for (auto m : masks) {
          if ((m >> x & 1) && !(m >> y & 1)) {
            witness = subset_labels(m);
            break;
          }
        }
      }
      if (!witness) {
        result.holds = false;
        continue;
      }
      result.witnesses.push_back({things[x], things[y], std::move(*witness)});
    }
  }
  return result;
}

}  // namespace ethica
