#pragma once

// Internal clause-learning solver for ground constraint sets. Not installed.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ethica/ground.hpp"

namespace ethica::detail {

struct JobStats {
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  bool budget_exceeded = false;
  bool cancelled = false;
};

/// Clause set handed to the solver: the grounded clauses followed by
/// symmetry-breaking clauses over extra auxiliary variables.
struct SolverInput {
  const GroundConstraintSet* ground = nullptr;
  std::size_t variable_count = 0;
  std::vector<Clause> clauses;
  /// clauses[symmetry_begin ..] are lex-leader clauses.
  std::size_t symmetry_begin = 0;
};

/// CDCL with two watched literals and first-UIP learning, no restarts.
/// Decisions take the least unassigned variable (atoms come first) and try
/// false first, so the first model reached is the lexicographically least
/// one in atom order: every literal on the trail is implied by the earlier
/// false decisions, hence shared by any smaller model.
class Cdcl {
 public:
  explicit Cdcl(const SolverInput& input);

  /// Searches the subspace whose first `prefix.size()` atoms take the given
  /// values. `cancel` is polled; once it falls below `job_index` the job
  /// stops early.
  std::optional<std::vector<bool>> solve(const std::vector<bool>& prefix, std::uint64_t budget,
                                         const std::atomic<std::size_t>* cancel,
                                         std::size_t job_index, JobStats& stats);

 private:
  static constexpr std::int8_t kUnassigned = -1;
  static constexpr std::uint32_t kNoReason = UINT32_MAX;

  bool is_true(Lit l) const { return values_[l.var()] == static_cast<std::int8_t>(!l.negated()); }
  bool is_false(Lit l) const { return values_[l.var()] == static_cast<std::int8_t>(l.negated()); }
  std::size_t level() const { return level_starts_.size(); }

  void assign(Lit l, std::uint32_t reason);
  bool add_clause(Clause c);
  std::uint32_t propagate(JobStats& stats);
  void undo_to(std::size_t level);
  std::size_t analyze(std::uint32_t conflict, Clause& learnt);
  bool is_symmetry(std::uint32_t clause) const {
    return clause >= symmetry_begin_ && clause < symmetry_end_;
  }

  const GroundConstraintSet& ground_;
  std::size_t atom_count_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_;  // by literal code
  std::vector<std::int8_t> values_;
  std::vector<std::uint32_t> levels_;
  std::vector<std::uint32_t> reasons_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> level_starts_;
  std::size_t queue_head_ = 0;
  std::size_t symmetry_begin_ = 0;
  std::size_t symmetry_end_ = 0;
  bool root_ok_ = true;
};

}  // namespace ethica::detail
