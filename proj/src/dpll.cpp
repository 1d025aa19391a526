#include "dpll.hpp"

#include <algorithm>
#include <stdexcept>

namespace ethica::detail {

Cdcl::Cdcl(const SolverInput& input)
    : ground_(*input.ground),
      atom_count_(input.ground->atoms.size()),
      watches_(input.variable_count * 2),
      values_(input.variable_count, kUnassigned),
      levels_(input.variable_count, 0),
      reasons_(input.variable_count, kNoReason),
      seen_(input.variable_count, 0) {
  for (std::size_t i = 0; i < input.clauses.size() && root_ok_; ++i) {
    if (i == input.symmetry_begin) symmetry_begin_ = clauses_.size();
    root_ok_ = add_clause(input.clauses[i]);
  }
  if (input.symmetry_begin >= input.clauses.size()) symmetry_begin_ = clauses_.size();
  symmetry_end_ = clauses_.size();
  JobStats scratch;
  if (root_ok_) root_ok_ = propagate(scratch) == kNoReason;
}

// Level-0 only. Units are assigned directly; false result means the clause
// set is refuted outright.
bool Cdcl::add_clause(Clause c) {
  if (c.empty()) return false;
  if (c.size() == 1) {
    if (is_false(c[0])) return false;
    if (!is_true(c[0])) assign(c[0], kNoReason);
    return true;
  }
  const auto index = static_cast<std::uint32_t>(clauses_.size());
  watches_[c[0].code].push_back(index);
  watches_[c[1].code].push_back(index);
  clauses_.push_back(std::move(c));
  return true;
}

void Cdcl::assign(Lit l, std::uint32_t reason) {
  values_[l.var()] = static_cast<std::int8_t>(!l.negated());
  levels_[l.var()] = static_cast<std::uint32_t>(level());
  reasons_[l.var()] = reason;
  trail_.push_back(l);
}

// Returns the conflicting clause, or kNoReason. The implied literal of a
// reason clause always sits at position 0.
std::uint32_t Cdcl::propagate(JobStats& stats) {
  while (queue_head_ < trail_.size()) {
    const Lit falsified = ~trail_[queue_head_++];
    ++stats.propagations;
    auto& watch_list = watches_[falsified.code];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < watch_list.size(); ++i) {
      const auto ci = watch_list[i];
      auto& c = clauses_[ci];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (is_true(c[0])) {
        watch_list[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (!is_false(c[k])) {
          std::swap(c[1], c[k]);
          watches_[c[1].code].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      watch_list[keep++] = ci;
      if (is_false(c[0])) {
        for (++i; i < watch_list.size(); ++i) watch_list[keep++] = watch_list[i];
        watch_list.resize(keep);
        queue_head_ = trail_.size();
        if (is_symmetry(ci)) ++stats.pruned;
        return ci;
      }
      if (is_symmetry(ci) && c[0].var() < atom_count_) ++stats.pruned;
      assign(c[0], ci);
    }
    watch_list.resize(keep);
  }
  return kNoReason;
}

void Cdcl::undo_to(std::size_t target_level) {
  if (target_level >= level()) return;
  const std::size_t target = level_starts_[target_level];
  while (trail_.size() > target) {
    const auto v = trail_.back().var();
    values_[v] = kUnassigned;
    reasons_[v] = kNoReason;
    trail_.pop_back();
  }
  level_starts_.resize(target_level);
  queue_head_ = trail_.size();
}

// First-UIP clause. learnt[0] is the asserting literal, learnt[1] (if any)
// carries the backjump level, which is returned.
std::size_t Cdcl::analyze(std::uint32_t conflict, Clause& learnt) {
  learnt.assign(1, Lit{});
  std::size_t open = 0;
  std::optional<Lit> p;
  std::size_t index = trail_.size();
  std::uint32_t reason = conflict;
  do {
    const auto& c = clauses_[reason];
    for (std::size_t k = p ? 1 : 0; k < c.size(); ++k) {
      const Lit q = c[k];
      const auto v = q.var();
      if (seen_[v] || levels_[v] == 0) continue;
      seen_[v] = 1;
      if (levels_[v] >= level()) {
        ++open;
      } else {
        learnt.push_back(q);
      }
    }
    while (!seen_[trail_[--index].var()]) {
    }
    p = trail_[index];
    reason = reasons_[p->var()];
    seen_[p->var()] = 0;
    --open;
  } while (open > 0);
  learnt[0] = ~*p;

  for (std::size_t k = 1; k < learnt.size(); ++k) seen_[learnt[k].var()] = 0;
  if (learnt.size() == 1) return 0;
  std::size_t back = 1;
  for (std::size_t k = 2; k < learnt.size(); ++k) {
    if (levels_[learnt[k].var()] > levels_[learnt[back].var()]) back = k;
  }
  std::swap(learnt[1], learnt[back]);
  return levels_[learnt[1].var()];
}

std::optional<std::vector<bool>> Cdcl::solve(const std::vector<bool>& prefix,
                                             std::uint64_t budget,
                                             const std::atomic<std::size_t>* cancel,
                                             std::size_t job_index, JobStats& stats) {
  if (!root_ok_) return std::nullopt;
  undo_to(0);
  Clause learnt;

  while (true) {
    if (stats.propagations > budget) {
      stats.budget_exceeded = true;
      return std::nullopt;
    }
    const auto conflict = propagate(stats);
    if (conflict != kNoReason) {
      ++stats.conflicts;
      if (level() == 0) return std::nullopt;
      const auto back = analyze(conflict, learnt);
      undo_to(back);
      if (learnt.size() == 1) {
        assign(learnt[0], kNoReason);
      } else {
        const auto index = static_cast<std::uint32_t>(clauses_.size());
        watches_[learnt[0].code].push_back(index);
        watches_[learnt[1].code].push_back(index);
        clauses_.push_back(learnt);
        assign(learnt[0], index);
      }
      continue;
    }
    if (cancel && (stats.conflicts & 0x3f) == 0 &&
        cancel->load(std::memory_order_relaxed) < job_index) {
      stats.cancelled = true;
      return std::nullopt;
    }

    if (level() < prefix.size()) {
      const Lit l = Lit::make(static_cast<std::uint32_t>(level()), !prefix[level()]);
      if (is_false(l)) return std::nullopt;
      level_starts_.push_back(trail_.size());
      if (!is_true(l)) {
        ++stats.nodes;
        assign(l, kNoReason);
      }
      continue;
    }

    std::optional<std::uint32_t> next;
    for (std::uint32_t v = 0; v < values_.size(); ++v) {
      if (values_[v] == kUnassigned) {
        next = v;
        break;
      }
    }
    if (!next) {
      std::vector<bool> atoms(atom_count_);
      for (std::size_t v = 0; v < atom_count_; ++v) atoms[v] = values_[v] == 1;
      if (!ground_.satisfied_by(atoms)) {
        throw std::logic_error("solver reached an assignment that violates the clause set");
      }
      return atoms;
    }
    if (*next < atom_count_) ++stats.nodes;
    level_starts_.push_back(trail_.size());
    assign(Lit::make(*next, true), kNoReason);
  }
}

}  // namespace ethica::detail
