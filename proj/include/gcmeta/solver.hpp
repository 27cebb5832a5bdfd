#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gcmeta/core.hpp"

namespace gcmeta {

struct SolveOptions {
    /// Stop after this many answer sets; nullopt enumerates all.
    std::optional<std::size_t> limit;
    std::uint64_t max_decisions = 1000000;
    /// Wall-clock budget in milliseconds; <= 0 disables the check.
    std::int64_t budget_ms = 10000;
};

/// Budget defaults, with GC_BUDGET_MS overriding the time budget when set.
SolveOptions default_solve_options();

struct SearchStats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t stability_checks = 0;
    double wall_ms = 0.0;
};

enum class SolveStatus { Complete, BudgetExceeded };

struct SolveResult {
    std::vector<AnswerSet> answer_sets;  // canonically ordered
    SearchStats stats;
    SolveStatus status = SolveStatus::Complete;

    bool exhausted() const noexcept { return status == SolveStatus::BudgetExceeded; }
};

/// Enumerates answer sets of a ground, built-in-free program.
SolveResult solve(const Program& p, const SolveOptions& opts = default_solve_options());

/// True iff s is consistent, satisfies the reduct p^s and is minimal for it.
bool is_answer_set(const Program& p, const LiteralSet& s);

/// Exhaustive oracle over all consistent subsets of Lit(p).
std::vector<AnswerSet> brute_force(const Program& p, std::size_t cap = 22);

/// Characterisation for head-cycle-free programs: s satisfies p and the proof
/// closure started from the empty set reaches all of s.
bool hcf_check(const Program& p, const LiteralSet& s);

/// Unique answer set of a ground, normal, stratified, constraint-free program.
AnswerSet stratified_eval(const Program& p);

/// Restricts each answer set to literals whose predicate is in `preds`.
std::vector<AnswerSet> project_predicates(const std::vector<AnswerSet>& sets,
                                          const std::vector<std::string>& preds);

/// Canonical ordering of answer-set families (by sorted literal lists).
void sort_answer_sets(std::vector<AnswerSet>& sets);

}  // namespace gcmeta
