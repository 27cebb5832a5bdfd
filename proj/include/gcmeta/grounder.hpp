#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gcmeta/core.hpp"

namespace gcmeta {

class GroundError : public Error {
public:
    GroundError(const std::string& msg, SourceSpan span) : Error(msg), span_(span) {}
    const SourceSpan& span() const noexcept { return span_; }

private:
    SourceSpan span_;
};

struct GroundingReport {
    std::size_t input_rules = 0;
    std::size_t output_rules = 0;
    std::size_t universe_size = 0;
    std::size_t dropped_rules = 0;  // instances falsified by a built-in
};

enum class GroundMode {
    /// Every variable ranges over the whole universe.
    Herbrand,
    /// Bottom-up instantiation over atoms that can possibly be derived, followed by
    /// simplification with respect to certainly-true facts. Answer sets are preserved.
    Relevant,
};

struct GroundOptions {
    GroundMode mode = GroundMode::Herbrand;
    /// Prefix for names of new instances; an empty prefix yields integer names.
    std::string rule_prefix = "r";
    /// Rename every output rule `<prefix>1`, `<prefix>2`, ... in output order.
    bool renumber = false;
};

struct GroundResult {
    Program program;
    GroundingReport report;
};

/// Constants of p (including built-in operands), integers first, then symbols.
std::vector<Term> universe(const Program& p);

GroundResult ground(const Program& p, const GroundOptions& opts = {});

/// Instantiates `check` over the universe of guess and check. A positive body literal
/// whose predicate is defined by `guess` (occurs there, heads no check rule) only
/// takes instances that `guess` can possibly derive.
GroundResult ground_check(const Program& guess, const Program& check,
                          const GroundOptions& opts = {});

/// Throws GroundError naming the first variable of some rule that is not safe.
void check_safety(const Program& p);

}  // namespace gcmeta
