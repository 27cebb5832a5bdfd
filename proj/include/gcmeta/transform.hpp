#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gcmeta/core.hpp"

namespace gcmeta {

struct TransformOptions {
    bool opt_mod = false;
    bool opt_pa = false;
    bool opt_dep = false;

    /// Accepts "none", "all", or a comma-separated list of mod, pa, dep.
    static TransformOptions parse(std::string_view text);
    /// "none", or the enabled options joined by ','.
    std::string str() const;
    /// All eight combinations, "none" first.
    static std::vector<TransformOptions> all_combinations();

    friend bool operator==(const TransformOptions& a, const TransformOptions& b) noexcept {
        return a.opt_mod == b.opt_mod && a.opt_pa == b.opt_pa && a.opt_dep == b.opt_dep;
    }
};

/// Raised when an input program uses a predicate reserved by the meta-interpreter.
class VocabularyError : public Error {
public:
    using Error::Error;
};

/// Reserved predicate names of the meta-interpreter.
const std::vector<std::string>& meta_vocabulary();

/// Throws VocabularyError if p uses a reserved predicate.
void check_vocabulary(const Program& p);

/// A check rule whose reified facts and optimisation rules are conditioned on
/// `guard` (the literals of its body defined by the guess program). `guard_facts`
/// marks guards built only from facts of the guess program.
struct GuardedRule {
    Rule rule;
    std::vector<Literal> guard_pos;
    std::vector<Literal> guard_neg;
    bool guard_facts = true;
};

/// String term naming a literal, e.g. "-a(1)".
Term reify(const Literal& l);

/// lit/atom facts of a ground program.
Program factual_rep(const Program& p);

/// The meta-interpreter for the given options. With opt_mod or opt_pa the result
/// also contains rules generated from p.
Program meta_rules(const TransformOptions& opts, const Program& p = {});

/// Factual representation plus meta-interpreter.
Program tr(const Program& p, const TransformOptions& opts = {});

/// Shared by tr and integration: reified facts (conditional on guards) followed by
/// the input-dependent optimisation rules. Rules whose head meets their positive
/// body are dropped first, and head literals that occur in the rule's negative
/// body are removed; both steps preserve answer sets. With opt_mod, negative constraint
/// literals that head no rule are deleted, and the remaining ones keep their
/// lit(n,..) fact unless some head occurrence has a fact-only guard.
Program reified_input(const std::vector<GuardedRule>& rules, const TransformOptions& opts);

/// The input-independent rules of the meta-interpreter.
Program fixed_meta_rules(const TransformOptions& opts);

/// Canonical answer set of the meta-interpreter: the unique answer set of the
/// non-disjunctive part of tr(p, opts) together with the fact notok.
AnswerSet omega(const Program& p, const TransformOptions& opts = {});

/// Literals named by the inS atoms of s.
LiteralSet project(const LiteralSet& s);
inline LiteralSet project(const AnswerSet& s) { return project(s.literals); }

/// Names of the potentially applicable rules, canonically ordered.
std::vector<Term> pa_closure(const Program& p);

namespace detail {
/// tr with one numbered line of the fixed block removed (mutation testing).
Program tr_without_line(const Program& p, const TransformOptions& opts, int line);
}  // namespace detail

}  // namespace gcmeta
