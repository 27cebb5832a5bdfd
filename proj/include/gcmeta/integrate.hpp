#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcmeta/core.hpp"
#include "gcmeta/transform.hpp"

namespace gcmeta {

/// A guess program and a check program over a shared vocabulary. The guess may
/// contain variables; the check must be ground before build_check_prime.
struct GuessCheckPair {
    Program guess;
    Program check;
};

/// Body of a check rule partitioned into the part defined by the check program
/// and the part defined by the guess program.
struct BodySplit {
    Term rule;
    std::vector<Literal> check_pos, check_neg;
    std::vector<Literal> guess_pos, guess_neg;
};

/// Renames every check-head predicate that also occurs in the guess to a fresh
/// primed name and adds bridge rules p'(t) :- p(t).
GuessCheckPair enforce_splitting(const GuessCheckPair& pair);

/// The renaming enforce_splitting applies, original predicate to fresh name.
std::map<std::string, std::string> splitting_renames(const GuessCheckPair& pair);

/// A predicate belongs to the guess iff it occurs there and heads no check rule.
std::vector<BodySplit> split_bodies(const GuessCheckPair& pair);

/// Enforces splitting and grounds the check against the guess; check rules are
/// numbered 1, 2, ... in output order.
GuessCheckPair prepare_pair(const Program& guess, const Program& check);

/// Conditional reified check, the meta-interpreter and `:- not notok.`
Program build_check_prime(const GuessCheckPair& pair, const TransformOptions& opts = {});

/// guess together with build_check_prime(pair, opts).
Program integrate(const GuessCheckPair& pair, const TransformOptions& opts = {});

/// Plain union, for checks that should succeed rather than fail.
Program integrate_np(const GuessCheckPair& pair);

/// Predicate names (as strings) occurring in the guess program.
std::vector<std::string> guess_predicates(const Program& guess);

}  // namespace gcmeta
