#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcmeta/bench.hpp"
#include "gcmeta/core.hpp"
#include "gcmeta/integrate.hpp"
#include "gcmeta/transform.hpp"

namespace gcmeta {

/// Random ground head-cycle-free program over atoms p0..p{atoms-1} with at most
/// `rules` rules, disjunctive heads, strong and default negation.
Program gen_random_program(std::size_t atoms, std::size_t rules, std::uint64_t seed);

/// Random ground pair: a guess over g0..g{guess_atoms-1} and a head-cycle-free
/// check of at most `check_rules` rules with heads over c0..c3 and bodies mixing
/// guess and check literals.
GuessCheckPair gen_random_pair(std::size_t guess_atoms, std::size_t check_rules,
                               std::uint64_t seed);

/// Outcome of one property over a suite.
struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string counterexample;  // first failing input, minimized where possible
    std::string detail;          // what went wrong on it

    bool passed() const noexcept { return failures == 0; }
};

struct VerifyOptions {
    std::vector<TransformOptions> matrix = TransformOptions::all_combinations();
    /// Drop this numbered line of the fixed meta block (mutation testing); 0 keeps all.
    int drop_line = 0;
    SolveOptions solve = default_solve_options();
};

/// First violated clause of the transformation properties for p, if any: tr(p)
/// has an answer set, every answer set lies within omega(p), notok-free
/// projections equal brute_force(p), and an inconsistent p yields exactly omega.
std::optional<std::string> check_tr(const Program& p, const TransformOptions& o,
                                    const VerifyOptions& v = {});

/// First violation of the integration correspondence for a pair, if any: guess
/// projections of the integrated program equal the guess answer sets S for which
/// check with S has no answer set, each extended by exactly one answer set.
std::optional<std::string> check_integration(const GuessCheckPair& pair, const TransformOptions& o,
                                             const VerifyOptions& v = {});

/// integrate_np projections equal the guess answer sets S for which check with S
/// has an answer set.
std::optional<std::string> check_integration_np(const GuessCheckPair& pair,
                                                const VerifyOptions& v = {});

/// Greedy rule deletion keeping `fails` true.
Program minimize(const Program& p, const std::function<bool(const Program&)>& fails);

/// Transformation properties, solver agreement and option equivalence over random
/// programs with `size` atoms and up to 8 rules.
std::vector<PropertyResult> verify_random(const std::vector<std::size_t>& sizes,
                                          const std::vector<std::uint64_t>& seeds,
                                          const VerifyOptions& v = {});

/// Integration properties over random pairs with `size` guess atoms and up to 6
/// check rules.
std::vector<PropertyResult> verify_pairs(const std::vector<std::size_t>& sizes,
                                         const std::vector<std::uint64_t>& seeds,
                                         const VerifyOptions& v = {});

/// Integrated encoding, truth table and ad hoc encoding agree on QBF-n instances.
std::vector<PropertyResult> verify_qbf(const std::vector<std::size_t>& sizes,
                                       const std::vector<std::uint64_t>& seeds,
                                       const VerifyOptions& v = {});

/// Same agreement on every formula over x0, x1, y0, y1 made of up to four distinct
/// three-literal terms, with one option set.
PropertyResult verify_qbf_exhaustive(const TransformOptions& o, const VerifyOptions& v = {});

/// Integrated encoding, oracle, both ad hoc encodings and the general encoding
/// agree on SC-n instances.
std::vector<PropertyResult> verify_sc(const std::vector<std::size_t>& sizes,
                                      const std::vector<std::uint64_t>& seeds,
                                      const VerifyOptions& v = {});

/// Integrated plan sets equal the oracle's conformant plans for the plain variant
/// and for BTC/BTUC with `size` packages, horizons 0..max_horizon.
std::vector<PropertyResult> verify_bomb(const std::vector<std::size_t>& sizes,
                                        std::size_t max_horizon, const VerifyOptions& v = {});

/// "PASS name (cases)" / "FAIL name (failures/cases): detail" lines.
std::string format_report(const std::vector<PropertyResult>& results);

}  // namespace gcmeta
