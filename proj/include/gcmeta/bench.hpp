#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gcmeta/core.hpp"
#include "gcmeta/integrate.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/transform.hpp"

namespace gcmeta {

/// Assignments or answer-set projections, each a set of ground literals.
using Witnesses = std::set<LiteralSet>;

// ---------------------------------------------------------------------------
// QBF: exists x forall y, matrix in DNF
// ---------------------------------------------------------------------------

struct QbfLiteral {
    std::string var;
    bool positive = true;
};

struct QbfInstance {
    std::vector<std::string> x_vars;
    std::vector<std::string> y_vars;
    std::vector<std::vector<QbfLiteral>> terms;

    /// Throws PreconditionError on undeclared or duplicate variables.
    void validate() const;
};

/// Exists x0 x1 forall y0 y1 over four terms, one of which has two literals.
QbfInstance worked_qbf();

/// Number of terms used for QBF-n when none is given: 2n.
std::size_t default_qbf_terms(std::size_t n);

/// Variables x0.., y0..; each term draws term_len distinct variables uniformly and
/// a fair polarity per literal.
QbfInstance gen_qbf(std::size_t n_x, std::size_t n_y, std::size_t n_terms, std::size_t term_len,
                    std::uint64_t seed);

/// Guess `x v -x.` per x variable; check `y v -y.` per y variable and one
/// constraint per term.
GuessCheckPair encode_qbf(const QbfInstance& q);

/// exists/forall/term facts plus the saturation program. Terms must have one to
/// three literals; positives and negatives are packed left and padded with
/// true/false.
Program encode_qbf_adhoc(const QbfInstance& q);

/// x-assignments (as literals x / -x) under which every y-assignment satisfies
/// some term. Throws PreconditionError beyond 24 variables.
Witnesses eval_qbf(const QbfInstance& q);

/// x-assignments read from t/f atoms of answer sets of encode_qbf_adhoc.
Witnesses qbf_adhoc_witnesses(const std::vector<AnswerSet>& sets, const QbfInstance& q);

// ---------------------------------------------------------------------------
// Strategic companies
// ---------------------------------------------------------------------------

struct ScInstance {
    std::vector<std::string> companies;
    std::vector<std::array<std::string, 3>> prod_by;   // product, producer, producer
    std::vector<std::array<std::string, 4>> contr_by;  // controlled, controller x3

    /// Throws PreconditionError when a named company is undeclared.
    void validate() const;
};

/// Unbounded form: produces(company, product) and controls(member, group, controlled).
struct ScGeneral {
    std::vector<std::array<std::string, 2>> produces;
    std::vector<std::array<std::string, 3>> controls;
};

/// Barilla, Saiwa, Frutto and Panino with four products and one control row.
ScInstance worked_sc();

/// Companies c0.., products p0..; each product gets one or two distinct producers,
/// and n_controls distinct companies each get one row of one to three distinct
/// controllers. Void slots repeat a filled one.
ScInstance gen_sc(std::size_t n_companies, std::size_t n_products, std::size_t n_controls,
                  std::uint64_t seed);

/// Instance facts belong to the guess.
GuessCheckPair encode_sc(const ScInstance& inst);
Program encode_sc_adhoc1(const ScInstance& inst);
Program encode_sc_adhoc2(const ScInstance& inst);

ScGeneral to_general(const ScInstance& inst);
GuessCheckPair encode_sc_general(const ScGeneral& facts);

/// Minimal company sets covering every product and closed under control.
/// Throws PreconditionError beyond 20 companies.
std::set<std::set<std::string>> strategic_oracle(const ScInstance& inst);
std::set<std::set<std::string>> strategic_oracle(const ScGeneral& facts);

/// Companies c with strat(c) in each answer set.
std::set<std::set<std::string>> strategic_sets(const std::vector<AnswerSet>& sets);

// ---------------------------------------------------------------------------
// Bomb in the toilet
// ---------------------------------------------------------------------------

enum class BombVariant { Plain, Btc, Btuc };

const char* bomb_variant_name(BombVariant v);

struct BombInstance {
    BombVariant variant = BombVariant::Plain;
    std::size_t packages = 1;
    std::size_t horizon = 2;
};

/// One action per step: kind 'n' (no-op), 'd' (dunk package), 'f' (flush).
struct BombAction {
    char kind = 'n';
    std::size_t package = 1;

    friend bool operator<(const BombAction& a, const BombAction& b) {
        return a.kind != b.kind ? a.kind < b.kind : a.package < b.package;
    }
    friend bool operator==(const BombAction& a, const BombAction& b) {
        return a.kind == b.kind && (a.kind != 'd' || a.package == b.package);
    }
};

using BombPlan = std::vector<BombAction>;

std::string to_string(const BombPlan& plan);

/// Plain requires one package and reproduces the two-action listing for horizon 2.
GuessCheckPair encode_bomb(const BombInstance& inst);

/// Every action sequence of length `horizon`.
std::vector<BombPlan> all_bomb_plans(const BombInstance& inst);

/// Forward simulation over every initial state and every nondeterministic outcome.
/// A plan shorter than the horizon is padded with no-ops. Throws PreconditionError
/// beyond 16 packages.
bool conformant_oracle(const BombInstance& inst, const BombPlan& plan);

/// Plans read from dunk/flush atoms of answer sets.
std::set<BombPlan> bomb_plans(const std::vector<AnswerSet>& sets, const BombInstance& inst);

// ---------------------------------------------------------------------------
// Running encodings
// ---------------------------------------------------------------------------

/// Relevant grounding followed by solve.
SolveResult ground_and_solve(const Program& p, const SolveOptions& opts = default_solve_options());

/// prepare_pair, integrate, ground_and_solve.
SolveResult solve_pair(const GuessCheckPair& pair, const TransformOptions& opts,
                       const SolveOptions& solve_opts = default_solve_options());

/// Each answer set restricted to the named predicates.
Witnesses restrict_to(const std::vector<AnswerSet>& sets, const std::vector<std::string>& preds);

enum class BenchFamily { Qbf, Sc, Bomb };

BenchFamily parse_bench_family(const std::string& name);
const char* bench_family_name(BenchFamily f);

struct BenchRow {
    std::string family;
    std::size_t size = 0;
    std::uint64_t seed = 0;
    std::string opts;  // transform options, or an ad hoc encoding name
    double time_ms = 0.0;
    std::size_t answersets = 0;
    bool budget_exceeded = false;
};

/// Instance of `size` for a family: QBF-n (n x, n y, 2n terms of 3 literals),
/// SC-n (n companies, n products, n/2 controls), BTC(n) with horizon 2n-1.
GuessCheckPair bench_pair(BenchFamily f, std::size_t size, std::uint64_t seed);

/// Ad hoc encodings available for a family instance, by name.
std::vector<std::pair<std::string, Program>> bench_adhoc(BenchFamily f, std::size_t size,
                                                         std::uint64_t seed);

/// One row per instance and options combination, plus one per ad hoc encoding when
/// `adhoc` is set. Budget overruns are recorded, never thrown.
std::vector<BenchRow> run_bench(BenchFamily f, const std::vector<std::size_t>& sizes,
                                const std::vector<std::uint64_t>& seeds,
                                const std::vector<TransformOptions>& matrix, bool adhoc,
                                const SolveOptions& solve_opts = default_solve_options());

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& r);

}  // namespace gcmeta
