#include "gcmeta/verify.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "gcmeta/grounder.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/textio.hpp"

namespace gcmeta {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed * 0x9E3779B97F4A7C15ULL + 1) {}
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::mt19937_64 gen_;
};

Literal random_literal(Rng& rng, const std::string& prefix, std::size_t atoms, unsigned neg_pct) {
    return Literal(Atom(prefix + std::to_string(rng.below(atoms))), rng.chance(neg_pct));
}

void finish_rule(Rule& r, Program& p) {
    r.normalize();
    if (r.head.empty() && r.pbody.empty() && r.nbody.empty()) return;
    p.rules.push_back(std::move(r));
}

Witnesses literal_sets(const std::vector<AnswerSet>& sets) {
    Witnesses out;
    for (const auto& s : sets) out.insert(s.literals);
    return out;
}

std::string show(const Witnesses& w) {
    std::string s = "{";
    bool first = true;
    for (const auto& x : w) {
        s += (first ? "" : ", ") + to_string(x);
        first = false;
    }
    return s + "}";
}

std::string show_pair(const GuessCheckPair& pair) {
    return "% guess\n" + print(pair.guess) + "\n% check\n" + print(pair.check) + "\n";
}

SolveResult ground_solve(const Program& p, const VerifyOptions& v) {
    return ground_and_solve(p, v.solve);
}

Program with_facts(Program p, const LiteralSet& s) {
    for (const auto& l : s) {
        Rule r;
        r.head = {l};
        p.rules.push_back(std::move(r));
    }
    p.assign_names("f");
    return p;
}

void record(PropertyResult& r, const std::optional<std::string>& failure,
            const std::function<std::string()>& example) {
    ++r.cases;
    if (!failure) return;
    if (r.failures++ == 0) {
        r.detail = *failure;
        r.counterexample = example();
    }
}

PropertyResult& property(std::vector<PropertyResult>& results, const std::string& name) {
    for (auto& r : results)
        if (r.name == name) return r;
    PropertyResult r;
    r.name = name;
    results.push_back(std::move(r));
    return results.back();
}

}  // namespace

Program gen_random_program(std::size_t atoms, std::size_t rules, std::uint64_t seed) {
    if (atoms == 0 || rules == 0) throw PreconditionError("gen_random_program: empty signature");
    Rng rng(seed);
    for (;;) {
        Program p;
        const std::size_t n = 1 + rng.below(rules);
        for (std::size_t i = 0; i < n; ++i) {
            Rule r;
            const std::size_t roll = rng.below(100);
            const std::size_t heads = roll < 15 ? 0 : (roll < 45 && atoms > 1 ? 2 : 1);
            for (std::size_t k = 0; k < heads; ++k) r.head.push_back(random_literal(rng, "p", atoms, 25));
            const std::size_t pos = rng.below(3), neg = rng.below(3);
            for (std::size_t k = 0; k < pos; ++k) r.pbody.push_back(random_literal(rng, "p", atoms, 25));
            for (std::size_t k = 0; k < neg; ++k) r.nbody.push_back(random_literal(rng, "p", atoms, 25));
            finish_rule(r, p);
        }
        if (p.rules.empty() || !classify(p).hcf) continue;
        p.assign_names("r");
        return p;
    }
}

GuessCheckPair gen_random_pair(std::size_t guess_atoms, std::size_t check_rules,
                               std::uint64_t seed) {
    if (guess_atoms == 0 || check_rules == 0) throw PreconditionError("gen_random_pair: empty signature");
    Rng rng(seed);
    GuessCheckPair pair;
    for (std::size_t i = 0; i < guess_atoms; ++i) {
        const std::string g = "g" + std::to_string(i);
        if (rng.chance(70)) {
            Rule r;
            r.head = {Literal(Atom(g)), Literal(Atom(g), true)};
            pair.guess.rules.push_back(std::move(r));
        }
    }
    for (std::size_t i = rng.below(3); i > 0; --i) {
        Rule r;
        if (rng.chance(60)) r.head.push_back(random_literal(rng, "g", guess_atoms, 30));
        for (std::size_t k = 1 + rng.below(2); k > 0; --k)
            (rng.chance(50) ? r.pbody : r.nbody).push_back(random_literal(rng, "g", guess_atoms, 30));
        finish_rule(r, pair.guess);
    }
    if (pair.guess.rules.empty()) {
        Rule r;
        r.head = {Literal(Atom("g0")), Literal(Atom("g0"), true)};
        pair.guess.rules.push_back(std::move(r));
    }
    pair.guess.assign_names("g");

    for (;;) {
        Program check;
        const std::size_t n = 1 + rng.below(check_rules);
        for (std::size_t i = 0; i < n; ++i) {
            Rule r;
            const std::size_t roll = rng.below(100);
            const std::size_t heads = roll < 35 ? 0 : (roll < 60 ? 2 : 1);
            for (std::size_t k = 0; k < heads; ++k) r.head.push_back(random_literal(rng, "c", 4, 25));
            for (std::size_t k = rng.below(4); k > 0; --k) {
                const bool from_guess = rng.chance(50);
                Literal l = from_guess ? random_literal(rng, "g", guess_atoms, 30)
                                       : random_literal(rng, "c", 4, 25);
                (rng.chance(60) ? r.pbody : r.nbody).push_back(std::move(l));
            }
            finish_rule(r, check);
        }
        if (check.rules.empty() || !classify(check).hcf) continue;
        check.assign_names("k");
        pair.check = std::move(check);
        return pair;
    }
}

namespace {

std::optional<std::string> run_tr(const Program& p, const TransformOptions& o,
                                  const VerifyOptions& v, Witnesses* projections) {
    const Program t = v.drop_line ? detail::tr_without_line(p, o, v.drop_line) : tr(p, o);
    const SolveResult r = ground_solve(t, v);
    if (r.exhausted()) return "solver budget exceeded on tr";
    if (r.answer_sets.empty()) return "(a) tr has no answer set";
    const AnswerSet om = omega(p, o);
    for (const auto& s : r.answer_sets)
        if (!std::includes(om.literals.begin(), om.literals.end(), s.literals.begin(),
                           s.literals.end()))
            return "(b) answer set not within omega: " + to_string(s.literals);
    const Literal notok(Atom("notok"));
    Witnesses proj;
    for (const auto& s : r.answer_sets)
        if (!s.contains(notok)) proj.insert(project(s));
    if (projections) *projections = proj;
    const Witnesses expected = literal_sets(brute_force(p));
    if (proj != expected)
        return "(c) projections " + show(proj) + " differ from answer sets " + show(expected);
    if (expected.empty() && !(r.answer_sets.size() == 1 && r.answer_sets[0] == om))
        return "(d) inconsistent program without the unique omega answer set";
    return std::nullopt;
}

}  // namespace

std::optional<std::string> check_tr(const Program& p, const TransformOptions& o,
                                    const VerifyOptions& v) {
    return run_tr(p, o, v, nullptr);
}

namespace {

/// Guess answer sets S with AS(check with S) empty (or non-empty when `np`).
Witnesses integration_expected(const GuessCheckPair& pair, bool np) {
    Witnesses out;
    GroundOptions go;
    for (const auto& s : brute_force(ground(pair.guess, go).program)) {
        const bool none = brute_force(ground(with_facts(pair.check, s.literals), go).program).empty();
        if (none != np) out.insert(s.literals);
    }
    return out;
}

}  // namespace

std::optional<std::string> check_integration(const GuessCheckPair& pair, const TransformOptions& o,
                                             const VerifyOptions& v) {
    const SolveResult r = solve_pair(pair, o, v.solve);
    if (r.exhausted()) return "solver budget exceeded on the integrated program";
    const auto preds = guess_predicates(pair.guess);
    std::map<LiteralSet, std::size_t> count;
    for (const auto& s : r.answer_sets) {
        LiteralSet proj;
        for (const auto& l : s.literals)
            if (std::find(preds.begin(), preds.end(), l.atom.predicate()) != preds.end())
                proj.insert(l);
        ++count[proj];
    }
    Witnesses got;
    for (const auto& [s, n] : count) {
        if (n != 1) return "guess set " + to_string(s) + " extends to " + std::to_string(n) + " answer sets";
        got.insert(s);
    }
    const Witnesses expected = integration_expected(pair, false);
    if (got != expected) return "projections " + show(got) + " differ from " + show(expected);
    return std::nullopt;
}

std::optional<std::string> check_integration_np(const GuessCheckPair& pair, const VerifyOptions& v) {
    const SolveResult r = ground_solve(integrate_np(pair), v);
    if (r.exhausted()) return "solver budget exceeded";
    const Witnesses got = restrict_to(r.answer_sets, guess_predicates(pair.guess));
    const Witnesses expected = integration_expected(pair, true);
    if (got != expected) return "projections " + show(got) + " differ from " + show(expected);
    return std::nullopt;
}

Program minimize(const Program& p, const std::function<bool(const Program&)>& fails) {
    Program cur = p;
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (std::size_t i = 0; i < cur.rules.size(); ++i) {
            Program smaller = cur;
            smaller.rules.erase(smaller.rules.begin() + static_cast<std::ptrdiff_t>(i));
            if (smaller.rules.empty() || !fails(smaller)) continue;
            cur = std::move(smaller);
            shrunk = true;
            break;
        }
    }
    return cur;
}

std::vector<PropertyResult> verify_random(const std::vector<std::size_t>& sizes,
                                          const std::vector<std::uint64_t>& seeds,
                                          const VerifyOptions& v) {
    std::vector<PropertyResult> results;
    for (const auto& o : v.matrix) property(results, "tr[" + o.str() + "]");
    property(results, "opt-equivalence");
    property(results, "solve=brute_force");
    property(results, "hcf_check=brute_force");
    for (auto size : sizes)
        for (auto seed : seeds) {
            const Program p = gen_random_program(size, 8, seed);
            const Witnesses expected = literal_sets(brute_force(p));
            std::optional<Witnesses> first_proj;
            bool equivalent = true;
            for (const auto& o : v.matrix) {
                Witnesses proj;
                auto failure = run_tr(p, o, v, &proj);
                record(property(results, "tr[" + o.str() + "]"), failure, [&] {
                    auto fails = [&](const Program& q) { return check_tr(q, o, v).has_value(); };
                    return print(minimize(p, fails)) + "\n";
                });
                if (!first_proj) first_proj = proj;
                else if (*first_proj != proj) equivalent = false;
            }
            record(property(results, "opt-equivalence"),
                   equivalent ? std::nullopt
                              : std::optional<std::string>("options disagree on projections"),
                   [&] { return print(p) + "\n"; });

            const SolveResult sr = solve(p, v.solve);
            const Witnesses got = literal_sets(sr.answer_sets);
            record(property(results, "solve=brute_force"),
                   got == expected ? std::nullopt
                                   : std::optional<std::string>("solve " + show(got) +
                                                                " vs brute_force " + show(expected)),
                   [&] { return print(p) + "\n"; });

            // every consistent subset of Lit(p)
            const auto lits = literals_of(p);
            std::optional<std::string> hcf_failure;
            for (std::uint32_t m = 0; m < (1U << lits.size()) && !hcf_failure; ++m) {
                LiteralSet s;
                for (std::size_t i = 0; i < lits.size(); ++i)
                    if ((m >> i) & 1U) s.insert(lits[i]);
                if (!is_consistent(s)) continue;
                if (hcf_check(p, s) != (expected.count(s) > 0))
                    hcf_failure = "hcf_check disagrees on " + to_string(s);
            }
            record(property(results, "hcf_check=brute_force"), hcf_failure,
                   [&] { return print(p) + "\n"; });
        }
    return results;
}

std::vector<PropertyResult> verify_pairs(const std::vector<std::size_t>& sizes,
                                         const std::vector<std::uint64_t>& seeds,
                                         const VerifyOptions& v) {
    std::vector<PropertyResult> results;
    for (const auto& o : v.matrix) property(results, "integrate[" + o.str() + "]");
    property(results, "integrate_np");
    for (auto size : sizes)
        for (auto seed : seeds) {
            const GuessCheckPair pair = gen_random_pair(size, 6, seed);
            for (const auto& o : v.matrix)
                record(property(results, "integrate[" + o.str() + "]"), check_integration(pair, o, v),
                       [&] { return show_pair(pair); });
            record(property(results, "integrate_np"), check_integration_np(pair, v),
                   [&] { return show_pair(pair); });
        }
    return results;
}

namespace {

std::string show_qbf(const QbfInstance& q) {
    const auto pair = encode_qbf(q);
    return show_pair(pair);
}

std::optional<std::string> qbf_agreement(const QbfInstance& q, const TransformOptions& o,
                                         const Witnesses& truth, const VerifyOptions& v) {
    const SolveResult r = solve_pair(encode_qbf(q), o, v.solve);
    if (r.exhausted()) return "solver budget exceeded";
    const Witnesses got = restrict_to(r.answer_sets, q.x_vars);
    if (got != truth) return "integrated " + show(got) + " vs truth table " + show(truth);
    return std::nullopt;
}

std::optional<std::string> qbf_adhoc_agreement(const QbfInstance& q, const Witnesses& truth,
                                               const VerifyOptions& v) {
    const SolveResult r = ground_and_solve(encode_qbf_adhoc(q), v.solve);
    if (r.exhausted()) return "solver budget exceeded";
    const Witnesses got = qbf_adhoc_witnesses(r.answer_sets, q);
    if (got != truth) return "ad hoc " + show(got) + " vs truth table " + show(truth);
    return std::nullopt;
}

}  // namespace

std::vector<PropertyResult> verify_qbf(const std::vector<std::size_t>& sizes,
                                       const std::vector<std::uint64_t>& seeds,
                                       const VerifyOptions& v) {
    std::vector<PropertyResult> results;
    for (const auto& o : v.matrix) property(results, "qbf[" + o.str() + "]");
    property(results, "qbf[adhoc]");
    for (auto size : sizes)
        for (auto seed : seeds) {
            const QbfInstance q = gen_qbf(size, size, default_qbf_terms(size), std::min<std::size_t>(3, 2 * size), seed);
            const Witnesses truth = eval_qbf(q);
            for (const auto& o : v.matrix)
                record(property(results, "qbf[" + o.str() + "]"), qbf_agreement(q, o, truth, v),
                       [&] { return show_qbf(q); });
            record(property(results, "qbf[adhoc]"), qbf_adhoc_agreement(q, truth, v),
                   [&] { return show_qbf(q); });
        }
    return results;
}

PropertyResult verify_qbf_exhaustive(const TransformOptions& o, const VerifyOptions& v) {
    const std::vector<std::string> vars{"x0", "x1", "y0", "y1"};
    std::vector<std::vector<QbfLiteral>> terms;
    for (std::size_t skip = 0; skip < 4; ++skip)
        for (unsigned signs = 0; signs < 8; ++signs) {
            std::vector<QbfLiteral> t;
            unsigned bit = 0;
            for (std::size_t i = 0; i < 4; ++i)
                if (i != skip) t.push_back({vars[i], ((signs >> bit++) & 1U) == 0});
            terms.push_back(std::move(t));
        }
    PropertyResult result;
    result.name = "qbf-exhaustive[" + o.str() + "]";
    std::vector<std::size_t> pick;
    const std::function<void(std::size_t)> walk = [&](std::size_t from) {
        QbfInstance q;
        q.x_vars = {"x0", "x1"};
        q.y_vars = {"y0", "y1"};
        for (auto i : pick) q.terms.push_back(terms[i]);
        const Witnesses truth = eval_qbf(q);
        auto failure = qbf_agreement(q, o, truth, v);
        if (!failure) failure = qbf_adhoc_agreement(q, truth, v);
        record(result, failure, [&] { return show_qbf(q); });
        if (pick.size() == 4) return;
        for (std::size_t i = from; i < terms.size(); ++i) {
            pick.push_back(i);
            walk(i + 1);
            pick.pop_back();
        }
    };
    walk(0);
    return result;
}

std::vector<PropertyResult> verify_sc(const std::vector<std::size_t>& sizes,
                                      const std::vector<std::uint64_t>& seeds,
                                      const VerifyOptions& v) {
    std::vector<PropertyResult> results;
    for (const auto& o : v.matrix) property(results, "sc[" + o.str() + "]");
    for (const char* name : {"sc[adhoc1]", "sc[adhoc2]", "sc[general]"}) property(results, name);
    auto compare = [](const std::set<std::set<std::string>>& got,
                      const std::set<std::set<std::string>>& want,
                      const SolveResult* r) -> std::optional<std::string> {
        if (r && r->exhausted()) return "solver budget exceeded";
        if (got == want) return std::nullopt;
        return "strategic sets differ from the oracle (" + std::to_string(got.size()) + " vs " +
               std::to_string(want.size()) + ")";
    };
    for (auto size : sizes)
        for (auto seed : seeds) {
            const ScInstance inst = gen_sc(size, size, size / 2, seed);
            const auto want = strategic_oracle(inst);
            const auto pair = encode_sc(inst);
            auto example = [&] { return show_pair(pair); };
            for (const auto& o : v.matrix) {
                const SolveResult r = solve_pair(pair, o, v.solve);
                record(property(results, "sc[" + o.str() + "]"),
                       compare(strategic_sets(r.answer_sets), want, &r), example);
            }
            const SolveResult a1 = ground_and_solve(encode_sc_adhoc1(inst), v.solve);
            record(property(results, "sc[adhoc1]"), compare(strategic_sets(a1.answer_sets), want, &a1),
                   example);
            const SolveResult a2 = ground_and_solve(encode_sc_adhoc2(inst), v.solve);
            record(property(results, "sc[adhoc2]"), compare(strategic_sets(a2.answer_sets), want, &a2),
                   example);
            const ScGeneral general = to_general(inst);
            const SolveResult gr = solve_pair(encode_sc_general(general), v.matrix.back(), v.solve);
            auto failure = compare(strategic_oracle(general), want, nullptr);
            if (!failure) failure = compare(strategic_sets(gr.answer_sets), want, &gr);
            record(property(results, "sc[general]"), failure, example);
        }
    return results;
}

std::vector<PropertyResult> verify_bomb(const std::vector<std::size_t>& sizes,
                                        std::size_t max_horizon, const VerifyOptions& v) {
    std::vector<PropertyResult> results;
    std::vector<BombInstance> instances;
    for (std::size_t h = 0; h <= max_horizon; ++h) instances.push_back({BombVariant::Plain, 1, h});
    for (auto size : sizes)
        for (auto variant : {BombVariant::Btc, BombVariant::Btuc})
            for (std::size_t h = 0; h <= max_horizon; ++h) instances.push_back({variant, size, h});
    for (const auto& inst : instances) {
        std::set<BombPlan> want;
        for (const auto& plan : all_bomb_plans(inst))
            if (conformant_oracle(inst, plan)) want.insert(plan);
        const auto pair = encode_bomb(inst);
        for (const auto& o : v.matrix) {
            const SolveResult r = solve_pair(pair, o, v.solve);
            std::optional<std::string> failure;
            if (r.exhausted()) failure = "solver budget exceeded";
            else if (bomb_plans(r.answer_sets, inst) != want)
                failure = std::string(bomb_variant_name(inst.variant)) + "(" +
                          std::to_string(inst.packages) + ") horizon " + std::to_string(inst.horizon) +
                          ": plan sets differ from the oracle";
            record(property(results, std::string("bomb-") + bomb_variant_name(inst.variant) + "[" +
                                         o.str() + "]"),
                   failure, [&] { return show_pair(pair); });
        }
    }
    return results;
}

std::string format_report(const std::vector<PropertyResult>& results) {
    std::string out;
    for (const auto& r : results) {
        if (r.passed())
            out += "PASS " + r.name + " (" + std::to_string(r.cases) + ")\n";
        else
            out += "FAIL " + r.name + " (" + std::to_string(r.failures) + "/" +
                   std::to_string(r.cases) + "): " + r.detail + "\n";
    }
    return out;
}

}  // namespace gcmeta
