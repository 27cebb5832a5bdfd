#include <catch2/catch_amalgamated.hpp>

#include "gcmeta/bench.hpp"
#include "gcmeta/grounder.hpp"
#include "gcmeta/integrate.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/textio.hpp"
#include "gcmeta/verify.hpp"
#include "support/oracle.hpp"

using namespace gcmeta;

namespace {

Literal L(const char* text) { return Literal::from_string(text); }

LiteralSet lits(std::initializer_list<const char*> names) {
    LiteralSet s;
    for (auto n : names) s.insert(L(n));
    return s;
}

std::vector<std::string> strs(const std::vector<Literal>& ls) {
    std::vector<std::string> out;
    for (const auto& l : ls) out.push_back(l.str());
    return out;
}

std::vector<AnswerSet> solve_all(const Program& p) {
    SolveOptions o = default_solve_options();
    o.limit.reset();
    const SolveResult r = ground_and_solve(p, o);
    REQUIRE_FALSE(r.exhausted());
    return r.answer_sets;
}

GuessCheckPair file_pair(const char* guess, const char* check) {
    const std::string dir = GC_TEST_DATA;
    return prepare_pair(parse_file(dir + "/" + guess), parse_file(dir + "/" + check));
}

// The guess answer sets S for which check plus S has (or lacks) an answer set,
// by brute force from the definition.
std::set<LiteralSet> expected_guesses(const GuessCheckPair& pair, bool check_consistent) {
    std::set<LiteralSet> out;
    for (const auto& s : oracle::answer_sets(pair.guess)) {
        Program joined = pair.check;
        for (const auto& l : s) {
            Rule fact;
            fact.head.push_back(l);
            joined.rules.push_back(fact);
        }
        if (oracle::answer_sets(joined).empty() != check_consistent) out.insert(s);
    }
    return out;
}

std::set<LiteralSet> guess_projections(const std::vector<AnswerSet>& sets, const Program& guess) {
    const std::vector<Literal> all = literals_of(guess);
    const LiteralSet universe(all.begin(), all.end());
    std::set<LiteralSet> out;
    for (const auto& s : sets) {
        LiteralSet proj;
        for (const auto& l : s.literals)
            if (universe.count(l)) proj.insert(l);
        out.insert(proj);
    }
    return out;
}

}  // namespace

TEST_CASE("enforce_splitting renames shared check heads", "[integrate]") {
    const GuessCheckPair pair{parse("a v b."), parse("a :- c.")};
    CHECK_FALSE(splitting_violations(pair.guess, pair.check).empty());
    const auto renames = splitting_renames(pair);
    REQUIRE(renames.size() == 1);
    const std::string fresh = renames.at("a");
    CHECK(fresh != "a");
    CHECK(fresh != "b");
    CHECK(fresh != "c");

    const GuessCheckPair split = enforce_splitting(pair);
    CHECK(splitting_violations(split.guess, split.check).empty());
    CHECK(print(split.guess) == "a v b.");
    CHECK(print(split.check) == fresh + " :- c.\n" + fresh + " :- a.");
}

TEST_CASE("enforce_splitting leaves split pairs alone", "[integrate]") {
    const GuessCheckPair pair{parse("g v -g."), parse("x :- g.")};
    CHECK(splitting_renames(pair).empty());
    CHECK(print(enforce_splitting(pair).check) == print(pair.check));

    const std::string dir = GC_TEST_DATA;
    const GuessCheckPair sc{parse_file(dir + "/sc_guess.dl"), parse_file(dir + "/sc_check.dl")};
    CHECK(splitting_renames(sc).empty());
    CHECK(print(enforce_splitting(sc).check) == print(sc.check));
}

TEST_CASE("split_bodies partitions by predicate origin", "[integrate]") {
    const GuessCheckPair bomb = file_pair("bomb_guess.dl", "bomb_check.dl");
    const auto splits = split_bodies(bomb);
    bool found = false;
    for (const auto& s : splits) {
        if (s.rule.str() != "2") continue;
        found = true;
        CHECK(strs(s.guess_pos) == std::vector<std::string>{"time(0)"});
        CHECK(s.guess_neg.empty());
        CHECK(strs(s.check_pos) == std::vector<std::string>{"armed(0)"});
        CHECK(strs(s.check_neg) == std::vector<std::string>{"-armed(1)"});
    }
    CHECK(found);

    const GuessCheckPair qbf = prepare_pair(parse("x0 v -x0."), parse("y0 v -y0. :- y0, x0."));
    const auto q = split_bodies(qbf);
    REQUIRE(q.size() == 2);
    CHECK(q[0].guess_pos.empty());
    CHECK(q[0].check_pos.empty());
    CHECK(strs(q[1].guess_pos) == std::vector<std::string>{"x0"});
    CHECK(strs(q[1].check_pos) == std::vector<std::string>{"y0"});
}

TEST_CASE("integrate: guess-dependent negative constraint literal is kept", "[integrate]") {
    const GuessCheckPair pair = prepare_pair(parse("g v -g."), parse("x :- g. :- not x."));
    const auto expected = expected_guesses(pair, false);
    CHECK(expected == std::set<LiteralSet>{lits({"-g"})});
    for (const auto& o : TransformOptions::all_combinations()) {
        INFO(o.str());
        CHECK(guess_projections(solve_all(integrate(pair, o)), pair.guess) == expected);
    }
}

TEST_CASE("integrate: worked QBF", "[integrate]") {
    const GuessCheckPair pair = file_pair("qbf_guess.dl", "qbf_check.dl");
    for (const auto& o : TransformOptions::all_combinations()) {
        INFO(o.str());
        const auto sets = solve_all(integrate(pair, o));
        REQUIRE(sets.size() == 2);
        CHECK(restrict_to(sets, {"x0", "x1"}) ==
              Witnesses{lits({"-x0", "-x1"}), lits({"-x0", "x1"})});
    }
}

TEST_CASE("integrate: bomb in the toilet has one plan", "[integrate]") {
    const GuessCheckPair pair = file_pair("bomb_guess.dl", "bomb_check.dl");
    const auto sets = solve_all(integrate(pair));
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].contains(L("dunk(0)")));
    CHECK(sets[0].contains(L("flush(1)")));
    CHECK(restrict_to(sets, {"dunk", "flush"}) ==
          Witnesses{lits({"dunk(0)", "-dunk(1)", "-flush(0)", "flush(1)"})});
}

TEST_CASE("integrate: strategic companies on the worked instance", "[integrate]") {
    const GuessCheckPair pair = file_pair("sc_guess.dl", "sc_check.dl");
    for (const auto& o : TransformOptions::all_combinations()) {
        INFO(o.str());
        const auto sets = solve_all(integrate(pair, o));
        REQUIRE(sets.size() == 2);
        CHECK(strategic_sets(sets) == std::set<std::set<std::string>>{
                                          {"barilla", "saiwa", "frutto"}, {"barilla", "panino"}});
    }
}

TEST_CASE("integrate: each surviving guess extends to one answer set", "[integrate]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const GuessCheckPair raw = gen_random_pair(3, 5, seed);
        const GuessCheckPair pair = prepare_pair(raw.guess, raw.check);
        const auto expected = expected_guesses(pair, false);
        for (const auto& o : {TransformOptions{}, TransformOptions::parse("all")}) {
            INFO(print(pair.guess) << "\n---\n" << print(pair.check) << "\n[" << o.str() << "]");
            const auto sets = solve_all(integrate(pair, o));
            CHECK(guess_projections(sets, pair.guess) == expected);
            CHECK(sets.size() == expected.size());
        }
    }
}

TEST_CASE("integrate_np", "[integrate]") {
    const GuessCheckPair pair = prepare_pair(parse("a v b."), parse("ok :- a. :- not ok."));
    CHECK(restrict_to(solve_all(integrate_np(pair)), {"a", "b"}) == Witnesses{lits({"a"})});

    const GuessCheckPair empty = prepare_pair(parse("a v b."), Program{});
    CHECK(restrict_to(solve_all(integrate_np(empty)), {"a", "b"}) ==
          Witnesses{lits({"a"}), lits({"b"})});

    const GuessCheckPair unsat = prepare_pair(parse("a v b."), parse("p. :- p."));
    CHECK(solve_all(integrate_np(unsat)).empty());

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const GuessCheckPair raw = gen_random_pair(3, 5, seed);
        const GuessCheckPair p = prepare_pair(raw.guess, raw.check);
        INFO(seed);
        CHECK(guess_projections(solve_all(integrate_np(p)), p.guess) == expected_guesses(p, true));
    }
}

TEST_CASE("guess_predicates", "[integrate]") {
    const auto preds = guess_predicates(parse("strat(X) v -strat(X) :- company(X). company(a)."));
    CHECK(std::set<std::string>(preds.begin(), preds.end()) ==
          std::set<std::string>{"company", "strat"});
}
