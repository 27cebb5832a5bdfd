#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "gcmeta/grounder.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/textio.hpp"
#include "gcmeta/transform.hpp"
#include "gcmeta/verify.hpp"
#include "support/oracle.hpp"

using namespace gcmeta;

namespace {

std::set<LiteralSet> as_set(const std::vector<AnswerSet>& v) {
    std::set<LiteralSet> out;
    for (const auto& s : v) out.insert(s.literals);
    return out;
}

LiteralSet lits(std::initializer_list<const char*> names) {
    LiteralSet s;
    for (auto n : names) s.insert(Literal::from_string(n));
    return s;
}

std::vector<AnswerSet> all_of(const Program& p) {
    SolveOptions o = default_solve_options();
    o.limit.reset();
    return solve(p, o).answer_sets;
}

}  // namespace

TEST_CASE("solve: small programs", "[solver]") {
    CHECK(as_set(all_of(parse("a v b."))) == std::set<LiteralSet>{lits({"a"}), lits({"b"})});
    CHECK(as_set(all_of(parse("a :- b. b :- a. a. b."))) == std::set<LiteralSet>{lits({"a", "b"})});
    CHECK(all_of(parse("a :- not a.")).empty());
    CHECK(as_set(all_of(Program{})) == std::set<LiteralSet>{LiteralSet{}});
    CHECK(all_of(parse("a. -a.")).empty());
}

TEST_CASE("solve: limit and budget", "[solver]") {
    SolveOptions o = default_solve_options();
    o.limit = 1;
    const SolveResult r = solve(parse("a v b. c v d."), o);
    CHECK(r.answer_sets.size() == 1);
    CHECK(r.status == SolveStatus::Complete);

    SolveOptions tight = default_solve_options();
    tight.max_decisions = 1;
    const SolveResult b = solve(parse("a v b. c v d. e v f. g v h."), tight);
    CHECK(b.exhausted());
}

TEST_CASE("solve: rejects non-ground input", "[solver]") {
    CHECK_THROWS_AS(solve(parse("p(X) :- q(X).")), PreconditionError);
}

TEST_CASE("is_answer_set", "[solver]") {
    const Program p = parse("a v b.");
    CHECK_FALSE(is_answer_set(p, lits({"a", "b"})));
    CHECK(is_answer_set(p, lits({"a"})));
    CHECK_FALSE(is_answer_set(p, {}));

    const Program t = tr(parse("a :- b. b :- a. a. b."));
    GroundOptions go;
    go.mode = GroundMode::Relevant;
    const Program g = ground(t, go).program;
    std::size_t checked = 0;
    for (const auto& s : all_of(g)) {
        if (!s.contains(Literal::from_string("phi(\"a\",\"b\")"))) continue;
        CHECK(is_answer_set(g, s.literals));
        ++checked;
    }
    CHECK(checked == 1);
}

TEST_CASE("brute_force", "[solver]") {
    CHECK(as_set(brute_force(parse("a :- not b. b :- not a."))) ==
          std::set<LiteralSet>{lits({"a"}), lits({"b"})});
    CHECK(as_set(brute_force(parse("p. q :- p."))) == std::set<LiteralSet>{lits({"p", "q"})});
    CHECK_THROWS(brute_force(parse("a1 v b1. a2 v b2. a3 v b3. a4 v b4. a5 v b5. a6 v b6."), 8));
}

TEST_CASE("brute_force on the strategic guess: four answer sets", "[solver]") {
    GroundOptions go;
    go.mode = GroundMode::Relevant;
    const Program g =
        ground(parse_file(std::string(GC_TEST_DATA) + "/sc_guess.dl"), go).program;
    // by hand: subsets of {barilla, saiwa, frutto, panino} covering every product
    // (pasta: b|s, tomatoes: f|b, wine: b, bread: s|p) and containing frutto
    // whenever barilla and saiwa are in
    const std::vector<std::string> cs = {"barilla", "saiwa", "frutto", "panino"};
    std::size_t expected = 0;
    for (int m = 0; m < 16; ++m) {
        auto in = [&](int i) { return ((m >> i) & 1) != 0; };
        const bool covers = (in(0) || in(1)) && (in(2) || in(0)) && in(0) && (in(1) || in(3));
        const bool control = !(in(0) && in(1)) || in(2);
        if (covers && control) ++expected;
    }
    REQUIRE(expected == 4);
    CHECK(brute_force(g).size() == expected);
    CHECK(all_of(g).size() == expected);
}

TEST_CASE("hcf_check", "[solver]") {
    CHECK(hcf_check(parse("a :- b. b :- a. a. b."), lits({"a", "b"})));
    CHECK_FALSE(hcf_check(parse("a :- b. b :- a."), lits({"a", "b"})));
    CHECK(hcf_check(parse("a v b."), lits({"a"})));
    CHECK_THROWS_AS(hcf_check(parse("a v b. a :- b. b :- a."), lits({"a"})), PreconditionError);
}

TEST_CASE("stratified_eval", "[solver]") {
    CHECK(stratified_eval(parse("a. b :- not c.")).literals == lits({"a", "b"}));
    CHECK(stratified_eval(Program{}).literals.empty());
    CHECK_THROWS_AS(stratified_eval(parse("a :- not b. b :- not a.")), PreconditionError);
    CHECK_THROWS_AS(stratified_eval(parse("a v b.")), PreconditionError);

    // same fixpoint as omega on {a.}
    const Program t = tr(parse("r1: a."));
    Program det;
    for (const auto& r : t.rules)
        if (!r.is_disjunctive()) det.rules.push_back(r);
    det.add(parse("notok.").rules[0]);
    det.assign_names("z");
    GroundOptions go;
    go.mode = GroundMode::Relevant;
    CHECK(stratified_eval(ground(det, go).program).literals == omega(parse("r1: a.")).literals);
}

TEST_CASE("solver agrees with the definition on random programs", "[solver]") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const Program p = gen_random_program(5, 7, seed);
        const auto expected = oracle::answer_sets(p);
        const auto got = all_of(p);
        INFO(print(p));
        CHECK(as_set(got) == expected);
        CHECK(as_set(brute_force(p)) == expected);
        for (const auto& s : got) CHECK(satisfies(p, s.literals));

        Program shuffled = p;
        std::mt19937_64 rng(seed);
        std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), rng);
        CHECK(as_set(all_of(shuffled)) == expected);

        for (const auto& s : expected) CHECK(hcf_check(p, s));
    }
}

TEST_CASE("stratified programs have exactly the stratified answer set", "[solver]") {
    const char* progs[] = {"a. b :- a, not c. d :- not b.", "p. q :- not r. r :- s.", "x :- not y."};
    for (const char* text : progs) {
        const Program p = parse(text);
        const auto sets = all_of(p);
        REQUIRE(sets.size() == 1);
        CHECK(sets[0].literals == stratified_eval(p).literals);
    }
}

TEST_CASE("project_predicates", "[solver]") {
    AnswerSet s;
    s.literals = lits({"strat(a)", "-strat(b)", "company(a)"});
    const auto out = project_predicates({s}, {"strat"});
    REQUIRE(out.size() == 1);
    CHECK(out[0].literals == lits({"strat(a)", "-strat(b)"}));
}
