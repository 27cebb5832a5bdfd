#include <catch2/catch_amalgamated.hpp>

#include "gcmeta/grounder.hpp"
#include "gcmeta/integrate.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/textio.hpp"

using namespace gcmeta;

namespace {

std::vector<std::string> texts(const Program& p) {
    std::vector<std::string> out;
    for (const auto& r : p.rules) out.push_back(print_rule(r));
    return out;
}

std::vector<std::string> names(const std::vector<Term>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(t.str());
    return out;
}

}  // namespace

TEST_CASE("ground: substitution over the universe", "[grounder]") {
    const GroundResult g = ground(parse("time(0). time(1). dunk(T) v -dunk(T) :- time(T)."));
    CHECK(texts(g.program) == std::vector<std::string>{"time(0).", "time(1).",
                                                       "dunk(0) v -dunk(0) :- time(0).",
                                                       "dunk(1) v -dunk(1) :- time(1)."});
    CHECK(g.program.flags().ground);
    CHECK(g.report.input_rules == 3);
    CHECK(g.report.output_rules == 4);
    CHECK(g.report.universe_size == 2);
}

TEST_CASE("ground: comparison built-ins filter instances", "[grounder]") {
    const GroundResult g = ground(parse("num(1). num(2). p(X,Y) :- num(X), num(Y), X < Y."));
    CHECK(texts(g.program) ==
          std::vector<std::string>{"num(1).", "num(2).", "p(1,2) :- num(1), num(2)."});
    CHECK(g.report.dropped_rules == 3);
    for (const auto& r : g.program.rules) CHECK(r.builtins.empty());
}

TEST_CASE("ground: assignment binds a fresh variable", "[grounder]") {
    const GroundResult g = ground(parse("t(0). t(1). t(2). n(T1) :- t(T), T1=T+1."));
    const auto out = texts(g.program);
    CHECK(std::find(out.begin(), out.end(), "n(1) :- t(0).") != out.end());
    CHECK(std::find(out.begin(), out.end(), "n(2) :- t(1).") != out.end());
    // 3 lies outside the universe
    for (const auto& s : out) CHECK(s.find("n(3)") == std::string::npos);
}

TEST_CASE("ground: safety and arithmetic errors", "[grounder]") {
    CHECK_THROWS_AS(ground(parse("p(X) :- not q(X).")), GroundError);
    CHECK_THROWS_AS(ground(parse("p(X) :- q(Y).")), GroundError);
    try {
        ground(parse("q(a).\np(X) :- q(Y)."));
        FAIL("expected an unsafe-rule error");
    } catch (const GroundError& e) {
        CHECK(std::string(e.what()).find('X') != std::string::npos);
        CHECK(e.span().line == 2);
    }
    CHECK_THROWS_AS(ground(parse("q(a). p(Y) :- q(X), Y=a+1.")), GroundError);
    // a non-integer binding only removes that instance
    CHECK(ground(parse("q(a). q(1). p(Y) :- q(X), Y=X+1.")).program.size() == 2);
}

TEST_CASE("ground: ground input is returned unchanged, duplicates collapse", "[grounder]") {
    Program p = parse("a :- b, not c. b. c v d.");
    CHECK(texts(ground(p).program) == texts(p));
    Program dup = parse("q(a). q(b). p :- q(X). p :- q(a).");
    const auto out = texts(ground(dup).program);
    CHECK(std::count(out.begin(), out.end(), "p :- q(a).") == 1);
}

TEST_CASE("universe", "[grounder]") {
    CHECK(names(universe(parse("p(a,b). q(1)."))) == std::vector<std::string>{"1", "a", "b"});
    CHECK(universe(Program{}).empty());
    const auto u = names(universe(parse_file(std::string(GC_TEST_DATA) + "/sc_guess.dl")));
    CHECK(u == std::vector<std::string>{"barilla", "bread", "frutto", "panino", "pasta", "saiwa",
                                        "tomatoes", "wine"});
}

TEST_CASE("ground_check: planning check matches the listed ground rules", "[grounder]") {
    const Program guess = parse_file(std::string(GC_TEST_DATA) + "/bomb_guess.dl");
    const Program check = parse_file(std::string(GC_TEST_DATA) + "/bomb_check.dl");
    const GuessCheckPair pair = prepare_pair(guess, check);
    std::vector<std::string> named;
    for (const auto& r : pair.check.rules) named.push_back(r.name.str() + ": " + print_rule(r));
    CHECK(named == std::vector<std::string>{
                                   "1: armed(0) v -armed(0).",
                                   "2: armed(1) :- armed(0), time(0), not -armed(1).",
                                   "3: armed(2) :- armed(1), time(1), not -armed(2).",
                                   "4: dunked(1) :- dunked(0).",
                                   "5: dunked(2) :- dunked(1).",
                                   "6: dunked(1) :- dunk(0).",
                                   "7: dunked(2) :- dunk(1).",
                                   "8: armed(1) v -armed(1) :- dunk(0), armed(0).",
                                   "9: armed(2) v -armed(2) :- dunk(1), armed(1).",
                                   "10: -armed(1) :- flush(0), dunked(0).",
                                   "11: -armed(2) :- flush(1), dunked(1).",
                                   "12: :- not armed(2)."});
}

TEST_CASE("relevant grounding preserves answer sets", "[grounder]") {
    const char* progs[] = {
        "time(0). time(1). dunk(T) v -dunk(T) :- time(T). :- dunk(T), dunk(S), T != S.",
        "q(a). q(b). p(X) :- q(X), not r(X). r(X) :- q(X), not p(X).",
        "e(1,2). e(2,3). path(X,Y) :- e(X,Y). path(X,Z) :- path(X,Y), e(Y,Z).",
    };
    for (const char* text : progs) {
        const Program p = parse(text);
        GroundOptions herb;
        GroundOptions rel;
        rel.mode = GroundMode::Relevant;
        auto a = solve(ground(p, herb).program).answer_sets;
        auto b = solve(ground(p, rel).program).answer_sets;
        INFO(text);
        CHECK(a == b);
    }
}
