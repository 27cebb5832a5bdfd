#include <catch2/catch_amalgamated.hpp>

#include "gcmeta/grounder.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/textio.hpp"
#include "gcmeta/transform.hpp"
#include "gcmeta/verify.hpp"
#include "support/golden.hpp"
#include "support/oracle.hpp"

using namespace gcmeta;

namespace {

std::set<std::string> canon(const Program& p) {
    std::set<std::string> out;
    for (const auto& r : p.rules) out.insert(golden::canonical(r));
    return out;
}

Literal L(const char* text) { return Literal::from_string(text); }

std::vector<AnswerSet> solve_tr(const Program& p, const TransformOptions& o) {
    GroundOptions go;
    go.mode = GroundMode::Relevant;
    SolveOptions so = default_solve_options();
    so.limit.reset();
    const SolveResult r = solve(ground(tr(p, o), go).program, so);
    REQUIRE_FALSE(r.exhausted());
    return r.answer_sets;
}

std::set<LiteralSet> projections(const std::vector<AnswerSet>& sets) {
    std::set<LiteralSet> out;
    for (const auto& s : sets)
        if (!s.contains(L("notok"))) out.insert(project(s));
    return out;
}

}  // namespace

TEST_CASE("factual representation", "[transform]") {
    CHECK(canon(factual_rep(parse("r1: a :- b, not c."))) ==
          std::set<std::string>{"lit(h,\"a\",r1).", "atom(\"a\",\"a\").", "lit(p,\"b\",r1).",
                                "lit(n,\"c\",r1)."});
    CHECK(canon(factual_rep(parse("r1: -a."))) ==
          std::set<std::string>{"lit(h,\"-a\",r1).", "atom(\"-a\",\"a\")."});
    CHECK(canon(factual_rep(parse("1: y0 v -y0. 2: y1 v -y1."))) ==
          std::set<std::string>{"lit(h,\"y0\",1).", "lit(h,\"-y0\",1).", "lit(h,\"y1\",2).",
                                "lit(h,\"-y1\",2).", "atom(\"y0\",\"y0\").", "atom(\"-y0\",\"y0\").",
                                "atom(\"y1\",\"y1\").", "atom(\"-y1\",\"y1\")."});
    CHECK_THROWS_AS(factual_rep(parse("p(X) :- q(X).")), PreconditionError);
    CHECK_THROWS_AS(tr(parse("inS(a).")), VocabularyError);
}

TEST_CASE("meta rules: the plain block", "[transform]") {
    const Program m = meta_rules(TransformOptions{});
    CHECK(m.size() == 42);
    std::set<std::string> preds;
    for (const auto& r : m.rules)
        for (const auto* part : {&r.head, &r.pbody, &r.nbody})
            for (const auto& l : *part) preds.insert(l.atom.predicate());
    std::set<std::string> expected(meta_vocabulary().begin(), meta_vocabulary().end());
    expected.erase("pa");
    expected.erase("dep");
    expected.erase("cyclic");
    CHECK(preds == expected);
}

TEST_CASE("meta rules: modular and dependency options reproduce the listed block", "[transform]") {
    const Program listing = parse_file(std::string(GC_TEST_DATA) + "/golden_qbf.dl");
    Program block;
    for (const auto& r : listing.rules)
        if (!r.is_ground()) block.rules.push_back(r);
    const TransformOptions o = TransformOptions::parse("mod,dep");
    CHECK(canon(fixed_meta_rules(o)) == canon(block));
}

TEST_CASE("meta rules: forced guess for normal rules", "[transform]") {
    const Program m = meta_rules(TransformOptions::parse("mod"), parse("r: a :- b."));
    const auto rules = canon(m);
    CHECK(rules.count("inS(\"a\") :- inS(\"b\").") == 1);
    const Program d = meta_rules(TransformOptions::parse("mod"), parse("r: a v c :- b, not e."));
    CHECK(canon(d).count("notok :- inS(\"b\"), ninS(\"a\"), ninS(\"c\"), ninS(\"e\").") == 1);
    const Program pa = meta_rules(TransformOptions::parse("pa"), parse("r1: a. r2: b :- a."));
    CHECK(canon(pa).count("pa(r1).") == 1);
    CHECK(canon(pa).count("pa(r2) :- lit(h,\"a\",R1), pa(R1).") == 1);
}

TEST_CASE("tr: worked example has two answer sets", "[transform]") {
    const Program p = parse("r1: a :- b. r2: b :- a. r3: a. r4: b.");
    const auto sets = solve_tr(p, TransformOptions{});
    REQUIRE(sets.size() == 2);
    std::size_t ab = 0, ba = 0;
    for (const auto& s : sets) {
        CHECK(s.contains(L("inS(\"a\")")));
        CHECK(s.contains(L("inS(\"b\")")));
        CHECK_FALSE(s.contains(L("notok")));
        if (s.contains(L("phi(\"a\",\"b\")"))) ++ab;
        if (s.contains(L("phi(\"b\",\"a\")"))) ++ba;
    }
    CHECK(ab == 1);
    CHECK(ba == 1);
}

TEST_CASE("tr: empty and inconsistent programs", "[transform]") {
    const auto empty = solve_tr(Program{}, TransformOptions{});
    REQUIRE(empty.size() == 1);
    for (const auto& l : empty[0].literals) CHECK(l.atom.predicate() != "inS");

    for (const auto& o : TransformOptions::all_combinations()) {
        INFO(o.str());
        const Program p = parse("r1: a :- not a.");
        const auto sets = solve_tr(p, o);
        REQUIRE(sets.size() == 1);
        CHECK(sets[0].literals == omega(p, o).literals);
        CHECK(sets[0].contains(L("notok")));
    }
}

TEST_CASE("tr: rules whose head occurs in their own body", "[transform]") {
    // both were counterexamples before such rules were simplified
    const char* progs[] = {"p4 v p3 :- p4. p4 :- not -p5, not p0.", "c :- not c.",
                           "a v b :- not a. b :- a.", "a :- a. b v a.", "c v d :- not c, e. e."};
    for (const char* text : progs) {
        const Program p = parse(text);
        for (const auto& o : TransformOptions::all_combinations()) {
            INFO(text << " [" << o.str() << "]");
            CHECK(projections(solve_tr(p, o)) == oracle::answer_sets(p));
        }
    }
}

TEST_CASE("tr: output shape", "[transform]") {
    GroundOptions go;
    go.mode = GroundMode::Relevant;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Program p = gen_random_program(4, 6, seed);
        for (const auto& o : TransformOptions::all_combinations()) {
            const Program t = tr(p, o);
            for (const auto& r : t.rules) {
                CHECK_FALSE(r.head.empty());
                for (const auto* part : {&r.head, &r.pbody, &r.nbody})
                    for (const auto& l : *part) CHECK_FALSE(l.neg);
            }
            CHECK(ground(t, go).program.flags().stratified);
        }
    }
}

TEST_CASE("tr: size is linear in the input", "[transform]") {
    const Program p = parse("a v b :- c, not d. c. d :- not e. :- a, b.");
    std::size_t occurrences = 0;
    std::set<std::string> heads;
    for (const auto& r : p.rules) {
        occurrences += r.head.size() + r.pbody.size() + r.nbody.size();
        for (const auto& h : r.head) heads.insert(h.str());
    }
    CHECK(tr(p).size() == occurrences + heads.size() + 42);
}

TEST_CASE("tr: modular for the plain options", "[transform]") {
    const Program p1 = parse("r1: a v b :- c. r2: c :- not d.");
    const Program p2 = parse("r3: d :- a. r4: :- b, not c.");
    Program both = p1;
    both.append(p2);
    auto joined = canon(tr(p1));
    const auto second = canon(tr(p2));
    joined.insert(second.begin(), second.end());
    CHECK(canon(tr(both)) == joined);
}

TEST_CASE("omega", "[transform]") {
    const AnswerSet o1 = omega(parse("r1: a."));
    for (const char* l : {"notok", "inS(\"a\")", "ninS(\"a\")", "hlit(\"a\")"}) CHECK(o1.contains(L(l)));

    const AnswerSet o0 = omega(Program{});
    CHECK(o0.contains(L("notok")));
    for (const auto& l : o0.literals) {
        CHECK(l.atom.predicate() != "inS");
        CHECK(l.atom.predicate() != "ninS");
    }

    const AnswerSet o3 = omega(parse("r1: a :- b. r2: b :- a. r3: a. r4: b."));
    for (const char* l : {"phi(\"a\",\"a\")", "phi(\"a\",\"b\")", "phi(\"b\",\"a\")", "phi(\"b\",\"b\")"})
        CHECK(o3.contains(L(l)));
    CHECK(project(o3) == LiteralSet{L("a"), L("b")});
}

TEST_CASE("project", "[transform]") {
    LiteralSet s{L("inS(\"a\")"), L("ninS(\"b\")"), L("phi(\"a\",\"b\")")};
    CHECK(project(s) == LiteralSet{L("a")});
    CHECK(project(LiteralSet{}).empty());
    CHECK(project(LiteralSet{L("inS(\"-p(1)\")")}) == LiteralSet{L("-p(1)")});
    CHECK_THROWS_AS(project(LiteralSet{L("inS(\"a b\")")}), PreconditionError);
}

TEST_CASE("potentially applicable rules", "[transform]") {
    auto names = [](const std::vector<Term>& ts) {
        std::vector<std::string> out;
        for (const auto& t : ts) out.push_back(t.str());
        return out;
    };
    CHECK(names(pa_closure(parse("r1: a. r2: b :- a."))) == std::vector<std::string>{"r1", "r2"});
    CHECK(pa_closure(parse("r1: b :- a.")).empty());
    CHECK(pa_closure(parse("r1: a :- b. r2: b :- a.")).empty());
}

TEST_CASE("options parse and print", "[transform]") {
    CHECK(TransformOptions::parse("none").str() == "none");
    CHECK(TransformOptions::parse("all").str() == "mod,pa,dep");
    CHECK(TransformOptions::parse("dep,mod").str() == "mod,dep");
    CHECK_THROWS_AS(TransformOptions::parse("fast"), Error);
    CHECK(TransformOptions::all_combinations().size() == 8);
}
