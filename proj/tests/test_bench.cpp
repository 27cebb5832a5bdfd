#include <catch2/catch_amalgamated.hpp>

#include "gcmeta/bench.hpp"
#include "gcmeta/integrate.hpp"
#include "gcmeta/textio.hpp"

using namespace gcmeta;

namespace {

LiteralSet lits(std::initializer_list<const char*> names) {
    LiteralSet s;
    for (auto n : names) s.insert(Literal::from_string(n));
    return s;
}

bool has_line(const Program& p, const std::string& line) {
    const std::string text = "\n" + print(p) + "\n";
    return text.find("\n" + line + "\n") != std::string::npos;
}

std::vector<AnswerSet> solve_all(const Program& p) {
    SolveOptions o = default_solve_options();
    o.limit.reset();
    const SolveResult r = ground_and_solve(p, o);
    REQUIRE_FALSE(r.exhausted());
    return r.answer_sets;
}

// Truth of the matrix for one full assignment, written from the definition.
bool holds(const QbfInstance& q, const std::map<std::string, bool>& v) {
    for (const auto& t : q.terms) {
        bool all = true;
        for (const auto& l : t) all = all && v.at(l.var) == l.positive;
        if (all) return true;
    }
    return false;
}

BombPlan plan(std::initializer_list<char> kinds) {
    BombPlan p;
    for (char k : kinds) p.push_back(BombAction{k, 1});
    return p;
}

}  // namespace

TEST_CASE("qbf: worked instance", "[bench]") {
    const QbfInstance q = worked_qbf();
    CHECK(eval_qbf(q) == Witnesses{lits({"-x0", "-x1"}), lits({"-x0", "x1"})});

    // an independent truth table over the same matrix
    Witnesses table;
    for (int xs = 0; xs < 4; ++xs) {
        bool taut = true;
        for (int ys = 0; ys < 4; ++ys) {
            const std::map<std::string, bool> v{{"x0", (xs & 1) != 0}, {"x1", (xs & 2) != 0},
                                                {"y0", (ys & 1) != 0}, {"y1", (ys & 2) != 0}};
            taut = taut && holds(q, v);
        }
        if (taut) table.insert(lits({(xs & 1) ? "x0" : "-x0", (xs & 2) ? "x1" : "-x1"}));
    }
    CHECK(table == eval_qbf(q));

    const GuessCheckPair pair = encode_qbf(q);
    const std::string dir = GC_TEST_DATA;
    CHECK(print(pair.guess) == print(parse_file(dir + "/qbf_guess.dl")));
    CHECK(print(pair.check) == print(parse_file(dir + "/qbf_check.dl")));

    const Program adhoc = encode_qbf_adhoc(q);
    CHECK(has_line(adhoc, "term(y1,x0,true,y0,false,false)."));
    CHECK(qbf_adhoc_witnesses(solve_all(adhoc), q) == eval_qbf(q));
}

TEST_CASE("qbf: degenerate instances", "[bench]") {
    QbfInstance none;
    none.x_vars = {"x0"};
    none.y_vars = {"y0"};
    CHECK(eval_qbf(none).empty());

    QbfInstance single;
    single.x_vars = {"x1"};
    single.terms = {{{"x1", true}}};
    CHECK(eval_qbf(single) == Witnesses{lits({"x1"})});
    const GuessCheckPair pair = encode_qbf(single);
    CHECK(print(pair.check) == ":- x1.");

    QbfInstance pos;
    pos.x_vars = {"x1", "x2", "x3"};
    pos.terms = {{{"x1", true}, {"x2", true}, {"x3", true}}};
    CHECK(has_line(encode_qbf_adhoc(pos), "term(x1,x2,x3,false,false,false)."));

    QbfInstance neg;
    neg.y_vars = {"y1", "y2", "y3"};
    neg.terms = {{{"y1", false}, {"y2", false}, {"y3", false}}};
    CHECK(has_line(encode_qbf_adhoc(neg), "term(true,true,true,y1,y2,y3)."));

    QbfInstance wide;
    wide.x_vars = {"a", "b", "c", "d"};
    wide.terms = {{{"a", true}, {"b", true}, {"c", true}, {"d", true}}};
    CHECK_THROWS_AS(encode_qbf_adhoc(wide), PreconditionError);
    CHECK_THROWS_AS(gen_qbf(1, 1, 2, 3, 0), PreconditionError);
}

TEST_CASE("qbf: generator is deterministic", "[bench]") {
    const QbfInstance a = gen_qbf(2, 2, 4, 3, 7);
    const QbfInstance b = gen_qbf(2, 2, 4, 3, 7);
    CHECK(print(encode_qbf(a).check) == print(encode_qbf(b).check));
    REQUIRE(a.terms.size() == 4);
    for (const auto& t : a.terms) {
        CHECK(t.size() == 3);
        std::set<std::string> vars;
        for (const auto& l : t) vars.insert(l.var);
        CHECK(vars.size() == 3);
    }
    bool differs = false;
    for (std::uint64_t s = 0; s < 10 && !differs; ++s)
        differs = print(encode_qbf(gen_qbf(2, 2, 4, 3, s)).check) != print(encode_qbf(a).check);
    CHECK(differs);
}

TEST_CASE("strategic companies: oracle", "[bench]") {
    const ScInstance w = worked_sc();
    CHECK(strategic_oracle(w) ==
          std::set<std::set<std::string>>{{"barilla", "saiwa", "frutto"}, {"barilla", "panino"}});

    ScInstance solo;
    solo.companies = {"a", "b", "c"};
    solo.prod_by = {{"p", "a", "a"}, {"q", "b", "b"}};
    CHECK(strategic_oracle(solo) == std::set<std::set<std::string>>{{"a", "b"}});

    CHECK(strategic_oracle(to_general(w)) == strategic_oracle(w));

    ScGeneral three;
    three.produces = {{"a", "p"}, {"b", "p"}, {"c", "p"}};
    CHECK(strategic_oracle(three) == std::set<std::set<std::string>>{{"a"}, {"b"}, {"c"}});
    const auto sets = solve_all(integrate(prepare_pair(encode_sc_general(three).guess,
                                                       encode_sc_general(three).check)));
    CHECK(strategic_sets(sets) == strategic_oracle(three));
}

TEST_CASE("strategic companies: encodings on the worked instance", "[bench]") {
    const ScInstance w = worked_sc();
    const auto expected = strategic_oracle(w);
    CHECK(strategic_sets(solve_all(encode_sc_adhoc1(w))) == expected);
    CHECK(strategic_sets(solve_all(encode_sc_adhoc2(w))) == expected);
    const GuessCheckPair general = encode_sc_general(to_general(w));
    CHECK(strategic_sets(solve_all(integrate(prepare_pair(general.guess, general.check)))) ==
          expected);

    const std::string dir = GC_TEST_DATA;
    const GuessCheckPair pair = encode_sc(w);
    CHECK(print(pair.check) == print(parse_file(dir + "/sc_check.dl")));
}

TEST_CASE("strategic companies: generator", "[bench]") {
    const ScInstance a = gen_sc(6, 6, 3, 11);
    const ScInstance b = gen_sc(6, 6, 3, 11);
    CHECK(a.prod_by == b.prod_by);
    CHECK(a.contr_by == b.contr_by);
    CHECK_NOTHROW(a.validate());
    CHECK(a.companies.size() == 6);
    CHECK(a.prod_by.size() == 6);
    CHECK(a.contr_by.size() == 3);
    ScInstance bad = a;
    bad.prod_by.push_back({"p9", "nobody", "nobody"});
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("bomb: oracle", "[bench]") {
    const BombInstance one{BombVariant::Plain, 1, 2};
    CHECK(conformant_oracle(one, plan({'d', 'f'})));
    CHECK_FALSE(conformant_oracle(one, plan({'d'})));
    CHECK_FALSE(conformant_oracle(one, plan({})));
    CHECK_FALSE(conformant_oracle(BombInstance{BombVariant::Plain, 1, 0}, plan({})));
    CHECK(all_bomb_plans(one).size() == 9);
    CHECK(to_string(plan({'d', 'f'})) == "[dunk(1), flush]");
}

TEST_CASE("bomb: integrated plans match the oracle", "[bench]") {
    for (const BombVariant v : {BombVariant::Plain, BombVariant::Btc, BombVariant::Btuc}) {
        for (std::size_t h = 0; h <= 2; ++h) {
            const BombInstance inst{v, 1, h};
            std::set<BombPlan> expected;
            for (const auto& p : all_bomb_plans(inst))
                if (conformant_oracle(inst, p)) expected.insert(p);
            const GuessCheckPair pair = encode_bomb(inst);
            INFO(bomb_variant_name(v) << " horizon " << h);
            CHECK(bomb_plans(solve_all(integrate(prepare_pair(pair.guess, pair.check))), inst) ==
                  expected);
        }
    }
    const GuessCheckPair plain = encode_bomb(BombInstance{BombVariant::Plain, 1, 2});
    const std::string dir = GC_TEST_DATA;
    CHECK(print(plain.guess) == print(parse_file(dir + "/bomb_guess.dl")));
    CHECK(print(plain.check) == print(parse_file(dir + "/bomb_check.dl")));
}

TEST_CASE("bench: rows and csv", "[bench]") {
    CHECK(bench_csv_header() == "family,size,seed,opts,time,answersets,status");
    CHECK(run_bench(BenchFamily::Qbf, {}, {0}, TransformOptions::all_combinations(), true).empty());

    const auto rows = run_bench(BenchFamily::Qbf, {2}, {0, 1}, {TransformOptions{}}, true);
    CHECK(rows.size() == 4);  // two seeds, integrated plus one ad hoc encoding each
    for (const auto& r : rows) {
        CHECK(r.family == "qbf");
        CHECK_FALSE(r.budget_exceeded);
        const std::string line = bench_csv_row(r);
        CHECK(std::count(line.begin(), line.end(), ',') == 6);
    }
    CHECK(parse_bench_family("sc") == BenchFamily::Sc);
    CHECK_THROWS_AS(parse_bench_family("tsp"), PreconditionError);
}
