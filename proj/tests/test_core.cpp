#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "gcmeta/core.hpp"
#include "gcmeta/textio.hpp"

using namespace gcmeta;

namespace {

LiteralSet lits(std::initializer_list<const char*> names) {
    LiteralSet s;
    for (auto n : names) s.insert(Literal::from_string(n));
    return s;
}

std::set<std::string> rule_texts(const Program& p) {
    std::set<std::string> out;
    for (const auto& r : p.rules) out.insert(print_rule(r));
    return out;
}

// Head-cycle freeness straight from the definition: transitive closure of the
// positive dependency relation, then every pair of distinct co-head literals.
bool hcf_by_definition(const Program& p) {
    const auto all = literals_of(p);
    const std::size_t n = all.size();
    auto idx = [&](const Literal& l) {
        return static_cast<std::size_t>(std::find(all.begin(), all.end(), l) - all.begin());
    };
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& r : p.rules)
        for (const auto& h : r.head)
            for (const auto& b : r.pbody) reach[idx(h)][idx(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (const auto& r : p.rules)
        for (const auto& a : r.head)
            for (const auto& b : r.head)
                if (a != b && reach[idx(a)][idx(b)] && reach[idx(b)][idx(a)]) return false;
    return true;
}

Program random_program(std::mt19937_64& rng, std::size_t atoms, std::size_t rules) {
    std::uniform_int_distribution<std::size_t> atom(0, atoms - 1), len(0, 2);
    std::bernoulli_distribution coin(0.5);
    std::string text;
    for (std::size_t i = 0; i < rules; ++i) {
        const std::size_t heads = 1 + len(rng) % 2;
        for (std::size_t h = 0; h < heads; ++h)
            text += (h ? " v " : "") + std::string("p") + std::to_string(atom(rng));
        const std::size_t body = len(rng);
        for (std::size_t b = 0; b < body; ++b) {
            text += b ? ", " : " :- ";
            if (coin(rng)) text += "not ";
            text += "p" + std::to_string(atom(rng));
        }
        text += ".\n";
    }
    return parse(text);
}

}  // namespace

TEST_CASE("classify: head-cycle freedom and stratification", "[core]") {
    CHECK(parse("a v b :- c.").flags().hcf);
    CHECK_FALSE(parse("a v b. a :- b. b :- a.").flags().hcf);
    CHECK_FALSE(parse("a :- not b. b :- not a.").flags().stratified);
    CHECK(parse("a :- not b. b.").flags().stratified);

    const Flags f = parse("a. b :- a, not c.").flags();
    CHECK(f.ground);
    CHECK(f.normal);
    CHECK_FALSE(f.positive);
    CHECK_FALSE(parse("p(X) :- q(X).").flags().ground);
    CHECK_FALSE(parse("a v b.").flags().normal);
}

TEST_CASE("classify agrees with the definition and ignores rule order", "[core]") {
    std::mt19937_64 rng(7);
    std::size_t non_hcf = 0;
    for (int i = 0; i < 300; ++i) {
        Program p = random_program(rng, 4, 5);
        const Flags f = classify(p);
        REQUIRE(f.hcf == hcf_by_definition(p));
        if (!f.hcf) ++non_hcf;
        Program shuffled = p;
        std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), rng);
        const Flags g = classify(shuffled);
        CHECK(g.hcf == f.hcf);
        CHECK(g.stratified == f.stratified);
        CHECK(g.normal == f.normal);
        const Flags again = classify(p);
        CHECK(again.hcf == f.hcf);
    }
    CHECK(non_hcf > 0);  // the generator does reach both classes
}

TEST_CASE("reduct", "[core]") {
    CHECK(rule_texts(reduct(parse("a :- not b."), {})) == std::set<std::string>{"a."});
    CHECK(reduct(parse("a :- not b."), lits({"b"})).empty());
    const Program r = reduct(parse("a v b :- c, not d. d."), lits({"d"}));
    CHECK(rule_texts(r) == std::set<std::string>{"d."});

    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Program p = random_program(rng, 4, 6);
        LiteralSet s;
        for (int a = 0; a < 4; ++a)
            if (rng() % 2) s.insert(Literal::from_string("p" + std::to_string(a)));
        Program red = reduct(p, s);
        CHECK(red.flags().positive);
        CHECK(red.size() <= p.size());
    }
}

TEST_CASE("reduct keeps rule names and rejects non-ground input", "[core]") {
    Program p = parse("r7: a :- not b. c.");
    Program red = reduct(p, {});
    REQUIRE(red.size() == 2);
    CHECK(red.rules[0].name.str() == "r7");
    CHECK_THROWS_AS(reduct(parse("p(X) :- q(X), not r(X)."), {}), PreconditionError);
}

TEST_CASE("splitting violations", "[core]") {
    CHECK(splitting_violations(parse("g v -g."), parse("x :- g.")).empty());
    const auto v = splitting_violations(parse("a."), parse("a :- b."));
    REQUIRE(v.size() == 1);
    CHECK(v[0].str() == "a");
    const auto w = splitting_violations(parse("p(1)."), parse("q :- p(1). p(1) :- q."));
    REQUIRE(w.size() == 1);
    CHECK(w[0].str() == "p(1)");
    // monotone under removal of check rules
    CHECK(splitting_violations(parse("p(1)."), parse("q :- p(1).")).empty());
}

TEST_CASE("positive dependency graph", "[core]") {
    const auto g1 = positive_dependency_graph(parse("a :- b."));
    CHECK(g1.has_positive_edge(Literal::from_string("a"), Literal::from_string("b")));
    CHECK_FALSE(g1.has_positive_edge(Literal::from_string("b"), Literal::from_string("a")));
    const auto g2 = positive_dependency_graph(parse("a v b :- c."));
    CHECK(g2.has_positive_edge(Literal::from_string("a"), Literal::from_string("c")));
    CHECK(g2.has_positive_edge(Literal::from_string("b"), Literal::from_string("c")));
    CHECK(g2.positive.size() == 2);
    const auto g3 = positive_dependency_graph(Program{});
    CHECK(g3.nodes.empty());
    CHECK(g3.positive.empty());
}

TEST_CASE("literals: strong negation shares the atom and orders canonically", "[core]") {
    const Literal a = Literal::from_string("a(1)");
    const Literal na = Literal::from_string("-a(1)");
    CHECK(a.atom == na.atom);
    CHECK(na.complement() == a);
    CHECK_FALSE(is_consistent(lits({"a", "-a"})));
    CHECK(is_consistent(lits({"a", "-b"})));
    // integers precede symbols
    CHECK(compare_terms(Term::integer(5), Term::symbol("a")) < 0);
    CHECK(compare_terms(Term::integer(2), Term::integer(10)) < 0);
    CHECK(to_string(lits({"b", "a"})) == "{a, b}");
}

TEST_CASE("rule kinds and names", "[core]") {
    Program p = parse("a. :- b. c :- d.");
    CHECK(p.rules[0].kind() == RuleKind::Fact);
    CHECK(p.rules[1].kind() == RuleKind::Constraint);
    CHECK(p.rules[2].kind() == RuleKind::Rule);
    CHECK(p.rules[0].name.str() == "r1");
    CHECK(p.rules[2].name.str() == "r3");
    Program named = parse("mine: a. b.");
    CHECK(named.rules[0].name.str() == "mine");
    CHECK_THROWS_AS(parse("x: a. x: b."), Error);
}
