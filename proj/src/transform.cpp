#include "gcmeta/transform.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "gcmeta/grounder.hpp"
#include "gcmeta/solver.hpp"
#include "gcmeta/textio.hpp"

namespace gcmeta {

TransformOptions TransformOptions::parse(std::string_view text) {
    TransformOptions o;
    if (text.empty() || text == "none") return o;
    if (text == "all" || text == "opt") {
        o.opt_mod = o.opt_pa = o.opt_dep = true;
        return o;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = text.substr(start, end - start);
        if (item == "mod") o.opt_mod = true;
        else if (item == "pa") o.opt_pa = true;
        else if (item == "dep") o.opt_dep = true;
        else throw Error("unknown transformation option '" + std::string(item) + "'");
        start = end + 1;
    }
    return o;
}

std::string TransformOptions::str() const {
    std::string s;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += ',';
        s += name;
    };
    add(opt_mod, "mod");
    add(opt_pa, "pa");
    add(opt_dep, "dep");
    return s.empty() ? "none" : s;
}

std::vector<TransformOptions> TransformOptions::all_combinations() {
    std::vector<TransformOptions> out;
    for (int mask = 0; mask < 8; ++mask)
        out.push_back(TransformOptions{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0});
    return out;
}

const std::vector<std::string>& meta_vocabulary() {
    static const std::vector<std::string> names = {
        "rule",      "ruleBefore",  "ruleAfter",  "ruleBetween",  "firstRule",    "lastRule",
        "nextRule",  "before",      "after",      "between",      "next",         "first",
        "last",      "hlit",        "inS",        "ninS",         "notok",        "phi",
        "allInSUpto", "allInS",     "allNinSUpto", "allNinS",     "hasHead",      "hasPBody",
        "hasNBody",  "failsToProve", "allFailUpto", "lit",        "atom",         "pa",
        "dep",       "cyclic"};
    return names;
}

void check_vocabulary(const Program& p) {
    static const std::unordered_set<std::string> reserved(meta_vocabulary().begin(),
                                                          meta_vocabulary().end());
    for (const auto& r : p.rules) {
        for (const auto* part : {&r.head, &r.pbody, &r.nbody})
            for (const auto& l : *part)
                if (reserved.count(l.atom.predicate()))
                    throw VocabularyError("predicate '" + l.atom.predicate() + "' in rule " +
                                          r.name.str() + " is reserved by the meta-interpreter");
    }
}

Term reify(const Literal& l) { return Term::string(l.str()); }

namespace {

void require_ground_rules(const Program& p, const char* what) {
    for (const auto& r : p.rules)
        if (!r.is_ground() || !r.builtins.empty())
            throw PreconditionError(std::string(what) + ": rule " + r.name.str() +
                                    " is not ground");
}

Literal lit_atom(const char* kind, const Literal& l, const Term& rule) {
    return Literal(Atom("lit", {Term::symbol(kind), reify(l), rule}));
}

Literal unary(const char* pred, const Literal& l) { return Literal(Atom(pred, {reify(l)})); }

Rule make_rule(std::vector<Literal> head, std::vector<Literal> pos = {},
               std::vector<Literal> neg = {}) {
    Rule r;
    r.head = std::move(head);
    r.pbody = std::move(pos);
    r.nbody = std::move(neg);
    return r;
}

struct MetaLine {
    int line;  // position in the 42-line block; 0 for rules added by opt_dep
    std::string text;
};

std::vector<MetaLine> meta_lines(const TransformOptions& o) {
    const std::string cyc = o.opt_dep ? ", cyclic" : "";
    std::vector<MetaLine> v;
    v.push_back({1, std::string("rule(L,R) :- lit(h,L,R), not lit(p,L,R), not lit(n,L,R)") +
                        (o.opt_pa ? ", pa(R)." : ".")});
    v.push_back({2, "ruleBefore(L,R) :- rule(L,R), rule(L,R1), R1 < R."});
    v.push_back({3, "ruleAfter(L,R) :- rule(L,R), rule(L,R1), R < R1."});
    v.push_back({4, "ruleBetween(L,R1,R2) :- rule(L,R1), rule(L,R2), rule(L,R3), R1 < R3, R3 < R2."});
    v.push_back({5, "firstRule(L,R) :- rule(L,R), not ruleBefore(L,R)."});
    v.push_back({6, "lastRule(L,R) :- rule(L,R), not ruleAfter(L,R)."});
    v.push_back({7, "nextRule(L,R1,R2) :- rule(L,R1), rule(L,R2), R1 < R2, not ruleBetween(L,R1,R2)."});
    if (!o.opt_mod) {
        v.push_back({8, "before(HPN,L,R) :- lit(HPN,L,R), lit(HPN,L1,R), L1 < L."});
        v.push_back({9, "after(HPN,L,R) :- lit(HPN,L,R), lit(HPN,L1,R), L < L1."});
        v.push_back({10, "between(HPN,L,L2,R) :- lit(HPN,L,R), lit(HPN,L1,R), lit(HPN,L2,R), L < L1, L1 < L2."});
        v.push_back({11, "next(HPN,L,L1,R) :- lit(HPN,L,R), lit(HPN,L1,R), L < L1, not between(HPN,L,L1,R)."});
        v.push_back({12, "first(HPN,L,R) :- lit(HPN,L,R), not before(HPN,L,R)."});
        v.push_back({13, "last(HPN,L,R) :- lit(HPN,L,R), not after(HPN,L,R)."});
    }
    v.push_back({14, "hlit(L) :- rule(L,R)."});
    v.push_back({15, "inS(L) v ninS(L) :- hlit(L)."});
    v.push_back({16, o.opt_mod ? "ninS(L) :- lit(HPN,L,R), not hlit(L)."
                               : "ninS(L) :- lit(PN,L,R), PN != h, not hlit(L)."});
    v.push_back({17, "notok :- inS(L), inS(NL), L != NL, atom(L,A), atom(NL,A)."});
    if (o.opt_dep) {
        v.push_back({0, "dep(L,L1) :- rule(L,R), lit(p,L1,R), inS(L1), inS(L)."});
        v.push_back({0, "dep(L,L2) :- rule(L,R), lit(p,L1,R), dep(L1,L2), inS(L)."});
        v.push_back({0, "cyclic :- dep(L,L1), dep(L1,L)."});
        v.push_back({18, "phi(L,L1) v phi(L1,L) :- dep(L,L1), dep(L1,L), L < L1, cyclic."});
    } else {
        v.push_back({18, "phi(L,L1) v phi(L1,L) :- inS(L), inS(L1), L < L1."});
    }
    v.push_back({19, "phi(L,L2) :- phi(L,L1), phi(L1,L2)" + cyc + "."});
    if (!o.opt_mod) {
        v.push_back({20, "allInSUpto(p,Min,R) :- inS(Min), first(p,Min,R)."});
        v.push_back({21, "allInSUpto(p,L1,R) :- inS(L1), allInSUpto(p,L,R), next(p,L,L1,R)."});
        v.push_back({22, "allInS(p,R) :- allInSUpto(p,Max,R), last(p,Max,R)."});
        v.push_back({23, "allNinSUpto(HN,Min,R) :- ninS(Min), first(HN,Min,R), HN != p."});
        v.push_back({24, "allNinSUpto(HN,L1,R) :- ninS(L1), allNinSUpto(HN,L,R), next(HN,L,L1,R), HN != p."});
        v.push_back({25, "allNinS(HN,R) :- allNinSUpto(HN,Max,R), last(HN,Max,R), HN != p."});
        v.push_back({26, "hasHead(R) :- lit(h,L,R)."});
        v.push_back({27, "hasPBody(R) :- lit(p,L,R)."});
        v.push_back({28, "hasNBody(R) :- lit(n,L,R)."});
        v.push_back({29, "allNinS(h,R) :- lit(HPN,L,R), not hasHead(R)."});
        v.push_back({30, "allInS(p,R) :- lit(HPN,L,R), not hasPBody(R)."});
        v.push_back({31, "allNinS(n,R) :- lit(HPN,L,R), not hasNBody(R)."});
        v.push_back({32, "notok :- allNinS(h,R), allInS(p,R), allNinS(n,R), lit(HPN,L,R)."});
    }
    v.push_back({33, "failsToProve(L,R) :- rule(L,R), lit(p,L1,R), ninS(L1)."});
    v.push_back({34, "failsToProve(L,R) :- rule(L,R), lit(n,L1,R), inS(L1)."});
    v.push_back({35, o.opt_mod ? "failsToProve(L,R) :- rule(L,R), rule(L1,R), inS(L1), L1 != L."
                               : "failsToProve(L,R) :- rule(L,R), rule(L1,R), inS(L1), L1 != L, inS(L)."});
    v.push_back({36, "failsToProve(L,R) :- rule(L,R), lit(p,L1,R), phi(L1,L)" + cyc + "."});
    v.push_back({37, "allFailUpto(L,R) :- failsToProve(L,R), firstRule(L,R)."});
    v.push_back({38, "allFailUpto(L,R1) :- failsToProve(L,R1), allFailUpto(L,R), nextRule(L,R,R1)."});
    v.push_back({39, "notok :- allFailUpto(L,R), lastRule(L,R), inS(L)."});
    v.push_back({40, "phi(L,L1) :- notok, hlit(L), hlit(L1)" + cyc + "."});
    v.push_back({41, "inS(L) :- notok, hlit(L)."});
    v.push_back({42, "ninS(L) :- notok, hlit(L)."});
    return v;
}

Program fixed_block(const TransformOptions& opts, int skip_line) {
    std::string text;
    for (const auto& m : meta_lines(opts)) {
        if (m.line != 0 && m.line == skip_line) continue;
        text += m.text;
        text += '\n';
    }
    Program p = parse(text);
    for (auto& r : p.rules) r.named = false;
    return p;
}

bool contains(const std::vector<Literal>& v, const Literal& l) {
    return std::find(v.begin(), v.end(), l) != v.end();
}

// Line 1 never lets a rule define a head literal that also occurs in its body, so
// such rules are first rewritten into equivalent ones: a rule whose head meets its
// positive body is always satisfied and is dropped, and a head literal that occurs
// in the negative body is removed from the head.
std::vector<GuardedRule> simplify_self_bodies(const std::vector<GuardedRule>& rules) {
    std::vector<GuardedRule> out;
    out.reserve(rules.size());
    for (const auto& g : rules) {
        const Rule& r = g.rule;
        if (std::any_of(r.head.begin(), r.head.end(),
                        [&](const Literal& h) { return contains(r.pbody, h); }))
            continue;
        GuardedRule copy = g;
        auto& head = copy.rule.head;
        head.erase(std::remove_if(head.begin(), head.end(),
                                  [&](const Literal& h) { return contains(r.nbody, h); }),
                   head.end());
        out.push_back(std::move(copy));
    }
    return out;
}

// Negative constraint literals that head no rule can never hold; opt_mod drops them.
std::vector<GuardedRule> drop_critical(const std::vector<GuardedRule>& rules) {
    std::unordered_set<Literal, LiteralHash> heads;
    for (const auto& g : rules) heads.insert(g.rule.head.begin(), g.rule.head.end());
    std::vector<GuardedRule> out = rules;
    for (auto& g : out) {
        if (!g.rule.head.empty()) continue;
        auto& nb = g.rule.nbody;
        nb.erase(std::remove_if(nb.begin(), nb.end(),
                                [&](const Literal& l) { return !heads.count(l); }),
                 nb.end());
    }
    return out;
}

void append_guard(Rule& r, const GuardedRule& g) {
    r.pbody.insert(r.pbody.end(), g.guard_pos.begin(), g.guard_pos.end());
    r.nbody.insert(r.nbody.end(), g.guard_neg.begin(), g.guard_neg.end());
}

Program assemble(const Program& input, const TransformOptions& opts, int skip_line) {
    Program out = input;
    out.append(fixed_block(opts, skip_line));
    for (auto& r : out.rules) r.named = false;
    out.assign_names("t");
    return out;
}

std::vector<GuardedRule> unguarded(const Program& p) {
    std::vector<GuardedRule> v;
    v.reserve(p.rules.size());
    for (const auto& r : p.rules) v.push_back(GuardedRule{r, {}, {}, true});
    return v;
}

void prepare(const Program& p, const char* what) {
    require_ground_rules(p, what);
    check_vocabulary(p);
    p.check_unique_names();
}

}  // namespace

Program reified_input(const std::vector<GuardedRule>& input, const TransformOptions& opts) {
    const std::vector<GuardedRule> simple = simplify_self_bodies(input);
    const std::vector<GuardedRule> rules = opts.opt_mod ? drop_critical(simple) : simple;
    Program out;

    // lit(n,l,c) of a reduced constraint may only go if some head occurrence of l
    // is always reified.
    std::unordered_set<Literal, LiteralHash> always_headed;
    for (const auto& g : rules)
        if (g.guard_facts) always_headed.insert(g.rule.head.begin(), g.rule.head.end());

    std::unordered_set<Literal, LiteralHash> atom_done;
    auto guarded_fact = [&](Literal head, const GuardedRule& g) {
        Rule r = make_rule({std::move(head)});
        append_guard(r, g);
        out.rules.push_back(std::move(r));
    };
    for (const auto& g : rules) {
        const Rule& r = g.rule;
        if (!opts.opt_mod && r.head.empty() && r.pbody.empty() && r.nbody.empty()) {
            // no literal left to reify: the guard alone violates the constraint
            guarded_fact(Literal(Atom("notok")), g);
            continue;
        }
        if (opts.opt_mod && r.head.empty()) {
            for (const auto& l : r.nbody)
                if (!always_headed.count(l)) guarded_fact(lit_atom("n", l, r.name), g);
            continue;
        }
        for (const auto& l : r.head) {
            guarded_fact(lit_atom("h", l, r.name), g);
            if (atom_done.insert(l).second) {
                Literal a(Atom("atom", {reify(l), Term::string(l.atom.str())}));
                out.rules.push_back(make_rule({a}));
            }
        }
        for (const auto& l : r.pbody) guarded_fact(lit_atom("p", l, r.name), g);
        for (const auto& l : r.nbody) guarded_fact(lit_atom("n", l, r.name), g);
    }

    if (opts.opt_mod) {
        for (const auto& g : rules) {
            const Rule& r = g.rule;
            std::vector<Literal> pos;
            for (const auto& l : r.pbody) pos.push_back(unary("inS", l));
            for (const auto& l : r.nbody) pos.push_back(unary("ninS", l));
            Rule out_rule;
            if (r.head.size() == 1) {
                out_rule = make_rule({unary("inS", r.head[0])}, std::move(pos));
            } else {
                std::vector<Literal> body;
                for (const auto& l : r.head) body.push_back(unary("ninS", l));
                body.insert(body.end(), pos.begin(), pos.end());
                out_rule = make_rule({Literal(Atom("notok"))}, std::move(body));
            }
            append_guard(out_rule, g);
            out_rule.normalize();
            out.rules.push_back(std::move(out_rule));
        }
    }

    if (opts.opt_pa) {
        for (const auto& g : rules) {
            const Rule& r = g.rule;
            Rule pa = make_rule({Literal(Atom("pa", {r.name}))});
            int k = 0;
            for (const auto& l : r.pbody) {
                Term v = Term::variable("R" + std::to_string(++k));
                pa.pbody.push_back(Literal(Atom("lit", {Term::symbol("h"), reify(l), v})));
                pa.pbody.push_back(Literal(Atom("pa", {v})));
            }
            out.rules.push_back(std::move(pa));
        }
    }
    for (auto& r : out.rules) r.normalize();
    return out;
}

Program fixed_meta_rules(const TransformOptions& opts) { return fixed_block(opts, -1); }

Program factual_rep(const Program& p) {
    prepare(p, "factual_rep");
    return reified_input(unguarded(p), TransformOptions{});
}

Program meta_rules(const TransformOptions& opts, const Program& p) {
    Program out;
    if (opts.opt_mod || opts.opt_pa) {
        prepare(p, "meta_rules");
        Program reified = reified_input(unguarded(p), opts);
        for (auto& r : reified.rules) {
            // keep only the generated rules, not the lit/atom facts
            const auto& pred = r.head.empty() ? std::string() : r.head[0].atom.predicate();
            if (pred != "lit" && pred != "atom") out.rules.push_back(std::move(r));
        }
    }
    out.append(fixed_block(opts, -1));
    for (auto& r : out.rules) r.named = false;
    out.assign_names("t");
    return out;
}

Program tr(const Program& p, const TransformOptions& opts) {
    prepare(p, "tr");
    return assemble(reified_input(unguarded(p), opts), opts, -1);
}

Program detail::tr_without_line(const Program& p, const TransformOptions& opts, int line) {
    prepare(p, "tr");
    return assemble(reified_input(unguarded(p), opts), opts, line);
}

AnswerSet omega(const Program& p, const TransformOptions& opts) {
    Program t = tr(p, opts);
    Program det;
    for (auto& r : t.rules)
        if (!r.is_disjunctive()) det.rules.push_back(std::move(r));
    det.rules.push_back(make_rule({Literal(Atom("notok"))}));
    det.assign_names("t");
    GroundOptions go;
    go.mode = GroundMode::Relevant;
    Program g = ground(det, go).program;
    return stratified_eval(g);
}

LiteralSet project(const LiteralSet& s) {
    static const std::uint32_t ins = intern("inS");
    LiteralSet out;
    for (const auto& l : s) {
        if (l.neg || l.atom.pred != ins) continue;
        if (l.atom.args.size() != 1 || l.atom.args[0].kind != Term::Kind::String)
            throw PreconditionError("project: malformed atom " + l.str());
        try {
            out.insert(Literal::from_string(l.atom.args[0].text()));
        } catch (const ParseError& e) {
            throw PreconditionError("project: " + l.str() + " does not name a literal");
        }
    }
    return out;
}

std::vector<Term> pa_closure(const Program& p) {
    require_ground_rules(p, "pa_closure");
    std::unordered_set<Literal, LiteralHash> derived;
    std::vector<char> in(p.rules.size(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < p.rules.size(); ++i) {
            if (in[i]) continue;
            const Rule& r = p.rules[i];
            bool ok = std::all_of(r.pbody.begin(), r.pbody.end(),
                                  [&](const Literal& l) { return derived.count(l) > 0; });
            if (!ok) continue;
            in[i] = 1;
            changed = true;
            derived.insert(r.head.begin(), r.head.end());
        }
    }
    std::vector<Term> names;
    for (std::size_t i = 0; i < p.rules.size(); ++i)
        if (in[i]) names.push_back(p.rules[i].name);
    std::sort(names.begin(), names.end(), TermLess{});
    return names;
}

}  // namespace gcmeta
