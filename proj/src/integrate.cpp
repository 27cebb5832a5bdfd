#include "gcmeta/integrate.hpp"

#include <map>
#include <set>
#include <unordered_set>

#include "gcmeta/grounder.hpp"

namespace gcmeta {

namespace {

bool is_ground_program(const Program& p) {
    for (const auto& r : p.rules)
        if (!r.is_ground() || !r.builtins.empty()) return false;
    return true;
}

void rename_literals(std::vector<Literal>& v, const std::map<std::uint32_t, std::uint32_t>& m) {
    for (auto& l : v) {
        auto it = m.find(l.atom.pred);
        if (it != m.end()) l.atom.pred = it->second;
    }
}

// Appends `extra` to `base`, naming its rules <prefix><k> away from names in use.
void append_named(Program& base, Program extra, const std::string& prefix) {
    std::set<Term, TermLess> used;
    for (const auto& r : base.rules) used.insert(r.name);
    std::size_t k = 0;
    for (auto& r : extra.rules) {
        Term name;
        do {
            name = Term::symbol(prefix + std::to_string(++k));
        } while (used.count(name));
        r.name = name;
        r.named = false;
        base.rules.push_back(std::move(r));
    }
}

std::unordered_set<Literal, LiteralHash> guess_facts(const Program& guess) {
    std::unordered_set<Literal, LiteralHash> facts;
    for (const auto& r : guess.rules)
        if (r.head.size() == 1 && r.pbody.empty() && r.nbody.empty() && r.builtins.empty() &&
            r.is_ground())
            facts.insert(r.head[0]);
    return facts;
}

std::set<std::uint32_t> guess_side(const GuessCheckPair& pair) {
    std::set<std::uint32_t> g = predicates_of(pair.guess);
    for (auto p : head_predicates(pair.check)) g.erase(p);
    return g;
}

}  // namespace

namespace {

std::map<std::uint32_t, std::uint32_t> fresh_names(const GuessCheckPair& pair) {
    std::set<std::uint32_t> guess_preds = predicates_of(pair.guess);
    std::set<std::uint32_t> overlap;
    for (auto p : head_predicates(pair.check))
        if (guess_preds.count(p)) overlap.insert(p);
    std::set<std::uint32_t> used = guess_preds;
    for (auto p : predicates_of(pair.check)) used.insert(p);
    std::map<std::uint32_t, std::uint32_t> fresh;
    for (auto p : overlap) {
        std::string name = symbol_name(p) + "'";
        while (used.count(intern(name))) name += "'";
        fresh[p] = intern(name);
        used.insert(fresh[p]);
    }
    return fresh;
}

}  // namespace

std::map<std::string, std::string> splitting_renames(const GuessCheckPair& pair) {
    std::map<std::string, std::string> out;
    for (const auto& [from, to] : fresh_names(pair)) out[symbol_name(from)] = symbol_name(to);
    return out;
}

GuessCheckPair enforce_splitting(const GuessCheckPair& pair) {
    const auto fresh = fresh_names(pair);
    if (fresh.empty()) return pair;
    std::set<std::uint32_t> overlap;
    for (const auto& kv : fresh) overlap.insert(kv.first);

    GuessCheckPair out{pair.guess, pair.check};
    // original literals of renamed predicates, to bridge them
    LiteralSet originals;
    for (auto& r : out.check.rules) {
        for (const auto* part : {&r.head, &r.pbody, &r.nbody})
            for (const auto& l : *part)
                if (overlap.count(l.atom.pred)) originals.insert(l);
        rename_literals(r.head, fresh);
        rename_literals(r.pbody, fresh);
        rename_literals(r.nbody, fresh);
    }

    Program bridges;
    if (is_ground_program(pair.check)) {
        for (const auto& l : originals) {
            Literal primed = l;
            primed.atom.pred = fresh.at(l.atom.pred);
            Rule b;
            b.head = {primed};
            b.pbody = {l};
            bridges.rules.push_back(std::move(b));
        }
    } else {
        std::set<std::tuple<std::uint32_t, bool, std::size_t>> shapes;
        for (const auto& l : originals) shapes.insert({l.atom.pred, l.neg, l.atom.arity()});
        for (const auto& [pred, neg, arity] : shapes) {
            std::vector<Term> args;
            for (std::size_t i = 0; i < arity; ++i)
                args.push_back(Term::variable("X" + std::to_string(i + 1)));
            Rule b;
            b.head = {Literal(Atom(symbol_name(fresh.at(pred)), args), neg)};
            b.pbody = {Literal(Atom(symbol_name(pred), args), neg)};
            bridges.rules.push_back(std::move(b));
        }
    }
    append_named(out.check, std::move(bridges), "bridge");
    return out;
}

std::vector<BodySplit> split_bodies(const GuessCheckPair& pair) {
    const auto g = guess_side(pair);
    std::vector<BodySplit> out;
    for (const auto& r : pair.check.rules) {
        BodySplit s;
        s.rule = r.name;
        for (const auto& l : r.pbody)
            (g.count(l.atom.pred) ? s.guess_pos : s.check_pos).push_back(l);
        for (const auto& l : r.nbody)
            (g.count(l.atom.pred) ? s.guess_neg : s.check_neg).push_back(l);
        out.push_back(std::move(s));
    }
    return out;
}

GuessCheckPair prepare_pair(const Program& guess, const Program& check) {
    GuessCheckPair split = enforce_splitting(GuessCheckPair{guess, check});
    GroundOptions go;
    go.rule_prefix = "";
    go.renumber = true;
    split.check = ground_check(split.guess, split.check, go).program;
    return split;
}

Program build_check_prime(const GuessCheckPair& pair, const TransformOptions& opts) {
    if (!is_ground_program(pair.check))
        throw PreconditionError("build_check_prime: the check program must be ground");
    check_vocabulary(pair.guess);
    check_vocabulary(pair.check);
    pair.check.check_unique_names();
    const auto guess_preds = predicates_of(pair.guess);
    for (auto p : head_predicates(pair.check))
        if (guess_preds.count(p))
            throw PreconditionError("build_check_prime: check head predicate " + symbol_name(p) +
                                    " occurs in the guess program");

    const auto facts = guess_facts(pair.guess);
    const auto splits = split_bodies(pair);
    std::vector<GuardedRule> guarded;
    guarded.reserve(splits.size());
    for (std::size_t i = 0; i < splits.size(); ++i) {
        const Rule& src = pair.check.rules[i];
        const BodySplit& s = splits[i];
        GuardedRule g;
        g.rule = src;
        g.rule.pbody = s.check_pos;
        g.rule.nbody = s.check_neg;
        g.guard_pos = s.guess_pos;
        g.guard_neg = s.guess_neg;
        g.guard_facts = s.guess_neg.empty();
        for (const auto& l : s.guess_pos)
            if (!facts.count(l)) g.guard_facts = false;
        guarded.push_back(std::move(g));
    }

    Program out = reified_input(guarded, opts);
    out.append(fixed_meta_rules(opts));
    Rule keep;
    keep.nbody = {Literal(Atom("notok"))};
    out.rules.push_back(std::move(keep));
    for (auto& r : out.rules) r.named = false;
    out.assign_names("c");
    return out;
}

Program integrate(const GuessCheckPair& pair, const TransformOptions& opts) {
    Program out = pair.guess;
    append_named(out, build_check_prime(pair, opts), "c");
    return out;
}

Program integrate_np(const GuessCheckPair& pair) {
    const auto guess_preds = predicates_of(pair.guess);
    for (auto p : head_predicates(pair.check))
        if (guess_preds.count(p))
            throw PreconditionError("integrate_np: check head predicate " + symbol_name(p) +
                                    " occurs in the guess program");
    Program out = pair.guess;
    append_named(out, pair.check, "c");
    return out;
}

std::vector<std::string> guess_predicates(const Program& guess) {
    std::vector<std::string> out;
    for (auto p : predicates_of(guess)) out.push_back(symbol_name(p));
    return out;
}

}  // namespace gcmeta
