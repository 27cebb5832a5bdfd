#include "gcmeta/grounder.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>

namespace gcmeta {

namespace {

// ---------------------------------------------------------------------------
// Atom store with per-argument indexes
// ---------------------------------------------------------------------------

struct ArgKey {
    std::uint64_t predneg;
    std::uint32_t pos;
    Term term;
    bool operator==(const ArgKey& o) const {
        return predneg == o.predneg && pos == o.pos && term == o.term;
    }
};

struct ArgKeyHash {
    std::size_t operator()(const ArgKey& k) const noexcept {
        return (k.predneg * 31 + k.pos) * 1000003u ^ TermHash()(k.term);
    }
};

std::uint64_t predneg_of(std::uint32_t pred, bool neg) {
    return (static_cast<std::uint64_t>(pred) << 1) | (neg ? 1u : 0u);
}

struct AtomStore {
    std::unordered_map<Literal, std::uint32_t, LiteralHash> ids;
    std::vector<Literal> lits;
    std::vector<int> stamp;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_pred;
    std::unordered_map<ArgKey, std::vector<std::uint32_t>, ArgKeyHash> by_arg;

    bool contains(const Literal& l) const { return ids.count(l) > 0; }

    // Returns true when l is new.
    bool add(const Literal& l, int st) {
        auto [it, fresh] = ids.emplace(l, static_cast<std::uint32_t>(lits.size()));
        if (!fresh) return false;
        auto id = it->second;
        lits.push_back(l);
        stamp.push_back(st);
        auto pn = predneg_of(l.atom.pred, l.neg);
        by_pred[pn].push_back(id);
        for (std::uint32_t i = 0; i < l.atom.args.size(); ++i)
            by_arg[ArgKey{pn, i, l.atom.args[i]}].push_back(id);
        return true;
    }

    const std::vector<std::uint32_t>& all_of(std::uint64_t pn) const {
        static const std::vector<std::uint32_t> none;
        auto it = by_pred.find(pn);
        return it == by_pred.end() ? none : it->second;
    }

    const std::vector<std::uint32_t>& with_arg(std::uint64_t pn, std::uint32_t pos,
                                               const Term& t) const {
        static const std::vector<std::uint32_t> none;
        auto it = by_arg.find(ArgKey{pn, pos, t});
        return it == by_arg.end() ? none : it->second;
    }
};

// ---------------------------------------------------------------------------
// Compiled rules
// ---------------------------------------------------------------------------

struct ArgRef {
    int slot = -1;  // variable slot, or -1 for a constant
    Term constant;
};

struct CLit {
    std::uint32_t pred;
    bool neg;
    std::vector<ArgRef> args;
};

struct CExpr {
    ArgRef base;
    char op = 0;
    ArgRef offset;
};

struct CBuiltin {
    CmpOp op;
    CExpr lhs, rhs;
};

struct CRule {
    const Rule* src = nullptr;
    std::size_t index = 0;
    std::vector<Term> vars;
    std::vector<CLit> head, pos, neg;
    std::vector<CBuiltin> builtins;
    std::vector<bool> domain;  // positive literal is matched against a store
};

struct Step {
    enum Kind { Match, Check, Assign, Universe } kind;
    int idx = -1;        // literal or built-in index
    int slot = -1;       // variable slot for Assign / Universe
    bool assign_lhs = true;
    int filter = 0;      // Match: 0 any settled, 1 delta only, 2 older than delta
};

CRule compile(const Rule& r, std::size_t index) {
    CRule c;
    c.src = &r;
    c.index = index;
    std::map<std::int64_t, int> slots;
    auto ref = [&](const Term& t) {
        ArgRef a;
        if (t.is_variable()) {
            auto [it, fresh] = slots.emplace(t.value, static_cast<int>(c.vars.size()));
            if (fresh) c.vars.push_back(t);
            a.slot = it->second;
        } else {
            a.constant = t;
        }
        return a;
    };
    auto lit = [&](const Literal& l) {
        CLit x{l.atom.pred, l.neg, {}};
        for (const auto& t : l.atom.args) x.args.push_back(ref(t));
        return x;
    };
    for (const auto& l : r.pbody) c.pos.push_back(lit(l));
    for (const auto& l : r.head) c.head.push_back(lit(l));
    for (const auto& l : r.nbody) c.neg.push_back(lit(l));
    for (const auto& b : r.builtins) {
        auto expr = [&](const Expr& e) {
            CExpr x;
            x.base = ref(e.base);
            x.op = e.op;
            if (e.op) {
                x.offset = ref(e.offset);
                for (const ArgRef* a : {&x.base, &x.offset})
                    if (a->slot < 0 && !a->constant.is_integer())
                        throw GroundError("arithmetic on non-integer constant " + a->constant.str() +
                                              " in rule " + r.name.str(),
                                          r.span);
            }
            return x;
        };
        c.builtins.push_back(CBuiltin{b.op, expr(b.lhs), expr(b.rhs)});
    }
    c.domain.assign(c.pos.size(), false);
    return c;
}

bool expr_bound(const CExpr& e, const std::vector<bool>& bound) {
    if (e.base.slot >= 0 && !bound[e.base.slot]) return false;
    if (e.op && e.offset.slot >= 0 && !bound[e.offset.slot]) return false;
    return true;
}

bool lone_unbound_var(const CExpr& e, const std::vector<bool>& bound) {
    return e.op == 0 && e.base.slot >= 0 && !bound[e.base.slot];
}

// Greedy plan: built-ins as soon as evaluable, assignments when possible, then the
// store-matched literal with most bound arguments, then universe enumeration.
std::vector<Step> make_plan(const CRule& c, int delta) {
    std::vector<Step> plan;
    std::vector<bool> bound(c.vars.size(), false);
    std::vector<bool> used_lit(c.pos.size(), false), used_b(c.builtins.size(), false);
    auto bind_lit = [&](const CLit& l) {
        for (const auto& a : l.args)
            if (a.slot >= 0) bound[a.slot] = true;
    };
    if (delta >= 0) {
        plan.push_back({Step::Match, delta, -1, true, 1});
        used_lit[delta] = true;
        bind_lit(c.pos[delta]);
    }
    for (;;) {
        bool progress = false;
        for (std::size_t i = 0; i < c.builtins.size(); ++i) {
            if (used_b[i]) continue;
            const auto& b = c.builtins[i];
            if (expr_bound(b.lhs, bound) && expr_bound(b.rhs, bound)) {
                plan.push_back({Step::Check, static_cast<int>(i)});
                used_b[i] = progress = true;
            } else if (b.op == CmpOp::Eq && lone_unbound_var(b.lhs, bound) &&
                       expr_bound(b.rhs, bound)) {
                plan.push_back({Step::Assign, static_cast<int>(i), b.lhs.base.slot, true});
                bound[b.lhs.base.slot] = true;
                used_b[i] = progress = true;
            } else if (b.op == CmpOp::Eq && lone_unbound_var(b.rhs, bound) &&
                       expr_bound(b.lhs, bound)) {
                plan.push_back({Step::Assign, static_cast<int>(i), b.rhs.base.slot, false});
                bound[b.rhs.base.slot] = true;
                used_b[i] = progress = true;
            }
        }
        if (progress) continue;
        int best = -1, best_score = -1;
        for (std::size_t i = 0; i < c.pos.size(); ++i) {
            if (used_lit[i] || !c.domain[i]) continue;
            int score = 0;
            for (const auto& a : c.pos[i].args)
                if (a.slot < 0 || bound[a.slot]) ++score;
            if (score == static_cast<int>(c.pos[i].args.size())) score += 1000;
            if (score > best_score) {
                best = static_cast<int>(i);
                best_score = score;
            }
        }
        if (best >= 0) {
            int filter = delta < 0 ? 0 : (best < delta ? 2 : 0);
            plan.push_back({Step::Match, best, -1, true, filter});
            used_lit[best] = true;
            bind_lit(c.pos[best]);
            continue;
        }
        int var = -1;
        for (std::size_t i = 0; i < c.pos.size() && var < 0; ++i)
            for (const auto& a : c.pos[i].args)
                if (a.slot >= 0 && !bound[a.slot]) {
                    var = a.slot;
                    break;
                }
        if (var >= 0) {
            plan.push_back({Step::Universe, -1, var});
            bound[var] = true;
            continue;
        }
        break;
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Instantiation
// ---------------------------------------------------------------------------

struct Instance {
    std::size_t rule_index;
    std::size_t seq;
    Rule rule;
};

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::size_t h = v.size();
        for (auto x : v) h = h * 1000003u ^ x;
        return h;
    }
};

class Instantiator {
public:
    Instantiator(const std::vector<Term>& universe, const AtomStore& store, int round)
        : universe_(universe), store_(store), round_(round) {
        for (const auto& t : universe) in_universe_.insert(t);
    }

    std::size_t dropped = 0;

    template <class Emit>
    void run(const CRule& c, const std::vector<Step>& plan, Emit&& emit) {
        values_.assign(c.vars.size(), Term{});
        bound_.assign(c.vars.size(), false);
        step(c, plan, 0, emit);
    }

private:
    const std::vector<Term>& universe_;
    const AtomStore& store_;
    int round_;
    std::unordered_set<Term, TermHash> in_universe_;
    std::vector<Term> values_;
    std::vector<bool> bound_;

    const Term& value(const ArgRef& a) const { return a.slot < 0 ? a.constant : values_[a.slot]; }

    // Returns false when arithmetic is applied to a non-integer.
    bool eval(const CExpr& e, Term& out) const {
        const Term& b = value(e.base);
        if (!e.op) {
            out = b;
            return true;
        }
        const Term& o = value(e.offset);
        if (!b.is_integer() || !o.is_integer()) return false;
        out = Term::integer(e.op == '+' ? b.value + o.value : b.value - o.value);
        return true;
    }

    static bool compare(CmpOp op, const Term& a, const Term& b) {
        switch (op) {
            case CmpOp::Eq:
                return a == b;
            case CmpOp::Neq:
                return a != b;
            case CmpOp::Lt:
                return compare_terms(a, b) < 0;
            case CmpOp::Le:
                return compare_terms(a, b) <= 0;
            case CmpOp::Gt:
                return compare_terms(a, b) > 0;
            case CmpOp::Ge:
                return compare_terms(a, b) >= 0;
        }
        return false;
    }

    bool stamp_ok(std::uint32_t id, int filter) const {
        int st = store_.stamp[id];
        if (round_ < 0) return true;
        switch (filter) {
            case 1:
                return st == round_ - 1;
            case 2:
                return st < round_ - 1;
            default:
                return st <= round_ - 1;
        }
    }

    template <class Emit>
    void step(const CRule& c, const std::vector<Step>& plan, std::size_t i, Emit& emit) {
        if (i == plan.size()) {
            emit(values_);
            return;
        }
        const Step& s = plan[i];
        switch (s.kind) {
            case Step::Check: {
                const auto& b = c.builtins[s.idx];
                Term l, r;
                if (!eval(b.lhs, l) || !eval(b.rhs, r) || !compare(b.op, l, r)) {
                    ++dropped;
                    return;
                }
                step(c, plan, i + 1, emit);
                return;
            }
            case Step::Assign: {
                const auto& b = c.builtins[s.idx];
                Term v;
                if (!eval(s.assign_lhs ? b.rhs : b.lhs, v) || !in_universe_.count(v)) {
                    ++dropped;
                    return;
                }
                values_[s.slot] = v;
                bound_[s.slot] = true;
                step(c, plan, i + 1, emit);
                bound_[s.slot] = false;
                return;
            }
            case Step::Universe: {
                for (const auto& t : universe_) {
                    values_[s.slot] = t;
                    bound_[s.slot] = true;
                    step(c, plan, i + 1, emit);
                }
                bound_[s.slot] = false;
                return;
            }
            case Step::Match: {
                const CLit& l = c.pos[s.idx];
                auto pn = predneg_of(l.pred, l.neg);
                const std::vector<std::uint32_t>* cands = &store_.all_of(pn);
                for (std::uint32_t k = 0; k < l.args.size(); ++k) {
                    const auto& a = l.args[k];
                    if (a.slot >= 0 && !bound_[a.slot]) continue;
                    const auto& v = store_.with_arg(pn, k, value(a));
                    if (v.size() < cands->size()) cands = &v;
                }
                std::vector<int> newly;
                for (std::size_t ci = 0; ci < cands->size(); ++ci) {
                    auto id = (*cands)[ci];
                    if (!stamp_ok(id, s.filter)) continue;
                    const Literal& atom = store_.lits[id];
                    if (atom.atom.args.size() != l.args.size()) continue;
                    newly.clear();
                    bool ok = true;
                    for (std::size_t k = 0; k < l.args.size() && ok; ++k) {
                        const auto& a = l.args[k];
                        const Term& t = atom.atom.args[k];
                        if (a.slot < 0) {
                            ok = a.constant == t;
                        } else if (bound_[a.slot]) {
                            ok = values_[a.slot] == t;
                        } else {
                            values_[a.slot] = t;
                            bound_[a.slot] = true;
                            newly.push_back(a.slot);
                        }
                    }
                    if (ok) step(c, plan, i + 1, emit);
                    for (int v : newly) bound_[v] = false;
                }
                return;
            }
        }
    }
};

Literal instantiate(const CLit& l, const std::vector<Term>& values) {
    Literal out;
    out.neg = l.neg;
    out.atom.pred = l.pred;
    out.atom.args.reserve(l.args.size());
    for (const auto& a : l.args) out.atom.args.push_back(a.slot < 0 ? a.constant : values[a.slot]);
    return out;
}

Rule make_instance(const CRule& c, const std::vector<Term>& values) {
    Rule r;
    r.span = c.src->span;
    for (const auto& l : c.head) r.head.push_back(instantiate(l, values));
    for (const auto& l : c.pos) r.pbody.push_back(instantiate(l, values));
    for (const auto& l : c.neg) r.nbody.push_back(instantiate(l, values));
    r.normalize();
    return r;
}

// Literal ids shared by all instances, for duplicate detection.
class Keyer {
public:
    std::vector<std::uint32_t> key(const Rule& r) {
        std::vector<std::uint32_t> k;
        for (const auto* part : {&r.head, &r.pbody, &r.nbody}) {
            std::vector<std::uint32_t> ids;
            for (const auto& l : *part) ids.push_back(id(l));
            std::sort(ids.begin(), ids.end());
            k.insert(k.end(), ids.begin(), ids.end());
            k.push_back(0xffffffffu);
        }
        return k;
    }

private:
    std::unordered_map<Literal, std::uint32_t, LiteralHash> ids_;
    std::uint32_t id(const Literal& l) {
        return ids_.emplace(l, static_cast<std::uint32_t>(ids_.size())).first->second;
    }
};

void check_rule_safety(const Rule& r) {
    std::set<std::int64_t> bound;
    for (const auto& l : r.pbody)
        for (const auto& t : l.atom.args)
            if (t.is_variable()) bound.insert(t.value);
    auto expr_ok = [&](const Expr& e) {
        if (e.base.is_variable() && !bound.count(e.base.value)) return false;
        if (e.op && e.offset.is_variable() && !bound.count(e.offset.value)) return false;
        return true;
    };
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& b : r.builtins) {
            if (b.op != CmpOp::Eq) continue;
            if (!b.lhs.op && b.lhs.base.is_variable() && !bound.count(b.lhs.base.value) &&
                expr_ok(b.rhs)) {
                bound.insert(b.lhs.base.value);
                progress = true;
            } else if (!b.rhs.op && b.rhs.base.is_variable() && !bound.count(b.rhs.base.value) &&
                       expr_ok(b.lhs)) {
                bound.insert(b.rhs.base.value);
                progress = true;
            }
        }
    }
    auto check = [&](const Term& t) {
        if (t.is_variable() && !bound.count(t.value))
            throw GroundError("unsafe variable " + t.text() + " in rule " + r.name.str(), r.span);
    };
    for (const auto* part : {&r.head, &r.nbody})
        for (const auto& l : *part)
            for (const auto& t : l.atom.args) check(t);
    for (const auto& b : r.builtins)
        for (const Expr* e : {&b.lhs, &b.rhs}) {
            check(e->base);
            if (e->op) check(e->offset);
        }
}

// Rules flagged in `keep` retain their names; the others get fresh ones.
void name_output(Program& out, const std::vector<bool>& keep, const GroundOptions& opts) {
    std::set<Term, TermLess> used;
    if (!opts.renumber)
        for (std::size_t i = 0; i < out.rules.size(); ++i)
            if (keep[i]) used.insert(out.rules[i].name);
    std::size_t k = 0;
    for (std::size_t i = 0; i < out.rules.size(); ++i) {
        auto& r = out.rules[i];
        if (!opts.renumber && keep[i]) continue;
        Term candidate;
        do {
            ++k;
            candidate = opts.rule_prefix.empty()
                            ? Term::integer(static_cast<std::int64_t>(k))
                            : Term::symbol(opts.rule_prefix + std::to_string(k));
        } while (used.count(candidate));
        r.name = candidate;
        r.named = false;
        used.insert(candidate);
    }
}

// Builds the relevant instantiation; also returns the store of derivable head literals.
std::vector<Instance> relevant_instances(const Program& p, const std::vector<Term>& uni,
                                         AtomStore& store, std::size_t& dropped) {
    std::vector<CRule> rules;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        rules.push_back(compile(p.rules[i], i));
        rules.back().domain.assign(rules.back().pos.size(), true);
    }
    std::vector<Instance> out;
    Keyer keyer;
    std::unordered_set<std::vector<std::uint32_t>, VecHash> seen;
    std::size_t seq = 0;

    std::vector<Literal> pending;
    auto emit_for = [&](const CRule& c) {
        return [&, cp = &c](const std::vector<Term>& values) {
            Rule r = make_instance(*cp, values);
            if (!seen.insert(keyer.key(r)).second) return;
            for (const auto& h : r.head) pending.push_back(h);
            out.push_back({cp->index, seq++, std::move(r)});
        };
    };

    int round = 0;
    {
        Instantiator inst(uni, store, -1);
        for (const auto& c : rules) {
            if (!c.pos.empty()) continue;
            auto plan = make_plan(c, -1);
            inst.run(c, plan, emit_for(c));
        }
        dropped += inst.dropped;
    }
    std::vector<std::vector<std::vector<Step>>> plans(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i)
        for (std::size_t d = 0; d < rules[i].pos.size(); ++d)
            plans[i].push_back(make_plan(rules[i], static_cast<int>(d)));

    for (;;) {
        bool added = false;
        for (const auto& l : pending)
            if (store.add(l, round)) added = true;
        pending.clear();
        if (!added) break;
        ++round;
        Instantiator inst(uni, store, round);
        for (std::size_t i = 0; i < rules.size(); ++i)
            for (std::size_t d = 0; d < rules[i].pos.size(); ++d)
                inst.run(rules[i], plans[i][d], emit_for(rules[i]));
        dropped += inst.dropped;
    }
    std::stable_sort(out.begin(), out.end(), [](const Instance& a, const Instance& b) {
        return a.rule_index != b.rule_index ? a.rule_index < b.rule_index : a.seq < b.seq;
    });
    return out;
}

// Simplifies with respect to literals that are never derivable or certainly true.
std::vector<Rule> simplify(std::vector<Instance>& insts, const AtomStore& possible) {
    std::vector<Rule*> rs;
    for (auto& i : insts) rs.push_back(&i.rule);
    for (auto* r : rs) {
        std::vector<Literal> keep;
        for (auto& l : r->nbody)
            if (possible.contains(l)) keep.push_back(std::move(l));
        // a constraint keeps one always-true `not l` rather than becoming empty
        if (keep.empty() && r->head.empty() && r->pbody.empty() && !r->nbody.empty())
            keep.push_back(r->nbody.front());
        r->nbody = std::move(keep);
    }
    // certain literals: least model of the definite, negation-free part
    std::unordered_map<Literal, std::vector<std::size_t>, LiteralHash> watch;
    std::vector<std::size_t> missing(rs.size(), 0);
    std::unordered_set<Literal, LiteralHash> certain;
    std::vector<Literal> order, queue;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const Rule& r = *rs[i];
        if (r.head.size() != 1 || !r.nbody.empty()) {
            missing[i] = static_cast<std::size_t>(-1);
            continue;
        }
        missing[i] = r.pbody.size();
        for (const auto& l : r.pbody) watch[l].push_back(i);
        if (r.pbody.empty()) queue.push_back(r.head[0]);
    }
    while (!queue.empty()) {
        Literal l = queue.back();
        queue.pop_back();
        if (!certain.insert(l).second) continue;
        order.push_back(l);
        auto it = watch.find(l);
        if (it == watch.end()) continue;
        for (auto i : it->second)
            if (--missing[i] == 0) queue.push_back(rs[i]->head[0]);
    }
    std::sort(order.begin(), order.end());
    std::vector<Rule> out;
    for (const auto& l : order) {
        Rule f;
        f.head.push_back(l);
        out.push_back(std::move(f));
    }
    for (auto* r : rs) {
        bool drop = false;
        for (const auto& l : r->nbody)
            if (certain.count(l)) drop = true;
        for (const auto& l : r->head)
            if (certain.count(l)) drop = true;
        if (drop) continue;
        std::vector<Literal> keep;
        for (auto& l : r->pbody)
            if (!certain.count(l)) keep.push_back(l);
        if (keep.empty() && r->head.empty() && r->nbody.empty() && !r->pbody.empty()) {
            keep.push_back(r->pbody.front());  // violated constraint stays violated
        }
        r->pbody = std::move(keep);
        out.push_back(std::move(*r));
    }
    // drop duplicates created by simplification
    Keyer keyer;
    std::unordered_set<std::vector<std::uint32_t>, VecHash> seen;
    std::vector<Rule> uniq;
    for (auto& r : out)
        if (seen.insert(keyer.key(r)).second) uniq.push_back(std::move(r));
    return uniq;
}

}  // namespace

std::vector<Term> universe(const Program& p) {
    std::set<Term, TermLess> s;
    auto add = [&](const Term& t) {
        if (t.is_constant()) s.insert(t);
    };
    for (const auto& r : p.rules) {
        for (const auto* part : {&r.head, &r.pbody, &r.nbody})
            for (const auto& l : *part)
                for (const auto& t : l.atom.args) add(t);
        for (const auto& b : r.builtins)
            for (const Expr* e : {&b.lhs, &b.rhs}) {
                add(e->base);
                if (e->op) add(e->offset);
            }
    }
    return {s.begin(), s.end()};
}

void check_safety(const Program& p) {
    for (const auto& r : p.rules) check_rule_safety(r);
}

namespace {

GroundResult herbrand(const Program& p, const std::vector<Term>& uni, const AtomStore* guess_store,
                      const std::set<std::uint32_t>& guess_preds, const GroundOptions& opts) {
    GroundResult res;
    res.report.input_rules = p.rules.size();
    res.report.universe_size = uni.size();
    AtomStore empty;
    const AtomStore& store = guess_store ? *guess_store : empty;
    Instantiator inst(uni, store, -1);
    Keyer keyer;
    std::unordered_set<std::vector<std::uint32_t>, VecHash> seen;
    std::vector<bool> keep;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        const Rule& src = p.rules[i];
        CRule c = compile(src, i);
        for (std::size_t k = 0; k < c.pos.size(); ++k)
            c.domain[k] = guess_store && guess_preds.count(c.pos[k].pred);
        auto plan = make_plan(c, -1);
        bool ground_src = src.is_ground();
        inst.run(c, plan, [&](const std::vector<Term>& values) {
            Rule r = make_instance(c, values);
            if (!seen.insert(keyer.key(r)).second) return;
            r.name = src.name;
            r.named = ground_src && src.named;
            keep.push_back(ground_src);
            res.program.rules.push_back(std::move(r));
        });
    }
    res.report.dropped_rules = inst.dropped;
    name_output(res.program, keep, opts);
    res.report.output_rules = res.program.rules.size();
    return res;
}

}  // namespace

GroundResult ground(const Program& p, const GroundOptions& opts) {
    check_safety(p);
    auto uni = universe(p);
    if (opts.mode == GroundMode::Herbrand) return herbrand(p, uni, nullptr, {}, opts);

    GroundResult res;
    res.report.input_rules = p.rules.size();
    res.report.universe_size = uni.size();
    AtomStore store;
    auto insts = relevant_instances(p, uni, store, res.report.dropped_rules);
    res.program.rules = simplify(insts, store);
    name_output(res.program, std::vector<bool>(res.program.rules.size(), false), opts);
    res.report.output_rules = res.program.rules.size();
    return res;
}

GroundResult ground_check(const Program& guess, const Program& check, const GroundOptions& opts) {
    check_safety(guess);
    check_safety(check);
    Program both = guess;
    both.append(check);
    auto uni = universe(both);
    AtomStore store;
    std::size_t ignored = 0;
    relevant_instances(guess, universe(guess), store, ignored);
    auto check_heads = head_predicates(check);
    std::set<std::uint32_t> guess_preds;
    for (auto pred : predicates_of(guess))
        if (!check_heads.count(pred)) guess_preds.insert(pred);
    return herbrand(check, uni, &store, guess_preds, opts);
}

}  // namespace gcmeta
