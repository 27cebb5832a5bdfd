#include "gcmeta/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "gcmeta/grounder.hpp"
#include "gcmeta/textio.hpp"

namespace gcmeta {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
    bool coin() { return (gen_() >> 17) & 1U; }

private:
    std::mt19937_64 gen_;
};

/// k distinct indices out of n, in draw order.
std::vector<std::size_t> distinct(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    pool.resize(k);
    return pool;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_';
    });
}

void require_identifier(const std::string& s, const char* what) {
    if (!is_identifier(s))
        throw PreconditionError(std::string(what) + " '" + s + "' is not a lower-case identifier");
}

std::string qbf_literal(const QbfLiteral& l) { return (l.positive ? "" : "-") + l.var; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// QBF
// ---------------------------------------------------------------------------

void QbfInstance::validate() const {
    std::set<std::string> seen;
    for (const auto* vars : {&x_vars, &y_vars})
        for (const auto& v : *vars) {
            require_identifier(v, "variable");
            if (v == "true" || v == "false" || v == "w")
                throw PreconditionError("variable name '" + v + "' is reserved");
            if (!seen.insert(v).second) throw PreconditionError("duplicate variable " + v);
        }
    for (const auto& t : terms)
        for (const auto& l : t)
            if (!seen.count(l.var)) throw PreconditionError("undeclared variable " + l.var);
}

QbfInstance worked_qbf() {
    QbfInstance q;
    q.x_vars = {"x0", "x1"};
    q.y_vars = {"y0", "y1"};
    q.terms = {{{"x0", false}, {"y0", false}},
               {{"y0", true}, {"x0", false}},
               {{"y1", true}, {"x0", true}, {"y0", false}},
               {{"y0", true}, {"x1", false}, {"y0", false}}};
    return q;
}

std::size_t default_qbf_terms(std::size_t n) { return 2 * n; }

QbfInstance gen_qbf(std::size_t n_x, std::size_t n_y, std::size_t n_terms, std::size_t term_len,
                    std::uint64_t seed) {
    if (term_len < 1) throw PreconditionError("gen_qbf: term_len must be at least 1");
    if (term_len > n_x + n_y) throw PreconditionError("gen_qbf: term_len exceeds variable count");
    QbfInstance q;
    std::vector<std::string> all;
    for (std::size_t i = 0; i < n_x; ++i) q.x_vars.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < n_y; ++i) q.y_vars.push_back("y" + std::to_string(i));
    all = q.x_vars;
    all.insert(all.end(), q.y_vars.begin(), q.y_vars.end());
    Rng rng(seed);
    for (std::size_t t = 0; t < n_terms; ++t) {
        std::vector<QbfLiteral> term;
        for (auto i : distinct(rng, all.size(), term_len)) term.push_back({all[i], rng.coin()});
        q.terms.push_back(std::move(term));
    }
    return q;
}

GuessCheckPair encode_qbf(const QbfInstance& q) {
    q.validate();
    std::string g, c;
    for (const auto& x : q.x_vars) g += x + " v -" + x + ".\n";
    for (const auto& y : q.y_vars) c += y + " v -" + y + ".\n";
    for (const auto& t : q.terms) {
        std::vector<std::string> lits;
        for (const auto& l : t) lits.push_back(qbf_literal(l));
        c += ":- " + join(lits, ", ") + ".\n";
    }
    return {parse(g), parse(c)};
}

Program encode_qbf_adhoc(const QbfInstance& q) {
    q.validate();
    std::string s;
    for (const auto& x : q.x_vars) s += "exists(" + x + ").\n";
    for (const auto& y : q.y_vars) s += "forall(" + y + ").\n";
    for (const auto& t : q.terms) {
        if (t.empty() || t.size() > 3)
            throw PreconditionError("encode_qbf_adhoc: terms must have one to three literals");
        std::vector<std::string> p, n;
        for (const auto& l : t) (l.positive ? p : n).push_back(l.var);
        while (p.size() < 3) p.push_back("true");
        while (n.size() < 3) n.push_back("false");
        s += "term(" + join(p, ",") + "," + join(n, ",") + ").\n";
    }
    s += "t(true). f(false).\n"
         "t(X) v f(X) :- exists(X).\n"
         "t(Y) v f(Y) :- forall(Y).\n"
         "w :- term(X,Y,Z,Na,Nb,Nc), t(X), t(Y), t(Z), f(Na), f(Nb), f(Nc).\n"
         "t(Y) :- w, forall(Y).\n"
         "f(Y) :- w, forall(Y).\n"
         ":- not w.\n";
    return parse(s);
}

Witnesses eval_qbf(const QbfInstance& q) {
    q.validate();
    const std::size_t nx = q.x_vars.size(), ny = q.y_vars.size();
    if (nx + ny > 24) throw PreconditionError("eval_qbf: more than 24 variables");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nx; ++i) index[q.x_vars[i]] = i;
    for (std::size_t i = 0; i < ny; ++i) index[q.y_vars[i]] = nx + i;
    // term as (positive mask, negative mask) over all variables
    std::vector<std::pair<std::uint32_t, std::uint32_t>> terms;
    for (const auto& t : q.terms) {
        std::uint32_t pos = 0, neg = 0;
        for (const auto& l : t) (l.positive ? pos : neg) |= 1U << index.at(l.var);
        terms.emplace_back(pos, neg);
    }
    Witnesses out;
    for (std::uint32_t xs = 0; xs < (1U << nx); ++xs) {
        bool taut = true;
        for (std::uint32_t ys = 0; taut && ys < (1U << ny); ++ys) {
            const std::uint32_t v = xs | (ys << nx);
            taut = std::any_of(terms.begin(), terms.end(), [v](const auto& t) {
                return (v & t.first) == t.first && (v & t.second) == 0;
            });
        }
        if (!taut) continue;
        LiteralSet w;
        for (std::size_t i = 0; i < nx; ++i)
            w.insert(Literal(Atom(q.x_vars[i]), !((xs >> i) & 1U)));
        out.insert(std::move(w));
    }
    return out;
}

Witnesses qbf_adhoc_witnesses(const std::vector<AnswerSet>& sets, const QbfInstance& q) {
    Witnesses out;
    for (const auto& s : sets) {
        LiteralSet w;
        for (const auto& x : q.x_vars) {
            const Term arg = Term::symbol(x);
            if (s.contains(Literal(Atom("t", {arg})))) w.insert(Literal(Atom(x)));
            if (s.contains(Literal(Atom("f", {arg})))) w.insert(Literal(Atom(x), true));
        }
        out.insert(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Strategic companies
// ---------------------------------------------------------------------------

void ScInstance::validate() const {
    std::set<std::string> known;
    for (const auto& c : companies) {
        require_identifier(c, "company");
        if (!known.insert(c).second) throw PreconditionError("duplicate company " + c);
    }
    for (const auto& row : prod_by) {
        require_identifier(row[0], "product");
        for (std::size_t i = 1; i < 3; ++i)
            if (!known.count(row[i])) throw PreconditionError("undeclared company " + row[i]);
    }
    for (const auto& row : contr_by)
        for (const auto& c : row)
            if (!known.count(c)) throw PreconditionError("undeclared company " + c);
}

ScInstance worked_sc() {
    ScInstance s;
    s.companies = {"barilla", "saiwa", "frutto", "panino"};
    s.prod_by = {{"pasta", "barilla", "saiwa"},
                 {"tomatoes", "frutto", "barilla"},
                 {"wine", "barilla", "barilla"},
                 {"bread", "saiwa", "panino"}};
    s.contr_by = {{"frutto", "barilla", "saiwa", "saiwa"}};
    return s;
}

ScInstance gen_sc(std::size_t n_companies, std::size_t n_products, std::size_t n_controls,
                  std::uint64_t seed) {
    if (n_companies == 0) throw PreconditionError("gen_sc: at least one company is required");
    if (n_controls > n_companies)
        throw PreconditionError("gen_sc: more controlled companies than companies");
    if (n_controls > 0 && n_companies < 2)
        throw PreconditionError("gen_sc: control needs at least two companies");
    ScInstance s;
    for (std::size_t i = 0; i < n_companies; ++i) s.companies.push_back("c" + std::to_string(i));
    Rng rng(seed);
    for (std::size_t p = 0; p < n_products; ++p) {
        const std::size_t k = n_companies >= 2 ? 1 + rng.below(2) : 1;
        auto who = distinct(rng, n_companies, k);
        const auto& a = s.companies[who[0]];
        const auto& b = s.companies[who[k - 1]];
        s.prod_by.push_back({"p" + std::to_string(p), a, b});
    }
    for (auto controlled : distinct(rng, n_companies, n_controls)) {
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < n_companies; ++i)
            if (i != controlled) others.push_back(i);
        const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, others.size()));
        auto pick = distinct(rng, others.size(), k);
        std::array<std::string, 4> row;
        row[0] = s.companies[controlled];
        for (std::size_t j = 0; j < 3; ++j) row[j + 1] = s.companies[others[pick[std::min(j, k - 1)]]];
        s.contr_by.push_back(row);
    }
    return s;
}

namespace {

std::string sc_facts(const ScInstance& inst, bool companies) {
    inst.validate();
    std::string s;
    if (companies)
        for (const auto& c : inst.companies) s += "company(" + c + ").\n";
    for (const auto& r : inst.prod_by) s += "prod_by(" + r[0] + "," + r[1] + "," + r[2] + ").\n";
    for (const auto& r : inst.contr_by)
        s += "contr_by(" + r[0] + "," + r[1] + "," + r[2] + "," + r[3] + ").\n";
    return s;
}

}  // namespace

GuessCheckPair encode_sc(const ScInstance& inst) {
    std::string g = sc_facts(inst, true);
    g += "strat(X) v -strat(X) :- company(X).\n"
         ":- prod_by(X,Y,Z), not strat(Y), not strat(Z).\n"
         ":- contr_by(W,X,Y,Z), not strat(W), strat(X), strat(Y), strat(Z).\n";
    const std::string c =
        "strat1(X) v -strat1(X) :- strat(X).\n"
        ":- prod_by(X,Y,Z), not strat1(Y), not strat1(Z).\n"
        ":- contr_by(W,X,Y,Z), not strat1(W), strat1(X), strat1(Y), strat1(Z).\n"
        "smaller :- -strat1(X).\n"
        ":- not smaller.\n";
    return {parse(g), parse(c)};
}

Program encode_sc_adhoc1(const ScInstance& inst) {
    return parse(sc_facts(inst, false) +
                 "strat(Y) v strat(Z) :- prod_by(X,Y,Z).\n"
                 "strat(W) :- contr_by(W,X,Y,Z), strat(X), strat(Y), strat(Z).\n");
}

Program encode_sc_adhoc2(const ScInstance& inst) {
    return parse(sc_facts(inst, true) +
                 "strat(X) v -strat(X) :- company(X).\n"
                 ":- prod_by(X,Y,Z), not strat(Y), not strat(Z).\n"
                 ":- contr_by(W,X,Y,Z), not strat(W), strat(X), strat(Y), strat(Z).\n"
                 ":- not min(X), strat(X).\n"
                 ":- strat'(X,Y), -strat(Y).\n"
                 ":- strat'(X,X).\n"
                 "min(X) v strat'(X,Y) v strat'(X,Z) :- prod_by(G,Y,Z), strat(X).\n"
                 "min(X) v strat'(X,C) :- contr_by(C,W,Y,Z), strat(X), strat'(X,W), "
                 "strat'(X,Y), strat'(X,Z).\n"
                 "strat'(X,Y) :- min(X), strat(X), strat(Y), X != Y.\n");
}

ScGeneral to_general(const ScInstance& inst) {
    inst.validate();
    ScGeneral g;
    std::set<std::array<std::string, 2>> prod;
    for (const auto& r : inst.prod_by) {
        prod.insert({r[1], r[0]});
        prod.insert({r[2], r[0]});
    }
    g.produces.assign(prod.begin(), prod.end());
    for (std::size_t i = 0; i < inst.contr_by.size(); ++i) {
        const auto& r = inst.contr_by[i];
        const std::string group = "g" + std::to_string(i);
        std::set<std::string> members{r[1], r[2], r[3]};
        for (const auto& m : members) g.controls.push_back({m, group, r[0]});
    }
    return g;
}

namespace {

std::vector<std::string> general_companies(const ScGeneral& facts) {
    std::set<std::string> cs;
    for (const auto& r : facts.produces) cs.insert(r[0]);
    for (const auto& r : facts.controls) {
        cs.insert(r[0]);
        cs.insert(r[2]);
    }
    return {cs.begin(), cs.end()};
}

}  // namespace

GuessCheckPair encode_sc_general(const ScGeneral& facts) {
    std::string g;
    for (const auto& c : general_companies(facts)) {
        require_identifier(c, "company");
        g += "company(" + c + ").\n";
    }
    for (const auto& r : facts.produces) g += "produces(" + r[0] + "," + r[1] + ").\n";
    for (const auto& r : facts.controls)
        g += "controls(" + r[0] + "," + r[1] + "," + r[2] + ").\n";
    g += "strat(X) v -strat(X) :- company(X).\n"
         "no_control(G,C) :- controls(C1,G,C), not strat(C1).\n"
         ":- controls(C1,G,C), not no_control(G,C), not strat(C).\n"
         "produced(P) :- produces(C,P), strat(C).\n"
         ":- produces(C,P), not produced(P).\n";
    const std::string c =
        "strat1(X) v -strat1(X) :- strat(X).\n"
        "no_control1(G,C) :- controls(C1,G,C), not strat1(C1).\n"
        ":- controls(C1,G,C), not no_control1(G,C), not strat1(C).\n"
        "produced1(P) :- produces(C,P), strat1(C).\n"
        ":- produces(C,P), not produced1(P).\n"
        "smaller :- -strat1(X).\n"
        ":- not smaller.\n";
    return {parse(g), parse(c)};
}

namespace {

/// Minimal masks among those accepted by `ok`, over n companies.
std::set<std::set<std::string>> minimal_sets(const std::vector<std::string>& names,
                                             const std::function<bool(std::uint32_t)>& ok) {
    const std::size_t n = names.size();
    if (n > 20) throw PreconditionError("strategic_oracle: more than 20 companies");
    const std::uint32_t full = 1U << n;
    std::vector<char> sat(full), below(full);
    for (std::uint32_t m = 0; m < full; ++m) sat[m] = below[m] = ok(m) ? 1 : 0;
    // below[m]: some subset of m is accepted
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t m = 0; m < full; ++m)
            if ((m >> i) & 1U) below[m] |= below[m ^ (1U << i)];
    std::set<std::set<std::string>> out;
    for (std::uint32_t m = 0; m < full; ++m) {
        if (!sat[m]) continue;
        bool minimal = true;
        for (std::size_t i = 0; minimal && i < n; ++i)
            if (((m >> i) & 1U) && below[m ^ (1U << i)]) minimal = false;
        if (!minimal) continue;
        std::set<std::string> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((m >> i) & 1U) s.insert(names[i]);
        out.insert(std::move(s));
    }
    return out;
}

}  // namespace

std::set<std::set<std::string>> strategic_oracle(const ScInstance& inst) {
    inst.validate();
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < inst.companies.size(); ++i) idx[inst.companies[i]] = i;
    std::vector<std::uint32_t> prod;
    for (const auto& r : inst.prod_by) prod.push_back((1U << idx[r[1]]) | (1U << idx[r[2]]));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ctrl;
    for (const auto& r : inst.contr_by)
        ctrl.emplace_back((1U << idx[r[1]]) | (1U << idx[r[2]]) | (1U << idx[r[3]]),
                          1U << idx[r[0]]);
    return minimal_sets(inst.companies, [&](std::uint32_t m) {
        for (auto p : prod)
            if (!(m & p)) return false;
        for (const auto& [who, c] : ctrl)
            if ((m & who) == who && !(m & c)) return false;
        return true;
    });
}

std::set<std::set<std::string>> strategic_oracle(const ScGeneral& facts) {
    const auto names = general_companies(facts);
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = i;
    std::map<std::string, std::uint32_t> producers;
    for (const auto& r : facts.produces) producers[r[1]] |= 1U << idx[r[0]];
    std::map<std::pair<std::string, std::string>, std::uint32_t> groups;
    for (const auto& r : facts.controls) groups[{r[1], r[2]}] |= 1U << idx[r[0]];
    return minimal_sets(names, [&](std::uint32_t m) {
        for (const auto& [p, who] : producers)
            if (!(m & who)) return false;
        for (const auto& [key, who] : groups)
            if ((m & who) == who && !((m >> idx[key.second]) & 1U)) return false;
        return true;
    });
}

std::set<std::set<std::string>> strategic_sets(const std::vector<AnswerSet>& sets) {
    const std::uint32_t strat = intern("strat");
    std::set<std::set<std::string>> out;
    for (const auto& s : sets) {
        std::set<std::string> cs;
        for (const auto& l : s.literals)
            if (l.atom.pred == strat && !l.neg && l.atom.arity() == 1) cs.insert(l.atom.args[0].str());
        out.insert(std::move(cs));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bomb in the toilet
// ---------------------------------------------------------------------------

const char* bomb_variant_name(BombVariant v) {
    switch (v) {
        case BombVariant::Plain: return "plain";
        case BombVariant::Btc: return "btc";
        case BombVariant::Btuc: return "btuc";
    }
    return "?";
}

std::string to_string(const BombPlan& plan) {
    std::vector<std::string> steps;
    for (const auto& a : plan)
        steps.push_back(a.kind == 'd'   ? "dunk(" + std::to_string(a.package) + ")"
                        : a.kind == 'f' ? std::string("flush")
                                        : std::string("noop"));
    return "[" + join(steps, ", ") + "]";
}

GuessCheckPair encode_bomb(const BombInstance& inst) {
    std::string g, c;
    for (std::size_t t = 0; t < inst.horizon; ++t)
        g += (t ? " " : "") + std::string("time(") + std::to_string(t) + ").";
    if (inst.horizon) g += "\n";
    const std::string h = std::to_string(inst.horizon);
    if (inst.variant == BombVariant::Plain) {
        if (inst.packages != 1) throw PreconditionError("encode_bomb: plain variant has one package");
        g += "dunk(T) v -dunk(T) :- time(T).\n"
             "flush(T) v -flush(T) :- time(T).\n"
             ":- flush(T), dunk(T).\n";
        c = "armed(0) v -armed(0).\n"
            "armed(T1) :- armed(T), not -armed(T1), time(T), T1=T+1.\n"
            "dunked(T1) :- dunked(T), T1=T+1.\n"
            "dunked(T1) :- dunk(T), T1=T+1.\n"
            "armed(T1) v -armed(T1) :- dunk(T), armed(T), T1=T+1.\n"
            "-armed(T1) :- flush(T), dunked(T), T1=T+1.\n"
            ":- not armed(" + h + ").\n";
        return {parse(g), parse(c)};
    }
    if (inst.packages == 0) throw PreconditionError("encode_bomb: at least one package is required");
    for (std::size_t p = 1; p <= inst.packages; ++p)
        g += (p > 1 ? " " : "") + std::string("package(") + std::to_string(p) + ").";
    g += "\n"
         "dunk(P,T) v -dunk(P,T) :- package(P), time(T).\n"
         "flush(T) v -flush(T) :- time(T).\n"
         ":- flush(T), dunk(P,T).\n"
         ":- dunk(P,T), dunk(Q,T), P != Q.\n";
    c = "armed(P,0) v -armed(P,0) :- package(P).\n"
        "armed(P,T1) :- armed(P,T), not -armed(P,T1), time(T), T1=T+1.\n"
        "-armed(P,T1) :- dunk(P,T), T1=T+1.\n";
    c += inst.variant == BombVariant::Btc ? "clogged(T1) :- dunk(P,T), T1=T+1.\n"
                                          : "clogged(T1) v -clogged(T1) :- dunk(P,T), T1=T+1.\n";
    c += "clogged(T1) :- clogged(T), not -clogged(T1), time(T), T1=T+1.\n"
         "-clogged(T1) :- flush(T), T1=T+1.\n"
         "unsafe :- armed(P," + h + ").\n"
         "unsafe :- dunk(P,T), clogged(T).\n"
         ":- not unsafe.\n";
    return {parse(g), parse(c)};
}

std::vector<BombPlan> all_bomb_plans(const BombInstance& inst) {
    std::vector<BombAction> choices{{'n', 1}, {'f', 1}};
    for (std::size_t p = 1; p <= inst.packages; ++p) choices.push_back({'d', p});
    std::vector<BombPlan> out{BombPlan{}};
    for (std::size_t t = 0; t < inst.horizon; ++t) {
        std::vector<BombPlan> next;
        for (const auto& plan : out)
            for (const auto& a : choices) {
                next.push_back(plan);
                next.back().push_back(a);
            }
        out = std::move(next);
    }
    return out;
}

bool conformant_oracle(const BombInstance& inst, const BombPlan& plan) {
    if (inst.packages > 16) throw PreconditionError("conformant_oracle: more than 16 packages");
    if (inst.variant == BombVariant::Plain && inst.packages != 1)
        throw PreconditionError("conformant_oracle: plain variant has one package");
    BombPlan steps = plan;
    steps.resize(std::max(steps.size(), inst.horizon));
    steps.resize(inst.horizon);

    if (inst.variant == BombVariant::Plain) {
        // state: armed, dunked
        std::function<bool(std::size_t, bool, bool)> safe = [&](std::size_t t, bool armed,
                                                                bool dunked) {
            if (t == steps.size()) return !armed;
            const auto& a = steps[t];
            if (a.kind == 'd') {
                if (!armed) return safe(t + 1, false, true);
                return safe(t + 1, true, true) && safe(t + 1, false, true);
            }
            if (a.kind == 'f') return safe(t + 1, dunked ? false : armed, dunked);
            return safe(t + 1, armed, dunked);
        };
        return safe(0, true, false) && safe(0, false, false);
    }

    const bool uncertain = inst.variant == BombVariant::Btuc;
    std::function<bool(std::size_t, std::uint32_t, bool)> safe = [&](std::size_t t,
                                                                     std::uint32_t armed,
                                                                     bool clogged) {
        if (t == steps.size()) return armed == 0;
        const auto& a = steps[t];
        if (a.kind == 'd') {
            if (clogged || a.package < 1 || a.package > inst.packages) return false;
            const std::uint32_t next = armed & ~(1U << (a.package - 1));
            return safe(t + 1, next, true) && (!uncertain || safe(t + 1, next, false));
        }
        if (a.kind == 'f') return safe(t + 1, armed, false);
        return safe(t + 1, armed, clogged);
    };
    for (std::uint32_t init = 0; init < (1U << inst.packages); ++init)
        if (!safe(0, init, false)) return false;
    return true;
}

std::set<BombPlan> bomb_plans(const std::vector<AnswerSet>& sets, const BombInstance& inst) {
    const std::uint32_t dunk = intern("dunk"), flush = intern("flush");
    std::set<BombPlan> out;
    for (const auto& s : sets) {
        BombPlan plan(inst.horizon);
        for (const auto& l : s.literals) {
            if (l.neg || l.atom.args.empty()) continue;
            const Term& last = l.atom.args.back();
            if (!last.is_integer() || last.value < 0 ||
                static_cast<std::size_t>(last.value) >= inst.horizon)
                continue;
            auto& step = plan[static_cast<std::size_t>(last.value)];
            if (l.atom.pred == flush && l.atom.arity() == 1) step = {'f', 1};
            if (l.atom.pred == dunk && l.atom.arity() == 1) step = {'d', 1};
            if (l.atom.pred == dunk && l.atom.arity() == 2 && l.atom.args[0].is_integer())
                step = {'d', static_cast<std::size_t>(l.atom.args[0].value)};
        }
        out.insert(std::move(plan));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Running encodings
// ---------------------------------------------------------------------------

SolveResult ground_and_solve(const Program& p, const SolveOptions& opts) {
    GroundOptions go;
    go.mode = GroundMode::Relevant;
    return solve(ground(p, go).program, opts);
}

SolveResult solve_pair(const GuessCheckPair& pair, const TransformOptions& opts,
                       const SolveOptions& solve_opts) {
    const auto prepared = prepare_pair(pair.guess, pair.check);
    return ground_and_solve(integrate(prepared, opts), solve_opts);
}

Witnesses restrict_to(const std::vector<AnswerSet>& sets, const std::vector<std::string>& preds) {
    Witnesses out;
    for (const auto& s : project_predicates(sets, preds)) out.insert(s.literals);
    return out;
}

BenchFamily parse_bench_family(const std::string& name) {
    if (name == "qbf") return BenchFamily::Qbf;
    if (name == "sc") return BenchFamily::Sc;
    if (name == "bomb") return BenchFamily::Bomb;
    throw PreconditionError("unknown bench family '" + name + "'");
}

const char* bench_family_name(BenchFamily f) {
    switch (f) {
        case BenchFamily::Qbf: return "qbf";
        case BenchFamily::Sc: return "sc";
        case BenchFamily::Bomb: return "bomb";
    }
    return "?";
}

namespace {

ScInstance bench_sc(std::size_t size, std::uint64_t seed) { return gen_sc(size, size, size / 2, seed); }

QbfInstance bench_qbf(std::size_t size, std::uint64_t seed) {
    return gen_qbf(size, size, default_qbf_terms(size), 3, seed);
}

BombInstance bench_bomb(std::size_t size) {
    return {BombVariant::Btc, size, size == 0 ? 0 : 2 * size - 1};
}

}  // namespace

GuessCheckPair bench_pair(BenchFamily f, std::size_t size, std::uint64_t seed) {
    switch (f) {
        case BenchFamily::Qbf: return encode_qbf(bench_qbf(size, seed));
        case BenchFamily::Sc: return encode_sc(bench_sc(size, seed));
        case BenchFamily::Bomb: return encode_bomb(bench_bomb(size));
    }
    return {};
}

std::vector<std::pair<std::string, Program>> bench_adhoc(BenchFamily f, std::size_t size,
                                                         std::uint64_t seed) {
    switch (f) {
        case BenchFamily::Qbf: return {{"adhoc", encode_qbf_adhoc(bench_qbf(size, seed))}};
        case BenchFamily::Sc: {
            const auto inst = bench_sc(size, seed);
            return {{"adhoc1", encode_sc_adhoc1(inst)}, {"adhoc2", encode_sc_adhoc2(inst)}};
        }
        case BenchFamily::Bomb: return {};
    }
    return {};
}

std::vector<BenchRow> run_bench(BenchFamily f, const std::vector<std::size_t>& sizes,
                                const std::vector<std::uint64_t>& seeds,
                                const std::vector<TransformOptions>& matrix, bool adhoc,
                                const SolveOptions& solve_opts) {
    using Clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    auto record = [&](std::size_t size, std::uint64_t seed, const std::string& opts,
                      const std::function<SolveResult()>& run) {
        BenchRow row{bench_family_name(f), size, seed, opts};
        const auto t0 = Clock::now();
        const SolveResult r = run();
        row.time_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        row.answersets = r.answer_sets.size();
        row.budget_exceeded = r.exhausted();
        rows.push_back(std::move(row));
    };
    for (auto size : sizes)
        for (auto seed : seeds) {
            const auto pair = bench_pair(f, size, seed);
            for (const auto& o : matrix)
                record(size, seed, o.str(), [&] { return solve_pair(pair, o, solve_opts); });
            if (adhoc)
                for (const auto& [name, prog] : bench_adhoc(f, size, seed))
                    record(size, seed, name, [&] { return ground_and_solve(prog, solve_opts); });
        }
    return rows;
}

std::string bench_csv_header() { return "family,size,seed,opts,time,answersets,status"; }

std::string bench_csv_row(const BenchRow& r) {
    std::string opts = r.opts;
    std::replace(opts.begin(), opts.end(), ',', '+');
    char time[32];
    std::snprintf(time, sizeof time, "%.3f", r.time_ms);
    std::ostringstream os;
    os << r.family << ',' << r.size << ',' << r.seed << ',' << opts << ',' << time << ','
       << r.answersets << ',' << (r.budget_exceeded ? "budget" : "ok");
    return os.str();
}

}  // namespace gcmeta
