#include "gcmeta/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace gcmeta {

SolveOptions default_solve_options() {
    SolveOptions o;
    if (const char* env = std::getenv("GC_BUDGET_MS")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0') o.budget_ms = v;
    }
    return o;
}

void sort_answer_sets(std::vector<AnswerSet>& sets) {
    std::sort(sets.begin(), sets.end(), [](const AnswerSet& a, const AnswerSet& b) {
        return std::lexicographical_compare(a.literals.begin(), a.literals.end(),
                                            b.literals.begin(), b.literals.end());
    });
}

std::vector<AnswerSet> project_predicates(const std::vector<AnswerSet>& sets,
                                          const std::vector<std::string>& preds) {
    std::unordered_set<std::uint32_t> keep;
    for (const auto& p : preds) keep.insert(intern(p));
    std::vector<AnswerSet> out;
    for (const auto& s : sets) {
        AnswerSet a;
        a.producer = s.producer;
        for (const auto& l : s.literals)
            if (keep.count(l.atom.pred)) a.literals.insert(l);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
    }
    sort_answer_sets(out);
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetHit {};

struct Budget {
    bool timed = false;
    Clock::time_point deadline;
    std::uint64_t max_decisions = 0;
    SearchStats* stats = nullptr;

    void check_time() const {
        if (timed && Clock::now() > deadline) throw BudgetHit{};
    }
    void on_decision() const {
        if (!stats) return;
        ++stats->decisions;
        if (max_decisions && stats->decisions > max_decisions) throw BudgetHit{};
        if ((stats->decisions & 255u) == 0) check_time();
    }
};

// ---------------------------------------------------------------------------
// Integer view of a ground program. Atom ids follow canonical literal order.
// ---------------------------------------------------------------------------

struct GRule {
    std::vector<int> head, pos, neg;
};

struct GProgram {
    std::vector<Literal> atoms;
    std::unordered_map<Literal, int, LiteralHash> index;
    std::vector<GRule> rules;
    std::vector<std::vector<int>> pos_occ;  // rules with the atom in the positive body
    std::vector<char> cycle_free;           // atom's component has no head cycle
    std::vector<std::size_t> level;         // SCC id over head -> body edges, bodies lower
    bool hcf = false;

    int find(const Literal& l) const {
        auto it = index.find(l);
        return it == index.end() ? -1 : it->second;
    }
};

void require_ground(const Program& p, const char* what) {
    for (const auto& r : p.rules) {
        if (!r.is_ground())
            throw PreconditionError(std::string(what) + ": rule " + r.name.str() +
                                    " is not ground");
        if (!r.builtins.empty())
            throw PreconditionError(std::string(what) + ": rule " + r.name.str() +
                                    " has a built-in; ground it first");
    }
}

// Adds `:- l, -l` for every complementary pair so that models are consistent.
GProgram compile(const Program& p) {
    GProgram g;
    g.atoms = literals_of(p);
    g.index.reserve(g.atoms.size() * 2);
    for (std::size_t i = 0; i < g.atoms.size(); ++i) g.index.emplace(g.atoms[i], static_cast<int>(i));
    auto conv = [&](const std::vector<Literal>& v, std::vector<int>& out) {
        for (const auto& l : v) {
            int i = g.index.at(l);
            if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
        }
    };
    for (const auto& r : p.rules) {
        GRule gr;
        conv(r.head, gr.head);
        conv(r.pbody, gr.pos);
        conv(r.nbody, gr.neg);
        g.rules.push_back(std::move(gr));
    }
    for (std::size_t i = 0; i < g.atoms.size(); ++i) {
        if (g.atoms[i].neg) continue;
        int j = g.find(g.atoms[i].complement());
        if (j >= 0) g.rules.push_back(GRule{{}, {static_cast<int>(i), j}, {}});
    }
    g.pos_occ.assign(g.atoms.size(), {});
    for (std::size_t r = 0; r < g.rules.size(); ++r)
        for (int a : g.rules[r].pos) g.pos_occ[a].push_back(static_cast<int>(r));

    // Head-cycle freedom on the ground atom graph.
    std::vector<std::vector<std::size_t>> adj(g.atoms.size());
    for (const auto& r : g.rules)
        for (int h : r.head)
            for (int b : r.pos) adj[h].push_back(static_cast<std::size_t>(b));
    auto comp = strongly_connected_components(g.atoms.size(), adj);
    std::vector<char> cyclic_comp(g.atoms.size(), 0);
    for (const auto& r : g.rules)
        for (std::size_t i = 0; i < r.head.size(); ++i)
            for (std::size_t j = i + 1; j < r.head.size(); ++j)
                if (comp[r.head[i]] == comp[r.head[j]]) cyclic_comp[comp[r.head[i]]] = 1;
    g.hcf = std::none_of(cyclic_comp.begin(), cyclic_comp.end(), [](char c) { return c; });
    g.cycle_free.resize(g.atoms.size());
    for (std::size_t a = 0; a < g.atoms.size(); ++a) g.cycle_free[a] = !cyclic_comp[comp[a]];

    for (const auto& r : g.rules)
        for (int h : r.head)
            for (int b : r.neg) adj[h].push_back(static_cast<std::size_t>(b));
    g.level = strongly_connected_components(g.atoms.size(), adj);
    return g;
}

bool is_model(const GProgram& g, const std::vector<char>& in) {
    for (const auto& r : g.rules) {
        bool body = true;
        for (int a : r.pos)
            if (!in[a]) { body = false; break; }
        if (!body) continue;
        for (int a : r.neg)
            if (in[a]) { body = false; break; }
        if (!body) continue;
        bool head = false;
        for (int a : r.head)
            if (in[a]) { head = true; break; }
        if (!head) return false;
    }
    return true;
}

// Literals provable from the empty set by rules whose body holds w.r.t. M and
// whose head meets M in exactly the derived literal.
std::vector<char> proof_closure(const GProgram& g, const std::vector<char>& in) {
    const std::size_t n = g.atoms.size();
    std::vector<char> proven(n, 0);
    std::vector<int> missing(g.rules.size(), -1);
    std::vector<int> target(g.rules.size(), -1);
    std::vector<int> queue;
    for (std::size_t r = 0; r < g.rules.size(); ++r) {
        const auto& rule = g.rules[r];
        bool ok = true;
        for (int a : rule.neg)
            if (in[a]) { ok = false; break; }
        if (!ok) continue;
        int t = -1, cnt = 0;
        for (int a : rule.head)
            if (in[a]) { t = a; ++cnt; }
        if (cnt != 1) continue;
        bool body_in = true;
        for (int a : rule.pos)
            if (!in[a]) { body_in = false; break; }
        if (!body_in) continue;
        target[r] = t;
        missing[r] = static_cast<int>(rule.pos.size());
        if (missing[r] == 0) queue.push_back(t);
    }
    while (!queue.empty()) {
        int a = queue.back();
        queue.pop_back();
        if (proven[a]) continue;
        proven[a] = 1;
        for (int r : g.pos_occ[a])
            if (missing[r] > 0 && --missing[r] == 0) queue.push_back(target[r]);
    }
    return proven;
}

// ---------------------------------------------------------------------------
// Small CDCL engine for the minimality check.
// Literals are 2*v (positive) and 2*v+1 (negative).
// ---------------------------------------------------------------------------

class Sat {
public:
    Sat(int nvars, const Budget* budget)
        : n_(nvars), value_(nvars, 0), level_(nvars, 0), reason_(nvars, -1),
          activity_(nvars, 0.0), seen_(nvars, 0), watches_(2 * nvars),
          heap_pos_(nvars, -1), budget_(budget) {
        for (int v = 0; v < n_; ++v) heap_insert(v);
    }

    void add_clause(std::vector<int> c) {
        if (!ok_) return;
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (std::size_t i = 1; i < c.size(); ++i)
            if ((c[i] ^ 1) == c[i - 1]) return;  // tautology
        if (c.empty()) {
            ok_ = false;
            return;
        }
        if (c.size() == 1) {
            int v = lit_value(c[0]);
            if (v == -1) ok_ = false;
            else if (v == 0) enqueue(c[0], -1);
            return;
        }
        attach(std::move(c));
    }

    bool solve() {
        if (!ok_) return false;
        if (propagate() != -1) return false;
        std::uint64_t conflicts = 0;
        std::uint64_t restart_at = 100;
        for (;;) {
            int confl = propagate();
            if (confl != -1) {
                ++conflicts;
                if ((conflicts & 255u) == 0 && budget_) budget_->check_time();
                if (trail_lim_.empty()) return false;
                std::vector<int> learnt;
                int bt = analyze(confl, learnt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    int ci = attach(learnt);
                    enqueue(learnt[0], ci);
                }
                inc_ *= 1.0 / 0.95;
                if (conflicts >= restart_at) {
                    restart_at += restart_at / 2;
                    cancel_until(0);
                }
            } else {
                int v = pick();
                if (v < 0) return true;
                if (budget_) budget_->on_decision();
                trail_lim_.push_back(static_cast<int>(trail_.size()));
                enqueue(2 * v + 1, -1);  // prefer false: we look for smaller models
            }
        }
    }

private:
    int n_;
    bool ok_ = true;
    std::vector<std::vector<int>> clauses_;
    std::vector<signed char> value_;
    std::vector<int> level_, reason_;
    std::vector<double> activity_;
    std::vector<char> seen_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> trail_, trail_lim_;
    std::size_t qhead_ = 0;
    double inc_ = 1.0;
    std::vector<int> heap_, heap_pos_;
    const Budget* budget_;

    int lit_value(int l) const {
        int v = value_[l >> 1];
        return (l & 1) ? -v : v;
    }

    int attach(std::vector<int> c) {
        int ci = static_cast<int>(clauses_.size());
        watches_[c[0]].push_back(ci);
        watches_[c[1]].push_back(ci);
        clauses_.push_back(std::move(c));
        return ci;
    }

    void enqueue(int l, int reason) {
        int v = l >> 1;
        value_[v] = (l & 1) ? -1 : 1;
        level_[v] = static_cast<int>(trail_lim_.size());
        reason_[v] = reason;
        trail_.push_back(l);
    }

    int propagate() {
        while (qhead_ < trail_.size()) {
            int fl = trail_[qhead_++] ^ 1;  // literal that became false
            auto& ws = watches_[fl];
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                int ci = ws[i++];
                auto& c = clauses_[ci];
                if (c[0] == fl) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    ws[j++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (lit_value(c[k]) != -1) {
                        std::swap(c[1], c[k]);
                        watches_[c[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = ci;
                if (lit_value(c[0]) == -1) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return ci;
                }
                enqueue(c[0], ci);
            }
            ws.resize(j);
        }
        return -1;
    }

    int analyze(int confl, std::vector<int>& learnt) {
        learnt.assign(1, -1);
        const int cur = static_cast<int>(trail_lim_.size());
        int path = 0;
        int p = -1;
        int idx = static_cast<int>(trail_.size()) - 1;
        do {
            const auto& c = clauses_[confl];
            for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
                int q = c[k];
                int v = q >> 1;
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                bump(v);
                if (level_[v] >= cur) ++path;
                else learnt.push_back(q);
            }
            while (!seen_[trail_[idx] >> 1]) --idx;
            p = trail_[idx--];
            confl = reason_[p >> 1];
            seen_[p >> 1] = 0;
            --path;
        } while (path > 0);
        learnt[0] = p ^ 1;
        int bt = 0;
        std::size_t max_i = 1;
        for (std::size_t k = 1; k < learnt.size(); ++k) {
            seen_[learnt[k] >> 1] = 0;
            if (level_[learnt[k] >> 1] > bt) {
                bt = level_[learnt[k] >> 1];
                max_i = k;
            }
        }
        if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
        return bt;
    }

    void cancel_until(int lvl) {
        if (static_cast<int>(trail_lim_.size()) <= lvl) return;
        for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i) {
            int v = trail_[i] >> 1;
            value_[v] = 0;
            reason_[v] = -1;
            if (heap_pos_[v] < 0) heap_insert(v);
        }
        trail_.resize(trail_lim_[lvl]);
        trail_lim_.resize(lvl);
        qhead_ = trail_.size();
    }

    int pick() {
        while (!heap_.empty()) {
            int v = heap_pop();
            if (value_[v] == 0) return v;
        }
        return -1;
    }

    void bump(int v) {
        activity_[v] += inc_;
        if (activity_[v] > 1e100) {
            for (auto& a : activity_) a *= 1e-100;
            inc_ *= 1e-100;
        }
        if (heap_pos_[v] >= 0) sift_up(heap_pos_[v]);
    }

    bool before(int a, int b) const {
        return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
    }
    void heap_insert(int v) {
        heap_pos_[v] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        sift_up(heap_pos_[v]);
    }
    int heap_pop() {
        int top = heap_[0];
        heap_pos_[top] = -1;
        int last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_[0] = last;
            heap_pos_[last] = 0;
            sift_down(0);
        }
        return top;
    }
    void sift_up(int i) {
        int v = heap_[i];
        while (i > 0) {
            int parent = (i - 1) / 2;
            if (!before(v, heap_[parent])) break;
            heap_[i] = heap_[parent];
            heap_pos_[heap_[i]] = i;
            i = parent;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }
    void sift_down(int i) {
        int v = heap_[i];
        const int n = static_cast<int>(heap_.size());
        for (;;) {
            int c = 2 * i + 1;
            if (c >= n) break;
            if (c + 1 < n && before(heap_[c + 1], heap_[c])) ++c;
            if (!before(heap_[c], v)) break;
            heap_[i] = heap_[c];
            heap_pos_[heap_[i]] = i;
            i = c;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }
};

// M (a model of g) is an answer set iff no proper subset of M is a model of g^M.
bool is_minimal(const GProgram& g, const std::vector<char>& in, const Budget* budget) {
    const std::size_t n = g.atoms.size();
    std::vector<char> proven = proof_closure(g, in);
    std::vector<int> var(n, -1);
    int nv = 0;
    for (std::size_t a = 0; a < n; ++a)
        if (in[a] && !proven[a]) var[a] = nv++;
    if (nv == 0) return true;
    if (g.hcf) return false;

    Sat sat(nv, budget);
    std::vector<int> clause;
    for (const auto& r : g.rules) {
        bool skip = false;
        for (int a : r.neg)
            if (in[a]) { skip = true; break; }
        if (skip) continue;
        for (int a : r.pos)
            if (!in[a]) { skip = true; break; }
        if (skip) continue;
        for (int a : r.head)
            if (proven[a]) { skip = true; break; }
        if (skip) continue;
        clause.clear();
        for (int a : r.pos)
            if (var[a] >= 0) clause.push_back(2 * var[a] + 1);
        for (int a : r.head)
            if (var[a] >= 0) clause.push_back(2 * var[a]);
        sat.add_clause(clause);
    }
    clause.clear();
    for (int v = 0; v < nv; ++v) clause.push_back(2 * v + 1);
    sat.add_clause(clause);
    return !sat.solve();
}

// ---------------------------------------------------------------------------
// Model enumeration: DPLL with clause and support propagation.
// ---------------------------------------------------------------------------

enum : signed char { Unassigned = 0, True = 1, False = 2 };
enum Role : unsigned char { HeadRole, PosRole, NegRole };

struct Occ {
    int rule;
    Role role;
};

class Search {
public:
    Search(const GProgram& g, const Budget& budget, SearchStats& stats)
        : g_(g), budget_(budget), stats_(stats) {
        const std::size_t n = g.atoms.size(), m = g.rules.size();
        val_.assign(n, Unassigned);
        occ_.assign(n, {});
        supp_.assign(n, 0);
        n_true_.assign(m, 0);
        n_false_.assign(m, 0);
        blocked_.assign(m, 0);
        head_true_.assign(m, 0);
        size_.assign(m, 0);
        for (std::size_t r = 0; r < m; ++r) {
            const auto& rule = g.rules[r];
            const int ri = static_cast<int>(r);
            for (int a : rule.head) {
                occ_[a].push_back({ri, HeadRole});
                ++supp_[a];
            }
            for (int a : rule.pos) occ_[a].push_back({ri, PosRole});
            for (int a : rule.neg) occ_[a].push_back({ri, NegRole});
            size_[r] = static_cast<int>(rule.head.size() + rule.pos.size() + rule.neg.size());
        }
        in_d_.assign(n, 0);
        missing_.assign(m, 0);
        order_.resize(n);
        for (std::size_t a = 0; a < n; ++a) order_[a] = static_cast<int>(a);
        // decide atoms of lower components first, then by occurrence count
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            if (g_.level[a] != g_.level[b]) return g_.level[a] < g_.level[b];
            return occ_[a].size() > occ_[b].size();
        });
    }

    // Calls on_model for each answer set; stops when it returns false.
    template <class F>
    void run(F&& on_model) {
        if (!initial_propagation()) return;
        for (;;) {
            if (!propagate() || !founded()) {
                if (!backtrack()) return;
                continue;
            }
            if (qhead_ < trail_.size()) continue;
            int a = pick();
            if (a < 0) {
                std::vector<char> in(val_.size());
                for (std::size_t i = 0; i < val_.size(); ++i) in[i] = val_[i] == True;
                ++stats_.stability_checks;
                if (is_minimal(g_, in, &budget_) && !on_model(in)) return;
                if (!backtrack()) return;
                continue;
            }
            budget_.on_decision();
            frames_.push_back({a, false, trail_.size()});
            assign(a, False);
        }
    }

private:
    struct Frame {
        int atom;
        bool flipped;
        std::size_t trail_pos;
    };

    const GProgram& g_;
    const Budget& budget_;
    SearchStats& stats_;
    std::vector<signed char> val_;
    std::vector<std::vector<Occ>> occ_;
    std::vector<int> supp_;
    std::vector<int> n_true_, n_false_, blocked_, head_true_, size_;
    std::vector<int> order_;
    std::vector<char> in_d_;
    std::vector<int> missing_;
    std::vector<int> work_;
    std::vector<int> trail_;
    std::size_t qhead_ = 0;
    std::vector<Frame> frames_;

    bool is_true(int a) const { return val_[a] == True; }

    // sc(r,h) is possible while the body is not blocked and no other head atom is true.
    void lose_support(int r, int except) {
        for (int h : g_.rules[r].head)
            if (h != except && head_true_[r] - (is_true(h) ? 1 : 0) == 0) --supp_[h];
    }
    void regain_support(int r, int except) {
        for (int h : g_.rules[r].head)
            if (h != except && head_true_[r] - (is_true(h) ? 1 : 0) == 0) ++supp_[h];
    }

    void assign(int a, signed char v) {
        val_[a] = v;
        trail_.push_back(a);
        for (const auto& o : occ_[a]) {
            const int r = o.rule;
            if (v == True) {
                switch (o.role) {
                case HeadRole:
                    ++n_true_[r];
                    if (blocked_[r] == 0) lose_support(r, a);
                    ++head_true_[r];
                    break;
                case PosRole:
                    ++n_false_[r];
                    break;
                case NegRole:
                    ++n_true_[r];
                    if (blocked_[r]++ == 0) lose_support(r, -1);
                    break;
                }
            } else {
                switch (o.role) {
                case HeadRole:
                    ++n_false_[r];
                    break;
                case PosRole:
                    ++n_true_[r];
                    if (blocked_[r]++ == 0) lose_support(r, -1);
                    break;
                case NegRole:
                    ++n_false_[r];
                    break;
                }
            }
        }
    }

    void unassign(int a) {
        const signed char v = val_[a];
        const auto& occ = occ_[a];
        for (auto it = occ.rbegin(); it != occ.rend(); ++it) {
            const int r = it->rule;
            if (v == True) {
                switch (it->role) {
                case HeadRole:
                    --n_true_[r];
                    --head_true_[r];
                    if (blocked_[r] == 0) regain_support(r, a);
                    break;
                case PosRole:
                    --n_false_[r];
                    break;
                case NegRole:
                    --n_true_[r];
                    if (--blocked_[r] == 0) regain_support(r, -1);
                    break;
                }
            } else {
                switch (it->role) {
                case HeadRole:
                    --n_false_[r];
                    break;
                case PosRole:
                    --n_true_[r];
                    if (--blocked_[r] == 0) regain_support(r, -1);
                    break;
                case NegRole:
                    --n_false_[r];
                    break;
                }
            }
        }
        val_[a] = Unassigned;
    }

    bool set(int a, signed char v) {
        if (val_[a] == Unassigned) {
            ++stats_.propagations;
            assign(a, v);
            return true;
        }
        return val_[a] == v;
    }

    bool check_clause(int r) {
        if (n_true_[r] > 0) return true;
        if (n_false_[r] == size_[r]) return false;
        if (n_false_[r] != size_[r] - 1) return true;
        const auto& rule = g_.rules[r];
        for (int a : rule.head)
            if (val_[a] == Unassigned) return set(a, True);
        for (int a : rule.pos)
            if (val_[a] == Unassigned) return set(a, False);
        for (int a : rule.neg)
            if (val_[a] == Unassigned) return set(a, True);
        return true;
    }

    bool check_support(int h) {
        if (supp_[h] == 0) {
            if (val_[h] == True) return false;
            if (val_[h] == Unassigned) return set(h, False);
            return true;
        }
        if (supp_[h] != 1 || val_[h] != True) return true;
        for (const auto& o : occ_[h]) {
            if (o.role != HeadRole) continue;
            const int r = o.rule;
            if (blocked_[r] != 0 || head_true_[r] - 1 != 0) continue;
            const auto& rule = g_.rules[r];
            for (int a : rule.pos)
                if (!set(a, True)) return false;
            for (int a : rule.neg)
                if (!set(a, False)) return false;
            for (int a : rule.head)
                if (a != h && !set(a, False)) return false;
            return true;
        }
        return true;
    }

    // Every answer set extending the assignment lies within the least set of atoms
    // derivable by rules that are not blocked. Where the atom's component has no
    // head cycle the rule must also have no other true head atom.
    bool founded() {
        std::fill(in_d_.begin(), in_d_.end(), 0);
        work_.clear();
        auto fire = [&](int r) {
            for (int h : g_.rules[r].head) {
                if (in_d_[h] || val_[h] == False) continue;
                if (g_.cycle_free[h] && head_true_[r] - (is_true(h) ? 1 : 0) != 0) continue;
                in_d_[h] = 1;
                work_.push_back(h);
            }
        };
        for (std::size_t r = 0; r < g_.rules.size(); ++r) {
            if (blocked_[r] != 0 || g_.rules[r].head.empty()) {
                missing_[r] = -1;
                continue;
            }
            missing_[r] = static_cast<int>(g_.rules[r].pos.size());
            if (missing_[r] == 0) fire(static_cast<int>(r));
        }
        while (!work_.empty()) {
            int a = work_.back();
            work_.pop_back();
            for (int r : g_.pos_occ[a])
                if (missing_[r] > 0 && --missing_[r] == 0) fire(r);
        }
        for (std::size_t a = 0; a < val_.size(); ++a) {
            if (in_d_[a]) continue;
            if (val_[a] == True) return false;
            if (val_[a] == Unassigned) set(static_cast<int>(a), False);
        }
        return true;
    }

    bool initial_propagation() {
        for (std::size_t r = 0; r < g_.rules.size(); ++r)
            if (!check_clause(static_cast<int>(r))) return false;
        for (std::size_t a = 0; a < val_.size(); ++a)
            if (!check_support(static_cast<int>(a))) return false;
        return true;
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            const int a = trail_[qhead_++];
            const bool t = val_[a] == True;
            for (const auto& o : occ_[a]) {
                if (!check_clause(o.rule)) return false;
                const bool affects = (t && o.role != PosRole) || (!t && o.role == PosRole);
                if (affects)
                    for (int h : g_.rules[o.rule].head)
                        if (!check_support(h)) return false;
            }
            if (t && !check_support(a)) return false;
        }
        return true;
    }

    void undo_to(std::size_t pos) {
        while (trail_.size() > pos) {
            unassign(trail_.back());
            trail_.pop_back();
        }
        qhead_ = std::min(qhead_, pos);
    }

    bool backtrack() {
        while (!frames_.empty()) {
            Frame& f = frames_.back();
            undo_to(f.trail_pos);
            if (!f.flipped) {
                f.flipped = true;
                assign(f.atom, True);
                qhead_ = f.trail_pos;
                return true;
            }
            frames_.pop_back();
        }
        return false;
    }

    int pick() const {
        for (int a : order_)
            if (val_[a] == Unassigned) return a;
        return -1;
    }
};

LiteralSet to_set(const GProgram& g, const std::vector<char>& in) {
    LiteralSet s;
    for (std::size_t a = 0; a < in.size(); ++a)
        if (in[a]) s.insert(g.atoms[a]);
    return s;
}

}  // namespace

SolveResult solve(const Program& p, const SolveOptions& opts) {
    require_ground(p, "solve");
    const auto start = Clock::now();
    SolveResult res;
    Budget budget;
    budget.timed = opts.budget_ms > 0;
    budget.deadline = start + std::chrono::milliseconds(opts.budget_ms);
    budget.max_decisions = opts.max_decisions;
    budget.stats = &res.stats;
    try {
        GProgram g = compile(p);
        if (!opts.limit || *opts.limit > 0) {
            Search search(g, budget, res.stats);
            search.run([&](const std::vector<char>& in) {
                res.answer_sets.push_back(AnswerSet{to_set(g, in), Producer::Solver});
                return !opts.limit || res.answer_sets.size() < *opts.limit;
            });
        }
    } catch (const BudgetHit&) {
        res.status = SolveStatus::BudgetExceeded;
    }
    sort_answer_sets(res.answer_sets);
    res.stats.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return res;
}

bool is_answer_set(const Program& p, const LiteralSet& s) {
    require_ground(p, "is_answer_set");
    if (!is_consistent(s)) return false;
    GProgram g = compile(p);
    std::vector<char> in(g.atoms.size(), 0);
    for (const auto& l : s) {
        int a = g.find(l);
        if (a < 0) return false;
        in[a] = 1;
    }
    if (!is_model(g, in)) return false;
    return is_minimal(g, in, nullptr);
}

std::vector<AnswerSet> brute_force(const Program& p, std::size_t cap) {
    require_ground(p, "brute_force");
    if (cap > 30) cap = 30;
    std::vector<Literal> lits = literals_of(p);
    if (lits.size() > cap)
        throw PreconditionError("brute_force: " + std::to_string(lits.size()) +
                                " literals exceed the cap of " + std::to_string(cap));
    std::unordered_map<Literal, int, LiteralHash> idx;
    for (std::size_t i = 0; i < lits.size(); ++i) idx.emplace(lits[i], static_cast<int>(i));
    struct MaskRule {
        std::uint32_t head = 0, pos = 0, neg = 0;
    };
    std::vector<MaskRule> rules;
    for (const auto& r : p.rules) {
        MaskRule m;
        for (const auto& l : r.head) m.head |= 1u << idx.at(l);
        for (const auto& l : r.pbody) m.pos |= 1u << idx.at(l);
        for (const auto& l : r.nbody) m.neg |= 1u << idx.at(l);
        rules.push_back(m);
    }
    std::vector<std::uint32_t> clash;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        auto it = idx.find(lits[i].complement());
        if (!lits[i].neg && it != idx.end()) clash.push_back((1u << i) | (1u << it->second));
    }
    // T satisfies the reduct of p w.r.t. S
    auto reduct_model = [&](std::uint32_t t, std::uint32_t s) {
        for (const auto& r : rules) {
            if (r.neg & s) continue;
            if ((r.pos & ~t) == 0 && (r.head & t) == 0) return false;
        }
        return true;
    };
    std::vector<AnswerSet> out;
    const std::uint64_t total = 1ull << lits.size();
    for (std::uint64_t sm = 0; sm < total; ++sm) {
        const auto s = static_cast<std::uint32_t>(sm);
        bool consistent = true;
        for (auto c : clash)
            if ((s & c) == c) { consistent = false; break; }
        if (!consistent || !reduct_model(s, s)) continue;
        bool minimal = true;
        if (s != 0) {
            for (std::uint32_t t = (s - 1) & s;; t = (t - 1) & s) {
                if (reduct_model(t, s)) {
                    minimal = false;
                    break;
                }
                if (t == 0) break;
            }
        }
        if (!minimal) continue;
        AnswerSet a;
        a.producer = Producer::Brute;
        for (std::size_t i = 0; i < lits.size(); ++i)
            if (s & (1u << i)) a.literals.insert(lits[i]);
        out.push_back(std::move(a));
    }
    sort_answer_sets(out);
    return out;
}

bool hcf_check(const Program& p, const LiteralSet& s) {
    require_ground(p, "hcf_check");
    GProgram g = compile(p);
    if (!g.hcf) throw PreconditionError("hcf_check: program is not head-cycle-free");
    if (!is_consistent(s)) return false;
    std::vector<char> in(g.atoms.size(), 0);
    for (const auto& l : s) {
        int a = g.find(l);
        if (a < 0) return false;
        in[a] = 1;
    }
    if (!is_model(g, in)) return false;
    std::vector<char> proven = proof_closure(g, in);
    return proven == in;
}

AnswerSet stratified_eval(const Program& p) {
    require_ground(p, "stratified_eval");
    for (const auto& r : p.rules) {
        if (r.head.empty())
            throw PreconditionError("stratified_eval: constraint " + r.name.str());
        if (r.head.size() > 1)
            throw PreconditionError("stratified_eval: disjunctive rule " + r.name.str());
    }
    std::vector<Literal> atoms = literals_of(p);
    std::unordered_map<Literal, int, LiteralHash> idx;
    for (std::size_t i = 0; i < atoms.size(); ++i) idx.emplace(atoms[i], static_cast<int>(i));
    const std::size_t n = atoms.size();
    struct IRule {
        int head;
        std::vector<int> pos, neg;
    };
    std::vector<IRule> rules;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& r : p.rules) {
        IRule ir{idx.at(r.head[0]), {}, {}};
        for (const auto& l : r.pbody) ir.pos.push_back(idx.at(l));
        for (const auto& l : r.nbody) ir.neg.push_back(idx.at(l));
        for (int b : ir.pos) adj[ir.head].push_back(static_cast<std::size_t>(b));
        for (int b : ir.neg) adj[ir.head].push_back(static_cast<std::size_t>(b));
        rules.push_back(std::move(ir));
    }
    auto comp = strongly_connected_components(n, adj);
    std::size_t ncomp = 0;
    for (auto c : comp) ncomp = std::max(ncomp, c + 1);
    std::vector<std::vector<int>> group(ncomp);
    std::vector<std::vector<int>> pos_occ(n);
    for (std::size_t r = 0; r < rules.size(); ++r) {
        for (int b : rules[r].neg)
            if (comp[b] == comp[rules[r].head])
                throw PreconditionError("stratified_eval: program is not stratified (" +
                                        atoms[rules[r].head].str() + " depends negatively on " +
                                        atoms[b].str() + ")");
        group[comp[rules[r].head]].push_back(static_cast<int>(r));
        for (int b : rules[r].pos) pos_occ[b].push_back(static_cast<int>(r));
    }
    std::vector<char> in(n, 0);
    std::vector<int> missing(rules.size(), -1);
    std::vector<int> queue;
    // Components are numbered sinks first, so dependencies are final when reached.
    for (std::size_t c = 0; c < ncomp; ++c) {
        for (int r : group[c]) {
            bool dead = false;
            for (int b : rules[r].neg)
                if (in[b]) { dead = true; break; }
            if (dead) continue;
            int miss = 0;
            for (int b : rules[r].pos)
                if (!in[b]) ++miss;
            missing[r] = miss;
            if (miss == 0) queue.push_back(rules[r].head);
        }
        while (!queue.empty()) {
            int a = queue.back();
            queue.pop_back();
            if (in[a]) continue;
            in[a] = 1;
            for (int r : pos_occ[a])
                if (comp[rules[r].head] == c && missing[r] > 0 && --missing[r] == 0)
                    queue.push_back(rules[r].head);
        }
    }
    AnswerSet out;
    out.producer = Producer::Stratified;
    for (std::size_t a = 0; a < n; ++a)
        if (in[a]) out.literals.insert(atoms[a]);
    if (!is_consistent(out.literals))
        throw PreconditionError("stratified_eval: the unique model is inconsistent");
    return out;
}

}  // namespace gcmeta
