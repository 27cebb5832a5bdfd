#include "gcmeta/core.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

namespace gcmeta {

ParseError::ParseError(const std::string& msg, SourceSpan span)
    : Error("line " + std::to_string(span.line) + ", column " + std::to_string(span.column) + ": " +
            msg),
      span_(span) {}

// ---------------------------------------------------------------------------
// Symbol table
// ---------------------------------------------------------------------------

namespace {

struct SymbolTable {
    std::mutex mutex;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::deque<std::string> names;  // deque keeps references stable
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

}  // namespace

std::uint32_t intern(std::string_view text) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mutex);
    auto it = t.ids.find(std::string(text));
    if (it != t.ids.end()) return it->second;
    auto id = static_cast<std::uint32_t>(t.names.size());
    t.names.emplace_back(text);
    t.ids.emplace(t.names.back(), id);
    return id;
}

const std::string& symbol_name(std::uint32_t id) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mutex);
    return t.names.at(id);
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

Term Term::symbol(std::string_view name) { return Term{Kind::Symbol, intern(name)}; }
Term Term::string(std::string_view content) { return Term{Kind::String, intern(content)}; }
Term Term::integer(std::int64_t v) { return Term{Kind::Integer, v}; }
Term Term::variable(std::string_view name) { return Term{Kind::Variable, intern(name)}; }

const std::string& Term::text() const {
    if (kind == Kind::Integer) throw PreconditionError("Term::text on an integer");
    return symbol_name(static_cast<std::uint32_t>(value));
}

std::string Term::str() const {
    switch (kind) {
        case Kind::Integer:
            return std::to_string(value);
        case Kind::String: {
            std::string out = "\"";
            for (char c : text()) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += '"';
            return out;
        }
        default:
            return text();
    }
}

int compare_terms(const Term& a, const Term& b) {
    auto rank = [](const Term& t) {
        switch (t.kind) {
            case Term::Kind::Integer:
                return 0;
            case Term::Kind::Variable:
                return 2;
            default:
                return 1;
        }
    };
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra == 0) return a.value < b.value ? -1 : (a.value > b.value ? 1 : 0);
    if (a.kind == b.kind && a.value == b.value) return 0;
    int c = a.text().compare(b.text());
    if (c != 0) return c < 0 ? -1 : 1;
    // equal content: symbol before string
    if (a.kind == b.kind) return 0;
    return a.kind == Term::Kind::Symbol ? -1 : 1;
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
    return std::hash<std::int64_t>()(t.value) * 4 + static_cast<std::size_t>(t.kind);
}

// ---------------------------------------------------------------------------
// Atoms and literals
// ---------------------------------------------------------------------------

Atom::Atom(std::string_view predicate, std::vector<Term> arguments)
    : pred(intern(predicate)), args(std::move(arguments)) {}

bool Atom::is_ground() const noexcept {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::string Atom::str() const {
    std::string out = predicate();
    if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ',';
            out += args[i].str();
        }
        out += ')';
    }
    return out;
}

std::size_t AtomHash::operator()(const Atom& a) const noexcept {
    std::size_t h = std::hash<std::uint32_t>()(a.pred);
    TermHash th;
    for (const auto& t : a.args) h = h * 1000003u ^ th(t);
    return h;
}

std::string Literal::str() const { return neg ? "-" + atom.str() : atom.str(); }

int compare_literals(const Literal& a, const Literal& b) {
    if (a == b) return 0;
    int c = a.str().compare(b.str());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::size_t LiteralHash::operator()(const Literal& l) const noexcept {
    return AtomHash()(l.atom) * 2 + (l.neg ? 1 : 0);
}

bool is_consistent(const LiteralSet& s) {
    for (const auto& l : s)
        if (!l.neg && s.count(l.complement())) return false;
    return true;
}

const char* producer_name(Producer p) {
    switch (p) {
        case Producer::Solver:
            return "solver";
        case Producer::Brute:
            return "brute";
        case Producer::HcfOracle:
            return "hcf-oracle";
        case Producer::Stratified:
            return "stratified";
    }
    return "?";
}

std::string to_string(const LiteralSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : s) {
        if (!first) out += ", ";
        first = false;
        out += l.str();
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Built-ins
// ---------------------------------------------------------------------------

const char* cmp_op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt:
            return "<";
        case CmpOp::Le:
            return "<=";
        case CmpOp::Gt:
            return ">";
        case CmpOp::Ge:
            return ">=";
        case CmpOp::Eq:
            return "=";
        case CmpOp::Neq:
            return "!=";
    }
    return "?";
}

std::string Expr::str() const {
    if (op == 0) return base.str();
    return base.str() + op + offset.str();
}

std::string Builtin::str() const { return lhs.str() + cmp_op_text(op) + rhs.str(); }

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

RuleKind Rule::kind() const noexcept {
    if (head.empty()) return RuleKind::Constraint;
    if (head.size() == 1 && pbody.empty() && nbody.empty() && builtins.empty()) return RuleKind::Fact;
    return RuleKind::Rule;
}

bool Rule::is_ground() const noexcept {
    auto ground = [](const std::vector<Literal>& ls) {
        return std::all_of(ls.begin(), ls.end(), [](const Literal& l) { return l.is_ground(); });
    };
    if (!ground(head) || !ground(pbody) || !ground(nbody)) return false;
    for (const auto& b : builtins) {
        for (const Expr* e : {&b.lhs, &b.rhs}) {
            if (e->base.is_variable()) return false;
            if (e->op && e->offset.is_variable()) return false;
        }
    }
    return true;
}

namespace {

void dedupe(std::vector<Literal>& ls) {
    std::vector<Literal> out;
    for (auto& l : ls)
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
    ls = std::move(out);
}

bool same_set(const std::vector<Literal>& a, const std::vector<Literal>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& l : a)
        if (std::find(b.begin(), b.end(), l) == b.end()) return false;
    return true;
}

}  // namespace

void Rule::normalize() {
    dedupe(head);
    dedupe(pbody);
    dedupe(nbody);
}

bool Rule::same_body_and_head(const Rule& o) const {
    if (!same_set(head, o.head) || !same_set(pbody, o.pbody) || !same_set(nbody, o.nbody))
        return false;
    if (builtins.size() != o.builtins.size()) return false;
    for (const auto& b : builtins)
        if (std::find(o.builtins.begin(), o.builtins.end(), b) == o.builtins.end()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

Flags Program::flags() const { return classify(*this); }

void Program::add(Rule r) {
    if (!r.named) {
        std::set<std::string> used;
        for (const auto& q : rules)
            if (!q.name.is_integer()) used.insert(q.name.text());
        std::size_t k = rules.size() + 1;
        while (used.count("r" + std::to_string(k))) ++k;
        r.name = Term::symbol("r" + std::to_string(k));
    }
    rules.push_back(std::move(r));
}

void Program::append(const Program& other) {
    rules.insert(rules.end(), other.rules.begin(), other.rules.end());
}

void Program::assign_names(const std::string& prefix) {
    std::set<Term, TermLess> used;
    for (const auto& r : rules)
        if (r.named) used.insert(r.name);
    std::size_t k = 0;
    for (auto& r : rules) {
        if (r.named) continue;
        Term candidate;
        do {
            ++k;
            candidate = prefix.empty() ? Term::integer(static_cast<std::int64_t>(k))
                                       : Term::symbol(prefix + std::to_string(k));
        } while (used.count(candidate));
        r.name = candidate;
        used.insert(candidate);
    }
}

void Program::check_unique_names() const {
    std::set<Term, TermLess> seen;
    for (const auto& r : rules)
        if (!seen.insert(r.name).second)
            throw PreconditionError("duplicate rule name " + r.name.str());
}

std::vector<Literal> literals_of(const Program& p) {
    LiteralSet s;
    for (const auto& r : p.rules) {
        s.insert(r.head.begin(), r.head.end());
        s.insert(r.pbody.begin(), r.pbody.end());
        s.insert(r.nbody.begin(), r.nbody.end());
    }
    return {s.begin(), s.end()};
}

LiteralSet head_literals(const Program& p) {
    LiteralSet s;
    for (const auto& r : p.rules) s.insert(r.head.begin(), r.head.end());
    return s;
}

std::set<std::uint32_t> predicates_of(const Program& p) {
    std::set<std::uint32_t> s;
    for (const auto& r : p.rules)
        for (const auto* part : {&r.head, &r.pbody, &r.nbody})
            for (const auto& l : *part) s.insert(l.atom.pred);
    return s;
}

std::set<std::uint32_t> head_predicates(const Program& p) {
    std::set<std::uint32_t> s;
    for (const auto& r : p.rules)
        for (const auto& l : r.head) s.insert(l.atom.pred);
    return s;
}

// ---------------------------------------------------------------------------
// Satisfaction and reduct
// ---------------------------------------------------------------------------

bool satisfies(const Rule& r, const LiteralSet& s) {
    for (const auto& l : r.pbody)
        if (!s.count(l)) return true;
    for (const auto& l : r.nbody)
        if (s.count(l)) return true;
    for (const auto& l : r.head)
        if (s.count(l)) return true;
    return false;
}

bool satisfies(const Program& p, const LiteralSet& s) {
    return std::all_of(p.rules.begin(), p.rules.end(),
                       [&](const Rule& r) { return satisfies(r, s); });
}

Program reduct(const Program& p, const LiteralSet& s) {
    Program out;
    for (const auto& r : p.rules) {
        if (!r.is_ground()) throw PreconditionError("reduct of a non-ground rule " + r.name.str());
        if (std::any_of(r.nbody.begin(), r.nbody.end(),
                        [&](const Literal& l) { return s.count(l) > 0; }))
            continue;
        Rule q = r;
        q.nbody.clear();
        out.rules.push_back(std::move(q));
    }
    return out;
}

std::vector<Literal> splitting_violations(const Program& guess, const Program& check) {
    LiteralSet in_guess;
    for (const auto& l : literals_of(guess)) in_guess.insert(l);
    LiteralSet out;
    for (const auto& l : head_literals(check))
        if (in_guess.count(l)) out.insert(l);
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Dependency graphs
// ---------------------------------------------------------------------------

std::optional<std::size_t> DependencyGraph::index_of(const Literal& l) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), l);
    if (it == nodes.end() || *it != l) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
}

bool DependencyGraph::has_positive_edge(const Literal& from, const Literal& to) const {
    auto a = index_of(from), b = index_of(to);
    if (!a || !b) return false;
    return std::find(positive.begin(), positive.end(), std::make_pair(*a, *b)) != positive.end();
}

namespace {

DependencyGraph build_graph(const Program& p, bool with_negative) {
    DependencyGraph g;
    g.nodes = literals_of(p);
    std::set<std::pair<std::size_t, std::size_t>> pos, neg, dis;
    for (const auto& r : p.rules) {
        for (const auto& h : r.head) {
            auto hi = *g.index_of(h);
            for (const auto& b : r.pbody) pos.emplace(hi, *g.index_of(b));
            if (!with_negative) continue;
            for (const auto& b : r.nbody) neg.emplace(hi, *g.index_of(b));
            for (const auto& h2 : r.head)
                if (h2 != h) dis.emplace(hi, *g.index_of(h2));
        }
    }
    g.positive.assign(pos.begin(), pos.end());
    g.negative.assign(neg.begin(), neg.end());
    g.disjunctive.assign(dis.begin(), dis.end());
    return g;
}

}  // namespace

DependencyGraph positive_dependency_graph(const Program& p) { return build_graph(p, false); }
DependencyGraph dependency_graph(const Program& p) { return build_graph(p, true); }

std::vector<std::size_t> strongly_connected_components(
    std::size_t n, const std::vector<std::vector<std::size_t>>& adj) {
    // iterative Tarjan
    const std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0, ncomp = 0;
    std::vector<std::pair<std::size_t, std::size_t>> call;  // node, next edge
    for (std::size_t s = 0; s < n; ++s) {
        if (index[s] != unvisited) continue;
        call.emplace_back(s, 0);
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei == 0 && index[v] == unvisited) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (ei < adj[v].size()) {
                std::size_t w = adj[v][ei++];
                if (index[w] == unvisited) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            std::size_t done = v;
            call.pop_back();
            if (!call.empty()) {
                auto parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return comp;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

// Ground programs are analysed per literal, others per (sign, predicate).
struct NodeIndex {
    bool ground;
    std::map<std::string, std::size_t> ids;

    std::size_t of(const Literal& l) {
        std::string key = ground ? l.str() : (l.neg ? "-" : "") + l.atom.predicate();
        auto [it, inserted] = ids.emplace(key, ids.size());
        return it->second;
    }
};

}  // namespace

Flags classify(const Program& p) {
    Flags f;
    for (const auto& r : p.rules) {
        if (!r.is_ground()) f.ground = false;
        if (!r.nbody.empty()) f.positive = false;
        if (r.head.size() > 1) f.normal = false;
    }
    NodeIndex idx{f.ground, {}};
    for (const auto& r : p.rules)
        for (const auto* part : {&r.head, &r.pbody, &r.nbody})
            for (const auto& l : *part) idx.of(l);
    std::size_t n = idx.ids.size();

    std::vector<std::vector<std::size_t>> pos_adj(n), all_adj(n);
    std::vector<std::pair<std::size_t, std::size_t>> neg_edges;
    for (const auto& r : p.rules) {
        for (const auto& h : r.head) {
            auto hi = idx.of(h);
            for (const auto& b : r.pbody) {
                pos_adj[hi].push_back(idx.of(b));
                all_adj[hi].push_back(idx.of(b));
            }
            for (const auto& b : r.nbody) {
                all_adj[hi].push_back(idx.of(b));
                neg_edges.emplace_back(hi, idx.of(b));
            }
            for (const auto& h2 : r.head)
                if (h2 != h) all_adj[hi].push_back(idx.of(h2));
        }
    }

    auto pos_comp = strongly_connected_components(n, pos_adj);
    for (const auto& r : p.rules) {
        for (std::size_t i = 0; i < r.head.size() && f.hcf; ++i)
            for (std::size_t j = i + 1; j < r.head.size(); ++j) {
                auto a = idx.of(r.head[i]), b = idx.of(r.head[j]);
                if (a != b && pos_comp[a] == pos_comp[b]) {
                    f.hcf = false;
                    break;
                }
            }
    }

    auto all_comp = strongly_connected_components(n, all_adj);
    for (auto [a, b] : neg_edges)
        if (all_comp[a] == all_comp[b]) f.stratified = false;
    return f;
}

}  // namespace gcmeta
