#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gcmeta {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 0;
    int column = 0;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, SourceSpan span);
    const SourceSpan& span() const noexcept { return span_; }

private:
    SourceSpan span_;
};

/// Raised when an operation's input violates its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Terms, atoms, literals
// ---------------------------------------------------------------------------

/// Interned identifier; ids are process-wide and stable for the process lifetime.
std::uint32_t intern(std::string_view text);
const std::string& symbol_name(std::uint32_t id);

struct Term {
    enum class Kind : std::uint8_t { Symbol, String, Integer, Variable };

    Kind kind = Kind::Symbol;
    std::int64_t value = 0;  // integer value, or interned id for the other kinds

    static Term symbol(std::string_view name);
    static Term string(std::string_view content);
    static Term integer(std::int64_t v);
    static Term variable(std::string_view name);

    bool is_variable() const noexcept { return kind == Kind::Variable; }
    bool is_constant() const noexcept { return kind != Kind::Variable; }
    bool is_integer() const noexcept { return kind == Kind::Integer; }

    /// Name of a symbol/variable, content of a string. Not valid for integers.
    const std::string& text() const;
    /// Printed form: strings are quoted and escaped.
    std::string str() const;

    friend bool operator==(const Term& a, const Term& b) noexcept {
        return a.kind == b.kind && a.value == b.value;
    }
    friend bool operator!=(const Term& a, const Term& b) noexcept { return !(a == b); }
};

/// Canonical constant order: integers numerically, then symbols and strings by content
/// (a symbol precedes a string with equal content), then variables by name.
int compare_terms(const Term& a, const Term& b);

struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return compare_terms(a, b) < 0; }
};

struct Atom {
    std::uint32_t pred = 0;
    std::vector<Term> args;

    Atom() = default;
    Atom(std::string_view predicate, std::vector<Term> arguments = {});

    const std::string& predicate() const { return symbol_name(pred); }
    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const noexcept;
    std::string str() const;

    friend bool operator==(const Atom& a, const Atom& b) noexcept {
        return a.pred == b.pred && a.args == b.args;
    }
    friend bool operator!=(const Atom& a, const Atom& b) noexcept { return !(a == b); }
};

struct Literal {
    Atom atom;
    bool neg = false;  // strong negation

    Literal() = default;
    Literal(Atom a, bool strongly_negated = false) : atom(std::move(a)), neg(strongly_negated) {}

    /// Parses a printed ground literal such as "-armed(1)" or "p(a,\"x\")".
    static Literal from_string(std::string_view text);

    Literal complement() const { return Literal(atom, !neg); }
    bool is_ground() const noexcept { return atom.is_ground(); }
    std::string str() const;

    friend bool operator==(const Literal& a, const Literal& b) noexcept {
        return a.neg == b.neg && a.atom == b.atom;
    }
    friend bool operator!=(const Literal& a, const Literal& b) noexcept { return !(a == b); }
};

/// Canonical literal order: byte-lexicographic on the printed form.
int compare_literals(const Literal& a, const Literal& b);

inline bool operator<(const Literal& a, const Literal& b) { return compare_literals(a, b) < 0; }

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept;
};
struct AtomHash {
    std::size_t operator()(const Atom& a) const noexcept;
};
struct LiteralHash {
    std::size_t operator()(const Literal& l) const noexcept;
};

using LiteralSet = std::set<Literal>;

bool is_consistent(const LiteralSet& s);
std::string to_string(const LiteralSet& s);

enum class Producer : std::uint8_t { Solver, Brute, HcfOracle, Stratified };

const char* producer_name(Producer p);

/// A consistent literal set together with the procedure that produced it.
struct AnswerSet {
    LiteralSet literals;
    Producer producer = Producer::Solver;

    bool contains(const Literal& l) const { return literals.count(l) > 0; }
    friend bool operator==(const AnswerSet& a, const AnswerSet& b) {
        return a.literals == b.literals;
    }
};

// ---------------------------------------------------------------------------
// Built-in body members
// ---------------------------------------------------------------------------

enum class CmpOp : std::uint8_t { Lt, Le, Gt, Ge, Eq, Neq };

/// `base` or `base + offset` / `base - offset`.
struct Expr {
    Term base;
    char op = 0;  // 0, '+' or '-'
    Term offset;

    std::string str() const;
    friend bool operator==(const Expr& a, const Expr& b) noexcept {
        return a.base == b.base && a.op == b.op && (a.op == 0 || a.offset == b.offset);
    }
};

struct Builtin {
    CmpOp op = CmpOp::Eq;
    Expr lhs;
    Expr rhs;

    std::string str() const;
    friend bool operator==(const Builtin& a, const Builtin& b) noexcept {
        return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
    }
};

const char* cmp_op_text(CmpOp op);

// ---------------------------------------------------------------------------
// Rules and programs
// ---------------------------------------------------------------------------

enum class RuleKind : std::uint8_t { Fact, Constraint, Rule };

struct Rule {
    Term name;           // symbol or integer
    bool named = false;  // true when the name was written in the source
    std::vector<Literal> head;
    std::vector<Literal> pbody;
    std::vector<Literal> nbody;
    std::vector<Builtin> builtins;
    SourceSpan span;

    RuleKind kind() const noexcept;
    bool is_ground() const noexcept;
    bool is_disjunctive() const noexcept { return head.size() > 1; }

    /// Removes duplicate literals from head and bodies, keeping first occurrences.
    void normalize();
    /// Same head/pbody/nbody/builtins as sets.
    bool same_body_and_head(const Rule& other) const;
};

struct Flags {
    bool ground = true;
    bool positive = true;
    bool normal = true;
    bool hcf = true;
    bool stratified = true;
};

struct Program {
    std::vector<Rule> rules;

    Program() = default;
    explicit Program(std::vector<Rule> rs) : rules(std::move(rs)) {}

    bool empty() const noexcept { return rules.empty(); }
    std::size_t size() const noexcept { return rules.size(); }

    /// Classification is recomputed on demand, so it always agrees with `rules`.
    Flags flags() const;

    /// Appends a rule; unnamed rules receive the next free `r<k>` name.
    void add(Rule r);
    /// Appends all rules of `other`, renaming nothing.
    void append(const Program& other);
    /// Assigns `r<k>` names to unnamed rules and makes names unique.
    void assign_names(const std::string& prefix = "r");
    /// Throws PreconditionError on duplicate names.
    void check_unique_names() const;
};

Flags classify(const Program& p);

/// All literals occurring in p, canonically ordered.
std::vector<Literal> literals_of(const Program& p);
/// Literals occurring in some rule head.
LiteralSet head_literals(const Program& p);
/// Predicate names (interned ids) occurring anywhere / in heads.
std::set<std::uint32_t> predicates_of(const Program& p);
std::set<std::uint32_t> head_predicates(const Program& p);

Program reduct(const Program& p, const LiteralSet& s);

std::vector<Literal> splitting_violations(const Program& guess, const Program& check);

bool satisfies(const Rule& r, const LiteralSet& s);
bool satisfies(const Program& p, const LiteralSet& s);

// ---------------------------------------------------------------------------
// Dependency graphs
// ---------------------------------------------------------------------------

struct DependencyGraph {
    std::vector<Literal> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> positive;
    std::vector<std::pair<std::size_t, std::size_t>> negative;
    std::vector<std::pair<std::size_t, std::size_t>> disjunctive;

    std::optional<std::size_t> index_of(const Literal& l) const;
    bool has_positive_edge(const Literal& from, const Literal& to) const;
};

DependencyGraph positive_dependency_graph(const Program& p);
DependencyGraph dependency_graph(const Program& p);

/// Tarjan SCC; returns the component id of every node. Components are numbered
/// in reverse topological order (a component's successors get smaller ids).
std::vector<std::size_t> strongly_connected_components(
    std::size_t n, const std::vector<std::vector<std::size_t>>& adj);

}  // namespace gcmeta
