#include "gcmeta/textio.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace gcmeta {

namespace {

enum class Tok {
    Ident,     // lowercase identifier
    Var,       // uppercase or '_' identifier
    Int,
    String,
    LParen,
    RParen,
    Comma,
    Dot,
    If,        // :-
    Colon,
    Minus,
    Plus,
    Bar,
    Cmp,
    End
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            SourceSpan sp = here();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", sp});
                return out;
            }
            char c = src_[pos_];
            auto single = [&](Tok k) {
                advance();
                sp.end = pos_;
                out.push_back({k, std::string(1, c), sp});
            };
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t b = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                        src_[pos_] == '\''))
                    advance();
                sp.end = pos_;
                std::string word(src_.substr(b, pos_ - b));
                bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
                out.push_back({var ? Tok::Var : Tok::Ident, word, sp});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t b = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    advance();
                sp.end = pos_;
                out.push_back({Tok::Int, std::string(src_.substr(b, pos_ - b)), sp});
            } else if (c == '"') {
                advance();
                std::string content;
                for (;;) {
                    if (pos_ >= src_.size()) throw ParseError("unterminated string", sp);
                    char d = src_[pos_];
                    if (d == '\\' && pos_ + 1 < src_.size()) {
                        advance();
                        content += src_[pos_];
                        advance();
                        continue;
                    }
                    if (d == '"') {
                        advance();
                        break;
                    }
                    if (d == '\n') throw ParseError("newline in string", sp);
                    content += d;
                    advance();
                }
                sp.end = pos_;
                out.push_back({Tok::String, content, sp});
            } else if (c == ':') {
                advance();
                if (pos_ < src_.size() && src_[pos_] == '-') {
                    advance();
                    sp.end = pos_;
                    out.push_back({Tok::If, ":-", sp});
                } else {
                    sp.end = pos_;
                    out.push_back({Tok::Colon, ":", sp});
                }
            } else if (c == '<' || c == '>' || c == '=' || c == '!') {
                advance();
                std::string op(1, c);
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    op += '=';
                    advance();
                } else if (c == '<' && pos_ < src_.size() && src_[pos_] == '>') {
                    op = "!=";
                    advance();
                }
                if (op == "!") throw ParseError("unexpected '!'", sp);
                if (op == "==") op = "=";
                sp.end = pos_;
                out.push_back({Tok::Cmp, op, sp});
            } else if (c == '(') {
                single(Tok::LParen);
            } else if (c == ')') {
                single(Tok::RParen);
            } else if (c == ',') {
                single(Tok::Comma);
            } else if (c == '.') {
                single(Tok::Dot);
            } else if (c == '-') {
                single(Tok::Minus);
            } else if (c == '+') {
                single(Tok::Plus);
            } else if (c == '|') {
                single(Tok::Bar);
            } else {
                sp.end = pos_ + 1;
                throw ParseError(std::string("unexpected character '") + c + "'", sp);
            }
        }
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    SourceSpan here() const { return {pos_, pos_, line_, col_}; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program run() {
        Program p;
        std::map<std::string, SourceSpan> explicit_names;
        while (peek().kind != Tok::End) {
            Rule r = rule();
            if (r.named) {
                auto key = r.name.str();
                if (explicit_names.count(key))
                    throw ParseError("duplicate rule name " + key, r.span);
                explicit_names.emplace(key, r.span);
            }
            p.rules.push_back(std::move(r));
        }
        p.assign_names("r");
        check_arities(p);
        return p;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    int anon_ = 0;

    const Token& peek(std::size_t k = 0) const {
        return toks_[std::min(i_ + k, toks_.size() - 1)];
    }
    const Token& next() { return toks_[std::min(i_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        throw ParseError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"),
                         t.span);
    }

    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        return next();
    }

    bool is_not_keyword() const { return peek().kind == Tok::Ident && peek().text == "not"; }

    Rule rule() {
        Rule r;
        SourceSpan start = peek().span;
        if ((peek().kind == Tok::Ident || peek().kind == Tok::Int) && peek(1).kind == Tok::Colon) {
            const Token& n = next();
            r.name = n.kind == Tok::Int ? Term::integer(std::stoll(n.text)) : Term::symbol(n.text);
            r.named = true;
            next();  // ':'
        }
        if (peek().kind != Tok::If) {
            r.head.push_back(literal());
            while ((peek().kind == Tok::Ident && peek().text == "v") || peek().kind == Tok::Bar) {
                next();
                r.head.push_back(literal());
            }
        }
        if (peek().kind == Tok::If) {
            next();
            body(r);
            if (r.pbody.empty() && r.nbody.empty() && r.builtins.empty())
                fail("empty rule body");
        } else if (r.head.empty()) {
            fail("expected a rule");
        }
        const Token& dot = expect(Tok::Dot, "'.'");
        r.span = start;
        r.span.end = dot.span.end;
        r.normalize();
        return r;
    }

    void body(Rule& r) {
        if (peek().kind == Tok::Dot) return;
        for (;;) {
            element(r);
            if (peek().kind != Tok::Comma) break;
            next();
        }
    }

    void element(Rule& r) {
        if (is_not_keyword() &&
            (peek(1).kind == Tok::Ident || peek(1).kind == Tok::Minus)) {
            next();
            r.nbody.push_back(literal());
            return;
        }
        // not(c) reads as default negation of c
        if (is_not_keyword() && peek(1).kind == Tok::LParen) {
            next();
            next();
            r.nbody.push_back(literal());
            expect(Tok::RParen, "')'");
            return;
        }
        // built-in: term op expr
        bool starts_term = peek().kind == Tok::Var || peek().kind == Tok::Int ||
                           peek().kind == Tok::String ||
                           (peek().kind == Tok::Ident && peek(1).kind == Tok::Cmp);
        if (starts_term) {
            Builtin b;
            b.lhs = expr();
            const Token& op = expect(Tok::Cmp, "comparison operator");
            b.op = op.text == "<"    ? CmpOp::Lt
                   : op.text == "<=" ? CmpOp::Le
                   : op.text == ">"  ? CmpOp::Gt
                   : op.text == ">=" ? CmpOp::Ge
                   : op.text == "="  ? CmpOp::Eq
                                     : CmpOp::Neq;
            b.rhs = expr();
            r.builtins.push_back(b);
            return;
        }
        r.pbody.push_back(literal());
    }

    Expr expr() {
        Expr e;
        e.base = term();
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            e.op = next().text[0];
            e.offset = term();
        }
        return e;
    }

    Term term() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Var:
                next();
                if (t.text == "_") return Term::variable("_Anon" + std::to_string(++anon_));
                return Term::variable(t.text);
            case Tok::Int:
                next();
                return Term::integer(std::stoll(t.text));
            case Tok::String:
                next();
                return Term::string(t.text);
            case Tok::Ident:
                if (peek(1).kind == Tok::LParen) fail("function terms are not supported");
                next();
                return Term::symbol(t.text);
            case Tok::Minus:
                if (peek(1).kind == Tok::Int) {
                    next();
                    return Term::integer(-std::stoll(next().text));
                }
                fail("expected a term");
            default:
                fail("expected a term");
        }
    }

    Literal literal() {
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            next();
            neg = true;
        }
        if (peek().kind != Tok::Ident) fail("expected a predicate name");
        std::string pred = next().text;
        std::vector<Term> args;
        if (peek().kind == Tok::LParen) {
            next();
            args.push_back(term());
            while (peek().kind == Tok::Comma) {
                next();
                args.push_back(term());
            }
            expect(Tok::RParen, "')'");
        }
        return Literal(Atom(pred, std::move(args)), neg);
    }

    static void check_arities(const Program& p) {
        std::map<std::uint32_t, std::size_t> arity;
        for (const auto& r : p.rules)
            for (const auto* part : {&r.head, &r.pbody, &r.nbody})
                for (const auto& l : *part) {
                    auto [it, fresh] = arity.emplace(l.atom.pred, l.atom.arity());
                    if (!fresh && it->second != l.atom.arity())
                        throw ParseError("predicate " + l.atom.predicate() + " used with arity " +
                                             std::to_string(it->second) + " and " +
                                             std::to_string(l.atom.arity()),
                                         r.span);
                }
    }
};

}  // namespace

Program parse(std::string_view text) {
    Lexer lx(text);
    Parser ps(lx.run());
    return ps.run();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Program parse_file(const std::string& path) { return parse(read_file(path)); }

Literal Literal::from_string(std::string_view text) {
    Program p = parse(std::string(text) + ".");
    if (p.rules.size() != 1 || p.rules[0].head.size() != 1 || p.rules[0].kind() != RuleKind::Fact)
        throw PreconditionError("not a literal: " + std::string(text));
    return p.rules[0].head[0];
}

std::string print_rule(const Rule& r) {
    std::string out;
    if (r.named) out += r.name.str() + ": ";
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i) out += " v ";
        out += r.head[i].str();
    }
    std::vector<std::string> body;
    for (const auto& l : r.pbody) body.push_back(l.str());
    for (const auto& l : r.nbody) body.push_back("not " + l.str());
    for (const auto& b : r.builtins) body.push_back(b.str());
    if (!body.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) out += ", ";
            out += body[i];
        }
    }
    return out + ".";
}

std::string print(const Program& p) {
    std::string out;
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        if (i) out += '\n';
        out += print_rule(p.rules[i]);
    }
    return out;
}

std::string print_answer_sets(const std::vector<AnswerSet>& sets, AnswerSetFormat format) {
    if (format == AnswerSetFormat::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : sets) {
            nlohmann::json one = nlohmann::json::array();
            for (const auto& l : s.literals) one.push_back(l.str());
            arr.push_back(std::move(one));
        }
        return arr.dump();
    }
    std::string out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i) out += '\n';
        out += to_string(sets[i].literals);
    }
    return out;
}

}  // namespace gcmeta
