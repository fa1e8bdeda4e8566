// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "illum/illparse.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace illum {

namespace {

struct Token {
    enum class Kind { Ident, Num, Part, Hex, Punct, Eof };
    Kind kind = Kind::Eof;
    std::string text;
    i64 num = 0;
    int line = 1;
};

const std::set<std::string> kReserved = {
    "clause", "if",  "then",     "else", "not",  "and",      "or",  "true",
    "false",  "Null", "map",     "call", "withdraw", "auth", "after",
    "afterRel", "int", "part",   "H",
};

struct Lexer {
    const std::string& src;
    size_t pos = 0;
    int line = 1;

    explicit Lexer(const std::string& s) : src(s) {}

    void skip() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '\n') {
                ++line;
                ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
                while (pos < src.size() && src[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    Res<Token> next() {
        skip();
        Token t;
        t.line = line;
        if (pos >= src.size()) return t;
        char c = src[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            t.kind = Token::Kind::Ident;
            t.text = src.substr(start, pos - start);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (c == '0' && pos + 1 < src.size() && src[pos + 1] == 'x') {
                size_t start = pos + 2;
                pos = start;
                while (pos < src.size() &&
                       std::isxdigit(static_cast<unsigned char>(src[pos])))
                    ++pos;
                t.kind = Token::Kind::Hex;
                t.text = src.substr(start, pos - start);
                return t;
            }
            size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            t.kind = Token::Kind::Num;
            t.text = src.substr(start, pos - start);
            try {
                t.num = std::stoll(t.text);
            } catch (const std::exception&) {
                return Error{"ParseError",
                             "line " + std::to_string(line) + ": integer literal out of range"};
            }
            return t;
        }
        if (c == '@') {
            ++pos;
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            if (pos == start)
                return Error{"ParseError",
                             "line " + std::to_string(line) + ": expected a name after @"};
            t.kind = Token::Kind::Part;
            t.text = src.substr(start, pos - start);
            return t;
        }
        auto two = [&](const char* s) {
            if (pos + 1 < src.size() && src[pos] == s[0] && src[pos + 1] == s[1]) {
                t.kind = Token::Kind::Punct;
                t.text = s;
                pos += 2;
                return true;
            }
            return false;
        };
        if (two("->") || two(">=") || two("<=") || two("!=")) return t;
        static const std::string kSingles = "(){}[],;:.+-=<>?|*";
        if (kSingles.find(c) != std::string::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            ++pos;
            return t;
        }
        return Error{"ParseError", "line " + std::to_string(line) + ": unexpected character '" +
                                       std::string(1, c) + "'"};
    }
};

Res<std::vector<Token>> tokenize(const std::string& src) {
    Lexer lex(src);
    std::vector<Token> out;
    for (;;) {
        auto t = lex.next();
        if (!t) return t.err();
        bool eof = t->kind == Token::Kind::Eof;
        out.push_back(t.take());
        if (eof) return out;
    }
}

struct Parser {
    std::vector<Token> toks;
    size_t pos = 0;

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos + ahead;
        return i < toks.size() ? toks[i] : toks.back();
    }

    bool at_punct(const std::string& p, size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == p;
    }

    bool at_word(const std::string& w, size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::Ident && peek(ahead).text == w;
    }

    Error fail(const std::string& msg) const {
        return Error{"ParseError", "line " + std::to_string(peek().line) + ": " + msg};
    }

    Res<Unit> expect_punct(const std::string& p) {
        if (!at_punct(p)) return fail("expected '" + p + "'");
        ++pos;
        return Unit{};
    }

    Res<Unit> expect_word(const std::string& w) {
        if (!at_word(w)) return fail("expected '" + w + "'");
        ++pos;
        return Unit{};
    }

    Res<std::string> expect_name() {
        if (peek().kind != Token::Kind::Ident) return fail("expected a name");
        if (kReserved.count(peek().text))
            return fail("'" + peek().text + "' is a reserved word");
        return toks[pos++].text;
    }

    // ---- Expressions --------------------------------------------------

    Res<ExprPtr> parse_expr() {
        if (at_word("if")) return parse_if();
        return parse_or();
    }

    Res<ExprPtr> parse_if() {
        if (auto s = expect_word("if"); !s) return s.err();
        auto c = parse_or();
        if (!c) return c;
        if (auto s = expect_word("then"); !s) return s.err();
        auto a = parse_or();
        if (!a) return a;
        if (auto s = expect_word("else"); !s) return s.err();
        auto b = at_word("if") ? parse_if() : parse_or();
        if (!b) return b;
        return Expr::cond(c.take(), a.take(), b.take());
    }

    Res<ExprPtr> parse_or() {
        auto e = parse_and();
        if (!e) return e;
        while (at_word("or")) {
            ++pos;
            auto rhs = parse_and();
            if (!rhs) return rhs;
            e = Expr::disj(e.take(), rhs.take());
        }
        return e;
    }

    Res<ExprPtr> parse_and() {
        auto e = parse_not();
        if (!e) return e;
        while (at_word("and")) {
            ++pos;
            auto rhs = parse_not();
            if (!rhs) return rhs;
            e = Expr::conj(e.take(), rhs.take());
        }
        return e;
    }

    Res<ExprPtr> parse_not() {
        if (at_word("not")) {
            ++pos;
            auto e = parse_not();
            if (!e) return e;
            return Expr::negate(e.take());
        }
        return parse_cmp();
    }

    Res<ExprPtr> parse_cmp() {
        auto lhs = parse_add();
        if (!lhs) return lhs;
        if (peek().kind != Token::Kind::Punct) return lhs;
        const std::string& op = peek().text;
        if (op != "=" && op != "<" && op != ">" && op != ">=" && op != "<=" && op != "!=")
            return lhs;
        ++pos;
        auto rhs = parse_add();
        if (!rhs) return rhs;
        ExprPtr a = lhs.take(), b = rhs.take();
        if (op == "=") return Expr::eq(std::move(a), std::move(b));
        if (op == "<") return Expr::lt(std::move(a), std::move(b));
        if (op == ">") return Expr::lt(std::move(b), std::move(a));
        if (op == ">=") return Expr::negate(Expr::lt(std::move(a), std::move(b)));
        if (op == "<=") return Expr::negate(Expr::lt(std::move(b), std::move(a)));
        return Expr::negate(Expr::eq(std::move(a), std::move(b)));
    }

    Res<ExprPtr> parse_add() {
        auto e = parse_postfix();
        if (!e) return e;
        while (at_punct("+") || at_punct("-")) {
            bool plus = peek().text == "+";
            ++pos;
            auto rhs = parse_postfix();
            if (!rhs) return rhs;
            e = plus ? Expr::add(e.take(), rhs.take()) : Expr::sub(e.take(), rhs.take());
        }
        return e;
    }

    Res<ExprPtr> parse_postfix() {
        auto e = parse_primary();
        if (!e) return e;
        while (at_punct("[")) {
            ++pos;
            auto key = parse_expr();
            if (!key) return key;
            if (at_punct("->")) {
                ++pos;
                auto val = parse_expr();
                if (!val) return val;
                if (auto s = expect_punct("]"); !s) return s.err();
                e = Expr::map_put(e.take(), key.take(), val.take());
            } else {
                if (auto s = expect_punct("]"); !s) return s.err();
                e = Expr::map_get(e.take(), key.take());
            }
        }
        return e;
    }

    // Parses the comma-separated `const -> const` entries of a map literal.
    Res<Value> parse_map_literal() {
        std::vector<std::pair<Value, Value>> entries;
        if (!at_punct(")")) {
            for (;;) {
                auto k = parse_const_operand("map literal key");
                if (!k) return k;
                if (auto s = expect_punct("->"); !s) return s.err();
                auto v = parse_const_operand("map literal value");
                if (!v) return v;
                entries.emplace_back(k.take(), v.take());
                if (!at_punct(",")) break;
                ++pos;
            }
        }
        if (auto s = expect_punct(")"); !s) return s.err();
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first.cmp(b.first) < 0; });
        for (size_t i = 1; i < entries.size(); ++i)
            if (entries[i - 1].first == entries[i].first)
                return fail("duplicate map literal key " + entries[i].first.str());
        return Value::map(std::move(entries));
    }

    Res<Value> parse_const_operand(const char* what) {
        auto e = parse_expr();
        if (!e) return e.err();
        if (!expr_is_const(*e)) return fail(std::string(what) + " must be a constant");
        return (*e)->value;
    }

    Res<ExprPtr> parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::Num: {
                ++pos;
                return Expr::num(t.num);
            }
            case Token::Kind::Part: {
                ++pos;
                return Expr::part(t.text);
            }
            case Token::Kind::Hex: {
                auto raw = from_hex(t.text);
                if (!raw) return fail("bad hex literal");
                ++pos;
                return Expr::cnst(Value::bytes(*raw));
            }
            case Token::Kind::Ident: {
                if (t.text == "true") {
                    ++pos;
                    return Expr::boolean(true);
                }
                if (t.text == "false") {
                    ++pos;
                    return Expr::boolean(false);
                }
                if (t.text == "Null") {
                    ++pos;
                    return Expr::cnst(Value::null_participant());
                }
                if (t.text == "H" && at_punct("(", 1)) {
                    pos += 2;
                    auto e = parse_expr();
                    if (!e) return e;
                    if (auto s = expect_punct(")"); !s) return s.err();
                    return Expr::hash(e.take());
                }
                if (t.text == "map" && at_punct("(", 1)) {
                    pos += 2;
                    auto m = parse_map_literal();
                    if (!m) return m.err();
                    return Expr::cnst(m.take());
                }
                auto name = expect_name();
                if (!name) return name.err();
                return Expr::param(name.take());
            }
            case Token::Kind::Punct: {
                if (t.text == "(") {
                    ++pos;
                    auto e = parse_expr();
                    if (!e) return e;
                    if (auto s = expect_punct(")"); !s) return s.err();
                    return e;
                }
                if (t.text == "|") {
                    ++pos;
                    auto e = parse_expr();
                    if (!e) return e;
                    if (auto s = expect_punct("|"); !s) return s.err();
                    return Expr::size(e.take());
                }
                if (t.text == "-" && peek(1).kind == Token::Kind::Num) {
                    i64 n = peek(1).num;
                    pos += 2;
                    return Expr::num(-n);
                }
                if (t.text == "*") {
                    ++pos;
                    return Expr::cnst(Value::star());
                }
                if (t.text == "[") {
                    ++pos;
                    std::vector<Value> items;
                    if (!at_punct("]")) {
                        for (;;) {
                            auto v = parse_const_operand("list literal item");
                            if (!v) return v.err();
                            items.push_back(v.take());
                            if (!at_punct(",")) break;
                            ++pos;
                        }
                    }
                    if (auto s = expect_punct("]"); !s) return s.err();
                    return Expr::cnst(Value::list(std::move(items)));
                }
                break;
            }
            case Token::Kind::Eof:
                break;
        }
        return fail("expected an expression");
    }

    // ---- Branches -----------------------------------------------------

    bool at_decoration() const {
        return at_word("auth") || at_word("after") || at_word("afterRel");
    }

    Res<Branch> parse_branch() {
        Branch b;
        while (at_decoration()) {
            std::string kw = peek().text;
            ++pos;
            if (auto s = expect_punct("("); !s) return s.err();
            auto e = parse_expr();
            if (!e) return e.err();
            if (auto s = expect_punct(")"); !s) return s.err();
            if (auto s = expect_punct("."); !s) return s.err();
            if (kw == "auth")
                b.auths.push_back(e.take());
            else if (kw == "after")
                b.afters.push_back(e.take());
            else
                b.after_rels.push_back(e.take());
        }
        if (at_word("call")) {
            ++pos;
            b.is_call = true;
            if (auto s = expect_punct("("); !s) return s.err();
            for (;;) {
                auto item = parse_call_item();
                if (!item) return item.err();
                b.calls.push_back(item.take());
                if (at_punct("|") && at_punct("|", 1)) {
                    pos += 2;
                    continue;
                }
                break;
            }
            if (auto s = expect_punct(")"); !s) return s.err();
            return b;
        }
        if (at_word("withdraw")) {
            ++pos;
            b.is_call = false;
            if (auto s = expect_punct("("); !s) return s.err();
            if (!at_punct(")")) {
                for (;;) {
                    auto item = parse_send_item();
                    if (!item) return item.err();
                    b.sends.push_back(item.take());
                    if (at_punct("|") && at_punct("|", 1)) {
                        pos += 2;
                        continue;
                    }
                    break;
                }
            }
            if (auto s = expect_punct(")"); !s) return s.err();
            return b;
        }
        return fail("expected 'call' or 'withdraw'");
    }

    Res<CallItem> parse_call_item() {
        CallItem item;
        auto name = expect_name();
        if (!name) return name.err();
        item.callee = name.take();
        if (auto s = expect_punct("("); !s) return s.err();
        if (!at_punct(";")) {
            for (;;) {
                auto e = parse_expr();
                if (!e) return e.err();
                item.internals.push_back(e.take());
                if (!at_punct(",")) break;
                ++pos;
            }
        }
        if (auto s = expect_punct(";"); !s) return s.err();
        if (!at_punct(")")) {
            for (;;) {
                if (at_punct("?")) {
                    ++pos;
                    item.externals.push_back(std::nullopt);
                } else {
                    auto e = parse_expr();
                    if (!e) return e.err();
                    item.externals.push_back(e.take());
                }
                if (!at_punct(",")) break;
                ++pos;
            }
        }
        if (auto s = expect_punct(")"); !s) return s.err();
        return item;
    }

    Res<SendItem> parse_send_item() {
        auto amount = parse_expr();
        if (!amount) return amount.err();
        if (auto s = expect_punct(":"); !s) return s.err();
        auto token = expect_name();
        if (!token) return token.err();
        if (auto s = expect_punct("->"); !s) return s.err();
        auto to = parse_expr();
        if (!to) return to.err();
        return SendItem{amount.take(), token.take(), to.take()};
    }

    // ---- Clauses ------------------------------------------------------

    Res<IType> parse_type() {
        if (at_word("int")) {
            ++pos;
            return IType::IntT;
        }
        if (at_word("part")) {
            ++pos;
            return IType::PartT;
        }
        if (at_word("map")) {
            ++pos;
            return IType::MapT;
        }
        return fail("expected a type ('int', 'part' or 'map')");
    }

    Res<std::vector<std::pair<std::string, IType>>> parse_params(const std::string& stop) {
        std::vector<std::pair<std::string, IType>> out;
        if (at_punct(stop)) return out;
        for (;;) {
            auto name = expect_name();
            if (!name) return name.err();
            if (auto s = expect_punct(":"); !s) return s.err();
            auto ty = parse_type();
            if (!ty) return ty.err();
            out.emplace_back(name.take(), *ty);
            if (!at_punct(",")) break;
            ++pos;
        }
        return out;
    }

    Res<ClauseDef> parse_clause() {
        ClauseDef c;
        if (auto s = expect_word("clause"); !s) return s.err();
        auto name = expect_name();
        if (!name) return name.err();
        c.name = name.take();
        if (auto s = expect_punct("("); !s) return s.err();
        auto internals = parse_params(";");
        if (!internals) return internals.err();
        c.internals = internals.take();
        if (auto s = expect_punct(";"); !s) return s.err();
        auto externals = parse_params(")");
        if (!externals) return externals.err();
        c.externals = externals.take();
        if (auto s = expect_punct(")"); !s) return s.err();
        if (auto s = expect_punct("="); !s) return s.err();
        if (auto s = expect_punct("{"); !s) return s.err();

        if (peek().kind == Token::Kind::Num && peek().num == 0 &&
            (at_punct("}", 1) || at_punct("|", 1))) {
            ++pos;
        } else {
            for (;;) {
                auto amount = parse_expr();
                if (!amount) return amount.err();
                if (auto s = expect_punct(":"); !s) return s.err();
                auto token = expect_name();
                if (!token) return token.err();
                c.funding.push_back(FundingEntry{amount.take(), token.take()});
                if (!at_punct("+")) break;
                ++pos;
            }
        }
        if (at_punct("|")) {
            ++pos;
            if (auto s = expect_word("if"); !s) return s.err();
            auto g = parse_expr();
            if (!g) return g.err();
            c.guard = g.take();
        } else {
            c.guard = Expr::boolean(true);
        }
        if (auto s = expect_punct("}"); !s) return s.err();

        for (;;) {
            auto b = parse_branch();
            if (!b) return b.err();
            c.process.push_back(b.take());
            if (!at_punct("+")) break;
            ++pos;
        }
        return c;
    }

    Res<Program> parse_program_toks() {
        Program p;
        while (peek().kind != Token::Kind::Eof) {
            auto c = parse_clause();
            if (!c) return c.err();
            p.clauses.push_back(c.take());
        }
        return p;
    }

    Res<Unit> expect_eof() {
        if (peek().kind != Token::Kind::Eof) return fail("trailing input");
        return Unit{};
    }
};

} // namespace

Res<Program> parse_program(const std::string& source) {
    auto toks = tokenize(source);
    if (!toks) return toks.err();
    Parser p{toks.take()};
    auto prog = p.parse_program_toks();
    if (!prog) return prog;
    if (auto s = p.expect_eof(); !s) return s.err();
    return prog;
}

Res<ExprPtr> parse_expression(const std::string& source) {
    auto toks = tokenize(source);
    if (!toks) return toks.err();
    Parser p{toks.take()};
    auto e = p.parse_expr();
    if (!e) return e;
    if (auto s = p.expect_eof(); !s) return s.err();
    return e;
}

Res<Branch> parse_branch(const std::string& source) {
    auto toks = tokenize(source);
    if (!toks) return toks.err();
    Parser p{toks.take()};
    auto b = p.parse_branch();
    if (!b) return b;
    if (auto s = p.expect_eof(); !s) return s.err();
    return b;
}

} // namespace illum
