#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfpl/ast.hpp"

namespace lfpl {

struct ParseError : std::runtime_error {
    SrcLoc loc;
    ParseError(SrcLoc l, const std::string& msg)
        : std::runtime_error(msg), loc(l) {}
};

// ---------------------------------------------------------------------------
// Lexer. `--` comments run to end of line.
// ---------------------------------------------------------------------------

enum class Tok {
    Ident, Number,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Comma, Dot, Pipe, Arrow,      // =>
    Lolli,                        // -o
    Plus, Star, Amp, Colon, Eq, Unit2,  // <> lexes as Unit2
    Eof
};

struct Token {
    Tok kind;
    std::string text;
    SrcLoc loc;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string text, int l, int c) {
        out.push_back({k, std::move(text), {l, c}});
    };
    while (i < src.size()) {
        char c = src[i];
        int tl = line, tc = col;
        auto adv = [&](size_t n = 1) {
            for (size_t j = 0; j < n; ++j) {
                if (src[i] == '\n') { line++; col = 1; } else col++;
                i++;
            }
        };
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { adv(); continue; }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
            while (i < src.size() && src[i] != '\n') adv();
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == 'o') {
            push(Tok::Lolli, "-o", tl, tc); adv(2); continue;
        }
        if (c == '=' && i + 1 < src.size() && src[i + 1] == '>') {
            push(Tok::Arrow, "=>", tl, tc); adv(2); continue;
        }
        if (c == '<' && i + 1 < src.size() && src[i + 1] == '>') {
            push(Tok::Unit2, "<>", tl, tc); adv(2); continue;
        }
        switch (c) {
            case '(': push(Tok::LParen, "(", tl, tc); adv(); continue;
            case ')': push(Tok::RParen, ")", tl, tc); adv(); continue;
            case '{': push(Tok::LBrace, "{", tl, tc); adv(); continue;
            case '}': push(Tok::RBrace, "}", tl, tc); adv(); continue;
            case '[': push(Tok::LBracket, "[", tl, tc); adv(); continue;
            case ']': push(Tok::RBracket, "]", tl, tc); adv(); continue;
            case ',': push(Tok::Comma, ",", tl, tc); adv(); continue;
            case '.': push(Tok::Dot, ".", tl, tc); adv(); continue;
            case '|': push(Tok::Pipe, "|", tl, tc); adv(); continue;
            case '+': push(Tok::Plus, "+", tl, tc); adv(); continue;
            case '*': push(Tok::Star, "*", tl, tc); adv(); continue;
            case '&': push(Tok::Amp, "&", tl, tc); adv(); continue;
            case ':': push(Tok::Colon, ":", tl, tc); adv(); continue;
            case '=': push(Tok::Eq, "=", tl, tc); adv(); continue;
            default: break;
        }
        if (isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (i < src.size() && isdigit(static_cast<unsigned char>(src[i]))) {
                num += src[i]; adv();
            }
            push(Tok::Number, num, tl, tc);
            continue;
        }
        if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (i < src.size() &&
                   (isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' ||
                    src[i] == '\'' || src[i] == '$')) {
                id += src[i]; adv();
            }
            push(Tok::Ident, id, tl, tc);
            continue;
        }
        throw ParseError({tl, tc}, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::Eof, "", {line, col}});
    return out;
}

inline bool is_reserved(const std::string& id) {
    static const std::set<std::string> kw = {
        "lam", "case", "rec", "letp", "in", "nil", "cons", "inj1", "inj2",
        "proj1", "proj2", "empty", "push", "pop", "leaf", "node", "trec", "diam"};
    return kw.count(id) > 0;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser for types, terms, and .lfpl definition files.
//
// Term grammar sketch:
//   term    := lam pat . term | letp pat = app in term
//            | case app [.] | inj1 pat => term | inj2 pat => term
//            | rec app [.] | nil => term | cons (p,p,p) => term
//            | pop app [.] | empty => term | push (p,p) => term
//            | trec app [.] | leaf => term | node (p,p,p,p) => term
//            | app
//   app     := operand operand*
//   operand := var | <> | nil | empty | leaf | inj1 operand | inj2 operand
//            | proj1 operand | proj2 operand | cons (t,t,t) | push (t,t)
//            | node (t,t,t,t) | ( term [, term]* ) | { term , term }
//
// A binder form in a non-final case/rec/pop/trec branch must be parenthesized
// (the form would otherwise swallow the following `|` arm); the printer always
// parenthesizes such branches, so printing round-trips.
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    TypePtr type() {
        auto t = parse_type();
        expect(Tok::Eof, "end of input");
        return t;
    }

    TermPtr term() {
        auto t = parse_term();
        expect(Tok::Eof, "end of input");
        return t;
    }

    struct Def {
        std::string name;
        TypePtr type;
        TermPtr term;  // earlier definitions already inlined
        SrcLoc loc;
    };

    // `name : TYPE` / `name = TERM` pairs; later bodies may reference earlier
    // names, which are inlined with their binders renamed apart.
    std::vector<Def> file() {
        std::vector<Def> defs;
        std::map<std::string, TermPtr> known;
        while (peek().kind != Tok::Eof) {
            Token nameTok = expect(Tok::Ident, "definition name");
            if (is_reserved(nameTok.text))
                throw ParseError(nameTok.loc, "'" + nameTok.text + "' is reserved");
            expect(Tok::Colon, "':' after definition name");
            TypePtr ty = parse_type();
            Token nameTok2 = expect(Tok::Ident, "definition body");
            if (nameTok2.text != nameTok.text)
                throw ParseError(nameTok2.loc, "expected '" + nameTok.text +
                                                   " = ...' after its type");
            expect(Tok::Eq, "'=' after definition name");
            TermPtr body = parse_term();
            std::set<std::string> bound;
            body = inline_defs(body, known, bound);
            if (known.count(nameTok.text))
                throw ParseError(nameTok.loc,
                                 "duplicate definition of '" + nameTok.text + "'");
            // Inlined occurrences carry the definition's ascription so that
            // checking can synthesize through them.
            auto annotated = std::make_shared<Term>();
            annotated->kind = TermKind::Anno;
            annotated->kids = {body};
            annotated->anno = ty;
            annotated->loc = nameTok.loc;
            known[nameTok.text] = annotated;
            defs.push_back({nameTok.text, ty, body, nameTok.loc});
        }
        return defs;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    int fresh_ = 0;

    const Token& peek(size_t off = 0) const {
        return toks_[std::min(pos_ + off, toks_.size() - 1)];
    }
    Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    bool accept(Tok k) {
        if (peek().kind == k) { pos_++; return true; }
        return false;
    }
    Token expect(Tok k, const std::string& what) {
        if (peek().kind != k)
            throw ParseError(peek().loc,
                             "expected " + what + ", found '" +
                                 (peek().kind == Tok::Eof ? "<eof>" : peek().text) + "'");
        return next();
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(peek().loc, msg); }

    std::string fresh(const std::string& hint) {
        return hint + "$" + std::to_string(fresh_++);
    }

    // ---- types ----

    TypePtr parse_type() { return parse_arrow(); }

    TypePtr parse_arrow() {
        TypePtr l = parse_sum();
        if (accept(Tok::Lolli)) return t_arrow(l, parse_arrow());
        return l;
    }
    TypePtr parse_sum() {
        TypePtr l = parse_prodty();
        if (accept(Tok::Plus)) return t_sum(l, parse_sum());
        return l;
    }
    TypePtr parse_prodty() {
        TypePtr l = parse_tensor();
        if (accept(Tok::Amp)) return t_prod(l, parse_prodty());
        return l;
    }
    TypePtr parse_tensor() {
        TypePtr l = parse_type_atom();
        if (accept(Tok::Star)) return t_tensor(l, parse_tensor());
        return l;
    }
    TypePtr parse_type_atom() {
        Token t = peek();
        if (t.kind == Tok::Number && t.text == "1") { next(); return t_unit(); }
        if (t.kind == Tok::Ident) {
            if (t.text == "diam") { next(); return t_diamond(); }
            if (t.text == "L" || t.text == "S" || t.text == "T") {
                next();
                expect(Tok::LParen, "'(' after " + t.text);
                TypePtr inner = parse_type();
                expect(Tok::RParen, "')'");
                if (t.text == "L") return t_list(inner);
                if (t.text == "S") return t_stack(inner);
                return t_tree(inner);
            }
            fail("unknown type '" + t.text + "' (the language has no type variables)");
        }
        if (accept(Tok::LParen)) {
            TypePtr inner = parse_type();
            expect(Tok::RParen, "')'");
            return inner;
        }
        fail("expected a type");
    }

    // ---- patterns: name | _ | ( p , p [, p]* ), right-nested ----

    struct Pat {
        std::string name;        // set when leaf
        std::vector<Pat> parts;  // set when tuple
        SrcLoc loc;
        bool leaf() const { return parts.empty(); }
    };

    Pat parse_pattern() {
        Token t = peek();
        if (t.kind == Tok::Ident) {
            next();
            if (is_reserved(t.text)) throw ParseError(t.loc, "'" + t.text + "' is reserved");
            return {t.text, {}, t.loc};
        }
        if (accept(Tok::LParen)) {
            std::vector<Pat> parts;
            parts.push_back(parse_pattern());
            while (accept(Tok::Comma)) parts.push_back(parse_pattern());
            expect(Tok::RParen, "')'");
            if (parts.size() == 1) return parts[0];
            return {"", std::move(parts), t.loc};
        }
        fail("expected a binder");
    }

    // Chooses the binder name for a pattern and wraps `body` in the letp chain
    // that destructures it. `_` binders get fresh never-used names.
    std::string bind_pattern(const Pat& p, TermPtr& body) {
        if (p.leaf()) {
            if (p.name == "_") return fresh("_u");
            return p.name;
        }
        std::string outer = fresh("p");
        body = destructure(outer, p, 0, std::move(body));
        return outer;
    }

    // letp (x_i, rest_i) = v in ... for the right-nested tuple pattern p.
    TermPtr destructure(const std::string& v, const Pat& p, size_t i, TermPtr body) {
        const Pat& head = p.parts[i];
        bool last = (i + 2 == p.parts.size());
        std::string rhsName;
        TermPtr inner = std::move(body);
        if (last) {
            rhsName = bind_pattern(p.parts[i + 1], inner);
        } else {
            rhsName = fresh("q");
            inner = destructure(rhsName, p, i + 1, std::move(inner));
        }
        std::string lhsName = bind_pattern(head, inner);
        return mk_term(TermKind::LetPair,
                       {mk_term(TermKind::Var, {}, {}, 0, v), inner},
                       {lhsName, rhsName}, 0, {}, p.loc);
    }

    // ---- terms ----

    void expect_kw(const std::string& kw) {
        Token t = expect(Tok::Ident, "'" + kw + "'");
        if (t.text != kw) throw ParseError(t.loc, "expected '" + kw + "'");
    }

    TermPtr parse_term() {
        Token t = peek();
        if (t.kind == Tok::Ident) {
            if (t.text == "lam") {
                next();
                Pat p = parse_pattern();
                expect(Tok::Dot, "'.' after binder");
                TermPtr body = parse_term();
                std::string b = bind_pattern(p, body);
                return mk_term(TermKind::Lam, {body}, {b}, 0, {}, t.loc);
            }
            if (t.text == "letp") {
                next();
                Pat p = parse_pattern();
                if (p.leaf()) throw ParseError(p.loc, "letp expects a tuple pattern");
                expect(Tok::Eq, "'=' in letp");
                TermPtr m = parse_app();
                expect_kw("in");
                TermPtr body = parse_term();
                if (p.parts.size() == 2 && p.parts[0].leaf() && p.parts[1].leaf()) {
                    std::string b1 = p.parts[0].name == "_" ? fresh("_u") : p.parts[0].name;
                    std::string b2 = p.parts[1].name == "_" ? fresh("_u") : p.parts[1].name;
                    return mk_term(TermKind::LetPair, {m, body}, {b1, b2}, 0, {}, t.loc);
                }
                // Nested pattern: bind a fresh name, then destructure it.
                std::string scrut = fresh("p");
                TermPtr chain = destructure(scrut, p, 0, body);
                return mk_term(TermKind::App,
                               {mk_term(TermKind::Lam, {chain}, {scrut}, 0, {}, t.loc), m},
                               {}, 0, {}, t.loc);
            }
            if (t.text == "case") {
                next();
                TermPtr m = parse_app();
                accept(Tok::Dot);
                expect(Tok::Pipe, "'|' before inj1 branch");
                expect_kw("inj1");
                Pat p1 = parse_pattern();
                expect(Tok::Arrow, "'=>'");
                TermPtr n1 = parse_term();
                expect(Tok::Pipe, "'|' before inj2 branch");
                expect_kw("inj2");
                Pat p2 = parse_pattern();
                expect(Tok::Arrow, "'=>'");
                TermPtr n2 = parse_term();
                std::string b1 = bind_pattern(p1, n1);
                std::string b2 = bind_pattern(p2, n2);
                return mk_term(TermKind::Case, {m, n1, n2}, {b1, b2}, 0, {}, t.loc);
            }
            if (t.text == "rec") {
                next();
                TermPtr m = parse_app();
                accept(Tok::Dot);
                expect(Tok::Pipe, "'|' before nil branch");
                expect_kw("nil");
                expect(Tok::Arrow, "'=>'");
                TermPtr n1 = parse_term();
                expect(Tok::Pipe, "'|' before cons branch");
                expect_kw("cons");
                expect(Tok::LParen, "'('");
                Pat pd = parse_pattern();
                expect(Tok::Comma, "','");
                Pat ph = parse_pattern();
                expect(Tok::Comma, "','");
                Pat pt = parse_pattern();
                expect(Tok::RParen, "')'");
                expect(Tok::Arrow, "'=>'");
                TermPtr n2 = parse_term();
                std::string bt = bind_pattern(pt, n2);
                std::string bh = bind_pattern(ph, n2);
                std::string bd = bind_pattern(pd, n2);
                return mk_term(TermKind::Rec, {m, n1, n2}, {bd, bh, bt}, 0, {}, t.loc);
            }
            if (t.text == "pop") {
                next();
                TermPtr m = parse_app();
                accept(Tok::Dot);
                expect(Tok::Pipe, "'|' before empty branch");
                expect_kw("empty");
                expect(Tok::Arrow, "'=>'");
                TermPtr n1 = parse_term();
                expect(Tok::Pipe, "'|' before push branch");
                expect_kw("push");
                expect(Tok::LParen, "'('");
                Pat ph = parse_pattern();
                expect(Tok::Comma, "','");
                Pat pt = parse_pattern();
                expect(Tok::RParen, "')'");
                expect(Tok::Arrow, "'=>'");
                TermPtr n2 = parse_term();
                std::string bt = bind_pattern(pt, n2);
                std::string bh = bind_pattern(ph, n2);
                return mk_term(TermKind::Pop, {m, n1, n2}, {bh, bt}, 0, {}, t.loc);
            }
            if (t.text == "trec") {
                next();
                TermPtr m = parse_app();
                accept(Tok::Dot);
                expect(Tok::Pipe, "'|' before leaf branch");
                expect_kw("leaf");
                expect(Tok::Arrow, "'=>'");
                TermPtr n1 = parse_term();
                expect(Tok::Pipe, "'|' before node branch");
                expect_kw("node");
                expect(Tok::LParen, "'('");
                Pat pd = parse_pattern();
                expect(Tok::Comma, "','");
                Pat px = parse_pattern();
                expect(Tok::Comma, "','");
                Pat pl = parse_pattern();
                expect(Tok::Comma, "','");
                Pat pr = parse_pattern();
                expect(Tok::RParen, "')'");
                expect(Tok::Arrow, "'=>'");
                TermPtr n2 = parse_term();
                std::string br = bind_pattern(pr, n2);
                std::string bl = bind_pattern(pl, n2);
                std::string bx = bind_pattern(px, n2);
                std::string bd = bind_pattern(pd, n2);
                return mk_term(TermKind::TRec, {m, n1, n2}, {bd, bx, bl, br}, 0, {}, t.loc);
            }
        }
        return parse_app();
    }

    TermPtr parse_app() {
        TermPtr f = parse_operand();
        for (;;) {
            const Token& t = peek();
            bool starts = t.kind == Tok::LParen || t.kind == Tok::LBrace ||
                          t.kind == Tok::Unit2 ||
                          (t.kind == Tok::Ident && ident_starts_operand());
            if (!starts) break;
            SrcLoc loc = t.loc;
            TermPtr a = parse_operand();
            f = mk_term(TermKind::App, {f, a}, {}, 0, {}, loc);
        }
        return f;
    }

    bool ident_starts_operand() const {
        const std::string& id = peek().text;
        if (id == "lam" || id == "case" || id == "rec" || id == "letp" ||
            id == "pop" || id == "trec" || id == "in" || id == "diam")
            return false;
        // An identifier opening the next top-level definition must not be
        // consumed as an application argument.
        Tok after = peek(1).kind;
        if (!is_reserved(id) && (after == Tok::Colon || after == Tok::Eq)) return false;
        return true;
    }

    TermPtr parse_operand() {
        Token t = peek();
        switch (t.kind) {
            case Tok::Unit2:
                next();
                return mk_term(TermKind::Null, {}, {}, 0, {}, t.loc);
            case Tok::LParen: {
                next();
                TermPtr m = parse_term();
                if (accept(Tok::Comma)) {
                    std::vector<TermPtr> parts{m};
                    parts.push_back(parse_term());
                    while (accept(Tok::Comma)) parts.push_back(parse_term());
                    expect(Tok::RParen, "')'");
                    TermPtr acc = parts.back();
                    for (size_t i = parts.size() - 1; i-- > 0;)
                        acc = mk_term(TermKind::Pair, {parts[i], acc}, {}, 0, {}, t.loc);
                    return acc;
                }
                if (accept(Tok::Colon)) {
                    TypePtr ty = parse_type();
                    expect(Tok::RParen, "')'");
                    auto a = std::make_shared<Term>();
                    a->kind = TermKind::Anno;
                    a->kids = {m};
                    a->anno = ty;
                    a->loc = t.loc;
                    return a;
                }
                expect(Tok::RParen, "')'");
                return m;
            }
            case Tok::LBrace: {
                next();
                TermPtr m1 = parse_term();
                expect(Tok::Comma, "',' in lazy pair");
                TermPtr m2 = parse_term();
                expect(Tok::RBrace, "'}'");
                return mk_term(TermKind::Record, {m1, m2}, {}, 0, {}, t.loc);
            }
            case Tok::Ident: {
                const std::string& id = t.text;
                if (id == "nil") { next(); return mk_term(TermKind::Nil, {}, {}, 0, {}, t.loc); }
                if (id == "empty") { next(); return mk_term(TermKind::Empty, {}, {}, 0, {}, t.loc); }
                if (id == "leaf") { next(); return mk_term(TermKind::Leaf, {}, {}, 0, {}, t.loc); }
                if (id == "inj1" || id == "inj2") {
                    next();
                    TermPtr m = parse_operand();
                    return mk_term(TermKind::Inj, {m}, {}, id == "inj1" ? 1 : 2, {}, t.loc);
                }
                if (id == "proj1" || id == "proj2") {
                    next();
                    TermPtr m = parse_operand();
                    return mk_term(TermKind::Proj, {m}, {}, id == "proj1" ? 1 : 2, {}, t.loc);
                }
                if (id == "cons") {
                    next();
                    expect(Tok::LParen, "'(' after cons");
                    TermPtr d = parse_term();
                    expect(Tok::Comma, "','");
                    TermPtr h = parse_term();
                    expect(Tok::Comma, "','");
                    TermPtr tl = parse_term();
                    expect(Tok::RParen, "')'");
                    return mk_term(TermKind::Cons, {d, h, tl}, {}, 0, {}, t.loc);
                }
                if (id == "push") {
                    next();
                    expect(Tok::LParen, "'(' after push");
                    TermPtr h = parse_term();
                    expect(Tok::Comma, "','");
                    TermPtr tl = parse_term();
                    expect(Tok::RParen, "')'");
                    return mk_term(TermKind::Push, {h, tl}, {}, 0, {}, t.loc);
                }
                if (id == "node") {
                    next();
                    expect(Tok::LParen, "'(' after node");
                    TermPtr d = parse_term();
                    expect(Tok::Comma, "','");
                    TermPtr x = parse_term();
                    expect(Tok::Comma, "','");
                    TermPtr l = parse_term();
                    expect(Tok::Comma, "','");
                    TermPtr r = parse_term();
                    expect(Tok::RParen, "')'");
                    return mk_term(TermKind::Node, {d, x, l, r}, {}, 0, {}, t.loc);
                }
                if (is_reserved(id)) fail("unexpected '" + id + "' here");
                next();
                return mk_term(TermKind::Var, {}, {}, 0, id, t.loc);
            }
            default:
                fail("expected a term");
        }
    }

    // ---- definition inlining ----

    TermPtr inline_defs(const TermPtr& t, const std::map<std::string, TermPtr>& defs,
                        std::set<std::string>& bound) {
        if (t->kind == TermKind::Var) {
            auto it = defs.find(t->name);
            if (it != defs.end() && !bound.count(t->name))
                return rename_binders(it->second, t->name);
            return t;
        }
        auto copy = std::make_shared<Term>(*t);
        auto recurse_kid = [&](size_t i, const std::vector<std::string>& newly) {
            std::vector<std::string> ins;
            for (auto& b : newly)
                if (bound.insert(b).second) ins.push_back(b);
            copy->kids[i] = inline_defs(t->kids[i], defs, bound);
            for (auto& b : ins) bound.erase(b);
        };
        switch (t->kind) {
            case TermKind::Case:
                recurse_kid(0, {});
                recurse_kid(1, {t->binders[0]});
                recurse_kid(2, {t->binders[1]});
                break;
            case TermKind::LetPair:
                recurse_kid(0, {});
                recurse_kid(1, {t->binders[0], t->binders[1]});
                break;
            case TermKind::Lam:
                recurse_kid(0, {t->binders[0]});
                break;
            case TermKind::Rec:
            case TermKind::TRec:
            case TermKind::Pop:
                recurse_kid(0, {});
                recurse_kid(1, {});
                recurse_kid(2, t->binders);
                break;
            default:
                for (size_t i = 0; i < t->kids.size(); ++i) recurse_kid(i, {});
        }
        return copy;
    }

    // Renames every binder in a copied definition body so inlining under
    // existing binders can never shadow (inlined bodies are closed).
    TermPtr rename_binders(const TermPtr& t, const std::string& prefix) {
        int counter = 0;
        std::map<std::string, std::string> renames;
        return rename_rec(t, prefix, counter, renames);
    }

    TermPtr rename_rec(const TermPtr& t, const std::string& prefix, int& counter,
                       std::map<std::string, std::string> renames) {
        if (t->kind == TermKind::Var) {
            auto it = renames.find(t->name);
            if (it == renames.end()) return t;
            auto copy = std::make_shared<Term>(*t);
            copy->name = it->second;
            return copy;
        }
        auto copy = std::make_shared<Term>(*t);
        auto freshen = [&](const std::string& b) {
            return prefix + "$" + b + std::to_string(counter++);
        };
        switch (t->kind) {
            case TermKind::Case: {
                copy->kids[0] = rename_rec(t->kids[0], prefix, counter, renames);
                for (int i = 0; i < 2; ++i) {
                    auto scoped = renames;
                    copy->binders[i] = freshen(t->binders[i]);
                    scoped[t->binders[i]] = copy->binders[i];
                    copy->kids[i + 1] = rename_rec(t->kids[i + 1], prefix, counter, scoped);
                }
                return copy;
            }
            case TermKind::Lam: {
                auto scoped = renames;
                copy->binders[0] = freshen(t->binders[0]);
                scoped[t->binders[0]] = copy->binders[0];
                copy->kids[0] = rename_rec(t->kids[0], prefix, counter, scoped);
                return copy;
            }
            case TermKind::LetPair: {
                copy->kids[0] = rename_rec(t->kids[0], prefix, counter, renames);
                auto scoped = renames;
                for (int i = 0; i < 2; ++i) {
                    copy->binders[i] = freshen(t->binders[i]);
                    scoped[t->binders[i]] = copy->binders[i];
                }
                copy->kids[1] = rename_rec(t->kids[1], prefix, counter, scoped);
                return copy;
            }
            case TermKind::Rec:
            case TermKind::TRec:
            case TermKind::Pop: {
                copy->kids[0] = rename_rec(t->kids[0], prefix, counter, renames);
                copy->kids[1] = rename_rec(t->kids[1], prefix, counter, renames);
                auto scoped = renames;
                for (size_t i = 0; i < t->binders.size(); ++i) {
                    copy->binders[i] = freshen(t->binders[i]);
                    scoped[t->binders[i]] = copy->binders[i];
                }
                copy->kids[2] = rename_rec(t->kids[2], prefix, counter, scoped);
                return copy;
            }
            default: {
                for (size_t i = 0; i < t->kids.size(); ++i)
                    copy->kids[i] = rename_rec(t->kids[i], prefix, counter, renames);
                return copy;
            }
        }
    }
};

inline TypePtr parse_type(const std::string& src) { return Parser(src).type(); }
inline TermPtr parse_term(const std::string& src) { return Parser(src).term(); }
inline std::vector<Parser::Def> parse_file(const std::string& src) {
    return Parser(src).file();
}

}  // namespace lfpl
