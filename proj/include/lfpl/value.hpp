#pragma once

#include "lfpl/parser.hpp"
#include "lfpl/typecheck.hpp"

namespace lfpl {

// ---------------------------------------------------------------------------
// Runtime values and environments. Diamonds in lists and trees are implicit;
// lazy pairs and functions are closures over the environment they were built
// in. Closures keep the checked node so values stay typeable.
// ---------------------------------------------------------------------------

enum class ValKind {
    Diamond, Null, RecordClo, Inj, Pair, LamClo,
    EmptyS, PushS, NilL, ConsL, LeafT, NodeT
};

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Env;
using EnvPtr = std::shared_ptr<const Env>;

struct Env {
    EnvPtr tail;
    std::string name;
    ValuePtr val;
};

struct Value {
    ValKind kind;
    int idx = 0;                    // Inj
    ValuePtr a, b, c;               // children (Pair: a,b; Node: a=x, b=l, c=r)
    EnvPtr env;                     // closures
    TypedPtr code;                  // LamClo: the Lam node; RecordClo: the Record node
};

inline ValuePtr v_diamond() {
    static const ValuePtr v = std::make_shared<Value>(Value{ValKind::Diamond});
    return v;
}
inline ValuePtr v_null() {
    static const ValuePtr v = std::make_shared<Value>(Value{ValKind::Null});
    return v;
}
inline ValuePtr v_nil() {
    static const ValuePtr v = std::make_shared<Value>(Value{ValKind::NilL});
    return v;
}
inline ValuePtr v_empty() {
    static const ValuePtr v = std::make_shared<Value>(Value{ValKind::EmptyS});
    return v;
}
inline ValuePtr v_leaf() {
    static const ValuePtr v = std::make_shared<Value>(Value{ValKind::LeafT});
    return v;
}
inline ValuePtr v_inj(int i, ValuePtr x) {
    return std::make_shared<Value>(Value{ValKind::Inj, i, std::move(x)});
}
inline ValuePtr v_pair(ValuePtr x, ValuePtr y) {
    return std::make_shared<Value>(Value{ValKind::Pair, 0, std::move(x), std::move(y)});
}
inline ValuePtr v_cons(ValuePtr h, ValuePtr t) {
    return std::make_shared<Value>(Value{ValKind::ConsL, 0, std::move(h), std::move(t)});
}
inline ValuePtr v_push(ValuePtr h, ValuePtr t) {
    return std::make_shared<Value>(Value{ValKind::PushS, 0, std::move(h), std::move(t)});
}
inline ValuePtr v_node(ValuePtr x, ValuePtr l, ValuePtr r) {
    return std::make_shared<Value>(
        Value{ValKind::NodeT, 0, std::move(x), std::move(l), std::move(r)});
}
inline ValuePtr v_lam(EnvPtr env, TypedPtr lamNode) {
    auto v = std::make_shared<Value>(Value{ValKind::LamClo});
    const_cast<Value&>(*v).env = std::move(env);
    const_cast<Value&>(*v).code = std::move(lamNode);
    return v;
}
inline ValuePtr v_record(EnvPtr env, TypedPtr recNode) {
    auto v = std::make_shared<Value>(Value{ValKind::RecordClo});
    const_cast<Value&>(*v).env = std::move(env);
    const_cast<Value&>(*v).code = std::move(recNode);
    return v;
}

inline ValuePtr v_list(const std::vector<ValuePtr>& elems) {
    ValuePtr acc = v_nil();
    for (size_t i = elems.size(); i-- > 0;) acc = v_cons(elems[i], acc);
    return acc;
}
inline ValuePtr v_unit_list(size_t n) {
    ValuePtr acc = v_nil();
    for (size_t i = 0; i < n; ++i) acc = v_cons(v_null(), acc);
    return acc;
}

// ---- environments ----

inline EnvPtr env_nil() { return nullptr; }
inline EnvPtr env_cons(EnvPtr tail, std::string name, ValuePtr v) {
    auto e = std::make_shared<Env>();
    const_cast<Env&>(*e) = Env{std::move(tail), std::move(name), std::move(v)};
    return e;
}

// Most recent binding wins; names are distinct in practice, so the order is
// unobservable.
inline const ValuePtr* env_lookup(const EnvPtr& env, const std::string& n) {
    for (const Env* e = env.get(); e; e = e->tail.get())
        if (e->name == n) return &e->val;
    return nullptr;
}

inline size_t env_length(const EnvPtr& env) {
    size_t n = 0;
    for (const Env* e = env.get(); e; e = e->tail.get()) n++;
    return n;
}

inline EnvPtr env_restrict(const EnvPtr& env, const std::set<std::string>& keep) {
    // preserves relative order of the input
    std::vector<const Env*> entries;
    for (const Env* e = env.get(); e; e = e->tail.get())
        if (keep.count(e->name)) entries.push_back(e);
    EnvPtr out = nullptr;
    for (size_t i = entries.size(); i-- > 0;)
        out = env_cons(out, entries[i]->name, entries[i]->val);
    return out;
}

// ---- size (diamond count), mutual on values and environments ----

inline unsigned long long size_env(const EnvPtr& env);

inline unsigned long long size_value(const ValuePtr& v) {
    switch (v->kind) {
        case ValKind::Diamond: return 1;
        case ValKind::Null:
        case ValKind::NilL:
        case ValKind::EmptyS:
        case ValKind::LeafT: return 0;
        case ValKind::Inj: return size_value(v->a);
        case ValKind::Pair: return size_value(v->a) + size_value(v->b);
        case ValKind::PushS: return size_value(v->a) + size_value(v->b);
        case ValKind::ConsL: return 1 + size_value(v->a) + size_value(v->b);
        case ValKind::NodeT:
            return 1 + size_value(v->a) + size_value(v->b) + size_value(v->c);
        case ValKind::LamClo:
        case ValKind::RecordClo: return size_env(v->env);
    }
    return 0;
}

inline unsigned long long size_env(const EnvPtr& env) {
    unsigned long long n = 0;
    for (const Env* e = env.get(); e; e = e->tail.get()) n += size_value(e->val);
    return n;
}

// ---- equality: structural; environments compare as maps ----

inline bool value_eq(const ValuePtr& x, const ValuePtr& y);

inline bool env_eq(const EnvPtr& a, const EnvPtr& b) {
    std::map<std::string, ValuePtr> ma, mb;
    for (const Env* e = a.get(); e; e = e->tail.get())
        ma.emplace(e->name, e->val);  // first hit = most recent binding
    for (const Env* e = b.get(); e; e = e->tail.get())
        mb.emplace(e->name, e->val);
    if (ma.size() != mb.size()) return false;
    for (auto& [k, v] : ma) {
        auto it = mb.find(k);
        if (it == mb.end() || !value_eq(v, it->second)) return false;
    }
    return true;
}

inline bool value_eq(const ValuePtr& x, const ValuePtr& y) {
    if (x.get() == y.get()) return true;
    if (x->kind != y->kind || x->idx != y->idx) return false;
    switch (x->kind) {
        case ValKind::Diamond:
        case ValKind::Null:
        case ValKind::NilL:
        case ValKind::EmptyS:
        case ValKind::LeafT: return true;
        case ValKind::Inj: return value_eq(x->a, y->a);
        case ValKind::Pair:
        case ValKind::PushS:
        case ValKind::ConsL: return value_eq(x->a, y->a) && value_eq(x->b, y->b);
        case ValKind::NodeT:
            return value_eq(x->a, y->a) && value_eq(x->b, y->b) && value_eq(x->c, y->c);
        case ValKind::LamClo:
        case ValKind::RecordClo:
            return term_eq(x->code->term, y->code->term) && env_eq(x->env, y->env);
    }
    return false;
}

// ---- value typing, decidable thanks to the checked node inside closures ----

inline bool env_types(const EnvPtr& env, const Ctx& ctx);

inline bool value_types(const ValuePtr& v, const TypePtr& a) {
    switch (v->kind) {
        case ValKind::Diamond: return a->kind == TypeKind::Diamond;
        case ValKind::Null: return a->kind == TypeKind::Unit;
        case ValKind::Inj:
            return a->kind == TypeKind::Sum &&
                   value_types(v->a, v->idx == 1 ? a->a : a->b);
        case ValKind::Pair:
            return a->kind == TypeKind::Tensor && value_types(v->a, a->a) &&
                   value_types(v->b, a->b);
        case ValKind::NilL: return a->kind == TypeKind::List;
        case ValKind::ConsL:
            return a->kind == TypeKind::List && value_types(v->a, a->a) &&
                   value_types(v->b, a);
        case ValKind::EmptyS: return a->kind == TypeKind::Stack;
        case ValKind::PushS:
            return a->kind == TypeKind::Stack && value_types(v->a, a->a) &&
                   value_types(v->b, a);
        case ValKind::LeafT: return a->kind == TypeKind::Tree;
        case ValKind::NodeT:
            return a->kind == TypeKind::Tree && value_types(v->a, a->a) &&
                   value_types(v->b, a) && value_types(v->c, a);
        case ValKind::LamClo:
            return a->kind == TypeKind::Arrow && type_eq(v->code->type, a) &&
                   env_types(v->env, v->code->ctx);
        case ValKind::RecordClo:
            return a->kind == TypeKind::Prod && type_eq(v->code->type, a) &&
                   env_types(v->env, v->code->ctx);
    }
    return false;
}

inline bool env_types(const EnvPtr& env, const Ctx& ctx) {
    if (env_length(env) != ctx.size()) return false;
    for (auto& [n, ty] : ctx.entries) {
        const ValuePtr* v = env_lookup(env, n);
        if (!v || !value_types(*v, ty)) return false;
    }
    return true;
}

// ---- printing, mirrors the CLI literal grammar ----

inline std::string print_value(const ValuePtr& v) {
    switch (v->kind) {
        case ValKind::Diamond: return "diamond";
        case ValKind::Null: return "<>";
        case ValKind::Inj:
            return (v->idx == 1 ? std::string("inj1 ") : std::string("inj2 ")) +
                   (v->a->kind == ValKind::Inj || v->a->kind == ValKind::NodeT
                        ? "(" + print_value(v->a) + ")"
                        : print_value(v->a));
        case ValKind::Pair:
            return "(" + print_value(v->a) + ", " + print_value(v->b) + ")";
        case ValKind::NilL:
        case ValKind::ConsL: {
            std::string out = "[";
            const Value* cur = v.get();
            bool first = true;
            while (cur->kind == ValKind::ConsL) {
                if (!first) out += ", ";
                out += print_value(cur->a);
                first = false;
                cur = cur->b.get();
            }
            return out + "]";
        }
        case ValKind::EmptyS:
        case ValKind::PushS: {
            std::string out = "stack[";
            const Value* cur = v.get();
            bool first = true;
            while (cur->kind == ValKind::PushS) {
                if (!first) out += ", ";
                out += print_value(cur->a);
                first = false;
                cur = cur->b.get();
            }
            return out + "]";
        }
        case ValKind::LeafT: return "leaf";
        case ValKind::NodeT:
            return "node(" + print_value(v->a) + ", " + print_value(v->b) + ", " +
                   print_value(v->c) + ")";
        case ValKind::LamClo: return "<closure>";
        case ValKind::RecordClo: return "<lazy-pair>";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Value literals for CLI inputs:
//   <> | inj1 v | inj2 v | (v, v) | [v, ...] | stack[v, ...] | leaf
//   | node(v, t, t) | diamond
// `diamond` only where a list or tree makes it implicit, never standalone.
// ---------------------------------------------------------------------------

class ValueLitParser {
public:
    explicit ValueLitParser(const std::string& src) : toks_(lex(src)) {}

    ValuePtr parse() {
        ValuePtr v = value(false);
        if (peek().kind != Tok::Eof)
            throw ParseError(peek().loc, "trailing input after value literal");
        return v;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    Token expect(Tok k, const std::string& what) {
        if (peek().kind != k)
            throw ParseError(peek().loc, "expected " + what);
        return next();
    }

    ValuePtr value(bool underContainer) {
        Token t = peek();
        switch (t.kind) {
            case Tok::Unit2: next(); return v_null();
            case Tok::LParen: {
                next();
                std::vector<ValuePtr> parts;
                parts.push_back(value(underContainer));
                while (peek().kind == Tok::Comma) { next(); parts.push_back(value(underContainer)); }
                expect(Tok::RParen, "')'");
                if (parts.size() < 2)
                    throw ParseError(t.loc, "a pair needs at least two components");
                ValuePtr acc = parts.back();
                for (size_t i = parts.size() - 1; i-- > 0;) acc = v_pair(parts[i], acc);
                return acc;
            }
            case Tok::LBracket: {
                next();
                std::vector<ValuePtr> elems;
                if (peek().kind != Tok::RBracket) {
                    elems.push_back(value(true));
                    while (peek().kind == Tok::Comma) { next(); elems.push_back(value(true)); }
                }
                expect(Tok::RBracket, "']'");
                return v_list(elems);
            }
            case Tok::Ident: {
                const std::string& id = t.text;
                if (id == "inj1" || id == "inj2") {
                    next();
                    return v_inj(id == "inj1" ? 1 : 2, value(underContainer));
                }
                if (id == "leaf") { next(); return v_leaf(); }
                if (id == "diamond") {
                    next();
                    if (!underContainer)
                        throw ParseError(t.loc,
                                         "diamond is only implicit inside lists and "
                                         "trees; it cannot stand alone");
                    return v_diamond();
                }
                if (id == "node") {
                    next();
                    expect(Tok::LParen, "'(' after node");
                    ValuePtr x = value(true);
                    expect(Tok::Comma, "','");
                    ValuePtr l = value(true);
                    expect(Tok::Comma, "','");
                    ValuePtr r = value(true);
                    expect(Tok::RParen, "')'");
                    return v_node(x, l, r);
                }
                if (id == "stack") {
                    next();
                    expect(Tok::LBracket, "'[' after stack");
                    std::vector<ValuePtr> elems;
                    if (peek().kind != Tok::RBracket) {
                        elems.push_back(value(underContainer));
                        while (peek().kind == Tok::Comma) {
                            next();
                            elems.push_back(value(underContainer));
                        }
                    }
                    expect(Tok::RBracket, "']'");
                    ValuePtr acc = v_empty();
                    for (size_t i = elems.size(); i-- > 0;) acc = v_push(elems[i], acc);
                    return acc;
                }
                throw ParseError(t.loc, "unexpected '" + id + "' in value literal");
            }
            default:
                throw ParseError(t.loc, "expected a value literal");
        }
    }
};

inline ValuePtr parse_value(const std::string& src) {
    return ValueLitParser(src).parse();
}

}  // namespace lfpl
