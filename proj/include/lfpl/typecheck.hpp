#pragma once

#include <algorithm>
#include <optional>

#include "lfpl/ast.hpp"

namespace lfpl {

// ---------------------------------------------------------------------------
// Type errors carry enough to render `file:line:col: kind: detail`.
// ---------------------------------------------------------------------------

enum class TypeErrKind {
    Unbound, Reused, Mismatch, ForbiddenCapture, Shadowing, CannotInfer
};

inline const char* type_err_kind_name(TypeErrKind k) {
    switch (k) {
        case TypeErrKind::Unbound: return "unbound variable";
        case TypeErrKind::Reused: return "variable reused";
        case TypeErrKind::Mismatch: return "type mismatch";
        case TypeErrKind::ForbiddenCapture: return "forbidden capture";
        case TypeErrKind::Shadowing: return "shadowing";
        case TypeErrKind::CannotInfer: return "cannot infer type";
    }
    return "?";
}

struct TypeError : std::runtime_error {
    TypeErrKind kind;
    SrcLoc loc;
    TypePtr expected;  // may be null
    TypePtr actual;    // may be null
    TypeError(TypeErrKind k, SrcLoc l, const std::string& detail,
              TypePtr exp = nullptr, TypePtr act = nullptr)
        : std::runtime_error(std::string(type_err_kind_name(k)) + ": " + detail),
          kind(k), loc(l), expected(std::move(exp)), actual(std::move(act)) {}
};

// ---------------------------------------------------------------------------
// TypedTerm: a term annotated, per node, with its type and the split of the
// ambient context chosen by the checker. `used` is the set of context
// variables the node consumes; `ctx` is the node's own (ordered) typing
// context. Contexts are tight except at recursor bodies, which carry exactly
// the fixed binder context the rules prescribe.
// ---------------------------------------------------------------------------

struct TypedTerm;
using TypedPtr = std::shared_ptr<const TypedTerm>;

struct TypedTerm {
    TermKind kind;
    int idx = 0;
    std::string name;
    std::vector<std::string> binders;
    TermPtr term;
    TypePtr type;
    std::vector<TypedPtr> kids;
    Ctx ctx;
    std::set<std::string> used;
};

class Checker {
public:
    TypedPtr check(const Ctx& ctx, const TermPtr& t, const TypePtr& expected) {
        for (size_t i = 0; i < ctx.entries.size(); ++i)
            for (size_t j = i + 1; j < ctx.entries.size(); ++j)
                if (ctx.entries[i].first == ctx.entries[j].first)
                    throw TypeError(TypeErrKind::Shadowing, t->loc,
                                    "duplicate context entry '" + ctx.entries[i].first + "'");
        return check_rec(ctx, {}, t, expected);
    }

    TypedPtr synth(const Ctx& ctx, const TermPtr& t) {
        return synth_rec(ctx, {}, t);
    }

private:
    // `outer` holds names visible in an enclosing scope that a recursor body
    // must not touch: referencing one is a capture error, not an unbound one.
    TypedPtr check_rec(const Ctx& ctx, const std::set<std::string>& outer,
                       const TermPtr& t, const TypePtr& want) {
        switch (t->kind) {
            case TermKind::Null:
                require(want->kind == TypeKind::Unit, t, want, t_unit());
                return leaf(t, want, ctx);
            case TermKind::Nil:
                require(want->kind == TypeKind::List, t, want, nullptr, "nil is a list");
                return leaf(t, want, ctx);
            case TermKind::Empty:
                require(want->kind == TypeKind::Stack, t, want, nullptr, "empty is a stack");
                return leaf(t, want, ctx);
            case TermKind::Leaf:
                require(want->kind == TypeKind::Tree, t, want, nullptr, "leaf is a tree");
                return leaf(t, want, ctx);
            case TermKind::Inj: {
                require(want->kind == TypeKind::Sum, t, want, nullptr,
                        "injection needs a sum type");
                auto m = check_rec(ctx, outer, t->kids[0], t->idx == 1 ? want->a : want->b);
                return node(t, want, ctx, {m}, m->used);
            }
            case TermKind::Pair: {
                require(want->kind == TypeKind::Tensor, t, want, nullptr,
                        "pair needs a tensor type");
                auto m1 = check_rec(ctx, outer, t->kids[0], want->a);
                auto m2 = check_rec(ctx, outer, t->kids[1], want->b);
                return node(t, want, ctx, {m1, m2}, disjoint_union(t, {m1, m2}));
            }
            case TermKind::Record: {
                require(want->kind == TypeKind::Prod, t, want, nullptr,
                        "lazy pair needs a product type");
                auto m1 = check_rec(ctx, outer, t->kids[0], want->a);
                auto m2 = check_rec(ctx, outer, t->kids[1], want->b);
                // Both components share the context: only one is ever forced.
                std::set<std::string> used = m1->used;
                used.insert(m2->used.begin(), m2->used.end());
                return node(t, want, ctx, {m1, m2}, used);
            }
            case TermKind::Cons: {
                require(want->kind == TypeKind::List, t, want, nullptr,
                        "cons needs a list type");
                auto d = check_rec(ctx, outer, t->kids[0], t_diamond());
                auto h = check_rec(ctx, outer, t->kids[1], want->a);
                auto tl = check_rec(ctx, outer, t->kids[2], want);
                return node(t, want, ctx, {d, h, tl}, disjoint_union(t, {d, h, tl}));
            }
            case TermKind::Push: {
                require(want->kind == TypeKind::Stack, t, want, nullptr,
                        "push needs a stack type");
                auto h = check_rec(ctx, outer, t->kids[0], want->a);
                auto tl = check_rec(ctx, outer, t->kids[1], want);
                return node(t, want, ctx, {h, tl}, disjoint_union(t, {h, tl}));
            }
            case TermKind::Node: {
                require(want->kind == TypeKind::Tree, t, want, nullptr,
                        "node needs a tree type");
                auto d = check_rec(ctx, outer, t->kids[0], t_diamond());
                auto x = check_rec(ctx, outer, t->kids[1], want->a);
                auto l = check_rec(ctx, outer, t->kids[2], want);
                auto r = check_rec(ctx, outer, t->kids[3], want);
                return node(t, want, ctx, {d, x, l, r}, disjoint_union(t, {d, x, l, r}));
            }
            case TermKind::Lam: {
                require(want->kind == TypeKind::Arrow, t, want, nullptr,
                        "lambda needs a function type");
                const std::string& x = t->binders[0];
                no_shadow(ctx, outer, x, t);
                Ctx inner = ctx;
                inner.add(x, want->a);
                auto body = check_rec(inner, outer, t->kids[0], want->b);
                std::set<std::string> used = body->used;
                used.erase(x);
                return node(t, want, ctx, {body}, used);
            }
            case TermKind::Case: {
                auto m = synth_rec(ctx, outer, t->kids[0]);
                require(m->type->kind == TypeKind::Sum, t, nullptr, m->type,
                        "case scrutinee must be a sum");
                auto b1 = branch(ctx, outer, t->binders[0], m->type->a, t->kids[1], want, t);
                auto b2 = branch(ctx, outer, t->binders[1], m->type->b, t->kids[2], want, t);
                return elim(t, want, ctx, m, b1, b2,
                            {t->binders[0]}, {t->binders[1]});
            }
            case TermKind::Pop: {
                auto m = synth_rec(ctx, outer, t->kids[0]);
                require(m->type->kind == TypeKind::Stack, t, nullptr, m->type,
                        "pop scrutinee must be a stack");
                auto b1 = check_rec(ctx, outer, t->kids[1], want);
                no_shadow(ctx, outer, t->binders[0], t);
                no_shadow(ctx, outer, t->binders[1], t);
                if (t->binders[0] == t->binders[1])
                    throw TypeError(TypeErrKind::Shadowing, t->loc,
                                    "binders '" + t->binders[0] + "' collide");
                Ctx inner = ctx;
                inner.add(t->binders[0], m->type->a);
                inner.add(t->binders[1], m->type);
                auto b2 = check_rec(inner, outer, t->kids[2], want);
                return elim(t, want, ctx, m, b1, b2, {},
                            {t->binders[0], t->binders[1]});
            }
            case TermKind::LetPair: {
                auto m = synth_rec(ctx, outer, t->kids[0]);
                require(m->type->kind == TypeKind::Tensor, t, nullptr, m->type,
                        "letp scrutinee must be a tensor");
                no_shadow(ctx, outer, t->binders[0], t);
                no_shadow(ctx, outer, t->binders[1], t);
                if (t->binders[0] == t->binders[1])
                    throw TypeError(TypeErrKind::Shadowing, t->loc,
                                    "binders '" + t->binders[0] + "' collide");
                Ctx inner = ctx;
                inner.add(t->binders[0], m->type->a);
                inner.add(t->binders[1], m->type->b);
                auto body = check_rec(inner, outer, t->kids[1], want);
                std::set<std::string> bodyUsed = body->used;
                bodyUsed.erase(t->binders[0]);
                bodyUsed.erase(t->binders[1]);
                auto used = disjoint_union_sets(t, m->used, bodyUsed);
                return node(t, want, ctx, {m, body}, used);
            }
            case TermKind::Rec: {
                auto m = synth_rec(ctx, outer, t->kids[0]);
                require(m->type->kind == TypeKind::List, t, nullptr, m->type,
                        "rec scrutinee must be a list");
                auto base = check_rec(ctx, outer, t->kids[1], want);
                // The step is typed under exactly x_d:diam, x_h:A, x_t:B.
                Ctx step;
                distinct_binders(t);
                step.add(t->binders[0], t_diamond());
                step.add(t->binders[1], m->type->a);
                step.add(t->binders[2], want);
                auto stepT = check_rec(step, visible(ctx, outer), t->kids[2], want);
                auto used = disjoint_union_sets(t, m->used, base->used);
                return node(t, want, ctx, {m, base, stepT}, used);
            }
            case TermKind::TRec: {
                auto m = synth_rec(ctx, outer, t->kids[0]);
                require(m->type->kind == TypeKind::Tree, t, nullptr, m->type,
                        "trec scrutinee must be a tree");
                // Base case runs once per leaf: typed under the empty context.
                Ctx emptyCtx;
                auto base = check_rec(emptyCtx, visible(ctx, outer), t->kids[1], want);
                Ctx step;
                distinct_binders(t);
                step.add(t->binders[0], t_diamond());
                step.add(t->binders[1], m->type->a);
                step.add(t->binders[2], want);
                step.add(t->binders[3], want);
                auto stepT = check_rec(step, visible(ctx, outer), t->kids[2], want);
                return node(t, want, ctx, {m, base, stepT}, m->used);
            }
            case TermKind::Anno: {
                require_eq(t->anno, want, t);
                return check_rec(ctx, outer, t->kids[0], want);
            }
            case TermKind::App: {
                // Direct application of a lambda (from pattern desugaring):
                // infer the argument, then check the lambda.
                if (t->kids[0]->kind == TermKind::Lam) {
                    auto a = synth_rec(ctx, outer, t->kids[1]);
                    auto f = check_rec(ctx, outer, t->kids[0], t_arrow(a->type, want));
                    return node(t, want, ctx, {f, a}, disjoint_union(t, {f, a}));
                }
                auto s = synth_rec(ctx, outer, t);
                require_eq(s->type, want, t);
                return s;
            }
            case TermKind::Var:
            case TermKind::Proj: {
                auto s = synth_rec(ctx, outer, t);
                require_eq(s->type, want, t);
                return s;
            }
        }
        throw TypeError(TypeErrKind::Mismatch, t->loc, "unhandled term form");
    }

    TypedPtr synth_rec(const Ctx& ctx, const std::set<std::string>& outer,
                       const TermPtr& t) {
        switch (t->kind) {
            case TermKind::Var: {
                const TypePtr* ty = ctx.lookup(t->name);
                if (!ty) {
                    if (outer.count(t->name))
                        throw TypeError(TypeErrKind::ForbiddenCapture, t->loc,
                                        "'" + t->name +
                                            "' is bound outside a recursor body and "
                                            "may not be used inside it");
                    throw TypeError(TypeErrKind::Unbound, t->loc, "'" + t->name + "'");
                }
                auto n = node(t, *ty, ctx, {}, {t->name});
                return n;
            }
            case TermKind::Null:
                return leaf(t, t_unit(), ctx);
            case TermKind::Anno: {
                auto m = check_rec(ctx, outer, t->kids[0], t->anno);
                return m;
            }
            case TermKind::App: {
                TypedPtr f = synth_rec(ctx, outer, t->kids[0]);
                require(f->type->kind == TypeKind::Arrow, t, nullptr, f->type,
                        "only functions can be applied");
                auto a = check_rec(ctx, outer, t->kids[1], f->type->a);
                return node(t, f->type->b, ctx, {f, a}, disjoint_union(t, {f, a}));
            }
            case TermKind::Proj: {
                auto m = synth_rec(ctx, outer, t->kids[0]);
                require(m->type->kind == TypeKind::Prod, t, nullptr, m->type,
                        "projection needs a lazy pair");
                return node(t, t->idx == 1 ? m->type->a : m->type->b, ctx, {m}, m->used);
            }
            case TermKind::Pair: {
                auto m1 = synth_rec(ctx, outer, t->kids[0]);
                auto m2 = synth_rec(ctx, outer, t->kids[1]);
                return node(t, t_tensor(m1->type, m2->type), ctx, {m1, m2},
                            disjoint_union(t, {m1, m2}));
            }
            case TermKind::Record: {
                auto m1 = synth_rec(ctx, outer, t->kids[0]);
                auto m2 = synth_rec(ctx, outer, t->kids[1]);
                std::set<std::string> used = m1->used;
                used.insert(m2->used.begin(), m2->used.end());
                return node(t, t_prod(m1->type, m2->type), ctx, {m1, m2}, used);
            }
            case TermKind::Cons: {
                auto d = check_rec(ctx, outer, t->kids[0], t_diamond());
                auto h = synth_rec(ctx, outer, t->kids[1]);
                auto tl = check_rec(ctx, outer, t->kids[2], t_list(h->type));
                return node(t, t_list(h->type), ctx, {d, h, tl},
                            disjoint_union(t, {d, h, tl}));
            }
            case TermKind::Push: {
                auto h = synth_rec(ctx, outer, t->kids[0]);
                auto tl = check_rec(ctx, outer, t->kids[1], t_stack(h->type));
                return node(t, t_stack(h->type), ctx, {h, tl}, disjoint_union(t, {h, tl}));
            }
            case TermKind::LetPair: {
                auto m = synth_rec(ctx, outer, t->kids[0]);
                require(m->type->kind == TypeKind::Tensor, t, nullptr, m->type,
                        "letp scrutinee must be a tensor");
                no_shadow(ctx, outer, t->binders[0], t);
                no_shadow(ctx, outer, t->binders[1], t);
                Ctx inner = ctx;
                inner.add(t->binders[0], m->type->a);
                inner.add(t->binders[1], m->type->b);
                auto body = synth_rec(inner, outer, t->kids[1]);
                std::set<std::string> bodyUsed = body->used;
                bodyUsed.erase(t->binders[0]);
                bodyUsed.erase(t->binders[1]);
                auto used = disjoint_union_sets(t, m->used, bodyUsed);
                return node(t, body->type, ctx, {m, body}, used);
            }
            default:
                throw TypeError(TypeErrKind::CannotInfer, t->loc,
                                "this form needs an expected type");
        }
    }

    // ---- helpers ----

    TypedPtr leaf(const TermPtr& t, TypePtr ty, const Ctx&) {
        return node(t, std::move(ty), Ctx{}, {}, {});
    }

    TypedPtr node(const TermPtr& t, TypePtr ty, const Ctx& ambient,
                  std::vector<TypedPtr> kids, std::set<std::string> used) {
        auto n = std::make_shared<TypedTerm>();
        n->kind = t->kind;
        n->idx = t->idx;
        n->name = t->name;
        n->binders = t->binders;
        n->term = t;
        n->type = std::move(ty);
        n->kids = std::move(kids);
        n->used = used;
        n->ctx = tight_ctx(ambient, used);
        return n;
    }

    TypedPtr branch(const Ctx& ctx, const std::set<std::string>& outer,
                    const std::string& binder, const TypePtr& bty, const TermPtr& body,
                    const TypePtr& want, const TermPtr& at) {
        no_shadow(ctx, outer, binder, at);
        Ctx inner = ctx;
        inner.add(binder, bty);
        return check_rec(inner, outer, body, want);
    }

    TypedPtr elim(const TermPtr& t, const TypePtr& want, const Ctx& ctx,
                  const TypedPtr& m, const TypedPtr& b1, const TypedPtr& b2,
                  std::vector<std::string> binders1, std::vector<std::string> binders2) {
        std::set<std::string> u1 = b1->used, u2 = b2->used;
        for (auto& b : binders1) u1.erase(b);
        for (auto& b : binders2) u2.erase(b);
        std::set<std::string> branches = u1;
        branches.insert(u2.begin(), u2.end());
        auto used = disjoint_union_sets(t, m->used, branches);
        return node(t, want, ctx, {m, b1, b2}, used);
    }

    static Ctx tight_ctx(const Ctx& ambient, const std::set<std::string>& used) {
        Ctx out;
        for (auto& [n, ty] : ambient.entries)
            if (used.count(n)) out.add(n, ty);
        return out;
    }

    static std::set<std::string> visible(const Ctx& ctx, const std::set<std::string>& outer) {
        std::set<std::string> v = outer;
        for (auto& [n, ty] : ctx.entries) v.insert(n);
        return v;
    }

    void distinct_binders(const TermPtr& t) {
        for (size_t i = 0; i < t->binders.size(); ++i)
            for (size_t j = i + 1; j < t->binders.size(); ++j)
                if (t->binders[i] == t->binders[j])
                    throw TypeError(TypeErrKind::Shadowing, t->loc,
                                    "binders '" + t->binders[i] + "' collide");
    }

    void no_shadow(const Ctx& ctx, const std::set<std::string>& outer,
                   const std::string& x, const TermPtr& at) {
        if (ctx.lookup(x) || outer.count(x))
            throw TypeError(TypeErrKind::Shadowing, at->loc,
                            "binder '" + x + "' shadows an existing variable");
    }

    std::set<std::string> disjoint_union(const TermPtr& t,
                                         const std::vector<TypedPtr>& kids) {
        std::set<std::string> acc;
        for (auto& k : kids) acc = disjoint_union_sets(t, acc, k->used);
        return acc;
    }

    std::set<std::string> disjoint_union_sets(const TermPtr& t,
                                              const std::set<std::string>& a,
                                              const std::set<std::string>& b) {
        std::set<std::string> out = a;
        for (auto& x : b) {
            if (out.count(x))
                throw TypeError(TypeErrKind::Reused, t->loc, "'" + x + "'");
            out.insert(x);
        }
        return out;
    }

    void require(bool ok, const TermPtr& t, TypePtr want, TypePtr got,
                 const std::string& detail = "") {
        if (!ok)
            throw TypeError(TypeErrKind::Mismatch, t->loc,
                            detail.empty()
                                ? (want && got ? "expected " + print_type(want) +
                                                     ", found " + print_type(got)
                                               : "ill-typed term")
                                : detail + (want ? " (expected " + print_type(want) + ")"
                                                 : ""),
                            want, got);
    }

    void require_eq(const TypePtr& got, const TypePtr& want, const TermPtr& t) {
        if (!type_eq(got, want))
            throw TypeError(TypeErrKind::Mismatch, t->loc,
                            "expected " + print_type(want) + ", found " + print_type(got),
                            want, got);
    }
};

inline TypedPtr check(const Ctx& ctx, const TermPtr& t, const TypePtr& expected) {
    return Checker().check(ctx, t, expected);
}

inline std::set<std::string> infer_usage(const Ctx& ctx, const TermPtr& t,
                                         const TypePtr& expected) {
    return check(ctx, t, expected)->used;
}

// ---------------------------------------------------------------------------
// Derivation replayer: validates the splitting annotations bottom-up.
// ---------------------------------------------------------------------------

inline void replay_node(const TypedTerm& n, std::string& err) {
    auto fail = [&](const std::string& m) {
        if (err.empty()) err = m;
    };
    auto sub = [](std::set<std::string> s, const std::vector<std::string>& bs) {
        for (auto& b : bs) s.erase(b);
        return s;
    };
    auto expect_partition = [&](std::vector<std::set<std::string>> parts) {
        std::set<std::string> all;
        for (auto& p : parts)
            for (auto& x : p) {
                if (all.count(x)) fail("premise partitions overlap on '" + x + "'");
                all.insert(x);
            }
        if (all != n.used) fail("union of premise partitions differs from node usage");
    };
    switch (n.kind) {
        case TermKind::Pair:
        case TermKind::Push:
            expect_partition({n.kids[0]->used, n.kids[1]->used});
            break;
        case TermKind::App:
            expect_partition({n.kids[0]->used, n.kids[1]->used});
            if (n.kids[0]->type->kind != TypeKind::Arrow ||
                !type_eq(n.kids[0]->type->b, n.type) ||
                !type_eq(n.kids[0]->type->a, n.kids[1]->type))
                fail("application types inconsistent");
            break;
        case TermKind::Cons:
            expect_partition({n.kids[0]->used, n.kids[1]->used, n.kids[2]->used});
            break;
        case TermKind::Node:
            expect_partition(
                {n.kids[0]->used, n.kids[1]->used, n.kids[2]->used, n.kids[3]->used});
            break;
        case TermKind::LetPair:
            expect_partition({n.kids[0]->used, sub(n.kids[1]->used, n.binders)});
            break;
        case TermKind::Case: {
            auto u1 = sub(n.kids[1]->used, {n.binders[0]});
            auto u2 = sub(n.kids[2]->used, {n.binders[1]});
            std::set<std::string> branches = u1;
            branches.insert(u2.begin(), u2.end());
            expect_partition({n.kids[0]->used, branches});
            break;
        }
        case TermKind::Pop: {
            auto u1 = n.kids[1]->used;
            auto u2 = sub(n.kids[2]->used, n.binders);
            std::set<std::string> branches = u1;
            branches.insert(u2.begin(), u2.end());
            expect_partition({n.kids[0]->used, branches});
            break;
        }
        case TermKind::Rec: {
            expect_partition({n.kids[0]->used, n.kids[1]->used});
            // step draws from the fixed binder context only
            for (auto& u : n.kids[2]->used)
                if (std::find(n.binders.begin(), n.binders.end(), u) == n.binders.end())
                    fail("rec step uses '" + u + "' outside its binders");
            if (n.kids[2]->ctx.size() > 3) fail("rec step context too large");
            break;
        }
        case TermKind::TRec: {
            expect_partition({n.kids[0]->used});
            if (!n.kids[1]->used.empty()) fail("trec base must be closed");
            for (auto& u : n.kids[2]->used)
                if (std::find(n.binders.begin(), n.binders.end(), u) == n.binders.end())
                    fail("trec step uses '" + u + "' outside its binders");
            break;
        }
        case TermKind::Lam:
            if (sub(n.kids[0]->used, n.binders) != n.used)
                fail("lambda usage annotation inconsistent");
            break;
        case TermKind::Record: {
            std::set<std::string> u = n.kids[0]->used;
            u.insert(n.kids[1]->used.begin(), n.kids[1]->used.end());
            if (u != n.used) fail("record usage annotation inconsistent");
            break;
        }
        case TermKind::Inj:
        case TermKind::Proj:
            if (n.kids[0]->used != n.used) fail("unary node usage inconsistent");
            break;
        case TermKind::Var:
            if (n.used != std::set<std::string>{n.name}) fail("var usage inconsistent");
            break;
        default:
            if (!n.kids.empty()) fail("unexpected children");
            if (!n.used.empty()) fail("leaf must not consume variables");
    }
    for (auto& k : n.kids) replay_node(*k, err);
}

// Returns an empty string when the annotation replays as a valid derivation.
inline std::string replay_derivation(const TypedPtr& t) {
    std::string err;
    replay_node(*t, err);
    return err;
}

// ---------------------------------------------------------------------------
// dup synthesis for diamond-free types: a closed term A -o A * A returning
// two copies of its input.
// ---------------------------------------------------------------------------

inline TermPtr gen_dup_body(const TypePtr& a, const TermPtr& x, int& c);

inline TermPtr gen_dup(const TypePtr& a) {
    if (!is_diamond_free(a))
        throw TypeError(TypeErrKind::Mismatch, {},
                        "dup exists only at diamond-free types, not " + print_type(a));
    int c = 0;
    std::string x = "x";
    auto body = gen_dup_body(a, mk_term(TermKind::Var, {}, {}, 0, x), c);
    return mk_term(TermKind::Lam, {body}, {x});
}

// Builds a term of type A * A that consumes `x : A` exactly once. Recursive
// results are ascribed so they can stand in scrutinee position.
inline TermPtr gen_dup_body(const TypePtr& a, const TermPtr& x, int& c) {
    auto var = [](const std::string& n) { return mk_term(TermKind::Var, {}, {}, 0, n); };
    auto ascribe = [](TermPtr m, const TypePtr& side) {
        auto t = std::make_shared<Term>();
        t->kind = TermKind::Anno;
        t->kids = {std::move(m)};
        t->anno = t_tensor(side, side);
        return TermPtr(t);
    };
    switch (a->kind) {
        case TypeKind::Unit: {
            // the only inhabitant is <>; drop x
            auto unit = mk_term(TermKind::Null);
            // consume x by eliminating nothing: x may simply go unused (affine)
            (void)x;
            return mk_term(TermKind::Pair, {unit, mk_term(TermKind::Null)});
        }
        case TypeKind::Sum: {
            std::string y1 = "a" + std::to_string(c++);
            std::string y2 = "b" + std::to_string(c++);
            std::string p1 = "l" + std::to_string(c++);
            std::string p2 = "r" + std::to_string(c++);
            auto mkBranch = [&](const TypePtr& side, const std::string& y, int which,
                                const std::string& l, const std::string& r) {
                auto inner = ascribe(gen_dup_body(side, var(y), c), side);
                auto body = mk_term(
                    TermKind::Pair,
                    {mk_term(TermKind::Inj, {var(l)}, {}, which),
                     mk_term(TermKind::Inj, {var(r)}, {}, which)});
                return mk_term(TermKind::LetPair, {inner, body}, {l, r});
            };
            auto n1 = mkBranch(a->a, y1, 1, p1, p2);
            auto n2 = mkBranch(a->b, y2, 2, p1, p2);
            return mk_term(TermKind::Case, {x, n1, n2}, {y1, y2});
        }
        case TypeKind::Tensor: {
            std::string u = "u" + std::to_string(c++);
            std::string v = "v" + std::to_string(c++);
            std::string u1 = "u" + std::to_string(c++);
            std::string u2 = "u" + std::to_string(c++);
            std::string v1 = "v" + std::to_string(c++);
            std::string v2 = "v" + std::to_string(c++);
            auto inner =
                mk_term(TermKind::LetPair,
                        {ascribe(gen_dup_body(a->b, var(v), c), a->b),
                         mk_term(TermKind::Pair,
                                 {mk_term(TermKind::Pair, {var(u1), var(v1)}),
                                  mk_term(TermKind::Pair, {var(u2), var(v2)})})},
                        {v1, v2});
            auto mid = mk_term(TermKind::LetPair,
                               {ascribe(gen_dup_body(a->a, var(u), c), a->a), inner},
                               {u1, u2});
            return mk_term(TermKind::LetPair, {x, mid}, {u, v});
        }
        default:
            throw TypeError(TypeErrKind::Mismatch, {}, "not diamond-free");
    }
}

}  // namespace lfpl
