#pragma once

#include <optional>
#include <random>

#include "lfpl/build.hpp"
#include "lfpl/eval.hpp"

namespace lfpl {

// ---------------------------------------------------------------------------
// Seeded generator of well-typed terms, values and environments for the
// property suites. Generation is goal-directed: every multi-premise node
// splits the available context, recursor bodies draw only from their binders,
// and scrutinees get ascriptions so the checker can synthesize them.
// A fixed seed reproduces the exact same population.
// ---------------------------------------------------------------------------

class TermGen {
public:
    explicit TermGen(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    TypePtr gen_type(int depth, bool allowDiamond = true) {
        int roll = pick(depth <= 0 ? 2 : (allowDiamond ? 10 : 9));
        switch (roll) {
            case 0: return t_unit();
            case 1: return t_sum(gen_type(depth - 1, allowDiamond),
                                 gen_type(depth - 1, allowDiamond));
            case 2: return t_tensor(gen_type(depth - 1, allowDiamond),
                                    gen_type(depth - 1, allowDiamond));
            case 3: return t_list(gen_type(depth - 1, allowDiamond));
            case 4: return t_sum(t_unit(), t_unit());
            case 5: return t_arrow(gen_type(depth - 1, false), gen_type(depth - 1, false));
            case 6: return t_prod(gen_type(depth - 1, allowDiamond),
                                  gen_type(depth - 1, allowDiamond));
            case 7: return t_stack(gen_type(depth - 1, allowDiamond));
            case 8: return t_tree(gen_type(depth - 1, allowDiamond));
            default: return t_diamond();
        }
    }

    // A term of the goal type under ctx, or nothing if the corner is
    // uninhabited (e.g. a closed diamond).
    std::optional<TermPtr> gen_term(const Ctx& ctx, const TypePtr& goal, int depth) {
        std::vector<int> options;
        for (int i = 0; i < 12; ++i) options.push_back(i);
        std::shuffle(options.begin(), options.end(), rng_);
        // try intro/var early at the fringe
        if (depth <= 0)
            std::stable_sort(options.begin(), options.end(),
                             [](int a, int b) { return (a <= 1) > (b <= 1); });
        for (int opt : options) {
            auto r = try_option(opt, ctx, goal, depth);
            if (r) return r;
        }
        return std::nullopt;
    }

    // A value of the type; closures come from evaluating small closed terms.
    std::optional<ValuePtr> gen_value(const TypePtr& t, int depth = 3) {
        switch (t->kind) {
            case TypeKind::Diamond: return v_diamond();
            case TypeKind::Unit: return v_null();
            case TypeKind::Sum: {
                int side = pick(2);
                auto inner = gen_value(side ? t->b : t->a, depth);
                if (!inner) inner = gen_value(side ? t->a : t->b, depth);
                if (!inner) return std::nullopt;
                // recompute which side actually succeeded
                if (value_types(*inner, side ? t->b : t->a))
                    return v_inj(side ? 2 : 1, *inner);
                return v_inj(side ? 1 : 2, *inner);
            }
            case TypeKind::Tensor: {
                auto a = gen_value(t->a, depth);
                auto b = gen_value(t->b, depth);
                if (!a || !b) return std::nullopt;
                return v_pair(*a, *b);
            }
            case TypeKind::List: {
                int n = depth <= 0 ? 0 : pick(4);
                ValuePtr acc = v_nil();
                for (int i = 0; i < n; ++i) {
                    auto e = gen_value(t->a, depth - 1);
                    if (!e) break;
                    acc = v_cons(*e, acc);
                }
                return acc;
            }
            case TypeKind::Stack: {
                int n = depth <= 0 ? 0 : pick(4);
                ValuePtr acc = v_empty();
                for (int i = 0; i < n; ++i) {
                    auto e = gen_value(t->a, depth - 1);
                    if (!e) break;
                    acc = v_push(*e, acc);
                }
                return acc;
            }
            case TypeKind::Tree: {
                if (depth <= 0 || pick(2) == 0) return v_leaf();
                auto x = gen_value(t->a, depth - 1);
                auto l = gen_value(t, depth - 1);
                auto r = gen_value(t, depth - 1);
                if (!x || !l || !r) return v_leaf();
                return v_node(*x, *l, *r);
            }
            case TypeKind::Arrow:
            case TypeKind::Prod: {
                for (int attempt = 0; attempt < 4; ++attempt) {
                    auto m = gen_term(Ctx{}, t, 2);
                    if (!m) continue;
                    try {
                        TypedPtr typed = check(Ctx{}, *m, t);
                        return eval(nullptr, typed, CostModel{}, 100000).value;
                    } catch (...) {
                        continue;
                    }
                }
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    // A random context together with matching values.
    std::pair<Ctx, EnvPtr> gen_ctx_env(int maxVars = 4) {
        Ctx ctx;
        EnvPtr env = nullptr;
        int n = pick(maxVars + 1);
        for (int i = 0; i < n; ++i) {
            TypePtr ty = gen_type(2);
            auto v = gen_value(ty);
            if (!v) continue;
            std::string name = fresh("e");
            ctx.add(name, ty);
            env = env_cons(env, name, *v);
        }
        return {ctx, env};
    }

private:
    std::mt19937_64 rng_;
    int fresh_ = 0;

    int pick(int n) { return static_cast<int>(rng_() % std::max(1, n)); }
    std::string fresh(const std::string& h) { return "g$" + h + std::to_string(fresh_++); }

    static TermPtr ascribe(TermPtr m, TypePtr ty) {
        auto t = std::make_shared<Term>();
        t->kind = TermKind::Anno;
        t->kids = {std::move(m)};
        t->anno = std::move(ty);
        return t;
    }

    // Split ctx into two disjoint parts; a few entries may be dropped.
    std::pair<Ctx, Ctx> split(const Ctx& ctx) {
        Ctx a, b;
        for (auto& [n, ty] : ctx.entries) {
            switch (pick(5)) {
                case 0: break;  // dropped (weakening)
                case 1:
                case 2: a.add(n, ty); break;
                default: b.add(n, ty); break;
            }
        }
        return {a, b};
    }

    std::optional<TermPtr> try_option(int opt, const Ctx& ctx, const TypePtr& goal,
                                      int depth) {
        using namespace build;
        switch (opt) {
            case 0: {  // exact variable
                std::vector<const std::pair<std::string, TypePtr>*> hits;
                for (auto& e : ctx.entries)
                    if (type_eq(e.second, goal)) hits.push_back(&e);
                if (hits.empty()) return std::nullopt;
                return V(hits[pick((int)hits.size())]->first);
            }
            case 1:
                return intro(ctx, goal, depth);
            case 2: {  // case elimination
                if (depth <= 0) return std::nullopt;
                auto [cs, cr] = split(ctx);
                TypePtr sumT = t_sum(gen_type(1), gen_type(1));
                auto scrut = gen_term(cs, sumT, depth - 1);
                if (!scrut) return std::nullopt;
                std::string x1 = fresh("c"), x2 = fresh("c");
                Ctx b1 = cr, b2 = cr;
                b1.add(x1, sumT->a);
                b2.add(x2, sumT->b);
                auto n1 = gen_term(b1, goal, depth - 1);
                auto n2 = gen_term(b2, goal, depth - 1);
                if (!n1 || !n2) return std::nullopt;
                return cse(ascribe(*scrut, sumT), x1, *n1, x2, *n2);
            }
            case 3: {  // letp
                if (depth <= 0) return std::nullopt;
                auto [cs, cr] = split(ctx);
                TypePtr tenT = t_tensor(gen_type(1), gen_type(1));
                auto scrut = gen_term(cs, tenT, depth - 1);
                if (!scrut) return std::nullopt;
                std::string x1 = fresh("p"), x2 = fresh("p");
                Ctx inner = cr;
                inner.add(x1, tenT->a);
                inner.add(x2, tenT->b);
                auto body = gen_term(inner, goal, depth - 1);
                if (!body) return std::nullopt;
                return letp(x1, x2, ascribe(*scrut, tenT), *body);
            }
            case 4: {  // application
                if (depth <= 0) return std::nullopt;
                auto [cf, ca] = split(ctx);
                TypePtr argT = gen_type(1, false);
                auto f = gen_term(cf, t_arrow(argT, goal), depth - 1);
                auto a = gen_term(ca, argT, depth - 1);
                if (!f || !a) return std::nullopt;
                return app(ascribe(*f, t_arrow(argT, goal)), *a);
            }
            case 5: {  // projection
                if (depth <= 0) return std::nullopt;
                TypePtr other = gen_type(1);
                int side = pick(2) + 1;
                TypePtr prodT = side == 1 ? t_prod(goal, other) : t_prod(other, goal);
                auto m = gen_term(ctx, prodT, depth - 1);
                if (!m) return std::nullopt;
                return proj(side, ascribe(*m, prodT));
            }
            case 6: {  // list recursion
                if (depth <= 0) return std::nullopt;
                auto [cs, cr] = split(ctx);
                TypePtr elemT = gen_type(1);
                auto scrut = gen_term(cs, t_list(elemT), depth - 1);
                if (!scrut) return std::nullopt;
                auto base = gen_term(cr, goal, depth - 1);
                if (!base) return std::nullopt;
                std::string xd = fresh("d"), xh = fresh("h"), xt = fresh("t");
                Ctx stepCtx;
                stepCtx.add(xd, t_diamond());
                stepCtx.add(xh, elemT);
                stepCtx.add(xt, goal);
                auto step = gen_term(stepCtx, goal, depth - 1);
                if (!step) return std::nullopt;
                return rec(ascribe(*scrut, t_list(elemT)), *base, xd, xh, xt, *step);
            }
            case 7: {  // stack pop
                if (depth <= 0) return std::nullopt;
                auto [cs, cr] = split(ctx);
                TypePtr elemT = gen_type(1);
                auto scrut = gen_term(cs, t_stack(elemT), depth - 1);
                if (!scrut) return std::nullopt;
                auto base = gen_term(cr, goal, depth - 1);
                if (!base) return std::nullopt;
                std::string xh = fresh("s"), xt = fresh("s");
                Ctx inner = cr;
                inner.add(xh, elemT);
                inner.add(xt, t_stack(elemT));
                auto step = gen_term(inner, goal, depth - 1);
                if (!step) return std::nullopt;
                return pop(ascribe(*scrut, t_stack(elemT)), *base, xh, xt, *step);
            }
            case 8: {  // tree recursion
                if (depth <= 0) return std::nullopt;
                TypePtr elemT = gen_type(1);
                auto scrut = gen_term(ctx, t_tree(elemT), depth - 1);
                if (!scrut) return std::nullopt;
                auto base = gen_term(Ctx{}, goal, depth - 1);  // base must be closed
                if (!base) return std::nullopt;
                std::string xd = fresh("d"), xx = fresh("x"), xl = fresh("l"),
                            xr = fresh("r");
                Ctx stepCtx;
                stepCtx.add(xd, t_diamond());
                stepCtx.add(xx, elemT);
                stepCtx.add(xl, goal);
                stepCtx.add(xr, goal);
                auto step = gen_term(stepCtx, goal, depth - 1);
                if (!step) return std::nullopt;
                return trec(ascribe(*scrut, t_tree(elemT)), *base, xd, xx, xl, xr, *step);
            }
            default:
                return std::nullopt;
        }
    }

    std::optional<TermPtr> intro(const Ctx& ctx, const TypePtr& goal, int depth) {
        using namespace build;
        switch (goal->kind) {
            case TypeKind::Diamond:
                return std::nullopt;  // diamonds cannot be introduced
            case TypeKind::Unit:
                return nul();
            case TypeKind::Sum: {
                int side = pick(2);
                auto inner = gen_term(ctx, side ? goal->b : goal->a, depth - 1);
                if (inner) return inj(side ? 2 : 1, *inner);
                inner = gen_term(ctx, side ? goal->a : goal->b, depth - 1);
                if (inner) return inj(side ? 1 : 2, *inner);
                return std::nullopt;
            }
            case TypeKind::Tensor: {
                auto [ca, cb] = split(ctx);
                auto a = gen_term(ca, goal->a, depth - 1);
                auto b = gen_term(cb, goal->b, depth - 1);
                if (!a || !b) return std::nullopt;
                return pair(*a, *b);
            }
            case TypeKind::Prod: {  // both sides share the context
                auto a = gen_term(ctx, goal->a, depth - 1);
                auto b = gen_term(ctx, goal->b, depth - 1);
                if (!a || !b) return std::nullopt;
                return record(*a, *b);
            }
            case TypeKind::Arrow: {
                std::string x = fresh("a");
                Ctx inner = ctx;
                inner.add(x, goal->a);
                auto body = gen_term(inner, goal->b, depth - 1);
                if (!body) return std::nullopt;
                return lam(x, *body);
            }
            case TypeKind::List: {
                if (depth <= 0 || pick(3) == 0) return nil();
                auto [cd, crest] = split(ctx);
                auto d = gen_term(cd, t_diamond(), depth - 1);
                if (!d) return nil();
                auto [ch, ct] = split(crest);
                auto h = gen_term(ch, goal->a, depth - 1);
                auto t = gen_term(ct, goal, depth - 1);
                if (!h || !t) return nil();
                return cons(*d, *h, *t);
            }
            case TypeKind::Stack: {
                if (depth <= 0 || pick(3) == 0) return emp();
                auto [ch, ct] = split(ctx);
                auto h = gen_term(ch, goal->a, depth - 1);
                auto t = gen_term(ct, goal, depth - 1);
                if (!h || !t) return emp();
                return push(*h, *t);
            }
            case TypeKind::Tree: {
                if (depth <= 0 || pick(3) == 0) return leaf();
                auto [cd, crest] = split(ctx);
                auto d = gen_term(cd, t_diamond(), depth - 1);
                if (!d) return leaf();
                auto [cx, clr] = split(crest);
                auto x = gen_term(cx, goal->a, depth - 1);
                auto [cl, cr2] = split(clr);
                auto l = gen_term(cl, goal, depth - 1);
                auto r = gen_term(cr2, goal, depth - 1);
                if (!x || !l || !r) return leaf();
                return node(*d, *x, *l, *r);
            }
        }
        return std::nullopt;
    }
};

// Rebuilds the environment with its entries in a shuffled order; the
// name-to-value mapping is unchanged.
inline EnvPtr env_shuffle(const EnvPtr& env, std::mt19937_64& rng) {
    std::vector<std::pair<std::string, ValuePtr>> entries;
    for (const Env* e = env.get(); e; e = e->tail.get())
        entries.emplace_back(e->name, e->val);
    std::shuffle(entries.begin(), entries.end(), rng);
    EnvPtr out = nullptr;
    for (auto& [n, v] : entries) out = env_cons(out, n, v);
    return out;
}

}  // namespace lfpl
