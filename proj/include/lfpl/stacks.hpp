#pragma once

#include "lfpl/costpoly.hpp"
#include "lfpl/denot.hpp"
#include "lfpl/stdlib.hpp"

namespace lfpl {

// ---------------------------------------------------------------------------
// Bounded stacks: a state type S with closed terms
//   empty : S
//   push  : (L(1))^k -o (A * S) -o ((L(1))^k * (S * (A + 1)))
//   pop   : (L(1))^k -o S -o ((L(1))^k * (S * (1 + A)))
// that borrow a k-tuple of unit lists as working diamonds and hand it back.
// The left branch of the result sum signals failure (full / empty), in which
// case the stack is unchanged.
// ---------------------------------------------------------------------------

// (L(1))^k as a right-nested tuple ending in 1, so that the (k+1)-tuple is
// always a pair of a list and a k-tuple.
inline TypePtr pow_type(size_t k) {
    return k == 0 ? t_unit() : t_tensor(t_list(t_unit()), pow_type(k - 1));
}

// m_{n,k}: k unit lists of length n each, nk diamonds in total.
inline ValuePtr m_value(size_t n, size_t k) {
    return k == 0 ? v_null() : v_pair(v_unit_list(n), m_value(n, k - 1));
}
inline DenPtr m_den(size_t n, size_t k) {
    return k == 0 ? d_star() : d_pair(d_unit_list(n), m_den(n, k - 1));
}

using BoundFn = std::function<unsigned long long(unsigned long long)>;

struct StackImpl {
    TypePtr elem;
    size_t arity = 0;
    TypePtr state;
    TermPtr empty_tm, push_tm, pop_tm;
    TypedPtr empty_ty, push_ty, pop_ty;
    CostPoly bound_poly;   // exact for combinator-built stacks
    BoundFn bound;         // B(n)
    // host-level correctness oracles, parameterized by n
    std::function<bool(const DenPtr&, unsigned long long)> valid;
    std::function<std::vector<DenPtr>(const DenPtr&, unsigned long long)> items;
    // cached denotations of the three terms
    DenPtr den_empty, den_push, den_pop;

    TypePtr push_type() const {
        return t_arrow(pow_type(arity),
                       t_arrow(t_tensor(elem, state),
                               t_tensor(pow_type(arity),
                                        t_tensor(state, t_sum(elem, t_unit())))));
    }
    TypePtr pop_type() const {
        return t_arrow(pow_type(arity),
                       t_arrow(state, t_tensor(pow_type(arity),
                                               t_tensor(state, t_sum(t_unit(), elem)))));
    }
};

namespace stackbuild {

using namespace build;

inline TermPtr anno(TermPtr m, TypePtr ty) {
    auto a = std::make_shared<Term>();
    a->kind = TermKind::Anno;
    a->kids = {std::move(m)};
    a->anno = std::move(ty);
    return a;
}

// Checks the three terms, fills in the typed forms and denotations.
inline void finish(StackImpl& s) {
    s.empty_ty = check(Ctx{}, s.empty_tm, s.state);
    s.push_ty = check(Ctx{}, s.push_tm, s.push_type());
    s.pop_ty = check(Ctx{}, s.pop_tm, s.pop_type());
    s.den_empty = den_eval(s.empty_ty, {});
    s.den_push = den_eval(s.push_ty, {});
    s.den_pop = den_eval(s.pop_ty, {});
}

// ---- constant stack: S = (1 + A)^c, bound B(n) = c, arity 0 ----
//
// A slot is inj1 <> when free and inj2 a when occupied; valid states are a
// run of free slots followed by a run of occupied ones. The tail of the tuple
// behaves like a smaller constant stack: push fills the tail first, pop
// drains the head first.

inline TermPtr const_state_type_empty(const TypePtr& slot, size_t c) {
    return c == 0 ? nul() : pair(inj(1, nul()), const_state_type_empty(slot, c - 1));
}

inline TypePtr const_state_type(const TypePtr& A, size_t c) {
    TypePtr slot = t_sum(t_unit(), A);
    TypePtr s = t_unit();
    for (size_t i = 0; i < c; ++i) s = t_tensor(slot, s);
    return s;
}

inline StackImpl stack_const(const TypePtr& A, size_t c, NameGen& g) {
    StackImpl out;
    out.elem = A;
    out.arity = 0;
    out.state = const_state_type(A, c);
    out.empty_tm = const_state_type_empty(t_sum(t_unit(), A), c);
    out.bound_poly = CostPoly::constant((unsigned long)c);
    out.bound = [c](unsigned long long) { return (unsigned long long)c; };

    // push_0 / pop_0 always fail; push_c / pop_c delegate to the tail.
    TypePtr unitT = t_unit();
    std::vector<TypePtr> states(c + 1);
    for (size_t i = 0; i <= c; ++i) states[i] = const_state_type(A, i);
    auto pushTypeAt = [&](size_t i) {
        return t_arrow(unitT, t_arrow(t_tensor(A, states[i]),
                                      t_tensor(unitT, t_tensor(states[i],
                                                               t_sum(A, t_unit())))));
    };
    auto popTypeAt = [&](size_t i) {
        return t_arrow(unitT,
                       t_arrow(states[i], t_tensor(unitT, t_tensor(states[i],
                                                                   t_sum(t_unit(), A)))));
    };

    std::string m0 = g("m"), xs0 = g("xs"), x0 = g("x"), s0 = g("s");
    TermPtr pushAcc = lam(m0, lam(xs0, letp(x0, s0, V(xs0),
                                            pair(V(m0), pair(V(s0), inj(1, V(x0)))))));
    std::string pm0 = g("m"), ps0 = g("s");
    TermPtr popAcc = lam(pm0, lam(ps0, pair(V(pm0), pair(V(ps0), inj(1, nul())))));

    for (size_t i = 1; i <= c; ++i) {
        TermPtr innerPush = anno(pushAcc, pushTypeAt(i - 1));
        TermPtr innerPop = anno(popAcc, popTypeAt(i - 1));
        {
            std::string m = g("m"), xs = g("xs"), x = g("x"), s = g("s");
            std::string h = g("h"), t = g("t"), m2 = g("m"), r1 = g("r");
            std::string t2 = g("t"), res = g("res"), xf = g("x"), u = g("u");
            std::string hu = g("h"), hx = g("h");
            TermPtr full = pair(V(m2), pair(pair(inj(2, V(hx)), V(t2)), inj(1, V(xf))));
            TermPtr occupyHead =
                pair(V(m2), pair(pair(inj(2, V(xf)), V(t2)), inj(2, V(hu))));
            TermPtr onFail = cse(V(h), hu, occupyHead, hx, full);
            TermPtr onOk = pair(V(m2), pair(pair(V(h), V(t2)), inj(2, V(u))));
            TermPtr body = letp(
                x, s, V(xs),
                letp(h, t, V(s),
                     letp(m2, r1, app(innerPush, V(m), pair(V(x), V(t))),
                          letp(t2, res, V(r1), cse(V(res), xf, onFail, u, onOk)))));
            pushAcc = lam(m, lam(xs, body));
        }
        {
            std::string m = g("m"), s = g("s"), h = g("h"), t = g("t");
            std::string hu = g("h"), hx = g("h"), m2 = g("m"), r1 = g("r");
            std::string t2 = g("t"), res = g("res");
            TermPtr takeHead = pair(V(m), pair(pair(inj(1, nul()), V(t)), inj(2, V(hx))));
            TermPtr delegate =
                letp(m2, r1, app(innerPop, V(m), V(t)),
                     letp(t2, res, V(r1),
                          pair(V(m2), pair(pair(inj(1, V(hu)), V(t2)), V(res)))));
            TermPtr body = letp(h, t, V(s), cse(V(h), hu, delegate, hx, takeHead));
            popAcc = lam(m, lam(s, body));
        }
    }
    out.push_tm = pushAcc;
    out.pop_tm = popAcc;

    size_t cc = c;
    out.valid = [cc](const DenPtr& s, unsigned long long) {
        const DenValue* cur = s.get();
        bool seenOccupied = false;
        for (size_t i = 0; i < cc; ++i) {
            if (cur->kind != DenKind::Pair) return false;
            const DenPtr& slot = cur->a;
            if (slot->kind != DenKind::Inj) return false;
            if (slot->idx == 2) seenOccupied = true;
            else if (seenOccupied) return false;  // free after occupied
            cur = cur->b.get();
        }
        return cur->kind == DenKind::Star;
    };
    out.items = [cc](const DenPtr& s, unsigned long long) {
        std::vector<DenPtr> out;
        const DenValue* cur = s.get();
        for (size_t i = 0; i < cc; ++i) {
            if (cur->a->idx == 2) out.push_back(cur->a->a);
            cur = cur->b.get();
        }
        return out;
    };
    finish(out);
    return out;
}

// ---- weakened stack: same behavior at arity k+1, the extra list is unused ----

inline StackImpl stack_weaken(const StackImpl& inner, NameGen& g) {
    StackImpl out = inner;
    out.arity = inner.arity + 1;
    {
        std::string m = g("m"), xs = g("xs"), l = g("l"), mk = g("mk");
        std::string mk2 = g("mk"), rest = g("r");
        TermPtr innerPush = anno(inner.push_tm, inner.push_type());
        out.push_tm =
            lam(m, lam(xs, letp(l, mk, V(m),
                                letp(mk2, rest, app(innerPush, V(mk), V(xs)),
                                     pair(pair(V(l), V(mk2)), V(rest))))));
    }
    {
        std::string m = g("m"), s = g("s"), l = g("l"), mk = g("mk");
        std::string mk2 = g("mk"), rest = g("r");
        TermPtr innerPop = anno(inner.pop_tm, inner.pop_type());
        out.pop_tm =
            lam(m, lam(s, letp(l, mk, V(m),
                               letp(mk2, rest, app(innerPop, V(mk), V(s)),
                                    pair(pair(V(l), V(mk2)), V(rest))))));
    }
    finish(out);
    return out;
}

// ---- additive stack: S = S1 * S2, bound B1 + B2 ----
//
// The first component holds the overflow section: it is only nonempty when
// the second is full, so push tries s2 first and pop tries s1 first.

inline StackImpl stack_add(const StackImpl& s1, const StackImpl& s2, NameGen& g) {
    if (s1.arity != s2.arity || !type_eq(s1.elem, s2.elem))
        throw std::logic_error("stack_add needs equal arity and element type");
    StackImpl out;
    out.elem = s1.elem;
    out.arity = s1.arity;
    out.state = t_tensor(s1.state, s2.state);
    out.empty_tm = pair(anno(s1.empty_tm, s1.state), anno(s2.empty_tm, s2.state));
    out.bound_poly = poly_add(s1.bound_poly, s2.bound_poly);
    auto b1 = s1.bound, b2 = s2.bound;
    out.bound = [b1, b2](unsigned long long n) { return b1(n) + b2(n); };

    {
        std::string m = g("m"), xs = g("xs"), x = g("x"), s = g("s");
        std::string sa = g("sa"), sb = g("sb"), m1 = g("m"), r1 = g("r");
        std::string sb2 = g("sb"), res2 = g("res"), xf = g("x"), u = g("u");
        std::string m2 = g("m"), r2 = g("r"), sa2 = g("sa"), res1 = g("res");
        TermPtr push1 = anno(s1.push_tm, s1.push_type());
        TermPtr push2 = anno(s2.push_tm, s2.push_type());
        TermPtr overflow =
            letp(m2, r2, app(push1, V(m1), pair(V(xf), V(sa))),
                 letp(sa2, res1, V(r2),
                      pair(V(m2), pair(pair(V(sa2), V(sb2)), V(res1)))));
        TermPtr fit = pair(V(m1), pair(pair(V(sa), V(sb2)), inj(2, V(u))));
        TermPtr body =
            letp(x, s, V(xs),
                 letp(sa, sb, V(s),
                      letp(m1, r1, app(push2, V(m), pair(V(x), V(sb))),
                           letp(sb2, res2, V(r1), cse(V(res2), xf, overflow, u, fit)))));
        out.push_tm = lam(m, lam(xs, body));
    }
    {
        std::string m = g("m"), s = g("s"), sa = g("sa"), sb = g("sb");
        std::string m1 = g("m"), r1 = g("r"), sa2 = g("sa"), res1 = g("res");
        std::string u = g("u"), x = g("x"), m2 = g("m"), r2 = g("r");
        std::string sb2 = g("sb"), res2 = g("res");
        TermPtr pop1 = anno(s1.pop_tm, s1.pop_type());
        TermPtr pop2 = anno(s2.pop_tm, s2.pop_type());
        TermPtr fromSecond =
            letp(m2, r2, app(pop2, V(m1), V(sb)),
                 letp(sb2, res2, V(r2),
                      pair(V(m2), pair(pair(V(sa2), V(sb2)), V(res2)))));
        TermPtr fromFirst = pair(V(m1), pair(pair(V(sa2), V(sb)), inj(2, V(x))));
        TermPtr body =
            letp(sa, sb, V(s),
                 letp(m1, r1, app(pop1, V(m), V(sa)),
                      letp(sa2, res1, V(r1), cse(V(res1), u, fromSecond, x, fromFirst))));
        out.pop_tm = lam(m, lam(s, body));
    }

    auto v1 = s1.valid, v2 = s2.valid;
    auto i1 = s1.items, i2 = s2.items;
    out.valid = [v1, v2, i1, i2, b2](const DenPtr& s, unsigned long long n) {
        if (s->kind != DenKind::Pair) return false;
        if (!v1(s->a, n) || !v2(s->b, n)) return false;
        if (!i1(s->a, n).empty() && i2(s->b, n).size() != b2(n)) return false;
        return true;
    };
    out.items = [i1, i2](const DenPtr& s, unsigned long long n) {
        auto out = i1(s->a, n);
        auto rest = i2(s->b, n);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    };
    finish(out);
    return out;
}

// ---- inductive stack: S' = L(1) -o L(S), bound n * B(n), arity k+1 ----
//
// A state suspends a list of n sub-stacks. The leading empty run and the
// trailing full run sandwich one unconstrained sub-stack; push scans from the
// last sub-stack towards the first, pop scans in the other direction by
// folding the list into a continuation, and both re-suspend afterwards.

inline StackImpl stack_inductive(const StackImpl& inner, NameGen& g) {
    StackImpl out;
    out.elem = inner.elem;
    out.arity = inner.arity + 1;
    TypePtr S = inner.state;
    TypePtr LS = t_list(S);
    TypePtr L1 = t_list(t_unit());
    out.state = t_arrow(L1, LS);
    out.bound_poly = poly_shift_mul_n(inner.bound_poly);
    auto bi = inner.bound;
    out.bound = [bi](unsigned long long n) { return n * bi(n); };

    TypePtr powK = pow_type(inner.arity);
    TypePtr suspT = t_arrow(LS, t_tensor(t_arrow(L1, LS), L1));

    // empty: pad the fuel out into empty sub-stacks
    {
        std::string fuel = g("fuel"), d = g("d"), u = g("u"), r = g("r");
        TermPtr innerEmpty = anno(inner.empty_tm, S);
        out.empty_tm =
            lam(fuel, rec(V(fuel), nil(), d, u, r, cons(V(d), innerEmpty, V(r))));
    }

    // push
    {
        std::string m = g("m"), xs = g("xs"), ell = g("ell"), mk = g("mk");
        std::string x = g("x"), s = g("s");
        std::string d = g("d"), si = g("si"), acc = g("acc");
        std::string rest = g("rest"), st0 = g("st"), mk0 = g("mk"), pend = g("pend");
        std::string xp = g("xp"), mk1 = g("mk"), r1 = g("r"), si2 = g("si"),
                    res = g("res"), done = g("done");
        std::string newsubs = g("subs"), st1 = g("st"), mk2 = g("mk"),
                    pend2 = g("pend"), gg = g("g"), mret = g("mret");
        TermPtr innerPush = anno(inner.push_tm, inner.push_type());
        TypePtr foldT = t_tensor(LS, t_tensor(powK, t_sum(inner.elem, t_unit())));

        TermPtr tryPush =
            letp(mk1, r1, app(innerPush, V(mk0), pair(V(xp), V(si))),
                 letp(si2, res, V(r1),
                      pair(cons(V(d), V(si2), V(rest)), pair(V(mk1), V(res)))));
        TermPtr passThrough =
            pair(cons(V(d), V(si), V(rest)), pair(V(mk0), inj(2, V(done))));
        TermPtr step = letp(rest, st0, V(acc),
                            letp(mk0, pend, V(st0),
                                 cse(V(pend), xp, tryPush, done, passThrough)));
        TermPtr fold = rec(app(V(s), V(ell)),
                           pair(nil(), pair(V(mk), inj(1, V(x)))), d, si, acc, step);
        TermPtr body = letp(
            ell, mk, V(m),
            letp(x, s, V(xs),
                 letp(newsubs, st1, anno(fold, foldT),
                      letp(mk2, pend2, V(st1),
                           letp(gg, mret,
                                app(anno(stdterms::susp(g("sp") + "$"), suspT),
                                    V(newsubs)),
                                pair(pair(V(mret), V(mk2)),
                                     pair(V(gg), V(pend2))))))));
        out.push_tm = lam(m, lam(xs, body));
    }

    // pop: fold into a continuation so the scan runs front to back
    {
        std::string m = g("m"), s = g("s"), ell = g("ell"), mk = g("mk");
        std::string d = g("d"), si = g("si"), r = g("r"), st = g("st");
        std::string stb = g("st"), mk0 = g("mk"), pend = g("pend"), u = g("u");
        std::string mk1 = g("mk"), r1 = g("r"), si2 = g("si"), res = g("res");
        std::string rest = g("rest"), st2 = g("st"), a = g("a"), rest2 = g("rest"),
                    st3 = g("st");
        std::string newsubs = g("subs"), st1 = g("st"), mk2 = g("mk"),
                    res2 = g("res"), gg = g("g"), mret = g("mret");
        TermPtr innerPop = anno(inner.pop_tm, inner.pop_type());
        TypePtr contArg = t_tensor(powK, t_sum(t_unit(), inner.elem));
        TypePtr contT = t_arrow(contArg, t_tensor(LS, contArg));

        TermPtr searching =
            letp(mk1, r1, app(innerPop, V(mk0), V(si)),
                 letp(si2, res, V(r1),
                      letp(rest, st2, app(V(r), pair(V(mk1), V(res))),
                           pair(cons(V(d), V(si2), V(rest)), V(st2)))));
        TermPtr found = letp(rest2, st3, app(V(r), pair(V(mk0), inj(2, V(a)))),
                             pair(cons(V(d), V(si), V(rest2)), V(st3)));
        TermPtr step = lam(stb, letp(mk0, pend, V(stb),
                                     cse(V(pend), u, searching, a, found)));
        TermPtr cont = rec(app(V(s), V(ell)),
                           lam(st, pair(nil(), V(st))), d, si, r, step);
        TermPtr body = letp(
            ell, mk, V(m),
            letp(newsubs, st1,
                 app(anno(cont, contT), pair(V(mk), inj(1, nul()))),
                 letp(mk2, res2, V(st1),
                      letp(gg, mret,
                           app(anno(stdterms::susp(g("sq") + "$"), suspT), V(newsubs)),
                           pair(pair(V(mret), V(mk2)), pair(V(gg), V(res2)))))));
        out.pop_tm = lam(m, lam(s, body));
    }

    auto vi = inner.valid;
    auto ii = inner.items;
    out.valid = [vi, ii, bi](const DenPtr& s, unsigned long long n) {
        if (s->kind != DenKind::Fun) return false;
        DenPtr subs = s->fn(d_unit_list(n));
        if (subs->kind != DenKind::List || subs->seq.size() != n) return false;
        // empties, then one unconstrained, then fulls
        size_t firstNonEmpty = n;
        for (size_t i = 0; i < n; ++i) {
            if (!vi(subs->seq[i], n)) return false;
            if (firstNonEmpty == n && !ii(subs->seq[i], n).empty()) firstNonEmpty = i;
        }
        for (size_t i = firstNonEmpty == n ? n : firstNonEmpty + 1; i < n; ++i)
            if (ii(subs->seq[i], n).size() != bi(n)) return false;
        return true;
    };
    out.items = [ii](const DenPtr& s, unsigned long long n) {
        std::vector<DenPtr> acc;
        DenPtr subs = s->fn(d_unit_list(n));
        for (auto& sub : subs->seq) {
            auto part = ii(sub, n);
            acc.insert(acc.end(), part.begin(), part.end());
        }
        return acc;
    };
    finish(out);
    return out;
}

}  // namespace stackbuild

inline StackImpl stack_const(const TypePtr& A, size_t c, build::NameGen& g) {
    return stackbuild::stack_const(A, c, g);
}
inline StackImpl stack_weaken(const StackImpl& s, build::NameGen& g) {
    return stackbuild::stack_weaken(s, g);
}
inline StackImpl stack_add(const StackImpl& a, const StackImpl& b, build::NameGen& g) {
    return stackbuild::stack_add(a, b, g);
}
inline StackImpl stack_inductive(const StackImpl& s, build::NameGen& g) {
    return stackbuild::stack_inductive(s, g);
}

// c * n^k: k inductive layers over a constant stack.
inline StackImpl stack_monomial(const TypePtr& A, size_t c, size_t k,
                                build::NameGen& g) {
    StackImpl s = stack_const(A, c, g);
    for (size_t i = 0; i < k; ++i) s = stack_inductive(s, g);
    return s;
}

// Bounded by P: weakened monomial stacks for each coefficient, combined
// additively. The result has arity max(degree of P, minArity).
inline StackImpl stack_poly(const TypePtr& A, const CostPoly& P, build::NameGen& g,
                            size_t minArity = 0) {
    size_t target = std::max(P.is_zero() ? size_t{0} : P.degree(), minArity);
    std::vector<StackImpl> parts;
    for (size_t i = 0; i < P.c.size(); ++i) {
        if (P.c[i] == 0) continue;
        if (!P.c[i].fits_ulong_p())
            throw std::logic_error("stack bound coefficient too large");
        StackImpl m = stack_monomial(A, P.c[i].get_ui(), i, g);
        while (m.arity < target) m = stack_weaken(m, g);
        parts.push_back(std::move(m));
    }
    if (parts.empty()) {
        StackImpl z = stack_const(A, 0, g);
        while (z.arity < target) z = stack_weaken(z, g);
        return z;
    }
    StackImpl acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = stack_add(acc, parts[i], g);
    return acc;
}

// ---------------------------------------------------------------------------
// Behavioral check against a host bounded-stack model.
// ---------------------------------------------------------------------------

struct StackOp {
    bool isPush;
    DenPtr elem;  // push only
};

struct StackCheckReport {
    bool ok = true;
    size_t failIndex = 0;  // index into the script, or script size for setup
    std::string detail;
};

inline StackCheckReport check_stack(const StackImpl& impl, unsigned long long n,
                                    const std::vector<StackOp>& script) {
    StackCheckReport rep;
    auto fail = [&](size_t idx, const std::string& why) {
        rep.ok = false;
        rep.failIndex = idx;
        rep.detail = why;
        return rep;
    };
    DenPtr m = m_den(n, impl.arity);
    DenPtr s = impl.den_empty;
    std::vector<DenPtr> model;  // front = top
    unsigned long long cap = impl.bound(n);

    if (!impl.valid(s, n)) return fail(script.size(), "empty state is invalid");
    if (!impl.items(s, n).empty()) return fail(script.size(), "empty state has items");

    auto sameItems = [&](const DenPtr& st) {
        auto is = impl.items(st, n);
        if (is.size() != model.size()) return false;
        for (size_t i = 0; i < is.size(); ++i)
            if (!den_eq(is[i], model[i])) return false;
        return true;
    };

    for (size_t i = 0; i < script.size(); ++i) {
        const StackOp& op = script[i];
        DenPtr r;
        if (op.isPush)
            r = den_apply(den_apply(impl.den_push, m), d_pair(op.elem, s));
        else
            r = den_apply(den_apply(impl.den_pop, m), s);
        // r = (m', (s', res))
        if (r->kind != DenKind::Pair || r->b->kind != DenKind::Pair)
            return fail(i, "result shape");
        DenPtr mOut = r->a, sOut = r->b->a, res = r->b->b;
        if (!den_eq(mOut, m)) return fail(i, "borrowed tuple not returned intact");
        if (res->kind != DenKind::Inj) return fail(i, "result flag shape");
        if (op.isPush) {
            if (model.size() == cap) {
                if (res->idx != 1 || !den_eq(res->a, op.elem))
                    return fail(i, "push onto full stack must hand the element back");
            } else {
                if (res->idx != 2) return fail(i, "push unexpectedly failed");
                model.insert(model.begin(), op.elem);
            }
        } else {
            if (model.empty()) {
                if (res->idx != 1) return fail(i, "pop from empty stack must fail");
            } else {
                if (res->idx != 2) return fail(i, "pop unexpectedly failed");
                if (!den_eq(res->a, model.front()))
                    return fail(i, "pop returned the wrong element");
                model.erase(model.begin());
            }
        }
        if (!impl.valid(sOut, n)) return fail(i, "state became invalid");
        if (!sameItems(sOut)) return fail(i, "items diverge from the model");
        s = sOut;
    }
    return rep;
}

}  // namespace lfpl
