#pragma once

#include "lfpl/build.hpp"
#include "lfpl/value.hpp"

namespace lfpl {

// ---------------------------------------------------------------------------
// The standard worked examples, built programmatically for any element type.
// Each inlined copy of a helper gets its own name prefix so no binder chain
// ever shadows; inlined helpers carry their ascription so checking can
// synthesize through applications of them.
// ---------------------------------------------------------------------------

namespace stdterms {

using namespace build;

inline TermPtr anno(TermPtr m, TypePtr ty) {
    auto a = std::make_shared<Term>();
    a->kind = TermKind::Anno;
    a->kids = {std::move(m)};
    a->anno = std::move(ty);
    return a;
}

// lam l1 . rec l1 | nil => lam l2 . l2 | cons (d, x, r) => lam l2 . r (cons (d, x, l2))
inline TermPtr rev_append(const std::string& p) {
    std::string l1 = p + "l1", l2a = p + "l2a", l2b = p + "l2b";
    std::string d = p + "d", x = p + "x", r = p + "r";
    return lam(l1, rec(V(l1), lam(l2a, V(l2a)), d, x, r,
                       lam(l2b, app(V(r), cons(V(d), V(x), V(l2b))))));
}

// lam l1 . revAppend l1 nil
inline TermPtr reverse(const TypePtr& A, const std::string& p = "rv$") {
    TypePtr LA = t_list(A);
    std::string l1 = p + "in";
    TermPtr ra = anno(rev_append(p), t_arrow(LA, t_arrow(LA, LA)));
    return lam(l1, app(ra, V(l1), nil()));
}

// lam x . case x | inj1 _ => nil | inj2 (d, y, ys) => cons (d, y, ys)
inline TermPtr lfold(const std::string& p) {
    std::string x = p + "x", u = p + "u", q = p + "q", t = p + "t";
    std::string d = p + "d", y = p + "y", ys = p + "ys";
    return lam(x, cse(V(x), u, nil(), q,
                      letp(d, t, V(q), letp(y, ys, V(t), cons(V(d), V(y), V(ys))))));
}

// lam x . rec x | nil => inj1 <> | cons (d, y, r) => inj2 (d, y, lfold r)
inline TermPtr lunfold(const std::string& p) {
    std::string x = p + "x", d = p + "d", y = p + "y", r = p + "r";
    return lam(x, rec(V(x), inj(1, nul()), d, y, r,
                      inj(2, tuple({V(d), V(y), app(lfold(p + "lf$"), V(r))}))));
}

// lam x . rec x
// | nil => (lam m . nil, nil)
// | cons (d, y, r) => letp (f, m) = r in
//     ((lam n . case lunfold n | inj1 _ => nil
//                             | inj2 (d2, _, n2) => cons (d2, y, f n2)),
//      cons (d, <>, m))
inline TermPtr susp(const std::string& p = "sp$") {
    std::string x = p + "x", m0 = p + "m0", d = p + "d", y = p + "y", r = p + "r";
    std::string f = p + "f", m = p + "m", n = p + "n", u1 = p + "u1";
    std::string q = p + "q", d2 = p + "d2", u2 = p + "u2", t = p + "t", n2 = p + "n2";
    // the un-suspension fuel is always a unit list
    TypePtr L1 = t_list(t_unit());
    TypePtr unfold1 = t_sum(t_unit(), t_tensor(t_diamond(), t_tensor(t_unit(), L1)));
    TermPtr lu = anno(lunfold(p + "lu$"), t_arrow(L1, unfold1));
    TermPtr rebuild =
        lam(n, cse(app(lu, V(n)), u1, nil(), q,
                   letp(d2, t, V(q),
                        letp(u2, n2, V(t), cons(V(d2), V(y), app(V(f), V(n2)))))));
    TermPtr step = letp(f, m, V(r), pair(rebuild, cons(V(d), nul(), V(m))));
    return lam(x, rec(V(x), pair(lam(m0, nil()), nil()), d, y, r, step));
}

}  // namespace stdterms

struct StdDef {
    std::string name;
    TermPtr term;
    TypePtr type;
    TypedPtr typed;
};

// revAppend, reverse, lfold, lunfold, susp at element type A.
inline std::vector<StdDef> stdlib(const TypePtr& A) {
    TypePtr LA = t_list(A);
    TypePtr unfoldT = t_sum(t_unit(), t_tensor(t_diamond(), t_tensor(A, LA)));
    std::vector<StdDef> defs;
    auto add = [&](const std::string& name, TermPtr term, TypePtr ty) {
        TypedPtr typed = check(Ctx{}, term, ty);
        defs.push_back({name, std::move(term), std::move(ty), std::move(typed)});
    };
    add("revAppend", stdterms::rev_append("ra$"), t_arrow(LA, t_arrow(LA, LA)));
    add("reverse", stdterms::reverse(A), t_arrow(LA, LA));
    add("lfold", stdterms::lfold("lf$"), t_arrow(unfoldT, LA));
    add("lunfold", stdterms::lunfold("lu$"), t_arrow(LA, unfoldT));
    add("susp", stdterms::susp(),
        t_arrow(LA, t_tensor(t_arrow(t_list(t_unit()), LA), t_list(t_unit()))));
    return defs;
}

inline StdDef std_def(const TypePtr& A, const std::string& name) {
    for (auto& d : stdlib(A))
        if (d.name == name) return d;
    throw std::logic_error("no stdlib entry " + name);
}

}  // namespace lfpl
