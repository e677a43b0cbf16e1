#pragma once

#include "lfpl/typecheck.hpp"

// Terse constructors for programmatic term building. Generated terms must
// keep every binder unique along any scope chain (the checker rejects
// shadowing), so builders that compose closed pieces thread a NameGen.
namespace lfpl::build {

struct NameGen {
    std::string prefix;
    int n = 0;
    explicit NameGen(std::string p = "v") : prefix(std::move(p)) {}
    std::string operator()(const std::string& hint = "x") {
        return prefix + "$" + hint + std::to_string(n++);
    }
};

inline TermPtr V(const std::string& n) { return mk_term(TermKind::Var, {}, {}, 0, n); }
inline TermPtr nul() { return mk_term(TermKind::Null); }
inline TermPtr nil() { return mk_term(TermKind::Nil); }
inline TermPtr emp() { return mk_term(TermKind::Empty); }
inline TermPtr leaf() { return mk_term(TermKind::Leaf); }

inline TermPtr lam(const std::string& x, TermPtr b) {
    return mk_term(TermKind::Lam, {std::move(b)}, {x});
}
inline TermPtr app(TermPtr f, TermPtr a) {
    return mk_term(TermKind::App, {std::move(f), std::move(a)});
}
inline TermPtr app(TermPtr f, TermPtr a, TermPtr b) {
    return app(app(std::move(f), std::move(a)), std::move(b));
}
inline TermPtr pair(TermPtr a, TermPtr b) {
    return mk_term(TermKind::Pair, {std::move(a), std::move(b)});
}
inline TermPtr letp(const std::string& x, const std::string& y, TermPtr m, TermPtr n) {
    return mk_term(TermKind::LetPair, {std::move(m), std::move(n)}, {x, y});
}
inline TermPtr inj(int i, TermPtr m) {
    return mk_term(TermKind::Inj, {std::move(m)}, {}, i);
}
inline TermPtr cse(TermPtr m, const std::string& x1, TermPtr n1, const std::string& x2,
                   TermPtr n2) {
    return mk_term(TermKind::Case, {std::move(m), std::move(n1), std::move(n2)},
                   {x1, x2});
}
inline TermPtr cons(TermPtr d, TermPtr h, TermPtr t) {
    return mk_term(TermKind::Cons, {std::move(d), std::move(h), std::move(t)});
}
inline TermPtr rec(TermPtr m, TermPtr n1, const std::string& xd, const std::string& xh,
                   const std::string& xt, TermPtr n2) {
    return mk_term(TermKind::Rec, {std::move(m), std::move(n1), std::move(n2)},
                   {xd, xh, xt});
}
inline TermPtr record(TermPtr a, TermPtr b) {
    return mk_term(TermKind::Record, {std::move(a), std::move(b)});
}
inline TermPtr proj(int i, TermPtr m) {
    return mk_term(TermKind::Proj, {std::move(m)}, {}, i);
}
inline TermPtr push(TermPtr h, TermPtr t) {
    return mk_term(TermKind::Push, {std::move(h), std::move(t)});
}
inline TermPtr pop(TermPtr m, TermPtr n1, const std::string& xh, const std::string& xt,
                   TermPtr n2) {
    return mk_term(TermKind::Pop, {std::move(m), std::move(n1), std::move(n2)},
                   {xh, xt});
}
inline TermPtr node(TermPtr d, TermPtr x, TermPtr l, TermPtr r) {
    return mk_term(TermKind::Node,
                   {std::move(d), std::move(x), std::move(l), std::move(r)});
}
inline TermPtr trec(TermPtr m, TermPtr n1, const std::string& xd, const std::string& x,
                    const std::string& xl, const std::string& xr, TermPtr n2) {
    return mk_term(TermKind::TRec, {std::move(m), std::move(n1), std::move(n2)},
                   {xd, x, xl, xr});
}

// Right-nested tuple term (a, (b, (c, ...))).
inline TermPtr tuple(std::vector<TermPtr> parts) {
    TermPtr acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) acc = pair(parts[i], acc);
    return acc;
}

// letp chain binding names to the components of a right-nested tuple whose
// last component keeps the nested remainder: names = {a, b, rest}.
inline TermPtr untuple(const std::vector<std::string>& names, TermPtr scrut,
                       NameGen& gen, TermPtr body) {
    if (names.size() == 1) {
        // single name: bind via a beta redex-free trick: rename through letp is
        // not possible, caller should just use the scrutinee directly
        throw std::logic_error("untuple needs at least two names");
    }
    std::vector<std::string> rests;
    for (size_t i = 0; i + 2 < names.size(); ++i) rests.push_back(gen("t"));
    TermPtr acc = body;
    for (size_t i = names.size() - 1; i-- > 0;) {
        bool last = (i + 2 == names.size());
        std::string rhs = last ? names[i + 1] : rests[i];
        TermPtr m = i == 0 ? scrut : V(rests[i - 1]);
        acc = letp(names[i], rhs, m, acc);
    }
    return acc;
}

}  // namespace lfpl::build
