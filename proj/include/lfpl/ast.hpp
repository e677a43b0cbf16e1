#pragma once

#include <cassert>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace lfpl {

struct SrcLoc {
    int line = 0;
    int col = 0;
    bool known() const { return line > 0; }
};

// ---------------------------------------------------------------------------
// Types: diam | 1 | A + B | A * B | A -o B | L(A) | A & B | S(A) | T(A)
// ---------------------------------------------------------------------------

enum class TypeKind { Diamond, Unit, Sum, Tensor, Arrow, List, Prod, Stack, Tree };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
    TypeKind kind;
    TypePtr a;  // left child (or element type for List/Stack/Tree)
    TypePtr b;  // right child

    Type(TypeKind k, TypePtr l = nullptr, TypePtr r = nullptr)
        : kind(k), a(std::move(l)), b(std::move(r)) {}
};

inline TypePtr t_diamond() {
    static const TypePtr t = std::make_shared<Type>(TypeKind::Diamond);
    return t;
}
inline TypePtr t_unit() {
    static const TypePtr t = std::make_shared<Type>(TypeKind::Unit);
    return t;
}
inline TypePtr t_sum(TypePtr a, TypePtr b) {
    return std::make_shared<Type>(TypeKind::Sum, std::move(a), std::move(b));
}
inline TypePtr t_tensor(TypePtr a, TypePtr b) {
    return std::make_shared<Type>(TypeKind::Tensor, std::move(a), std::move(b));
}
inline TypePtr t_arrow(TypePtr a, TypePtr b) {
    return std::make_shared<Type>(TypeKind::Arrow, std::move(a), std::move(b));
}
inline TypePtr t_list(TypePtr a) {
    return std::make_shared<Type>(TypeKind::List, std::move(a));
}
inline TypePtr t_prod(TypePtr a, TypePtr b) {
    return std::make_shared<Type>(TypeKind::Prod, std::move(a), std::move(b));
}
inline TypePtr t_stack(TypePtr a) {
    return std::make_shared<Type>(TypeKind::Stack, std::move(a));
}
inline TypePtr t_tree(TypePtr a) {
    return std::make_shared<Type>(TypeKind::Tree, std::move(a));
}

inline bool type_eq(const TypePtr& x, const TypePtr& y) {
    if (x.get() == y.get()) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case TypeKind::Diamond:
        case TypeKind::Unit:
            return true;
        case TypeKind::List:
        case TypeKind::Stack:
        case TypeKind::Tree:
            return type_eq(x->a, y->a);
        default:
            return type_eq(x->a, y->a) && type_eq(x->b, y->b);
    }
}

// Types built from unit, sum and tensor only admit duplication.
inline bool is_diamond_free(const TypePtr& t) {
    switch (t->kind) {
        case TypeKind::Unit: return true;
        case TypeKind::Sum:
        case TypeKind::Tensor: return is_diamond_free(t->a) && is_diamond_free(t->b);
        default: return false;
    }
}

// Precedence: -o (0, right) < + (1, right) < & (2, right) < * (3, right) < atom.
inline void print_type_rec(const Type& t, int prec, std::string& out) {
    auto paren = [&](int mine, auto&& body) {
        bool p = mine < prec;
        if (p) out += '(';
        body();
        if (p) out += ')';
    };
    switch (t.kind) {
        case TypeKind::Diamond: out += "diam"; break;
        case TypeKind::Unit: out += '1'; break;
        case TypeKind::Arrow:
            paren(0, [&] {
                print_type_rec(*t.a, 1, out);
                out += " -o ";
                print_type_rec(*t.b, 0, out);
            });
            break;
        case TypeKind::Sum:
            paren(1, [&] {
                print_type_rec(*t.a, 2, out);
                out += " + ";
                print_type_rec(*t.b, 1, out);
            });
            break;
        case TypeKind::Prod:
            paren(2, [&] {
                print_type_rec(*t.a, 3, out);
                out += " & ";
                print_type_rec(*t.b, 2, out);
            });
            break;
        case TypeKind::Tensor:
            paren(3, [&] {
                print_type_rec(*t.a, 4, out);
                out += " * ";
                print_type_rec(*t.b, 3, out);
            });
            break;
        case TypeKind::List:
            out += "L(";
            print_type_rec(*t.a, 0, out);
            out += ')';
            break;
        case TypeKind::Stack:
            out += "S(";
            print_type_rec(*t.a, 0, out);
            out += ')';
            break;
        case TypeKind::Tree:
            out += "T(";
            print_type_rec(*t.a, 0, out);
            out += ')';
            break;
    }
}

inline std::string print_type(const TypePtr& t) {
    std::string out;
    print_type_rec(*t, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Terms. Children and binders are stored in rule order:
//   Var{name} | Null | Inj{idx,[m]} | Case{[m,n1,n2],(x1,x2)} | Pair{[m1,m2]}
//   LetPair{[m,n],(x1,x2)} | Lam{[m],(x)} | App{[f,a]} | Nil | Cons{[d,h,t]}
//   Rec{[m,n1,n2],(xd,xh,xt)} | Record{[m1,m2]} | Proj{idx,[m]} | Empty
//   Push{[h,t]} | Pop{[m,n1,n2],(xh,xt)} | Leaf | Node{[d,x,l,r]}
//   TRec{[m,n1,n2],(xd,x,xl,xr)}
// ---------------------------------------------------------------------------

// Anno `(M : T)` is checking plumbing, not part of the object language: it
// gives inlined definitions a synthesizable anchor and is erased by checking.
enum class TermKind {
    Var, Null, Inj, Case, Pair, LetPair, Lam, App,
    Nil, Cons, Rec, Record, Proj, Empty, Push, Pop, Leaf, Node, TRec, Anno
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind;
    int idx = 0;  // injection / projection index, 1 or 2
    std::string name;
    std::vector<std::string> binders;
    std::vector<TermPtr> kids;
    TypePtr anno;  // Anno only
    SrcLoc loc;
};

inline TermPtr mk_term(TermKind k, std::vector<TermPtr> kids = {},
                       std::vector<std::string> binders = {}, int idx = 0,
                       std::string name = {}, SrcLoc loc = {}) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->idx = idx;
    t->name = std::move(name);
    t->binders = std::move(binders);
    t->kids = std::move(kids);
    t->loc = loc;
    return t;
}

inline bool term_eq(const TermPtr& x, const TermPtr& y) {
    if (x.get() == y.get()) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->idx != y->idx || x->name != y->name) return false;
    if (x->binders != y->binders) return false;
    if ((x->anno != nullptr) != (y->anno != nullptr)) return false;
    if (x->anno && !type_eq(x->anno, y->anno)) return false;
    if (x->kids.size() != y->kids.size()) return false;
    for (size_t i = 0; i < x->kids.size(); ++i)
        if (!term_eq(x->kids[i], y->kids[i])) return false;
    return true;
}

inline size_t term_size(const TermPtr& t) {
    size_t n = 1;
    for (auto& k : t->kids) n += term_size(k);
    return n;
}

// Free variables (no duplicates, first-occurrence order not guaranteed).
inline void free_vars_rec(const Term& t, std::set<std::string>& bound,
                          std::set<std::string>& out) {
    if (t.kind == TermKind::Var) {
        if (!bound.count(t.name)) out.insert(t.name);
        return;
    }
    // Binders scope over specific children; all binder-taking forms bind in the
    // trailing child(ren) only, except Case/Pop whose two branches each bind one
    // (Case) or the step binds two (Pop).
    switch (t.kind) {
        case TermKind::Case: {
            free_vars_rec(*t.kids[0], bound, out);
            for (int i = 0; i < 2; ++i) {
                bool ins = bound.insert(t.binders[i]).second;
                free_vars_rec(*t.kids[i + 1], bound, out);
                if (ins) bound.erase(t.binders[i]);
            }
            return;
        }
        case TermKind::LetPair: {
            free_vars_rec(*t.kids[0], bound, out);
            std::vector<std::string> ins;
            for (auto& b : t.binders)
                if (bound.insert(b).second) ins.push_back(b);
            free_vars_rec(*t.kids[1], bound, out);
            for (auto& b : ins) bound.erase(b);
            return;
        }
        case TermKind::Lam: {
            bool ins = bound.insert(t.binders[0]).second;
            free_vars_rec(*t.kids[0], bound, out);
            if (ins) bound.erase(t.binders[0]);
            return;
        }
        case TermKind::Rec:
        case TermKind::TRec: {
            free_vars_rec(*t.kids[0], bound, out);
            free_vars_rec(*t.kids[1], bound, out);
            std::vector<std::string> ins;
            for (auto& b : t.binders)
                if (bound.insert(b).second) ins.push_back(b);
            free_vars_rec(*t.kids[2], bound, out);
            for (auto& b : ins) bound.erase(b);
            return;
        }
        case TermKind::Pop: {
            free_vars_rec(*t.kids[0], bound, out);
            free_vars_rec(*t.kids[1], bound, out);
            std::vector<std::string> ins;
            for (auto& b : t.binders)
                if (bound.insert(b).second) ins.push_back(b);
            free_vars_rec(*t.kids[2], bound, out);
            for (auto& b : ins) bound.erase(b);
            return;
        }
        default:
            for (auto& k : t.kids) free_vars_rec(*k, bound, out);
    }
}

inline std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> bound, out;
    free_vars_rec(*t, bound, out);
    return out;
}

// ---------------------------------------------------------------------------
// Term pretty printer. Round-trips through the parser.
// Precedence: binders/eliminator forms 0 (extend right), app 8 (left), atom 9.
// ---------------------------------------------------------------------------

inline void print_term_rec(const Term& t, int prec, std::string& out) {
    auto paren = [&](int mine, auto&& body) {
        bool p = mine < prec;
        if (p) out += '(';
        body();
        if (p) out += ')';
    };
    switch (t.kind) {
        case TermKind::Var: out += t.name; break;
        case TermKind::Null: out += "<>"; break;
        case TermKind::Nil: out += "nil"; break;
        case TermKind::Empty: out += "empty"; break;
        case TermKind::Leaf: out += "leaf"; break;
        case TermKind::Inj:
            paren(8, [&] {
                out += t.idx == 1 ? "inj1 " : "inj2 ";
                print_term_rec(*t.kids[0], 9, out);
            });
            break;
        case TermKind::Proj:
            paren(8, [&] {
                out += t.idx == 1 ? "proj1 " : "proj2 ";
                print_term_rec(*t.kids[0], 9, out);
            });
            break;
        case TermKind::Pair:
            out += '(';
            print_term_rec(*t.kids[0], 0, out);
            out += ", ";
            print_term_rec(*t.kids[1], 0, out);
            out += ')';
            break;
        case TermKind::Record:
            out += '{';
            print_term_rec(*t.kids[0], 0, out);
            out += ", ";
            print_term_rec(*t.kids[1], 0, out);
            out += '}';
            break;
        case TermKind::Cons:
            out += "cons (";
            print_term_rec(*t.kids[0], 0, out);
            out += ", ";
            print_term_rec(*t.kids[1], 0, out);
            out += ", ";
            print_term_rec(*t.kids[2], 0, out);
            out += ')';
            break;
        case TermKind::Push:
            out += "push (";
            print_term_rec(*t.kids[0], 0, out);
            out += ", ";
            print_term_rec(*t.kids[1], 0, out);
            out += ')';
            break;
        case TermKind::Node:
            out += "node (";
            for (int i = 0; i < 4; ++i) {
                if (i) out += ", ";
                print_term_rec(*t.kids[i], 0, out);
            }
            out += ')';
            break;
        case TermKind::App:
            paren(8, [&] {
                print_term_rec(*t.kids[0], 8, out);
                out += ' ';
                print_term_rec(*t.kids[1], 9, out);
            });
            break;
        case TermKind::Lam:
            paren(0, [&] {
                out += "lam " + t.binders[0] + " . ";
                print_term_rec(*t.kids[0], 0, out);
            });
            break;
        case TermKind::LetPair:
            paren(0, [&] {
                out += "letp (" + t.binders[0] + ", " + t.binders[1] + ") = ";
                print_term_rec(*t.kids[0], 1, out);
                out += " in ";
                print_term_rec(*t.kids[1], 0, out);
            });
            break;
        case TermKind::Case:
            paren(0, [&] {
                out += "case ";
                print_term_rec(*t.kids[0], 1, out);
                out += " | inj1 " + t.binders[0] + " => ";
                print_term_rec(*t.kids[1], 1, out);
                out += " | inj2 " + t.binders[1] + " => ";
                print_term_rec(*t.kids[2], 0, out);
            });
            break;
        case TermKind::Rec:
            paren(0, [&] {
                out += "rec ";
                print_term_rec(*t.kids[0], 1, out);
                out += " | nil => ";
                print_term_rec(*t.kids[1], 1, out);
                out += " | cons (" + t.binders[0] + ", " + t.binders[1] + ", " +
                       t.binders[2] + ") => ";
                print_term_rec(*t.kids[2], 0, out);
            });
            break;
        case TermKind::Pop:
            paren(0, [&] {
                out += "pop ";
                print_term_rec(*t.kids[0], 1, out);
                out += " | empty => ";
                print_term_rec(*t.kids[1], 1, out);
                out += " | push (" + t.binders[0] + ", " + t.binders[1] + ") => ";
                print_term_rec(*t.kids[2], 0, out);
            });
            break;
        case TermKind::TRec:
            paren(0, [&] {
                out += "trec ";
                print_term_rec(*t.kids[0], 1, out);
                out += " | leaf => ";
                print_term_rec(*t.kids[1], 1, out);
                out += " | node (" + t.binders[0] + ", " + t.binders[1] + ", " +
                       t.binders[2] + ", " + t.binders[3] + ") => ";
                print_term_rec(*t.kids[2], 0, out);
            });
            break;
        case TermKind::Anno:
            out += '(';
            print_term_rec(*t.kids[0], 0, out);
            out += " : ";
            print_type_rec(*t.anno, 0, out);
            out += ')';
            break;
    }
}

inline std::string print_term(const TermPtr& t) {
    std::string out;
    print_term_rec(*t, 0, out);
    return out;
}

// An ordered typing context with pairwise-distinct names.
struct Ctx {
    std::vector<std::pair<std::string, TypePtr>> entries;

    const TypePtr* lookup(const std::string& n) const {
        for (auto& [name, ty] : entries)
            if (name == n) return &ty;
        return nullptr;
    }
    void add(std::string n, TypePtr t) { entries.emplace_back(std::move(n), std::move(t)); }
    size_t size() const { return entries.size(); }
};

}  // namespace lfpl
