#pragma once

#include <functional>
#include <random>

#include "lfpl/eval.hpp"

namespace lfpl {

// ---------------------------------------------------------------------------
// Set-theoretic reference semantics with the diamond type inhabited. Lists
// and stacks are sequences, functions are host functions, lazy pairs are
// eager pairs.
// ---------------------------------------------------------------------------

struct DenValue;
using DenPtr = std::shared_ptr<const DenValue>;

enum class DenKind { Diamond, Star, Inj, Pair, Fun, List, Stack, Leaf, Node };

struct DenValue {
    DenKind kind;
    int idx = 0;
    DenPtr a, b, c;                        // Inj(a) | Pair(a,b) | Node(a,b,c)
    std::function<DenPtr(DenPtr)> fn;      // Fun
    std::vector<DenPtr> seq;               // List/Stack, front first
};

inline DenPtr d_diamond() {
    static const DenPtr v = std::make_shared<DenValue>(DenValue{DenKind::Diamond});
    return v;
}
inline DenPtr d_star() {
    static const DenPtr v = std::make_shared<DenValue>(DenValue{DenKind::Star});
    return v;
}
inline DenPtr d_inj(int i, DenPtr x) {
    return std::make_shared<DenValue>(DenValue{DenKind::Inj, i, std::move(x)});
}
inline DenPtr d_pair(DenPtr x, DenPtr y) {
    return std::make_shared<DenValue>(DenValue{DenKind::Pair, 0, std::move(x), std::move(y)});
}
inline DenPtr d_fun(std::function<DenPtr(DenPtr)> f) {
    auto v = std::make_shared<DenValue>(DenValue{DenKind::Fun});
    const_cast<DenValue&>(*v).fn = std::move(f);
    return v;
}
inline DenPtr d_list(std::vector<DenPtr> elems) {
    auto v = std::make_shared<DenValue>(DenValue{DenKind::List});
    const_cast<DenValue&>(*v).seq = std::move(elems);
    return v;
}
inline DenPtr d_stack(std::vector<DenPtr> elems) {
    auto v = std::make_shared<DenValue>(DenValue{DenKind::Stack});
    const_cast<DenValue&>(*v).seq = std::move(elems);
    return v;
}
inline DenPtr d_leaf() {
    static const DenPtr v = std::make_shared<DenValue>(DenValue{DenKind::Leaf});
    return v;
}
inline DenPtr d_node(DenPtr x, DenPtr l, DenPtr r) {
    return std::make_shared<DenValue>(
        DenValue{DenKind::Node, 0, std::move(x), std::move(l), std::move(r)});
}
inline DenPtr d_unit_list(size_t n) {
    return d_list(std::vector<DenPtr>(n, d_star()));
}

// Structural equality; functions are not comparable here.
inline bool den_eq(const DenPtr& x, const DenPtr& y) {
    if (x.get() == y.get()) return true;
    if (x->kind != y->kind || x->idx != y->idx) return false;
    switch (x->kind) {
        case DenKind::Diamond:
        case DenKind::Star:
        case DenKind::Leaf: return true;
        case DenKind::Inj: return den_eq(x->a, y->a);
        case DenKind::Pair: return den_eq(x->a, y->a) && den_eq(x->b, y->b);
        case DenKind::Node:
            return den_eq(x->a, y->a) && den_eq(x->b, y->b) && den_eq(x->c, y->c);
        case DenKind::List:
        case DenKind::Stack: {
            if (x->seq.size() != y->seq.size()) return false;
            for (size_t i = 0; i < x->seq.size(); ++i)
                if (!den_eq(x->seq[i], y->seq[i])) return false;
            return true;
        }
        case DenKind::Fun: return false;
    }
    return false;
}

inline std::string print_den(const DenPtr& v) {
    switch (v->kind) {
        case DenKind::Diamond: return "diamond";
        case DenKind::Star: return "<>";
        case DenKind::Inj: return (v->idx == 1 ? "inj1 " : "inj2 ") + print_den(v->a);
        case DenKind::Pair: return "(" + print_den(v->a) + ", " + print_den(v->b) + ")";
        case DenKind::Fun: return "<fun>";
        case DenKind::List:
        case DenKind::Stack: {
            std::string out = v->kind == DenKind::List ? "[" : "stack[";
            for (size_t i = 0; i < v->seq.size(); ++i) {
                if (i) out += ", ";
                out += print_den(v->seq[i]);
            }
            return out + "]";
        }
        case DenKind::Leaf: return "leaf";
        case DenKind::Node:
            return "node(" + print_den(v->a) + ", " + print_den(v->b) + ", " +
                   print_den(v->c) + ")";
    }
    return "?";
}

using DenEnv = std::map<std::string, DenPtr>;

inline DenPtr den_eval(const TypedPtr& t, const DenEnv& env);

inline DenPtr den_apply(const DenPtr& f, const DenPtr& x) {
    if (f->kind != DenKind::Fun) throw EvalInternalError("denotation applied non-function");
    return f->fn(x);
}

inline DenPtr den_eval(const TypedPtr& t, const DenEnv& env) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = env.find(t->name);
            if (it == env.end()) throw EvalInternalError("unbound '" + t->name + "'");
            return it->second;
        }
        case TermKind::Null: return d_star();
        case TermKind::Nil: return d_list({});
        case TermKind::Empty: return d_stack({});
        case TermKind::Leaf: return d_leaf();
        case TermKind::Inj: return d_inj(t->idx, den_eval(t->kids[0], env));
        case TermKind::Pair:
            return d_pair(den_eval(t->kids[0], env), den_eval(t->kids[1], env));
        case TermKind::Record:
            // lazy pairs denote eager pairs
            return d_pair(den_eval(t->kids[0], env), den_eval(t->kids[1], env));
        case TermKind::Proj: {
            DenPtr m = den_eval(t->kids[0], env);
            return t->idx == 1 ? m->a : m->b;
        }
        case TermKind::Lam: {
            DenEnv captured = env;
            TypedPtr node = t;
            return d_fun([captured, node](DenPtr v) {
                DenEnv inner = captured;
                inner[node->binders[0]] = std::move(v);
                return den_eval(node->kids[0], inner);
            });
        }
        case TermKind::App:
            return den_apply(den_eval(t->kids[0], env), den_eval(t->kids[1], env));
        case TermKind::Case: {
            DenPtr m = den_eval(t->kids[0], env);
            DenEnv inner = env;
            inner[t->binders[m->idx - 1]] = m->a;
            return den_eval(t->kids[m->idx], inner);
        }
        case TermKind::LetPair: {
            DenPtr m = den_eval(t->kids[0], env);
            DenEnv inner = env;
            inner[t->binders[0]] = m->a;
            inner[t->binders[1]] = m->b;
            return den_eval(t->kids[1], inner);
        }
        case TermKind::Cons: {
            // the diamond argument is ignored
            DenPtr h = den_eval(t->kids[1], env);
            DenPtr tl = den_eval(t->kids[2], env);
            std::vector<DenPtr> elems{h};
            elems.insert(elems.end(), tl->seq.begin(), tl->seq.end());
            return d_list(std::move(elems));
        }
        case TermKind::Rec: {
            DenPtr m = den_eval(t->kids[0], env);
            DenPtr acc = den_eval(t->kids[1], env);
            for (size_t i = m->seq.size(); i-- > 0;) {
                DenEnv stepEnv;
                stepEnv[t->binders[0]] = d_diamond();
                stepEnv[t->binders[1]] = m->seq[i];
                stepEnv[t->binders[2]] = acc;
                acc = den_eval(t->kids[2], stepEnv);
            }
            return acc;
        }
        case TermKind::Push: {
            DenPtr h = den_eval(t->kids[0], env);
            DenPtr tl = den_eval(t->kids[1], env);
            std::vector<DenPtr> elems{h};
            elems.insert(elems.end(), tl->seq.begin(), tl->seq.end());
            return d_stack(std::move(elems));
        }
        case TermKind::Pop: {
            DenPtr m = den_eval(t->kids[0], env);
            if (m->seq.empty()) return den_eval(t->kids[1], env);
            DenEnv inner = env;
            inner[t->binders[0]] = m->seq.front();
            inner[t->binders[1]] =
                d_stack(std::vector<DenPtr>(m->seq.begin() + 1, m->seq.end()));
            return den_eval(t->kids[2], inner);
        }
        case TermKind::Node: {
            DenPtr x = den_eval(t->kids[1], env);
            DenPtr l = den_eval(t->kids[2], env);
            DenPtr r = den_eval(t->kids[3], env);
            return d_node(x, l, r);
        }
        case TermKind::TRec: {
            DenPtr m = den_eval(t->kids[0], env);
            std::function<DenPtr(const DenPtr&)> fold = [&](const DenPtr& v) -> DenPtr {
                if (v->kind == DenKind::Leaf) return den_eval(t->kids[1], DenEnv{});
                DenEnv stepEnv;
                stepEnv[t->binders[0]] = d_diamond();
                stepEnv[t->binders[1]] = v->a;
                stepEnv[t->binders[2]] = fold(v->b);
                stepEnv[t->binders[3]] = fold(v->c);
                return den_eval(t->kids[2], stepEnv);
            };
            return fold(m);
        }
        case TermKind::Anno:
            break;  // checking erases ascriptions
    }
    throw EvalInternalError("unhandled term form");
}

// ---- translating runtime values into the reference semantics ----

inline DenEnv den_of_env(const EnvPtr& env);

inline DenPtr den_of_value(const ValuePtr& v) {
    switch (v->kind) {
        case ValKind::Diamond: return d_diamond();
        case ValKind::Null: return d_star();
        case ValKind::Inj: return d_inj(v->idx, den_of_value(v->a));
        case ValKind::Pair: return d_pair(den_of_value(v->a), den_of_value(v->b));
        case ValKind::NilL:
        case ValKind::ConsL: {
            std::vector<DenPtr> elems;
            for (const Value* cur = v.get(); cur->kind == ValKind::ConsL;
                 cur = cur->b.get())
                elems.push_back(den_of_value(cur->a));
            return d_list(std::move(elems));
        }
        case ValKind::EmptyS:
        case ValKind::PushS: {
            std::vector<DenPtr> elems;
            for (const Value* cur = v.get(); cur->kind == ValKind::PushS;
                 cur = cur->b.get())
                elems.push_back(den_of_value(cur->a));
            return d_stack(std::move(elems));
        }
        case ValKind::LeafT: return d_leaf();
        case ValKind::NodeT:
            return d_node(den_of_value(v->a), den_of_value(v->b), den_of_value(v->c));
        case ValKind::LamClo: {
            EnvPtr captured = v->env;
            TypedPtr node = v->code;
            return d_fun([captured, node](DenPtr x) {
                DenEnv inner = den_of_env(captured);
                inner[node->binders[0]] = std::move(x);
                return den_eval(node->kids[0], inner);
            });
        }
        case ValKind::RecordClo: {
            DenEnv inner = den_of_env(v->env);
            return d_pair(den_eval(v->code->kids[0], inner),
                          den_eval(v->code->kids[1], inner));
        }
    }
    throw EvalInternalError("unhandled value");
}

inline DenEnv den_of_env(const EnvPtr& env) {
    DenEnv out;
    for (const Env* e = env.get(); e; e = e->tail.get())
        out.emplace(e->name, den_of_value(e->val));  // most recent binding wins
    return out;
}

// ---- coherence: operational result vs reference denotation ----

inline bool first_order(const TypePtr& t) {
    switch (t->kind) {
        case TypeKind::Arrow:
        case TypeKind::Prod: return false;
        case TypeKind::Diamond:
        case TypeKind::Unit: return true;
        case TypeKind::List:
        case TypeKind::Stack:
        case TypeKind::Tree: return first_order(t->a);
        default: return first_order(t->a) && first_order(t->b);
    }
}

// Random denotation of a type, used to sample arguments at higher types.
inline DenPtr gen_den(const TypePtr& t, std::mt19937_64& rng, int depth = 3) {
    auto pick = [&](int n) { return static_cast<int>(rng() % n); };
    switch (t->kind) {
        case TypeKind::Diamond: return d_diamond();
        case TypeKind::Unit: return d_star();
        case TypeKind::Sum:
            return pick(2) ? d_inj(2, gen_den(t->b, rng, depth)) :
                             d_inj(1, gen_den(t->a, rng, depth));
        case TypeKind::Tensor:
        case TypeKind::Prod:
            return d_pair(gen_den(t->a, rng, depth), gen_den(t->b, rng, depth));
        case TypeKind::List:
        case TypeKind::Stack: {
            int n = depth <= 0 ? 0 : pick(4);
            std::vector<DenPtr> elems;
            for (int i = 0; i < n; ++i) elems.push_back(gen_den(t->a, rng, depth - 1));
            return t->kind == TypeKind::List ? d_list(std::move(elems))
                                             : d_stack(std::move(elems));
        }
        case TypeKind::Tree: {
            if (depth <= 0 || pick(2) == 0) return d_leaf();
            return d_node(gen_den(t->a, rng, depth - 1), gen_den(t, rng, depth - 1),
                          gen_den(t, rng, depth - 1));
        }
        case TypeKind::Arrow: {
            // constant functions are enough for sampling purposes
            DenPtr out = gen_den(t->b, rng, depth - 1);
            return d_fun([out](DenPtr) { return out; });
        }
    }
    return d_star();
}

struct CoherenceReport {
    bool ok = true;
    std::string path;  // first mismatching path into the value
};

inline void coherent_at(const DenPtr& x, const DenPtr& y, const TypePtr& ty,
                        std::mt19937_64& rng, int samples, std::string path,
                        CoherenceReport& rep) {
    if (!rep.ok) return;
    auto fail = [&]() {
        rep.ok = false;
        rep.path = path.empty() ? "<root>" : path;
    };
    switch (ty->kind) {
        case TypeKind::Diamond:
        case TypeKind::Unit:
            if (x->kind != y->kind) fail();
            return;
        case TypeKind::Sum:
            if (x->kind != DenKind::Inj || y->kind != DenKind::Inj || x->idx != y->idx)
                return fail();
            coherent_at(x->a, y->a, x->idx == 1 ? ty->a : ty->b, rng, samples,
                        path + (x->idx == 1 ? ".inj1" : ".inj2"), rep);
            return;
        case TypeKind::Tensor:
        case TypeKind::Prod:
            if (x->kind != DenKind::Pair || y->kind != DenKind::Pair) return fail();
            coherent_at(x->a, y->a, ty->a, rng, samples, path + ".1", rep);
            coherent_at(x->b, y->b, ty->b, rng, samples, path + ".2", rep);
            return;
        case TypeKind::List:
        case TypeKind::Stack: {
            if (x->kind != y->kind || x->seq.size() != y->seq.size()) return fail();
            for (size_t i = 0; i < x->seq.size(); ++i)
                coherent_at(x->seq[i], y->seq[i], ty->a, rng, samples,
                            path + "[" + std::to_string(i) + "]", rep);
            return;
        }
        case TypeKind::Tree: {
            if (x->kind != y->kind) return fail();
            if (x->kind == DenKind::Leaf) return;
            coherent_at(x->a, y->a, ty->a, rng, samples, path + ".x", rep);
            coherent_at(x->b, y->b, ty, rng, samples, path + ".l", rep);
            coherent_at(x->c, y->c, ty, rng, samples, path + ".r", rep);
            return;
        }
        case TypeKind::Arrow: {
            if (x->kind != DenKind::Fun || y->kind != DenKind::Fun) return fail();
            for (int i = 0; i < samples && rep.ok; ++i) {
                DenPtr arg = gen_den(ty->a, rng, 3);
                coherent_at(x->fn(arg), y->fn(arg), ty->b, rng, samples,
                            path + ".apply#" + std::to_string(i), rep);
            }
            return;
        }
    }
}

// Structural at first-order type, sampled-extensional at closures otherwise.
inline CoherenceReport coherence_check(const TypedPtr& t, const EnvPtr& env,
                                       const CostModel& cm, int samples = 32,
                                       std::uint64_t seed = 0,
                                       std::uint64_t fuel = 10'000'000) {
    EvalResult r = eval(env, t, cm, fuel);
    DenPtr lhs = den_of_value(r.value);
    DenPtr rhs = den_eval(t, den_of_env(env));
    CoherenceReport rep;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    coherent_at(lhs, rhs, t->type, rng, samples, "", rep);
    return rep;
}

}  // namespace lfpl
