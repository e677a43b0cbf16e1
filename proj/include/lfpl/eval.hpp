#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>

#include "lfpl/value.hpp"

namespace lfpl {

using Nat = mpz_class;

// ---------------------------------------------------------------------------
// Cost model: one natural constant per syntactic construct.
// ---------------------------------------------------------------------------

enum CostK : int {
    CK_Var, CK_Null, CK_Inj, CK_Case, CK_Pair, CK_Letp, CK_Lam, CK_App,
    CK_Nil, CK_Cons, CK_Rec, CK_Record, CK_Proj1, CK_Proj2, CK_Empty,
    CK_Push, CK_Pop, CK_Leaf, CK_Node, CK_Trec, CK_COUNT
};

inline const char* cost_name(int k) {
    static const char* names[CK_COUNT] = {
        "c_var", "c_null", "c_inj", "c_case", "c_pair", "c_letp", "c_lam",
        "c_app", "c_nil", "c_cons", "c_rec", "c_record", "c_proj1", "c_proj2",
        "c_empty", "c_push", "c_pop", "c_leaf", "c_node", "c_trec"};
    return names[k];
}

struct CostModel {
    std::array<std::uint64_t, CK_COUNT> c{};

    std::uint64_t operator[](int k) const { return c[k]; }
    std::uint64_t& operator[](int k) { return c[k]; }

    static CostModel all_one() {
        CostModel m;
        m.c.fill(1);
        return m;
    }
    // c_rec = c_app = 1, everything else 0.
    static CostModel paper_example() {
        CostModel m;
        m.c.fill(0);
        m.c[CK_Rec] = 1;
        m.c[CK_App] = 1;
        return m;
    }
};

// Per-rule application counts; total cost must equal sum of count * constant.
struct CostLedger {
    std::array<std::uint64_t, CK_COUNT> n{};
    Nat dot(const CostModel& cm) const {
        Nat acc = 0;
        for (int k = 0; k < CK_COUNT; ++k) acc += Nat(n[k]) * Nat((unsigned long)cm.c[k]);
        return acc;
    }
};

struct EvalResult {
    ValuePtr value;
    Nat cost;
    std::uint64_t step_count = 0;
    CostLedger ledger;
};

struct EvalFuelExhausted : std::runtime_error {
    EvalFuelExhausted() : std::runtime_error("evaluation fuel exhausted") {}
};
struct EvalInternalError : std::runtime_error {
    explicit EvalInternalError(const std::string& m)
        : std::runtime_error("evaluator invariant violated: " + m) {}
};

// ---------------------------------------------------------------------------
// Big-step evaluator. The environment is restricted along the checker's
// partition annotations when descending into premises, so each sub-judgement
// sees exactly its own split environment. Recursors re-evaluate themselves
// through a fresh variable binding, which charges an extra variable lookup
// per unrolling.
// ---------------------------------------------------------------------------

class Evaluator {
public:
    explicit Evaluator(CostModel cm, std::uint64_t fuel = 10'000'000)
        : cm_(cm), fuel_(fuel) {}

    EvalResult run(const EnvPtr& env, const TypedPtr& t) {
        cost_ = 0;
        steps_ = 0;
        ledger_ = CostLedger{};
        ValuePtr v = eval(env, t);
        return {v, cost_, steps_, ledger_};
    }

private:
    CostModel cm_;
    std::uint64_t fuel_;
    std::uint64_t steps_ = 0;
    Nat cost_;
    CostLedger ledger_;

    void charge(int k) {
        if (++steps_ > fuel_) throw EvalFuelExhausted();
        cost_ += (unsigned long)cm_.c[k];
        ledger_.n[k]++;
    }

    EnvPtr sub(const EnvPtr& env, const TypedPtr& kid) {
        return env_restrict(env, kid->used);
    }

    ValuePtr eval(const EnvPtr& env, const TypedPtr& t) {
        switch (t->kind) {
            case TermKind::Var: {
                charge(CK_Var);
                const ValuePtr* v = env_lookup(env, t->name);
                if (!v) throw EvalInternalError("unbound '" + t->name + "'");
                return *v;
            }
            case TermKind::Null: charge(CK_Null); return v_null();
            case TermKind::Nil: charge(CK_Nil); return v_nil();
            case TermKind::Empty: charge(CK_Empty); return v_empty();
            case TermKind::Leaf: charge(CK_Leaf); return v_leaf();
            case TermKind::Lam: charge(CK_Lam); return v_lam(env, t);
            case TermKind::Record: charge(CK_Record); return v_record(env, t);
            case TermKind::Inj: {
                ValuePtr v = eval(sub(env, t->kids[0]), t->kids[0]);
                charge(CK_Inj);
                return v_inj(t->idx, v);
            }
            case TermKind::Pair: {
                ValuePtr v1 = eval(sub(env, t->kids[0]), t->kids[0]);
                ValuePtr v2 = eval(sub(env, t->kids[1]), t->kids[1]);
                charge(CK_Pair);
                return v_pair(v1, v2);
            }
            case TermKind::Cons: {
                ValuePtr d = eval(sub(env, t->kids[0]), t->kids[0]);
                if (d->kind != ValKind::Diamond)
                    throw EvalInternalError("cons payment is not a diamond");
                ValuePtr h = eval(sub(env, t->kids[1]), t->kids[1]);
                ValuePtr tl = eval(sub(env, t->kids[2]), t->kids[2]);
                charge(CK_Cons);
                return v_cons(h, tl);
            }
            case TermKind::Push: {
                ValuePtr h = eval(sub(env, t->kids[0]), t->kids[0]);
                ValuePtr tl = eval(sub(env, t->kids[1]), t->kids[1]);
                charge(CK_Push);
                return v_push(h, tl);
            }
            case TermKind::Node: {
                ValuePtr d = eval(sub(env, t->kids[0]), t->kids[0]);
                if (d->kind != ValKind::Diamond)
                    throw EvalInternalError("node payment is not a diamond");
                ValuePtr x = eval(sub(env, t->kids[1]), t->kids[1]);
                ValuePtr l = eval(sub(env, t->kids[2]), t->kids[2]);
                ValuePtr r = eval(sub(env, t->kids[3]), t->kids[3]);
                charge(CK_Node);
                return v_node(x, l, r);
            }
            case TermKind::App: {
                ValuePtr f = eval(sub(env, t->kids[0]), t->kids[0]);
                ValuePtr a = eval(sub(env, t->kids[1]), t->kids[1]);
                if (f->kind != ValKind::LamClo)
                    throw EvalInternalError("application of a non-closure");
                charge(CK_App);
                EnvPtr inner = env_cons(f->env, f->code->binders[0], a);
                return eval(inner, f->code->kids[0]);
            }
            case TermKind::Proj: {
                ValuePtr m = eval(sub(env, t->kids[0]), t->kids[0]);
                if (m->kind != ValKind::RecordClo)
                    throw EvalInternalError("projection of a non-record");
                charge(t->idx == 1 ? CK_Proj1 : CK_Proj2);
                return eval(m->env, m->code->kids[t->idx - 1]);
            }
            case TermKind::Case: {
                ValuePtr m = eval(sub(env, t->kids[0]), t->kids[0]);
                if (m->kind != ValKind::Inj)
                    throw EvalInternalError("case scrutinee is not an injection");
                charge(CK_Case);
                EnvPtr res = residual(env, t);
                const TypedPtr& br = t->kids[m->idx];
                return eval(env_cons(res, t->binders[m->idx - 1], m->a), br);
            }
            case TermKind::LetPair: {
                ValuePtr m = eval(sub(env, t->kids[0]), t->kids[0]);
                if (m->kind != ValKind::Pair)
                    throw EvalInternalError("letp scrutinee is not a pair");
                charge(CK_Letp);
                std::set<std::string> need = t->kids[1]->used;
                need.erase(t->binders[0]);
                need.erase(t->binders[1]);
                EnvPtr res = env_restrict(env, need);
                res = env_cons(res, t->binders[0], m->a);
                res = env_cons(res, t->binders[1], m->b);
                return eval(res, t->kids[1]);
            }
            case TermKind::Pop: {
                ValuePtr m = eval(sub(env, t->kids[0]), t->kids[0]);
                charge(CK_Pop);
                EnvPtr res = residual(env, t);
                if (m->kind == ValKind::EmptyS) return eval(res, t->kids[1]);
                if (m->kind != ValKind::PushS)
                    throw EvalInternalError("pop scrutinee is not a stack");
                EnvPtr inner = env_cons(res, t->binders[0], m->a);
                inner = env_cons(inner, t->binders[1], m->b);
                return eval(inner, t->kids[2]);
            }
            case TermKind::Rec: {
                ValuePtr m = eval(sub(env, t->kids[0]), t->kids[0]);
                EnvPtr baseEnv = sub(env, t->kids[1]);
                // Collect the spine; the nil case sits innermost.
                std::vector<ValuePtr> elems;
                for (const Value* cur = m.get(); cur->kind == ValKind::ConsL;
                     cur = cur->b.get())
                    elems.push_back(cur->a);
                // One rec rule firing per unrolling plus the outer one; every
                // unrolling also looks the scrutinee up through a fresh name.
                charge(CK_Rec);
                for (size_t i = 0; i < elems.size(); ++i) {
                    charge(CK_Var);
                    charge(CK_Rec);
                }
                ValuePtr acc = eval(baseEnv, t->kids[1]);
                for (size_t i = elems.size(); i-- > 0;) {
                    EnvPtr stepEnv = env_cons(nullptr, t->binders[0], v_diamond());
                    stepEnv = env_cons(stepEnv, t->binders[1], elems[i]);
                    stepEnv = env_cons(stepEnv, t->binders[2], acc);
                    acc = eval(stepEnv, t->kids[2]);
                }
                return acc;
            }
            case TermKind::TRec: {
                ValuePtr m = eval(sub(env, t->kids[0]), t->kids[0]);
                return trec_run(m, t);
            }
            case TermKind::Anno:
                break;  // checking erases ascriptions
        }
        throw EvalInternalError("unhandled term form");
    }

    // Residual environment shared by the branches of case/pop.
    EnvPtr residual(const EnvPtr& env, const TypedPtr& t) {
        std::set<std::string> need;
        if (t->kind == TermKind::Case) {
            for (int i = 1; i <= 2; ++i) {
                std::set<std::string> u = t->kids[i]->used;
                u.erase(t->binders[i - 1]);
                need.insert(u.begin(), u.end());
            }
        } else {  // Pop
            need = t->kids[1]->used;
            std::set<std::string> u = t->kids[2]->used;
            u.erase(t->binders[0]);
            u.erase(t->binders[1]);
            need.insert(u.begin(), u.end());
        }
        return env_restrict(env, need);
    }

    ValuePtr trec_run(const ValuePtr& v, const TypedPtr& t) {
        charge(CK_Trec);
        if (v->kind == ValKind::LeafT) {
            // base case runs under the empty environment
            return eval(nullptr, t->kids[1]);
        }
        if (v->kind != ValKind::NodeT)
            throw EvalInternalError("trec scrutinee is not a tree");
        charge(CK_Var);
        ValuePtr vl = trec_run(v->b, t);
        charge(CK_Var);
        ValuePtr vr = trec_run(v->c, t);
        EnvPtr stepEnv = env_cons(nullptr, t->binders[0], v_diamond());
        stepEnv = env_cons(stepEnv, t->binders[1], v->a);
        stepEnv = env_cons(stepEnv, t->binders[2], vl);
        stepEnv = env_cons(stepEnv, t->binders[3], vr);
        return eval(stepEnv, t->kids[2]);
    }
};

inline EvalResult eval(const EnvPtr& env, const TypedPtr& t, const CostModel& cm,
                       std::uint64_t fuel = 10'000'000) {
    return Evaluator(cm, fuel).run(env, t);
}

// Evaluates and reports whether the result is no larger than the environment.
inline bool check_nsi(const EnvPtr& env, const TypedPtr& t, const CostModel& cm,
                      std::uint64_t fuel = 10'000'000) {
    EvalResult r = eval(env, t, cm, fuel);
    return size_value(r.value) <= size_env(env);
}

// ---- cost model files: `name = natural`, one per line, '--' comments ----

inline CostModel parse_cost_model(const std::string& src) {
    CostModel m;  // unspecified constants default to 0
    m.c.fill(0);
    auto toks = lex(src);
    size_t i = 0;
    while (toks[i].kind != Tok::Eof) {
        if (toks[i].kind != Tok::Ident)
            throw ParseError(toks[i].loc, "expected a cost constant name");
        std::string name = toks[i].text;
        int idx = -1;
        for (int k = 0; k < CK_COUNT; ++k)
            if (name == cost_name(k)) idx = k;
        if (idx < 0) throw ParseError(toks[i].loc, "unknown cost constant '" + name + "'");
        i++;
        if (toks[i].kind != Tok::Eq) throw ParseError(toks[i].loc, "expected '='");
        i++;
        if (toks[i].kind != Tok::Number)
            throw ParseError(toks[i].loc, "expected a natural number");
        m.c[idx] = std::stoull(toks[i].text);
        i++;
    }
    return m;
}

}  // namespace lfpl
