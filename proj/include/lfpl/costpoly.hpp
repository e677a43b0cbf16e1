#pragma once

#include "lfpl/eval.hpp"

namespace lfpl {

// ---------------------------------------------------------------------------
// Polynomials over the naturals in one variable, dense coefficient vector,
// canonical (no trailing zero). Evaluation is exact and monotone.
// ---------------------------------------------------------------------------

struct CostPoly {
    std::vector<Nat> c;  // c[i] is the coefficient of n^i

    CostPoly() = default;
    explicit CostPoly(std::vector<Nat> coeffs) : c(std::move(coeffs)) { trim(); }
    static CostPoly constant(Nat k) { return CostPoly({std::move(k)}); }
    static CostPoly constant(unsigned long k) { return CostPoly({Nat(k)}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    Nat coeff(size_t i) const { return i < c.size() ? c[i] : Nat(0); }

    bool operator==(const CostPoly& o) const { return c == o.c; }
};

inline CostPoly poly_add(const CostPoly& p, const CostPoly& q) {
    std::vector<Nat> out(std::max(p.c.size(), q.c.size()), Nat(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = p.coeff(i) + q.coeff(i);
    return CostPoly(std::move(out));
}

// Coefficientwise maximum, so max(P(n), Q(n)) <= poly_max(P, Q)(n) pointwise.
inline CostPoly poly_max(const CostPoly& p, const CostPoly& q) {
    std::vector<Nat> out(std::max(p.c.size(), q.c.size()), Nat(0));
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = std::max(p.coeff(i), q.coeff(i));
    return CostPoly(std::move(out));
}

inline CostPoly poly_scale(const Nat& k, const CostPoly& p) {
    std::vector<Nat> out = p.c;
    for (auto& x : out) x *= k;
    return CostPoly(std::move(out));
}

// n * P(n)
inline CostPoly poly_shift_mul_n(const CostPoly& p) {
    if (p.is_zero()) return p;
    std::vector<Nat> out(p.c.size() + 1, Nat(0));
    for (size_t i = 0; i < p.c.size(); ++i) out[i + 1] = p.c[i];
    return CostPoly(std::move(out));
}

inline CostPoly poly_mul(const CostPoly& p, const CostPoly& q) {
    if (p.is_zero() || q.is_zero()) return CostPoly{};
    std::vector<Nat> out(p.c.size() + q.c.size() - 1, Nat(0));
    for (size_t i = 0; i < p.c.size(); ++i)
        for (size_t j = 0; j < q.c.size(); ++j) out[i + j] += p.c[i] * q.c[j];
    return CostPoly(std::move(out));
}

// P(Q(n)) by Horner's rule.
inline CostPoly poly_compose(const CostPoly& p, const CostPoly& q) {
    CostPoly acc;
    for (size_t i = p.c.size(); i-- > 0;) {
        acc = poly_mul(acc, q);
        acc = poly_add(acc, CostPoly::constant(p.c[i]));
    }
    return acc;
}

inline Nat poly_eval(const CostPoly& p, const Nat& n) {
    Nat acc = 0;
    for (size_t i = p.c.size(); i-- > 0;) acc = acc * n + p.c[i];
    return acc;
}

// Rendered as `c0 + c1*n + c2*n^2 + ...`, zero terms skipped.
inline std::string print_poly(const CostPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += p.c[i].get_str();
        } else {
            if (p.c[i] != 1) out += p.c[i].get_str() + "*";
            out += "n";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Term, value and environment polynomials. Term polynomials bound evaluation
// cost plus the latent cost of any closures in the result; value and
// environment polynomials bound the latent cost of stored closures.
// ---------------------------------------------------------------------------

inline CostPoly term_poly(const TypedPtr& t, const CostModel& cm) {
    auto k = [&](int idx) { return CostPoly::constant((unsigned long)cm.c[idx]); };
    switch (t->kind) {
        case TermKind::Var: return k(CK_Var);
        case TermKind::Null: return k(CK_Null);
        case TermKind::Nil: return k(CK_Nil);
        case TermKind::Empty: return k(CK_Empty);
        case TermKind::Leaf: return k(CK_Leaf);
        case TermKind::Inj: return poly_add(k(CK_Inj), term_poly(t->kids[0], cm));
        case TermKind::Lam: return poly_add(k(CK_Lam), term_poly(t->kids[0], cm));
        case TermKind::Proj:
            return poly_add(k(t->idx == 1 ? CK_Proj1 : CK_Proj2),
                            term_poly(t->kids[0], cm));
        case TermKind::App:
            return poly_add(k(CK_App), poly_add(term_poly(t->kids[0], cm),
                                                term_poly(t->kids[1], cm)));
        case TermKind::Pair:
            return poly_add(k(CK_Pair), poly_add(term_poly(t->kids[0], cm),
                                                 term_poly(t->kids[1], cm)));
        case TermKind::Push:
            return poly_add(k(CK_Push), poly_add(term_poly(t->kids[0], cm),
                                                 term_poly(t->kids[1], cm)));
        case TermKind::LetPair:
            return poly_add(k(CK_Letp), poly_add(term_poly(t->kids[0], cm),
                                                 term_poly(t->kids[1], cm)));
        case TermKind::Record:
            return poly_add(k(CK_Record), poly_max(term_poly(t->kids[0], cm),
                                                   term_poly(t->kids[1], cm)));
        case TermKind::Case:
            return poly_add(k(CK_Case),
                            poly_add(term_poly(t->kids[0], cm),
                                     poly_max(term_poly(t->kids[1], cm),
                                              term_poly(t->kids[2], cm))));
        case TermKind::Pop:
            // mirrors case; only one branch runs
            return poly_add(k(CK_Pop),
                            poly_add(term_poly(t->kids[0], cm),
                                     poly_max(term_poly(t->kids[1], cm),
                                              term_poly(t->kids[2], cm))));
        case TermKind::Cons:
            return poly_add(k(CK_Cons),
                            poly_add(term_poly(t->kids[0], cm),
                                     poly_add(term_poly(t->kids[1], cm),
                                              term_poly(t->kids[2], cm))));
        case TermKind::Node: {
            CostPoly acc = k(CK_Node);
            for (auto& kid : t->kids) acc = poly_add(acc, term_poly(kid, cm));
            return acc;
        }
        case TermKind::Rec: {
            // P_M + (C_rec + P_N1) + n * (C_var + C_rec + P_N2)
            CostPoly perIter = poly_add(
                CostPoly::constant((unsigned long)(cm.c[CK_Var] + cm.c[CK_Rec])),
                term_poly(t->kids[2], cm));
            return poly_add(
                term_poly(t->kids[0], cm),
                poly_add(poly_add(k(CK_Rec), term_poly(t->kids[1], cm)),
                         poly_shift_mul_n(perIter)));
        }
        case TermKind::TRec: {
            // P_M + (n+1) * (C_trec + P_N1) + n * (2 C_var + C_trec + P_N2)
            CostPoly base = poly_add(k(CK_Trec), term_poly(t->kids[1], cm));
            CostPoly perLeafTerm = poly_add(base, poly_shift_mul_n(base));
            CostPoly perNode = poly_add(
                CostPoly::constant((unsigned long)(2 * cm.c[CK_Var] + cm.c[CK_Trec])),
                term_poly(t->kids[2], cm));
            return poly_add(term_poly(t->kids[0], cm),
                            poly_add(perLeafTerm, poly_shift_mul_n(perNode)));
        }
        case TermKind::Anno:
            break;  // checking erases ascriptions
    }
    return CostPoly{};
}

inline CostPoly env_poly(const EnvPtr& env, const CostModel& cm);

inline CostPoly value_poly(const ValuePtr& v, const CostModel& cm) {
    switch (v->kind) {
        case ValKind::Diamond:
        case ValKind::Null:
        case ValKind::NilL:
        case ValKind::EmptyS:
        case ValKind::LeafT: return CostPoly{};
        case ValKind::Inj: return value_poly(v->a, cm);
        case ValKind::Pair:
        case ValKind::ConsL:
        case ValKind::PushS:
            return poly_add(value_poly(v->a, cm), value_poly(v->b, cm));
        case ValKind::NodeT:
            return poly_add(value_poly(v->a, cm),
                            poly_add(value_poly(v->b, cm), value_poly(v->c, cm)));
        case ValKind::LamClo:
            return poly_add(env_poly(v->env, cm), term_poly(v->code->kids[0], cm));
        case ValKind::RecordClo:
            return poly_add(env_poly(v->env, cm),
                            poly_max(term_poly(v->code->kids[0], cm),
                                     term_poly(v->code->kids[1], cm)));
    }
    return CostPoly{};
}

inline CostPoly env_poly(const EnvPtr& env, const CostModel& cm) {
    CostPoly acc;
    for (const Env* e = env.get(); e; e = e->tail.get())
        acc = poly_add(acc, value_poly(e->val, cm));
    return acc;
}

// ---------------------------------------------------------------------------
// Bound verification: evaluate once, then check
//   cost + P_v(n) <= P_M(n) + P_env(n)   for every n in [n_from, n_to].
// ---------------------------------------------------------------------------

struct BoundRow {
    Nat n, cost, lhs, rhs, slack;
    bool ok;
};

struct BoundReport {
    bool ok = true;
    Nat cost;
    CostPoly p_term, p_value, p_env;
    std::vector<BoundRow> rows;

    std::string tsv() const {
        std::string out = "n\tcost\tvalue_poly\tterm_poly\tenv_poly\tslack\n";
        for (auto& r : rows) {
            Nat pv = r.lhs - r.cost;
            Nat pm_pe = r.rhs;
            out += r.n.get_str() + "\t" + r.cost.get_str() + "\t" + pv.get_str() +
                   "\t";
            out += poly_eval(p_term, r.n).get_str() + "\t" +
                   poly_eval(p_env, r.n).get_str() + "\t";
            out += (r.ok ? r.slack.get_str() : "VIOLATION") + "\n";
            (void)pm_pe;
        }
        return out;
    }
};

inline BoundReport verify_bound(const TypedPtr& t, const EnvPtr& env,
                                const CostModel& cm, const Nat& n_from,
                                const Nat& n_to, std::uint64_t fuel = 10'000'000) {
    BoundReport rep;
    EvalResult r = eval(env, t, cm, fuel);
    rep.cost = r.cost;
    rep.p_term = term_poly(t, cm);
    rep.p_value = value_poly(r.value, cm);
    rep.p_env = env_poly(env, cm);
    for (Nat n = n_from; n <= n_to; ++n) {
        Nat lhs = r.cost + poly_eval(rep.p_value, n);
        Nat rhs = poly_eval(rep.p_term, n) + poly_eval(rep.p_env, n);
        bool ok = lhs <= rhs;
        rep.rows.push_back({n, r.cost, lhs, rhs, ok ? Nat(rhs - lhs) : Nat(0), ok});
        if (!ok) rep.ok = false;
    }
    return rep;
}

}  // namespace lfpl
