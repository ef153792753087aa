#pragma once

#include <string>
#include <vector>

#include "presentation.hpp"

namespace grhopf {

/// A graded-commutative truncated polynomial algebra R with a coaction of a
/// presentation A: Delta_R : R -> A (x) R given on the generators of R.
/// Tensor keys pack (A index, R index).
struct ComoduleAlgebra {
    PresPtr A;
    MonomialBasis R;
    std::vector<TensorElement> coaction;  // per R generator, full value in A (x) R

    unsigned p() const { return A->p(); }

    /// Multiplication in A (x) R with the Koszul rule across the tensor sign.
    TensorElement mul(const TensorElement& s, const TensorElement& t) const {
        const unsigned pp = p();
        TensorElement out;
        for (auto& [ks, cs] : s.terms) {
            BasisIndex a = tensor_left(ks), r1 = tensor_right(ks);
            unsigned dr1 = R.degree(r1);
            for (auto& [kt, ct] : t.terms) {
                BasisIndex b = tensor_left(kt), r2 = tensor_right(kt);
                auto am = A->basis().mono_mul(a, b);
                if (!am) continue;
                auto rm = R.mono_mul(r1, r2);
                if (!rm) continue;
                int sign = am->first * rm->first;
                if ((dr1 & 1u) && (A->degree(b) & 1u)) sign = -sign;
                Scalar c = mul_mod(cs, ct, pp);
                if (sign < 0) c = neg_mod(c, pp);
                out.add_term(am->second, rm->second, c, pp);
            }
        }
        return out;
    }

    /// Coaction on an R basis monomial, extended multiplicatively.
    TensorElement coact(BasisIndex r_idx) const {
        const unsigned pp = p();
        TensorElement acc;
        acc.add_term(0, 0, 1, pp);
        auto e = R.exponents(r_idx);
        for (std::size_t g = 0; g < R.num_gens(); ++g)
            for (BasisIndex k = 0; k < e[g]; ++k) acc = mul(acc, coaction[g]);
        return acc;
    }

    /// Counit and coassociativity checks of the comodule structure.
    void validate() const {
        const unsigned pp = p();
        const HopfPresentation& h = *A;
        for (std::uint64_t r = 0; r < R.dim(); ++r) {
            TensorElement c = coact(BasisIndex(r));
            // (eps (x) id) coact = id
            Element collapsed;  // element of R
            for (auto& [k, v] : c.terms)
                if (tensor_left(k) == 0)
                    collapsed = [&] {
                        Element e2 = collapsed;
                        auto it = e2.terms.find(tensor_right(k));
                        Scalar nv = add_mod(it == e2.terms.end() ? 0 : it->second, v, pp);
                        if (nv)
                            e2.terms[tensor_right(k)] = nv;
                        else if (it != e2.terms.end())
                            e2.terms.erase(tensor_right(k));
                        return e2;
                    }();
            if (collapsed != Element::monomial(BasisIndex(r)))
                throw AlgebraError(Errc::invalid_argument, "coaction violates the counit law");
            // (Delta_A (x) id) coact = (id (x) coact) coact
            TripleTensor lhs, rhs;
            for (auto& [k, v] : c.terms) {
                for (auto& [k2, v2] : h.coproduct(tensor_left(k)).terms)
                    lhs.add_term(tensor_left(k2), tensor_right(k2), tensor_right(k),
                                 mul_mod(v, v2, pp), pp);
                for (auto& [k2, v2] : coact(tensor_right(k)).terms)
                    rhs.add_term(tensor_left(k), tensor_left(k2), tensor_right(k2),
                                 mul_mod(v, v2, pp), pp);
            }
            if (!(lhs == rhs))
                throw AlgebraError(Errc::invalid_argument, "coaction not coassociative");
        }
    }

    std::string r_monomial_string(BasisIndex idx) const {
        if (idx == 0) return "1";
        auto e = R.exponents(idx);
        std::string s;
        for (std::size_t g = 0; g < R.num_gens(); ++g) {
            if (!e[g]) continue;
            if (!s.empty()) s += "*";
            s += R.gen(g).name;
            if (e[g] > 1) s += "^" + std::to_string(e[g]);
        }
        return s;
    }
};

struct InvariantPowerReport {
    unsigned N = 0;
    struct Line {
        std::string element;
        unsigned first_invariant_power;  // smallest k with b^{p^k} invariant
    };
    std::vector<Line> transcript;
    std::string witness;  // basis element failing at N-1 (empty when N == 0)
};

/// Smallest N with Delta_R(b^{p^N}) = 1 (x) b^{p^N} for every R basis
/// monomial b. Bounded by the size of the input; exhaustion signals an
/// invalid coaction.
inline InvariantPowerReport invariant_power(const ComoduleAlgebra& C) {
    C.validate();
    const unsigned p = C.p();
    InvariantPowerReport rep;

    // bound: enough p-powers to kill every truncated generator on both sides
    unsigned bound = 1;
    {
        std::uint64_t d = C.A->dim() * std::uint64_t(C.R.dim());
        while ((std::uint64_t(1) << bound) < d + 2 && bound < 62) ++bound;
        for (std::size_t g = 0; g < C.A->num_gens(); ++g)
            if (!C.A->gen(g).odd_trunc) bound += C.A->gen(g).height;
        for (std::size_t g = 0; g < C.R.num_gens(); ++g)
            if (!C.R.gen(g).odd_trunc) bound += C.R.gen(g).height;
    }

    auto invariant_at = [&](BasisIndex r, unsigned k) {
        // b^{p^k} inside R, then compare its coaction with 1 (x) it
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i) q *= p;
        // compute the power of the monomial within R: repeated mono_mul
        Element power = Element::monomial(r);
        // R-element power: reuse tensor machinery by coacting then comparing;
        // first compute b^{p^k} as an R element
        Element acc = Element::monomial(0);
        for (std::uint64_t i = 0; i < q; ++i) {
            Element next;
            for (auto& [m1, c1] : acc.terms)
                for (auto& [m2, c2] : power.terms) {
                    auto mm = C.R.mono_mul(m1, m2);
                    if (!mm) continue;
                    Scalar c = mul_mod(c1, c2, p);
                    if (mm->first < 0) c = neg_mod(c, p);
                    auto it = next.terms.find(mm->second);
                    Scalar nv = add_mod(it == next.terms.end() ? 0 : it->second, c, p);
                    if (nv)
                        next.terms[mm->second] = nv;
                    else if (it != next.terms.end())
                        next.terms.erase(mm->second);
                }
            acc = std::move(next);
        }
        TensorElement lhs;
        for (auto& [m, c] : acc.terms) {
            for (auto& [k2, c2] : C.coact(m).terms)
                lhs.add_term(tensor_left(k2), tensor_right(k2), mul_mod(c, c2, p), p);
        }
        TensorElement rhs;
        for (auto& [m, c] : acc.terms) rhs.add_term(0, m, c, p);
        return lhs == rhs;
    };

    unsigned N = 0;
    std::vector<unsigned> first(std::size_t(C.R.dim()), 0);
    for (std::uint64_t r = 1; r < C.R.dim(); ++r) {
        unsigned k = 0;
        while (!invariant_at(BasisIndex(r), k)) {
            ++k;
            if (k > bound)
                throw AlgebraError(Errc::no_finite_invariant_power,
                                   "no invariant p-power within bound; coaction invalid");
        }
        first[r] = k;
        if (k > N) {
            N = k;
            rep.witness = C.r_monomial_string(BasisIndex(r));
        }
    }
    rep.N = N;
    for (std::uint64_t r = 1; r < C.R.dim(); ++r)
        rep.transcript.push_back({C.r_monomial_string(BasisIndex(r)), first[r]});
    if (N == 0) rep.witness.clear();
    return rep;
}

}  // namespace grhopf
