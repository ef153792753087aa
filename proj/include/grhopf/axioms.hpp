#pragma once

#include <string>
#include <vector>

#include "presentation.hpp"

namespace grhopf {

struct AxiomViolation {
    std::string axiom;
    std::string witness;
    std::string detail;
};

struct AxiomReport {
    bool ok = true;
    std::vector<AxiomViolation> violations;

    void fail(const std::string& axiom, const std::string& witness, const std::string& detail = "") {
        ok = false;
        violations.push_back({axiom, witness, detail});
    }
};

/// Verifies, on the full monomial basis: grading positivity, homogeneity of
/// the reduced coproduct and containment in I(x)I, counit laws,
/// coassociativity, truncation compatibility of the coproduct, and locality
/// of the degree-0 part. Returns a report; never throws on math failures.
inline AxiomReport check_hopf_axioms(const HopfPresentation& h) {
    AxiomReport rep;
    const unsigned p = h.p();
    const std::uint64_t n = h.dim();

    // deltabar shape: homogeneous of the generator degree, inside I (x) I
    for (std::size_t g = 0; g < h.num_gens(); ++g) {
        const TensorElement& db = h.deltabar_gen(g);
        bool first_fail = false;
        for (auto& [k, c] : db.terms) {
            (void)c;
            BasisIndex a = tensor_left(k), b = tensor_right(k);
            if (a == 0 || b == 0) {
                rep.fail("deltabar-in-I-tensor-I", h.gen(g).name, h.tensor_string(db));
                first_fail = true;
                break;
            }
            if (h.degree(a) + h.degree(b) != h.gen(g).degree) {
                rep.fail("deltabar-homogeneous", h.gen(g).name, h.tensor_string(db));
                first_fail = true;
                break;
            }
        }
        if (first_fail) continue;
    }

    // counit laws on every basis monomial: (eps (x) id)Delta = id = (id (x) eps)Delta
    for (std::uint64_t i = 0; i < n; ++i) {
        Element left, right;
        for (auto& [k, c] : h.coproduct(BasisIndex(i)).terms) {
            BasisIndex a = tensor_left(k), b = tensor_right(k);
            if (a == 0) left = h.add(left, Element::monomial(b, c));
            if (b == 0) right = h.add(right, Element::monomial(a, c));
        }
        Element self = Element::monomial(BasisIndex(i));
        if (left != self || right != self) {
            rep.fail("counit-law", h.monomial_string(BasisIndex(i)));
            break;
        }
    }

    // homogeneity of the full coproduct
    for (std::uint64_t i = 0; i < n; ++i) {
        for (auto& [k, c] : h.coproduct(BasisIndex(i)).terms) {
            (void)c;
            if (h.degree(tensor_left(k)) + h.degree(tensor_right(k)) != h.degree(BasisIndex(i))) {
                rep.fail("coproduct-homogeneous", h.monomial_string(BasisIndex(i)));
                goto homog_done;
            }
        }
    }
homog_done:

    // coassociativity on every basis monomial
    for (std::uint64_t i = 0; i < n; ++i) {
        TripleTensor lhs, rhs;
        for (auto& [k, c] : h.coproduct(BasisIndex(i)).terms) {
            BasisIndex a = tensor_left(k), b = tensor_right(k);
            for (auto& [k2, c2] : h.coproduct(a).terms)
                lhs.add_term(tensor_left(k2), tensor_right(k2), b, mul_mod(c, c2, p), p);
            for (auto& [k2, c2] : h.coproduct(b).terms)
                rhs.add_term(a, tensor_left(k2), tensor_right(k2), mul_mod(c, c2, p), p);
        }
        if (!(lhs == rhs)) {
            rep.fail("coassociativity", h.monomial_string(BasisIndex(i)));
            break;
        }
    }

    // relation compatibility: Delta(x)^{bound} = 0 for every generator
    for (std::size_t g = 0; g < h.num_gens(); ++g) {
        TensorElement dx = h.delta(h.gen_element(g));
        TensorElement pw = h.tensor_power(dx, h.basis().bound(g));
        if (!pw.is_zero()) {
            rep.fail("truncation-compatibility", h.gen(g).name, h.tensor_string(pw));
        }
    }

    // locality of the degree-0 part: its augmentation ideal is nilpotent
    {
        std::vector<Vec> deg0;
        for (std::uint64_t i = 1; i < n; ++i)
            if (h.degree(BasisIndex(i)) == 0) deg0.push_back(h.to_vec(Element::monomial(BasisIndex(i))));
        Subspace power = Subspace::from_span(p, n, deg0);
        std::size_t steps = 0;
        while (power.dim() > 0 && steps < n + 1) {
            std::vector<Vec> next;
            for (std::size_t i = 0; i < power.dim(); ++i)
                for (const Vec& w : deg0) {
                    Element prod = h.mul(h.from_vec(power.basis_vector(i)), h.from_vec(w));
                    if (!prod.is_zero()) next.push_back(h.to_vec(prod));
                }
            Subspace np = Subspace::from_span(p, n, next);
            if (np == power) break;  // stabilized without reaching zero
            power = np;
            ++steps;
        }
        if (power.dim() > 0) rep.fail("degree-zero-local", "1", "augmentation ideal of A_0 not nilpotent");
    }

    return rep;
}

inline Vec fcol(const FpMatrix& m, std::size_t j) {
    Vec v(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
    return v;
}

/// Antipode as the convolution inverse of the identity, computed as the
/// geometric series over N = u.eps - id. Returns the matrix of S on the
/// monomial basis; both antipode identities are re-verified on the basis.
inline FpMatrix antipode(const HopfPresentation& h) {
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());

    // N(b) = eps(b) 1 - b
    FpMatrix N(p, n, n);
    for (std::size_t j = 0; j < n; ++j) N.at(j, j) = neg_mod(1, p);
    N.at(0, 0) = add_mod(N.at(0, 0), 1, p);

    // convolution of two matrices: (f*g)(b) = mul(f(b1), g(b2)) summed over Delta(b)
    auto convolve = [&](const FpMatrix& f, const FpMatrix& g) {
        FpMatrix r(p, n, n);
        for (std::size_t j = 0; j < n; ++j) {
            Element acc;
            for (auto& [k, c] : h.coproduct(BasisIndex(j)).terms) {
                Element fa = h.from_vec(fcol(f, tensor_left(k)));
                Element gb = h.from_vec(fcol(g, tensor_right(k)));
                acc = h.add(acc, h.scale(h.mul(fa, gb), c));
            }
            Vec v = h.to_vec(acc);
            for (std::size_t i = 0; i < n; ++i) r.at(i, j) = v[i];
        }
        return r;
    };

    FpMatrix S(p, n, n);  // starts as u.eps = N^{*0}
    S.at(0, 0) = 1;
    FpMatrix term = N;
    std::size_t k = 0;
    while (true) {
        bool zero = true;
        for (Scalar c : term.a)
            if (c) {
                zero = false;
                break;
            }
        if (zero) break;
        if (++k > n + 1)
            throw AlgebraError(Errc::non_nilpotent_convolution,
                               "convolution series did not terminate; input is not local");
        for (std::size_t i = 0; i < n * n; ++i) S.a[i] = add_mod(S.a[i], term.a[i], p);
        term = convolve(term, N);
    }

    // verify m(S (x) id)Delta = u.eps = m(id (x) S)Delta on the basis
    for (std::size_t j = 0; j < n; ++j) {
        Element lhs, rhs;
        for (auto& [kk, c] : h.coproduct(BasisIndex(j)).terms) {
            BasisIndex a = tensor_left(kk), b = tensor_right(kk);
            lhs = h.add(lhs, h.scale(h.mul(h.from_vec(fcol(S, a)), Element::monomial(b)), c));
            rhs = h.add(rhs, h.scale(h.mul(Element::monomial(a), h.from_vec(fcol(S, b))), c));
        }
        Element expect = j == 0 ? Element::monomial(0) : Element{};
        if (lhs != expect || rhs != expect)
            throw AlgebraError(Errc::non_nilpotent_convolution, "antipode identity failed on basis");
    }
    return S;
}

}  // namespace grhopf
