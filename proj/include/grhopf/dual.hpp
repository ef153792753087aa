#pragma once

#include <random>
#include <vector>

#include "presentation.hpp"

namespace grhopf {

using SparseVec = std::map<BasisIndex, Scalar>;

/// Structure constants of the graded dual of a presentation, on the dual
/// monomial basis. Tensor pairing convention:
///   < phi (x) psi, a (x) b > = (-1)^{|psi||a|} phi(a) psi(b).
class DualAlgebra {
public:
    DualAlgebra() = default;
    DualAlgebra(Prime p, std::vector<unsigned> grading) : p_(p), grading_(std::move(grading)) {
        const std::size_t n = grading_.size();
        mult_.assign(n, std::vector<SparseVec>(n));
        comult_.assign(n, {});
    }

    unsigned p() const { return p_.value(); }
    const Prime& prime() const { return p_; }
    std::size_t dim() const { return grading_.size(); }
    unsigned degree(BasisIndex i) const { return grading_[i]; }
    const std::vector<unsigned>& grading() const { return grading_; }

    /// Basis index of the unit (the counit functional of the source).
    BasisIndex unit_index() const { return 0; }
    /// Counit: evaluation at the source's unit monomial.
    Scalar counit(const Vec& v) const { return v[0]; }

    const SparseVec& mult(BasisIndex a, BasisIndex b) const { return mult_[a][b]; }
    SparseVec& mult(BasisIndex a, BasisIndex b) { return mult_[a][b]; }
    const TensorElement& comult(BasisIndex k) const { return comult_[k]; }
    TensorElement& comult(BasisIndex k) { return comult_[k]; }

    Vec zero() const { return Vec(dim(), 0); }

    Vec unit_vec() const {
        Vec v = zero();
        v[0] = 1;
        return v;
    }

    Vec basis_vec(BasisIndex i) const {
        Vec v = zero();
        v[i] = 1;
        return v;
    }

    Vec add(Vec a, const Vec& b) const {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = add_mod(a[i], b[i], p());
        return a;
    }

    Vec scale(Vec a, Scalar c) const {
        for (auto& x : a) x = mul_mod(x, c, p());
        return a;
    }

    Vec product(const Vec& a, const Vec& b) const {
        Vec r = zero();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (!b[j]) continue;
                Scalar c = mul_mod(a[i], b[j], p());
                for (auto& [k, v] : mult_[i][j]) r[k] = add_mod(r[k], mul_mod(c, v, p()), p());
            }
        }
        return r;
    }

    Vec power(const Vec& a, std::uint64_t e) const {
        Vec r = unit_vec();
        Vec base = a;
        while (e) {
            if (e & 1) r = product(r, base);
            e >>= 1;
            if (e) base = product(base, base);
        }
        return r;
    }

    bool is_zero(const Vec& v) const {
        for (Scalar c : v)
            if (c) return false;
        return true;
    }

    bool is_homogeneous(const Vec& v, unsigned* deg_out = nullptr) const {
        bool first = true;
        unsigned d = 0;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!v[i]) continue;
            if (first) {
                d = grading_[i];
                first = false;
            } else if (grading_[i] != d) {
                return false;
            }
        }
        if (deg_out) *deg_out = first ? 0 : d;
        return true;
    }

    TensorElement comult_of(const Vec& v) const {
        TensorElement r;
        for (std::size_t k = 0; k < dim(); ++k) {
            if (!v[k]) continue;
            for (auto& [kk, c] : comult_[k].terms)
                r.add_term(tensor_left(kk), tensor_right(kk), mul_mod(v[k], c, p()), p());
        }
        return r;
    }

    TensorElement reduced_comult_of(const Vec& v) const {
        TensorElement r = comult_of(v);
        for (std::size_t k = 0; k < dim(); ++k) {
            if (!v[k]) continue;
            r.add_term(BasisIndex(k), 0, neg_mod(v[k], p()), p());
            r.add_term(0, BasisIndex(k), neg_mod(v[k], p()), p());
        }
        return r;
    }

    bool is_primitive(const Vec& v) const { return reduced_comult_of(v).is_zero(); }

private:
    Prime p_{2};
    std::vector<unsigned> grading_;
    std::vector<std::vector<SparseVec>> mult_;
    std::vector<TensorElement> comult_;
};

/// Graded dual of a presentation. Multiplication is dual to the coproduct,
/// comultiplication dual to the product; associativity is verified on all
/// basis triples and the defining pairing re-verified on random triples.
inline DualAlgebra dualize(const HopfPresentation& h, bool verify = true) {
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());
    DualAlgebra d(h.prime(), [&] {
        std::vector<unsigned> g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = h.degree(BasisIndex(i));
        return g;
    }());

    // mult: coefficient of e_k^* in e_a^* e_b^*  =  (-1)^{|a||b|} [a (x) b](Delta e_k)
    for (std::size_t k = 0; k < n; ++k) {
        for (auto& [kk, c] : h.coproduct(BasisIndex(k)).terms) {
            BasisIndex a = tensor_left(kk), b = tensor_right(kk);
            Scalar coeff = c;
            if ((h.degree(a) & 1u) && (h.degree(b) & 1u)) coeff = neg_mod(coeff, p);
            SparseVec& cell = d.mult(a, b);
            Scalar& slot = cell[BasisIndex(k)];
            slot = add_mod(slot, coeff, p);
            if (!slot) cell.erase(BasisIndex(k));
        }
    }

    // comult: coefficient of e_i^* (x) e_j^* in Delta(e_k^*) = (-1)^{|i||j|} [e_k](e_i e_j)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            auto m = h.basis().mono_mul(BasisIndex(i), BasisIndex(j));
            if (!m) continue;
            Scalar coeff = m->first < 0 ? neg_mod(1, p) : 1;
            if ((h.degree(BasisIndex(i)) & 1u) && (h.degree(BasisIndex(j)) & 1u))
                coeff = neg_mod(coeff, p);
            d.comult(m->second).add_term(BasisIndex(i), BasisIndex(j), coeff, p);
        }
    }

    if (verify) {
        // associativity on all basis triples
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Vec ab = d.product(d.basis_vec(BasisIndex(a)), d.basis_vec(BasisIndex(b)));
                for (std::size_t c = 0; c < n; ++c) {
                    Vec bc = d.product(d.basis_vec(BasisIndex(b)), d.basis_vec(BasisIndex(c)));
                    Vec left = d.product(ab, d.basis_vec(BasisIndex(c)));
                    Vec right = d.product(d.basis_vec(BasisIndex(a)), bc);
                    if (left != right)
                        throw AlgebraError(Errc::condition_disagreement, "dual algebra not associative");
                }
            }
        // unit and counit
        for (std::size_t a = 0; a < n; ++a) {
            Vec e = d.basis_vec(BasisIndex(a));
            if (d.product(d.unit_vec(), e) != e || d.product(e, d.unit_vec()) != e)
                throw AlgebraError(Errc::condition_disagreement, "dual unit law failed");
        }
        // pairing re-check on random triples: <phi psi, m> = <phi (x) psi, Delta m>
        std::mt19937 rng(12345);
        for (int trial = 0; trial < 100; ++trial) {
            BasisIndex a = BasisIndex(rng() % n), b = BasisIndex(rng() % n), m = BasisIndex(rng() % n);
            Vec prod = d.product(d.basis_vec(a), d.basis_vec(b));
            Scalar lhs = prod[m];
            unsigned rhs = 0;
            for (auto& [kk, c] : h.coproduct(m).terms) {
                if (tensor_left(kk) != a || tensor_right(kk) != b) continue;
                Scalar s = c;
                if ((h.degree(b) & 1u) && (h.degree(a) & 1u)) s = neg_mod(s, p);
                rhs = add_mod(Scalar(rhs), s, p);
            }
            if (lhs != Scalar(rhs))
                throw AlgebraError(Errc::condition_disagreement, "dual pairing check failed");
        }
    }
    return d;
}

/// Dualizing the dual must reproduce the original structure constants under
/// the canonical identification.
inline bool double_dual_check(const HopfPresentation& h) {
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());
    DualAlgebra d = dualize(h, false);

    // mult of A** from comult of the dual; must match mono_mul
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec expect(n, 0);
            auto m = h.basis().mono_mul(BasisIndex(i), BasisIndex(j));
            if (m) expect[m->second] = m->first < 0 ? neg_mod(1, p) : 1;
            Vec got(n, 0);
            for (std::size_t k = 0; k < n; ++k) {
                auto it = d.comult(BasisIndex(k)).terms.find(tensor_key(BasisIndex(i), BasisIndex(j)));
                if (it == d.comult(BasisIndex(k)).terms.end()) continue;
                Scalar c = it->second;
                if ((h.degree(BasisIndex(i)) & 1u) && (h.degree(BasisIndex(j)) & 1u)) c = neg_mod(c, p);
                got[k] = c;
            }
            if (expect != got) return false;
        }

    // comult of A** from mult of the dual; must match the coproduct table
    for (std::size_t k = 0; k < n; ++k) {
        TensorElement got;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto it = d.mult(BasisIndex(i), BasisIndex(j)).find(BasisIndex(k));
                if (it == d.mult(BasisIndex(i), BasisIndex(j)).end()) continue;
                Scalar c = it->second;
                if ((h.degree(BasisIndex(i)) & 1u) && (h.degree(BasisIndex(j)) & 1u)) c = neg_mod(c, p);
                got.add_term(BasisIndex(i), BasisIndex(j), c, p);
            }
        if (!(got == h.coproduct(BasisIndex(k)))) return false;
    }
    return true;
}

/// Solution space of the primitivity equation in a fixed internal degree.
inline Subspace primitives_of_degree(const DualAlgebra& d, unsigned degree) {
    const unsigned p = d.p();
    const std::size_t n = d.dim();
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i)
        if (d.degree(BasisIndex(i)) == degree) cols.push_back(i);
    if (cols.empty()) return Subspace::zero(p, n);

    // rows indexed by tensor pairs; build the matrix of chi -> reduced_comult(chi)
    std::map<std::uint64_t, std::size_t> row_of;
    std::vector<std::map<std::size_t, Scalar>> col_entries(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Vec v = d.basis_vec(BasisIndex(cols[c]));
        TensorElement t = d.reduced_comult_of(v);
        for (auto& [kk, coeff] : t.terms) {
            auto [it, inserted] = row_of.try_emplace(kk, row_of.size());
            (void)inserted;
            col_entries[c][it->second] = coeff;
        }
    }
    FpMatrix m(p, row_of.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto& [r, coeff] : col_entries[c]) m.at(r, c) = coeff;
    Subspace ker = kernel_basis(m);

    // re-embed into the full coordinate space
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < ker.dim(); ++i) {
        Vec small = ker.basis_vector(i);
        Vec big(n, 0);
        for (std::size_t c = 0; c < cols.size(); ++c) big[cols[c]] = small[c];
        basis.push_back(big);
    }
    return Subspace::from_span(p, n, basis);
}

/// Per-degree primitive spaces, for every degree that occurs in the grading.
inline std::map<unsigned, Subspace> primitives(const DualAlgebra& d) {
    std::map<unsigned, Subspace> out;
    std::map<unsigned, bool> seen;
    for (std::size_t i = 0; i < d.dim(); ++i) seen[d.degree(BasisIndex(i))] = true;
    for (auto& [deg, _] : seen) {
        Subspace s = primitives_of_degree(d, deg);
        if (s.dim() > 0) out[deg] = s;
    }
    return out;
}

/// Primitive spaces of the presentation itself (solutions of the reduced
/// coproduct equation inside A).
inline std::map<unsigned, Subspace> primitives_of_presentation(const HopfPresentation& h) {
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());
    std::map<unsigned, std::vector<std::size_t>> cols_by_deg;
    for (std::size_t i = 0; i < n; ++i) cols_by_deg[h.degree(BasisIndex(i))].push_back(i);
    std::map<unsigned, Subspace> out;
    for (auto& [deg, cols] : cols_by_deg) {
        std::map<std::uint64_t, std::size_t> row_of;
        std::vector<std::map<std::size_t, Scalar>> col_entries(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            TensorElement t = h.deltabar(Element::monomial(BasisIndex(cols[c])));
            for (auto& [kk, coeff] : t.terms) {
                auto [it, inserted] = row_of.try_emplace(kk, row_of.size());
                (void)inserted;
                col_entries[c][it->second] = coeff;
            }
        }
        FpMatrix m(p, row_of.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (auto& [r, coeff] : col_entries[c]) m.at(r, c) = coeff;
        Subspace ker = kernel_basis(m);
        std::vector<Vec> basis;
        for (std::size_t i = 0; i < ker.dim(); ++i) {
            Vec small = ker.basis_vector(i);
            Vec big(n, 0);
            for (std::size_t c = 0; c < cols.size(); ++c) big[cols[c]] = small[c];
            basis.push_back(big);
        }
        Subspace s = Subspace::from_span(p, n, basis);
        if (s.dim() > 0) out[deg] = s;
    }
    return out;
}

/// [a, b] = ab - (-1)^{|a||b|} ba for homogeneous a, b.
inline Vec graded_commutator(const DualAlgebra& d, const Vec& a, const Vec& b) {
    unsigned da = 0, db = 0;
    if (!d.is_homogeneous(a, &da) || !d.is_homogeneous(b, &db))
        throw AlgebraError(Errc::invalid_argument, "graded commutator needs homogeneous inputs");
    Vec ab = d.product(a, b);
    Vec ba = d.product(b, a);
    Scalar s = ((da & 1u) && (db & 1u)) ? neg_mod(1, d.p()) : 1;
    return d.add(ab, d.scale(ba, neg_mod(s, d.p())));
}

}  // namespace grhopf
