#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "axioms.hpp"
#include "dual.hpp"
#include "presentation.hpp"

namespace grhopf {

/// Two-sided homogeneous ideal, stored as an echelonized subspace together
/// with the generating elements it was closed from.
struct IdealSubspace {
    Subspace space;
    std::vector<Element> generator_elements;
};

/// Closure of a spanning set under multiplication by all algebra generators.
/// Graded commutativity makes one-sided closure two-sided.
inline IdealSubspace ideal_from_elements(const HopfPresentation& h, std::vector<Element> gens) {
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());
    std::vector<Vec> vecs;
    for (const Element& e : gens)
        if (!e.is_zero()) vecs.push_back(h.to_vec(e));
    Subspace cur = Subspace::from_span(p, n, vecs);
    for (;;) {
        std::vector<Vec> next;
        for (std::size_t i = 0; i < cur.dim(); ++i) {
            Element v = h.from_vec(cur.basis_vector(i));
            for (std::size_t g = 0; g < h.num_gens(); ++g) {
                Element prod = h.mul(v, h.gen_element(g));
                if (!prod.is_zero()) next.push_back(h.to_vec(prod));
            }
        }
        Subspace grown = cur;
        for (auto& v : next) grown = grown.sum(Subspace::from_span(p, n, {v}));
        if (grown == cur) break;
        cur = grown;
    }
    return IdealSubspace{cur, std::move(gens)};
}

/// Graded-ideal sanity: the span must contain every homogeneous component of
/// each of its members (true automatically when built from homogeneous
/// generators; checked for externally supplied spans).
inline bool ideal_is_graded(const HopfPresentation& h, const Subspace& s) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Vec v = s.basis_vector(i);
        std::map<unsigned, Vec> comps;
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (!v[c]) continue;
            auto& slot = comps.try_emplace(h.degree(BasisIndex(c)), Vec(v.size(), 0)).first->second;
            slot[c] = v[c];
        }
        for (auto& [d, comp] : comps)
            if (!s.contains(comp)) return false;
    }
    return true;
}

struct HopfIdealCheck {
    bool ok = true;
    std::optional<Element> witness;
};

/// A homogeneous ideal J is a Hopf ideal iff eps(J) = 0 and
/// Delta(J) <= J (x) A + A (x) J.
inline HopfIdealCheck is_hopf_ideal(const HopfPresentation& h, const IdealSubspace& ideal) {
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());
    const Subspace& J = ideal.space;

    HopfIdealCheck res;
    for (std::size_t i = 0; i < J.dim(); ++i) {
        Vec v = J.basis_vector(i);
        if (v[0] != 0) {  // eps of a monomial combination = coefficient of 1
            res.ok = false;
            res.witness = h.from_vec(v);
            return res;
        }
    }

    // coordinates of J (x) A + A (x) J inside A (x) A
    std::vector<Vec> span;
    auto tensor_coord = [&](const TensorElement& t) {
        Vec v(n * n, 0);
        for (auto& [k, c] : t.terms) v[std::size_t(tensor_left(k)) * n + tensor_right(k)] = c;
        return v;
    };
    for (std::size_t i = 0; i < J.dim(); ++i) {
        Element ji = h.from_vec(J.basis_vector(i));
        for (std::size_t b = 0; b < n; ++b) {
            Vec left(n * n, 0), right(n * n, 0);
            for (auto& [k, c] : ji.terms) {
                left[std::size_t(k) * n + b] = c;
                right[std::size_t(b) * n + k] = c;
            }
            span.push_back(left);
            span.push_back(right);
        }
    }
    Subspace big = Subspace::from_span(p, n * n, span);
    for (std::size_t i = 0; i < J.dim(); ++i) {
        Element ji = h.from_vec(J.basis_vector(i));
        TensorElement d = h.delta(ji);
        if (!big.contains(tensor_coord(d))) {
            res.ok = false;
            res.witness = ji;
            return res;
        }
    }
    return res;
}

/// Surjection of presentations with its kernel ideal. The matrix maps source
/// monomial coordinates to target monomial coordinates.
struct QuotientMap {
    PresPtr source;
    PresPtr target;
    FpMatrix matrix;  // target dim x source dim
    IdealSubspace kernel_ideal;

    Vec apply_vec(const Vec& v) const { return matrix.apply(v); }

    Element apply(const Element& e) const {
        Vec v(source->dim(), 0);
        for (auto& [k, c] : e.terms) v[k] = c;
        return target->from_vec(matrix.apply(v));
    }
};

inline QuotientMap identity_quotient(PresPtr h) {
    QuotientMap q;
    q.source = h;
    q.target = h;
    q.matrix = FpMatrix::identity(h->p(), std::size_t(h->dim()));
    q.kernel_ideal = IdealSubspace{Subspace::zero(h->p(), std::size_t(h->dim())), {}};
    return q;
}

/// Full homomorphism audit: multiplicativity, coproduct compatibility, counit
/// compatibility, grading, surjectivity and kernel consistency.
inline void validate_quotient_map(const QuotientMap& q) {
    const HopfPresentation& A = *q.source;
    const HopfPresentation& B = *q.target;
    const unsigned p = A.p();
    const std::size_t n = std::size_t(A.dim());
    if (B.p() != p) throw AlgebraError(Errc::invalid_argument, "prime mismatch in quotient map");
    if (q.matrix.rows != B.dim() || q.matrix.cols != n)
        throw AlgebraError(Errc::dimension_mismatch, "quotient matrix shape");
    if (q.apply(Element::monomial(0)) != Element::monomial(0))
        throw AlgebraError(Errc::invalid_argument, "quotient map not unital");

    for (std::size_t i = 0; i < n; ++i) {
        Element bi = q.apply(Element::monomial(BasisIndex(i)));
        // grading
        unsigned d = 0;
        if (!B.is_homogeneous(bi, &d) || (!bi.is_zero() && d != A.degree(BasisIndex(i))))
            throw AlgebraError(Errc::invalid_argument, "quotient map not graded");
        // counit
        if (B.counit(bi) != (i == 0 ? 1 : 0))
            throw AlgebraError(Errc::invalid_argument, "quotient map not counital");
        // coproduct compatibility: (q (x) q) Delta_A = Delta_B q
        TensorElement lhs;
        for (auto& [k, c] : A.coproduct(BasisIndex(i)).terms) {
            Element l = q.apply(Element::monomial(tensor_left(k)));
            Element r = q.apply(Element::monomial(tensor_right(k)));
            for (auto& [kl, cl] : l.terms)
                for (auto& [kr, cr] : r.terms)
                    lhs.add_term(kl, kr, mul_mod(c, mul_mod(cl, cr, p), p), p);
        }
        if (!(lhs == B.delta(bi)))
            throw AlgebraError(Errc::invalid_argument, "quotient map not a coalgebra map");
    }
    // full pairwise multiplicativity on small sources; on large ones the
    // generator-times-basis audit suffices (products factor through
    // generators by induction on monomial length)
    if (n <= 512) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Element prod_src =
                    A.mul(Element::monomial(BasisIndex(i)), Element::monomial(BasisIndex(j)));
                Element lhs = q.apply(prod_src);
                Element rhs = B.mul(q.apply(Element::monomial(BasisIndex(i))),
                                    q.apply(Element::monomial(BasisIndex(j))));
                if (lhs != rhs)
                    throw AlgebraError(Errc::invalid_argument, "quotient map not multiplicative");
            }
    } else {
        for (std::size_t g = 0; g < A.num_gens(); ++g)
            for (std::size_t j = 0; j < n; ++j) {
                Element prod_src = A.mul(A.gen_element(g), Element::monomial(BasisIndex(j)));
                Element lhs = q.apply(prod_src);
                Element rhs = B.mul(q.apply(A.gen_element(g)), q.apply(Element::monomial(BasisIndex(j))));
                if (lhs != rhs)
                    throw AlgebraError(Errc::invalid_argument, "quotient map not multiplicative");
            }
    }
    if (rref(q.matrix).rank != B.dim())
        throw AlgebraError(Errc::invalid_argument, "quotient map not surjective");
    if (!(kernel_basis(q.matrix) == q.kernel_ideal.space))
        throw AlgebraError(Errc::invalid_argument, "kernel ideal inconsistent with matrix");
}

namespace detail {

/// Finite-dimensional quotient algebra A/J presented on the monomial residue
/// basis (non-pivot monomials of J's echelon form).
struct ResidueAlgebra {
    const HopfPresentation* src = nullptr;
    const Subspace* J = nullptr;
    std::vector<BasisIndex> rep;           // residue basis, as source monomials
    std::vector<std::size_t> pos_of;       // source monomial -> residue position or npos
    FpMatrix proj;                          // residue dim x source dim

    static constexpr std::size_t npos = std::size_t(-1);

    ResidueAlgebra(const HopfPresentation& h, const Subspace& j) : src(&h), J(&j) {
        const std::size_t n = std::size_t(h.dim());
        std::vector<bool> is_pivot(n, false);
        for (std::size_t r = 0; r < j.dim(); ++r) {
            Vec v = j.basis_vector(r);
            for (std::size_t c = 0; c < n; ++c)
                if (v[c]) {
                    is_pivot[c] = true;
                    break;
                }
        }
        pos_of.assign(n, npos);
        for (std::size_t c = 0; c < n; ++c)
            if (!is_pivot[c]) {
                pos_of[c] = rep.size();
                rep.push_back(BasisIndex(c));
            }
        proj = FpMatrix(h.p(), rep.size(), n);
        for (std::size_t c = 0; c < n; ++c) {
            Vec unit(n, 0);
            unit[c] = 1;
            Vec res = j.reduce(unit);
            for (std::size_t r = 0; r < rep.size(); ++r) proj.at(r, c) = res[rep[r]];
        }
    }

    std::size_t dim() const { return rep.size(); }
    unsigned degree(std::size_t r) const { return src->degree(rep[r]); }

    Vec project(const Element& e) const {
        Vec v(src->dim(), 0);
        for (auto& [k, c] : e.terms) v[k] = c;
        return proj.apply(v);
    }

    Vec product(const Vec& a, const Vec& b) const {
        const unsigned p = src->p();
        Element acc;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (!b[j]) continue;
                Element prod = src->mul(Element::monomial(rep[i]), Element::monomial(rep[j]));
                acc = src->add(acc, src->scale(prod, mul_mod(a[i], b[j], p)));
            }
        }
        return project(acc);
    }

    Vec power(Vec a, std::uint64_t e) const {
        Vec r(dim(), 0);
        r[0] = 1;  // monomial 1 is never a pivot of a Hopf ideal
        while (e) {
            if (e & 1) r = product(r, a);
            e >>= 1;
            if (e) a = product(a, a);
        }
        return r;
    }
};

}  // namespace detail

/// Quotient of a presentation by a Hopf ideal. The result is re-presented as
/// a truncated graded-commutative polynomial algebra on a minimal generating
/// set of the residue algebra, with the induced reduced coproduct; the
/// monomial-basis bijection is verified and the returned map validated.
inline std::pair<PresPtr, QuotientMap> quotient(PresPtr hp, const IdealSubspace& ideal) {
    const HopfPresentation& h = *hp;
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());

    if (!ideal_is_graded(h, ideal.space))
        throw AlgebraError(Errc::not_hopf_ideal, "ideal is not graded");
    HopfIdealCheck chk = is_hopf_ideal(h, ideal);
    if (!chk.ok)
        throw AlgebraError(Errc::not_hopf_ideal,
                           "not a Hopf ideal; witness " +
                               (chk.witness ? h.element_string(*chk.witness) : std::string("?")));

    detail::ResidueAlgebra R(h, ideal.space);
    const std::size_t m = R.dim();

    // minimal generators: complete I_B^2 to I_B inside the residue algebra
    std::vector<Vec> aug_basis, sq_span;
    for (std::size_t i = 1; i < m; ++i) {  // residue monomial 0 is the unit
        Vec v(m, 0);
        v[i] = 1;
        aug_basis.push_back(v);
    }
    Subspace IB = Subspace::from_span(p, m, aug_basis);
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 1; j < m; ++j) {
            Vec a(m, 0), b(m, 0);
            a[i] = 1;
            b[j] = 1;
            Vec prod = R.product(a, b);
            if (!std::all_of(prod.begin(), prod.end(), [](Scalar c) { return c == 0; }))
                sq_span.push_back(prod);
        }
    Subspace IB2 = Subspace::from_span(p, m, sq_span);
    std::vector<Vec> gen_vecs = IB.quotient_representatives(IB2);

    // sort generator candidates by (degree, residue position of leading term)
    std::vector<std::pair<std::pair<unsigned, std::size_t>, Vec>> tagged;
    for (auto& v : gen_vecs) {
        std::size_t lead = 0;
        while (lead < m && !v[lead]) ++lead;
        unsigned deg = R.degree(lead);
        tagged.push_back({{deg, lead}, v});
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<GenSpec> new_gens;
    std::vector<Vec> new_gen_vecs;
    for (auto& [key, v] : tagged) {
        GenSpec g;
        g.degree = key.first;
        // name after a source generator when the representative is exactly its image
        g.name = "g" + std::to_string(new_gens.size());
        for (std::size_t src_gen = 0; src_gen < h.num_gens(); ++src_gen) {
            Vec img = R.project(h.gen_element(src_gen));
            if (img == v) {
                g.name = h.gen(src_gen).name;
                break;
            }
        }
        if (p > 2 && key.first % 2 == 1) {
            Vec sq = R.product(v, v);
            if (!std::all_of(sq.begin(), sq.end(), [](Scalar c) { return c == 0; }))
                throw AlgebraError(Errc::presentation_unrealizable,
                                   "odd-degree residue generator does not square to zero");
            g.odd_trunc = true;
            g.height = 1;
        } else {
            unsigned e = 0;
            Vec pw = v;
            std::uint64_t total = 1;
            while (!std::all_of(pw.begin(), pw.end(), [](Scalar c) { return c == 0; })) {
                pw = R.power(v, total * p);
                total *= p;
                ++e;
                if (e > 64) throw AlgebraError(Errc::presentation_unrealizable, "generator not nilpotent");
            }
            g.height = e;
        }
        new_gens.push_back(g);
        new_gen_vecs.push_back(v);
    }
    // duplicate names get positional suffixes
    for (std::size_t i = 0; i < new_gens.size(); ++i)
        for (std::size_t j = i + 1; j < new_gens.size(); ++j)
            if (new_gens[i].name == new_gens[j].name) new_gens[j].name += "_" + std::to_string(j);

    MonomialBasis target_basis(h.prime(), new_gens);
    if (target_basis.dim() != m)
        throw AlgebraError(Errc::presentation_unrealizable,
                           "residue algebra is not a truncated polynomial algebra on the chosen generators");

    // change of basis: target monomials evaluated in the residue algebra
    FpMatrix M(p, m, m);  // columns: target monomial index -> residue coordinates
    for (std::size_t t = 0; t < m; ++t) {
        auto expo = target_basis.exponents(BasisIndex(t));
        Vec acc(m, 0);
        acc[0] = 1;
        for (std::size_t g = 0; g < new_gens.size(); ++g)
            for (BasisIndex e = 0; e < expo[g]; ++e) acc = R.product(acc, new_gen_vecs[g]);
        for (std::size_t r = 0; r < m; ++r) M.at(r, t) = acc[r];
    }
    // invert M by solving against the identity
    FpMatrix Minv(p, m, m);
    {
        RrefResult rr = rref([&] {
            FpMatrix aug(p, m, 2 * m);
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t c = 0; c < m; ++c) aug.at(r, c) = M.at(r, c);
                aug.at(r, m + r) = 1;
            }
            return aug;
        }());
        if (rr.rank != m)
            throw AlgebraError(Errc::presentation_unrealizable, "monomial evaluation map is singular");
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) Minv.at(r, c) = rr.mat.at(r, m + c);
    }

    // residue coproduct, pushed through the basis change, gives deltabar
    auto to_target = [&](const Vec& residue) {
        return Minv.apply(residue);
    };
    std::vector<TensorElement> new_db(new_gens.size());
    for (std::size_t g = 0; g < new_gens.size(); ++g) {
        // Delta_B(gen) from a source lift: (proj (x) proj) Delta_A(lift)
        // lift: any source vector projecting to new_gen_vecs[g]
        Vec lift_target(n, 0);
        {
            auto sol = solve(R.proj, new_gen_vecs[g]);
            if (!sol) throw AlgebraError(Errc::presentation_unrealizable, "no lift for generator");
            lift_target = *sol;
        }
        TensorElement db;
        Element lift = h.from_vec(lift_target);
        TensorElement d = h.delta(lift);
        for (auto& [k, c] : d.terms) {
            Vec l = to_target(R.project(Element::monomial(tensor_left(k))));
            Vec r = to_target(R.project(Element::monomial(tensor_right(k))));
            for (std::size_t i = 0; i < m; ++i) {
                if (!l[i]) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    if (!r[j]) continue;
                    db.add_term(BasisIndex(i), BasisIndex(j), mul_mod(c, mul_mod(l[i], r[j], p), p), p);
                }
            }
        }
        // subtract primitive part: gen index in the target basis
        BasisIndex gi = target_basis.gen_index(g);
        db.add_term(gi, 0, neg_mod(1, p), p);
        db.add_term(0, gi, neg_mod(1, p), p);
        new_db[g] = db;
    }

    PresPtr target = make_presentation(h.prime(), new_gens, new_db);
    QuotientMap q;
    q.source = hp;
    q.target = target;
    q.matrix = FpMatrix(p, m, n);
    {
        // target coordinates of each source monomial: Minv . proj
        for (std::size_t c = 0; c < n; ++c) {
            Vec col = to_target(R.project(Element::monomial(BasisIndex(c))));
            for (std::size_t r = 0; r < m; ++r) q.matrix.at(r, c) = col[r];
        }
    }
    q.kernel_ideal = ideal;
    validate_quotient_map(q);
    return {target, q};
}

/// The degree-0 part as its own presentation; fails when a degree-0
/// generator's reduced coproduct leaves degree 0.
inline PresPtr degree_zero_part(const HopfPresentation& h) {
    std::vector<GenSpec> gens;
    std::vector<std::size_t> keep;
    for (std::size_t g = 0; g < h.num_gens(); ++g)
        if (h.gen(g).degree == 0) {
            gens.push_back(h.gen(g));
            keep.push_back(g);
        }
    MonomialBasis nb(h.prime(), gens);
    // re-index: source monomial supported on kept generators -> new index
    auto reindex = [&](BasisIndex src) -> std::optional<BasisIndex> {
        auto e = h.basis().exponents(src);
        std::vector<BasisIndex> ne(keep.size(), 0);
        for (std::size_t g = 0, k = 0; g < h.num_gens(); ++g) {
            bool kept = k < keep.size() && keep[k] == g;
            if (kept) {
                ne[k++] = e[g];
            } else if (e[g]) {
                return std::nullopt;
            }
        }
        return nb.index_of(ne);
    };
    std::vector<TensorElement> db(gens.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (auto& [key, c] : h.deltabar_gen(keep[k]).terms) {
            auto l = reindex(tensor_left(key));
            auto r = reindex(tensor_right(key));
            if (!l || !r)
                throw AlgebraError(Errc::not_sub_hopf,
                                   "degree-0 generator coproduct escapes degree 0: " + h.gen(keep[k]).name);
            db[k].add_term(*l, *r, c, h.p());
        }
    }
    return make_presentation(h.prime(), gens, db);
}

/// Quotient by the ideal generated by the degree-0 augmentation ideal:
/// drop the degree-0 generators and substitute zero for them in deltabar.
inline std::pair<PresPtr, QuotientMap> connectivization(PresPtr hp) {
    const HopfPresentation& h = *hp;
    const unsigned p = h.p();
    std::vector<GenSpec> gens;
    std::vector<std::size_t> keep;
    std::vector<Element> killed;
    for (std::size_t g = 0; g < h.num_gens(); ++g) {
        if (h.gen(g).degree == 0) {
            killed.push_back(h.gen_element(g));
        } else {
            gens.push_back(h.gen(g));
            keep.push_back(g);
        }
    }
    MonomialBasis nb(h.prime(), gens);
    auto reindex = [&](BasisIndex src) -> std::optional<BasisIndex> {
        auto e = h.basis().exponents(src);
        std::vector<BasisIndex> ne(keep.size(), 0);
        std::size_t k = 0;
        for (std::size_t g = 0; g < h.num_gens(); ++g) {
            bool kept = k < keep.size() && keep[k] == g;
            if (kept) {
                ne[k++] = e[g];
            } else if (e[g]) {
                return std::nullopt;  // touches a killed degree-0 generator
            }
        }
        return nb.index_of(ne);
    };
    std::vector<TensorElement> db(gens.size());
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (auto& [key, c] : h.deltabar_gen(keep[k]).terms) {
            auto l = reindex(tensor_left(key));
            auto r = reindex(tensor_right(key));
            if (l && r) db[k].add_term(*l, *r, c, p);
        }
    PresPtr target = make_presentation(h.prime(), gens, db);

    QuotientMap q;
    q.source = hp;
    q.target = target;
    q.matrix = FpMatrix(p, std::size_t(target->dim()), std::size_t(h.dim()));
    for (std::size_t c = 0; c < h.dim(); ++c) {
        auto t = reindex(BasisIndex(c));
        if (t) q.matrix.at(*t, c) = 1;
    }
    q.kernel_ideal = ideal_from_elements(h, killed);
    validate_quotient_map(q);
    return {target, q};
}

/// Ideal generated by the p^r-th powers of the augmentation-ideal generators.
inline IdealSubspace frobenius_kernel_ideal(const HopfPresentation& h, unsigned r) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < r; ++i) q *= h.p();
    std::vector<Element> gens;
    for (std::size_t g = 0; g < h.num_gens(); ++g) gens.push_back(h.power(h.gen_element(g), q));
    return ideal_from_elements(h, gens);
}

/// Frobenius-kernel quotient presentation: heights clipped at r, reduced
/// coproduct truncated accordingly.
inline std::pair<PresPtr, QuotientMap> frobenius_quotient(PresPtr hp, unsigned r) {
    if (r == 0) throw AlgebraError(Errc::invalid_argument, "Frobenius height must be positive");
    const HopfPresentation& h = *hp;
    std::vector<GenSpec> gens;
    for (std::size_t g = 0; g < h.num_gens(); ++g) {
        GenSpec gs = h.gen(g);
        if (!gs.odd_trunc) gs.height = std::min(gs.height, r);
        gens.push_back(gs);
    }
    MonomialBasis nb(h.prime(), gens);
    auto reindex = [&](BasisIndex src) -> std::optional<BasisIndex> {
        auto e = h.basis().exponents(src);
        for (std::size_t g = 0; g < gens.size(); ++g)
            if (e[g] >= nb.bound(g)) return std::nullopt;
        return nb.index_of(e);
    };
    std::vector<TensorElement> db(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (auto& [key, c] : h.deltabar_gen(g).terms) {
            auto l = reindex(tensor_left(key));
            auto rr = reindex(tensor_right(key));
            if (l && rr) db[g].add_term(*l, *rr, c, h.p());
        }
    PresPtr target = make_presentation(h.prime(), gens, db);
    QuotientMap q;
    q.source = hp;
    q.target = target;
    q.matrix = FpMatrix(h.p(), std::size_t(target->dim()), std::size_t(h.dim()));
    for (std::size_t c = 0; c < h.dim(); ++c) {
        auto t = reindex(BasisIndex(c));
        if (t) q.matrix.at(*t, c) = 1;
    }
    q.kernel_ideal = frobenius_kernel_ideal(h, r);
    validate_quotient_map(q);
    return {target, q};
}

enum class CotensorSide { left, right };

/// Cotensor product over a quotient q : A -> B.
///   right: { a : (id (x) q) Delta(a) = a (x) 1 }
///   left : { a : (q (x) id) Delta(a) = 1 (x) a }
inline Subspace cotensor(const HopfPresentation& h, const QuotientMap& q, CotensorSide side) {
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());
    const std::size_t m = q.matrix.rows;

    // rows: pairs (A-basis, B-basis); columns: A-basis
    FpMatrix sys(p, n * m, n);
    for (std::size_t col = 0; col < n; ++col) {
        for (auto& [k, c] : h.coproduct(BasisIndex(col)).terms) {
            BasisIndex a = tensor_left(k), b = tensor_right(k);
            if (side == CotensorSide::right) {
                for (std::size_t v = 0; v < m; ++v) {
                    Scalar qc = q.matrix.at(v, b);
                    if (!qc) continue;
                    std::size_t row = std::size_t(a) * m + v;
                    sys.at(row, col) = add_mod(sys.at(row, col), mul_mod(c, qc, p), p);
                }
            } else {
                for (std::size_t v = 0; v < m; ++v) {
                    Scalar qc = q.matrix.at(v, a);
                    if (!qc) continue;
                    std::size_t row = std::size_t(b) * m + v;
                    sys.at(row, col) = add_mod(sys.at(row, col), mul_mod(c, qc, p), p);
                }
            }
        }
        // subtract a (x) 1 (or 1 (x) a): unit of B is its monomial index 0
        std::size_t row = std::size_t(col) * m + 0;
        sys.at(row, col) = sub_mod(sys.at(row, col), 1, p);
    }
    return kernel_basis(sys);
}

}  // namespace grhopf
