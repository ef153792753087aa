#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dual.hpp"
#include "quotient.hpp"

namespace grhopf {

/// Conormality record for a quotient q : A -> B. Conditions evaluated:
///   (a) I.L = L.I for the image I of the dual augmentation ideal in L = A*,
///   (b) I.L is a Hopf ideal of L,
///   (d) I.L is a graded Lie ideal of L,
///   (h) the left and right cotensors of A over B agree.
/// The four verdicts must coincide; disagreement is an implementation bug.
struct ConormalCertificate {
    Subspace left_cotensor;
    Subspace right_cotensor;
    bool equal = false;
    bool cond_a = false;
    bool hopf_ideal_witness = false;  // condition (b)
    bool lie_ideal_witness = false;   // condition (d)
    bool dim_identity = false;        // dim A == dim cotensor * dim B
    bool conormal() const { return equal; }
};

namespace detail {

struct DualSidePieces {
    Subspace image;      // image of B* in A*
    Subspace aug_image;  // image of the augmentation ideal of B*
    Subspace right_ideal;  // I . L
    Subspace left_ideal;   // L . I
};

inline DualSidePieces dual_side(const DualAlgebra& L, const QuotientMap& q) {
    const unsigned p = L.p();
    const std::size_t n = L.dim();
    const std::size_t m = q.matrix.rows;
    std::vector<Vec> img_rows, aug_rows;
    for (std::size_t v = 0; v < m; ++v) {
        Vec row(n, 0);
        for (std::size_t c = 0; c < n; ++c) row[c] = q.matrix.at(v, c);
        img_rows.push_back(row);
        if (v != 0) aug_rows.push_back(row);  // dual basis vector of a non-unit target monomial
    }
    DualSidePieces out;
    out.image = Subspace::from_span(p, n, img_rows);
    out.aug_image = Subspace::from_span(p, n, aug_rows);

    std::vector<Vec> right, left;
    for (std::size_t i = 0; i < out.aug_image.dim(); ++i) {
        Vec u = out.aug_image.basis_vector(i);
        for (std::size_t b = 0; b < n; ++b) {
            Vec ub = L.product(u, L.basis_vec(BasisIndex(b)));
            Vec bu = L.product(L.basis_vec(BasisIndex(b)), u);
            if (!L.is_zero(ub)) right.push_back(ub);
            if (!L.is_zero(bu)) left.push_back(bu);
        }
    }
    out.right_ideal = Subspace::from_span(p, n, right);
    out.left_ideal = Subspace::from_span(p, n, left);
    return out;
}

/// Hopf-ideal test for a subspace of the dual algebra: two-sidedness plus
/// the coideal condition Delta(J) <= J (x) L + L (x) J, with eps(J) = 0.
inline bool dual_subspace_is_hopf_ideal(const DualAlgebra& L, const Subspace& J) {
    const unsigned p = L.p();
    const std::size_t n = L.dim();
    for (std::size_t i = 0; i < J.dim(); ++i)
        if (L.counit(J.basis_vector(i)) != 0) return false;
    for (std::size_t i = 0; i < J.dim(); ++i) {
        Vec u = J.basis_vector(i);
        for (std::size_t b = 0; b < n; ++b) {
            if (!J.contains(L.product(u, L.basis_vec(BasisIndex(b))))) return false;
            if (!J.contains(L.product(L.basis_vec(BasisIndex(b)), u))) return false;
        }
    }
    // coideal: J (x) L + L (x) J spanned in coordinates of L (x) L
    std::vector<Vec> span;
    for (std::size_t i = 0; i < J.dim(); ++i) {
        Vec u = J.basis_vector(i);
        for (std::size_t b = 0; b < n; ++b) {
            Vec lft(n * n, 0), rgt(n * n, 0);
            for (std::size_t c = 0; c < n; ++c) {
                lft[c * n + b] = u[c];
                rgt[std::size_t(b) * n + c] = u[c];
            }
            span.push_back(lft);
            span.push_back(rgt);
        }
    }
    Subspace big = Subspace::from_span(p, n * n, span);
    for (std::size_t i = 0; i < J.dim(); ++i) {
        TensorElement d = L.comult_of(J.basis_vector(i));
        Vec coord(n * n, 0);
        for (auto& [k, c] : d.terms) coord[std::size_t(tensor_left(k)) * n + tensor_right(k)] = c;
        if (!big.contains(coord)) return false;
    }
    return true;
}

inline bool dual_subspace_is_lie_ideal(const DualAlgebra& L, const Subspace& J) {
    const std::size_t n = L.dim();
    for (std::size_t i = 0; i < J.dim(); ++i) {
        Vec u = J.basis_vector(i);
        // split into homogeneous components for the graded bracket
        std::map<unsigned, Vec> comps;
        for (std::size_t c = 0; c < n; ++c) {
            if (!u[c]) continue;
            auto& slot = comps.try_emplace(L.degree(BasisIndex(c)), Vec(n, 0)).first->second;
            slot[c] = u[c];
        }
        for (auto& [deg, comp] : comps)
            for (std::size_t b = 0; b < n; ++b)
                if (!J.contains(graded_commutator(L, L.basis_vec(BasisIndex(b)), comp))) return false;
    }
    return true;
}

}  // namespace detail

/// Full conormality certificate. The dual algebra may be supplied to avoid
/// re-dualizing in hot loops.
inline ConormalCertificate is_conormal(const HopfPresentation& h, const QuotientMap& q,
                                       const DualAlgebra* dual = nullptr) {
    DualAlgebra local;
    if (!dual) {
        local = dualize(h, false);
        dual = &local;
    }
    ConormalCertificate cert;
    cert.right_cotensor = cotensor(h, q, CotensorSide::right);
    cert.left_cotensor = cotensor(h, q, CotensorSide::left);
    cert.equal = cert.right_cotensor == cert.left_cotensor;

    detail::DualSidePieces ds = detail::dual_side(*dual, q);
    cert.cond_a = ds.right_ideal == ds.left_ideal;
    cert.hopf_ideal_witness = detail::dual_subspace_is_hopf_ideal(*dual, ds.right_ideal);
    cert.lie_ideal_witness = detail::dual_subspace_is_lie_ideal(*dual, ds.right_ideal);
    cert.dim_identity = h.dim() == cert.right_cotensor.dim() * q.target->dim();

    if (cert.cond_a != cert.equal || cert.hopf_ideal_witness != cert.equal ||
        cert.lie_ideal_witness != cert.equal)
        throw AlgebraError(Errc::condition_disagreement,
                           "conormality conditions disagree: a=" + std::to_string(cert.cond_a) +
                               " b=" + std::to_string(cert.hopf_ideal_witness) +
                               " d=" + std::to_string(cert.lie_ideal_witness) +
                               " h=" + std::to_string(cert.equal));
    return cert;
}

inline bool target_is_elementary(const HopfPresentation& t) {
    if (t.num_gens() != 1) return false;
    const GenSpec& g = t.gen(0);
    if (g.odd_trunc) return true;
    return g.height == 1;
}

/// Cocentrality of an elementary quotient: the dual generator must be central.
inline bool is_cocentral(const HopfPresentation& h, const QuotientMap& q,
                         const DualAlgebra* dual = nullptr) {
    (void)h;
    if (!target_is_elementary(*q.target))
        throw AlgebraError(Errc::target_not_elementary, "cocentrality needs an elementary target");
    DualAlgebra local;
    if (!dual) {
        local = dualize(*q.source, false);
        dual = &local;
    }
    const std::size_t n = dual->dim();
    // chi = pullback of the dual generator: row of q at the generator monomial (index 1)
    Vec chi(n, 0);
    for (std::size_t c = 0; c < n; ++c) chi[c] = q.matrix.at(1, c);
    for (std::size_t b = 0; b < n; ++b)
        if (!dual->is_zero(graded_commutator(*dual, dual->basis_vec(BasisIndex(b)), chi))) return false;
    return true;
}

/// Kernel of the linearized p-th power map on the primitive space of the
/// given degree. For odd degree at odd p the whole primitive space is
/// returned; candidate filtering re-checks nilpotence pointwise.
inline Subspace frobenius_primitive_kernel(const DualAlgebra& d, unsigned degree) {
    Subspace prim = primitives_of_degree(d, degree);
    if (d.p() > 2 && degree % 2 == 1) return prim;
    if (prim.dim() == 0) return prim;
    const std::size_t n = d.dim();
    FpMatrix m(d.p(), n, prim.dim());
    for (std::size_t c = 0; c < prim.dim(); ++c) {
        Vec pw = d.power(prim.basis_vector(c), d.p());
        for (std::size_t r = 0; r < n; ++r) m.at(r, c) = pw[r];
    }
    Subspace ker = kernel_basis(m);
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < ker.dim(); ++i) {
        Vec small = ker.basis_vector(i);
        Vec big(n, 0);
        for (std::size_t c = 0; c < prim.dim(); ++c) {
            if (!small[c]) continue;
            Vec bv = prim.basis_vector(c);
            for (std::size_t k = 0; k < n; ++k)
                big[k] = add_mod(big[k], mul_mod(small[c], bv[k], d.p()), d.p());
        }
        basis.push_back(big);
    }
    return Subspace::from_span(d.p(), n, basis);
}

/// Quotient onto an elementary presentation determined by a primitive,
/// nilpotent functional chi: a |-> sum_k <chi^k, a>/k! t^k.
inline QuotientMap elementary_quotient_from_chi(PresPtr hp, const DualAlgebra& d, const Vec& chi,
                                                const std::string& gen_name = "t") {
    const HopfPresentation& h = *hp;
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());
    unsigned deg = 0;
    if (!d.is_homogeneous(chi, &deg) || d.is_zero(chi))
        throw AlgebraError(Errc::invalid_argument, "chi must be nonzero homogeneous");

    bool odd = p > 2 && deg % 2 == 1;
    std::size_t target_dim = odd ? 2 : p;

    GenSpec g;
    g.name = gen_name;
    g.degree = deg;
    g.height = 1;
    g.odd_trunc = odd;
    PresPtr target = make_presentation(h.prime(), {g}, {TensorElement{}});

    QuotientMap q;
    q.source = hp;
    q.target = target;
    q.matrix = FpMatrix(p, target_dim, n);
    Vec chipow = d.unit_vec();
    Scalar factorial = 1;
    for (std::size_t k = 0; k < target_dim; ++k) {
        if (k) {
            chipow = d.product(chipow, chi);
            factorial = mul_mod(factorial, Scalar(k % p), p);
        }
        Scalar invf = inv_mod(factorial, p);
        for (std::size_t c = 0; c < n; ++c) q.matrix.at(k, c) = mul_mod(chipow[c], invf, p);
    }
    std::vector<Element> kernel_gens;
    {
        Subspace ker = kernel_basis(q.matrix);
        for (std::size_t i = 0; i < ker.dim(); ++i) kernel_gens.push_back(h.from_vec(ker.basis_vector(i)));
    }
    q.kernel_ideal = IdealSubspace{kernel_basis(q.matrix), kernel_gens};
    validate_quotient_map(q);
    return q;
}

enum class SearchStrategy { search, chain, automatic };

struct FindOptions {
    bool positive_degree_only = false;
    SearchStrategy strategy = SearchStrategy::search;
    std::uint64_t candidate_cap = 1000000;
};

struct ElementaryQuotientResult {
    Vec chi;
    unsigned degree = 0;
    QuotientMap quotient;
    ConormalCertificate certificate;
    bool cocentral = false;
    SearchStrategy strategy = SearchStrategy::search;
};

namespace detail {

/// Cheap normality test used in the search loop: the right ideal generated by
/// the candidate sub-Hopf algebra's augmentation ideal must be a Lie ideal.
inline bool candidate_passes_lie_test(const DualAlgebra& L, const std::vector<Vec>& b_powers) {
    const unsigned p = L.p();
    const std::size_t n = L.dim();
    std::vector<Vec> span;
    for (std::size_t k = 1; k < b_powers.size(); ++k)
        for (std::size_t b = 0; b < n; ++b) {
            Vec v = L.product(b_powers[k], L.basis_vec(BasisIndex(b)));
            if (!L.is_zero(v)) span.push_back(v);
        }
    Subspace J = Subspace::from_span(p, n, span);
    return dual_subspace_is_lie_ideal(L, J);
}

}  // namespace detail

/// Exhaustive search for an elementary conormal quotient: degrees ascending
/// (degree 0 first unless excluded), projectivized candidates in lexicographic
/// order, first validated hit wins.
inline std::optional<ElementaryQuotientResult> find_elementary_by_search(PresPtr hp,
                                                                         const DualAlgebra& L,
                                                                         const FindOptions& opt) {
    const HopfPresentation& h = *hp;
    const unsigned p = h.p();
    if (h.dim() < 2) throw AlgebraError(Errc::invalid_argument, "need dim >= 2");

    std::vector<unsigned> degrees;
    {
        std::map<unsigned, bool> seen;
        for (std::size_t i = 0; i < L.dim(); ++i) seen[L.degree(BasisIndex(i))] = true;
        for (auto& [d, _] : seen)
            if (d > 0 || !opt.positive_degree_only) degrees.push_back(d);
    }

    for (unsigned deg : degrees) {
        Subspace K = frobenius_primitive_kernel(L, deg);
        std::size_t k = K.dim();
        if (k == 0) continue;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < k; ++i) {
            total *= p;
            if ((total - 1) / (p - 1) > opt.candidate_cap)
                throw AlgebraError(Errc::candidate_space_too_large,
                                   "candidate space exceeds cap in degree " + std::to_string(deg));
        }
        for (std::uint64_t v = 1; v < total; ++v) {
            // big-endian digits: coordinate 0 most significant
            std::vector<Scalar> coords(k, 0);
            std::uint64_t t = v;
            for (std::size_t i = k; i-- > 0;) {
                coords[i] = Scalar(t % p);
                t /= p;
            }
            std::size_t first = 0;
            while (first < k && coords[first] == 0) ++first;
            if (coords[first] != 1) continue;  // projective normalization

            Vec chi(L.dim(), 0);
            for (std::size_t i = 0; i < k; ++i) {
                if (!coords[i]) continue;
                Vec b = K.basis_vector(i);
                for (std::size_t c = 0; c < L.dim(); ++c)
                    chi[c] = add_mod(chi[c], mul_mod(coords[i], b[c], p), p);
            }
            // pointwise nilpotence: duals need not be graded-commutative, so
            // the linearized kernel is re-checked candidate by candidate
            bool odd = p > 2 && deg % 2 == 1;
            std::size_t bdim = odd ? 2 : p;
            if (!L.is_zero(L.power(chi, odd ? 2 : p))) continue;
            std::vector<Vec> powers(bdim);
            powers[0] = L.unit_vec();
            bool degenerate = false;
            for (std::size_t i = 1; i < bdim; ++i) {
                powers[i] = L.product(powers[i - 1], chi);
                if (L.is_zero(powers[i])) degenerate = true;
            }
            if (degenerate) continue;
            if (!detail::candidate_passes_lie_test(L, powers)) continue;

            QuotientMap q = elementary_quotient_from_chi(hp, L, chi);
            ElementaryQuotientResult res;
            res.chi = chi;
            res.degree = deg;
            res.certificate = is_conormal(h, q, &L);
            if (!res.certificate.conormal()) continue;  // certificate is the arbiter
            res.quotient = std::move(q);
            res.cocentral = is_cocentral(h, res.quotient, &L);
            res.strategy = SearchStrategy::search;
            return res;
        }
    }
    return std::nullopt;
}

}  // namespace grhopf
