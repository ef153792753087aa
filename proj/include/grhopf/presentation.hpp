#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fplin.hpp"

namespace grhopf {

/// One polynomial generator of a truncated graded-commutative algebra.
/// Truncation is x^{p^height} = 0, except odd-degree generators at odd p,
/// which satisfy x^2 = 0 (odd_trunc set, height ignored).
struct GenSpec {
    std::string name;
    unsigned degree = 0;
    unsigned height = 1;
    bool odd_trunc = false;

    std::uint64_t bound(unsigned p) const {
        if (odd_trunc) return 2;
        std::uint64_t b = 1;
        for (unsigned i = 0; i < height; ++i) b *= p;
        return b;
    }
};

using BasisIndex = std::uint32_t;

/// Sparse element, keyed by monomial basis index. No zero coefficients stored.
struct Element {
    std::map<BasisIndex, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Element& o) const { return terms == o.terms; }
    bool operator!=(const Element& o) const { return !(*this == o); }

    static Element monomial(BasisIndex i, Scalar c = 1) {
        Element e;
        if (c) e.terms[i] = c;
        return e;
    }
};

inline std::uint64_t tensor_key(BasisIndex i, BasisIndex j) { return (std::uint64_t(i) << 32) | j; }
inline BasisIndex tensor_left(std::uint64_t k) { return BasisIndex(k >> 32); }
inline BasisIndex tensor_right(std::uint64_t k) { return BasisIndex(k & 0xffffffffu); }

/// Sparse element of A (x) A.
struct TensorElement {
    std::map<std::uint64_t, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const TensorElement& o) const { return terms == o.terms; }
    bool operator!=(const TensorElement& o) const { return !(*this == o); }

    void add_term(BasisIndex i, BasisIndex j, Scalar c, unsigned p) {
        if (!c) return;
        std::uint64_t k = tensor_key(i, j);
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms[k] = c;
        } else {
            it->second = add_mod(it->second, c, p);
            if (!it->second) terms.erase(it);
        }
    }
};

struct TripleTensor {
    std::map<std::uint64_t, Scalar> terms;  // key packs three 21-bit indices

    static std::uint64_t key(BasisIndex i, BasisIndex j, BasisIndex k) {
        return (std::uint64_t(i) << 42) | (std::uint64_t(j) << 21) | k;
    }
    void add_term(BasisIndex i, BasisIndex j, BasisIndex k, Scalar c, unsigned p) {
        if (!c) return;
        std::uint64_t kk = key(i, j, k);
        auto it = terms.find(kk);
        if (it == terms.end()) {
            terms[kk] = c;
        } else {
            it->second = add_mod(it->second, c, p);
            if (!it->second) terms.erase(it);
        }
    }
    bool operator==(const TripleTensor& o) const { return terms == o.terms; }
};

/// Monomial basis bookkeeping for a truncated graded-commutative polynomial
/// algebra: basis indices are mixed-radix numbers over the exponent bounds,
/// generator 0 least significant.
class MonomialBasis {
public:
    MonomialBasis() = default;
    MonomialBasis(Prime p, std::vector<GenSpec> gens, std::uint64_t dim_budget = 1u << 20)
        : p_(p), gens_(std::move(gens)) {
        bounds_.reserve(gens_.size());
        strides_.reserve(gens_.size());
        std::uint64_t d = 1;
        for (auto& g : gens_) {
            if (p_.value() > 2 && g.degree % 2 == 1 && !g.odd_trunc)
                throw AlgebraError(Errc::invalid_argument,
                                   "odd-degree generator must square to zero: " + g.name);
            if (g.odd_trunc && (p_.value() == 2 || g.degree % 2 == 0))
                throw AlgebraError(Errc::invalid_argument,
                                   "odd truncation only applies to odd degree at odd p: " + g.name);
            std::uint64_t b = g.bound(p_.value());
            bounds_.push_back(BasisIndex(b));
            strides_.push_back(d);
            d *= b;
            if (d > dim_budget)
                throw AlgebraError(Errc::budget_exceeded, "basis dimension exceeds budget");
        }
        dim_ = d;
        degree_.resize(dim_);
        for (std::uint64_t idx = 0; idx < dim_; ++idx) {
            unsigned deg = 0;
            std::uint64_t t = idx;
            for (std::size_t g = 0; g < gens_.size(); ++g) {
                deg += unsigned(t % bounds_[g]) * gens_[g].degree;
                t /= bounds_[g];
            }
            degree_[idx] = deg;
        }
    }

    const Prime& prime() const { return p_; }
    unsigned p() const { return p_.value(); }
    std::size_t num_gens() const { return gens_.size(); }
    const std::vector<GenSpec>& gens() const { return gens_; }
    const GenSpec& gen(std::size_t i) const { return gens_[i]; }
    std::uint64_t dim() const { return dim_; }
    unsigned degree(BasisIndex idx) const { return degree_[idx]; }
    BasisIndex bound(std::size_t g) const { return bounds_[g]; }

    BasisIndex gen_index(std::size_t g) const { return BasisIndex(strides_[g]); }

    std::vector<BasisIndex> exponents(BasisIndex idx) const {
        std::vector<BasisIndex> e(gens_.size());
        std::uint64_t t = idx;
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            e[g] = BasisIndex(t % bounds_[g]);
            t /= bounds_[g];
        }
        return e;
    }

    BasisIndex index_of(const std::vector<BasisIndex>& e) const {
        std::uint64_t idx = 0;
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            if (e[g] >= bounds_[g]) throw AlgebraError(Errc::invalid_argument, "exponent out of range");
            idx += std::uint64_t(e[g]) * strides_[g];
        }
        return BasisIndex(idx);
    }

    /// Product of two basis monomials in canonical order: nullopt when a
    /// truncation bound is reached, otherwise the Koszul sign and the index.
    std::optional<std::pair<int, BasisIndex>> mono_mul(BasisIndex a, BasisIndex b) const {
        std::uint64_t ta = a, tb = b, idx = 0;
        unsigned swaps = 0;   // parity of odd-odd transpositions
        unsigned odd_seen = 0;  // odd-degree exponent weight of a at generators > current
        // Walk generators from most significant down so "a-part above current"
        // is accumulated as we descend.
        std::vector<BasisIndex> ea(gens_.size()), eb(gens_.size());
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            ea[g] = BasisIndex(ta % bounds_[g]);
            ta /= bounds_[g];
            eb[g] = BasisIndex(tb % bounds_[g]);
            tb /= bounds_[g];
        }
        // sign exponent = sum over i > j of ea[i]*eb[j]*deg_i*deg_j (odd degrees only)
        unsigned suffix_odd = 0;
        for (std::size_t j = gens_.size(); j-- > 0;) {
            if (gens_[j].degree % 2 == 1) swaps += suffix_odd * eb[j];
            std::uint64_t s = std::uint64_t(ea[j]) + eb[j];
            if (s >= bounds_[j]) return std::nullopt;
            idx += s * strides_[j];
            if (gens_[j].degree % 2 == 1) suffix_odd += ea[j];
        }
        (void)odd_seen;
        return std::make_pair((swaps % 2) ? -1 : 1, BasisIndex(idx));
    }

private:
    Prime p_{2};
    std::vector<GenSpec> gens_;
    std::vector<BasisIndex> bounds_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t dim_ = 1;
    std::vector<unsigned> degree_;
};

/// Presentation of a finite positively graded, graded-commutative bialgebra
/// candidate: generators with truncations plus the reduced coproduct on
/// generators. Structural axioms are verified separately.
class HopfPresentation {
public:
    HopfPresentation() = default;
    HopfPresentation(Prime p, std::vector<GenSpec> gens, std::vector<TensorElement> deltabar,
                     std::uint64_t dim_budget = 1u << 20)
        : basis_(p, std::move(gens), dim_budget), deltabar_(std::move(deltabar)) {
        if (deltabar_.size() != basis_.num_gens())
            throw AlgebraError(Errc::invalid_argument, "deltabar count != generator count");
        build_coproduct_table();
    }

    const MonomialBasis& basis() const { return basis_; }
    const Prime& prime() const { return basis_.prime(); }
    unsigned p() const { return basis_.p(); }
    std::uint64_t dim() const { return basis_.dim(); }
    std::size_t num_gens() const { return basis_.num_gens(); }
    const GenSpec& gen(std::size_t i) const { return basis_.gen(i); }
    const TensorElement& deltabar_gen(std::size_t i) const { return deltabar_[i]; }
    unsigned degree(BasisIndex i) const { return basis_.degree(i); }

    /// Full coproduct of a basis monomial (cached).
    const TensorElement& coproduct(BasisIndex idx) const { return coproduct_[idx]; }

    bool operator==(const HopfPresentation& o) const {
        if (p() != o.p() || num_gens() != o.num_gens()) return false;
        for (std::size_t i = 0; i < num_gens(); ++i) {
            const GenSpec &a = gen(i), &b = o.gen(i);
            if (a.name != b.name || a.degree != b.degree || a.height != b.height ||
                a.odd_trunc != b.odd_trunc)
                return false;
            if (deltabar_[i] != o.deltabar_[i]) return false;
        }
        return true;
    }

private:
    void build_coproduct_table() {
        const unsigned pp = p();
        coproduct_.resize(dim());
        TensorElement one;
        one.add_term(0, 0, 1, pp);
        coproduct_[0] = one;
        // full coproduct of each generator
        std::vector<TensorElement> gen_cop(num_gens());
        for (std::size_t g = 0; g < num_gens(); ++g) {
            TensorElement t = deltabar_[g];
            BasisIndex xi = basis_.gen_index(g);
            t.add_term(xi, 0, 1, pp);
            t.add_term(0, xi, 1, pp);
            gen_cop[g] = t;
        }
        for (std::uint64_t idx = 1; idx < dim(); ++idx) {
            // lowest generator with nonzero exponent
            std::uint64_t t = idx;
            std::size_t g = 0;
            while (t % basis_.bound(g) == 0) {
                t /= basis_.bound(g);
                ++g;
            }
            BasisIndex prev = BasisIndex(idx - basis_.gen_index(g));
            coproduct_[idx] = tensor_mul(gen_cop[g], coproduct_[prev]);
        }
    }

public:
    // ---- element arithmetic ----

    Element add(Element a, const Element& b) const {
        const unsigned pp = p();
        for (auto& [k, c] : b.terms) {
            auto it = a.terms.find(k);
            if (it == a.terms.end()) {
                a.terms[k] = c;
            } else {
                it->second = add_mod(it->second, c, pp);
                if (!it->second) a.terms.erase(it);
            }
        }
        return a;
    }

    Element scale(Element a, Scalar c) const {
        const unsigned pp = p();
        if (c == 0) return Element{};
        Element r;
        for (auto& [k, v] : a.terms) r.terms[k] = mul_mod(v, c, pp);
        return r;
    }

    Element negate(const Element& a) const { return scale(a, Scalar(p() - 1)); }

    Element mul(const Element& a, const Element& b) const {
        const unsigned pp = p();
        Element r;
        for (auto& [ka, ca] : a.terms)
            for (auto& [kb, cb] : b.terms) {
                auto m = basis_.mono_mul(ka, kb);
                if (!m) continue;
                Scalar c = mul_mod(ca, cb, pp);
                if (m->first < 0) c = neg_mod(c, pp);
                auto it = r.terms.find(m->second);
                if (it == r.terms.end()) {
                    if (c) r.terms[m->second] = c;
                } else {
                    it->second = add_mod(it->second, c, pp);
                    if (!it->second) r.terms.erase(it);
                }
            }
        return r;
    }

    Element power(Element a, std::uint64_t e) const {
        Element r = Element::monomial(0);
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }

    /// Tensor product multiplication with the Koszul rule
    /// (a(x)b)(c(x)d) = (-1)^{|b||c|} ac (x) bd.
    TensorElement tensor_mul(const TensorElement& s, const TensorElement& t) const {
        const unsigned pp = p();
        TensorElement r;
        for (auto& [ks, cs] : s.terms) {
            BasisIndex a = tensor_left(ks), b = tensor_right(ks);
            unsigned db = basis_.degree(b);
            for (auto& [kt, ct] : t.terms) {
                BasisIndex c = tensor_left(kt), d = tensor_right(kt);
                auto left = basis_.mono_mul(a, c);
                if (!left) continue;
                auto right = basis_.mono_mul(b, d);
                if (!right) continue;
                int sign = left->first * right->first;
                if ((db & 1u) && (basis_.degree(c) & 1u)) sign = -sign;
                Scalar coeff = mul_mod(cs, ct, pp);
                if (sign < 0) coeff = neg_mod(coeff, pp);
                r.add_term(left->second, right->second, coeff, pp);
            }
        }
        return r;
    }

    TensorElement tensor_power(TensorElement a, std::uint64_t e) const {
        TensorElement r;
        r.add_term(0, 0, 1, p());
        while (e) {
            if (e & 1) r = tensor_mul(r, a);
            e >>= 1;
            if (e) a = tensor_mul(a, a);
        }
        return r;
    }

    TensorElement delta(const Element& a) const {
        const unsigned pp = p();
        TensorElement r;
        for (auto& [k, c] : a.terms)
            for (auto& [kk, cc] : coproduct_[k].terms) r.add_term(tensor_left(kk), tensor_right(kk), mul_mod(c, cc, pp), pp);
        return r;
    }

    TensorElement deltabar(const Element& a) const {
        const unsigned pp = p();
        TensorElement r = delta(a);
        for (auto& [k, c] : a.terms) {
            r.add_term(k, 0, neg_mod(c, pp), pp);
            r.add_term(0, k, neg_mod(c, pp), pp);
        }
        return r;
    }

    Scalar counit(const Element& a) const {
        auto it = a.terms.find(0);
        return it == a.terms.end() ? 0 : it->second;
    }

    Element gen_element(std::size_t g) const { return Element::monomial(basis_.gen_index(g)); }

    bool is_homogeneous(const Element& a, unsigned* deg_out = nullptr) const {
        bool first = true;
        unsigned deg = 0;
        for (auto& [k, c] : a.terms) {
            (void)c;
            if (first) {
                deg = basis_.degree(k);
                first = false;
            } else if (basis_.degree(k) != deg) {
                return false;
            }
        }
        if (deg_out) *deg_out = first ? 0 : deg;
        return true;
    }

    Vec to_vec(const Element& a) const {
        Vec v(dim(), 0);
        for (auto& [k, c] : a.terms) v[k] = c;
        return v;
    }

    Element from_vec(const Vec& v) const {
        Element e;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) e.terms[BasisIndex(i)] = v[i];
        return e;
    }

    // ---- printing ----

    std::string monomial_string(BasisIndex idx) const {
        if (idx == 0) return "1";
        auto e = basis_.exponents(idx);
        std::ostringstream os;
        bool first = true;
        for (std::size_t g = 0; g < num_gens(); ++g) {
            if (!e[g]) continue;
            if (!first) os << "*";
            os << gen(g).name;
            if (e[g] > 1) os << "^" << e[g];
            first = false;
        }
        return os.str();
    }

    std::string element_string(const Element& a) const {
        if (a.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : a.terms) {
            if (!first) os << " + ";
            if (c != 1) os << unsigned(c) << "*";
            os << monomial_string(k);
            first = false;
        }
        return os.str();
    }

    std::string tensor_string(const TensorElement& t) const {
        if (t.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : t.terms) {
            if (!first) os << " + ";
            if (c != 1) os << unsigned(c) << "*";
            os << monomial_string(tensor_left(k)) << " | " << monomial_string(tensor_right(k));
            first = false;
        }
        return os.str();
    }

private:
    MonomialBasis basis_;
    std::vector<TensorElement> deltabar_;
    std::vector<TensorElement> coproduct_;
};

using PresPtr = std::shared_ptr<const HopfPresentation>;

inline PresPtr make_presentation(Prime p, std::vector<GenSpec> gens, std::vector<TensorElement> db,
                                 std::uint64_t dim_budget = 1u << 20) {
    return std::make_shared<const HopfPresentation>(p, std::move(gens), std::move(db), dim_budget);
}

/// Canonical Hilbert series: coefficient of t^d counts monomials of degree d.
inline std::vector<std::int64_t> hilbert_series(const HopfPresentation& h) {
    std::vector<std::int64_t> coeffs;
    for (std::uint64_t i = 0; i < h.dim(); ++i) {
        unsigned d = h.degree(BasisIndex(i));
        if (coeffs.size() <= d) coeffs.resize(d + 1, 0);
        ++coeffs[d];
    }
    return coeffs;
}

inline std::vector<std::int64_t> poly_mul(const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

}  // namespace grhopf
