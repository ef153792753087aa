#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "normality.hpp"

namespace grhopf {

/// Index data of a graded unitriangular scheme: non-decreasing degrees I and
/// a Frobenius height r.
struct UTIndex {
    std::vector<unsigned> I;
    unsigned r = 1;

    std::size_t n() const { return I.size(); }

    void validate() const {
        if (I.size() < 2) throw AlgebraError(Errc::invalid_argument, "UT index needs n >= 2");
        if (r < 1) throw AlgebraError(Errc::invalid_argument, "UT height must be positive");
        for (std::size_t i = 1; i < I.size(); ++i)
            if (I[i] < I[i - 1])
                throw AlgebraError(Errc::invalid_argument, "UT index must be non-decreasing");
    }
};

inline std::string ut_var_name(std::size_t n, std::size_t i, std::size_t j, unsigned e = 0) {
    std::string s = n <= 9 ? "x" + std::to_string(i) + std::to_string(j)
                           : "x" + std::to_string(i) + "_" + std::to_string(j);
    if (e > 0) s += "p" + std::to_string(e);
    return s;
}

namespace detail {

struct UTVar {
    std::size_t i, j;   // 1-based pair, i < j
    unsigned exp = 0;   // layer exponent: the generator is x_ij^{p^exp}
};

/// Stage presentation of a unitriangular-type algebra: surviving variables
/// with one possibly promoted pair, coproduct x_ij -> sum x_ik (x) x_kj at the
/// matching layer.
inline PresPtr ut_stage_presentation(const UTIndex& idx, unsigned p_, const std::vector<UTVar>& vars,
                                     std::uint64_t dim_budget = 1u << 20) {
    Prime p(p_);
    const std::size_t n = idx.n();
    std::vector<GenSpec> gens;
    for (const UTVar& v : vars) {
        unsigned base_deg = idx.I[v.j - 1] - idx.I[v.i - 1];
        GenSpec g;
        unsigned pe = 1;
        for (unsigned t = 0; t < v.exp; ++t) pe *= p_;
        g.name = ut_var_name(n, v.i, v.j, v.exp);
        g.degree = base_deg * pe;
        if (p_ > 2 && g.degree % 2 == 1) {
            g.odd_trunc = true;
            g.height = 1;
        } else {
            g.height = idx.r - v.exp;
        }
        gens.push_back(g);
    }
    MonomialBasis basis(p, gens, dim_budget);

    auto find_var = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < vars.size(); ++k)
            if (vars[k].i == i && vars[k].j == j) return k;
        return std::nullopt;
    };

    std::vector<TensorElement> db(vars.size());
    for (std::size_t v = 0; v < vars.size(); ++v) {
        unsigned pe = 1;
        for (unsigned t = 0; t < vars[v].exp; ++t) pe *= p_;
        for (std::size_t k = vars[v].i + 1; k < vars[v].j; ++k) {
            auto a = find_var(vars[v].i, k);
            auto b = find_var(k, vars[v].j);
            if (!a || !b)
                throw AlgebraError(Errc::invalid_argument, "incoherent unitriangular stage");
            // x_ik^{p^e} (x) x_kj^{p^e} as monomials of the stage generators
            std::vector<BasisIndex> ea(vars.size(), 0), eb(vars.size(), 0);
            ea[*a] = BasisIndex(pe);
            eb[*b] = BasisIndex(pe);
            if (ea[*a] >= basis.bound(*a) || eb[*b] >= basis.bound(*b))
                throw AlgebraError(Errc::invalid_argument, "stage layer exceeds truncation");
            db[v].add_term(basis.index_of(ea), basis.index_of(eb), 1, p_);
        }
    }
    return make_presentation(p, gens, db, dim_budget);
}

}  // namespace detail

/// Coordinate ring of the r-th Frobenius kernel of the graded unitriangular
/// scheme for the given index.
inline PresPtr ut_presentation(const UTIndex& idx, unsigned p, std::uint64_t dim_budget = 1u << 20) {
    idx.validate();
    std::vector<detail::UTVar> vars;
    for (std::size_t i = 1; i <= idx.n(); ++i)
        for (std::size_t j = i + 1; j <= idx.n(); ++j) vars.push_back({i, j, 0});
    return detail::ut_stage_presentation(idx, p, vars, dim_budget);
}

struct KillStep {
    std::size_t m, l;  // pair being peeled, 1-based
    unsigned exp;      // layer exponent removed at this step
};

/// Peeling order: first existing row in the last existing column, one p-power
/// layer at a time; odd-degree variables at odd p carry a single layer.
inline std::vector<KillStep> ut_kill_sequence(const UTIndex& idx, unsigned p) {
    idx.validate();
    struct VarState {
        std::size_t i, j;
        unsigned layers;
        unsigned done = 0;
    };
    std::vector<VarState> vars;
    for (std::size_t i = 1; i <= idx.n(); ++i)
        for (std::size_t j = i + 1; j <= idx.n(); ++j) {
            unsigned deg = idx.I[j - 1] - idx.I[i - 1];
            unsigned layers = (p > 2 && deg % 2 == 1) ? 1 : idx.r;
            vars.push_back({i, j, layers, 0});
        }
    std::vector<KillStep> steps;
    for (;;) {
        std::size_t best = vars.size();
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (vars[k].done >= vars[k].layers) continue;
            if (best == vars.size()) {
                best = k;
                continue;
            }
            if (vars[k].j > vars[best].j || (vars[k].j == vars[best].j && vars[k].i < vars[best].i))
                best = k;
        }
        if (best == vars.size()) break;
        steps.push_back({vars[best].i, vars[best].j, vars[best].done});
        ++vars[best].done;
    }
    return steps;
}

struct ChainStep {
    PresPtr stage;            // presentation before this peel
    std::size_t m = 0, l = 0;  // distinguished pair
    unsigned exp = 0;          // current exponent e of the pair
    QuotientMap quotient_to_elementary;
    PresPtr kernel;            // presentation after the peel
    ConormalCertificate certificate;
};

/// Full descending chain for the Frobenius kernel of a unitriangular scheme.
/// Every step's elementary quotient is conormality-certified.
inline std::vector<ChainStep> ut_chain(const UTIndex& idx, unsigned p_,
                                       std::uint64_t dim_budget = 1u << 20) {
    idx.validate();
    std::vector<detail::UTVar> vars;
    for (std::size_t i = 1; i <= idx.n(); ++i)
        for (std::size_t j = i + 1; j <= idx.n(); ++j) vars.push_back({i, j, 0});
    std::vector<KillStep> kills = ut_kill_sequence(idx, p_);

    std::vector<ChainStep> chain;
    for (const KillStep& ks : kills) {
        ChainStep step;
        step.m = ks.m;
        step.l = ks.l;
        step.exp = ks.exp;
        step.stage = detail::ut_stage_presentation(idx, p_, vars, dim_budget);

        const HopfPresentation& S = *step.stage;
        std::size_t zpos = 0;
        while (zpos < vars.size() && !(vars[zpos].i == ks.m && vars[zpos].j == ks.l)) ++zpos;

        // elementary target
        const GenSpec& zg = S.gen(zpos);
        GenSpec tg;
        tg.name = "t";
        tg.degree = zg.degree;
        tg.height = 1;
        tg.odd_trunc = zg.odd_trunc;
        PresPtr target = make_presentation(S.prime(), {tg}, {TensorElement{}});

        QuotientMap q;
        q.source = step.stage;
        q.target = target;
        q.matrix = FpMatrix(p_, std::size_t(target->dim()), std::size_t(S.dim()));
        for (std::size_t c = 0; c < S.dim(); ++c) {
            auto e = S.basis().exponents(BasisIndex(c));
            bool pure = true;
            for (std::size_t g = 0; g < vars.size(); ++g)
                if (g != zpos && e[g]) pure = false;
            if (pure && e[zpos] < target->dim()) q.matrix.at(e[zpos], c) = 1;
        }
        {
            Subspace ker = kernel_basis(q.matrix);
            std::vector<Element> gens;
            for (std::size_t g = 0; g < vars.size(); ++g)
                if (g != zpos) gens.push_back(S.gen_element(g));
            gens.push_back(S.power(S.gen_element(zpos), target->dim()));
            q.kernel_ideal = IdealSubspace{ker, gens};
        }
        validate_quotient_map(q);
        step.certificate = is_conormal(S, q);
        if (!step.certificate.conormal())
            throw AlgebraError(Errc::step_not_conormal, "unitriangular peel step not conormal");
        step.quotient_to_elementary = std::move(q);

        // advance the variable bookkeeping
        unsigned deg = idx.I[ks.l - 1] - idx.I[ks.m - 1];
        unsigned layers = (p_ > 2 && deg % 2 == 1) ? 1 : idx.r;
        if (ks.exp + 1 >= layers) {
            vars.erase(vars.begin() + zpos);
        } else {
            vars[zpos].exp = ks.exp + 1;
        }
        step.kernel = detail::ut_stage_presentation(idx, p_, vars, dim_budget);
        chain.push_back(std::move(step));
    }
    return chain;
}

/// Closed embedding of a presentation into a unitriangular Frobenius kernel,
/// represented by the comatrix images of the generators. The flag is the
/// invariants tower of the regular corepresentation, refined by internal
/// degree; all postconditions are verified at runtime.
struct UnitriangularEmbedding {
    UTIndex index;
    std::vector<Vec> flag;                   // columns of the flag basis, flag[0] = unit
    std::vector<std::vector<Element>> comatrix;  // comatrix[i][j], 0-based, i <= j entries
};

inline UnitriangularEmbedding embed_into_unitriangular(PresPtr hp) {
    const HopfPresentation& h = *hp;
    const unsigned p = h.p();
    const std::size_t n = std::size_t(h.dim());

    UnitriangularEmbedding emb;
    unsigned r = 1;
    for (std::size_t g = 0; g < h.num_gens(); ++g)
        if (!h.gen(g).odd_trunc) r = std::max(r, h.gen(g).height);
    emb.index.r = r;

    if (n == 1) {  // already trivial: degenerate two-row index, zero image
        emb.index.I = {0, 0};
        emb.flag = {Vec{1}};
        emb.comatrix = {{Element::monomial(0), Element{}}, {Element{}, Element::monomial(0)}};
        return emb;
    }

    // invariants tower: V_{k+1} = { a : Delta(a) - a (x) 1 in V_k (x) A }
    struct FlagEntry {
        Vec v;
        unsigned degree;
        unsigned level;
        std::size_t seq;
    };
    std::vector<FlagEntry> entries;
    Vec unit(n, 0);
    unit[0] = 1;
    Subspace V = Subspace::from_span(p, n, {unit});
    entries.push_back({unit, 0, 1, 0});
    unsigned level = 1;
    std::size_t seq = 1;
    while (V.dim() < n) {
        // columns: basis of A; rows: (reduced first slot coordinate, second slot)
        FpMatrix sys(p, n * n, n);
        for (std::size_t col = 0; col < n; ++col) {
            std::map<std::size_t, Vec> first_by_second;
            for (auto& [k, c] : h.coproduct(BasisIndex(col)).terms) {
                auto& slot = first_by_second.try_emplace(tensor_right(k), Vec(n, 0)).first->second;
                slot[tensor_left(k)] = add_mod(slot[tensor_left(k)], c, p);
            }
            // subtract a (x) 1
            auto& slot1 = first_by_second.try_emplace(0, Vec(n, 0)).first->second;
            slot1[col] = sub_mod(slot1[col], 1, p);
            for (auto& [b, v] : first_by_second) {
                Vec red = V.reduce(v);
                for (std::size_t i = 0; i < n; ++i)
                    sys.at(b * n + i, col) = red[i];
            }
        }
        Subspace Vnext = kernel_basis(sys);
        if (!(Vnext.contains(V)) || Vnext.dim() <= V.dim())
            throw AlgebraError(Errc::flag_not_unitriangular,
                               "invariants tower stalls: input has no unitriangular corepresentation");
        ++level;
        for (const Vec& rep : Vnext.quotient_representatives(V)) {
            unsigned d = 0;
            bool homog = true;
            bool first = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (!rep[i]) continue;
                if (first) {
                    d = h.degree(BasisIndex(i));
                    first = false;
                } else if (h.degree(BasisIndex(i)) != d) {
                    homog = false;
                }
            }
            if (!homog)
                throw AlgebraError(Errc::flag_not_unitriangular, "flag representative not homogeneous");
            entries.push_back({rep, d, level, seq++});
        }
        V = Vnext;
    }

    std::stable_sort(entries.begin(), entries.end(), [](const FlagEntry& a, const FlagEntry& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.level != b.level) return a.level < b.level;
        return a.seq < b.seq;
    });

    emb.index.I.clear();
    emb.flag.clear();
    for (auto& e : entries) {
        emb.index.I.push_back(e.degree);
        emb.flag.push_back(e.v);
    }

    // comatrix: Delta(f_j) = sum_i f_i (x) c_ij
    FpMatrix F(p, n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) F.at(i, j) = emb.flag[j][i];
    FpMatrix Finv(p, n, n);
    {
        FpMatrix aug(p, n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = F.at(i, j);
            aug.at(i, n + i) = 1;
        }
        RrefResult rr = rref(aug);
        if (rr.rank != n) throw AlgebraError(Errc::flag_not_unitriangular, "flag basis singular");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) Finv.at(i, j) = rr.mat.at(i, n + j);
    }

    emb.comatrix.assign(n, std::vector<Element>(n));
    for (std::size_t j = 0; j < n; ++j) {
        TensorElement d = h.delta(h.from_vec(emb.flag[j]));
        std::map<std::size_t, Vec> first_by_second;
        for (auto& [k, c] : d.terms) {
            auto& slot = first_by_second.try_emplace(tensor_right(k), Vec(n, 0)).first->second;
            slot[tensor_left(k)] = add_mod(slot[tensor_left(k)], c, p);
        }
        for (auto& [b, v] : first_by_second) {
            Vec w = Finv.apply(v);
            for (std::size_t i = 0; i < n; ++i)
                if (w[i]) {
                    Element& cij = emb.comatrix[i][j];
                    auto it = cij.terms.find(BasisIndex(b));
                    Scalar nc = add_mod(it == cij.terms.end() ? 0 : it->second, w[i], p);
                    if (nc)
                        cij.terms[BasisIndex(b)] = nc;
                    else if (it != cij.terms.end())
                        cij.terms.erase(it);
                }
        }
    }

    // verification: strict unitriangularity, comatrix identity, surjectivity,
    // truncation compatibility
    for (std::size_t i = 0; i < n; ++i) {
        if (emb.comatrix[i][i] != Element::monomial(0))
            throw AlgebraError(Errc::flag_not_unitriangular, "diagonal comatrix entry not 1");
        for (std::size_t j = 0; j < i; ++j)
            if (!emb.comatrix[i][j].is_zero())
                throw AlgebraError(Errc::flag_not_unitriangular, "comatrix not upper triangular");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Element& c = emb.comatrix[i][j];
            if (h.counit(c) != 0)
                throw AlgebraError(Errc::flag_not_unitriangular, "off-diagonal entry not augmented to 0");
            unsigned d = 0;
            if (!h.is_homogeneous(c, &d) ||
                (!c.is_zero() && d != emb.index.I[j] - emb.index.I[i]))
                throw AlgebraError(Errc::flag_not_unitriangular, "comatrix entry degree mismatch");
            TensorElement lhs = h.delta(c);
            TensorElement rhs;
            for (std::size_t k = i; k <= j; ++k) {
                const Element& a = emb.comatrix[i][k];
                const Element& b = emb.comatrix[k][j];
                for (auto& [ka, ca] : a.terms)
                    for (auto& [kb, cb] : b.terms) rhs.add_term(ka, kb, mul_mod(ca, cb, p), p);
            }
            if (!(lhs == rhs))
                throw AlgebraError(Errc::flag_not_unitriangular, "comatrix identity failed");
            // truncation compatibility of the would-be generator image
            std::uint64_t bound = (p > 2 && d % 2 == 1) ? 2 : [&] {
                std::uint64_t b = 1;
                for (unsigned t = 0; t < r; ++t) b *= p;
                return b;
            }();
            if (!h.power(c, bound).is_zero())
                throw AlgebraError(Errc::flag_not_unitriangular, "comatrix entry violates truncation");
        }
    {
        std::vector<Vec> span{h.to_vec(Element::monomial(0))};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!emb.comatrix[i][j].is_zero()) span.push_back(h.to_vec(emb.comatrix[i][j]));
        Subspace sub = Subspace::from_span(p, n, span);
        for (;;) {
            std::vector<Vec> grow;
            for (std::size_t a = 0; a < sub.dim(); ++a)
                for (std::size_t b = 0; b < sub.dim(); ++b) {
                    Element prod = h.mul(h.from_vec(sub.basis_vector(a)), h.from_vec(sub.basis_vector(b)));
                    if (!prod.is_zero()) grow.push_back(h.to_vec(prod));
                }
            Subspace next = sub;
            for (auto& v : grow) next = next.sum(Subspace::from_span(p, n, {v}));
            if (next == sub) break;
            sub = next;
        }
        if (sub.dim() != n)
            throw AlgebraError(Errc::flag_not_unitriangular, "comatrix entries do not generate");
    }
    return emb;
}

/// Materialized surjection from the unitriangular coordinate ring onto the
/// embedded algebra. Only sensible for small indices.
inline QuotientMap embedding_as_quotient_map(PresPtr hp, const UnitriangularEmbedding& emb,
                                             std::uint64_t dim_budget = 1u << 20) {
    const HopfPresentation& h = *hp;
    PresPtr ut = ut_presentation(emb.index, h.p(), dim_budget);
    const std::size_t N = std::size_t(ut->dim());
    QuotientMap q;
    q.source = ut;
    q.target = hp;
    q.matrix = FpMatrix(h.p(), std::size_t(h.dim()), N);
    for (std::size_t c = 0; c < N; ++c) {
        auto expo = ut->basis().exponents(BasisIndex(c));
        Element acc = Element::monomial(0);
        std::size_t g = 0;
        for (std::size_t i = 1; i <= emb.index.n(); ++i)
            for (std::size_t j = i + 1; j <= emb.index.n(); ++j, ++g)
                if (expo[g] && !acc.is_zero())
                    acc = h.mul(acc, h.power(emb.comatrix[i - 1][j - 1], expo[g]));
        Vec v = h.to_vec(acc);
        for (std::size_t rr = 0; rr < h.dim(); ++rr) q.matrix.at(rr, c) = v[rr];
    }
    {
        Subspace ker = kernel_basis(q.matrix);
        std::vector<Element> gens;
        for (std::size_t i = 0; i < ker.dim(); ++i) gens.push_back(ut->from_vec(ker.basis_vector(i)));
        q.kernel_ideal = IdealSubspace{ker, gens};
    }
    validate_quotient_map(q);
    return q;
}

/// Intersect the embedded subgroup with the unitriangular chain and return
/// the first nontrivial layer, a certified elementary conormal quotient.
inline ElementaryQuotientResult intersection_chain(PresPtr hp, const UnitriangularEmbedding& emb) {
    const HopfPresentation& h = *hp;
    const unsigned p = h.p();
    if (h.dim() < 2)
        throw AlgebraError(Errc::invalid_argument, "intersection chain needs dim >= 2");

    std::vector<KillStep> kills = ut_kill_sequence(emb.index, p);

    struct VarState {
        std::size_t i, j;
        unsigned exp = 0;
        bool alive = true;
    };
    std::vector<VarState> vars;
    for (std::size_t i = 1; i <= emb.index.n(); ++i)
        for (std::size_t j = i + 1; j <= emb.index.n(); ++j) vars.push_back({i, j, 0, true});
    auto var_at = [&](std::size_t m, std::size_t l) -> VarState& {
        for (auto& v : vars)
            if (v.i == m && v.j == l) return v;
        throw AlgebraError(Errc::invalid_argument, "missing unitriangular variable");
    };

    for (std::size_t step = 0; step < kills.size(); ++step) {
        // apply kill `step`
        {
            const KillStep& ks = kills[step];
            VarState& v = var_at(ks.m, ks.l);
            unsigned deg = emb.index.I[ks.l - 1] - emb.index.I[ks.m - 1];
            unsigned layers = (p > 2 && deg % 2 == 1) ? 1 : emb.index.r;
            if (ks.exp + 1 >= layers)
                v.alive = false;
            else
                v.exp = ks.exp + 1;
        }
        // surviving generator images in A
        std::vector<Element> gens;
        for (const VarState& v : vars) {
            if (!v.alive) continue;
            std::uint64_t pe = 1;
            for (unsigned t = 0; t < v.exp; ++t) pe *= p;
            Element img = h.power(emb.comatrix[v.i - 1][v.j - 1], pe);
            if (!img.is_zero()) gens.push_back(img);
        }
        IdealSubspace J = ideal_from_elements(h, gens);
        std::uint64_t qdim = h.dim() - J.space.dim();
        if (qdim == 1) continue;
        if (qdim != 2 && qdim != p)
            throw AlgebraError(Errc::chain_invariant_violation,
                               "first nontrivial chain layer has dimension " + std::to_string(qdim));
        auto [target, q] = quotient(hp, J);
        if (!target_is_elementary(*target))
            throw AlgebraError(Errc::chain_invariant_violation, "chain layer target not elementary");
        // canonicalize through the dual generator: the rebuilt map has the
        // same kernel, so this is the same quotient with the presentation
        // every other strategy emits
        ElementaryQuotientResult res;
        res.degree = target->gen(0).degree;
        res.chi = Vec(h.dim(), 0);
        for (std::size_t c = 0; c < h.dim(); ++c) res.chi[c] = q.matrix.at(1, c);
        DualAlgebra L = dualize(h, false);
        res.quotient = elementary_quotient_from_chi(hp, L, res.chi);
        if (!(kernel_basis(res.quotient.matrix) == kernel_basis(q.matrix)))
            throw AlgebraError(Errc::chain_invariant_violation, "canonicalized quotient kernel drifted");
        res.certificate = is_conormal(h, res.quotient, &L);
        if (!res.certificate.conormal())
            throw AlgebraError(Errc::step_not_conormal, "chain layer quotient not conormal");
        res.cocentral = is_cocentral(h, res.quotient, &L);
        res.strategy = SearchStrategy::chain;
        return res;
    }
    throw AlgebraError(Errc::chain_invariant_violation,
                       "chain exhausted without a nontrivial layer");
}

/// Strategy dispatcher for the elementary-conormal-quotient finder.
inline ElementaryQuotientResult find_elementary_conormal_quotient(PresPtr hp, FindOptions opt = {}) {
    const HopfPresentation& h = *hp;
    if (h.dim() < 2) throw AlgebraError(Errc::invalid_argument, "need dim >= 2");
    DualAlgebra L = dualize(h, false);

    auto by_search = [&]() -> ElementaryQuotientResult {
        auto res = find_elementary_by_search(hp, L, opt);
        if (res) return std::move(*res);
        if (opt.positive_degree_only)
            throw AlgebraError(Errc::no_positive_degree_quotient,
                               "no elementary conormal quotient in positive degree");
        throw AlgebraError(Errc::search_exhausted, "no elementary conormal quotient found");
    };
    auto by_chain = [&]() -> ElementaryQuotientResult {
        UnitriangularEmbedding emb = embed_into_unitriangular(hp);
        ElementaryQuotientResult res = intersection_chain(hp, emb);
        if (opt.positive_degree_only && res.degree == 0)
            throw AlgebraError(Errc::no_positive_degree_quotient,
                               "chain produced a degree-0 quotient only");
        return res;
    };

    switch (opt.strategy) {
        case SearchStrategy::search:
            return by_search();
        case SearchStrategy::chain:
            return by_chain();
        case SearchStrategy::automatic:
        default:
            try {
                return by_search();
            } catch (const AlgebraError& e) {
                if (e.code() == Errc::search_exhausted) return by_chain();
                throw;
            }
    }
}

}  // namespace grhopf
