#pragma once

#include <map>
#include <vector>

#include "betti.hpp"
#include "dual.hpp"

namespace grhopf {

/// Locality of a finite-dimensional augmented algebra: the augmentation ideal
/// must be nilpotent, computed by subspace powers.
inline bool is_local(const DualAlgebra& L) {
    const unsigned p = L.p();
    const std::size_t n = L.dim();
    std::vector<Vec> aug;
    for (std::size_t i = 1; i < n; ++i) aug.push_back(L.basis_vec(BasisIndex(i)));
    Subspace power = Subspace::from_span(p, n, aug);
    std::size_t steps = 0;
    while (power.dim() > 0) {
        if (++steps > n) return false;
        std::vector<Vec> next;
        for (std::size_t i = 0; i < power.dim(); ++i)
            for (const Vec& a : aug) {
                Vec v = L.product(a, power.basis_vector(i));
                if (!L.is_zero(v)) next.push_back(v);
            }
        Subspace np = Subspace::from_span(p, n, next);
        if (np == power) return false;  // stabilized above zero
        power = np;
    }
    return true;
}

namespace minresimpl {

/// One stage of the resolution: a free module with tagged generators,
/// k-indexed by (generator, dual-algebra basis element), truncated to the
/// degree window.
struct Stage {
    std::vector<unsigned> gen_deg;
    std::vector<Vec> gen_image;  // differential images in the coordinates of the stage below
    std::vector<std::pair<std::size_t, BasisIndex>> basis;
    std::map<std::pair<std::size_t, BasisIndex>, std::size_t> pos;
    std::vector<unsigned> deg;

    void index_basis(const DualAlgebra& L, unsigned tmax) {
        basis.clear();
        pos.clear();
        deg.clear();
        for (std::size_t g = 0; g < gen_deg.size(); ++g)
            for (std::size_t b = 0; b < L.dim(); ++b) {
                unsigned d = gen_deg[g] + L.degree(BasisIndex(b));
                if (d > tmax) continue;
                pos[{g, BasisIndex(b)}] = basis.size();
                basis.push_back({g, BasisIndex(b)});
                deg.push_back(d);
            }
    }
};

/// Left multiplication by a dual basis element inside a stage.
inline Vec act(const DualAlgebra& L, const Stage& st, BasisIndex r, const Vec& v) {
    const unsigned p = L.p();
    Vec out(st.basis.size(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k]) continue;
        auto [g, b] = st.basis[k];
        for (auto& [bk, c] : L.mult(r, b)) {
            auto it = st.pos.find({g, bk});
            if (it == st.pos.end()) continue;  // beyond the degree window
            out[it->second] = add_mod(out[it->second], mul_mod(v[k], c, p), p);
        }
    }
    return out;
}

}  // namespace minresimpl

/// Betti numbers from a minimal free resolution over a local dual algebra.
/// The radical is the augmentation ideal, valid exactly in the gated case.
inline BettiTable minimal_resolution_betti(const DualAlgebra& L, unsigned smax, unsigned tmax) {
    if (!is_local(L)) throw AlgebraError(Errc::not_local, "minimal resolution needs a local algebra");
    using minresimpl::Stage;
    const unsigned p = L.p();
    const std::size_t nL = L.dim();

    BettiTable table;
    table.smax = smax;
    table.tmax = tmax;
    table.set(0, 0, 1);

    Stage below;         // F_{s-2}
    Stage prev;          // F_{s-1}
    prev.gen_deg = {0};  // F_0 = Lambda
    prev.gen_image = {Vec{}};
    prev.index_basis(L, tmax);

    for (unsigned s = 1; s <= smax; ++s) {
        // kernel of d_{s-1} per internal degree
        std::map<unsigned, std::vector<std::size_t>> cols_by_deg;
        for (std::size_t i = 0; i < prev.basis.size(); ++i) cols_by_deg[prev.deg[i]].push_back(i);

        std::map<unsigned, Subspace> K;
        for (auto& [t, cols] : cols_by_deg) {
            FpMatrix m(p, 0, cols.size());
            if (s == 1) {
                // augmentation Lambda -> k: only the degree-0 unit coordinate survives
                m = FpMatrix(p, 1, cols.size());
                if (t == 0)
                    for (std::size_t c = 0; c < cols.size(); ++c)
                        m.at(0, c) = prev.basis[cols[c]].second == 0 ? 1 : 0;
            } else {
                std::vector<std::size_t> rows;
                for (std::size_t i = 0; i < below.basis.size(); ++i)
                    if (below.deg[i] == t) rows.push_back(i);
                m = FpMatrix(p, rows.size(), cols.size());
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    auto [g, b] = prev.basis[cols[c]];
                    Vec img = minresimpl::act(L, below, b, prev.gen_image[g]);
                    for (std::size_t r = 0; r < rows.size(); ++r) m.at(r, c) = img[rows[r]];
                }
            }
            Subspace ker = kernel_basis(m);
            std::vector<Vec> big;
            for (std::size_t i = 0; i < ker.dim(); ++i) {
                Vec small = ker.basis_vector(i);
                Vec v(prev.basis.size(), 0);
                for (std::size_t c = 0; c < cols.size(); ++c) v[cols[c]] = small[c];
                big.push_back(v);
            }
            K[t] = Subspace::from_span(p, prev.basis.size(), big);
        }

        // radical multiples of the kernel, degree by degree
        std::map<unsigned, Subspace> radK;
        for (auto& [t, sub] : K)
            for (std::size_t i = 0; i < sub.dim(); ++i)
                for (std::size_t r = 1; r < nL; ++r) {
                    unsigned nt = t + L.degree(BasisIndex(r));
                    if (nt > tmax) continue;
                    Vec out = minresimpl::act(L, prev, BasisIndex(r), sub.basis_vector(i));
                    bool nz = false;
                    for (Scalar c : out)
                        if (c) nz = true;
                    if (!nz) continue;
                    auto it = radK.try_emplace(nt, Subspace::zero(p, prev.basis.size())).first;
                    it->second = it->second.sum(Subspace::from_span(p, prev.basis.size(), {out}));
                }

        Stage next;
        for (auto& [t, sub] : K) {
            if (sub.dim() == 0) continue;
            Subspace rk = radK.count(t) ? radK[t].intersection(sub) : Subspace::zero(p, prev.basis.size());
            std::vector<Vec> reps = sub.quotient_representatives(rk);
            for (Vec& v : reps) {
                next.gen_deg.push_back(t);
                next.gen_image.push_back(v);
            }
            if (!reps.empty()) table.set(s, t, unsigned(reps.size()));
        }
        next.index_basis(L, tmax);
        below = std::move(prev);
        prev = std::move(next);
    }
    return table;
}

}  // namespace grhopf
