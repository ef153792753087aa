#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "betti.hpp"
#include "dual.hpp"
#include "quotient.hpp"

namespace grhopf {

struct BarOptions {
    unsigned smax = 6;
    unsigned tmax = 0;  // 0: caller must set; the CLI applies its window default
    std::uint64_t tuple_budget = 2000000;
    unsigned threads = 1;
};

namespace barimpl {

using Tuple = std::vector<std::uint32_t>;  // positions into the augmentation letters

/// Homogeneous tensor-word bases of the reduced bar complex, grouped by
/// (length, internal degree), in lexicographic order per block.
struct TupleBasis {
    const DualAlgebra* L = nullptr;
    std::vector<BasisIndex> letters;   // dual basis indices 1..dim-1
    std::vector<unsigned> letter_deg;
    // blocks[s][t] = lex-ordered tuples of length s and degree t
    std::vector<std::map<unsigned, std::vector<Tuple>>> blocks;

    void build(const DualAlgebra& dual, unsigned smax_words, unsigned tmax,
               std::uint64_t budget) {
        L = &dual;
        letters.clear();
        letter_deg.clear();
        for (std::size_t i = 1; i < dual.dim(); ++i) {
            letters.push_back(BasisIndex(i));
            letter_deg.push_back(dual.degree(BasisIndex(i)));
        }
        blocks.assign(smax_words + 1, {});
        blocks[0][0] = {Tuple{}};
        std::uint64_t total = 1;
        for (unsigned s = 1; s <= smax_words; ++s) {
            for (std::uint32_t a = 0; a < letters.size(); ++a) {
                unsigned da = letter_deg[a];
                for (auto& [t_prev, tuples] : blocks[s - 1]) {
                    if (t_prev + da > tmax) continue;
                    auto& dst = blocks[s][t_prev + da];
                    for (const Tuple& T : tuples) {
                        Tuple nt;
                        nt.reserve(s);
                        nt.push_back(a);
                        nt.insert(nt.end(), T.begin(), T.end());
                        dst.push_back(std::move(nt));
                        if (++total > budget)
                            throw AlgebraError(Errc::budget_exceeded,
                                               "bar complex budget exceeded at length " +
                                                   std::to_string(s));
                    }
                }
            }
        }
        // prepend-by-ascending-letter over lex-ordered sub-blocks is lex order
    }

    std::size_t count(unsigned s, unsigned t) const {
        if (s >= blocks.size()) return 0;
        auto it = blocks[s].find(t);
        return it == blocks[s].end() ? 0 : it->second.size();
    }

    const std::vector<Tuple>* block(unsigned s, unsigned t) const {
        if (s >= blocks.size()) return nullptr;
        auto it = blocks[s].find(t);
        return it == blocks[s].end() ? nullptr : &it->second;
    }

    std::size_t position(unsigned s, unsigned t, const Tuple& key) const {
        const std::vector<Tuple>* b = block(s, t);
        if (!b) throw AlgebraError(Errc::invalid_argument, "tuple block missing");
        auto it = std::lower_bound(b->begin(), b->end(), key);
        if (it == b->end() || *it != key)
            throw AlgebraError(Errc::invalid_argument, "tuple not found in block");
        return std::size_t(it - b->begin());
    }

    /// Boundary expansion of one word: the face merging positions f, f+1
    /// (0-based) carries (-1)^{f + |a_0| + ... + |a_f|}. The prefix sum
    /// includes the first merged letter; that is the unique Koszul dressing
    /// of the alternating signs under which adjacent faces cancel for odd
    /// internal degrees, and it makes the boundary a coderivation of the
    /// deconcatenation coproduct for the suspended total degree.
    void boundary(const Tuple& word, unsigned t,
                  std::map<std::size_t, Scalar>& out) const {
        const unsigned p = L->p();
        const unsigned s = unsigned(word.size());
        out.clear();
        unsigned deg_prefix = 0;
        for (unsigned f = 0; f + 1 < s; ++f) {
            bool negative = ((f + deg_prefix + letter_deg[word[f]]) % 2) != 0;
            const SparseVec& prod = L->mult(letters[word[f]], letters[word[f + 1]]);
            for (auto& [k, c] : prod) {
                if (k == 0) continue;  // products of augmentation elements stay augmented
                Tuple merged;
                merged.reserve(s - 1);
                merged.insert(merged.end(), word.begin(), word.begin() + f);
                merged.push_back(std::uint32_t(k - 1));
                merged.insert(merged.end(), word.begin() + f + 2, word.end());
                std::size_t row = position(s - 1, t, merged);
                Scalar v = negative ? neg_mod(c, p) : c;
                auto [it, fresh] = out.try_emplace(row, v);
                if (!fresh) {
                    it->second = add_mod(it->second, v, p);
                    if (!it->second) out.erase(it);
                }
            }
            deg_prefix += letter_deg[word[f]];
        }
    }
};

/// Incremental column-rank accumulator over F_2, bit-packed rows.
struct RankF2 {
    std::size_t nrows = 0, words = 0;
    std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> pivots;

    explicit RankF2(std::size_t rows) : nrows(rows), words((rows + 63) / 64) {}

    void add_column(const std::map<std::size_t, Scalar>& col) {
        std::vector<std::uint64_t> v(words, 0);
        for (auto& [r, c] : col)
            if (c & 1) v[r >> 6] ^= (std::uint64_t(1) << (r & 63));
        for (auto& [prow, pvec] : pivots) {
            if (v[prow >> 6] & (std::uint64_t(1) << (prow & 63)))
                for (std::size_t w = 0; w < words; ++w) v[w] ^= pvec[w];
        }
        for (std::size_t w = 0; w < words; ++w) {
            if (!v[w]) continue;
            std::size_t bit = w * 64 + std::size_t(__builtin_ctzll(v[w]));
            pivots.emplace_back(bit, std::move(v));
            return;
        }
    }

    std::size_t rank() const { return pivots.size(); }
};

/// Incremental column-rank accumulator over F_p, byte rows.
struct RankFp {
    unsigned p;
    std::size_t nrows;
    std::vector<std::pair<std::size_t, Vec>> pivots;  // (pivot row, normalized column)

    RankFp(unsigned p_, std::size_t rows) : p(p_), nrows(rows) {}

    void add_column(const std::map<std::size_t, Scalar>& col) {
        Vec v(nrows, 0);
        for (auto& [r, c] : col) v[r] = c;
        for (auto& [prow, pvec] : pivots) {
            Scalar f = v[prow];
            if (!f) continue;
            for (std::size_t r = 0; r < nrows; ++r) v[r] = sub_mod(v[r], mul_mod(f, pvec[r], p), p);
        }
        for (std::size_t r = 0; r < nrows; ++r) {
            if (!v[r]) continue;
            Scalar inv = inv_mod(v[r], p);
            for (std::size_t k = 0; k < nrows; ++k) v[k] = mul_mod(v[k], inv, p);
            pivots.emplace_back(r, std::move(v));
            return;
        }
    }

    std::size_t rank() const { return pivots.size(); }
};

/// Rank of the boundary block (words of length s, degree t) -> (length s-1),
/// optionally with trivial coefficients of dimension coeff_dim.
inline std::size_t boundary_rank(const TupleBasis& tb, unsigned s, unsigned t,
                                 unsigned coeff_dim = 1) {
    if (s == 0) return 0;
    const std::vector<Tuple>* cols = tb.block(s, t);
    if (!cols || cols->empty()) return 0;
    std::size_t rows = tb.count(s - 1, t) * coeff_dim;
    if (rows == 0) return 0;
    const unsigned p = tb.L->p();
    std::map<std::size_t, Scalar> col;
    if (p == 2) {
        RankF2 acc(rows);
        for (const Tuple& w : *cols) {
            tb.boundary(w, t, col);
            for (unsigned d = 0; d < coeff_dim; ++d) {
                std::map<std::size_t, Scalar> shifted;
                for (auto& [r, c] : col) shifted[r * coeff_dim + d] = c;
                acc.add_column(shifted);
            }
        }
        return acc.rank();
    }
    RankFp acc(p, rows);
    for (const Tuple& w : *cols) {
        tb.boundary(w, t, col);
        for (unsigned d = 0; d < coeff_dim; ++d) {
            std::map<std::size_t, Scalar> shifted;
            for (auto& [r, c] : col) shifted[r * coeff_dim + d] = c;
            acc.add_column(shifted);
        }
    }
    return acc.rank();
}

template <typename Task>
inline void run_tasks(std::vector<Task>& tasks, unsigned threads) {
    if (threads <= 1 || tasks.size() <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> futs;
    unsigned nt = std::min<unsigned>(threads, unsigned(tasks.size()));
    for (unsigned i = 0; i < nt; ++i)
        futs.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                std::size_t k = next.fetch_add(1);
                if (k >= tasks.size()) break;
                tasks[k]();
            }
        }));
    for (auto& f : futs) f.get();
}

}  // namespace barimpl

/// Bigraded Ext of the trivial module via the reduced bar complex of the dual
/// algebra. Ground truth for every other cohomology path.
inline BettiTable bar_betti(const DualAlgebra& L, const BarOptions& opt, unsigned coeff_dim = 1) {
    if (opt.tmax == 0 && opt.smax > 0 && L.dim() > 1) {
        // degree-0 letters exist, so tmax = 0 is still a valid window; fall through
    }
    barimpl::TupleBasis tb;
    tb.build(L, opt.smax + 1, opt.tmax, opt.tuple_budget);

    // collect the (s, t) rank jobs
    struct Job {
        unsigned s, t;
        std::size_t rank = 0;
    };
    std::vector<Job> jobs;
    for (unsigned s = 1; s <= opt.smax + 1; ++s)
        for (auto& [t, tuples] : tb.blocks[s]) {
            (void)tuples;
            jobs.push_back({s, t, 0});
        }
    std::vector<std::function<void()>> tasks;
    for (Job& j : jobs)
        tasks.push_back([&tb, &j, coeff_dim] { j.rank = barimpl::boundary_rank(tb, j.s, j.t, coeff_dim); });
    barimpl::run_tasks(tasks, opt.threads);

    std::map<std::pair<unsigned, unsigned>, std::size_t> rank;
    for (const Job& j : jobs) rank[{j.s, j.t}] = j.rank;
    auto rank_at = [&](unsigned s, unsigned t) -> std::size_t {
        auto it = rank.find({s, t});
        return it == rank.end() ? 0 : it->second;
    };

    BettiTable table;
    table.smax = opt.smax;
    table.tmax = opt.tmax;
    for (unsigned s = 0; s <= opt.smax; ++s)
        for (auto& [t, tuples] : tb.blocks[s]) {
            std::size_t c = tuples.size() * coeff_dim;
            std::size_t h = c - rank_at(s, t) - rank_at(s + 1, t);
            if (t <= opt.tmax && h) table.set(s, t, unsigned(h));
        }
    return table;
}

/// Bar complex with trivial coefficients k^d; must equal d times the base
/// table entry-wise.
inline BettiTable coefficients_betti(const DualAlgebra& L, unsigned coeff_dim, const BarOptions& opt) {
    if (coeff_dim == 0) throw AlgebraError(Errc::invalid_argument, "coefficient dimension must be positive");
    return bar_betti(L, opt, coeff_dim);
}

/// Cochain-level cohomology: harmonic class bases, cup products, restriction.
/// Heavier than the rank path; meant for modest windows.
class CohomologyRing {
public:
    CohomologyRing(const DualAlgebra& L, const BarOptions& opt) : L_(&L), opt_(opt) {
        tb_.build(L, opt.smax + 1, opt.tmax, opt.tuple_budget);
        for (unsigned s = 0; s <= opt.smax; ++s)
            for (auto& [t, tuples] : tb_.blocks[s]) {
                if (t > opt.tmax) continue;
                Cell cell;
                cell.tuple_count = tuples.size();
                build_cell(s, t, cell);
                if (cell.tuple_count) cells_[{s, t}] = std::move(cell);
            }
        table_.smax = opt.smax;
        table_.tmax = opt.tmax;
        for (auto& [st, cell] : cells_)
            if (!cell.harmonic.empty()) table_.set(st.first, st.second, unsigned(cell.harmonic.size()));
    }

    struct Cell {
        std::size_t tuple_count = 0;
        Subspace cocycles;      // subspace of the cochain coordinate space
        Subspace coboundaries;  // image of the previous differential
        std::vector<Vec> harmonic;  // canonical class representatives
    };

    const BettiTable& table() const { return table_; }
    const barimpl::TupleBasis& tuples() const { return tb_; }
    const DualAlgebra& dual() const { return *L_; }
    const BarOptions& options() const { return opt_; }

    const Cell* cell(unsigned s, unsigned t) const {
        auto it = cells_.find({s, t});
        return it == cells_.end() ? nullptr : &it->second;
    }

    /// Class coordinates of a cocycle in the harmonic basis of its cell.
    Vec reduce_to_class(unsigned s, unsigned t, const Vec& cochain) const {
        const Cell* c = cell(s, t);
        if (!c) throw AlgebraError(Errc::invalid_argument, "cell outside window");
        if (!c->cocycles.contains(cochain))
            throw AlgebraError(Errc::invalid_argument, "not a cocycle");
        std::size_t h = c->harmonic.size();
        std::size_t b = c->coboundaries.dim();
        FpMatrix m(L_->p(), c->tuple_count, h + b);
        for (std::size_t j = 0; j < h; ++j)
            for (std::size_t r = 0; r < c->tuple_count; ++r) m.at(r, j) = c->harmonic[j][r];
        for (std::size_t j = 0; j < b; ++j) {
            Vec v = c->coboundaries.basis_vector(j);
            for (std::size_t r = 0; r < c->tuple_count; ++r) m.at(r, h + j) = v[r];
        }
        auto sol = solve(m, cochain);
        if (!sol) throw AlgebraError(Errc::invalid_argument, "cocycle outside cocycle space");
        return Vec(sol->begin(), sol->begin() + h);
    }

    Vec harmonic_cochain(unsigned s, unsigned t, const Vec& class_coords) const {
        const Cell* c = cell(s, t);
        if (!c) throw AlgebraError(Errc::invalid_argument, "cell outside window");
        Vec v(c->tuple_count, 0);
        for (std::size_t j = 0; j < class_coords.size(); ++j) {
            if (!class_coords[j]) continue;
            for (std::size_t r = 0; r < c->tuple_count; ++r)
                v[r] = add_mod(v[r], mul_mod(class_coords[j], c->harmonic[j][r], L_->p()), L_->p());
        }
        return v;
    }

    /// Concatenation product of cochains, with the Koszul sign of the total
    /// suspended degrees; result in class coordinates of the target cell, or
    /// nullopt when the target lies outside the window.
    std::optional<Vec> cup(unsigned s1, unsigned t1, const Vec& f, unsigned s2, unsigned t2,
                           const Vec& g) const {
        unsigned s = s1 + s2, t = t1 + t2;
        if (s > opt_.smax || t > opt_.tmax) return std::nullopt;
        const Cell* tc = cell(s, t);
        if (!tc) return std::nullopt;
        const unsigned p = L_->p();
        bool flip = (((s1 + t1) % 2) && ((s2 + t2) % 2));
        const std::vector<barimpl::Tuple>* words = tb_.block(s, t);
        Vec out(tc->tuple_count, 0);
        for (std::size_t w = 0; w < words->size(); ++w) {
            const barimpl::Tuple& word = (*words)[w];
            unsigned front_deg = 0;
            for (unsigned i = 0; i < s1; ++i) front_deg += tb_.letter_deg[word[i]];
            if (front_deg != t1) continue;
            barimpl::Tuple front(word.begin(), word.begin() + s1);
            barimpl::Tuple back(word.begin() + s1, word.end());
            Scalar fv = f[tb_.position(s1, t1, front)];
            if (!fv) continue;
            Scalar gv = g[tb_.position(s2, t2, back)];
            if (!gv) continue;
            Scalar val = mul_mod(fv, gv, p);
            if (flip) val = neg_mod(val, p);
            out[w] = add_mod(out[w], val, p);
        }
        return reduce_to_class(s, t, out);
    }

    std::optional<Vec> cup_classes(unsigned s1, unsigned t1, const Vec& class1, unsigned s2,
                                   unsigned t2, const Vec& class2) const {
        return cup(s1, t1, harmonic_cochain(s1, t1, class1), s2, t2,
                   harmonic_cochain(s2, t2, class2));
    }

private:
    void build_cell(unsigned s, unsigned t, Cell& cell) {
        const unsigned p = L_->p();
        // boundary matrices as row spans / kernels of their transposes
        // cocycles: kernel of delta = kernel of boundary(s+1)^T
        std::size_t next_count = tb_.count(s + 1, t);
        FpMatrix bdT(p, next_count, cell.tuple_count);  // rows: (s+1)-words, cols: s-words
        if (next_count) {
            const std::vector<barimpl::Tuple>* words = tb_.block(s + 1, t);
            std::map<std::size_t, Scalar> col;
            for (std::size_t w = 0; w < words->size(); ++w) {
                tb_.boundary((*words)[w], t, col);
                for (auto& [r, c] : col) bdT.at(w, r) = c;
            }
        }
        cell.cocycles = cell.tuple_count ? kernel_basis(bdT) : Subspace::zero(p, 0);

        // coboundaries: row space of boundary(s)
        std::vector<Vec> rows;
        if (s >= 1 && tb_.count(s, t)) {
            const std::vector<barimpl::Tuple>* words = tb_.block(s, t);
            std::map<std::size_t, Scalar> col;
            std::size_t prev_count = tb_.count(s - 1, t);
            if (prev_count) {
                // delta image = row space of the boundary matrix, i.e. spans of
                // the transposed boundary columns of each (s-1)-cochain basis
                // functional; equivalently rows of boundary(s) matrix.
                FpMatrix bd(p, prev_count, cell.tuple_count);
                for (std::size_t w = 0; w < words->size(); ++w) {
                    tb_.boundary((*words)[w], t, col);
                    for (auto& [r, c] : col) bd.at(r, w) = c;
                }
                for (std::size_t r = 0; r < prev_count; ++r) rows.push_back(bd.row(r));
            }
        }
        cell.coboundaries = Subspace::from_span(p, cell.tuple_count, rows);
        if (cell.tuple_count)
            cell.harmonic = cell.cocycles.quotient_representatives(cell.coboundaries);
    }

    const DualAlgebra* L_;
    BarOptions opt_;
    barimpl::TupleBasis tb_;
    std::map<std::pair<unsigned, unsigned>, Cell> cells_;
    BettiTable table_;
};

/// Cochain restriction along the dual inclusion of a quotient q : A -> B.
/// Returns, per cell, the matrix of H(A) -> H(B) in harmonic coordinates
/// (rows: B classes, columns: A classes).
struct RestrictionMaps {
    std::map<std::pair<unsigned, unsigned>, FpMatrix> maps;
};

inline Vec restrict_cochain(const CohomologyRing& ringA, const CohomologyRing& ringB,
                            const QuotientMap& q, unsigned s, unsigned t, const Vec& cochainA) {
    const unsigned p = ringA.dual().p();
    const auto& tbA = ringA.tuples();
    const auto& tbB = ringB.tuples();
    const std::vector<barimpl::Tuple>* wordsB = tbB.block(s, t);
    std::size_t countB = wordsB ? wordsB->size() : 0;
    Vec out(countB, 0);
    if (!countB) return out;
    for (std::size_t w = 0; w < countB; ++w) {
        const barimpl::Tuple& word = (*wordsB)[w];
        // expand prod of iota(letters); iota(e_v) = sum_c q.matrix[v][c] e_c
        std::vector<std::pair<barimpl::Tuple, Scalar>> partial{{barimpl::Tuple{}, Scalar(1)}};
        for (unsigned i = 0; i < s; ++i) {
            BasisIndex v = tbB.letters[word[i]];
            std::vector<std::pair<barimpl::Tuple, Scalar>> next;
            for (auto& [pref, coeff] : partial)
                for (std::size_t c = 1; c < ringA.dual().dim(); ++c) {
                    Scalar qc = q.matrix.at(v, c);
                    if (!qc) continue;
                    barimpl::Tuple np = pref;
                    np.push_back(std::uint32_t(c - 1));
                    next.emplace_back(std::move(np), mul_mod(coeff, qc, p));
                }
            partial = std::move(next);
        }
        Scalar acc = 0;
        for (auto& [tupleA, coeff] : partial) {
            Scalar fv = cochainA[tbA.position(s, t, tupleA)];
            if (fv) acc = add_mod(acc, mul_mod(coeff, fv, p), p);
        }
        out[w] = acc;
    }
    return out;
}

inline RestrictionMaps restriction_map(const CohomologyRing& ringA, const CohomologyRing& ringB,
                                       const QuotientMap& q) {
    RestrictionMaps out;
    const unsigned p = ringA.dual().p();
    const BettiTable& tA = ringA.table();
    for (unsigned s = 0; s <= ringA.options().smax; ++s)
        for (unsigned t = 0; t <= ringA.options().tmax; ++t) {
            const CohomologyRing::Cell* ca = ringA.cell(s, t);
            if (!ca && !ringB.cell(s, t)) continue;
            std::size_t colsN = ca ? ca->harmonic.size() : 0;
            const CohomologyRing::Cell* cb = ringB.cell(s, t);
            std::size_t rowsN = cb ? cb->harmonic.size() : 0;
            if (!colsN && !rowsN) continue;
            FpMatrix m(p, rowsN, colsN);
            for (std::size_t j = 0; j < colsN; ++j) {
                Vec res = restrict_cochain(ringA, ringB, q, s, t, ca->harmonic[j]);
                Vec cls = rowsN ? ringB.reduce_to_class(s, t, res) : Vec{};
                for (std::size_t r = 0; r < rowsN; ++r) m.at(r, j) = cls[r];
            }
            out.maps[{s, t}] = std::move(m);
        }
    (void)tA;
    return out;
}

/// Finite-generation evidence: greedy generator selection below the bound,
/// then a span verdict for every cell in the window.
struct FGEvidenceReport {
    unsigned generator_bound = 2;
    unsigned smax = 0, tmax = 0;
    struct Generator {
        unsigned s, t;
        Vec class_coords;
    };
    std::vector<Generator> generators;
    std::map<std::pair<unsigned, unsigned>, bool> spanned;
    std::vector<std::pair<unsigned, unsigned>> unspanned;
};

inline FGEvidenceReport fg_evidence(const CohomologyRing& ring, unsigned generator_bound) {
    const unsigned p = ring.dual().p();
    FGEvidenceReport rep;
    rep.generator_bound = generator_bound;
    rep.smax = ring.options().smax;
    rep.tmax = ring.options().tmax;

    // nonzero cells in lexicographic order
    std::vector<std::pair<unsigned, unsigned>> cells;
    for (auto& [st, d] : ring.table().dims) {
        (void)d;
        cells.push_back(st);
    }

    std::map<std::pair<unsigned, unsigned>, Subspace> span;
    auto span_dim = [&](std::pair<unsigned, unsigned> st) {
        auto it = span.find(st);
        return it == span.end() ? std::size_t(0) : it->second.dim();
    };
    auto add_to_span = [&](std::pair<unsigned, unsigned> st, const Vec& v) {
        std::size_t dim = ring.table().at(st.first, st.second);
        auto it = span.try_emplace(st, Subspace::zero(p, dim)).first;
        it->second = it->second.sum(Subspace::from_span(p, dim, {v}));
    };
    // unit class
    if (ring.table().at(0, 0)) add_to_span({0, 0}, Vec{1});

    auto close = [&] {
        for (;;) {
            bool grew = false;
            for (auto& g : rep.generators)
                for (auto& st : cells) {
                    auto it = span.find(st);
                    if (it == span.end() || it->second.dim() == 0) continue;
                    unsigned ns = g.s + st.first, nt = g.t + st.second;
                    if (ns > rep.smax || nt > rep.tmax) continue;
                    if (!ring.table().at(ns, nt)) continue;
                    std::size_t before = span_dim({ns, nt});
                    for (std::size_t i = 0; i < it->second.dim(); ++i) {
                        auto prod = ring.cup_classes(g.s, g.t, g.class_coords, st.first, st.second,
                                                     it->second.basis_vector(i));
                        if (prod && !std::all_of(prod->begin(), prod->end(),
                                                 [](Scalar c) { return c == 0; }))
                            add_to_span({ns, nt}, *prod);
                    }
                    if (span_dim({ns, nt}) != before) grew = true;
                }
            if (!grew) break;
        }
    };

    for (auto& st : cells) {
        if (st == std::pair<unsigned, unsigned>{0, 0}) continue;
        if (st.first > generator_bound) continue;
        close();
        std::size_t dim = ring.table().at(st.first, st.second);
        Subspace cur = span.count(st) ? span[st] : Subspace::zero(p, dim);
        if (cur.dim() < dim) {
            for (const Vec& v : Subspace::full(p, dim).quotient_representatives(cur)) {
                rep.generators.push_back({st.first, st.second, v});
                add_to_span(st, v);
            }
        }
    }
    close();

    for (auto& st : cells) {
        std::size_t dim = ring.table().at(st.first, st.second);
        bool ok = span_dim(st) == dim;
        rep.spanned[st] = ok;
        if (!ok) rep.unspanned.push_back(st);
    }
    return rep;
}

}  // namespace grhopf
