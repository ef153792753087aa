#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace grhopf {

enum class Errc {
    budget_exceeded,
    candidate_space_too_large,
    chain_invariant_violation,
    condition_disagreement,
    dimension_mismatch,
    flag_not_unitriangular,
    invalid_argument,
    no_finite_invariant_power,
    no_positive_degree_quotient,
    non_nilpotent_convolution,
    not_hopf_ideal,
    not_local,
    not_sub_hopf,
    presentation_unrealizable,
    search_exhausted,
    step_not_conormal,
    target_not_elementary,
};

class AlgebraError : public std::runtime_error {
public:
    AlgebraError(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

using Scalar = std::uint8_t;

/// Prime field parameter, validated by trial division. Scalars are stored in
/// bytes, so p must fit below 256.
class Prime {
public:
    explicit Prime(unsigned v) : v_(v) {
        if (v < 2 || v > 251)
            throw AlgebraError(Errc::invalid_argument, "prime out of supported range: " + std::to_string(v));
        for (unsigned d = 2; d * d <= v; ++d)
            if (v % d == 0)
                throw AlgebraError(Errc::invalid_argument, "not a prime: " + std::to_string(v));
        v_ = v;
    }
    unsigned value() const { return v_; }
    bool operator==(const Prime& o) const { return v_ == o.v_; }
    bool operator!=(const Prime& o) const { return v_ != o.v_; }

private:
    unsigned v_;
};

inline Scalar add_mod(Scalar a, Scalar b, unsigned p) {
    unsigned s = unsigned(a) + unsigned(b);
    return Scalar(s >= p ? s - p : s);
}
inline Scalar sub_mod(Scalar a, Scalar b, unsigned p) {
    return Scalar(a >= b ? a - b : a + p - b);
}
inline Scalar neg_mod(Scalar a, unsigned p) { return Scalar(a == 0 ? 0 : p - a); }
inline Scalar mul_mod(Scalar a, Scalar b, unsigned p) { return Scalar((unsigned(a) * unsigned(b)) % p); }
inline Scalar pow_mod(Scalar a, unsigned long e, unsigned p) {
    unsigned long r = 1, base = a % p;
    while (e) {
        if (e & 1) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return Scalar(r);
}
inline Scalar inv_mod(Scalar a, unsigned p) {
    if (a == 0) throw AlgebraError(Errc::invalid_argument, "inverse of zero");
    return pow_mod(a, p - 2, p);
}

using Vec = std::vector<Scalar>;

/// Dense matrix over F_p, entries kept reduced.
struct FpMatrix {
    unsigned p = 2;
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;

    FpMatrix() = default;
    FpMatrix(unsigned p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

    Scalar& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    Scalar at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    Vec row(std::size_t r) const { return Vec(a.begin() + r * cols, a.begin() + (r + 1) * cols); }
    void set_row(std::size_t r, const Vec& v) {
        for (std::size_t c = 0; c < cols; ++c) at(r, c) = v[c];
    }

    bool operator==(const FpMatrix& o) const { return p == o.p && rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

    Vec apply(const Vec& x) const {
        if (x.size() != cols) throw AlgebraError(Errc::dimension_mismatch, "matrix apply: size mismatch");
        Vec y(rows, 0);
        for (std::size_t r = 0; r < rows; ++r) {
            unsigned acc = 0;
            for (std::size_t c = 0; c < cols; ++c) acc += unsigned(at(r, c)) * unsigned(x[c]);
            y[r] = Scalar(acc % p);
        }
        return y;
    }

    FpMatrix transposed() const {
        FpMatrix t(p, cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    static FpMatrix identity(unsigned p, std::size_t n) {
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static FpMatrix from_rows(unsigned p, std::size_t cols, const std::vector<Vec>& rows) {
        FpMatrix m(p, rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw AlgebraError(Errc::dimension_mismatch, "from_rows: ragged input");
            m.set_row(r, rows[r]);
        }
        return m;
    }
};

struct RrefResult {
    FpMatrix mat;  // reduced row-echelon form, zero rows removed
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column per row, strictly increasing
};

/// Gauss-Jordan elimination. Row space is preserved; pivots are normalized to
/// 1 and cleared above and below.
inline RrefResult rref(FpMatrix m) {
    const unsigned p = m.p;
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t sel = r;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        Scalar inv = inv_mod(m.at(r, c), p);
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = mul_mod(m.at(r, j), inv, p);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Scalar f = m.at(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                m.at(i, j) = sub_mod(m.at(i, j), mul_mod(f, m.at(r, j), p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    RrefResult res;
    res.rank = r;
    res.pivots = pivots;
    res.mat = FpMatrix(p, r, m.cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) res.mat.at(i, j) = m.at(i, j);
    return res;
}

/// Echelonized subspace of F_p^n. Canonical: equal subspaces have identical
/// basis matrices.
class Subspace {
public:
    Subspace() = default;
    Subspace(unsigned p, std::size_t ambient) : ambient_(ambient), basis_(p, 0, ambient) {}

    static Subspace zero(unsigned p, std::size_t ambient) { return Subspace(p, ambient); }

    static Subspace full(unsigned p, std::size_t ambient) {
        Subspace s(p, ambient);
        s.basis_ = FpMatrix::identity(p, ambient);
        return s;
    }

    static Subspace from_span(unsigned p, std::size_t ambient, const std::vector<Vec>& vectors) {
        Subspace s(p, ambient);
        if (!vectors.empty()) s.basis_ = rref(FpMatrix::from_rows(p, ambient, vectors)).mat;
        return s;
    }

    static Subspace from_echelon(FpMatrix echelon, std::size_t ambient) {
        Subspace s(echelon.p, ambient);
        s.basis_ = std::move(echelon);
        return s;
    }

    unsigned p() const { return basis_.p; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows; }
    const FpMatrix& basis() const { return basis_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        for (Scalar x : r)
            if (x) return false;
        return true;
    }

    bool contains(const Subspace& o) const {
        for (std::size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_vector(i))) return false;
        return true;
    }

    /// Residue of v modulo this subspace (pivot coordinates eliminated).
    Vec reduce(Vec v) const {
        if (v.size() != ambient_) throw AlgebraError(Errc::dimension_mismatch, "subspace reduce");
        const unsigned pp = p();
        for (std::size_t i = 0; i < basis_.rows; ++i) {
            std::size_t c = pivot_col(i);
            if (v[c] == 0) continue;
            Scalar f = v[c];
            for (std::size_t j = c; j < ambient_; ++j)
                v[j] = sub_mod(v[j], mul_mod(f, basis_.at(i, j), pp), pp);
        }
        return v;
    }

    Subspace sum(const Subspace& o) const {
        check_compat(o);
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < dim(); ++i) rows.push_back(basis_vector(i));
        for (std::size_t i = 0; i < o.dim(); ++i) rows.push_back(o.basis_vector(i));
        return from_span(p(), ambient_, rows);
    }

    /// Intersection via the kernel of the stacked system [A^T | -B^T].
    Subspace intersection(const Subspace& o) const;

    /// Vectors completing `inner`'s basis to a basis of this subspace.
    /// Requires inner <= this; deterministic (echelon rows in order).
    std::vector<Vec> quotient_representatives(const Subspace& inner) const {
        check_compat(inner);
        if (!contains(inner))
            throw AlgebraError(Errc::invalid_argument, "quotient_representatives: not a subspace");
        std::vector<Vec> reps;
        Subspace cur = inner;
        for (std::size_t i = 0; i < dim(); ++i) {
            Vec v = basis_vector(i);
            if (!cur.contains(v)) {
                reps.push_back(v);
                cur = cur.sum(from_span(p(), ambient_, {v}));
            }
        }
        return reps;
    }

private:
    std::size_t pivot_col(std::size_t row) const {
        for (std::size_t c = 0; c < basis_.cols; ++c)
            if (basis_.at(row, c)) return c;
        throw AlgebraError(Errc::invalid_argument, "zero row in echelon basis");
    }
    void check_compat(const Subspace& o) const {
        if (ambient_ != o.ambient_dim() || p() != o.p())
            throw AlgebraError(Errc::dimension_mismatch, "subspace ambient mismatch");
    }

    std::size_t ambient_ = 0;
    FpMatrix basis_;
};

/// Right null space of m, echelonized.
inline Subspace kernel_basis(const FpMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        Vec v(m.cols, 0);
        v[c] = 1;
        for (std::size_t i = 0; i < r.rank; ++i)
            v[r.pivots[i]] = neg_mod(r.mat.at(i, c), m.p);
        basis.push_back(v);
    }
    return Subspace::from_span(m.p, m.cols, basis);
}

inline Subspace Subspace::intersection(const Subspace& o) const {
    check_compat(o);
    if (dim() == 0 || o.dim() == 0) return zero(p(), ambient_);
    FpMatrix stacked(p(), ambient_, dim() + o.dim());
    for (std::size_t r = 0; r < ambient_; ++r) {
        for (std::size_t i = 0; i < dim(); ++i) stacked.at(r, i) = basis_.at(i, r);
        for (std::size_t i = 0; i < o.dim(); ++i) stacked.at(r, dim() + i) = neg_mod(o.basis().at(i, r), p());
    }
    Subspace ker = kernel_basis(stacked);
    std::vector<Vec> vectors;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        Vec uv = ker.basis_vector(k);
        Vec x(ambient_, 0);
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t c = 0; c < ambient_; ++c)
                x[c] = add_mod(x[c], mul_mod(uv[i], basis_.at(i, c), p()), p());
        vectors.push_back(x);
    }
    return from_span(p(), ambient_, vectors);
}

/// Any particular solution of m x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const FpMatrix& m, const Vec& b) {
    if (b.size() != m.rows) throw AlgebraError(Errc::dimension_mismatch, "solve: rhs length");
    FpMatrix aug(m.p, m.rows, m.cols + 1);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    RrefResult rr = rref(std::move(aug));
    Vec x(m.cols, 0);
    for (std::size_t i = 0; i < rr.rank; ++i) {
        if (rr.pivots[i] == m.cols) return std::nullopt;  // pivot in the rhs column
        x[rr.pivots[i]] = rr.mat.at(i, m.cols);
    }
    return x;
}

}  // namespace grhopf
