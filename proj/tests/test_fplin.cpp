#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grhopf/fplin.hpp"

using namespace grhopf;

static FpMatrix mat(unsigned p, std::size_t r, std::size_t c, std::vector<unsigned> vals) {
    FpMatrix m(p, r, c);
    for (std::size_t i = 0; i < vals.size(); ++i) m.a[i] = Scalar(vals[i] % p);
    return m;
}

TEST_CASE("prime validation") {
    CHECK(Prime(2).value() == 2);
    CHECK(Prime(251).value() == 251);
    CHECK_THROWS_AS(Prime(1), AlgebraError);
    CHECK_THROWS_AS(Prime(4), AlgebraError);
    CHECK_THROWS_AS(Prime(91), AlgebraError);  // 7 * 13
    CHECK_THROWS_AS(Prime(257), AlgebraError);
}

TEST_CASE("rref duplicate rows") {
    auto r = rref(mat(2, 2, 2, {1, 1, 1, 1}));
    CHECK(r.rank == 1);
    CHECK(r.mat.rows == 1);
    CHECK(r.mat.at(0, 0) == 1);
    CHECK(r.mat.at(0, 1) == 1);
}

TEST_CASE("rref scalar multiple of identity") {
    auto r = rref(mat(3, 2, 2, {2, 0, 0, 2}));
    CHECK(r.rank == 2);
    CHECK(r.mat == FpMatrix::identity(3, 2));
}

TEST_CASE("rref zero matrix") {
    auto r = rref(mat(2, 1, 2, {0, 0}));
    CHECK(r.rank == 0);
    CHECK(r.mat.rows == 0);
}

TEST_CASE("rref idempotent") {
    std::mt19937 rng(7);
    for (unsigned p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 20; ++trial) {
            FpMatrix m(p, 4, 6);
            for (auto& x : m.a) x = Scalar(rng() % p);
            auto r1 = rref(m);
            auto r2 = rref(r1.mat);
            CHECK(r1.mat == r2.mat);
        }
    }
}

TEST_CASE("kernel basics") {
    CHECK(kernel_basis(mat(2, 1, 2, {1, 1})) ==
          Subspace::from_span(2, 2, {{1, 1}}));
    CHECK(kernel_basis(FpMatrix::identity(3, 2)).dim() == 0);
    CHECK(kernel_basis(mat(2, 1, 3, {0, 0, 0})).dim() == 3);
}

TEST_CASE("rank-nullity") {
    std::mt19937 rng(99);
    for (unsigned p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 6;
            FpMatrix m(p, rows, cols);
            for (auto& x : m.a) x = Scalar(rng() % p);
            auto r = rref(m);
            Subspace k = kernel_basis(m);
            CHECK(r.rank + k.dim() == cols);
            for (std::size_t i = 0; i < k.dim(); ++i) {
                Vec v = k.basis_vector(i);
                for (Scalar c : m.apply(v)) CHECK(c == 0);
            }
        }
    }
}

TEST_CASE("solve") {
    auto x = solve(FpMatrix::identity(2, 2), {1, 1});
    REQUIRE(x.has_value());
    CHECK(*x == Vec{1, 1});

    auto y = solve(mat(2, 1, 2, {1, 1}), {1});
    REQUIRE(y.has_value());
    CHECK(mat(2, 1, 2, {1, 1}).apply(*y) == Vec{1});

    CHECK_FALSE(solve(mat(3, 1, 1, {0}), {1}).has_value());
}

TEST_CASE("solve postcondition on random systems") {
    std::mt19937 rng(4242);
    for (unsigned p : {2u, 3u}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
            FpMatrix m(p, rows, cols);
            for (auto& x : m.a) x = Scalar(rng() % p);
            Vec b(rows);
            for (auto& c : b) c = Scalar(rng() % p);
            auto x = solve(m, b);
            if (x) CHECK(m.apply(*x) == b);
        }
    }
}

TEST_CASE("subspace sum and intersection") {
    Subspace e1 = Subspace::from_span(2, 3, {{1, 0, 0}});
    Subspace e2 = Subspace::from_span(2, 3, {{0, 1, 0}});
    CHECK(e1.sum(e2).dim() == 2);
    CHECK(e1.intersection(e2).dim() == 0);
    CHECK(e1 == e1);

    Subspace a = Subspace::from_span(2, 3, {{1, 1, 0}, {0, 1, 0}});
    CHECK(a.contains(Vec{1, 0, 0}));
}

TEST_CASE("subspace dimension identity") {
    std::mt19937 rng(2024);
    for (unsigned p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t n = 4 + rng() % 3;
            auto random_space = [&] {
                std::vector<Vec> vs;
                std::size_t k = rng() % 4;
                for (std::size_t i = 0; i < k; ++i) {
                    Vec v(n);
                    for (auto& c : v) c = Scalar(rng() % p);
                    vs.push_back(v);
                }
                return Subspace::from_span(p, n, vs);
            };
            Subspace a = random_space(), b = random_space();
            CHECK(a.dim() + b.dim() == a.sum(b).dim() + a.intersection(b).dim());
        }
    }
}

TEST_CASE("canonical form equality") {
    // same subspace from different spanning sets
    Subspace a = Subspace::from_span(3, 3, {{1, 2, 0}, {0, 1, 1}});
    Subspace b = Subspace::from_span(3, 3, {{1, 0, 1}, {0, 2, 2}});
    CHECK(a == b);
    CHECK(a.basis() == b.basis());
}

TEST_CASE("quotient representatives complete the inner basis") {
    Subspace whole = Subspace::full(2, 4);
    Subspace inner = Subspace::from_span(2, 4, {{1, 1, 0, 0}});
    auto reps = whole.quotient_representatives(inner);
    CHECK(reps.size() == 3);
    Subspace rebuilt = inner;
    for (auto& v : reps) rebuilt = rebuilt.sum(Subspace::from_span(2, 4, {v}));
    CHECK(rebuilt == whole);
}
