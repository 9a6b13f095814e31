#include <random>

#include "doctest.h"
#include "oracle/naive.hpp"
#include "torind/error.hpp"
#include "torind/exactla.hpp"

using namespace torind;
using namespace torind::la;

namespace {

Matrix random_matrix(std::mt19937_64& rng, const PrimeField& f, std::size_t r, std::size_t c, int density) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (static_cast<int>(rng() % 10) < density) m.at(i, j) = static_cast<Scalar>(rng() % f.p());
    return m;
}

}  // namespace

TEST_CASE("field arithmetic") {
    PrimeField f(7);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.to_signed(6) == -1);
    CHECK(f.sign(3) == 6);
    CHECK_THROWS_AS(PrimeField(8), Error);
    CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_CASE("rank agrees with the naive elimination") {
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 32003u}) {
        PrimeField f(p);
        for (int t = 0; t < 60; ++t) {
            Matrix m = random_matrix(rng, f, 1 + rng() % 9, 1 + rng() % 9, 1 + static_cast<int>(rng() % 9));
            CHECK(rank(m) == oracle::rank(oracle::from_lib(m), p));
        }
    }
}

TEST_CASE("kernel, column space and solver") {
    std::mt19937_64 rng(5);
    PrimeField f;
    for (int t = 0; t < 40; ++t) {
        const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        Matrix m = random_matrix(rng, f, r, c, 4);
        Subspace k = kernel_basis(m);
        CHECK(k.dim() + rank(m) == c);
        CHECK((m * k.basis).is_zero());
        Subspace im = column_space(m);
        CHECK(im.dim() == rank(m));
        Solver s(im.basis);
        for (std::size_t j = 0; j < c; ++j) {
            auto coords = s.solve(m.column(j));
            REQUIRE(coords);
            CHECK(im.basis.apply(*coords) == m.column(j));
        }
        Matrix coords = s.solve_all(m);
        CHECK(im.basis * coords == m);
    }
}

TEST_CASE("solver rejects vectors outside the span") {
    PrimeField f;
    Matrix b(f, 2, 1);
    b.at(0, 0) = 1;
    Solver s(b);
    CHECK(s.contains({5, 0}));
    CHECK(!s.contains({0, 1}));
    Matrix outside(f, 2, 1);
    outside.at(1, 0) = 1;
    CHECK_THROWS_AS(s.solve_all(outside), Error);
}

TEST_CASE("quotient complement") {
    PrimeField f;
    Matrix b(f, 3, 1);
    b.at(0, 0) = 1;
    b.at(1, 0) = 2;
    Complement c = quotient_basis(3, column_space(b));
    CHECK(c.complement.dim() == 2);
    CHECK((c.projection * b).is_zero());
    CHECK(rank(hstack(b, c.complement.basis)) == 3);
}

TEST_CASE("homology of random complexes") {
    std::mt19937_64 rng(17);
    PrimeField f;
    for (int t = 0; t < 40; ++t) {
        // in: A -> B, out: B -> C with out * in = 0 by factoring through a kernel
        const std::size_t nb = 2 + rng() % 6;
        Matrix out = random_matrix(rng, f, 1 + rng() % 5, nb, 5);
        Subspace k = kernel_basis(out);
        Matrix coeff = random_matrix(rng, f, k.dim(), 1 + rng() % 4, 6);
        Matrix in = k.basis * coeff;
        Homology h = compute_homology(out, in);
        const std::size_t expected = oracle::homology(nb, oracle::from_lib(out), oracle::from_lib(in), f.p());
        CHECK(h.dim == expected);
        CHECK(homology_dim(out, in) == expected);
        CHECK((out * h.representatives).is_zero());
        for (std::size_t c = 0; c < in.cols(); ++c) CHECK(h.is_boundary(in.column(c)));
        for (std::size_t c = 0; c < h.dim; ++c) {
            CHECK(!h.is_boundary(h.representatives.column(c)));
            Vec cls = h.class_of(h.representatives.column(c));
            for (std::size_t i = 0; i < h.dim; ++i) CHECK(cls[i] == (i == c ? 1u : 0u));
        }
    }
}

TEST_CASE("echelon form is deterministic") {
    PrimeField f;
    Matrix m(f, 2, 3);
    m.at(0, 1) = 2;
    m.at(1, 1) = 4;
    m.at(1, 2) = 1;
    Echelon e = row_reduce(m);
    CHECK(e.pivot_cols == std::vector<std::size_t>{1, 2});
    CHECK(e.reduced.at(0, 1) == 1);
    CHECK(row_reduce(m).reduced == e.reduced);
}
