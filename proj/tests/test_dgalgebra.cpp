#include <random>

#include "doctest.h"
#include "oracle/naive.hpp"
#include "support.hpp"
#include "torind/dgalgebra.hpp"
#include "torind/error.hpp"

using namespace torind;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Malformed;
}

// basis {1, e, f, ef} with |e| = 1, |f| = 2 and zero differential
RawDGAlgebra exterior_times_square_zero() {
    RawDGAlgebra raw;
    raw.basis = {{"1", 0}, {"e", 1}, {"f", 2}, {"ef", 3}};
    for (std::size_t i = 0; i < 4; ++i) {
        raw.mult.push_back({0, i, {{i, 1}}});
        if (i) raw.mult.push_back({i, 0, {{i, 1}}});
    }
    raw.mult.push_back({1, 2, {{3, 1}}});
    raw.mult.push_back({2, 1, {{3, 1}}});
    return raw;
}

// Brute-force homology dims by degree straight from the tables.
std::map<int, std::size_t> naive_homology(const DGAlgebra& a) {
    std::map<int, std::vector<std::size_t>> by;
    for (std::size_t i = 0; i < a.dim(); ++i) by[a.degree(i)].push_back(i);
    auto block = [&](int to, int from) {
        oracle::Mat m(by[to].size(), by[from].size());
        for (std::size_t r = 0; r < by[to].size(); ++r)
            for (std::size_t c = 0; c < by[from].size(); ++c) m.at(r, c) = a.diff(by[to][r], by[from][c]);
        return m;
    };
    std::map<int, std::size_t> out;
    for (int d = 0; d <= a.top_degree(); ++d) {
        const std::size_t h = oracle::homology(by[d].size(), block(d - 1, d), block(d, d + 1), a.field().p());
        if (h) out[d] = h;
    }
    return out;
}

}  // namespace

TEST_CASE("exterior algebra on one generator") {
    DGAlgebra a = exterior_algebra(PrimeField(), {1});
    CHECK(a.dim() == 2);
    CHECK(augmentation_power(a, 0).dim() == 2);
    CHECK(augmentation_power(a, 1).dim() == 1);
    CHECK(augmentation_power(a, 2).dim() == 0);
    CHECK(*nonzero_product_witness(a, 1) == std::vector<std::size_t>{1});
    CHECK(!nonzero_product_witness(a, 2));
    HomologyAlgebra h = homology_algebra(a);
    CHECK(h.dims == std::vector<std::size_t>{1, 1});
    CHECK(h.amplitude == 1);
    CHECK(h.max_ideal.size() == 1);
}

TEST_CASE("exterior tensor square-zero algebra") {
    DGAlgebra a = validate_dg_algebra(exterior_times_square_zero());
    HomologyAlgebra h = homology_algebra(a);
    CHECK(h.dims == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(h.amplitude == 3);
    CHECK(augmentation_power(a, 2).dim() == 1);
    CHECK(augmentation_power(a, 3).dim() == 0);
    CHECK(validate_dg_algebra(to_raw(a)).dim() == 4);
}

TEST_CASE("axiom violations are rejected") {
    SUBCASE("graded commutativity") {
        RawDGAlgebra raw = exterior_times_square_zero();
        raw.mult.back().terms = {{3, 2}};
        CHECK(kind_of([&] { validate_dg_algebra(raw); }) == ErrorKind::AxiomViolation);
    }
    SUBCASE("odd squares") {
        RawDGAlgebra raw;
        raw.basis = {{"1", 0}, {"e", 1}, {"u", 2}};
        raw.mult = {{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}, {1, 0, {{1, 1}}}, {0, 2, {{2, 1}}}, {2, 0, {{2, 1}}},
                    {1, 1, {{2, 1}}}};
        CHECK(kind_of([&] { validate_dg_algebra(raw); }) == ErrorKind::AxiomViolation);
    }
    SUBCASE("odd squares vanish in characteristic 2 too") {
        RawDGAlgebra raw;
        raw.p = 2;
        raw.basis = {{"1", 0}, {"e", 1}, {"u", 2}};
        raw.mult = {{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}, {1, 0, {{1, 1}}}, {0, 2, {{2, 1}}}, {2, 0, {{2, 1}}},
                    {1, 1, {{2, 1}}}};
        CHECK(kind_of([&] { validate_dg_algebra(raw); }) == ErrorKind::AxiomViolation);
    }
    SUBCASE("the unit is a boundary") {
        RawDGAlgebra raw;
        raw.basis = {{"1", 0}, {"v", 1}};
        raw.mult = {{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}, {1, 0, {{1, 1}}}};
        raw.diff = {{1, {{0, 1}}}};
        CHECK(kind_of([&] { validate_dg_algebra(raw); }) == ErrorKind::HomologyZero);
    }
    SUBCASE("differential squares to zero") {
        RawDGAlgebra raw;
        raw.basis = {{"1", 0}, {"a", 2}, {"b", 3}, {"c", 4}};
        for (std::size_t i = 0; i < 4; ++i) {
            raw.mult.push_back({0, i, {{i, 1}}});
            if (i) raw.mult.push_back({i, 0, {{i, 1}}});
        }
        raw.diff = {{2, {{1, 1}}}, {3, {{2, 1}}}};
        CHECK(kind_of([&] { validate_dg_algebra(raw); }) == ErrorKind::AxiomViolation);
    }
    SUBCASE("Leibniz rule") {
        // d(ef) = f while d e = d f = 0
        RawDGAlgebra raw = exterior_times_square_zero();
        raw.diff = {{3, {{2, 1}}}};
        CHECK(kind_of([&] { validate_dg_algebra(raw); }) == ErrorKind::AxiomViolation);
    }
    SUBCASE("degree-0 part is the field") {
        RawDGAlgebra raw;
        raw.basis = {{"1", 0}, {"t", 0}};
        raw.mult = {{0, 0, {{0, 1}}}, {0, 1, {{1, 1}}}, {1, 0, {{1, 1}}}};
        CHECK(kind_of([&] { validate_dg_algebra(raw); }) == ErrorKind::NotLocal);
    }
    SUBCASE("negative degrees and bad indices") {
        RawDGAlgebra raw;
        raw.basis = {{"1", 0}, {"e", -1}};
        CHECK_THROWS_AS(validate_dg_algebra(raw), Error);
        RawDGAlgebra idx = exterior_times_square_zero();
        idx.mult.push_back({7, 0, {{0, 1}}});
        CHECK_THROWS_AS(validate_dg_algebra(idx), Error);
    }
}

TEST_CASE("homology algebra of random algebras agrees with brute force") {
    std::mt19937_64 rng(23);
    PrimeField f;
    for (int t = 0; t < 60; ++t) {
        AlgebraPtr a = support::random_algebra(rng, f);
        CHECK(validate_dg_algebra(to_raw(*a)).dim() == a->dim());
        HomologyAlgebra h = homology_algebra(*a);
        auto naive = naive_homology(*a);
        for (int d = 0; d <= a->top_degree(); ++d) {
            const std::size_t got = d < static_cast<int>(h.dims.size()) ? h.dims[d] : 0;
            CHECK(got == (naive.count(d) ? naive[d] : 0));
        }
        CHECK(h.dims[0] == 1);
        CHECK(h.sup == naive.rbegin()->first);
        CHECK(h.amplitude == h.sup - h.inf);
        // products of representatives are again cycles
        for (std::size_t i = 0; i < h.representatives.size(); ++i)
            for (std::size_t j = 0; j < h.representatives.size(); ++j) {
                Vec prod = a->product(h.representatives[i], h.representatives[j]);
                CHECK(a->boundary(prod) == Vec(a->dim(), 0));
            }
        // the augmentation filtration is decreasing and eventually zero
        std::size_t prev = a->dim();
        for (std::size_t n = 0; n <= static_cast<std::size_t>(a->top_degree()) + 1; ++n) {
            const std::size_t d = augmentation_power(*a, n).dim();
            CHECK(d <= prev);
            prev = d;
            CHECK(static_cast<bool>(nonzero_product_witness(*a, n + 1)) == (augmentation_power(*a, n + 1).dim() > 0));
        }
        CHECK(prev == 0);
    }
}

TEST_CASE("tensor algebras and square-zero extensions") {
    PrimeField f;
    DGAlgebra e1 = exterior_algebra(f, {1});
    DGAlgebra e3 = exterior_algebra(f, {3});
    DGAlgebra t = tensor_algebras(e1, e3);
    CHECK(t.dim() == 4);
    CHECK(homology_algebra(t).amplitude == 4);
    CHECK(augmentation_power(t, 2).dim() == 1);
    Matrix d(f, 2, 2);
    d.at(0, 1) = 1;  // d v2 = v1 with |v1| = 1, |v2| = 2: acyclic pair
    DGAlgebra sq = square_zero_extension(f, {1, 2}, d);
    HomologyAlgebra h = homology_algebra(sq);
    CHECK(h.amplitude == 0);
    CHECK(h.max_ideal.empty());
}

TEST_CASE("soft truncation of an algebra") {
    PrimeField f;
    Matrix d(f, 2, 2);
    d.at(0, 1) = 1;
    DGAlgebra sq = square_zero_extension(f, {1, 2}, d);
    DGAlgebra tr = soft_truncate_algebra(sq, 0);
    CHECK(tr.dim() == 1);
    Matrix proj = truncation_projection(sq, tr, 0);
    CHECK(proj.rows() == 1);
    CHECK(proj.cols() == 3);
    DGAlgebra e = exterior_algebra(f, {1});
    CHECK(kind_of([&] { soft_truncate_algebra(e, 0); }) == ErrorKind::TruncationBelowHomology);
    CHECK(soft_truncate_algebra(e, 1).dim() == 2);
}
