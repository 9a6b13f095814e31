#include "doctest.h"

#include "properties.hpp"
#include "torind/error.hpp"
#include "torind/theorem.hpp"

using namespace torind;

namespace {

AlgebraPtr lambda_e() { return std::make_shared<const DGAlgebra>(exterior_algebra(PrimeField(), {1})); }

RingElement var(const RingPtr& r, std::size_t v) {
    Exponent e(r->num_vars(), 0);
    e[v] = 1;
    return to_ring_element(*r, Polynomial{{{1, e}}});
}

}  // namespace

TEST_CASE("syzygy of the residue field over an exterior algebra") {
    auto a = lambda_e();
    SyzygyPackage pkg = syzygy_construction(residue_module(a), 0);
    CHECK(pkg.checks.all());
    CHECK(pkg.syzygy.dim() == 1);
    CHECK(pkg.syzygy.degree(0) == 1);
    BoundsReport b = verify_syzygy_bounds(pkg);
    CHECK(b.pass);
    CHECK(*b.profile.inf() == 1);
    CHECK(*b.profile.amp() == 0);
}

TEST_CASE("semifree input has zero syzygy") {
    auto a = lambda_e();
    SyzygyPackage pkg = syzygy_construction(algebra_as_module(a), 1);
    CHECK(pkg.checks.all());
    CHECK(pkg.syzygy.dim() == 0);
    CHECK(verify_syzygy_bounds(pkg).vacuous);
    CHECK_THROWS_AS(syzygy_construction(algebra_as_module(a), 0), Error);
}

TEST_CASE("syzygy against Y") {
    auto a = lambda_e();
    auto k = residue_module(a);
    SyzygyPackage pkg = syzygy_construction(k, 0);
    auto y = direct_sum(algebra_as_module(a), algebra_as_module(a));
    BoundsReport b = verify_syzygy_independence(pkg, k, y, 8);
    CHECK(b.pass);
    BatchReport batch = batch_syzygy_independence({k}, {0}, 8);
    CHECK(batch.pass);
}

TEST_CASE("annihilation over an exterior algebra") {
    auto a = lambda_e();
    auto k = residue_module(a);
    AnnihilationReport rep = annihilation_check({k}, {0}, 2, 8);
    CHECK(rep.pass);
    CHECK(rep.power == 1);
    CHECK_THROWS_AS(annihilation_check({k}, {0}, 1, 8), Error);
}

TEST_CASE("dg theorem on the residue field") {
    auto a = lambda_e();
    TheoremReport rep = verify_dg_theorem({residue_module(a)}, 8);
    CHECK(rep.pass);
    CHECK(rep.verdict == "1 <= s = 1");
    CHECK(rep.truncated_independence->pass);
    try {
        verify_dg_theorem({algebra_as_module(a)}, 8);
        FAIL("expected PerfectInput");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PerfectInput);
    }
    try {
        verify_dg_theorem({residue_module(a), residue_module(a)}, 8);
        FAIL("expected PreconditionUnverified");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PreconditionUnverified);
    }
}

TEST_CASE("module theorem, artinian pair") {
    auto r = make_ring(PrimeField(), 2, {{2, 0}, {0, 2}}, {"x", "y"});
    std::vector<FGModule> mods{cyclic_module(r, {var(r, 0)}), cyclic_module(r, {var(r, 1)})};
    TheoremReport rep = verify_module_theorem(r, mods, 10);
    CHECK(rep.pass);
    CHECK(rep.verdict == "2 <= ecodepth 2");
    CHECK(rep.reductions.empty());
}

TEST_CASE("module theorem, one reduction") {
    auto r = make_ring(PrimeField(), 3, {{0, 2, 0}, {0, 0, 2}}, {"x", "y", "z"});
    auto core = split_free_variables(r).core;
    std::vector<FGModule> mods{cyclic_module(core, {var(core, 0)}), cyclic_module(core, {var(core, 1)})};
    TheoremReport rep = verify_module_theorem(r, mods, 10);
    CHECK(rep.pass);
    REQUIRE(rep.reductions.size() == 1);
    CHECK(rep.reductions[0].depth_before == 1);
    CHECK(rep.reductions[0].depth_after == 0);
    CHECK(rep.reductions[0].ecodepth_after == 2);
}

TEST_CASE("search") {
    auto full = make_ring(PrimeField(), 2, {{2, 0}, {0, 2}});
    SearchReport found = search_independent_families(full, 4, 2, 8, 1, 200);
    CHECK(!found.found.empty());
    CHECK(found.power_bound_consistent);
    auto small = make_ring(PrimeField(), 2, {{2, 0}, {1, 1}, {0, 2}});
    SearchReport none = search_independent_families(small, 4, 2, 8, 1, 200);
    CHECK(none.found.empty());
}

TEST_CASE("randomized syzygy packages") {
    properties::SuiteResult res = properties::syzygy_suite(2000, 50);
    for (const auto& v : res.violations) MESSAGE(v);
    CHECK(res.ok());
    CHECK(res.instances == 50);
    CHECK(res.skipped < 25);
}
