#include <catch_amalgamated.hpp>

#include <random>

#include "sl2gid/structure.hpp"
#include "support.hpp"

using namespace sl2gid;
using namespace testing_support;

namespace {

Subspace span_of(const GradedLieAlgebra &L, std::initializer_list<std::size_t> idx)
{
    std::vector<Vec> vs;
    for (auto i : idx) {
        vs.push_back(L.basis_vector(i));
    }
    return Subspace::span(L.field(), L.dim(), vs);
}

} // namespace

TEST_CASE("sl2 is graded-simple with trivial radical and center")
{
    for (const auto q : {5U, 7U}) {
        const Field f(q);
        const auto L = algebras::sl2(f);
        const auto r = structure_report(L);
        REQUIRE(r.radical);
        CHECK(r.radical->is_zero());
        CHECK(r.center.is_zero());
        CHECK(r.derived_algebra.dim() == 3);
        CHECK(r.graded_simple.value_or(false));
        CHECK(r.monolithic.value_or(false));
        CHECK_FALSE(r.solvable);
        CHECK(subspace_intersect(f, r.derived_algebra, r.center).is_zero());
    }
}

TEST_CASE("span of e11 and e12")
{
    const Field f(5);
    const auto L = algebras::span_e11_e12(f);
    const auto r = structure_report(L);
    REQUIRE(r.monolith);
    CHECK(*r.monolith == span_of(L, {1}));
    REQUIRE(r.nilradical);
    CHECK(*r.nilradical == r.derived_algebra);
    CHECK(r.metabelian);
    CHECK(r.solvable);
    CHECK_FALSE(r.nilpotent);
    CHECK(r.monolithic.value_or(false));
    CHECK_FALSE(r.graded_simple.value_or(true));
    CHECK(subspace_intersect(f, r.derived_algebra, r.center).is_zero());
}

TEST_CASE("Heisenberg algebra has a nilpotent non-abelian subalgebra")
{
    const Field f(5);
    const auto H = algebras::heisenberg(f);
    const auto p = a_property_probe(H);
    CHECK(p.exhaustive);
    CHECK(p.violation_found);
    CHECK(is_nilpotent(H, p.subalgebra));
    CHECK_FALSE(is_abelian(H, p.subalgebra));
    const auto r = structure_report(H);
    CHECK(r.nilpotent);
    CHECK(r.center == span_of(H, {2}));
    CHECK_FALSE(subspace_intersect(f, r.derived_algebra, r.center).is_zero());
}

TEST_CASE("probe finds nothing in sl2 and span_e11_e12")
{
    const Field f(5);
    CHECK_FALSE(a_property_probe(algebras::sl2(f)).violation_found);
    CHECK_FALSE(a_property_probe(algebras::span_e11_e12(f)).violation_found);
}

TEST_CASE("ideal and subalgebra generation")
{
    const Field f(5);
    const auto L = algebras::sl2(f);
    // any nonzero element generates all of sl2 as an ideal
    CHECK(generated_ideal(L, {L.basis_vector(1)}, true).dim() == 3);
    CHECK(generated_subalgebra(L, {L.basis_vector(1)}).dim() == 1);
    CHECK(generated_subalgebra(L, {L.basis_vector(1), L.basis_vector(2)}).dim() == 3);
    const auto G = algebras::gl2(f);
    const Vec one = {Field::one(), Elem{}, Elem{}, Field::one()};
    CHECK(generated_ideal(G, {one}, true).dim() == 1);
    CHECK(center(G) == Subspace::span(f, 4, {one}));
}

TEST_CASE("generated ideals are ideals; series are decreasing")
{
    std::mt19937_64 rng(8);
    const Field f(7);
    const std::vector<GradedLieAlgebra> algs = {algebras::sl2(f), algebras::gl2(f), algebras::span_e11_e12(f),
                                                algebras::heisenberg(f)};
    for (const auto &L : algs) {
        for (int i = 0; i < 25; ++i) {
            const Vec v = random_vec(f, L.dim(), rng);
            const Subspace I = generated_ideal(L, {v}, false);
            CHECK(is_ideal(L, I));
            CHECK(I.contains(f, v));
            const Subspace Ig = generated_ideal(L, {v}, true);
            CHECK(is_ideal(L, Ig));
            CHECK(is_graded_subspace(L, Ig));
            CHECK(Ig.contains(f, I));
            const Subspace S = generated_subalgebra(L, {v, random_vec(f, L.dim(), rng)});
            CHECK(is_subalgebra(L, S));
            const auto ds = derived_series(L, S);
            for (std::size_t k = 1; k < ds.size(); ++k) {
                CHECK(ds[k - 1].contains(f, ds[k]));
            }
            const Subspace C = centralizer(L, S);
            CHECK(bracket_span(L, C, S).is_zero());
        }
    }
}

TEST_CASE("root decomposition of sl2 along h")
{
    const Field f(5);
    const auto L = algebras::sl2(f);
    const auto r = root_decomposition(L, L.basis_vector(0));
    CHECK(r.split_ok);
    CHECK_FALSE(r.zero_space_meets_odd);
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].brackets == span_of(L, {0}));
    CHECK(r.pairs[0].plus_subalgebra);
    CHECK(r.pairs[0].minus_subalgebra);
    CHECK(r.pairs[0].graded_ideal);
    CHECK(r.bracket_sum_is_even_part);
    CHECK_THROWS_AS(root_decomposition(L, L.basis_vector(1)), NotHomogeneous);
}

TEST_CASE("nilpotent adjoint action is not diagonalizable")
{
    const Field f(5);
    const auto L = algebras::heisenberg(f);
    CHECK_THROWS_AS(root_decomposition(L, L.basis_vector(0)), NotDiagonalizable);
}
