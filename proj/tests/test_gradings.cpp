#include <catch_amalgamated.hpp>

#include <random>

#include "sl2gid/gradings.hpp"
#include "support.hpp"

using namespace sl2gid;
using namespace testing_support;

// Counts from PGL2(q): order q(q^2 - 1), q^2 involutions, split / non-split
// involution classes of sizes q(q+1)/2 and q(q-1)/2.
TEST_CASE("automorphism groups have the order of PGL2")
{
    for (const auto q : {5U, 7U}) {
        const Field f(q);
        CHECK(m2_automorphisms(f).size() == q * (q * q - 1));
        CHECK(sl2_automorphisms(f).size() == q * (q * q - 1));
    }
}

TEST_CASE("automorphisms preserve the bracket")
{
    std::mt19937_64 rng(6);
    const Field f(5);
    const auto L = algebras::sl2(f);
    const auto autos = sl2_automorphisms(f);
    for (int i = 0; i < 200; ++i) {
        const auto &phi = autos[rng() % autos.size()];
        const Vec a = random_vec(f, 3, rng), b = random_vec(f, 3, rng);
        CHECK(apply(f, phi, L.bracket(a, b)) == L.bracket(apply(f, phi, a), apply(f, phi, b)));
    }
    CHECK(rank(f, autos.front()) == 3);
}

TEST_CASE("grading counts and classes")
{
    for (const auto q : {5U, 7U}) {
        const Field f(q);
        for (const auto t : {GradingTarget::m2_assoc, GradingTarget::sl2_lie}) {
            INFO(to_string(t) << " q=" << q);
            const auto autos = automorphisms(t, f);
            const auto gs = enumerate_z2_gradings(t, f, &autos);
            CHECK(gs.size() == q * q + 1);
            CHECK(gs.front().odd.is_zero());
            for (const auto &g : gs) {
                CHECK(is_lie_grading(f, g));
                CHECK(validate(graded_algebra(f, g)).ok());
            }
            const auto classes = classify_up_to_iso(f, gs, autos);
            REQUIRE(classes.size() == 3);
            CHECK(classes[0].members.size() == 1);
            CHECK(classes[1].members.size() == q * (q + 1) / 2);
            CHECK(classes[2].members.size() == q * (q - 1) / 2);
            CHECK(classes[1].cert.qpower);
            CHECK_FALSE(classes[2].cert.qpower);
            CHECK(classes[1].cert.dim_even == classes[2].cert.dim_even);
            // witnesses really carry the representative onto each member
            for (const auto &k : classes) {
                const auto &rep = gs[k.members.front()];
                for (std::size_t i = 0; i < k.members.size(); ++i) {
                    CHECK(detail::image(f, k.witnesses[i], rep.even) == gs[k.members[i]].even);
                }
            }
        }
    }
}

TEST_CASE("the three reference gradings of M2")
{
    const Field f(5);
    const auto autos = m2_automorphisms(f);
    const auto gs = enumerate_z2_gradings(GradingTarget::m2_assoc, f, &autos);
    const auto classes = classify_up_to_iso(f, gs, autos);
    const auto refs = m2_reference_gradings(f, find_nonsquare(f));
    std::set<std::size_t> hit;
    for (const auto &r : refs) {
        CHECK(is_associative_grading(f, r));
        const auto idx = find_grading(gs, r.even, r.odd);
        REQUIRE(idx);
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const auto &m = classes[c].members;
            if (std::find(m.begin(), m.end(), *idx) != m.end()) {
                hit.insert(c);
            }
        }
    }
    CHECK(hit.size() == 3);
}

TEST_CASE("associative iff the identity is even")
{
    for (const auto q : {5U, 7U}) {
        const Field f(q);
        const auto lie = gl2_lie_gradings(f, enumerate_z2_gradings(GradingTarget::sl2_lie, f));
        CHECK(lie.size() == 2 * (q * q + 1));
        std::size_t assoc = 0;
        for (const auto &g : lie) {
            const auto r = unit_component_check(f, g);
            CHECK(r.agrees());
            assoc += r.associative ? 1 : 0;
        }
        CHECK(assoc == q * q + 1);
    }
}

TEST_CASE("natural characterization")
{
    const Field f(5);
    const auto autos = sl2_automorphisms(f);
    const auto gs = enumerate_z2_gradings(GradingTarget::sl2_lie, f, &autos);
    const auto natural = sl2_natural_grading(f);
    std::size_t eligible = 0;
    for (const auto &g : gs) {
        const auto nc = natural_characterization(f, g, autos);
        if (!nc.hypotheses()) {
            CHECK_FALSE(nc.failed().empty());
            continue;
        }
        ++eligible;
        REQUIRE(nc.isomorphism);
        CHECK(detail::image(f, *nc.isomorphism, g.even) == natural.even);
        CHECK(detail::image(f, *nc.isomorphism, g.odd) == natural.odd);
    }
    CHECK(eligible == 15);
}

TEST_CASE("u = e12 + b e21 separates [h, u] from [h, u^q] exactly for non-squares")
{
    for (const auto q : {5U, 7U}) {
        const Field f(q);
        const auto r = remark_boboc(f);
        CHECK_FALSE(r.b_square);
        CHECK(r.differ());
        for (std::uint32_t i = 1; i < q; ++i) {
            const Elem b = f.element(i);
            if (f.is_square(b)) {
                CHECK_FALSE(remark_boboc(f, b).differ());
            }
        }
    }
}

TEST_CASE("gradings need a prime field")
{
    CHECK_THROWS_AS(enumerate_z2_gradings(GradingTarget::m2_assoc, Field::of_order(25)), UnsupportedField);
}
