#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "sl2gid/field.hpp"
#include "support.hpp"

using namespace sl2gid;
using testing_support::random_elem;

namespace {

// Schoolbook product of coefficient lists reduced by a monic modulus.
std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b,
                                       const std::vector<std::uint32_t> &mod, std::uint32_t p)
{
    const std::size_t k = mod.size() - 1;
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
        }
    }
    for (std::size_t d = 2 * k - 1; d >= k; --d) {
        const std::uint64_t c = prod[d];
        for (std::size_t i = 0; i <= k; ++i) {
            prod[d - k + i] = (prod[d - k + i] + (p - c) * mod[i]) % p;
        }
    }
    return {prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(k)};
}

} // namespace

TEST_CASE("field parameters are validated")
{
    CHECK_THROWS_AS(Field(2), InvalidField);
    CHECK_THROWS_AS(Field(3), InvalidField);
    CHECK_THROWS_AS(Field(9), InvalidField);
    CHECK_THROWS_AS(Field::of_order(6), InvalidField);
    CHECK_THROWS_AS(Field::of_order(1), InvalidField);
    CHECK_THROWS_AS(Field(5, 2, {1, 0, 1}), InvalidField); // t^2 + 1 = (t - 2)(t + 2) mod 5
    CHECK_THROWS_AS(Field(5, 2, {2, 1}), InvalidField);
    CHECK_NOTHROW(Field(5, 2, {2, 0, 1}));
    CHECK(Field::of_order(25).k() == 2);
    CHECK(Field::of_order(343).p() == 7);
}

TEST_CASE("prime field arithmetic")
{
    const Field f(7);
    CHECK(f.q() == 7);
    CHECK(f.from_int(-1) == f.element(6));
    CHECK(f.from_int(15) == f.element(1));
    CHECK(f.mul(f.element(3), f.element(5)) == f.element(1));
    CHECK(f.inv(f.element(3)) == f.element(5));
    CHECK_THROWS_AS(f.inv(Field::zero()), DivisionByZero);
    CHECK(f.to_string(f.element(4)) == "4");
}

TEST_CASE("default modulus is the least irreducible polynomial")
{
    const Field f(5, 2);
    // t^2 + 2 is the first monic irreducible quadratic in code order
    CHECK(f.modulus() == std::vector<std::uint32_t>{2, 0, 1});
    const Elem t = f.from_coeffs(std::vector<std::uint32_t>{0, 1});
    CHECK(f.mul(t, t) == f.from_int(-2));
    CHECK(f.to_string(f.add(t, Field::one())) == "t+1");
}

TEST_CASE("extension multiplication agrees with schoolbook reduction")
{
    std::mt19937_64 rng(11);
    for (const auto &[p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
        const Field f(p, k);
        for (int i = 0; i < 300; ++i) {
            const Elem a = random_elem(f, rng), b = random_elem(f, rng);
            CHECK(f.coeffs(f.mul(a, b)) == poly_mulmod(f.coeffs(a), f.coeffs(b), f.modulus(), p));
        }
    }
}

TEST_CASE("field axioms on random triples")
{
    std::mt19937_64 rng(5);
    for (const auto q : {5U, 7U, 25U, 49U, 125U}) {
        const Field f = Field::of_order(q);
        for (int i = 0; i < 500; ++i) {
            const Elem a = random_elem(f, rng), b = random_elem(f, rng), c = random_elem(f, rng);
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.add(a, f.neg(a)) == Field::zero());
            CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
            if (!a.is_zero()) {
                CHECK(f.mul(a, f.inv(a)) == Field::one());
                CHECK(f.pow(a, q - 1) == Field::one());
            }
            CHECK(f.pow(a, q) == a);
        }
    }
}

TEST_CASE("multiplicative group is cyclic and half of it is square")
{
    for (const auto q : {5U, 7U, 25U}) {
        const Field f = Field::of_order(q);
        std::size_t squares = 0, max_order = 0;
        for (std::uint32_t i = 1; i < q; ++i) {
            const Elem a = f.element(i);
            squares += f.is_square(a) ? 1 : 0;
            std::size_t ord = 1;
            for (Elem x = a; x != Field::one(); x = f.mul(x, a)) {
                ++ord;
            }
            max_order = std::max(max_order, ord);
        }
        CHECK(squares == (q - 1) / 2);
        CHECK(max_order == q - 1);
    }
}

TEST_CASE("least non-square")
{
    CHECK(find_nonsquare(Field(5)) == Field(5).element(2));
    CHECK(find_nonsquare(Field(7)) == Field(7).element(3));
    const Field f = Field::of_order(25);
    CHECK_FALSE(f.is_square(find_nonsquare(f)));
}

TEST_CASE("element codes round-trip through coefficients")
{
    const Field f(7, 3);
    std::set<std::uint32_t> seen;
    for (std::uint32_t i = 0; i < f.q(); ++i) {
        const Elem a = f.element(i);
        CHECK(f.from_coeffs(f.coeffs(a)) == a);
        seen.insert(a.v);
    }
    CHECK(seen.size() == f.q());
}
