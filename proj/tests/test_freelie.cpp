#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "sl2gid/algebra.hpp"
#include "sl2gid/freelie.hpp"
#include "support.hpp"

using namespace sl2gid;
using namespace testing_support;

namespace {

int mobius(unsigned n)
{
    int m = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) {
                return 0;
            }
            m = -m;
        }
    }
    return n > 1 ? -m : m;
}

long long binom(unsigned n, unsigned k)
{
    long long r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// Number of Lyndon words with a letters of one kind and b of another.
long long witt2(unsigned a, unsigned b)
{
    const unsigned n = a + b, g = std::gcd(a, b);
    long long s = 0;
    for (unsigned d = 1; d <= g; ++d) {
        if (g % d == 0) {
            s += mobius(d) * binom(n / d, a / d);
        }
    }
    return s / n;
}

LiePolynomial random_lie(const Field &f, const std::vector<Var> &vars, std::mt19937_64 &rng, int depth)
{
    if (depth == 0 || rng() % 3 == 0) {
        return lie_scale(f, random_elem(f, rng), LiePolynomial::variable(vars[rng() % vars.size()]));
    }
    LiePolynomial p = lie_bracket(f, random_lie(f, vars, rng, depth - 1), random_lie(f, vars, rng, depth - 1));
    if (rng() % 2) {
        p = lie_add(f, p, random_lie(f, vars, rng, depth - 1), random_elem(f, rng));
    }
    return p;
}

} // namespace

TEST_CASE("Lyndon words")
{
    CHECK(is_lyndon(Word{y(1)}));
    CHECK(is_lyndon(Word{y(1), z(1)}));
    CHECK_FALSE(is_lyndon(Word{z(1), y(1)}));
    CHECK_FALSE(is_lyndon(Word{y(1), y(1)}));
    CHECK(is_lyndon(Word{y(1), y(1), z(1)}));
    CHECK(is_lyndon(Word{y(1), z(1), z(1)}));
    CHECK(bracketing(Word{y(1), y(1), z(1)}) == "[y1,[y1,z1]]");
    CHECK(y(2) < z(1));
    CHECK(z(3) < x(1));
}

TEST_CASE("Witt dimensions on two generators")
{
    const std::vector<long long> expected = {2, 1, 2, 3, 6, 9};
    for (unsigned n = 1; n <= 6; ++n) {
        long long total = 0, oracle = 0;
        for (unsigned a = 0; a <= n; ++a) {
            const auto basis = lyndon_basis(MultiDegree{{y(1), a}, {z(1), n - a}});
            total += static_cast<long long>(basis.size());
            oracle += (a == 0 || a == n) ? (n == 1 ? 1 : 0) : witt2(a, n - a);
            for (const auto &w : basis) {
                CHECK(is_lyndon(w));
            }
        }
        CHECK(total == expected[n - 1]);
        CHECK(total == oracle);
    }
}

TEST_CASE("multidegree counts match the Witt formula")
{
    for (unsigned a = 1; a <= 5; ++a) {
        for (unsigned b = 1; b <= 5; ++b) {
            CHECK(static_cast<long long>(lyndon_basis(MultiDegree{{y(1), a}, {z(1), b}}).size()) == witt2(a, b));
        }
    }
    // multilinear in n letters: (n-1)!
    CHECK(lyndon_basis(MultiDegree{{y(1), 1}, {y(2), 1}, {z(1), 1}, {z(2), 1}}).size() == 6);
}

TEST_CASE("antisymmetry and Jacobi normalize to zero")
{
    std::mt19937_64 rng(200);
    const Field f(5);
    const std::vector<Var> vars = {y(1), y(2), z(1)};
    for (int i = 0; i < 200; ++i) {
        const auto a = random_lie(f, vars, rng, 2), b = random_lie(f, vars, rng, 2), c = random_lie(f, vars, rng, 1);
        CHECK(lie_add(f, lie_bracket(f, a, b), lie_bracket(f, b, a)).is_zero());
        CHECK(lie_bracket(f, a, a).is_zero());
        LiePolynomial jac = lie_bracket(f, a, lie_bracket(f, b, c));
        jac = lie_add(f, jac, lie_bracket(f, b, lie_bracket(f, c, a)));
        jac = lie_add(f, jac, lie_bracket(f, c, lie_bracket(f, a, b)));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("associative round trip")
{
    std::mt19937_64 rng(4);
    const Field f(7);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_lie(f, {y(1), z(1), z(2)}, rng, 3);
        CHECK(LiePolynomial::from_assoc(f, p.to_assoc(f)) == p);
    }
    AssocPoly not_lie;
    not_lie[Word{y(1), y(2)}] = Field::one();
    CHECK_THROWS(LiePolynomial::from_assoc(f, not_lie));
}

TEST_CASE("evaluation is a homomorphism")
{
    std::mt19937_64 rng(31);
    const Field f(5);
    for (const auto &L : {algebras::sl2(f), algebras::gl2(f), algebras::span_e11_e12(f)}) {
        for (int i = 0; i < 60; ++i) {
            const std::vector<Var> vars = {y(1), y(2), z(1)};
            Assignment asg;
            for (const auto &v : vars) {
                asg[v] = random_vec(f, L.dim(), rng);
            }
            const auto a = random_lie(f, vars, rng, 2), b = random_lie(f, vars, rng, 2);
            const Elem s = random_elem(f, rng);
            CHECK(evaluate(L, lie_bracket(f, a, b), asg) == L.bracket(evaluate(L, a, asg), evaluate(L, b, asg)));
            CHECK(evaluate(L, lie_add(f, a, b, s), asg) ==
                  add(f, evaluate(L, a, asg), scale(f, s, evaluate(L, b, asg))));
        }
    }
    CHECK_THROWS_AS(evaluate(algebras::sl2(f), LiePolynomial::variable(y(9)), Assignment{}), MissingAssignment);
}

TEST_CASE("components split by multidegree")
{
    const Field f(5);
    const auto p = lie_add(f, lie_bracket(f, LiePolynomial::variable(y(1)), LiePolynomial::variable(z(1))),
                           LiePolynomial::variable(y(1)));
    const auto comps = p.components();
    REQUIRE(comps.size() == 2);
    CHECK(comps.count(MultiDegree{{y(1), 1}}) == 1);
    CHECK(comps.count(MultiDegree{{y(1), 1}, {z(1), 1}}) == 1);
    CHECK(MultiDegree{{y(1), 2}, {z(1), 1}}.parity() == 1);
    CHECK(MultiDegree{{y(1), 2}, {z(1), 1}}.to_string() == "(y1:2,z1:1)");
}
