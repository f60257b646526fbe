#include <catch_amalgamated.hpp>

#include <random>

#include "sl2gid/linalg.hpp"
#include "support.hpp"

using namespace sl2gid;
using namespace testing_support;

namespace {

Subspace random_subspace(const Field &f, std::size_t n, std::size_t gens, std::mt19937_64 &rng)
{
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < gens; ++i) {
        vs.push_back(random_vec(f, n, rng));
    }
    return Subspace::span(f, n, vs);
}

} // namespace

TEST_CASE("rank plus nullity equals column count")
{
    std::mt19937_64 rng(200);
    const Field f(5);
    for (int i = 0; i < 200; ++i) {
        const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        Matrix m = random_matrix(f, r, c, rng);
        // sprinkle dependent rows so low ranks occur
        if (r > 2 && rng() % 2) {
            for (std::size_t j = 0; j < c; ++j) {
                m(r - 1, j) = f.add(m(0, j), m(1, j));
            }
        }
        const auto res = rref_kernel(f, m);
        CHECK(res.rank + res.kernel.dim() == c);
        for (const auto &k : res.kernel.basis()) {
            CHECK(is_zero(apply(f, m, k)));
        }
    }
}

TEST_CASE("kernel of a known matrix")
{
    const Field f(7);
    const Matrix m = Matrix::from_rows(3, {{f.from_int(1), f.from_int(2), f.from_int(3)},
                                           {f.from_int(2), f.from_int(4), f.from_int(6)}});
    const auto k = kernel(f, m);
    CHECK(k.dim() == 2);
    CHECK(rank(f, m) == 1);
    CHECK(k.contains(f, Vec{f.from_int(-2), f.from_int(1), Field::zero()}));
}

TEST_CASE("span is canonical")
{
    std::mt19937_64 rng(3);
    const Field f(7);
    for (int i = 0; i < 100; ++i) {
        const Subspace s = random_subspace(f, 5, 3, rng);
        std::vector<Vec> mixed;
        for (int j = 0; j < 4; ++j) {
            Vec v(5);
            for (const auto &b : s.basis()) {
                axpy(f, random_elem(f, rng), b, v);
            }
            mixed.push_back(v);
        }
        mixed.insert(mixed.end(), s.basis().begin(), s.basis().end());
        std::shuffle(mixed.begin(), mixed.end(), rng);
        CHECK(Subspace::span(f, 5, mixed) == s);
    }
}

TEST_CASE("modular dimension law")
{
    std::mt19937_64 rng(17);
    for (const auto q : {5U, 7U, 25U}) {
        const Field f = Field::of_order(q);
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = 2 + rng() % 5;
            const Subspace a = random_subspace(f, n, rng() % (n + 1), rng);
            const Subspace b = random_subspace(f, n, rng() % (n + 1), rng);
            const Subspace s = subspace_sum(f, a, b), x = subspace_intersect(f, a, b);
            CHECK(s.dim() + x.dim() == a.dim() + b.dim());
            CHECK(s.contains(f, a));
            CHECK(s.contains(f, b));
            CHECK(a.contains(f, x));
            CHECK(b.contains(f, x));
        }
    }
}

TEST_CASE("mismatched ambient dimensions are rejected")
{
    const Field f(5);
    CHECK_THROWS_AS(subspace_sum(f, Subspace(2), Subspace(3)), AmbientMismatch);
    CHECK_THROWS_AS(apply(f, Matrix(2, 2), Vec(3)), AmbientMismatch);
    CHECK_THROWS_AS(multiply(f, Matrix(2, 3), Matrix(2, 3)), AmbientMismatch);
}

TEST_CASE("eigen decomposition")
{
    const Field f(5);
    // diag(2, -2, 0), the adjoint of h on (e, f, h)
    Matrix m(3, 3);
    m(0, 0) = f.from_int(2);
    m(1, 1) = f.from_int(-2);
    const auto eb = eigen_decomposition(f, m);
    CHECK(eb.diagonalizable);
    CHECK(eb.pairs.size() == 3);
    REQUIRE(eb.find(f.from_int(2)) != nullptr);
    CHECK(eb.find(f.from_int(2))->eigenspace.contains(f, unit_vector(3, 0)));

    // rotation-like block with no eigenvalues in GF(5): t^2 + 2 irreducible
    Matrix r(2, 2);
    r(0, 1) = f.from_int(-2);
    r(1, 0) = Field::one();
    CHECK_FALSE(eigen_decomposition(f, r).diagonalizable);

    // Jordan block
    Matrix j(2, 2);
    j(0, 1) = Field::one();
    const auto ej = eigen_decomposition(f, j);
    CHECK_FALSE(ej.diagonalizable);
    CHECK(ej.pairs.size() == 1);
}

TEST_CASE("matrix product is associative and identity is neutral")
{
    std::mt19937_64 rng(9);
    const Field f(7, 2);
    for (int i = 0; i < 50; ++i) {
        const Matrix a = random_matrix(f, 3, 4, rng), b = random_matrix(f, 4, 2, rng), c = random_matrix(f, 2, 3, rng);
        CHECK(multiply(f, multiply(f, a, b), c) == multiply(f, a, multiply(f, b, c)));
        CHECK(multiply(f, Matrix::identity(3), a) == a);
    }
}
