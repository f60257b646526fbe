#ifndef SL2GID_TESTS_SUPPORT_HPP
#define SL2GID_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "sl2gid/field.hpp"
#include "sl2gid/linalg.hpp"

namespace testing_support {

using sl2gid::Elem;
using sl2gid::Field;
using sl2gid::Matrix;
using sl2gid::Vec;

inline Elem random_elem(const Field &f, std::mt19937_64 &rng)
{
    return f.element(static_cast<std::uint32_t>(rng() % f.q()));
}

inline Vec random_vec(const Field &f, std::size_t n, std::mt19937_64 &rng)
{
    Vec v(n);
    for (auto &x : v) {
        x = random_elem(f, rng);
    }
    return v;
}

inline Matrix random_matrix(const Field &f, std::size_t rows, std::size_t cols, std::mt19937_64 &rng)
{
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = random_elem(f, rng);
        }
    }
    return m;
}

} // namespace testing_support

#endif
