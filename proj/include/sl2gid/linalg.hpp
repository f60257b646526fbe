#ifndef SL2GID_LINALG_HPP
#define SL2GID_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace sl2gid {

using Vec = std::vector<Elem>;

inline bool is_zero(std::span<const Elem> v) noexcept
{
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x.is_zero(); });
}

inline Vec unit_vector(std::size_t n, std::size_t i)
{
    Vec v(n);
    v[i] = Field::one();
    return v;
}

inline void axpy(const Field &f, Elem a, std::span<const Elem> x, std::span<Elem> y)
{
    if (a.is_zero()) {
        return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i].is_zero()) {
            y[i] = f.add(y[i], f.mul(a, x[i]));
        }
    }
}

inline Vec add(const Field &f, std::span<const Elem> a, std::span<const Elem> b)
{
    if (a.size() != b.size()) {
        throw AmbientMismatch("vector length mismatch");
    }
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = f.add(a[i], b[i]);
    }
    return out;
}

inline Vec scale(const Field &f, Elem c, std::span<const Elem> a)
{
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = f.mul(c, a[i]);
    }
    return out;
}

/// Dense row-major matrix over a finite field.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, Vec data) : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_) {
            throw AmbientMismatch("matrix data size differs from rows x cols");
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Field::one();
        }
        return m;
    }

    static Matrix from_rows(std::size_t cols, const std::vector<Vec> &rows)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw AmbientMismatch("row length mismatch");
            }
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Elem &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vec column(std::size_t j) const
    {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            c[i] = (*this)(i, j);
        }
        return c;
    }
    const Vec &data() const noexcept { return data_; }

    friend bool operator==(const Matrix &, const Matrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vec data_;
};

inline Vec apply(const Field &f, const Matrix &m, std::span<const Elem> v)
{
    if (v.size() != m.cols()) {
        throw AmbientMismatch("matrix-vector dimension mismatch");
    }
    Vec out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Elem acc{};
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Elem a = m(i, j);
            if (!a.is_zero() && !v[j].is_zero()) {
                acc = f.add(acc, f.mul(a, v[j]));
            }
        }
        out[i] = acc;
    }
    return out;
}

inline Matrix multiply(const Field &f, const Matrix &a, const Matrix &b)
{
    if (a.cols() != b.rows()) {
        throw AmbientMismatch("matrix product dimension mismatch");
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            axpy(f, a(i, k), b.row(k), c.row(i));
        }
    }
    return c;
}

inline Matrix subtract_scalar(const Field &f, const Matrix &m, Elem lambda)
{
    Matrix out = m;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
        out(i, i) = f.sub(out(i, i), lambda);
    }
    return out;
}

/// Subspace of F^n in canonical reduced row-echelon form: pivots strictly
/// increasing, pivot entries 1, pivot columns zero in every other row.
/// Equal subspaces have identical row lists.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    static Subspace zero(std::size_t n) { return Subspace(n); }

    static Subspace full(std::size_t n)
    {
        Subspace s(n);
        for (std::size_t i = 0; i < n; ++i) {
            s.rows_.push_back(unit_vector(n, i));
            s.pivots_.push_back(i);
        }
        return s;
    }

    static Subspace span(const Field &f, std::size_t n, const std::vector<Vec> &vectors)
    {
        Subspace s(n);
        for (const auto &v : vectors) {
            s.insert(f, v);
        }
        return s;
    }

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return rows_.size(); }
    bool is_zero() const noexcept { return rows_.empty(); }
    const std::vector<Vec> &basis() const noexcept { return rows_; }
    const std::vector<std::size_t> &pivots() const noexcept { return pivots_; }

    /// `v` minus its projection along the pivot columns; zero iff v is in the span.
    Vec reduce(const Field &f, std::span<const Elem> v) const
    {
        if (v.size() != ambient_) {
            throw AmbientMismatch("vector length " + std::to_string(v.size()) + " vs ambient dimension " +
                                  std::to_string(ambient_));
        }
        Vec r(v.begin(), v.end());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Elem c = r[pivots_[i]];
            if (!c.is_zero()) {
                axpy(f, f.neg(c), rows_[i], r);
            }
        }
        return r;
    }

    bool contains(const Field &f, std::span<const Elem> v) const { return sl2gid::is_zero(reduce(f, v)); }

    bool contains(const Field &f, const Subspace &other) const
    {
        check_ambient(other);
        return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vec &r) { return contains(f, r); });
    }

    /// Adds `v` to the span; returns true when the dimension grew.
    bool insert(const Field &f, std::span<const Elem> v)
    {
        Vec r = reduce(f, v);
        std::size_t piv = 0;
        while (piv < r.size() && r[piv].is_zero()) {
            ++piv;
        }
        if (piv == r.size()) {
            return false;
        }
        const Elem inv = f.inv(r[piv]);
        for (auto &x : r) {
            x = f.mul(x, inv);
        }
        for (auto &row : rows_) {
            const Elem c = row[piv];
            if (!c.is_zero()) {
                axpy(f, f.neg(c), r, row);
            }
        }
        const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, piv);
        rows_.insert(rows_.begin() + pos, std::move(r));
        return true;
    }

    friend bool operator==(const Subspace &a, const Subspace &b)
    {
        return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }
    friend bool operator<(const Subspace &a, const Subspace &b)
    {
        return std::tie(a.ambient_, a.rows_) < std::tie(b.ambient_, b.rows_);
    }

    void check_ambient(const Subspace &other) const
    {
        if (other.ambient_ != ambient_) {
            throw AmbientMismatch("subspaces live in ambient spaces of dimension " + std::to_string(ambient_) +
                                  " and " + std::to_string(other.ambient_));
        }
    }

private:
    std::size_t ambient_ = 0;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

struct RrefResult {
    Matrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    Subspace kernel;
};

/// Gauss-Jordan elimination; the kernel is returned in canonical form.
inline RrefResult rref_kernel(const Field &f, Matrix m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m(sel, c).is_zero()) {
            ++sel;
        }
        if (sel == rows) {
            continue;
        }
        if (sel != r) {
            for (std::size_t j = 0; j < cols; ++j) {
                std::swap(m(sel, j), m(r, j));
            }
        }
        const Elem inv = f.inv(m(r, c));
        for (std::size_t j = 0; j < cols; ++j) {
            m(r, j) = f.mul(m(r, j), inv);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && !m(i, c).is_zero()) {
                const Elem factor = f.neg(m(i, c));
                for (std::size_t j = 0; j < cols; ++j) {
                    if (!m(r, j).is_zero()) {
                        m(i, j) = f.add(m(i, j), f.mul(factor, m(r, j)));
                    }
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<Vec> kernel_vectors;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vec v(cols);
        v[free] = Field::one();
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            v[pivots[i]] = f.neg(m(i, free));
        }
        kernel_vectors.push_back(std::move(v));
    }
    RrefResult out{std::move(m), r, pivots, Subspace::span(f, cols, kernel_vectors)};
    return out;
}

inline Subspace kernel(const Field &f, const Matrix &m) { return rref_kernel(f, m).kernel; }

inline std::size_t rank(const Field &f, const Matrix &m) { return rref_kernel(f, m).rank; }

/// Image (column space) of m.
inline Subspace image(const Field &f, const Matrix &m)
{
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        cols.push_back(m.column(j));
    }
    return Subspace::span(f, m.rows(), cols);
}

inline Subspace subspace_sum(const Field &f, const Subspace &a, const Subspace &b)
{
    a.check_ambient(b);
    Subspace s = a;
    for (const auto &r : b.basis()) {
        s.insert(f, r);
    }
    return s;
}

/// Intersection through the kernel of [A^T | -B^T]: (alpha, beta) with
/// sum alpha_i a_i = sum beta_j b_j.
inline Subspace subspace_intersect(const Field &f, const Subspace &a, const Subspace &b)
{
    a.check_ambient(b);
    const std::size_t n = a.ambient_dim(), da = a.dim(), db = b.dim();
    Matrix m(n, da + db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t r = 0; r < n; ++r) {
            m(r, i) = a.basis()[i][r];
        }
    }
    for (std::size_t j = 0; j < db; ++j) {
        for (std::size_t r = 0; r < n; ++r) {
            m(r, da + j) = f.neg(b.basis()[j][r]);
        }
    }
    const Subspace ker = kernel(f, m);
    Subspace out(n);
    for (const auto &k : ker.basis()) {
        Vec v(n);
        for (std::size_t i = 0; i < da; ++i) {
            axpy(f, k[i], a.basis()[i], v);
        }
        out.insert(f, v);
    }
    return out;
}

struct EigenPair {
    Elem eigenvalue;
    Subspace eigenspace;
};

/// Eigenvalues found by testing every field element; complex (extension
/// field) eigenvalues are invisible and make the map non-diagonalizable.
struct EigenBasis {
    std::vector<EigenPair> pairs;
    bool diagonalizable = false;

    const EigenPair *find(Elem lambda) const
    {
        for (const auto &p : pairs) {
            if (p.eigenvalue == lambda) {
                return &p;
            }
        }
        return nullptr;
    }
};

inline EigenBasis eigen_decomposition(const Field &f, const Matrix &m)
{
    if (m.rows() != m.cols()) {
        throw AmbientMismatch("eigen decomposition of a non-square matrix");
    }
    EigenBasis out;
    std::size_t total = 0;
    for (std::uint32_t i = 0; i < f.q(); ++i) {
        const Elem lambda = f.element(i);
        Subspace ker = kernel(f, subtract_scalar(f, m, lambda));
        if (!ker.is_zero()) {
            total += ker.dim();
            out.pairs.push_back({lambda, std::move(ker)});
        }
    }
    out.diagonalizable = total == m.rows();
    return out;
}

} // namespace sl2gid

#endif
