#ifndef SL2GID_ALGEBRA_HPP
#define SL2GID_ALGEBRA_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"

namespace sl2gid {

/// Finite-dimensional Z2-graded Lie algebra given by structure constants
/// on a homogeneous basis b_0..b_{n-1}: constant(i, j) holds the
/// coordinates of [b_i, b_j] and degree(i) is 0 (even) or 1 (odd).
///
/// The constructor does not check the Lie axioms; call validate() for that.
class GradedLieAlgebra {
public:
    GradedLieAlgebra(Field field, std::string name, std::vector<std::string> basis_names, std::vector<int> degrees,
                     std::vector<Vec> constants)
        : field_(std::move(field)), name_(std::move(name)), names_(std::move(basis_names)),
          degrees_(std::move(degrees)), constants_(std::move(constants))
    {
        const std::size_t n = degrees_.size();
        if (names_.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                names_.push_back("b" + std::to_string(i));
            }
        }
        if (names_.size() != n || constants_.size() != n * n) {
            throw SpecError("structure constant table does not match dimension " + std::to_string(n));
        }
        for (auto d : degrees_) {
            if (d != 0 && d != 1) {
                throw SpecError("basis degrees must be 0 or 1");
            }
        }
        sparse_.resize(n * n);
        for (std::size_t idx = 0; idx < n * n; ++idx) {
            if (constants_[idx].size() != n) {
                throw SpecError("structure constant vector of wrong length");
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (!constants_[idx][k].is_zero()) {
                    sparse_[idx].emplace_back(k, constants_[idx][k]);
                }
            }
        }
    }

    const Field &field() const noexcept { return field_; }
    const std::string &name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return degrees_.size(); }
    const std::vector<int> &degrees() const noexcept { return degrees_; }
    int degree(std::size_t i) const { return degrees_.at(i); }
    const std::vector<std::string> &basis_names() const noexcept { return names_; }
    const Vec &constant(std::size_t i, std::size_t j) const { return constants_.at(i * dim() + j); }

    Vec zero() const { return Vec(dim()); }
    Vec basis_vector(std::size_t i) const { return unit_vector(dim(), i); }

    Vec bracket(std::span<const Elem> a, std::span<const Elem> b) const
    {
        check(a);
        check(b);
        const std::size_t n = dim();
        Vec out(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j].is_zero()) {
                    continue;
                }
                const Elem c = field_.mul(a[i], b[j]);
                for (const auto &[k, s] : sparse_[i * n + j]) {
                    out[k] = field_.add(out[k], field_.mul(c, s));
                }
            }
        }
        return out;
    }

    /// Matrix of ad a : x -> [a, x]; column j is [a, b_j].
    Matrix ad_matrix(std::span<const Elem> a) const
    {
        check(a);
        const std::size_t n = dim();
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                for (const auto &[k, s] : sparse_[i * n + j]) {
                    m(k, j) = field_.add(m(k, j), field_.mul(a[i], s));
                }
            }
        }
        return m;
    }

    /// L_g as the span of the basis vectors of degree g.
    Subspace component(int g) const
    {
        Subspace s(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (degrees_[i] == g) {
                s.insert(field_, basis_vector(i));
            }
        }
        return s;
    }

    std::size_t component_dim(int g) const
    {
        std::size_t c = 0;
        for (auto d : degrees_) {
            c += d == g ? 1 : 0;
        }
        return c;
    }

    /// Projection onto L_g along the other component.
    Vec project(std::span<const Elem> v, int g) const
    {
        check(v);
        Vec out(v.begin(), v.end());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (degrees_[i] != g) {
                out[i] = Elem{};
            }
        }
        return out;
    }

    bool in_component(std::span<const Elem> v, int g) const
    {
        check(v);
        for (std::size_t i = 0; i < dim(); ++i) {
            if (degrees_[i] != g && !v[i].is_zero()) {
                return false;
            }
        }
        return true;
    }

    bool is_homogeneous(std::span<const Elem> v) const { return in_component(v, 0) || in_component(v, 1); }

    void check(std::span<const Elem> v) const
    {
        if (v.size() != dim()) {
            throw AmbientMismatch("element of length " + std::to_string(v.size()) + " used in " + name_ +
                                  " of dimension " + std::to_string(dim()));
        }
    }

    std::string format(std::span<const Elem> v) const
    {
        check(v);
        std::string out;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (v[i].is_zero()) {
                continue;
            }
            if (!out.empty()) {
                out += " + ";
            }
            if (v[i] != Field::one()) {
                out += field_.to_string(v[i]) + "*";
            }
            out += names_[i];
        }
        return out.empty() ? "0" : out;
    }

private:
    Field field_;
    std::string name_;
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    std::vector<Vec> constants_;
    std::vector<std::vector<std::pair<std::size_t, Elem>>> sparse_;
};

struct AxiomResult {
    std::string axiom;
    bool pass = true;
    std::string witness;
};

struct ValidationReport {
    std::vector<AxiomResult> axioms;

    bool ok() const
    {
        for (const auto &a : axioms) {
            if (!a.pass) {
                return false;
            }
        }
        return true;
    }
    const AxiomResult &get(const std::string &name) const
    {
        for (const auto &a : axioms) {
            if (a.axiom == name) {
                return a;
            }
        }
        throw SpecError("unknown axiom " + name);
    }
};

/// Checks anticommutativity, the Jacobi identity and [L_g, L_h] in L_{g+h}
/// on basis vectors, reporting the first failing basis pair/triple.
inline ValidationReport validate(const GradedLieAlgebra &L)
{
    const Field &f = L.field();
    const std::size_t n = L.dim();
    const auto &nm = L.basis_names();
    ValidationReport rep;

    AxiomResult anti{"anticommutativity", true, {}};
    for (std::size_t i = 0; i < n && anti.pass; ++i) {
        if (!is_zero(L.constant(i, i))) {
            anti.pass = false;
            anti.witness = "[" + nm[i] + "," + nm[i] + "] != 0";
        }
        for (std::size_t j = i + 1; j < n && anti.pass; ++j) {
            if (!is_zero(add(f, L.constant(i, j), L.constant(j, i)))) {
                anti.pass = false;
                anti.witness = "[" + nm[i] + "," + nm[j] + "] != -[" + nm[j] + "," + nm[i] + "]";
            }
        }
    }
    rep.axioms.push_back(anti);

    AxiomResult jac{"jacobi", true, {}};
    for (std::size_t i = 0; i < n && jac.pass; ++i) {
        for (std::size_t j = 0; j < n && jac.pass; ++j) {
            for (std::size_t k = 0; k < n && jac.pass; ++k) {
                const auto bi = L.basis_vector(i), bj = L.basis_vector(j), bk = L.basis_vector(k);
                Vec s = L.bracket(L.bracket(bi, bj), bk);
                s = add(f, s, L.bracket(L.bracket(bj, bk), bi));
                s = add(f, s, L.bracket(L.bracket(bk, bi), bj));
                if (!is_zero(s)) {
                    jac.pass = false;
                    jac.witness = "(" + nm[i] + "," + nm[j] + "," + nm[k] + ")";
                }
            }
        }
    }
    rep.axioms.push_back(jac);

    AxiomResult grad{"grading", true, {}};
    for (std::size_t i = 0; i < n && grad.pass; ++i) {
        for (std::size_t j = 0; j < n && grad.pass; ++j) {
            const int g = (L.degree(i) + L.degree(j)) % 2;
            if (!L.in_component(L.constant(i, j), g)) {
                grad.pass = false;
                grad.witness = "[" + nm[i] + "," + nm[j] + "] = " + L.format(L.constant(i, j)) +
                               " is not of degree " + std::to_string(g);
            }
        }
    }
    rep.axioms.push_back(grad);
    return rep;
}

inline void require_valid(const GradedLieAlgebra &L)
{
    const auto rep = validate(L);
    for (const auto &a : rep.axioms) {
        if (!a.pass) {
            throw SpecError(L.name() + ": axiom '" + a.axiom + "' fails at " + a.witness);
        }
    }
}

/// 2x2 matrix [[a, b], [c, d]] over a finite field.
struct Mat2 {
    Elem a, b, c, d;

    friend bool operator==(const Mat2 &, const Mat2 &) = default;

    std::array<Elem, 4> coords() const { return {a, b, c, d}; }
    Vec vec() const { return {a, b, c, d}; }
    static Mat2 from(std::span<const Elem> v) { return {v[0], v[1], v[2], v[3]}; }
};

inline Mat2 mat_mul(const Field &f, const Mat2 &x, const Mat2 &y)
{
    return {f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
            f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

inline Mat2 mat_add(const Field &f, const Mat2 &x, const Mat2 &y)
{
    return {f.add(x.a, y.a), f.add(x.b, y.b), f.add(x.c, y.c), f.add(x.d, y.d)};
}

inline Mat2 mat_scale(const Field &f, Elem s, const Mat2 &x)
{
    return {f.mul(s, x.a), f.mul(s, x.b), f.mul(s, x.c), f.mul(s, x.d)};
}

inline Mat2 commutator(const Field &f, const Mat2 &x, const Mat2 &y)
{
    const Mat2 p = mat_mul(f, x, y), q = mat_mul(f, y, x);
    return {f.sub(p.a, q.a), f.sub(p.b, q.b), f.sub(p.c, q.c), f.sub(p.d, q.d)};
}

inline Elem det(const Field &f, const Mat2 &x) { return f.sub(f.mul(x.a, x.d), f.mul(x.b, x.c)); }

inline Mat2 mat_inverse(const Field &f, const Mat2 &x)
{
    const Elem di = f.inv(det(f, x));
    return {f.mul(di, x.d), f.mul(di, f.neg(x.b)), f.mul(di, f.neg(x.c)), f.mul(di, x.a)};
}

namespace matrix_units {
inline Mat2 e11() { return {Field::one(), {}, {}, {}}; }
inline Mat2 e12() { return {{}, Field::one(), {}, {}}; }
inline Mat2 e21() { return {{}, {}, Field::one(), {}}; }
inline Mat2 e22() { return {{}, {}, {}, Field::one()}; }
inline Mat2 unit() { return {Field::one(), {}, {}, Field::one()}; }
} // namespace matrix_units

/// Coordinates of `target` in the (independent) family `basis`, if it lies in its span.
inline std::optional<Vec> coordinates(const Field &f, const std::vector<Vec> &basis, std::span<const Elem> target)
{
    const std::size_t n = target.size(), m = basis.size();
    Matrix aug(n, m + 1);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t r = 0; r < n; ++r) {
            aug(r, j) = basis[j][r];
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        aug(r, m) = f.neg(target[r]);
    }
    // A kernel vector (x, s) with s != 0 gives target = sum (x_j / s) basis_j.
    const Subspace ker = kernel(f, aug);
    for (const auto &k : ker.basis()) {
        if (!k[m].is_zero()) {
            const Elem inv = f.inv(k[m]);
            Vec x(m);
            for (std::size_t j = 0; j < m; ++j) {
                x[j] = f.mul(k[j], inv);
            }
            return x;
        }
    }
    return std::nullopt;
}

/// Graded Lie algebra on a homogeneous basis of 2x2 matrices under the
/// commutator bracket. The basis must span a commutator-closed subspace.
inline GradedLieAlgebra from_matrix_basis(const Field &f, std::string name, std::vector<std::string> names,
                                          const std::vector<Mat2> &basis, std::vector<int> degrees)
{
    std::vector<Vec> bvecs;
    for (const auto &m : basis) {
        bvecs.push_back(m.vec());
    }
    if (Subspace::span(f, 4, bvecs).dim() != basis.size()) {
        throw SpecError(name + ": matrix basis is linearly dependent");
    }
    const std::size_t n = basis.size();
    std::vector<Vec> constants(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto c = coordinates(f, bvecs, commutator(f, basis[i], basis[j]).vec());
            if (!c) {
                throw SpecError(name + ": matrix span is not closed under the commutator");
            }
            constants[i * n + j] = *c;
        }
    }
    return GradedLieAlgebra(f, std::move(name), std::move(names), std::move(degrees), std::move(constants));
}

namespace algebras {

using namespace matrix_units;

/// sl2 with its natural grading on h = e11 - e22 (even), e = e12, f = e21 (odd).
inline GradedLieAlgebra sl2(const Field &f)
{
    const Mat2 h = mat_add(f, e11(), mat_scale(f, f.from_int(-1), e22()));
    return from_matrix_basis(f, "sl2", {"h", "e", "f"}, {h, e12(), e21()}, {0, 1, 1});
}

/// gl2 = M2 under the commutator; diagonal even, off-diagonal odd.
inline GradedLieAlgebra gl2(const Field &f)
{
    return from_matrix_basis(f, "gl2", {"e11", "e12", "e21", "e22"}, {e11(), e12(), e21(), e22()}, {0, 1, 1, 0});
}

/// M2 with the trivial grading (everything even).
inline GradedLieAlgebra m2_grading_I(const Field &f)
{
    return from_matrix_basis(f, "m2-I", {"e11", "e12", "e21", "e22"}, {e11(), e12(), e21(), e22()}, {0, 0, 0, 0});
}

/// M2 graded by (F e11 + F e22, F e12 + F e21).
inline GradedLieAlgebra m2_grading_II(const Field &f)
{
    return from_matrix_basis(f, "m2-II", {"e11", "e22", "e12", "e21"}, {e11(), e22(), e12(), e21()}, {0, 0, 1, 1});
}

/// M2 graded by (F 1 + F(e12 + b e21), F(e11 - e22) + F(e12 - b e21)), b a non-square.
inline GradedLieAlgebra m2_grading_III(const Field &f, Elem b)
{
    if (f.is_square(b)) {
        throw SpecError("m2-III requires a non-square parameter, got " + f.to_string(b));
    }
    const Mat2 one = unit();
    const Mat2 u = mat_add(f, e12(), mat_scale(f, b, e21()));
    const Mat2 h = mat_add(f, e11(), mat_scale(f, f.from_int(-1), e22()));
    const Mat2 w = mat_add(f, e12(), mat_scale(f, f.neg(b), e21()));
    return from_matrix_basis(f, "m2-III", {"1", "e12+b*e21", "e11-e22", "e12-b*e21"}, {one, u, h, w}, {0, 0, 1, 1});
}

/// span{e11, e12} inside gl2, with e11 even and e12 odd.
inline GradedLieAlgebra span_e11_e12(const Field &f)
{
    return from_matrix_basis(f, "span-e11-e12", {"e11", "e12"}, {e11(), e12()}, {0, 1});
}

/// Heisenberg algebra [x, y] = z, all basis vectors even.
inline GradedLieAlgebra heisenberg(const Field &f)
{
    std::vector<Vec> c(9, Vec(3));
    c[0 * 3 + 1] = {Elem{}, Elem{}, Field::one()};
    c[1 * 3 + 0] = {Elem{}, Elem{}, f.from_int(-1)};
    return GradedLieAlgebra(f, "heisenberg", {"x", "y", "z"}, {0, 0, 0}, std::move(c));
}

inline GradedLieAlgebra abelian(const Field &f, std::vector<int> degrees)
{
    const std::size_t n = degrees.size();
    return GradedLieAlgebra(f, "abelian" + std::to_string(n), {}, std::move(degrees),
                            std::vector<Vec>(n * n, Vec(n)));
}

inline GradedLieAlgebra direct_sum(const std::vector<GradedLieAlgebra> &parts)
{
    if (parts.empty()) {
        throw SpecError("direct sum of no algebras");
    }
    const Field &f = parts.front().field();
    std::size_t n = 0;
    for (const auto &p : parts) {
        if (!(p.field() == f)) {
            throw AmbientMismatch("direct sum over different fields");
        }
        n += p.dim();
    }
    std::vector<int> degrees;
    std::vector<std::string> names;
    std::vector<Vec> c(n * n, Vec(n));
    std::string name;
    std::size_t off = 0;
    for (std::size_t idx = 0; idx < parts.size(); ++idx) {
        const auto &p = parts[idx];
        name += (idx ? "+" : "") + p.name();
        for (std::size_t i = 0; i < p.dim(); ++i) {
            degrees.push_back(p.degree(i));
            names.push_back(p.basis_names()[i] + "_" + std::to_string(idx + 1));
            for (std::size_t j = 0; j < p.dim(); ++j) {
                for (std::size_t k = 0; k < p.dim(); ++k) {
                    c[(off + i) * n + off + j][off + k] = p.constant(i, j)[k];
                }
            }
        }
        off += p.dim();
    }
    return GradedLieAlgebra(f, name, std::move(names), std::move(degrees), std::move(c));
}

} // namespace algebras

} // namespace sl2gid

#endif
