#ifndef SL2GID_GRADINGS_HPP
#define SL2GID_GRADINGS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "identities.hpp"
#include "linalg.hpp"

namespace sl2gid {

enum class GradingTarget { m2_assoc, sl2_lie };

inline std::string to_string(GradingTarget t) { return t == GradingTarget::m2_assoc ? "m2" : "sl2"; }

/// Z2-grading of M2 (coordinates e11, e12, e21, e22) or of sl2 (coordinates
/// h, e, f) given by its two homogeneous components.
struct GradingDescriptor {
    GradingTarget target = GradingTarget::sl2_lie;
    Subspace even;
    Subspace odd;
    std::string origin;
};

/// Ungraded parent: gl2 (M2 under the commutator) or sl2.
inline GradedLieAlgebra parent_algebra(GradingTarget t, const Field &f)
{
    return t == GradingTarget::m2_assoc ? algebras::gl2(f) : algebras::sl2(f);
}

namespace detail {

inline Subspace image(const Field &f, const Matrix &m, const Subspace &s)
{
    std::vector<Vec> out;
    for (const auto &b : s.basis()) {
        out.push_back(apply(f, m, b));
    }
    return Subspace::span(f, m.rows(), out);
}

inline bool bracket_within(const GradedLieAlgebra &L, const Subspace &a, const Subspace &b, const Subspace &into)
{
    for (const auto &u : a.basis()) {
        for (const auto &v : b.basis()) {
            if (!into.contains(L.field(), L.bracket(u, v))) {
                return false;
            }
        }
    }
    return true;
}

inline bool product_within(const Field &f, const Subspace &a, const Subspace &b, const Subspace &into)
{
    for (const auto &u : a.basis()) {
        for (const auto &v : b.basis()) {
            if (!into.contains(f, mat_mul(f, Mat2::from(u), Mat2::from(v)).vec())) {
                return false;
            }
        }
    }
    return true;
}

inline std::string element_name(const GradedLieAlgebra &L, const Vec &v)
{
    const std::string s = L.format(v);
    return s.find(' ') == std::string::npos ? s : "(" + s + ")";
}

} // namespace detail

/// even + odd = parent and the bracket respects degrees.
inline bool is_lie_grading(const Field &f, const GradingDescriptor &g)
{
    const auto L = parent_algebra(g.target, f);
    if (g.even.dim() + g.odd.dim() != L.dim() || subspace_sum(f, g.even, g.odd).dim() != L.dim()) {
        return false;
    }
    return detail::bracket_within(L, g.even, g.even, g.even) && detail::bracket_within(L, g.even, g.odd, g.odd) &&
           detail::bracket_within(L, g.odd, g.odd, g.even);
}

/// Closure of the split under matrix multiplication (M2 only).
inline bool is_associative_grading(const Field &f, const GradingDescriptor &g)
{
    if (g.target != GradingTarget::m2_assoc) {
        throw std::invalid_argument("associative closure is only defined for M2 gradings");
    }
    return detail::product_within(f, g.even, g.even, g.even) && detail::product_within(f, g.even, g.odd, g.odd) &&
           detail::product_within(f, g.odd, g.even, g.odd) && detail::product_within(f, g.odd, g.odd, g.even);
}

/// The parent with basis (even basis, odd basis) and the matching degrees.
inline GradedLieAlgebra graded_algebra(const Field &f, const GradingDescriptor &g)
{
    const auto P = parent_algebra(g.target, f);
    std::vector<Vec> basis;
    std::vector<int> degrees;
    std::vector<std::string> names;
    for (const auto &b : g.even.basis()) {
        basis.push_back(b);
        degrees.push_back(0);
        names.push_back(detail::element_name(P, b));
    }
    for (const auto &b : g.odd.basis()) {
        basis.push_back(b);
        degrees.push_back(1);
        names.push_back(detail::element_name(P, b));
    }
    const std::size_t n = basis.size();
    if (n != P.dim()) {
        throw SpecError("grading components do not span the parent");
    }
    std::vector<Vec> c(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            auto co = coordinates(f, basis, P.bracket(basis[i], basis[j]));
            if (!co) {
                throw SpecError("grading components do not span the parent");
            }
            c[i * n + j] = std::move(*co);
        }
    }
    return GradedLieAlgebra(f, P.name() + " (" + g.origin + ")", std::move(names), std::move(degrees), std::move(c));
}

/// Linear map of x -> g x g^-1 on M2 in the coordinates e11, e12, e21, e22.
inline Matrix conjugation_matrix(const Field &f, const Mat2 &g)
{
    const Mat2 gi = mat_inverse(f, g);
    Matrix m(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        const Mat2 img = mat_mul(f, mat_mul(f, g, Mat2::from(unit_vector(4, j))), gi);
        const Vec v = img.vec();
        for (std::size_t i = 0; i < 4; ++i) {
            m(i, j) = v[i];
        }
    }
    return m;
}

inline void require_prime_field(const Field &f)
{
    if (f.k() != 1) {
        throw UnsupportedField("automorphism enumeration needs a prime field; GF(" + std::to_string(f.q()) +
                               ") has extension degree " + std::to_string(f.k()));
    }
}

inline std::vector<Mat2> general_linear_group(const Field &f)
{
    std::vector<Mat2> out;
    const auto q = f.q();
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            for (std::uint32_t c = 0; c < q; ++c) {
                for (std::uint32_t d = 0; d < q; ++d) {
                    const Mat2 g{f.element(a), f.element(b), f.element(c), f.element(d)};
                    if (!det(f, g).is_zero()) {
                        out.push_back(g);
                    }
                }
            }
        }
    }
    return out;
}

/// Automorphisms of M2 as an associative algebra: conjugations, one per
/// class of GL2 modulo scalars.
inline std::vector<Matrix> m2_automorphisms(const Field &f)
{
    require_prime_field(f);
    std::vector<Matrix> out;
    std::set<Vec> seen;
    for (const auto &g : general_linear_group(f)) {
        Matrix m = conjugation_matrix(f, g);
        if (seen.insert(m.data()).second) {
            out.push_back(std::move(m));
        }
    }
    return out;
}

/// Automorphisms of sl2 by brute force. A linear map is determined by the
/// images E, F of e, f; every pair in sl2 x sl2 is tried with H = [E, F],
/// and the map (h, e, f) -> (H, E, F) is kept when it is invertible and
/// preserves every basis bracket.
inline std::vector<Matrix> sl2_automorphisms(const Field &f)
{
    require_prime_field(f);
    const auto L = algebras::sl2(f);
    const auto all = detail::all_elements(f, Subspace::full(3));
    std::vector<Matrix> out;
    for (const auto &E : all) {
        if (is_zero(E)) {
            continue;
        }
        for (const auto &F : all) {
            const Vec H = L.bracket(E, F);
            // cheap filter: [H, E] = 2E
            if (L.bracket(H, E) != scale(f, f.from_int(2), E)) {
                continue;
            }
            Matrix m(3, 3);
            for (std::size_t i = 0; i < 3; ++i) {
                m(i, 0) = H[i];
                m(i, 1) = E[i];
                m(i, 2) = F[i];
            }
            if (rank(f, m) != 3) {
                continue;
            }
            bool hom = true;
            for (std::size_t i = 0; i < 3 && hom; ++i) {
                for (std::size_t j = i + 1; j < 3 && hom; ++j) {
                    const Vec lhs = apply(f, m, L.bracket(L.basis_vector(i), L.basis_vector(j)));
                    const Vec rhs = L.bracket(m.column(i), m.column(j));
                    hom = lhs == rhs;
                }
            }
            if (hom) {
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

inline std::vector<Matrix> automorphisms(GradingTarget t, const Field &f)
{
    return t == GradingTarget::m2_assoc ? m2_automorphisms(f) : sl2_automorphisms(f);
}

namespace detail {

inline std::string matrix_text(const Field &f, const Matrix &m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ";" : "";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += (j ? "," : "") + f.to_string(m(i, j));
        }
    }
    return s + "]";
}

inline std::optional<GradingDescriptor> involution_split(const Field &f, GradingTarget t, const Matrix &phi)
{
    const std::size_t n = phi.rows();
    if (multiply(f, phi, phi) != Matrix::identity(n)) {
        return std::nullopt;
    }
    GradingDescriptor g;
    g.target = t;
    g.even = kernel(f, subtract_scalar(f, phi, Field::one()));
    g.odd = kernel(f, subtract_scalar(f, phi, f.from_int(-1)));
    g.origin = "involution " + matrix_text(f, phi);
    return g;
}

} // namespace detail

/// Every Z2-grading of M2 (as an associative algebra) or of sl2, as the
/// +1/-1 eigenspace split of an involutive automorphism. Each grading is
/// listed once, tagged with the first involution that produced it; the
/// trivial grading comes first.
inline std::vector<GradingDescriptor> enumerate_z2_gradings(GradingTarget t, const Field &f,
                                                             const std::vector<Matrix> *autos = nullptr)
{
    require_prime_field(f);
    std::vector<Matrix> own;
    if (!autos) {
        own = automorphisms(t, f);
        autos = &own;
    }
    std::vector<GradingDescriptor> out;
    std::set<std::pair<Subspace, Subspace>> seen;
    for (const auto &phi : *autos) {
        auto g = detail::involution_split(f, t, phi);
        if (!g || !seen.insert({g->even, g->odd}).second) {
            continue;
        }
        if (g->even.dim() == phi.rows()) {
            g->origin = "trivial";
        }
        if (!is_lie_grading(f, *g) || (t == GradingTarget::m2_assoc && !is_associative_grading(f, *g))) {
            throw TheoremViolation("eigensplit of an involution is not a grading: " + g->origin);
        }
        out.push_back(std::move(*g));
    }
    std::stable_partition(out.begin(), out.end(), [](const auto &g) { return g.odd.is_zero(); });
    return out;
}

/// Separating invariants of a grading class.
struct GradingCertificate {
    std::size_t dim_even = 0;
    std::size_t dim_odd = 0;
    /// Whether [z1, y1^q] = [z1, y1] is a graded identity.
    bool qpower = false;
    friend auto operator<=>(const GradingCertificate &, const GradingCertificate &) = default;
};

inline GradingCertificate certificate(const Field &f, const GradingDescriptor &g)
{
    const auto L = graded_algebra(f, g);
    return {g.even.dim(), g.odd.dim(), check_identity(builtins::zyq_zy(f.q()), L).holds};
}

struct GradingClass {
    std::vector<std::size_t> members;
    GradingCertificate cert;
    /// Automorphism carrying the representative (first member) to each member.
    std::vector<Matrix> witnesses;
};

/// Orbits of the gradings under the automorphisms (union-find over images).
/// Classes are ordered by their first member.
inline std::vector<GradingClass> classify_up_to_iso(const Field &f, const std::vector<GradingDescriptor> &gradings,
                                                    const std::vector<Matrix> &autos)
{
    std::map<std::pair<Subspace, Subspace>, std::size_t> index;
    for (std::size_t i = 0; i < gradings.size(); ++i) {
        index.emplace(std::pair{gradings[i].even, gradings[i].odd}, i);
    }
    std::vector<std::size_t> parent(gradings.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    // image_of[i][j]: automorphism mapping grading i to grading j, first found
    std::map<std::pair<std::size_t, std::size_t>, const Matrix *> via;
    for (std::size_t i = 0; i < gradings.size(); ++i) {
        for (const auto &phi : autos) {
            const auto key = std::pair{detail::image(f, phi, gradings[i].even), detail::image(f, phi, gradings[i].odd)};
            auto it = index.find(key);
            if (it == index.end()) {
                throw TheoremViolation("automorphic image of a grading is missing from the enumeration");
            }
            via.emplace(std::pair{i, it->second}, &phi);
            const std::size_t a = find(i), b = find(it->second);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::map<std::size_t, std::size_t> class_of_root;
    std::vector<GradingClass> out;
    for (std::size_t i = 0; i < gradings.size(); ++i) {
        const std::size_t r = find(i);
        auto [it, fresh] = class_of_root.emplace(r, out.size());
        if (fresh) {
            out.push_back({});
            out.back().cert = certificate(f, gradings[i]);
        }
        auto &cls = out[it->second];
        cls.members.push_back(i);
        const auto w = via.find({cls.members.front(), i});
        cls.witnesses.push_back(w != via.end() ? *w->second : Matrix());
    }
    return out;
}

/// Index of the grading with exactly these components, if enumerated.
inline std::optional<std::size_t> find_grading(const std::vector<GradingDescriptor> &gs, const Subspace &even,
                                               const Subspace &odd)
{
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (gs[i].even == even && gs[i].odd == odd) {
            return i;
        }
    }
    return std::nullopt;
}

/// The three displayed gradings of M2: (M2, 0), (diagonal, off-diagonal),
/// and (F1 + F(e12 + b e21), F(e11 - e22) + F(e12 - b e21)) for a non-square b.
inline std::vector<GradingDescriptor> m2_reference_gradings(const Field &f, Elem b)
{
    using namespace matrix_units;
    auto sp = [&](std::vector<Mat2> ms) {
        std::vector<Vec> v;
        for (const auto &m : ms) {
            v.push_back(m.vec());
        }
        return Subspace::span(f, 4, v);
    };
    const Elem mb = f.neg(b);
    const Mat2 h = mat_add(f, e11(), mat_scale(f, f.from_int(-1), e22()));
    return {
        {GradingTarget::m2_assoc, Subspace::full(4), Subspace::zero(4), "I"},
        {GradingTarget::m2_assoc, sp({e11(), e22()}), sp({e12(), e21()}), "II"},
        {GradingTarget::m2_assoc, sp({unit(), mat_add(f, e12(), mat_scale(f, b, e21()))}),
         sp({h, mat_add(f, e12(), mat_scale(f, mb, e21()))}), "III"},
    };
}

/// The natural grading of sl2: (Fh, Fe + Ff).
inline GradingDescriptor sl2_natural_grading(const Field &f)
{
    return {GradingTarget::sl2_lie, Subspace::span(f, 3, {unit_vector(3, 0)}),
            Subspace::span(f, 3, {unit_vector(3, 1), unit_vector(3, 2)}), "natural"};
}

/// sl2 inside gl2: h -> e11 - e22, e -> e12, f -> e21.
inline Vec sl2_to_gl2(const Field &f, std::span<const Elem> v)
{
    return {v[0], v[1], v[2], f.neg(v[0])};
}

/// Lie gradings of gl2 = sl2 + F1: each grading of sl2 together with the
/// identity matrix placed in either component.
inline std::vector<GradingDescriptor> gl2_lie_gradings(const Field &f, const std::vector<GradingDescriptor> &sl2_gradings)
{
    std::vector<GradingDescriptor> out;
    const Vec one = matrix_units::unit().vec();
    for (const auto &g : sl2_gradings) {
        std::vector<Vec> ev, od;
        for (const auto &b : g.even.basis()) {
            ev.push_back(sl2_to_gl2(f, b));
        }
        for (const auto &b : g.odd.basis()) {
            od.push_back(sl2_to_gl2(f, b));
        }
        for (int place = 0; place < 2; ++place) {
            auto e = ev, o = od;
            (place == 0 ? e : o).push_back(one);
            out.push_back({GradingTarget::m2_assoc, Subspace::span(f, 4, e), Subspace::span(f, 4, o),
                           g.origin + (place == 0 ? ", 1 even" : ", 1 odd")});
        }
    }
    return out;
}

struct UnitComponentResult {
    bool unit_even = false;
    bool associative = false;
    bool agrees() const { return unit_even == associative; }
};

/// Whether the identity matrix lies in the even part of a Lie grading of
/// gl2, together with a direct check of associative closure.
inline UnitComponentResult unit_component_check(const Field &f, const GradingDescriptor &g)
{
    if (g.target != GradingTarget::m2_assoc) {
        throw std::invalid_argument("unit component check needs a grading of gl2");
    }
    if (!is_lie_grading(f, g)) {
        throw SpecError("split is not a Lie grading of gl2: " + g.origin);
    }
    return {g.even.contains(f, matrix_units::unit().vec()), is_associative_grading(f, g)};
}

struct NaturalCharacterization {
    bool dim_even_one = false;
    /// [a, c^q] = [a, c] for a odd and c in F1 + even, checked in gl2.
    bool qpower = false;
    std::optional<Matrix> isomorphism;

    bool hypotheses() const { return dim_even_one && qpower; }
    std::string failed() const
    {
        if (!dim_even_one) {
            return "dim of the even part is not 1";
        }
        return qpower ? "" : "[z1, y1^q] = [z1, y1] fails";
    }
};

/// For an sl2 grading with a one-dimensional even part on which the q-power
/// identity holds, searches the automorphisms for one carrying it onto the
/// natural grading; failing to find one raises TheoremViolation.
inline NaturalCharacterization natural_characterization(const Field &f, const GradingDescriptor &g,
                                                        const std::vector<Matrix> &sl2_autos)
{
    if (g.target != GradingTarget::sl2_lie) {
        throw std::invalid_argument("natural characterization needs a grading of sl2");
    }
    NaturalCharacterization res;
    res.dim_even_one = g.even.dim() == 1;
    const auto ext = gl2_lie_gradings(f, {g}).front();
    res.qpower = check_identity(builtins::zyq_zy(f.q()), graded_algebra(f, ext)).holds;
    if (!res.hypotheses()) {
        return res;
    }
    const auto nat = sl2_natural_grading(f);
    for (const auto &phi : sl2_autos) {
        if (detail::image(f, phi, g.even) == nat.even && detail::image(f, phi, g.odd) == nat.odd) {
            res.isomorphism = phi;
            return res;
        }
    }
    throw TheoremViolation("grading " + g.origin + " satisfies both hypotheses but is not isomorphic to the natural one");
}

struct BobocReport {
    Elem b;
    bool b_square = false;
    Mat2 lhs; // [h, u]
    Mat2 rhs; // [h, u, ..., u] with q copies of u
    bool differ() const { return !(lhs == rhs); }
};

/// Compares [h, u] with [h, u^q] in gl2 for u = e12 + b e21. The default b is
/// the smallest non-square; for a non-square b equality is a TheoremViolation.
inline BobocReport remark_boboc(const Field &f, std::optional<Elem> b_in = std::nullopt)
{
    using namespace matrix_units;
    BobocReport rep;
    rep.b = b_in ? *b_in : find_nonsquare(f);
    rep.b_square = f.is_square(rep.b);
    const Mat2 h = mat_add(f, e11(), mat_scale(f, f.from_int(-1), e22()));
    const Mat2 u = mat_add(f, e12(), mat_scale(f, rep.b, e21()));
    rep.lhs = commutator(f, h, u);
    Mat2 cur = h;
    for (unsigned i = 0; i < f.q(); ++i) {
        cur = commutator(f, cur, u);
    }
    rep.rhs = cur;
    if (!rep.b_square && !rep.differ()) {
        throw TheoremViolation("[h, u] = [h, u^q] for the non-square b = " + f.to_string(rep.b));
    }
    return rep;
}

} // namespace sl2gid

#endif
