#ifndef SL2GID_STRUCTURE_HPP
#define SL2GID_STRUCTURE_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace sl2gid {

/// Calls `fn` on every linear combination of `basis` (q^dim vectors), in
/// odometer order of the coefficient codes. Stops early when `fn` returns false.
inline void for_each_combination(const Field &f, std::size_t ambient, const std::vector<Vec> &basis,
                                 const std::function<bool(const Vec &)> &fn)
{
    const std::size_t d = basis.size();
    std::vector<std::uint32_t> digits(d, 0);
    Vec v(ambient);
    while (true) {
        v.assign(ambient, Elem{});
        for (std::size_t j = 0; j < d; ++j) {
            axpy(f, f.element(digits[j]), basis[j], v);
        }
        if (!fn(v)) {
            return;
        }
        std::size_t i = 0;
        while (i < d && ++digits[i] == f.q()) {
            digits[i++] = 0;
        }
        if (i == d) {
            return;
        }
    }
}

/// Nonzero vectors of span(basis) up to scalar multiples: exactly those whose
/// leading nonzero coefficient (in the given basis) is 1.
inline void for_each_projective(const Field &f, std::size_t ambient, const std::vector<Vec> &basis,
                                const std::function<bool(const Vec &)> &fn)
{
    const std::size_t d = basis.size();
    for (std::size_t lead = 0; lead < d; ++lead) {
        std::vector<Vec> tail(basis.begin() + static_cast<std::ptrdiff_t>(lead) + 1, basis.end());
        bool go = true;
        for_each_combination(f, ambient, tail, [&](const Vec &t) {
            Vec v = add(f, t, basis[lead]);
            go = fn(v);
            return go;
        });
        if (!go) {
            return;
        }
    }
}

/// span{[a, b] : a in A, b in B}.
inline Subspace bracket_span(const GradedLieAlgebra &L, const Subspace &a, const Subspace &b)
{
    Subspace out(L.dim());
    for (const auto &x : a.basis()) {
        for (const auto &y : b.basis()) {
            out.insert(L.field(), L.bracket(x, y));
        }
    }
    return out;
}

inline bool is_ideal(const GradedLieAlgebra &L, const Subspace &I)
{
    for (const auto &v : I.basis()) {
        for (std::size_t j = 0; j < L.dim(); ++j) {
            if (!I.contains(L.field(), L.bracket(v, L.basis_vector(j)))) {
                return false;
            }
        }
    }
    return true;
}

inline bool is_subalgebra(const GradedLieAlgebra &L, const Subspace &S)
{
    return S.contains(L.field(), bracket_span(L, S, S));
}

/// True when S = (S n L0) + (S n L1).
inline bool is_graded_subspace(const GradedLieAlgebra &L, const Subspace &S)
{
    for (const auto &v : S.basis()) {
        if (!S.contains(L.field(), L.project(v, 0))) {
            return false;
        }
    }
    return true;
}

/// Smallest ideal containing `gens`; with `graded`, generators are first
/// split into their homogeneous components.
inline Subspace generated_ideal(const GradedLieAlgebra &L, const std::vector<Vec> &gens, bool graded)
{
    const Field &f = L.field();
    Subspace span(L.dim());
    std::deque<Vec> todo;
    auto push = [&](const Vec &v) {
        if (span.insert(f, v)) {
            todo.push_back(v);
        }
    };
    for (const auto &g : gens) {
        L.check(g);
        if (graded) {
            push(L.project(g, 0));
            push(L.project(g, 1));
        } else {
            push(g);
        }
    }
    while (!todo.empty()) {
        const Vec v = std::move(todo.front());
        todo.pop_front();
        for (std::size_t j = 0; j < L.dim(); ++j) {
            push(L.bracket(v, L.basis_vector(j)));
        }
    }
    return span;
}

inline Subspace generated_subalgebra(const GradedLieAlgebra &L, const std::vector<Vec> &gens)
{
    const Field &f = L.field();
    Subspace span(L.dim());
    std::vector<Vec> found;
    std::deque<Vec> todo;
    for (const auto &g : gens) {
        if (span.insert(f, g)) {
            todo.push_back(g);
        }
    }
    while (!todo.empty()) {
        const Vec v = std::move(todo.front());
        todo.pop_front();
        found.push_back(v);
        for (const auto &u : found) {
            Vec w = L.bracket(v, u);
            if (span.insert(f, w)) {
                todo.push_back(std::move(w));
            }
        }
    }
    return span;
}

/// S, [S,S], [[S,S],[S,S]], ... until it stabilises (the last entry repeats no further).
inline std::vector<Subspace> derived_series(const GradedLieAlgebra &L, const Subspace &S)
{
    std::vector<Subspace> out{S};
    while (true) {
        Subspace next = bracket_span(L, out.back(), out.back());
        if (next == out.back()) {
            return out;
        }
        out.push_back(std::move(next));
    }
}

/// S^1 = S, S^{k+1} = [S^k, S].
inline std::vector<Subspace> lower_central_series(const GradedLieAlgebra &L, const Subspace &S)
{
    std::vector<Subspace> out{S};
    while (true) {
        Subspace next = bracket_span(L, out.back(), S);
        if (next == out.back()) {
            return out;
        }
        out.push_back(std::move(next));
    }
}

inline bool is_solvable(const GradedLieAlgebra &L, const Subspace &S) { return derived_series(L, S).back().is_zero(); }
inline bool is_nilpotent(const GradedLieAlgebra &L, const Subspace &S)
{
    return lower_central_series(L, S).back().is_zero();
}
inline bool is_abelian(const GradedLieAlgebra &L, const Subspace &S) { return bracket_span(L, S, S).is_zero(); }

/// {a : [a, v] = 0 for every v in the basis of I}, as the kernel of the
/// stacked maps a -> [a, v].
inline Subspace centralizer(const GradedLieAlgebra &L, const Subspace &I)
{
    const std::size_t n = L.dim();
    Matrix m(n * std::max<std::size_t>(I.dim(), 1), n);
    for (std::size_t r = 0; r < I.dim(); ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            const Vec c = L.bracket(L.basis_vector(i), I.basis()[r]);
            for (std::size_t k = 0; k < n; ++k) {
                m(r * n + k, i) = c[k];
            }
        }
    }
    return kernel(L.field(), m);
}

/// C_L(I) for an ideal I; the result is checked to be an ideal, and graded
/// whenever I is graded.
inline Subspace centralizer_of_ideal(const GradedLieAlgebra &L, const Subspace &I)
{
    if (I.ambient_dim() != L.dim()) {
        throw AmbientMismatch("ideal lives in a space of the wrong dimension");
    }
    if (!is_ideal(L, I)) {
        throw NotAnIdeal("subspace of dimension " + std::to_string(I.dim()) + " is not an ideal of " + L.name());
    }
    Subspace c = centralizer(L, I);
    if (!is_ideal(L, c)) {
        throw TheoremViolation("centralizer of an ideal is not an ideal");
    }
    if (is_graded_subspace(L, I) && !is_graded_subspace(L, c)) {
        throw TheoremViolation("centralizer of a graded ideal is not graded");
    }
    return c;
}

inline Subspace center(const GradedLieAlgebra &L) { return centralizer(L, Subspace::full(L.dim())); }

struct StructureOptions {
    std::size_t dim_cap = 6;
    std::uint64_t enumeration_budget = 5'000'000;
};

struct StructureReport {
    std::vector<Subspace> derived_series;
    std::vector<Subspace> lower_central;
    Subspace derived_algebra;
    Subspace center;
    std::optional<Subspace> radical;
    std::optional<Subspace> nilradical;
    std::optional<std::vector<Subspace>> minimal_graded_ideals;
    std::optional<bool> monolithic;
    std::optional<Subspace> monolith;
    std::optional<bool> graded_simple;
    bool solvable = false;
    bool nilpotent = false;
    bool metabelian = false;
};

namespace detail {
inline std::uint64_t power_bounded(std::uint64_t base, std::size_t e, std::uint64_t cap)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > cap / base) {
            return cap + 1;
        }
        r *= base;
    }
    return r;
}
} // namespace detail

/// Series, center, and (below the size cap) radical, nilradical and minimal
/// graded ideals by enumeration of single-generated ideals.
inline StructureReport structure_report(const GradedLieAlgebra &L, const StructureOptions &opt = {})
{
    const Field &f = L.field();
    const std::size_t n = L.dim();
    const Subspace whole = Subspace::full(n);
    StructureReport rep;
    rep.derived_series = derived_series(L, whole);
    rep.lower_central = lower_central_series(L, whole);
    rep.derived_algebra = bracket_span(L, whole, whole);
    rep.center = center(L);
    rep.solvable = rep.derived_series.back().is_zero();
    rep.nilpotent = rep.lower_central.back().is_zero();
    rep.metabelian = rep.derived_series.size() <= 2 ? rep.solvable : rep.derived_series[2].is_zero();

    const bool small = n <= opt.dim_cap && detail::power_bounded(f.q(), n, opt.enumeration_budget) <=
                                               opt.enumeration_budget;
    if (!small) {
        return rep;
    }

    std::vector<Vec> basis;
    for (std::size_t i = 0; i < n; ++i) {
        basis.push_back(L.basis_vector(i));
    }
    Subspace rad(n), nil(n);
    std::set<Subspace> seen;
    for_each_projective(f, n, basis, [&](const Vec &x) {
        Subspace I = generated_ideal(L, {x}, false);
        if (!seen.insert(I).second) {
            return true;
        }
        if (is_solvable(L, I)) {
            rad = subspace_sum(f, rad, I);
        }
        if (is_nilpotent(L, I)) {
            nil = subspace_sum(f, nil, I);
        }
        return true;
    });
    rep.radical = rad;
    rep.nilradical = nil;

    std::set<Subspace> graded_ideals;
    for (int g = 0; g < 2; ++g) {
        std::vector<Vec> comp;
        for (std::size_t i = 0; i < n; ++i) {
            if (L.degree(i) == g) {
                comp.push_back(L.basis_vector(i));
            }
        }
        for_each_projective(f, n, comp, [&](const Vec &x) {
            graded_ideals.insert(generated_ideal(L, {x}, true));
            return true;
        });
    }
    std::vector<Subspace> minimal;
    for (const auto &I : graded_ideals) {
        bool is_min = true;
        for (const auto &J : graded_ideals) {
            if (J.dim() < I.dim() && I.contains(f, J)) {
                is_min = false;
                break;
            }
        }
        if (is_min) {
            minimal.push_back(I);
        }
    }
    rep.monolithic = minimal.size() == 1;
    if (minimal.size() == 1) {
        rep.monolith = minimal.front();
    }
    bool no_proper = true;
    for (const auto &I : graded_ideals) {
        no_proper = no_proper && I.dim() == n;
    }
    rep.graded_simple = !rep.derived_algebra.is_zero() && no_proper;
    rep.minimal_graded_ideals = std::move(minimal);
    return rep;
}

struct ProbeReport {
    bool exhaustive = false;
    bool violation_found = false;
    std::vector<Vec> generators;
    Subspace subalgebra;
    std::uint64_t tuples_checked = 0;
    std::uint64_t distinct_subalgebras = 0;

    /// A clean probe never certifies the A-property; it only covers
    /// subalgebras generated by few elements.
    std::string verdict() const
    {
        return violation_found ? "violation: nilpotent non-abelian subalgebra"
                               : "no violation found (partial check)";
    }
};

struct ProbeOptions {
    std::size_t generator_count_cap = 2;
    std::uint64_t budget = 2'000'000;
    std::uint64_t samples = 20'000;
    std::uint64_t seed = 1;
};

/// Looks for a nilpotent non-abelian subalgebra generated by at most
/// `generator_count_cap` elements; exhaustive when q^(cap*dim) fits the
/// budget, seeded sampling otherwise.
inline ProbeReport a_property_probe(const GradedLieAlgebra &L, const ProbeOptions &opt = {})
{
    const Field &f = L.field();
    const std::size_t n = L.dim();
    const std::size_t cap = std::max<std::size_t>(opt.generator_count_cap, 1);
    ProbeReport rep;
    std::set<Subspace> seen;

    auto test = [&](const std::vector<Vec> &gens) {
        ++rep.tuples_checked;
        Subspace S = generated_subalgebra(L, gens);
        if (!seen.insert(S).second) {
            return true;
        }
        if (is_nilpotent(L, S) && !is_abelian(L, S)) {
            rep.violation_found = true;
            rep.generators = gens;
            rep.subalgebra = S;
            return false;
        }
        return true;
    };

    const std::uint64_t total = detail::power_bounded(f.q(), cap * n, opt.budget);
    if (total <= opt.budget) {
        rep.exhaustive = true;
        std::vector<Vec> basis;
        for (std::size_t i = 0; i < cap * n; ++i) {
            basis.push_back(unit_vector(cap * n, i));
        }
        for_each_combination(f, cap * n, basis, [&](const Vec &flat) {
            std::vector<Vec> gens;
            for (std::size_t t = 0; t < cap; ++t) {
                gens.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(t * n),
                                  flat.begin() + static_cast<std::ptrdiff_t>((t + 1) * n));
            }
            return test(gens);
        });
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::uint32_t> dist(0, f.q() - 1);
        for (std::uint64_t s = 0; s < opt.samples; ++s) {
            std::vector<Vec> gens(cap, Vec(n));
            for (auto &g : gens) {
                for (auto &x : g) {
                    x = f.element(dist(rng));
                }
            }
            if (!test(gens)) {
                break;
            }
        }
    }
    rep.distinct_subalgebras = seen.size();
    return rep;
}

struct RootPair {
    Elem lambda;
    Subspace plus;                 // V_lambda
    Subspace minus;                // V_{-lambda}
    Subspace brackets;             // span [V_lambda, V_{-lambda}]
    bool plus_subalgebra = false;  // brackets + V_lambda closed
    bool minus_subalgebra = false; // brackets + V_{-lambda} closed
    bool graded_ideal = false;     // brackets + V_lambda + V_{-lambda}
};

struct RootReport {
    EigenBasis eigen;
    /// Homogeneous eigenvectors: for each eigenvalue, (V n L0, V n L1).
    std::vector<std::pair<Subspace, Subspace>> homogeneous_split;
    bool split_ok = false;
    bool zero_space_meets_odd = false; // V_0 n L1 != 0
    std::vector<RootPair> pairs;
    Subspace bracket_sum; // sum over pairs of span [V_lambda, V_{-lambda}]
    bool bracket_sum_is_even_part = false;
};

/// Eigen-decomposition of ad a0 for an even a0, refined to homogeneous
/// eigenvectors, with the subalgebra/ideal assertions checked per root pair.
inline RootReport root_decomposition(const GradedLieAlgebra &L, const Vec &a0)
{
    const Field &f = L.field();
    if (!L.in_component(a0, 0)) {
        throw NotHomogeneous("root decomposition needs an even element, got " + L.format(a0));
    }
    RootReport rep;
    rep.eigen = eigen_decomposition(f, L.ad_matrix(a0));
    if (!rep.eigen.diagonalizable) {
        throw NotDiagonalizable("ad(" + L.format(a0) + ") is not diagonalizable over GF(" + std::to_string(f.q()) +
                                ")");
    }
    const Subspace even = L.component(0), odd = L.component(1);
    rep.split_ok = true;
    for (const auto &p : rep.eigen.pairs) {
        Subspace e = subspace_intersect(f, p.eigenspace, even);
        Subspace o = subspace_intersect(f, p.eigenspace, odd);
        rep.split_ok = rep.split_ok && e.dim() + o.dim() == p.eigenspace.dim();
        if (p.eigenvalue.is_zero() && !o.is_zero()) {
            rep.zero_space_meets_odd = true;
        }
        rep.homogeneous_split.emplace_back(std::move(e), std::move(o));
    }
    rep.bracket_sum = Subspace(L.dim());
    for (const auto &p : rep.eigen.pairs) {
        if (p.eigenvalue.is_zero()) {
            continue;
        }
        const Elem neg = f.neg(p.eigenvalue);
        if (neg < p.eigenvalue) {
            continue; // visit each {lambda, -lambda} once
        }
        const EigenPair *m = rep.eigen.find(neg);
        RootPair rp;
        rp.lambda = p.eigenvalue;
        rp.plus = p.eigenspace;
        rp.minus = m ? m->eigenspace : Subspace(L.dim());
        rp.brackets = bracket_span(L, rp.plus, rp.minus);
        const Subspace up = subspace_sum(f, rp.brackets, rp.plus);
        const Subspace down = subspace_sum(f, rp.brackets, rp.minus);
        const Subspace all = subspace_sum(f, up, rp.minus);
        rp.plus_subalgebra = is_subalgebra(L, up);
        rp.minus_subalgebra = is_subalgebra(L, down);
        rp.graded_ideal = is_ideal(L, all) && is_graded_subspace(L, all);
        rep.bracket_sum = subspace_sum(f, rep.bracket_sum, rp.brackets);
        rep.pairs.push_back(std::move(rp));
    }
    rep.bracket_sum_is_even_part = rep.bracket_sum == even;
    return rep;
}

} // namespace sl2gid

#endif
