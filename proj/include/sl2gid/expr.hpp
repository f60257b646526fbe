#ifndef SL2GID_EXPR_HPP
#define SL2GID_EXPR_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "freelie.hpp"
#include "linalg.hpp"

namespace sl2gid {

struct ExprNode;

/// Immutable expression tree for Lie polynomials written with left-normed
/// commutators and operator slots. A chain [h, s1, ..., sm] applies each slot
/// to the running value from the right:
///   AdPower(w, k)            v -> [v, w, ..., w]          (k times)
///   AdPolyDiff(w, {(c, e)})  v -> sum c [v, w, ..., w]    (e times each)
/// Coefficients are integers, reduced into whatever field evaluates them.
class LieExpr {
public:
    LieExpr();

    static LieExpr var(Var v);
    /// A one-term sum is the term itself.
    static LieExpr sum(std::vector<LieExpr> terms);
    static LieExpr scale(long long c, LieExpr e);
    static LieExpr zero() { return sum({}); }
    /// Low-level constructor; prefer the named factories and chain().
    static LieExpr make(ExprNode n);

    const ExprNode &node() const noexcept { return *node_; }

    friend bool operator==(const LieExpr &a, const LieExpr &b);

private:
    explicit LieExpr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

struct AdPower {
    LieExpr w;
    unsigned k = 1;
    friend bool operator==(const AdPower &, const AdPower &) = default;
};

struct AdPolyDiff {
    LieExpr w;
    std::vector<std::pair<long long, unsigned>> terms; // (coefficient, exponent)
    friend bool operator==(const AdPolyDiff &, const AdPolyDiff &) = default;

    unsigned max_exponent() const
    {
        unsigned m = 0;
        for (const auto &t : terms) {
            m = std::max(m, t.second);
        }
        return m;
    }
};

using Slot = std::variant<AdPower, AdPolyDiff>;

struct VarNode {
    Var v;
    friend bool operator==(const VarNode &, const VarNode &) = default;
};
struct SumNode {
    std::vector<LieExpr> terms;
    friend bool operator==(const SumNode &, const SumNode &) = default;
};
struct ScaleNode {
    long long c = 1;
    LieExpr e;
    friend bool operator==(const ScaleNode &, const ScaleNode &) = default;
};
struct ChainNode {
    LieExpr head;
    std::vector<Slot> slots;
    friend bool operator==(const ChainNode &, const ChainNode &) = default;
};

struct ExprNode {
    std::variant<VarNode, SumNode, ScaleNode, ChainNode> v;
    friend bool operator==(const ExprNode &, const ExprNode &) = default;
};

inline LieExpr LieExpr::make(ExprNode n) { return LieExpr(std::make_shared<const ExprNode>(std::move(n))); }
inline LieExpr::LieExpr() : LieExpr(make({SumNode{}})) {}
inline LieExpr LieExpr::var(Var v) { return make({VarNode{v}}); }
inline LieExpr LieExpr::sum(std::vector<LieExpr> terms)
{
    if (terms.size() == 1) {
        return std::move(terms.front());
    }
    return make({SumNode{std::move(terms)}});
}
inline LieExpr LieExpr::scale(long long c, LieExpr e) { return make({ScaleNode{c, std::move(e)}}); }
inline bool operator==(const LieExpr &a, const LieExpr &b) { return a.node_ == b.node_ || *a.node_ == *b.node_; }

inline LieExpr chain(LieExpr head, std::vector<Slot> slots)
{
    if (slots.empty()) {
        throw std::invalid_argument("bracket chain without slots");
    }
    for (const auto &s : slots) {
        if (const auto *p = std::get_if<AdPower>(&s); p && p->k < 1) {
            throw std::invalid_argument("ad-power exponent must be >= 1");
        }
        if (const auto *d = std::get_if<AdPolyDiff>(&s)) {
            if (d->terms.empty() ||
                std::any_of(d->terms.begin(), d->terms.end(), [](const auto &t) { return t.second < 1; })) {
                throw std::invalid_argument("operator polynomial exponents must be >= 1");
            }
        }
    }
    return LieExpr::make({ChainNode{std::move(head), std::move(slots)}});
}

inline LieExpr bracket(LieExpr a, LieExpr b) { return chain(std::move(a), {AdPower{std::move(b), 1}}); }

/// Left-normed [e0, e1, ..., en].
inline LieExpr left_normed(const std::vector<LieExpr> &items)
{
    if (items.size() < 2) {
        throw std::invalid_argument("left-normed commutator needs at least two entries");
    }
    std::vector<Slot> slots;
    for (std::size_t i = 1; i < items.size(); ++i) {
        slots.emplace_back(AdPower{items[i], 1});
    }
    return chain(items[0], std::move(slots));
}

inline LieExpr operator+(const LieExpr &a, const LieExpr &b) { return LieExpr::sum({a, b}); }
inline LieExpr operator-(const LieExpr &a, const LieExpr &b) { return LieExpr::sum({a, LieExpr::scale(-1, b)}); }

// ---------------------------------------------------------------------------
// Static properties

inline void collect_variables(const LieExpr &e, std::set<Var> &out)
{
    std::visit(
        [&](const auto &n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarNode>) {
                out.insert(n.v);
            } else if constexpr (std::is_same_v<T, SumNode>) {
                for (const auto &t : n.terms) {
                    collect_variables(t, out);
                }
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                collect_variables(n.e, out);
            } else {
                collect_variables(n.head, out);
                for (const auto &s : n.slots) {
                    std::visit([&](const auto &sl) { collect_variables(sl.w, out); }, s);
                }
            }
        },
        e.node().v);
}

inline std::set<Var> variables(const LieExpr &e)
{
    std::set<Var> out;
    collect_variables(e, out);
    return out;
}

namespace detail {
inline MultiDegree md_max(const MultiDegree &a, const MultiDegree &b)
{
    MultiDegree out = a;
    for (const auto &[v, c] : b.counts()) {
        out.set(v, std::max(out[v], c));
    }
    return out;
}
inline MultiDegree md_add(const MultiDegree &a, const MultiDegree &b, unsigned times = 1)
{
    MultiDegree out = a;
    for (const auto &[v, c] : b.counts()) {
        out.set(v, out[v] + c * times);
    }
    return out;
}
} // namespace detail

/// Componentwise upper bound on the multidegrees of the terms of e after
/// expansion; none when e is structurally zero (an empty sum, or a chain
/// whose head or some slot operand is zero).
inline std::optional<MultiDegree> degree_bound(const LieExpr &e)
{
    return std::visit(
        [](const auto &n) -> std::optional<MultiDegree> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarNode>) {
                return MultiDegree{{n.v, 1}};
            } else if constexpr (std::is_same_v<T, SumNode>) {
                std::optional<MultiDegree> acc;
                for (const auto &t : n.terms) {
                    if (auto b = degree_bound(t)) {
                        acc = acc ? detail::md_max(*acc, *b) : *b;
                    }
                }
                return acc;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return n.c == 0 ? std::nullopt : degree_bound(n.e);
            } else {
                auto acc = degree_bound(n.head);
                if (!acc) {
                    return std::nullopt;
                }
                for (const auto &s : n.slots) {
                    const bool ok = std::visit(
                        [&](const auto &sl) {
                            auto b = degree_bound(sl.w);
                            if (!b) {
                                return false;
                            }
                            using S = std::decay_t<decltype(sl)>;
                            if constexpr (std::is_same_v<S, AdPower>) {
                                acc = detail::md_add(*acc, *b, sl.k);
                            } else {
                                acc = detail::md_add(*acc, *b, sl.max_exponent());
                            }
                            return true;
                        },
                        s);
                    if (!ok) {
                        return std::nullopt;
                    }
                }
                return acc;
            }
        },
        e.node().v);
}

/// Set of Z2-degrees the terms of e can have: bit 0 even, bit 1 odd, bit 2
/// "ungraded" (an x variable occurs). Zero expressions give 0.
inline unsigned parity_mask(const LieExpr &e)
{
    auto combine = [](unsigned a, unsigned b) -> unsigned {
        if (a == 0 || b == 0) {
            return 0;
        }
        if ((a | b) & 4U) {
            return 4;
        }
        unsigned out = 0;
        for (unsigned i = 0; i < 2; ++i) {
            for (unsigned j = 0; j < 2; ++j) {
                if ((a >> i & 1U) && (b >> j & 1U)) {
                    out |= 1U << ((i + j) % 2);
                }
            }
        }
        return out;
    };
    // degrees of a product of k factors, each with degree mask m
    auto power = [](unsigned m, unsigned k) -> unsigned {
        if (m == 0 || m == 3 || (m & 4U)) {
            return m & 4U ? 4U : m;
        }
        return m == 1 ? 1U : (k % 2 == 0 ? 1U : 2U);
    };
    return std::visit(
        [&](const auto &n) -> unsigned {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarNode>) {
                return n.v.kind == VarKind::plain ? 4U : 1U << static_cast<unsigned>(n.v.kind);
            } else if constexpr (std::is_same_v<T, SumNode>) {
                unsigned m = 0;
                for (const auto &t : n.terms) {
                    m |= parity_mask(t);
                }
                return m;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return n.c == 0 ? 0U : parity_mask(n.e);
            } else {
                unsigned acc = parity_mask(n.head);
                for (const auto &s : n.slots) {
                    acc = std::visit(
                        [&](const auto &sl) {
                            const unsigned w = parity_mask(sl.w);
                            using S = std::decay_t<decltype(sl)>;
                            if constexpr (std::is_same_v<S, AdPower>) {
                                return combine(acc, power(w, sl.k));
                            } else {
                                unsigned m = 0;
                                for (const auto &t : sl.terms) {
                                    m |= combine(acc, power(w, t.second));
                                }
                                return m;
                            }
                        },
                        s);
                }
                return acc;
            }
        },
        e.node().v);
}

/// True when every term of e has Z2-degree g (vacuously for zero).
inline bool has_parity(const LieExpr &e, int g)
{
    const unsigned m = parity_mask(e);
    return (m & ~(1U << static_cast<unsigned>(g))) == 0;
}

// ---------------------------------------------------------------------------
// Evaluation in a finite-dimensional algebra

enum class EvalStrategy {
    /// Slots with large exponents apply a cached matrix of v -> [v, w].
    matrix,
    /// Every bracket goes through the structure constants; used to recheck
    /// counterexamples along an independent path.
    direct,
};

namespace detail {

inline Vec eval_expr(const GradedLieAlgebra &L, const LieExpr &e, const Assignment &a, EvalStrategy strat);

// v -> [v, w] applied `times` times; `apply_once` encapsulates the strategy.
struct RightAction {
    const GradedLieAlgebra &L;
    Vec w;
    EvalStrategy strat;
    std::optional<Matrix> m;

    RightAction(const GradedLieAlgebra &alg, Vec wv, EvalStrategy s, unsigned max_power)
        : L(alg), w(std::move(wv)), strat(s)
    {
        if (strat == EvalStrategy::matrix && max_power > 2) {
            // [v, w] = -[w, v]
            Matrix ad = L.ad_matrix(w);
            Matrix r(ad.rows(), ad.cols());
            for (std::size_t i = 0; i < ad.rows(); ++i) {
                for (std::size_t j = 0; j < ad.cols(); ++j) {
                    r(i, j) = L.field().neg(ad(i, j));
                }
            }
            m = std::move(r);
        }
    }
    Vec apply_once(const Vec &v) const { return m ? apply(L.field(), *m, v) : L.bracket(v, w); }
};

inline Vec eval_expr(const GradedLieAlgebra &L, const LieExpr &e, const Assignment &a, EvalStrategy strat)
{
    const Field &f = L.field();
    return std::visit(
        [&](const auto &n) -> Vec {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarNode>) {
                auto it = a.find(n.v);
                if (it == a.end()) {
                    throw MissingAssignment("no value assigned to " + n.v.name());
                }
                L.check(it->second);
                return it->second;
            } else if constexpr (std::is_same_v<T, SumNode>) {
                Vec acc = L.zero();
                for (const auto &t : n.terms) {
                    axpy(f, Field::one(), eval_expr(L, t, a, strat), acc);
                }
                return acc;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return scale(f, f.from_int(n.c), eval_expr(L, n.e, a, strat));
            } else {
                Vec v = eval_expr(L, n.head, a, strat);
                for (const auto &s : n.slots) {
                    if (is_zero(v)) {
                        return v;
                    }
                    if (const auto *p = std::get_if<AdPower>(&s)) {
                        RightAction act(L, eval_expr(L, p->w, a, strat), strat, p->k);
                        for (unsigned i = 0; i < p->k && !is_zero(v); ++i) {
                            v = act.apply_once(v);
                        }
                    } else {
                        const auto &d = std::get<AdPolyDiff>(s);
                        const unsigned top = d.max_exponent();
                        RightAction act(L, eval_expr(L, d.w, a, strat), strat, top);
                        Vec acc = L.zero();
                        Vec cur = v;
                        for (unsigned e2 = 1; e2 <= top; ++e2) {
                            cur = act.apply_once(cur);
                            for (const auto &[c, ex] : d.terms) {
                                if (ex == e2) {
                                    axpy(f, f.from_int(c), cur, acc);
                                }
                            }
                        }
                        v = std::move(acc);
                    }
                }
                return v;
            }
        },
        e.node().v);
}

} // namespace detail

/// Value of e at the assignment. In graded mode each y (z) variable must be
/// assigned an even (odd) element; x variables are unconstrained.
inline Vec evaluate(const GradedLieAlgebra &L, const LieExpr &e, const Assignment &a, bool graded = true,
                    EvalStrategy strat = EvalStrategy::matrix)
{
    if (graded) {
        for (const auto &[v, val] : a) {
            if (const auto p = v.parity(); p && !L.in_component(val, *p)) {
                throw ParityError(v.name() + " assigned " + L.format(val) + ", which is not of degree " +
                                  std::to_string(*p));
            }
        }
    }
    return detail::eval_expr(L, e, a, strat);
}

// ---------------------------------------------------------------------------
// Symbolic expansion

namespace detail {

inline void check_caps(const AssocPoly &p, const MultiDegree &caps)
{
    for (const auto &[w, c] : p) {
        const MultiDegree md = MultiDegree::of(w);
        if (!md.within(caps)) {
            throw ExpansionTooLarge("term of multidegree " + md.to_string() + " exceeds caps " + caps.to_string());
        }
    }
}

inline void assoc_axpy(const Field &f, Elem c, const AssocPoly &x, AssocPoly &y)
{
    if (c.is_zero()) {
        return;
    }
    for (const auto &[w, a] : x) {
        const Elem t = f.mul(c, a);
        auto [it, fresh] = y.emplace(w, t);
        if (!fresh) {
            it->second = f.add(it->second, t);
        }
    }
    std::erase_if(y, [](const auto &kv) { return kv.second.is_zero(); });
}

inline AssocPoly expand_assoc(const Field &f, const LieExpr &e, const MultiDegree &caps)
{
    return std::visit(
        [&](const auto &n) -> AssocPoly {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarNode>) {
                AssocPoly p{{Word{n.v}, Field::one()}};
                check_caps(p, caps);
                return p;
            } else if constexpr (std::is_same_v<T, SumNode>) {
                AssocPoly acc;
                for (const auto &t : n.terms) {
                    assoc_axpy(f, Field::one(), expand_assoc(f, t, caps), acc);
                }
                return acc;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                AssocPoly acc;
                if (f.from_int(n.c).is_zero()) {
                    return acc;
                }
                assoc_axpy(f, f.from_int(n.c), expand_assoc(f, n.e, caps), acc);
                return acc;
            } else {
                AssocPoly v = expand_assoc(f, n.head, caps);
                for (const auto &s : n.slots) {
                    if (v.empty()) {
                        return v;
                    }
                    if (const auto *p = std::get_if<AdPower>(&s)) {
                        const AssocPoly w = expand_assoc(f, p->w, caps);
                        for (unsigned i = 0; i < p->k && !v.empty(); ++i) {
                            v = assoc_commutator(f, v, w);
                            check_caps(v, caps);
                        }
                    } else {
                        const auto &d = std::get<AdPolyDiff>(s);
                        const AssocPoly w = expand_assoc(f, d.w, caps);
                        AssocPoly acc, cur = v;
                        for (unsigned e2 = 1; e2 <= d.max_exponent() && !cur.empty(); ++e2) {
                            cur = assoc_commutator(f, cur, w);
                            check_caps(cur, caps);
                            for (const auto &[c, ex] : d.terms) {
                                if (ex == e2) {
                                    assoc_axpy(f, f.from_int(c), cur, acc);
                                }
                            }
                        }
                        v = std::move(acc);
                    }
                }
                return v;
            }
        },
        e.node().v);
}

} // namespace detail

/// Expands e into Lyndon coordinates. Throws ExpansionTooLarge as soon as a
/// term (or the static degree bound) leaves the caps.
inline LiePolynomial expand(const Field &f, const LieExpr &e, const MultiDegree &caps)
{
    const auto bound = degree_bound(e);
    if (!bound) {
        return {};
    }
    if (!bound->within(caps)) {
        throw ExpansionTooLarge("degree bound " + bound->to_string() + " exceeds caps " + caps.to_string());
    }
    return LiePolynomial::from_assoc(f, detail::expand_assoc(f, e, caps));
}

/// Lyndon-basis form of a bracket expression; no caps beyond its own degree bound.
inline LiePolynomial normalize(const Field &f, const LieExpr &e)
{
    const auto bound = degree_bound(e);
    if (!bound) {
        return {};
    }
    return expand(f, e, *bound);
}

/// Standard bracketing of a Lyndon word as an expression.
inline LieExpr word_expr(std::span<const Var> w)
{
    if (w.size() == 1) {
        return LieExpr::var(w[0]);
    }
    const std::size_t s = standard_split(w);
    return bracket(word_expr(w.first(s)), word_expr(w.subspan(s)));
}

/// Expression form of a Lie polynomial; coefficients must lie in the prime field.
inline LieExpr to_expr(const Field &f, const LiePolynomial &p)
{
    std::vector<LieExpr> terms;
    for (const auto &[w, c] : p.terms()) {
        if (c.v >= f.p()) {
            throw std::invalid_argument("coefficient outside the prime field");
        }
        terms.push_back(c == Field::one() ? word_expr(w) : LieExpr::scale(c.v, word_expr(w)));
    }
    if (terms.size() == 1) {
        return terms.front();
    }
    return LieExpr::sum(std::move(terms));
}

// ---------------------------------------------------------------------------
// Substitution

using Substitution = std::map<Var, LieExpr>;

/// Replaces variables by expressions. In graded mode every y (z) variable
/// must be sent to an even (odd) expression.
inline LieExpr substitute(const LieExpr &e, const Substitution &s, bool graded = true)
{
    if (graded) {
        for (const auto &[v, img] : s) {
            if (const auto p = v.parity(); p && !has_parity(img, *p)) {
                throw ParityError("image of " + v.name() + " is not of degree " + std::to_string(*p));
            }
        }
    }
    return std::visit(
        [&](const auto &n) -> LieExpr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarNode>) {
                auto it = s.find(n.v);
                return it == s.end() ? e : it->second;
            } else if constexpr (std::is_same_v<T, SumNode>) {
                std::vector<LieExpr> terms;
                for (const auto &t : n.terms) {
                    terms.push_back(substitute(t, s, false));
                }
                return LieExpr::sum(std::move(terms));
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return LieExpr::scale(n.c, substitute(n.e, s, false));
            } else {
                std::vector<Slot> slots;
                for (const auto &sl : n.slots) {
                    slots.push_back(std::visit(
                        [&](const auto &x) -> Slot {
                            auto copy = x;
                            copy.w = substitute(x.w, s, false);
                            return copy;
                        },
                        sl));
                }
                return chain(substitute(n.head, s, false), std::move(slots));
            }
        },
        e.node().v);
}

inline LieExpr substitute(const Field &f, const LiePolynomial &p, const Substitution &s, bool graded = true)
{
    return substitute(to_expr(f, p), s, graded);
}

// ---------------------------------------------------------------------------
// Named polynomials

namespace builtins {

inline LieExpr X(std::uint16_t i) { return LieExpr::var(x(i)); }
inline LieExpr Y(std::uint16_t i) { return LieExpr::var(y(i)); }
inline LieExpr Z(std::uint16_t i) { return LieExpr::var(z(i)); }

/// (x1) f(ad x2) with f(t) = t^(q^2+2) - t^3.
inline LieExpr sem1(unsigned q)
{
    return chain(X(1), {AdPolyDiff{X(2), {{1, q * q + 2}, {-1, 3}}}});
}

/// Six-term identity of sl2 over GF(q). Every slot after the head is an
/// operator: w^k is (ad w)^k, (w^a - w^b) is (ad w)^a - (ad w)^b, and ([u])^k
/// evaluates u first. The inner element [(x1)^{q^2} - x1, x2] is read as
/// -(x2 ((ad x1)^{q^2} - ad x1)).
inline LieExpr sem2(unsigned q)
{
    const unsigned qq = q * q;
    const LieExpr x1 = X(1), x2 = X(2);
    const LieExpr x1x2 = bracket(x1, x2);
    const AdPolyDiff x1_frob{x1, {{1, qq}, {-1, 1}}};
    const AdPolyDiff x2_frob{x2, {{1, qq}, {-1, 1}}};

    const LieExpr t1 = x1x2;
    const LieExpr t2 = chain(x1, {AdPower{x2, 1}, AdPower{x1, qq - 1}});
    const LieExpr t3 = chain(x1, {AdPower{x2, q}});
    const LieExpr t4 = chain(x1, {AdPower{x2, 1}, AdPower{x1, qq - 1}, AdPower{x2, q - 1}});
    const LieExpr t5 = chain(x1, {AdPower{x2, 1}, x1_frob, AdPower{x1x2, q - 2}, x2_frob});
    const LieExpr u = LieExpr::scale(-1, chain(x2, {x1_frob}));
    const LieExpr t6 = chain(x2, {AdPower{u, q}, AdPolyDiff{x2, {{1, qq - 2}, {-1, q - 2}}}});

    return LieExpr::sum({t1, LieExpr::scale(-1, t2), LieExpr::scale(-1, t3), t4, t5, LieExpr::scale(-1, t6)});
}

inline LieExpr yy() { return bracket(Y(1), Y(2)); }
inline LieExpr zz() { return bracket(Z(1), Z(2)); }

/// [z1, y1^q] - [z1, y1].
inline LieExpr zyq_zy(unsigned q) { return chain(Z(1), {AdPower{Y(1), q}}) - bracket(Z(1), Y(1)); }

inline Substitution graded_split()
{
    return {{x(1), Y(1) + Z(1)}, {x(2), Y(2) + Z(2)}};
}

/// sem1(y1+z1, y2+z2), sem2(y1+z1, y2+z2), [y1,y2], [z1,y1^q] - [z1,y1].
inline std::vector<LieExpr> set_S(unsigned q)
{
    return {substitute(sem1(q), graded_split(), false), substitute(sem2(q), graded_split(), false), yy(),
            zyq_zy(q)};
}

/// [y1,y2], [z1,z2], [z1,y1^q] - [z1,y1].
inline std::vector<LieExpr> lema5_set(unsigned q) { return {yy(), zz(), zyq_zy(q)}; }

} // namespace builtins

} // namespace sl2gid

#endif
