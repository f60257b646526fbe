#ifndef SL2GID_FREELIE_HPP
#define SL2GID_FREELIE_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"

namespace sl2gid {

/// y variables are even, z variables odd; x variables carry no degree and
/// are used for ordinary (ungraded) identities.
enum class VarKind : std::uint8_t { even = 0, odd = 1, plain = 2 };

/// Generator of the free Lie algebra. The declaration order of the members
/// fixes the alphabet order y1 < y2 < ... < z1 < z2 < ... < x1 < ...
struct Var {
    VarKind kind = VarKind::even;
    std::uint16_t index = 1;

    friend constexpr auto operator<=>(const Var &, const Var &) = default;

    std::optional<int> parity() const
    {
        if (kind == VarKind::plain) {
            return std::nullopt;
        }
        return static_cast<int>(kind);
    }

    std::string name() const
    {
        const char c = kind == VarKind::even ? 'y' : kind == VarKind::odd ? 'z' : 'x';
        return c + std::to_string(index);
    }
};

inline Var y(std::uint16_t i) { return {VarKind::even, i}; }
inline Var z(std::uint16_t i) { return {VarKind::odd, i}; }
inline Var x(std::uint16_t i) { return {VarKind::plain, i}; }

using Word = std::vector<Var>;

/// w is Lyndon iff it is strictly smaller than each of its proper suffixes.
inline bool is_lyndon(std::span<const Var> w)
{
    if (w.empty()) {
        return false;
    }
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<std::ptrdiff_t>(i), w.end())) {
            return false;
        }
    }
    return true;
}

/// Standard factorisation w = uv with v the longest proper Lyndon suffix;
/// returns |u|.
inline std::size_t standard_split(std::span<const Var> w)
{
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (is_lyndon(w.subspan(i))) {
            return i;
        }
    }
    throw std::logic_error("standard factorisation of a word of length < 2");
}

inline std::string bracketing(std::span<const Var> w)
{
    if (w.size() == 1) {
        return w[0].name();
    }
    const std::size_t s = standard_split(w);
    return "[" + bracketing(w.first(s)) + "," + bracketing(w.subspan(s)) + "]";
}

/// Occurrence count of every variable in a monomial.
class MultiDegree {
public:
    MultiDegree() = default;
    MultiDegree(std::initializer_list<std::pair<const Var, unsigned>> init)
    {
        for (const auto &[v, c] : init) {
            if (c > 0) {
                counts_[v] = c;
            }
        }
    }

    static MultiDegree of(std::span<const Var> w)
    {
        MultiDegree md;
        for (const auto &v : w) {
            ++md.counts_[v];
        }
        return md;
    }

    const std::map<Var, unsigned> &counts() const noexcept { return counts_; }
    unsigned operator[](Var v) const
    {
        auto it = counts_.find(v);
        return it == counts_.end() ? 0 : it->second;
    }
    void set(Var v, unsigned c)
    {
        if (c == 0) {
            counts_.erase(v);
        } else {
            counts_[v] = c;
        }
    }

    unsigned total() const
    {
        unsigned t = 0;
        for (const auto &[v, c] : counts_) {
            t += c;
        }
        return t;
    }

    /// Z2-degree of any monomial with this multidegree; none if an x variable occurs.
    std::optional<int> parity() const
    {
        int p = 0;
        for (const auto &[v, c] : counts_) {
            const auto vp = v.parity();
            if (!vp) {
                return std::nullopt;
            }
            p += *vp * static_cast<int>(c);
        }
        return p % 2;
    }

    /// Componentwise <=.
    bool within(const MultiDegree &caps) const
    {
        for (const auto &[v, c] : counts_) {
            if (c > caps[v]) {
                return false;
            }
        }
        return true;
    }

    std::string to_string() const
    {
        std::string s = "(";
        bool first = true;
        for (const auto &[v, c] : counts_) {
            s += (first ? "" : ",") + v.name() + ":" + std::to_string(c);
            first = false;
        }
        return s + ")";
    }

    friend bool operator==(const MultiDegree &, const MultiDegree &) = default;
    friend auto operator<=>(const MultiDegree &a, const MultiDegree &b) { return a.counts_ <=> b.counts_; }

private:
    std::map<Var, unsigned> counts_;
};

/// All Lyndon words of the given multidegree, in increasing order. Their
/// standard bracketings form a basis of the multidegree component of the
/// free Lie algebra.
inline std::vector<Word> lyndon_basis(const MultiDegree &md)
{
    Word w;
    for (const auto &[v, c] : md.counts()) {
        w.insert(w.end(), c, v);
    }
    std::vector<Word> out;
    if (w.empty()) {
        return out;
    }
    do {
        if (is_lyndon(w)) {
            out.push_back(w);
        }
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

/// Element of the free associative algebra with integer coefficients,
/// used for exact field-independent expansions of bracketings.
using IntAssoc = std::map<Word, long long>;

namespace detail {

inline IntAssoc commutator(const IntAssoc &a, const IntAssoc &b)
{
    IntAssoc out;
    for (const auto &[u, cu] : a) {
        for (const auto &[v, cv] : b) {
            Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            Word vu = v;
            vu.insert(vu.end(), u.begin(), u.end());
            out[uv] += cu * cv;
            out[vu] -= cu * cv;
        }
    }
    std::erase_if(out, [](const auto &kv) { return kv.second == 0; });
    return out;
}

struct WordHash {
    std::size_t operator()(const Word &w) const noexcept
    {
        std::size_t h = 1469598103934665603ULL;
        for (const auto &v : w) {
            h ^= (static_cast<std::size_t>(v.kind) << 16U) ^ v.index;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

} // namespace detail

/// Associative expansion of the standard bracketing of a Lyndon word.
/// Cached per thread.
inline const IntAssoc &lyndon_expansion(const Word &w)
{
    thread_local std::unordered_map<Word, IntAssoc, detail::WordHash> cache;
    if (auto it = cache.find(w); it != cache.end()) {
        return it->second;
    }
    IntAssoc e;
    if (w.size() == 1) {
        e[w] = 1;
    } else {
        const std::size_t s = standard_split(w);
        const Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
        const Word v(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
        e = detail::commutator(lyndon_expansion(u), lyndon_expansion(v));
    }
    return cache.emplace(w, std::move(e)).first->second;
}

/// Element of the free associative algebra over GF(q).
using AssocPoly = std::map<Word, Elem>;

/// Element of the free Lie algebra, in coordinates on the Lyndon basis.
/// Keys are Lyndon words (standing for their standard bracketings); no zero
/// coefficients are stored.
class LiePolynomial {
public:
    LiePolynomial() = default;

    static LiePolynomial monomial(const Word &w, Elem c = Field::one())
    {
        if (!is_lyndon(w)) {
            throw std::invalid_argument("monomial key is not a Lyndon word");
        }
        LiePolynomial p;
        if (!c.is_zero()) {
            p.terms_[w] = c;
        }
        return p;
    }
    static LiePolynomial variable(Var v) { return monomial({v}); }

    const std::map<Word, Elem> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Elem coefficient(const Word &w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Elem{} : it->second;
    }

    void add_term(const Field &f, const Word &w, Elem c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, fresh] = terms_.emplace(w, c);
        if (!fresh) {
            it->second = f.add(it->second, c);
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    AssocPoly to_assoc(const Field &f) const
    {
        AssocPoly out;
        for (const auto &[w, c] : terms_) {
            for (const auto &[u, k] : lyndon_expansion(w)) {
                const Elem t = f.mul(c, f.from_int(k));
                auto [it, fresh] = out.emplace(u, t);
                if (!fresh) {
                    it->second = f.add(it->second, t);
                }
            }
        }
        std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
        return out;
    }

    /// Lyndon coordinates of a Lie element given in associative form. The
    /// expansion of a Lyndon word w is w plus lexicographically larger
    /// rearrangements of w, so the smallest surviving word is always the next
    /// Lyndon key.
    static LiePolynomial from_assoc(const Field &f, AssocPoly a)
    {
        LiePolynomial p;
        while (!a.empty()) {
            const auto it = a.begin();
            const Word w = it->first;
            const Elem c = it->second;
            if (!is_lyndon(w)) {
                throw std::logic_error("associative polynomial is not a Lie element");
            }
            p.terms_[w] = c;
            for (const auto &[u, k] : lyndon_expansion(w)) {
                const Elem t = f.mul(c, f.from_int(-k));
                if (t.is_zero()) {
                    continue;
                }
                auto [jt, fresh] = a.emplace(u, t);
                if (!fresh) {
                    jt->second = f.add(jt->second, t);
                    if (jt->second.is_zero()) {
                        a.erase(jt);
                    }
                }
            }
        }
        return p;
    }

    std::map<MultiDegree, LiePolynomial> components() const
    {
        std::map<MultiDegree, LiePolynomial> out;
        for (const auto &[w, c] : terms_) {
            out[MultiDegree::of(w)].terms_[w] = c;
        }
        return out;
    }

    std::string to_string(const Field &f) const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto &[w, c] : terms_) {
            std::string coef;
            bool negative = false;
            if (f.k() == 1 && c.v > f.p() / 2) {
                negative = true;
                const Elem m = f.neg(c);
                coef = m == Field::one() ? "" : f.to_string(m) + "*";
            } else {
                coef = c == Field::one() ? "" : f.to_string(c) + "*";
            }
            if (s.empty()) {
                s += negative ? "-" : "";
            } else {
                s += negative ? " - " : " + ";
            }
            s += coef + bracketing(w);
        }
        return s;
    }

    friend bool operator==(const LiePolynomial &, const LiePolynomial &) = default;

private:
    std::map<Word, Elem> terms_;
};

inline LiePolynomial lie_add(const Field &f, const LiePolynomial &a, const LiePolynomial &b, Elem scale_b = Field::one())
{
    LiePolynomial out = a;
    for (const auto &[w, c] : b.terms()) {
        out.add_term(f, w, f.mul(scale_b, c));
    }
    return out;
}

inline LiePolynomial lie_scale(const Field &f, Elem s, const LiePolynomial &a)
{
    LiePolynomial out;
    for (const auto &[w, c] : a.terms()) {
        out.add_term(f, w, f.mul(s, c));
    }
    return out;
}

inline AssocPoly assoc_commutator(const Field &f, const AssocPoly &a, const AssocPoly &b)
{
    AssocPoly out;
    auto put = [&](Word w, Elem c) {
        auto [it, fresh] = out.emplace(std::move(w), c);
        if (!fresh) {
            it->second = f.add(it->second, c);
        }
    };
    for (const auto &[u, cu] : a) {
        for (const auto &[v, cv] : b) {
            const Elem c = f.mul(cu, cv);
            Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            Word vu = v;
            vu.insert(vu.end(), u.begin(), u.end());
            put(std::move(uv), c);
            put(std::move(vu), f.neg(c));
        }
    }
    std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
}

inline LiePolynomial lie_bracket(const Field &f, const LiePolynomial &a, const LiePolynomial &b)
{
    return LiePolynomial::from_assoc(f, assoc_commutator(f, a.to_assoc(f), b.to_assoc(f)));
}

inline std::map<MultiDegree, LiePolynomial> multihomog_components(const LiePolynomial &p) { return p.components(); }

/// Assignment of algebra elements to variables.
using Assignment = std::map<Var, Vec>;

/// Value of the standard bracketing of a Lyndon word.
inline Vec evaluate_word(const GradedLieAlgebra &L, std::span<const Var> w, const Assignment &a)
{
    if (w.size() == 1) {
        auto it = a.find(w[0]);
        if (it == a.end()) {
            throw MissingAssignment("no value assigned to " + w[0].name());
        }
        return it->second;
    }
    const std::size_t s = standard_split(w);
    return L.bracket(evaluate_word(L, w.first(s), a), evaluate_word(L, w.subspan(s), a));
}

inline Vec evaluate(const GradedLieAlgebra &L, const LiePolynomial &p, const Assignment &a)
{
    Vec out = L.zero();
    for (const auto &[w, c] : p.terms()) {
        axpy(L.field(), c, evaluate_word(L, w, a), out);
    }
    return out;
}

} // namespace sl2gid

#endif
