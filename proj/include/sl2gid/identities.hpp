#ifndef SL2GID_IDENTITIES_HPP
#define SL2GID_IDENTITIES_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "expr_io.hpp"
#include "freelie.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace sl2gid {

// ---------------------------------------------------------------------------
// Windows and ambient spaces

/// Finite piece of the free Lie algebra: every nonzero multidegree d with
/// d <= caps componentwise, or only d = caps when `exact` is set.
struct Window {
    MultiDegree caps;
    bool exact = false;

    std::vector<Var> variables() const
    {
        std::vector<Var> out;
        for (const auto &[v, c] : caps.counts()) {
            out.push_back(v);
        }
        return out;
    }

    std::vector<MultiDegree> multidegrees() const
    {
        if (exact) {
            return {caps};
        }
        const auto vars = variables();
        std::vector<unsigned> d(vars.size(), 0);
        std::vector<MultiDegree> out;
        for (;;) {
            std::size_t i = 0;
            while (i < d.size() && d[i] == caps[vars[i]]) {
                d[i] = 0;
                ++i;
            }
            if (i == d.size()) {
                break;
            }
            ++d[i];
            MultiDegree md;
            for (std::size_t j = 0; j < vars.size(); ++j) {
                md.set(vars[j], d[j]);
            }
            out.push_back(md);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// "y1:1,z1:2", prefixed with '=' when exact.
    std::string to_string() const
    {
        std::string s = exact ? "=" : "";
        bool first = true;
        for (const auto &[v, c] : caps.counts()) {
            s += (first ? "" : ",") + v.name() + ":" + std::to_string(c);
            first = false;
        }
        return s;
    }

    static Window parse(std::string_view text)
    {
        Window w;
        auto trim = [](std::string_view s) {
            while (!s.empty() && s.front() == ' ') {
                s.remove_prefix(1);
            }
            while (!s.empty() && s.back() == ' ') {
                s.remove_suffix(1);
            }
            return s;
        };
        text = trim(text);
        if (!text.empty() && text.front() == '=') {
            w.exact = true;
            text.remove_prefix(1);
        }
        while (!text.empty()) {
            const std::size_t comma = text.find(',');
            const std::string_view item = trim(text.substr(0, comma));
            text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
            const std::size_t colon = item.find(':');
            if (item.size() < 2 || colon == std::string_view::npos ||
                (item[0] != 'y' && item[0] != 'z' && item[0] != 'x')) {
                throw ParseError("window entry '" + std::string(item) + "' is not of the form y1:3");
            }
            const auto num = [&](std::string_view s) {
                if (s.empty() || s.size() > 6 ||
                    !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                    throw ParseError("bad number '" + std::string(s) + "' in window entry '" + std::string(item) + "'");
                }
                return static_cast<unsigned>(std::stoul(std::string(s)));
            };
            const unsigned idx = num(item.substr(1, colon - 1));
            const unsigned cap = num(item.substr(colon + 1));
            if (idx < 1 || idx > 65535 || cap < 1) {
                throw ParseError("window entry '" + std::string(item) + "' out of range");
            }
            const auto i = static_cast<std::uint16_t>(idx);
            const Var v = item[0] == 'y' ? y(i) : item[0] == 'z' ? z(i) : x(i);
            if (w.caps[v] != 0) {
                throw ParseError("variable " + v.name() + " repeated in window");
            }
            w.caps.set(v, cap);
        }
        if (w.caps.counts().empty()) {
            throw ParseError("empty window");
        }
        return w;
    }

    friend bool operator==(const Window &, const Window &) = default;
};

/// Every exact multidegree of total degree <= n over y1..ya, z1..zb with
/// a + b <= n and each variable occurring. Up to renaming variables of equal
/// parity this covers all multidegrees of total degree <= n.
inline std::vector<Window> windows_up_to_total_degree(unsigned n, unsigned per_variable_cap)
{
    std::vector<Window> out;
    for (unsigned a = 0; a <= n; ++a) {
        for (unsigned b = 0; a + b <= n; ++b) {
            if (a + b == 0) {
                continue;
            }
            std::vector<Var> vars;
            for (unsigned i = 1; i <= a; ++i) {
                vars.push_back(y(static_cast<std::uint16_t>(i)));
            }
            for (unsigned i = 1; i <= b; ++i) {
                vars.push_back(z(static_cast<std::uint16_t>(i)));
            }
            const unsigned top = std::min(n, per_variable_cap);
            std::vector<unsigned> d(vars.size(), 1);
            for (;;) {
                unsigned total = 0;
                for (auto c : d) {
                    total += c;
                }
                if (total <= n) {
                    Window w;
                    w.exact = true;
                    for (std::size_t i = 0; i < vars.size(); ++i) {
                        w.caps.set(vars[i], d[i]);
                    }
                    out.push_back(w);
                }
                std::size_t i = 0;
                while (i < d.size() && d[i] == top) {
                    d[i] = 1;
                    ++i;
                }
                if (i == d.size()) {
                    break;
                }
                ++d[i];
            }
        }
    }
    return out;
}

/// Span of the Lyndon monomials of a window, with fixed coordinates.
class AmbientSpace {
public:
    struct Block {
        MultiDegree md;
        std::size_t begin = 0, end = 0;
    };

    explicit AmbientSpace(Window w) : window_(std::move(w)), vars_(window_.variables())
    {
        for (const auto &md : window_.multidegrees()) {
            Block b{md, basis_.size(), 0};
            for (auto &word : lyndon_basis(md)) {
                index_.emplace(word, basis_.size());
                basis_.push_back(std::move(word));
            }
            b.end = basis_.size();
            if (b.end > b.begin) {
                blocks_.push_back(std::move(b));
            }
        }
    }

    const Window &window() const noexcept { return window_; }
    const std::vector<Var> &variables() const noexcept { return vars_; }
    const std::vector<Word> &basis() const noexcept { return basis_; }
    const std::vector<Block> &blocks() const noexcept { return blocks_; }
    std::size_t dim() const noexcept { return basis_.size(); }

    std::optional<std::size_t> index(const Word &w) const
    {
        auto it = index_.find(w);
        return it == index_.end() ? std::nullopt : std::optional(it->second);
    }

    /// True when every cap is below q, so that multihomogeneous components of
    /// identities (and of consequences) are again identities (consequences).
    bool caps_below(unsigned q) const
    {
        return std::all_of(window_.caps.counts().begin(), window_.caps.counts().end(),
                           [q](const auto &kv) { return kv.second < q; });
    }

    bool fits(const LiePolynomial &p) const
    {
        return std::all_of(p.terms().begin(), p.terms().end(), [&](const auto &kv) { return index_.count(kv.first) > 0; });
    }

    Vec coordinates(const LiePolynomial &p) const
    {
        Vec v(dim());
        for (const auto &[w, c] : p.terms()) {
            auto i = index(w);
            if (!i) {
                throw ExpansionTooLarge("monomial " + bracketing(w) + " lies outside window " + window_.to_string());
            }
            v[*i] = c;
        }
        return v;
    }

    LiePolynomial polynomial(const Field &f, std::span<const Elem> v) const
    {
        LiePolynomial p;
        for (std::size_t i = 0; i < v.size(); ++i) {
            p.add_term(f, basis_[i], v[i]);
        }
        return p;
    }

    /// Coordinate subspace of one multidegree block.
    Subspace block_subspace(const Field &f, const Block &b) const
    {
        Subspace s(dim());
        for (std::size_t i = b.begin; i < b.end; ++i) {
            s.insert(f, unit_vector(dim(), i));
        }
        return s;
    }

private:
    Window window_;
    std::vector<Var> vars_;
    std::vector<Word> basis_;
    std::vector<Block> blocks_;
    std::map<Word, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Assignment enumeration

namespace detail {

inline std::vector<Vec> all_elements(const Field &f, const Subspace &s)
{
    const std::size_t d = s.dim();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) {
        count *= f.q();
    }
    std::vector<Vec> out;
    out.reserve(count);
    std::vector<std::uint32_t> digits(d, 0);
    for (std::uint64_t n = 0; n < count; ++n) {
        Vec v(s.ambient_dim());
        for (std::size_t i = 0; i < d; ++i) {
            axpy(f, f.element(digits[i]), s.basis()[i], v);
        }
        out.push_back(std::move(v));
        for (std::size_t i = 0; i < d; ++i) {
            if (++digits[i] < f.q()) {
                break;
            }
            digits[i] = 0;
        }
    }
    return out;
}

} // namespace detail

/// All assignments of the given variables, in lexicographic order with the
/// first variable most significant. In graded mode y ranges over L0, z over
/// L1 and x over L; otherwise everything ranges over L.
class AssignmentSpace {
public:
    AssignmentSpace(const GradedLieAlgebra &L, std::vector<Var> vars, bool graded) : vars_(std::move(vars))
    {
        const Field &f = L.field();
        std::map<int, std::vector<Vec>> cache;
        for (const auto &v : vars_) {
            const auto p = graded ? v.parity() : std::nullopt;
            const int key = p ? *p : 2;
            if (!cache.count(key)) {
                cache[key] = detail::all_elements(f, p ? L.component(*p) : Subspace::full(L.dim()));
            }
            values_.push_back(cache[key]);
        }
        size_ = 1;
        for (const auto &vals : values_) {
            if (size_ > std::numeric_limits<std::uint64_t>::max() / vals.size()) {
                size_ = std::numeric_limits<std::uint64_t>::max();
                break;
            }
            size_ *= vals.size();
        }
    }

    const std::vector<Var> &variables() const noexcept { return vars_; }
    /// Saturates at 2^64 - 1.
    std::uint64_t size() const noexcept { return size_; }
    const std::vector<Vec> &values(std::size_t i) const { return values_.at(i); }

    Assignment at(std::uint64_t idx) const
    {
        Assignment a;
        for (std::size_t i = vars_.size(); i-- > 0;) {
            const std::uint64_t n = values_[i].size();
            a.emplace(vars_[i], values_[i][idx % n]);
            idx /= n;
        }
        return a;
    }

    template <class Rng>
    Assignment random(Rng &rng) const
    {
        Assignment a;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            std::uniform_int_distribution<std::size_t> pick(0, values_[i].size() - 1);
            a.emplace(vars_[i], values_[i][pick(rng)]);
        }
        return a;
    }

    void require_within(std::uint64_t budget, const std::string &what) const
    {
        if (size_ > budget) {
            throw BudgetExceeded(what + " needs " +
                                 (size_ == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                      : std::to_string(size_)) +
                                 " assignments, over the budget of " + std::to_string(budget) +
                                 "; use sampled mode or raise the budget");
        }
    }

private:
    std::vector<Var> vars_;
    std::vector<std::vector<Vec>> values_;
    std::uint64_t size_ = 0;
};

inline std::string format_assignment(const GradedLieAlgebra &L, const Assignment &a)
{
    std::string s;
    for (const auto &[v, val] : a) {
        s += (s.empty() ? "" : ", ") + v.name() + " = " + L.format(val);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Identity checking

struct CheckOptions {
    bool graded = true;
    bool exhaustive = true;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
    std::uint64_t budget = 50'000'000;
    unsigned jobs = 1;
};

struct CheckReport {
    bool holds = true;
    bool exhaustive = true;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    std::optional<Assignment> counterexample;
    Vec value;
};

namespace detail {

inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t i)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32U)};
    return std::mt19937_64(seq);
}

// Index of the first assignment in [0, n) on which `fails` holds, or n.
template <class Fails>
std::uint64_t first_failure(std::uint64_t n, unsigned jobs, Fails &&fails)
{
    std::atomic<std::uint64_t> best{n};
    parallel_blocks(n, jobs, [&](std::uint64_t b, std::uint64_t e, unsigned) {
        for (std::uint64_t i = b; i < e && i < best.load(std::memory_order_relaxed); ++i) {
            if (fails(i)) {
                std::uint64_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
                return;
            }
        }
    });
    return best.load();
}

} // namespace detail

/// Checks whether e vanishes on L. A counterexample is the first failing
/// assignment in enumeration (or sample) order, whatever the job count, and
/// is re-evaluated along an independent path before it is reported.
inline CheckReport check_identity(const LieExpr &e, const GradedLieAlgebra &L, const CheckOptions &opt = {})
{
    const auto vs = variables(e);
    const AssignmentSpace space(L, {vs.begin(), vs.end()}, opt.graded);
    CheckReport rep;
    rep.exhaustive = opt.exhaustive;
    rep.seed = opt.seed;
    auto nonzero = [&](const Assignment &a) { return !is_zero(evaluate(L, e, a, opt.graded)); };

    std::uint64_t n = 0, bad = 0;
    std::function<Assignment(std::uint64_t)> pick;
    if (opt.exhaustive) {
        space.require_within(opt.budget, "exhaustive check");
        n = space.size();
        pick = [&](std::uint64_t i) { return space.at(i); };
    } else {
        n = opt.samples;
        rep.samples = opt.samples;
        pick = [&](std::uint64_t i) {
            auto rng = detail::sample_rng(opt.seed, i);
            return space.random(rng);
        };
    }
    bad = detail::first_failure(n, opt.jobs, [&](std::uint64_t i) { return nonzero(pick(i)); });
    if (bad == n) {
        rep.evaluations = n;
        return rep;
    }
    rep.holds = false;
    rep.evaluations = bad + 1;
    rep.counterexample = pick(bad);
    rep.value = evaluate(L, e, *rep.counterexample, opt.graded, EvalStrategy::direct);
    if (is_zero(rep.value)) {
        throw std::logic_error("counterexample did not survive re-evaluation: " +
                               format_assignment(L, *rep.counterexample));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Identity spaces

struct IdentitySpaceOptions {
    bool graded = true;
    std::uint64_t budget = 50'000'000;
    std::size_t sample_rows = 32;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct IdentitySpaceResult {
    Subspace space;
    std::uint64_t assignments = 0;
    std::size_t rank = 0;
    std::size_t refinements = 0;
};

namespace detail {

// Value of every basis word at one assignment, as columns.
inline std::vector<Vec> word_values(const GradedLieAlgebra &L, const std::vector<Word> &words, const Assignment &a)
{
    std::map<Word, Vec> cache;
    std::function<const Vec &(std::span<const Var>)> val = [&](std::span<const Var> w) -> const Vec & {
        Word key(w.begin(), w.end());
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
        Vec out;
        if (w.size() == 1) {
            out = a.at(w[0]);
        } else {
            const std::size_t s = standard_split(w);
            out = L.bracket(val(w.first(s)), val(w.subspan(s)));
        }
        return cache.emplace(std::move(key), std::move(out)).first->second;
    };
    std::vector<Vec> cols;
    cols.reserve(words.size());
    for (const auto &w : words) {
        cols.push_back(val(w));
    }
    return cols;
}

// Adds the rows "coordinate r of the value" to the row space; true if it grew.
inline bool add_rows(const Field &f, std::size_t dimL, const std::vector<Vec> &cols, Subspace &rows)
{
    bool grew = false;
    Vec row(cols.size());
    for (std::size_t r = 0; r < dimL; ++r) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            row[j] = cols[j][r];
        }
        grew = rows.insert(f, row) || grew;
    }
    return grew;
}

inline bool kills(const Field &f, const std::vector<Vec> &cols, std::span<const Elem> k, std::size_t dimL)
{
    for (std::size_t r = 0; r < dimL; ++r) {
        Elem acc{};
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (!k[j].is_zero()) {
                acc = f.add(acc, f.mul(k[j], cols[j][r]));
            }
        }
        if (!acc.is_zero()) {
            return false;
        }
    }
    return true;
}

inline Subspace row_kernel(const Field &f, const Subspace &rows)
{
    if (rows.dim() == 0) {
        return Subspace::full(rows.ambient_dim());
    }
    return kernel(f, Matrix::from_rows(rows.ambient_dim(), rows.basis()));
}

} // namespace detail

/// Graded (or ordinary) identities of L inside the window: the kernel of the
/// evaluation map. Rows from a few sampled assignments give a first kernel;
/// one exhaustive pass then checks every kernel vector on every assignment
/// and adds the rows of any assignment that refutes one, so the result is
/// exact.
inline IdentitySpaceResult identity_space(const GradedLieAlgebra &L, const AmbientSpace &amb,
                                          const IdentitySpaceOptions &opt = {})
{
    const Field &f = L.field();
    const std::size_t n = amb.dim(), dimL = L.dim();
    const AssignmentSpace space(L, amb.variables(), opt.graded);
    space.require_within(opt.budget, "identity space of window " + amb.window().to_string());

    IdentitySpaceResult res;
    Subspace rows(n);
    for (std::size_t i = 0; i < opt.sample_rows && rows.dim() < n; ++i) {
        auto rng = detail::sample_rng(opt.seed, i);
        detail::add_rows(f, dimL, detail::word_values(L, amb.basis(), space.random(rng)), rows);
    }
    const Subspace first = detail::row_kernel(f, rows);

    std::vector<Subspace> block_rows(std::max(1U, opt.jobs), rows);
    std::vector<std::size_t> block_refinements(block_rows.size(), 0);
    parallel_blocks(space.size(), opt.jobs, [&](std::uint64_t b, std::uint64_t e, unsigned t) {
        Subspace &local = block_rows[t];
        Subspace ker = first;
        for (std::uint64_t i = b; i < e && !ker.is_zero(); ++i) {
            const auto cols = detail::word_values(L, amb.basis(), space.at(i));
            const bool ok = std::all_of(ker.basis().begin(), ker.basis().end(),
                                        [&](const Vec &k) { return detail::kills(f, cols, k, dimL); });
            if (!ok) {
                detail::add_rows(f, dimL, cols, local);
                ker = detail::row_kernel(f, local);
                ++block_refinements[t];
            }
        }
    });
    for (const auto &local : block_rows) {
        for (const auto &r : local.basis()) {
            rows.insert(f, r);
        }
    }
    for (auto c : block_refinements) {
        res.refinements += c;
    }
    res.space = detail::row_kernel(f, rows);
    res.assignments = space.size();
    res.rank = rows.dim();
    return res;
}

// ---------------------------------------------------------------------------
// Consequence spans

struct ConsequenceOptions {
    bool graded = true;
    /// Largest degree of a monomial in the substitution pool.
    unsigned pool_degree = 3;
    /// Random batches without growth before stopping.
    unsigned rounds = 8;
    unsigned batch = 512;
    unsigned max_batches = 64;
    std::uint64_t seed = 1;
    /// Stop as soon as the span contains this subspace.
    std::optional<Subspace> target;
};

struct ConsequenceResult {
    Subspace span;
    std::uint64_t instances = 0;
    std::uint64_t admitted = 0;
    unsigned batches = 0;
    bool reached_target = false;
};

namespace detail {

class SpanBuilder {
public:
    SpanBuilder(const Field &f, const AmbientSpace &amb) : f_(f), amb_(amb), span_(amb.dim()), split_(amb.caps_below(f.q()))
    {
        for (const auto &v : amb.variables()) {
            var_polys_.push_back(LiePolynomial::variable(v));
        }
    }

    // Adds p (or each multihomogeneous component, when that is sound) and
    // closes under right brackets with the window variables.
    bool add(const LiePolynomial &p)
    {
        bool grew = false;
        if (split_) {
            for (const auto &[md, c] : p.components()) {
                grew = insert_closed(c) || grew;
            }
        } else {
            grew = insert_closed(p);
        }
        return grew;
    }

    const Subspace &span() const noexcept { return span_; }

private:
    bool insert_closed(const LiePolynomial &p)
    {
        if (p.is_zero() || !amb_.fits(p) || !span_.insert(f_, amb_.coordinates(p))) {
            return false;
        }
        std::vector<LiePolynomial> queue{p};
        while (!queue.empty()) {
            const LiePolynomial q = std::move(queue.back());
            queue.pop_back();
            for (std::size_t i = 0; i < var_polys_.size(); ++i) {
                // cheap degree test before bracketing
                bool room = true;
                for (const auto &[w, c] : q.terms()) {
                    MultiDegree md = MultiDegree::of(w);
                    md.set(amb_.variables()[i], md[amb_.variables()[i]] + 1);
                    if (!md.within(amb_.window().caps)) {
                        room = false;
                        break;
                    }
                }
                if (!room) {
                    continue;
                }
                LiePolynomial r = lie_bracket(f_, q, var_polys_[i]);
                if (!r.is_zero() && amb_.fits(r) && span_.insert(f_, amb_.coordinates(r))) {
                    queue.push_back(std::move(r));
                }
            }
        }
        return true;
    }

    const Field &f_;
    const AmbientSpace &amb_;
    Subspace span_;
    bool split_;
    std::vector<LiePolynomial> var_polys_;
};

// Lyndon monomials over the window variables of degree <= d that fit the caps,
// split by Z2-degree (index 2 collects everything, for x variables).
inline std::array<std::vector<LieExpr>, 3> monomial_pool(const AmbientSpace &amb, unsigned d)
{
    std::array<std::vector<LieExpr>, 3> pool;
    Window w{amb.window().caps, false};
    for (const auto &md : w.multidegrees()) {
        if (md.total() > d) {
            continue;
        }
        for (const auto &word : lyndon_basis(md)) {
            const LieExpr e = word_expr(word);
            if (const auto p = md.parity()) {
                pool[static_cast<std::size_t>(*p)].push_back(e);
            }
            pool[2].push_back(e);
        }
    }
    return pool;
}

inline const std::vector<LieExpr> &candidates(const std::array<std::vector<LieExpr>, 3> &pool, Var v, bool graded)
{
    const auto p = v.parity();
    return graded && p ? pool[static_cast<std::size_t>(*p)] : pool[2];
}

} // namespace detail

namespace detail {

inline ConsequenceResult consequence_span_caps(const Field &f, const std::vector<LieExpr> &gens,
                                               const AmbientSpace &amb, const ConsequenceOptions &opt)
{
    ConsequenceResult res;
    detail::SpanBuilder sb(f, amb);
    const auto pool = detail::monomial_pool(amb, opt.pool_degree);
    const MultiDegree &caps = amb.window().caps;

    auto done = [&] { return opt.target && sb.span().contains(f, *opt.target); };
    auto try_instance = [&](const LieExpr &g, const Substitution &s) {
        ++res.instances;
        const LieExpr inst = substitute(g, s, false);
        const auto bound = degree_bound(inst);
        if (!bound || !bound->within(caps)) {
            return false;
        }
        ++res.admitted;
        return sb.add(expand(f, inst, caps));
    };

    if (done()) {
        res.span = sb.span();
        res.reached_target = true;
        return res;
    }

    // Deterministic phase.
    for (const auto &g : gens) {
        const auto vs = variables(g);
        const std::vector<Var> vars(vs.begin(), vs.end());
        std::vector<std::size_t> choice(vars.size(), 0); // 0 means the zero image
        for (;;) {
            Substitution s;
            bool any = false;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (choice[i] == 0) {
                    s.emplace(vars[i], LieExpr::zero());
                } else {
                    s.emplace(vars[i], detail::candidates(pool, vars[i], opt.graded)[choice[i] - 1]);
                    any = true;
                }
            }
            if (any && try_instance(g, s) && done()) {
                res.span = sb.span();
                res.reached_target = true;
                return res;
            }
            std::size_t i = 0;
            while (i < vars.size() && choice[i] == detail::candidates(pool, vars[i], opt.graded).size()) {
                choice[i] = 0;
                ++i;
            }
            if (i == vars.size()) {
                break;
            }
            ++choice[i];
        }
    }

    // Random phase: two-term combinations with prime-field scalars.
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long long> scalar(1, static_cast<long long>(f.p()) - 1);
    unsigned stable = 0;
    while (!gens.empty() && res.batches < opt.max_batches && stable < opt.rounds) {
        ++res.batches;
        bool grew = false;
        for (unsigned b = 0; b < opt.batch; ++b) {
            const LieExpr &g = gens[b % gens.size()];
            Substitution s;
            for (const auto &v : variables(g)) {
                const auto &cand = detail::candidates(pool, v, opt.graded);
                std::vector<LieExpr> terms;
                for (int t = 0; t < 2 && !cand.empty(); ++t) {
                    std::uniform_int_distribution<std::size_t> pick(0, cand.size());
                    const std::size_t c = pick(rng);
                    const long long k = scalar(rng);
                    if (c < cand.size()) {
                        terms.push_back(LieExpr::scale(k, cand[c]));
                    }
                }
                s.emplace(v, LieExpr::sum(std::move(terms)));
            }
            grew = try_instance(g, s) || grew;
            if (done()) {
                res.span = sb.span();
                res.reached_target = true;
                return res;
            }
        }
        stable = grew ? 0 : stable + 1;
    }
    res.span = sb.span();
    res.reached_target = done();
    return res;
}

} // namespace detail

/// Certified lower bound for (ideal generated by all graded endomorphic
/// images of gens) intersected with the window. Instances come from sending
/// each generator variable to 0 or a pool monomial, then from random
/// two-term combinations; only instances whose expansion fits the window
/// are admitted, and the span is closed under brackets with the window
/// variables. Exact windows are computed inside their caps window, since the
/// closure passes through smaller multidegrees, and then restricted.
inline ConsequenceResult consequence_span(const Field &f, const std::vector<LieExpr> &gens, const AmbientSpace &amb,
                                          const ConsequenceOptions &opt = {})
{
    if (!amb.window().exact) {
        return detail::consequence_span_caps(f, gens, amb, opt);
    }
    const AmbientSpace work(Window{amb.window().caps, false});
    std::vector<std::size_t> embed(amb.dim());
    for (std::size_t i = 0; i < amb.dim(); ++i) {
        embed[i] = *work.index(amb.basis()[i]);
    }
    auto lift = [&](std::span<const Elem> v) {
        Vec out(work.dim());
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[embed[i]] = v[i];
        }
        return out;
    };
    ConsequenceOptions wopt = opt;
    if (opt.target) {
        std::vector<Vec> lifted;
        for (const auto &b : opt.target->basis()) {
            lifted.push_back(lift(b));
        }
        wopt.target = Subspace::span(f, work.dim(), lifted);
    }
    ConsequenceResult res = detail::consequence_span_caps(f, gens, work, wopt);

    Subspace block(work.dim());
    for (auto i : embed) {
        block.insert(f, unit_vector(work.dim(), i));
    }
    Subspace restricted(amb.dim());
    const Subspace inside = subspace_intersect(f, res.span, block);
    for (const auto &v : inside.basis()) {
        Vec r(amb.dim());
        for (std::size_t i = 0; i < amb.dim(); ++i) {
            r[i] = v[embed[i]];
        }
        restricted.insert(f, r);
    }
    res.span = std::move(restricted);
    return res;
}

// ---------------------------------------------------------------------------
// Basis verification

/// A proposed generator is not an identity of the algebra.
class SoundnessFailure : public Error {
public:
    SoundnessFailure(std::string generator, CheckReport report, const std::string &what)
        : Error("SoundnessFailure", what), generator_(std::move(generator)), report_(std::move(report))
    {
    }
    const std::string &generator() const noexcept { return generator_; }
    const CheckReport &report() const noexcept { return report_; }

private:
    std::string generator_;
    CheckReport report_;
};

enum class WindowStatus { equal, strict_inclusion, inconclusive };

inline std::string to_string(WindowStatus s)
{
    switch (s) {
    case WindowStatus::equal:
        return "equal";
    case WindowStatus::strict_inclusion:
        return "strict-inclusion";
    default:
        return "inconclusive";
    }
}

struct ComponentRecord {
    MultiDegree md;
    std::size_t basis_dim = 0;
    std::size_t id_dim = 0;
    std::size_t cons_dim = 0;
};

struct WindowRecord {
    Window window;
    std::size_t ambient_dim = 0;
    WindowStatus status = WindowStatus::inconclusive;
    std::optional<std::size_t> id_dim;
    std::optional<std::size_t> cons_dim;
    std::vector<LiePolynomial> id_basis;
    /// Identity outside the consequence span (strict inclusion only).
    std::optional<LiePolynomial> witness;
    std::vector<ComponentRecord> components;
    std::string note;
};

struct SoundnessRecord {
    std::string generator;
    CheckReport report;
};

struct BasisCheckOptions {
    CheckOptions check;
    IdentitySpaceOptions space;
    ConsequenceOptions cons;
};

struct BasisCheckReport {
    std::vector<SoundnessRecord> soundness;
    std::vector<WindowRecord> windows;

    WindowStatus verdict() const
    {
        bool inconclusive = false;
        for (const auto &w : windows) {
            if (w.status == WindowStatus::strict_inclusion) {
                return WindowStatus::strict_inclusion;
            }
            inconclusive = inconclusive || w.status == WindowStatus::inconclusive;
        }
        return inconclusive ? WindowStatus::inconclusive : WindowStatus::equal;
    }
};

/// Soundness: every generator is checked on L (exhaustively when the budget
/// allows). Completeness, per window: the exact identity space is compared
/// with the consequence lower bound.
inline BasisCheckReport basis_check(const GradedLieAlgebra &L, const std::vector<LieExpr> &gens,
                                    const std::vector<Window> &windows, const BasisCheckOptions &opt = {})
{
    const Field &f = L.field();
    BasisCheckReport rep;
    for (const auto &g : gens) {
        CheckOptions co = opt.check;
        CheckReport cr;
        try {
            cr = check_identity(g, L, co);
        } catch (const BudgetExceeded &) {
            co.exhaustive = false;
            cr = check_identity(g, L, co);
        }
        const std::string text = to_string(g);
        if (!cr.holds) {
            throw SoundnessFailure(text, cr,
                                   "generator " + text + " is not an identity of " + L.name() + ": " +
                                       format_assignment(L, *cr.counterexample) + " gives " + L.format(cr.value));
        }
        rep.soundness.push_back({text, std::move(cr)});
    }

    for (const auto &w : windows) {
        const AmbientSpace amb(w);
        WindowRecord rec;
        rec.window = w;
        rec.ambient_dim = amb.dim();
        IdentitySpaceResult ids;
        try {
            IdentitySpaceOptions so = opt.space;
            so.graded = opt.check.graded;
            ids = identity_space(L, amb, so);
        } catch (const BudgetExceeded &e) {
            rec.note = e.what();
            rep.windows.push_back(std::move(rec));
            continue;
        }
        ConsequenceOptions cons_opt = opt.cons;
        cons_opt.graded = opt.check.graded;
        cons_opt.target = ids.space;
        const auto cons = consequence_span(f, gens, amb, cons_opt);
        if (!ids.space.contains(f, cons.span)) {
            throw TheoremViolation("consequence span of window " + w.to_string() +
                                   " contains a non-identity although every generator is an identity");
        }
        rec.id_dim = ids.space.dim();
        rec.cons_dim = cons.span.dim();
        for (const auto &b : ids.space.basis()) {
            rec.id_basis.push_back(amb.polynomial(f, b));
        }
        if (cons.span.dim() == ids.space.dim()) {
            rec.status = WindowStatus::equal;
        } else {
            rec.status = WindowStatus::strict_inclusion;
            for (const auto &b : ids.space.basis()) {
                if (!cons.span.contains(f, b)) {
                    rec.witness = amb.polynomial(f, b);
                    break;
                }
            }
        }
        for (const auto &blk : amb.blocks()) {
            const Subspace coord = amb.block_subspace(f, blk);
            rec.components.push_back({blk.md, blk.end - blk.begin, subspace_intersect(f, ids.space, coord).dim(),
                                      subspace_intersect(f, cons.span, coord).dim()});
        }
        rep.windows.push_back(std::move(rec));
    }
    return rep;
}

} // namespace sl2gid

#endif
