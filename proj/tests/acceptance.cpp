// Acceptance suite: one PASS/FAIL line per criterion, with the wall time
// against its limit. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sl2gid/algebra.hpp"
#include "sl2gid/expr_io.hpp"
#include "sl2gid/gradings.hpp"
#include "sl2gid/identities.hpp"
#include "sl2gid/parallel.hpp"
#include "sl2gid/structure.hpp"

using namespace sl2gid;
using namespace sl2gid::builtins;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string &s) { detail += (detail.empty() ? "" : "; ") + s; }
};

int failures = 0;

void criterion(const char *id, double limit_s, const std::function<Outcome()> &fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception &e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > limit_s) {
        out.pass = false;
        out.note("over time limit");
    }
    failures += out.pass ? 0 : 1;
    std::printf("%s %s  %s  (%.2f s, limit %.0f s)\n", id, out.pass ? "PASS" : "FAIL", out.detail.c_str(), dt, limit_s);
    std::fflush(stdout);
}

std::string str(std::size_t n) { return std::to_string(n); }

CheckOptions exhaustive(bool graded)
{
    CheckOptions o;
    o.graded = graded;
    o.exhaustive = true;
    o.jobs = default_jobs();
    return o;
}

// Brute-force identity space: every coefficient vector over the window
// tested against every homogeneous assignment.
std::size_t brute_force_count(const GradedLieAlgebra &L, const AmbientSpace &amb, const Subspace &claimed,
                              bool &consistent)
{
    const Field &f = L.field();
    const AssignmentSpace space(L, amb.variables(), true);
    std::vector<std::vector<Vec>> values;
    for (std::uint64_t i = 0; i < space.size(); ++i) {
        const Assignment a = space.at(i);
        std::vector<Vec> row;
        for (const auto &w : amb.basis()) {
            row.push_back(evaluate_word(L, w, a));
        }
        values.push_back(std::move(row));
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < amb.dim(); ++i) {
        total *= f.q();
    }
    std::size_t count = 0;
    consistent = true;
    Vec c(amb.dim());
    for (std::uint64_t n = 0; n < total; ++n) {
        std::uint64_t r = n;
        for (auto &x : c) {
            x = f.element(static_cast<std::uint32_t>(r % f.q()));
            r /= f.q();
        }
        bool zero = true;
        for (const auto &row : values) {
            Vec acc(L.dim());
            for (std::size_t k = 0; k < row.size(); ++k) {
                axpy(f, c[k], row[k], acc);
            }
            if (!is_zero(acc)) {
                zero = false;
                break;
            }
        }
        if (zero) {
            ++count;
        }
        if (zero != claimed.contains(f, c)) {
            consistent = false;
        }
    }
    return count;
}

LiePolynomial random_lie(const Field &f, std::mt19937_64 &rng, int depth)
{
    static const std::vector<Var> vars = {y(1), y(2), z(1), z(2)};
    if (depth == 0 || rng() % 3 == 0) {
        return lie_scale(f, f.element(static_cast<std::uint32_t>(1 + rng() % (f.q() - 1))),
                         LiePolynomial::variable(vars[rng() % vars.size()]));
    }
    LiePolynomial p = lie_bracket(f, random_lie(f, rng, depth - 1), random_lie(f, rng, depth - 1));
    if (rng() % 2) {
        p = lie_add(f, p, random_lie(f, rng, depth - 1), f.element(static_cast<std::uint32_t>(rng() % f.q())));
    }
    return p;
}

} // namespace

int main()
{
    criterion("AC-1", 1, [] {
        Outcome o;
        for (const auto q : {5U, 7U}) {
            const auto L = algebras::sl2(Field(q));
            const auto a = check_identity(yy(), L, exhaustive(true));
            const auto b = check_identity(zyq_zy(q), L, exhaustive(true));
            o.require(a.holds && a.evaluations == q * q, "[y1,y2] at q=" + str(q));
            o.require(b.holds && b.evaluations == q * q * q, "[z1,y1^q]-[z1,y1] at q=" + str(q));
            o.note("q=" + str(q) + ": " + str(a.evaluations) + " + " + str(b.evaluations) + " assignments");
        }
        return o;
    });

    criterion("AC-2", 30, [] {
        Outcome o;
        const auto L = algebras::sl2(Field(5));
        for (const auto &[name, e] : {std::pair{"Sem1", sem1(5)}, std::pair{"Sem2", sem2(5)}}) {
            const auto r = check_identity(e, L, exhaustive(false));
            o.require(r.holds && r.exhaustive && r.evaluations == 125 * 125, name);
            o.note(std::string(name) + " " + str(r.evaluations) + " pairs");
        }
        return o;
    });

    criterion("AC-3", 60, [] {
        Outcome o;
        const auto L = algebras::sl2(Field(5));
        const auto S = set_S(5);
        std::uint64_t total = 0;
        for (const auto &g : S) {
            const auto r = check_identity(g, L, exhaustive(true));
            o.require(r.holds && r.exhaustive, to_string(g));
            total += r.evaluations;
        }
        // the two split generators use all four variables
        const AssignmentSpace four(L, {y(1), y(2), z(1), z(2)}, true);
        o.require(four.size() == 15625, "4-variable assignment count");
        o.note(str(S.size()) + " generators, " + str(total) + " evaluations, 4-variable space " + str(four.size()));
        return o;
    });

    criterion("AC-4", 120, [] {
        Outcome o;
        const Field f(5);
        const auto autos = m2_automorphisms(f);
        const auto gs = enumerate_z2_gradings(GradingTarget::m2_assoc, f, &autos);
        const auto classes = classify_up_to_iso(f, gs, autos);
        o.require(classes.size() == 3, "3 classes");
        std::set<std::size_t> hit;
        for (const auto &r : m2_reference_gradings(f, find_nonsquare(f))) {
            const auto idx = find_grading(gs, r.even, r.odd);
            o.require(idx.has_value(), "reference " + r.origin + " enumerated");
            for (std::size_t c = 0; idx && c < classes.size(); ++c) {
                const auto &m = classes[c].members;
                if (std::find(m.begin(), m.end(), *idx) != m.end()) {
                    hit.insert(c);
                }
            }
        }
        o.require(hit.size() == 3, "references in distinct classes");
        const auto lie = gl2_lie_gradings(f, enumerate_z2_gradings(GradingTarget::sl2_lie, f));
        std::size_t agree = 0;
        for (const auto &g : lie) {
            agree += unit_component_check(f, g).agrees() ? 1 : 0;
        }
        o.require(agree == lie.size(), "associative iff 1 even");
        o.note(str(gs.size()) + " gradings, " + str(classes.size()) + " classes (" + str(classes[0].members.size()) +
               "/" + str(classes.size() > 1 ? classes[1].members.size() : 0) + "/" +
               str(classes.size() > 2 ? classes[2].members.size() : 0) + "), unit component " + str(agree) + "/" +
               str(lie.size()));
        return o;
    });

    criterion("AC-5", 60, [] {
        Outcome o;
        const auto L = algebras::sl2(Field(5));
        const Field &f = L.field();
        struct Case {
            const char *window;
            std::size_t dim;
            const char *spans;
        };
        for (const Case &c : {Case{"y1:1,y2:1", 1, "[y1,y2]"}, Case{"z1:1,z2:1", 0, ""},
                              Case{"=z1:1,z2:1,z3:1", 0, ""}, Case{"=y1:1,z1:1,z2:1", 1, "[[z1,z2],y1]"}}) {
            const AmbientSpace amb(Window::parse(c.window));
            const auto ids = identity_space(L, amb);
            o.require(ids.space.dim() == c.dim, std::string("dim at ") + c.window);
            if (c.dim == 1) {
                const Vec v = amb.coordinates(normalize(f, parse_expr(c.spans)));
                o.require(ids.space.contains(f, v), std::string(c.spans) + " spans " + c.window);
            }
            bool consistent = false;
            const std::size_t count = brute_force_count(L, amb, ids.space, consistent);
            std::size_t expect = 1;
            for (std::size_t i = 0; i < c.dim; ++i) {
                expect *= f.q();
            }
            o.require(consistent && count == expect, std::string("brute force at ") + c.window);
            o.note(std::string(c.window) + " dim " + str(ids.space.dim()));
        }
        return o;
    });

    criterion("AC-6", 300, [] {
        Outcome o;
        const auto L = algebras::span_e11_e12(Field(5));
        const auto windows = windows_up_to_total_degree(4, 5);
        BasisCheckOptions opt;
        opt.check.jobs = opt.space.jobs = default_jobs();
        const auto rep = basis_check(L, lema5_set(5), windows, opt);
        std::size_t equal = 0;
        for (const auto &w : rep.windows) {
            equal += w.status == WindowStatus::equal ? 1 : 0;
            o.require(w.status == WindowStatus::equal, w.window.to_string() + " " + to_string(w.status));
        }
        o.note(str(equal) + "/" + str(windows.size()) + " windows equal");
        return o;
    });

    criterion("AC-7", 300, [] {
        Outcome o;
        const auto L = algebras::sl2(Field(5));
        std::vector<Window> windows;
        for (const char *w : {"y1:1,y2:1", "z1:1,z2:1", "z1:1,z2:1,z3:1", "y1:1,z1:1,z2:1", "z1:1,y1:5"}) {
            windows.push_back(Window::parse(w));
        }
        BasisCheckOptions opt;
        opt.check.jobs = opt.space.jobs = default_jobs();
        const auto rep = basis_check(L, set_S(5), windows, opt);
        for (const auto &w : rep.windows) {
            o.require(w.status == WindowStatus::equal, w.window.to_string() + " " + to_string(w.status));
            o.note(w.window.to_string() + " " + to_string(w.status) + " (" + str(w.id_dim.value_or(0)) + ")");
        }
        return o;
    });

    criterion("AC-8", 10, [] {
        Outcome o;
        for (const auto q : {5U, 7U}) {
            const Field f(q);
            const auto r = remark_boboc(f);
            o.require(!r.b_square && r.differ(), "non-square b at q=" + str(q));
            Elem sq = Field::one();
            for (std::uint32_t i = 2; i < q; ++i) {
                if (f.is_square(f.element(i))) {
                    sq = f.element(i);
                    break;
                }
            }
            const auto c = remark_boboc(f, sq);
            o.require(!c.differ(), "square control at q=" + str(q));
            o.note("q=" + str(q) + " b=" + f.to_string(r.b) + " differ, b=" + f.to_string(sq) + " equal");
        }
        return o;
    });

    criterion("AC-9", 300, [] {
        Outcome o;
        const Field f(5);
        const auto autos = sl2_automorphisms(f);
        const auto gs = enumerate_z2_gradings(GradingTarget::sl2_lie, f, &autos);
        const auto natural = sl2_natural_grading(f);
        std::size_t eligible = 0, mapped = 0;
        for (const auto &g : gs) {
            const auto nc = natural_characterization(f, g, autos);
            if (!nc.hypotheses()) {
                continue;
            }
            ++eligible;
            if (nc.isomorphism && detail::image(f, *nc.isomorphism, g.even) == natural.even &&
                detail::image(f, *nc.isomorphism, g.odd) == natural.odd) {
                ++mapped;
            }
        }
        o.require(eligible > 0 && mapped == eligible, "every eligible grading mapped");
        o.note(str(mapped) + "/" + str(eligible) + " mapped to the natural grading");
        return o;
    });

    criterion("AC-10", 60, [] {
        Outcome o;
        const Field f(5);
        const auto S = algebras::sl2(f);
        const auto rs = structure_report(S);
        o.require(rs.radical && rs.radical->is_zero(), "sl2 radical 0");
        o.require(rs.center.is_zero(), "sl2 center 0");
        o.require(rs.graded_simple.value_or(false), "sl2 graded-simple");
        o.require(rs.monolithic.value_or(false), "sl2 monolithic");
        const auto T = algebras::span_e11_e12(f);
        const auto rt = structure_report(T);
        o.require(rt.monolith && *rt.monolith == Subspace::span(f, 2, {T.basis_vector(1)}), "monolith span{e12}");
        o.require(rt.nilradical && *rt.nilradical == rt.derived_algebra, "Nil = [L,L]");
        o.require(rt.metabelian, "metabelian");
        o.require(a_property_probe(algebras::heisenberg(f)).violation_found, "Heisenberg fails the A-property probe");
        o.require(subspace_intersect(f, rs.derived_algebra, rs.center).is_zero(), "sl2 [L,L] n Z(L) = 0");
        o.require(subspace_intersect(f, rt.derived_algebra, rt.center).is_zero(), "span [L,L] n Z(L) = 0");
        if (o.pass) {
            o.note("sl2 and span{e11,e12} reports as expected; Heisenberg probe finds a violation");
        }
        return o;
    });

    criterion("AC-11", 60, [] {
        Outcome o;
        const std::vector<std::size_t> witt = {2, 1, 2, 3, 6, 9};
        std::string counts;
        for (unsigned n = 1; n <= 6; ++n) {
            std::size_t total = 0;
            for (unsigned a = 0; a <= n; ++a) {
                total += lyndon_basis(MultiDegree{{y(1), a}, {y(2), n - a}}).size();
            }
            o.require(total == witt[n - 1], "Witt count at degree " + str(n));
            counts += (n > 1 ? "," : "") + str(total);
        }
        const Field f(5);
        std::mt19937_64 rng(2024);
        std::size_t cases = 0;
        for (int i = 0; i < 200; ++i) {
            const auto a = random_lie(f, rng, 2), b = random_lie(f, rng, 2), c = random_lie(f, rng, 1);
            LiePolynomial jac = lie_bracket(f, a, lie_bracket(f, b, c));
            jac = lie_add(f, jac, lie_bracket(f, b, lie_bracket(f, c, a)));
            jac = lie_add(f, jac, lie_bracket(f, c, lie_bracket(f, a, b)));
            const bool ok = jac.is_zero() && lie_add(f, lie_bracket(f, a, b), lie_bracket(f, b, a)).is_zero();
            cases += ok ? 1 : 0;
        }
        o.require(cases == 200, "Jacobi/antisymmetry");
        const auto L = algebras::span_e11_e12(f);
        const std::vector<LieExpr> exprs = {yy(), zz(), zyq_zy(5), parse_expr("[z1, y1, z2, y2]"),
                                            parse_expr("[y1, (z1^2 - 2*z1^1)] + 3*[z2, y1^3]"),
                                            parse_expr("[[z1, y1], [z2, y1]] - [z1, [y1, z2], y1]")};
        std::uint64_t evaluations = 0;
        bool agree = true;
        for (const auto &e : exprs) {
            const auto vars = variables(e);
            const AssignmentSpace space(L, {vars.begin(), vars.end()}, true);
            const LiePolynomial p = normalize(f, e);
            for (std::uint64_t i = 0; i < space.size(); ++i) {
                const Assignment a = space.at(i);
                agree = agree && evaluate(L, p, a) == evaluate(L, e, a);
                ++evaluations;
            }
        }
        o.require(agree, "expand/evaluate agreement");
        o.note("Witt (" + counts + "), " + str(cases) + "/200 normalization cases, " + str(evaluations) +
               " exhaustive evaluations");
        return o;
    });

    return failures == 0 ? 0 : 1;
}
