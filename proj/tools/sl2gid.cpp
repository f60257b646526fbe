// sl2gid: graded identities of sl2 and related algebras over finite fields.
//
// Exit codes: 0 holds / equal, 1 mathematical failure, 2 input error,
// 3 inconclusive or over budget.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sl2gid/algebra.hpp"
#include "sl2gid/expr_io.hpp"
#include "sl2gid/gradings.hpp"
#include "sl2gid/identities.hpp"
#include "sl2gid/io.hpp"
#include "sl2gid/parallel.hpp"
#include "sl2gid/structure.hpp"

using namespace sl2gid;

namespace {

constexpr int schema_version = 1;

enum Exit { ok = 0, failure = 1, input_error = 2, inconclusive = 3 };

struct RunConfig {
    std::string alg = "sl2";
    std::string alg_file;
    std::uint64_t q = 5;
    std::optional<long long> b;
    std::uint64_t seed = 1;
    std::uint64_t budget = 50'000'000;
    unsigned jobs = 1;
    std::string output = "text";

    json to_json() const
    {
        json j;
        if (alg_file.empty()) {
            j["alg"] = alg;
        } else {
            j["alg_file"] = alg_file;
        }
        j["q"] = q;
        j["b"] = b ? json(*b) : json(nullptr);
        j["seed"] = seed;
        j["budget"] = budget;
        // jobs never changes results, so it stays out of the echoed config
        j["output"] = output;
        return j;
    }
};

class Report {
public:
    Report(std::string command, json config) : command_(std::move(command)), config_(std::move(config)) {}

    void line(std::string s) { lines_.push_back(std::move(s)); }
    void result(json r) { results_.push_back(std::move(r)); }

    int finish(const std::string &verdict, int code, bool structured) const
    {
        if (structured) {
            json doc;
            doc["schema_version"] = schema_version;
            doc["command"] = command_;
            doc["config"] = config_;
            doc["results"] = results_;
            doc["verdict"] = verdict;
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const auto &l : lines_) {
                std::cout << l << "\n";
            }
            std::cout << "verdict: " << verdict << "\n";
        }
        return code;
    }

private:
    std::string command_;
    json config_;
    json results_ = json::array();
    std::vector<std::string> lines_;
};

Field make_field(const RunConfig &c)
{
    if (c.q > (1U << 16)) {
        throw InvalidField("field order " + std::to_string(c.q) + " is too large");
    }
    return Field::of_order(c.q);
}

Elem nonsquare_b(const Field &f, const RunConfig &c)
{
    return c.b ? f.from_int(*c.b) : find_nonsquare(f);
}

GradedLieAlgebra load(const RunConfig &c)
{
    if (!c.alg_file.empty()) {
        return load_algebra(c.alg_file);
    }
    const Field f = make_field(c);
    if (c.alg == "sl2") {
        return algebras::sl2(f);
    }
    if (c.alg == "gl2") {
        return algebras::gl2(f);
    }
    if (c.alg == "m2-I") {
        return algebras::m2_grading_I(f);
    }
    if (c.alg == "m2-II") {
        return algebras::m2_grading_II(f);
    }
    if (c.alg == "m2-III") {
        return algebras::m2_grading_III(f, nonsquare_b(f, c));
    }
    if (c.alg == "span-e11-e12") {
        return algebras::span_e11_e12(f);
    }
    if (c.alg == "heisenberg") {
        return algebras::heisenberg(f);
    }
    throw SpecError("unknown algebra '" + c.alg + "'");
}

json vec_json(const Field &f, const Vec &v)
{
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(f.to_string(x));
    }
    return out;
}

json assignment_json(const GradedLieAlgebra &L, const Assignment &a)
{
    json out = json::object();
    for (const auto &[v, val] : a) {
        out[v.name()] = L.format(val);
    }
    return out;
}

json subspace_json(const GradedLieAlgebra &L, const Subspace &s)
{
    json out = json::array();
    for (const auto &b : s.basis()) {
        out.push_back(L.format(b));
    }
    return out;
}

std::string subspace_text(const GradedLieAlgebra &L, const Subspace &s)
{
    if (s.is_zero()) {
        return "0";
    }
    std::string out = "span{";
    bool first = true;
    for (const auto &b : s.basis()) {
        out += (first ? "" : ", ") + L.format(b);
        first = false;
    }
    return out + "}";
}

// ---- check ----

struct CheckArgs {
    std::string expr;
    std::string builtin;
    bool ordinary = false;
    std::optional<std::uint64_t> samples;
};

LieExpr builtin_expr(const std::string &name, unsigned q)
{
    if (name == "sem1") {
        return builtins::sem1(q);
    }
    if (name == "sem2") {
        return builtins::sem2(q);
    }
    if (name == "yy") {
        return builtins::yy();
    }
    if (name == "zz") {
        return builtins::zz();
    }
    if (name == "zyq_zy") {
        return builtins::zyq_zy(q);
    }
    throw SpecError("unknown builtin '" + name + "'");
}

int cmd_check(const RunConfig &c, const CheckArgs &a)
{
    const auto L = load(c);
    const Field &f = L.field();
    if (a.expr.empty() == a.builtin.empty()) {
        throw SpecError("give exactly one of --expr and --builtin");
    }
    const LieExpr e = a.builtin.empty() ? parse_expr(a.expr, a.ordinary) : builtin_expr(a.builtin, f.q());
    if (!a.ordinary && (parity_mask(e) & 4U)) {
        throw ParityError(to_string(e) + " has x variables; use --ordinary");
    }
    CheckOptions opt;
    opt.graded = !a.ordinary;
    opt.exhaustive = !a.samples;
    opt.samples = a.samples.value_or(opt.samples);
    opt.seed = c.seed;
    opt.budget = c.budget;
    opt.jobs = c.jobs;
    const auto rep = check_identity(e, L, opt);

    json config = c.to_json();
    config["expr"] = to_string(e);
    config["mode"] = a.ordinary ? "ordinary" : "graded";
    config["exhaustive"] = opt.exhaustive;
    if (!opt.exhaustive) {
        config["samples"] = opt.samples;
    }
    Report out("check", config);
    json r;
    r["algebra"] = L.name();
    r["expr"] = to_string(e);
    r["holds"] = rep.holds;
    r["exhaustive"] = rep.exhaustive;
    r["evaluations"] = rep.evaluations;
    out.line("algebra: " + L.name() + " over GF(" + std::to_string(f.q()) + ")");
    out.line("expr: " + to_string(e) + (a.ordinary ? " (ordinary)" : " (graded)"));
    out.line(std::string("mode: ") + (rep.exhaustive ? "exhaustive" : "sampled") +
             ", evaluations: " + std::to_string(rep.evaluations));
    if (rep.counterexample) {
        r["counterexample"] = assignment_json(L, *rep.counterexample);
        r["value"] = L.format(rep.value);
        out.line("counterexample: " + format_assignment(L, *rep.counterexample));
        out.line("value: " + L.format(rep.value));
    }
    out.result(r);
    return out.finish(rep.holds ? "holds" : "fails", rep.holds ? ok : failure, c.output == "structured");
}

// ---- basis-check ----

struct BasisArgs {
    std::string gens = "S";
    std::string windows = "default";
    std::optional<unsigned> total_degree;
    std::optional<unsigned> per_variable_cap;
    unsigned pool_degree = 3;
    unsigned rounds = 8;
    unsigned batch = 512;
};

std::vector<LieExpr> parse_gens(const std::string &text, unsigned q)
{
    if (text == "S") {
        return builtins::set_S(q);
    }
    if (text == "lema5") {
        return builtins::lema5_set(q);
    }
    return parse_expr_list(text);
}

std::vector<Window> parse_windows(const std::string &text, unsigned q)
{
    std::vector<Window> out;
    if (text == "default") {
        for (const std::string w : {"y1:1,y2:1", "z1:1,z2:1", "z1:1,z2:1,z3:1", "y1:1,z1:1,z2:1"}) {
            out.push_back(Window::parse(w));
        }
        out.push_back(Window::parse("z1:1,y1:" + std::to_string(q)));
        return out;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ';') {
            out.push_back(Window::parse(std::string_view(text).substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

json window_json(const Field &f, const WindowRecord &w)
{
    json j;
    j["window"] = w.window.to_string();
    j["ambient_dim"] = w.ambient_dim;
    j["status"] = to_string(w.status);
    j["id_dim"] = w.id_dim ? json(*w.id_dim) : json(nullptr);
    j["cons_dim"] = w.cons_dim ? json(*w.cons_dim) : json(nullptr);
    json basis = json::array();
    for (const auto &p : w.id_basis) {
        basis.push_back(p.to_string(f));
    }
    j["id_basis"] = basis;
    j["witness"] = w.witness ? json(w.witness->to_string(f)) : json(nullptr);
    json comps = json::array();
    for (const auto &c : w.components) {
        comps.push_back({{"multidegree", c.md.to_string()},
                         {"basis_dim", c.basis_dim},
                         {"id_dim", c.id_dim},
                         {"cons_dim", c.cons_dim}});
    }
    j["components"] = comps;
    if (!w.note.empty()) {
        j["note"] = w.note;
    }
    return j;
}

int cmd_basis_check(const RunConfig &c, const BasisArgs &a)
{
    const auto L = load(c);
    const Field &f = L.field();
    const auto gens = parse_gens(a.gens, f.q());
    const auto windows = a.total_degree
                             ? windows_up_to_total_degree(*a.total_degree, a.per_variable_cap.value_or(f.q()))
                             : parse_windows(a.windows, f.q());
    if (windows.empty()) {
        throw SpecError("window list is empty");
    }
    BasisCheckOptions opt;
    opt.check.seed = opt.space.seed = opt.cons.seed = c.seed;
    opt.check.budget = opt.space.budget = c.budget;
    opt.check.jobs = opt.space.jobs = c.jobs;
    opt.cons.pool_degree = a.pool_degree;
    opt.cons.rounds = a.rounds;
    opt.cons.batch = a.batch;

    json config = c.to_json();
    json gj = json::array();
    for (const auto &g : gens) {
        gj.push_back(to_string(g));
    }
    config["gens"] = gj;
    json wj = json::array();
    for (const auto &w : windows) {
        wj.push_back(w.to_string());
    }
    config["windows"] = wj;
    config["pool_degree"] = a.pool_degree;
    config["rounds"] = a.rounds;
    config["batch"] = a.batch;
    Report out("basis-check", config);
    out.line("algebra: " + L.name() + " over GF(" + std::to_string(f.q()) + ")");

    BasisCheckReport rep;
    try {
        rep = basis_check(L, gens, windows, opt);
    } catch (const SoundnessFailure &e) {
        json r;
        r["soundness_failure"] = e.generator();
        r["counterexample"] = assignment_json(L, *e.report().counterexample);
        r["value"] = L.format(e.report().value);
        out.result(r);
        out.line(std::string("soundness failure: ") + e.what());
        return out.finish("soundness-failure", failure, c.output == "structured");
    }

    json sound = json::array();
    for (const auto &s : rep.soundness) {
        sound.push_back({{"generator", s.generator},
                         {"holds", s.report.holds},
                         {"exhaustive", s.report.exhaustive},
                         {"evaluations", s.report.evaluations}});
        out.line("generator " + s.generator + ": holds (" + (s.report.exhaustive ? "exhaustive" : "sampled") + ", " +
                 std::to_string(s.report.evaluations) + " evaluations)");
    }
    out.result({{"soundness", sound}});
    for (const auto &w : rep.windows) {
        out.result(window_json(f, w));
        std::string l = "window " + w.window.to_string() + ": " + to_string(w.status) + " (ambient " +
                        std::to_string(w.ambient_dim);
        if (w.id_dim) {
            l += ", identities " + std::to_string(*w.id_dim) + ", consequences " + std::to_string(*w.cons_dim);
        }
        out.line(l + ")");
        if (w.witness) {
            out.line("  missing: " + w.witness->to_string(f));
        }
        if (!w.note.empty()) {
            out.line("  " + w.note);
        }
    }
    const auto v = rep.verdict();
    const int code = v == WindowStatus::equal ? ok : v == WindowStatus::strict_inclusion ? failure : inconclusive;
    return out.finish(to_string(v), code, c.output == "structured");
}

// ---- classify-gradings ----

std::string cert_text(const GradingCertificate &k)
{
    return "(" + std::to_string(k.dim_even) + "," + std::to_string(k.dim_odd) + "," + (k.qpower ? "1" : "0") + ")";
}

int cmd_classify(const RunConfig &c, const std::string &target_name)
{
    const Field f = make_field(c);
    require_prime_field(f);
    GradingTarget target;
    if (target_name == "m2") {
        target = GradingTarget::m2_assoc;
    } else if (target_name == "sl2") {
        target = GradingTarget::sl2_lie;
    } else {
        throw SpecError("--target must be m2 or sl2");
    }
    const auto autos = automorphisms(target, f);
    const auto gs = enumerate_z2_gradings(target, f, &autos);
    const auto classes = classify_up_to_iso(f, gs, autos);

    json config = c.to_json();
    config.erase("alg");
    config["target"] = target_name;
    Report out("classify-gradings", config);
    out.line(target_name + " over GF(" + std::to_string(f.q()) + "): " + std::to_string(autos.size()) +
             " automorphisms, " + std::to_string(gs.size()) + " gradings");
    out.line(std::to_string(classes.size()) + " classes");
    json cj = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto &k = classes[i];
        const auto &rep = gs[k.members.front()];
        cj.push_back({{"size", k.members.size()},
                      {"dim_even", k.cert.dim_even},
                      {"dim_odd", k.cert.dim_odd},
                      {"qpower", k.cert.qpower},
                      {"representative", grading_to_json(f, rep)}});
        out.line("  class " + std::to_string(i + 1) + ": " + std::to_string(k.members.size()) +
                 " gradings, certificate " + cert_text(k.cert) + ", representative " + rep.origin);
    }
    out.result({{"gradings", gs.size()}, {"automorphisms", autos.size()}, {"classes", cj}});

    bool good = true;
    auto class_of = [&](std::size_t idx) {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (std::find(classes[i].members.begin(), classes[i].members.end(), idx) != classes[i].members.end()) {
                return i;
            }
        }
        return classes.size();
    };

    if (target == GradingTarget::m2_assoc) {
        json refs = json::array();
        std::set<std::size_t> hit;
        for (const auto &r : m2_reference_gradings(f, nonsquare_b(f, c))) {
            const auto idx = find_grading(gs, r.even, r.odd);
            json rj = {{"reference", r.origin}, {"found", idx.has_value()}};
            if (idx) {
                rj["class"] = class_of(*idx) + 1;
                hit.insert(class_of(*idx));
            }
            good = good && idx.has_value();
            refs.push_back(rj);
            out.line("  reference " + r.origin + ": " + (idx ? "class " + std::to_string(class_of(*idx) + 1) : "missing"));
        }
        good = good && hit.size() == classes.size();
        const auto lie = gl2_lie_gradings(f, enumerate_z2_gradings(GradingTarget::sl2_lie, f));
        std::size_t agree = 0;
        for (const auto &g : lie) {
            agree += unit_component_check(f, g).agrees() ? 1 : 0;
        }
        good = good && agree == lie.size();
        out.line("  unit component: " + std::to_string(agree) + "/" + std::to_string(lie.size()) +
                 " Lie gradings of gl2 are associative iff 1 is even");
        out.result({{"references", refs}, {"unit_component", {{"agree", agree}, {"total", lie.size()}}}});
    } else {
        std::size_t eligible = 0, mapped = 0;
        for (const auto &g : gs) {
            const auto nc = natural_characterization(f, g, autos);
            if (nc.hypotheses()) {
                ++eligible;
                mapped += nc.isomorphism ? 1 : 0;
            }
        }
        good = good && eligible == mapped;
        out.line("  natural characterization: " + std::to_string(mapped) + "/" + std::to_string(eligible) +
                 " gradings meeting the hypotheses map onto the natural grading");
        out.result({{"natural_characterization", {{"eligible", eligible}, {"mapped", mapped}}}});
    }
    return out.finish(std::to_string(classes.size()) + " classes", good ? ok : failure, c.output == "structured");
}

// ---- analyze ----

int cmd_analyze(const RunConfig &c, unsigned dim_cap)
{
    const auto L = load(c);
    const Field &f = L.field();
    json config = c.to_json();
    config["dim_cap"] = dim_cap;
    Report out("analyze", config);

    const auto val = validate(L);
    json axioms = json::array();
    for (const auto &ax : val.axioms) {
        axioms.push_back({{"axiom", ax.axiom}, {"pass", ax.pass}});
        out.line("axiom " + ax.axiom + ": " + (ax.pass ? "ok" : "fails " + ax.witness));
    }
    StructureOptions so;
    so.dim_cap = dim_cap;
    const auto s = structure_report(L, so);
    auto opt_space = [&](const std::optional<Subspace> &x) { return x ? subspace_json(L, *x) : json(nullptr); };
    auto opt_bool = [](const std::optional<bool> &x) { return x ? json(*x) : json(nullptr); };
    json r;
    r["algebra"] = L.name();
    r["dim"] = L.dim();
    r["dim_even"] = L.component_dim(0);
    r["dim_odd"] = L.component_dim(1);
    r["axioms"] = axioms;
    r["derived_algebra"] = subspace_json(L, s.derived_algebra);
    r["center"] = subspace_json(L, s.center);
    r["radical"] = opt_space(s.radical);
    r["nilradical"] = opt_space(s.nilradical);
    r["solvable"] = s.solvable;
    r["nilpotent"] = s.nilpotent;
    r["metabelian"] = s.metabelian;
    r["graded_simple"] = opt_bool(s.graded_simple);
    r["monolithic"] = opt_bool(s.monolithic);
    r["monolith"] = opt_space(s.monolith);
    const Subspace dz = subspace_intersect(f, s.derived_algebra, s.center);
    r["derived_meets_center"] = !dz.is_zero();

    out.line("algebra: " + L.name() + " over GF(" + std::to_string(f.q()) + "), dim " + std::to_string(L.dim()) +
             " (" + std::to_string(L.component_dim(0)) + " even, " + std::to_string(L.component_dim(1)) + " odd)");
    out.line("derived algebra: " + subspace_text(L, s.derived_algebra));
    out.line("center: " + subspace_text(L, s.center));
    auto show = [&](const char *name, const std::optional<Subspace> &x) {
        out.line(std::string(name) + ": " + (x ? subspace_text(L, *x) : "skipped (dim cap)"));
    };
    auto show_bool = [&](const char *name, const std::optional<bool> &x) {
        out.line(std::string(name) + ": " + (x ? (*x ? "true" : "false") : "skipped (dim cap)"));
    };
    show("radical", s.radical);
    show("nilradical", s.nilradical);
    out.line(std::string("solvable: ") + (s.solvable ? "true" : "false") + ", nilpotent: " +
             (s.nilpotent ? "true" : "false") + ", metabelian: " + (s.metabelian ? "true" : "false"));
    show_bool("graded_simple", s.graded_simple);
    show_bool("monolithic", s.monolithic);
    show("monolith", s.monolith);
    out.line(std::string("[L,L] meets Z(L): ") + (dz.is_zero() ? "no" : "yes"));

    ProbeOptions po;
    po.seed = c.seed;
    po.budget = c.budget;
    const auto probe = a_property_probe(L, po);
    json pj = {{"exhaustive", probe.exhaustive},
               {"tuples_checked", probe.tuples_checked},
               {"distinct_subalgebras", probe.distinct_subalgebras},
               {"violation", probe.violation_found}};
    if (probe.violation_found) {
        pj["subalgebra"] = subspace_json(L, probe.subalgebra);
    }
    r["a_property_probe"] = pj;
    out.line("A-property probe: " + probe.verdict() + " (" + std::to_string(probe.tuples_checked) + " tuples, " +
             (probe.exhaustive ? "exhaustive" : "sampled") + ")");
    out.result(r);
    return out.finish(val.ok() ? "analyzed" : "invalid", val.ok() ? ok : failure, c.output == "structured");
}

// ---- space ----

struct SpaceArgs {
    std::string vars;
    bool multilinear = false;
    std::string window;
    std::string gens;
    bool ordinary = false;
};

int cmd_space(const RunConfig &c, const SpaceArgs &a)
{
    const auto L = load(c);
    const Field &f = L.field();
    Window w;
    if (!a.window.empty()) {
        if (!a.vars.empty()) {
            throw SpecError("give either --window or --vars, not both");
        }
        w = Window::parse(a.window);
    } else {
        if (a.vars.empty() || !a.multilinear) {
            throw SpecError("give --window, or --vars with --multilinear");
        }
        std::string text = "=";
        std::size_t start = 0;
        for (std::size_t i = 0; i <= a.vars.size(); ++i) {
            if (i == a.vars.size() || a.vars[i] == ',') {
                text += (start ? "," : "") + a.vars.substr(start, i - start) + ":1";
                start = i + 1;
            }
        }
        w = Window::parse(text);
    }
    const AmbientSpace amb(w);
    IdentitySpaceOptions so;
    so.graded = !a.ordinary;
    so.budget = c.budget;
    so.seed = c.seed;
    so.jobs = c.jobs;

    json config = c.to_json();
    config["window"] = w.to_string();
    config["mode"] = a.ordinary ? "ordinary" : "graded";
    if (!a.gens.empty()) {
        config["gens"] = a.gens;
    }
    Report out("space", config);
    const auto ids = identity_space(L, amb, so);
    json r;
    r["window"] = w.to_string();
    r["ambient_dim"] = amb.dim();
    r["id_dim"] = ids.space.dim();
    json basis = json::array();
    out.line("window " + w.to_string() + ": ambient " + std::to_string(amb.dim()) + ", id_dim " +
             std::to_string(ids.space.dim()));
    for (const auto &b : ids.space.basis()) {
        const std::string p = amb.polynomial(f, b).to_string(f);
        basis.push_back(p);
        out.line("  " + p);
    }
    r["id_basis"] = basis;
    std::string verdict = "computed";
    int code = ok;
    if (!a.gens.empty()) {
        ConsequenceOptions co;
        co.graded = !a.ordinary;
        co.seed = c.seed;
        co.target = ids.space;
        const auto cons = consequence_span(f, parse_gens(a.gens, f.q()), amb, co);
        r["cons_dim"] = cons.span.dim();
        out.line("consequences: " + std::to_string(cons.span.dim()));
        const bool eq = cons.span.dim() == ids.space.dim() && ids.space.contains(f, cons.span);
        verdict = eq ? "equal" : "strict-inclusion";
        code = eq ? ok : failure;
    }
    out.result(r);
    return out.finish(verdict, code, c.output == "structured");
}

// ---- boboc ----

int cmd_boboc(const RunConfig &c)
{
    const Field f = make_field(c);
    require_prime_field(f);
    const auto rep = remark_boboc(f, c.b ? std::optional<Elem>(f.from_int(*c.b)) : std::nullopt);
    auto mat = [&](const Mat2 &m) { return vec_json(f, m.vec()); };
    json config = c.to_json();
    config.erase("alg");
    Report out("boboc", config);
    out.result({{"b", f.to_string(rep.b)},
                {"b_square", rep.b_square},
                {"lhs", mat(rep.lhs)},
                {"rhs", mat(rep.rhs)},
                {"differ", rep.differ()}});
    auto text = [&](const Mat2 &m) {
        return "[[" + f.to_string(m.a) + ", " + f.to_string(m.b) + "], [" + f.to_string(m.c) + ", " +
               f.to_string(m.d) + "]]";
    };
    out.line("b = " + f.to_string(rep.b) + (rep.b_square ? " (square)" : " (non-square)"));
    out.line("[h, u]   = " + text(rep.lhs));
    out.line("[h, u^q] = " + text(rep.rhs));
    return out.finish(rep.differ() ? "differ" : "equal", ok, c.output == "structured");
}

int exit_for(const Error &e)
{
    const std::string &k = e.kind();
    if (k == "BudgetExceeded" || k == "ExpansionTooLarge") {
        return inconclusive;
    }
    if (k == "TheoremViolation" || k == "SoundnessFailure") {
        return failure;
    }
    return input_error;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Graded polynomial identities of sl2 over finite fields"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.jobs = default_jobs();

    auto common = [&](CLI::App *sub, bool with_alg) {
        if (with_alg) {
            sub->add_option("--alg", cfg.alg, "sl2, gl2, m2-I, m2-II, m2-III, span-e11-e12, heisenberg")
                ->check(CLI::IsMember({"sl2", "gl2", "m2-I", "m2-II", "m2-III", "span-e11-e12", "heisenberg"}));
            sub->add_option("--alg-file", cfg.alg_file, "algebra spec (JSON)")->check(CLI::ExistingFile);
        }
        sub->add_option("--q", cfg.q, "field order")->capture_default_str();
        sub->add_option("--b", cfg.b, "non-square used by m2-III and boboc (default: least non-square)");
        sub->add_option("--seed", cfg.seed)->capture_default_str();
        sub->add_option("--budget", cfg.budget, "evaluation budget")->capture_default_str();
        sub->add_option("--jobs", cfg.jobs, "worker threads (default: SL2GID_JOBS or 1)")
            ->check(CLI::Range(1U, 256U));
        sub->add_option("--output", cfg.output)->check(CLI::IsMember({"text", "structured"}))->capture_default_str();
    };

    CheckArgs ca;
    auto *check = app.add_subcommand("check", "check one identity on an algebra");
    common(check, true);
    check->add_option("--expr", ca.expr, "expression, e.g. \"[z1, y1^5] - [z1, y1]\"");
    check->add_option("--builtin", ca.builtin)->check(CLI::IsMember({"sem1", "sem2", "yy", "zz", "zyq_zy"}));
    check->add_flag("--graded,!--ordinary", [&](std::int64_t n) { ca.ordinary = n < 0; }, "graded (default) or ordinary");
    check->add_flag("--exhaustive", "every assignment (default)");
    check->add_option("--samples", ca.samples, "random assignments instead of all");

    BasisArgs ba;
    auto *basis = app.add_subcommand("basis-check", "compare identities with consequences of generators");
    common(basis, true);
    basis->add_option("--gens", ba.gens, "S, lema5, or \"e1; e2; ...\"")->capture_default_str();
    basis->add_option("--windows", ba.windows, "default, or \"y1:1,y2:1; z1:1,y1:5\"")->capture_default_str();
    basis->add_option("--total-degree", ba.total_degree, "all exact windows up to this total degree");
    basis->add_option("--per-variable-cap", ba.per_variable_cap, "with --total-degree (default q)");
    basis->add_option("--pool-degree", ba.pool_degree)->capture_default_str();
    basis->add_option("--rounds", ba.rounds)->capture_default_str();
    basis->add_option("--batch", ba.batch)->capture_default_str();

    std::string target = "m2";
    auto *classify = app.add_subcommand("classify-gradings", "Z2-gradings of M2 or sl2 up to isomorphism");
    common(classify, false);
    classify->add_option("--target", target)->check(CLI::IsMember({"m2", "sl2"}))->capture_default_str();

    unsigned dim_cap = 6;
    auto *analyze = app.add_subcommand("analyze", "structure report of an algebra");
    common(analyze, true);
    analyze->add_option("--dim-cap", dim_cap, "skip ideal enumeration above this dimension")->capture_default_str();

    SpaceArgs sa;
    auto *space = app.add_subcommand("space", "identity space of one window");
    common(space, true);
    space->add_option("--vars", sa.vars, "e.g. y1,z1,z2");
    space->add_flag("--multilinear", sa.multilinear);
    space->add_option("--window", sa.window, "e.g. z1:1,y1:5 (prefix = for one multidegree)");
    space->add_option("--gens", sa.gens, "also compute the consequence span");
    space->add_flag("--ordinary", sa.ordinary);

    auto *boboc = app.add_subcommand("boboc", "[h, u] against [h, u^q] for u = e12 + b e21");
    common(boboc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : input_error;
    }

    try {
        if (check->parsed()) {
            return cmd_check(cfg, ca);
        }
        if (basis->parsed()) {
            return cmd_basis_check(cfg, ba);
        }
        if (classify->parsed()) {
            return cmd_classify(cfg, target);
        }
        if (analyze->parsed()) {
            return cmd_analyze(cfg, dim_cap);
        }
        if (space->parsed()) {
            return cmd_space(cfg, sa);
        }
        if (boboc->parsed()) {
            return cmd_boboc(cfg);
        }
    } catch (const Error &e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    }
    return input_error;
}
