#ifndef SL2GID_IO_HPP
#define SL2GID_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "algebra.hpp"
#include "errors.hpp"
#include "gradings.hpp"

// JSON form of algebras and gradings.
//
//   {
//     "name": "sl2",
//     "field": {"p": 5, "k": 1},                  optional "modulus": [c0, ..., ck]
//     "dim": 3,
//     "basis": ["h", "e", "f"],                    optional
//     "degrees": [0, 1, 1],
//     "constants": [[0, 1, [0, 2, 0]], ...]        [i, j, coordinates of [b_i, b_j]], i < j only
//   }
//
// Scalars are integers (reduced into the prime field) or, over GF(p^k),
// coefficient lists c0 + c1 t + ... . Gradings add "parent", "origin",
// "even_basis" and "odd_basis" (vectors in the parent's coordinates) to the
// spec of the regraded algebra.

namespace sl2gid {

using json = nlohmann::ordered_json;

namespace detail {

inline Elem elem_from_json(const Field &f, const json &j, const std::string &where)
{
    if (j.is_number_integer()) {
        return f.from_int(j.get<long long>());
    }
    if (j.is_array() && j.size() <= f.k()) {
        std::vector<std::uint32_t> c(f.k(), 0);
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_number_integer()) {
                throw SpecError(where + ": scalar coefficients must be integers");
            }
            c[i] = f.from_int(j[i].get<long long>()).v;
        }
        return f.from_coeffs(c);
    }
    throw SpecError(where + ": expected a scalar");
}

inline json elem_to_json(const Field &f, Elem a)
{
    if (f.k() == 1) {
        return a.v;
    }
    return f.coeffs(a);
}

template <class T>
T field_get(const json &j, const char *key, const std::string &where)
{
    if (!j.contains(key)) {
        throw SpecError(where + ": missing \"" + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw SpecError(where + ": \"" + key + "\" has the wrong type");
    }
}

} // namespace detail

inline Field field_from_json(const json &j)
{
    const auto p = detail::field_get<std::uint32_t>(j, "p", "field");
    const auto k = j.contains("k") ? detail::field_get<unsigned>(j, "k", "field") : 1U;
    try {
        if (j.contains("modulus")) {
            return Field(p, k, detail::field_get<std::vector<std::uint32_t>>(j, "modulus", "field"));
        }
        return Field(p, k);
    } catch (const InvalidField &e) {
        throw SpecError(std::string("field: ") + e.what());
    }
}

inline json field_to_json(const Field &f)
{
    json j;
    j["p"] = f.p();
    j["k"] = f.k();
    if (f.k() > 1) {
        j["modulus"] = f.modulus();
    }
    return j;
}

/// Loads and validates an algebra; the first failing axiom is named in the
/// SpecError.
inline GradedLieAlgebra algebra_from_json(const json &j)
{
    if (!j.is_object()) {
        throw SpecError("algebra spec must be a JSON object");
    }
    if (!j.contains("field")) {
        throw SpecError("missing \"field\"");
    }
    const Field f = field_from_json(j.at("field"));
    const auto n = detail::field_get<std::size_t>(j, "dim", "algebra");
    if (n == 0 || n > 64) {
        throw SpecError("dim must be between 1 and 64");
    }
    const auto degrees = detail::field_get<std::vector<int>>(j, "degrees", "algebra");
    if (degrees.size() != n) {
        throw SpecError("degrees has " + std::to_string(degrees.size()) + " entries, expected " + std::to_string(n));
    }
    std::vector<std::string> names;
    if (j.contains("basis")) {
        names = detail::field_get<std::vector<std::string>>(j, "basis", "algebra");
        if (names.size() != n) {
            throw SpecError("basis has " + std::to_string(names.size()) + " names, expected " + std::to_string(n));
        }
    }
    std::vector<Vec> c(n * n, Vec(n));
    std::vector<bool> given(n * n, false);
    const json consts = j.contains("constants") ? j.at("constants") : json::array();
    if (!consts.is_array()) {
        throw SpecError("\"constants\" must be a list");
    }
    for (std::size_t e = 0; e < consts.size(); ++e) {
        const std::string where = "constants[" + std::to_string(e) + "]";
        const json &t = consts[e];
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
            !t[2].is_array()) {
            throw SpecError(where + ": expected [i, j, [coordinates]]");
        }
        const auto i = t[0].get<long long>(), k = t[1].get<long long>();
        if (i < 0 || k < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(k) >= n) {
            throw SpecError(where + ": index out of range");
        }
        if (i >= k) {
            throw SpecError(where + ": only pairs with i < j are stored; the rest follow by antisymmetry");
        }
        const auto ii = static_cast<std::size_t>(i), kk = static_cast<std::size_t>(k);
        if (given[ii * n + kk]) {
            throw SpecError(where + ": pair given twice");
        }
        given[ii * n + kk] = true;
        if (t[2].size() != n) {
            throw SpecError(where + ": coordinate vector has the wrong length");
        }
        for (std::size_t r = 0; r < n; ++r) {
            c[ii * n + kk][r] = detail::elem_from_json(f, t[2][r], where);
            c[kk * n + ii][r] = f.neg(c[ii * n + kk][r]);
        }
    }
    const std::string name = j.contains("name") ? detail::field_get<std::string>(j, "name", "algebra") : "algebra";
    GradedLieAlgebra L(f, name, std::move(names), degrees, std::move(c));
    const auto rep = validate(L);
    for (const auto &a : rep.axioms) {
        if (!a.pass) {
            throw SpecError("axiom " + a.axiom + " fails: " + a.witness);
        }
    }
    return L;
}

inline json algebra_to_json(const GradedLieAlgebra &L)
{
    const Field &f = L.field();
    const std::size_t n = L.dim();
    json j;
    j["name"] = L.name();
    j["field"] = field_to_json(f);
    j["dim"] = n;
    j["basis"] = L.basis_names();
    j["degrees"] = L.degrees();
    json consts = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const Vec &v = L.constant(i, k);
            if (is_zero(v)) {
                continue;
            }
            json coords = json::array();
            for (const auto &x : v) {
                coords.push_back(detail::elem_to_json(f, x));
            }
            consts.push_back(json::array({i, k, coords}));
        }
    }
    j["constants"] = consts;
    return j;
}

inline GradedLieAlgebra load_algebra(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw SpecError("cannot open " + path);
    }
    try {
        return algebra_from_json(json::parse(in));
    } catch (const json::parse_error &e) {
        throw SpecError(path + ": " + e.what());
    }
}

inline json vectors_to_json(const Field &f, const Subspace &s)
{
    json out = json::array();
    for (const auto &b : s.basis()) {
        json row = json::array();
        for (const auto &x : b) {
            row.push_back(detail::elem_to_json(f, x));
        }
        out.push_back(row);
    }
    return out;
}

inline json grading_to_json(const Field &f, const GradingDescriptor &g)
{
    json j = algebra_to_json(graded_algebra(f, g));
    j["parent"] = to_string(g.target);
    j["origin"] = g.origin;
    j["even_basis"] = vectors_to_json(f, g.even);
    j["odd_basis"] = vectors_to_json(f, g.odd);
    return j;
}

inline GradingDescriptor grading_from_json(const json &j)
{
    const Field f = field_from_json(j.at("field"));
    GradingDescriptor g;
    const auto parent = detail::field_get<std::string>(j, "parent", "grading");
    if (parent != "m2" && parent != "sl2") {
        throw SpecError("grading parent must be \"m2\" or \"sl2\"");
    }
    g.target = parent == "m2" ? GradingTarget::m2_assoc : GradingTarget::sl2_lie;
    g.origin = j.contains("origin") ? detail::field_get<std::string>(j, "origin", "grading") : "";
    const std::size_t n = g.target == GradingTarget::m2_assoc ? 4 : 3;
    auto read = [&](const char *key) {
        std::vector<Vec> vs;
        if (!j.contains(key) || !j.at(key).is_array()) {
            throw SpecError(std::string("grading: missing \"") + key + "\"");
        }
        for (const auto &row : j.at(key)) {
            if (!row.is_array() || row.size() != n) {
                throw SpecError(std::string("grading: rows of \"") + key + "\" must have length " + std::to_string(n));
            }
            Vec v(n);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = detail::elem_from_json(f, row[i], key);
            }
            vs.push_back(std::move(v));
        }
        return Subspace::span(f, n, vs);
    };
    g.even = read("even_basis");
    g.odd = read("odd_basis");
    if (!is_lie_grading(f, g)) {
        throw SpecError("even_basis/odd_basis do not form a grading of " + parent);
    }
    return g;
}

} // namespace sl2gid

#endif
