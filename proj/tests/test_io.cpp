#include <catch_amalgamated.hpp>

#include "sl2gid/io.hpp"

using namespace sl2gid;

namespace {

const std::string data_dir = SL2GID_DATA_DIR;

bool same_algebra(const GradedLieAlgebra &a, const GradedLieAlgebra &b)
{
    if (!(a.field() == b.field()) || a.dim() != b.dim() || a.degrees() != b.degrees()) {
        return false;
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (a.constant(i, j) != b.constant(i, j)) {
                return false;
            }
        }
    }
    return true;
}

std::string spec_error(const json &j)
{
    try {
        algebra_from_json(j);
    } catch (const SpecError &e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("built-in algebras round trip through JSON")
{
    for (const auto q : {5U, 7U, 25U}) {
        const Field f = Field::of_order(q);
        for (const auto &L : {algebras::sl2(f), algebras::gl2(f), algebras::span_e11_e12(f),
                              algebras::m2_grading_III(f, find_nonsquare(f)), algebras::heisenberg(f)}) {
            const json j = algebra_to_json(L);
            const auto back = algebra_from_json(json::parse(j.dump()));
            CHECK(same_algebra(L, back));
            CHECK(back.basis_names() == L.basis_names());
            CHECK(algebra_to_json(back).dump() == j.dump());
        }
    }
}

TEST_CASE("sample files load")
{
    const Field f(5);
    CHECK(same_algebra(load_algebra(data_dir + "/sl2.json"), algebras::sl2(f)));
    CHECK(same_algebra(load_algebra(data_dir + "/span_e11_e12.json"), algebras::span_e11_e12(f)));
    CHECK(same_algebra(load_algebra(data_dir + "/sl2_gf25.json"), algebras::sl2(Field::of_order(25))));
    CHECK_THROWS_WITH(load_algebra(data_dir + "/bad_jacobi.json"), Catch::Matchers::ContainsSubstring("jacobi"));
    CHECK_THROWS_WITH(load_algebra(data_dir + "/bad_grading.json"), Catch::Matchers::ContainsSubstring("grading"));
    CHECK_THROWS_AS(load_algebra(data_dir + "/missing.json"), SpecError);
}

TEST_CASE("malformed specs are rejected with a reason")
{
    const json base = json::parse(R"({"field": {"p": 5}, "dim": 2, "degrees": [0, 1], "constants": [[0, 1, [0, 1]]]})");
    CHECK(spec_error(base).empty());

    json j = base;
    j["constants"] = json::parse("[[1, 0, [0, 1]]]");
    CHECK(spec_error(j).find("i < j") != std::string::npos);
    j["constants"] = json::parse("[[0, 1, [0, 1]], [0, 1, [0, 1]]]");
    CHECK(spec_error(j).find("twice") != std::string::npos);
    j["constants"] = json::parse("[[0, 2, [0, 1]]]");
    CHECK(spec_error(j).find("out of range") != std::string::npos);
    j["constants"] = json::parse("[[0, 1, [0]]]");
    CHECK(spec_error(j).find("length") != std::string::npos);
    j["constants"] = json::parse("[[0, 1]]");
    CHECK_FALSE(spec_error(j).empty());

    j = base;
    j["degrees"] = json::parse("[0]");
    CHECK(spec_error(j).find("degrees") != std::string::npos);
    j = base;
    j["field"]["p"] = 4;
    CHECK(spec_error(j).find("field") != std::string::npos);
    j = base;
    j.erase("dim");
    CHECK(spec_error(j).find("dim") != std::string::npos);
    j = base;
    j["basis"] = json::parse(R"(["a"])");
    CHECK(spec_error(j).find("basis") != std::string::npos);
    CHECK_FALSE(spec_error(json::array()).empty());
}

TEST_CASE("extension field scalars are coefficient lists")
{
    const Field f = Field::of_order(25);
    const json j = json::parse(R"({"field": {"p": 5, "k": 2}, "dim": 2, "degrees": [0, 1],
                                   "constants": [[0, 1, [0, [0, 1]]]]})");
    const auto L = algebra_from_json(j);
    const Elem t = f.from_coeffs(std::vector<std::uint32_t>{0, 1});
    CHECK(L.constant(0, 1)[1] == t);
    CHECK(L.constant(1, 0)[1] == f.neg(t));
}

TEST_CASE("gradings round trip")
{
    const Field f(7);
    const auto gs = enumerate_z2_gradings(GradingTarget::m2_assoc, f);
    for (std::size_t i = 0; i < gs.size(); i += 7) {
        const json j = grading_to_json(f, gs[i]);
        const auto back = grading_from_json(j);
        CHECK(back.even == gs[i].even);
        CHECK(back.odd == gs[i].odd);
        CHECK(back.origin == gs[i].origin);
        CHECK(validate(algebra_from_json(j)).ok());
    }
    json bad = grading_to_json(f, gs[1]);
    bad["odd_basis"] = bad["even_basis"];
    CHECK_THROWS_AS(grading_from_json(bad), SpecError);
}
