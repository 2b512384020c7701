#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "uenv/json_io.hpp"

#ifndef UENV_DATA_DIR
#define UENV_DATA_DIR "data"
#endif

using namespace uenv;

namespace {

std::string data(const std::string& name) { return std::string(UENV_DATA_DIR) + "/" + name; }

json bracket(const std::vector<std::string>& inputs, int arity, const std::string& out)
{
    return {{"arity", arity},
            {"inputs", inputs},
            {"value", json::array({{{"coeff", "1/1"}, {"monomial", json::array({out})}}})}};
}

json two_generators()
{
    return {{"generators", json::array({{{"id", "x"}, {"degree", 0}}, {{"id", "y"}, {"degree", 0}}})}};
}

} // namespace

TEST_CASE("bundled algebras load and satisfy the Jacobi identities")
{
    for (const char* name : {"abelian1.json", "abelian2.json", "abelian3.json", "sl2.json", "heisenberg.json",
                             "odd.json", "odd1.json", "l3only.json", "t23.json", "mixed.json", "ci_x3.json"}) {
        INFO(name);
        auto L = load_algebra(data(name));
        CHECK(L.dim() > 0);
        CHECK(check_linfty(L, 4).pass);
    }
    auto bad = load_algebra(data("corrupted.json"));
    CHECK_FALSE(check_linfty(bad, 3).pass);
}

TEST_CASE("loaded algebras match the fixtures")
{
    auto sl2 = load_algebra(data("sl2.json"));
    CHECK(sl2.brackets() == fixtures::sl2().brackets());
    auto l3 = load_algebra(data("l3only.json"));
    CHECK(l3.brackets() == fixtures::l3only().brackets());
    auto ci = load_algebra(data("ci_x3.json"));
    CHECK(ci.dim() == 2);
    CHECK(ci.brackets().count(2) == 0);
    CHECK(ci.brackets().count(3) == 1);
}

TEST_CASE("serialization round trip")
{
    for (const auto& L : {fixtures::sl2(), fixtures::mixed(), fixtures::l3only()}) {
        auto back = algebra_from_json(algebra_to_json(L));
        CHECK(back.basis().generators().size() == L.basis().generators().size());
        CHECK(back.brackets() == L.brackets());
    }
}

TEST_CASE("malformed input is a parse error")
{
    CHECK_THROWS_AS(parse_json_file(data("no_such_file.json")), ParseError);

    auto j = two_generators();
    j["brackets"] = json::array({bracket({"x", "z"}, 2, "y")});
    CHECK_THROWS_AS(algebra_from_json(j), ParseError);

    j["brackets"] = json::array({bracket({"x", "y"}, 3, "y")});
    CHECK_THROWS_AS(algebra_from_json(j), ParseError);

    j["brackets"] = json::array({bracket({"y", "x"}, 2, "y")});
    CHECK_THROWS_AS(algebra_from_json(j), ParseError);

    json dup = {{"generators", json::array({{{"id", "x"}, {"degree", 0}}, {{"id", "x"}, {"degree", 1}}})}};
    CHECK_THROWS_AS(algebra_from_json(dup), ParseError);

    json nodeg = {{"generators", json::array({{{"id", "x"}}})}};
    CHECK_THROWS_AS(algebra_from_json(nodeg), ParseError);

    auto badcoeff = two_generators();
    badcoeff["brackets"] = json::array({bracket({"x", "y"}, 2, "y")});
    badcoeff["brackets"][0]["value"][0]["coeff"] = "1/0";
    CHECK_THROWS_AS(algebra_from_json(badcoeff), ParseError);

    CHECK(algebra_from_json(two_generators()).brackets().empty());
}

TEST_CASE("morphism files")
{
    auto b = morphism_from_json(parse_json_file(data("morphism_nonstrict.json")));
    CHECK(b.source->dim() == 2);
    CHECK(b.target->dim() == 2);
    CHECK(check_morphism(*b.phi, 3).pass);
    auto s = morphism_from_json(parse_json_file(data("morphism_strict.json")));
    CHECK(check_morphism(*s.phi, 3).pass);
}

TEST_CASE("module files")
{
    auto triv = module_from_json(parse_json_file(data("sl2_trivial_module.json")));
    CHECK(triv.module->table().empty());
    CHECK(check_module(*triv.module, 3).pass);
    auto ad = module_from_json(parse_json_file(data("sl2_adjoint_module.json")));
    auto ref = LInftyModule::adjoint(*ad.algebra);
    CHECK(ad.module->table() == ref.table());
    CHECK(check_module(*ad.module, 4).pass);
}
