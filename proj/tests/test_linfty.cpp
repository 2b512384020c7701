#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "uenv/linfty.hpp"

using namespace uenv;

namespace {

bool ce_squares_to_zero(const LInftyAlgebra& L, int weight_cap)
{
    for (int w = 1; w <= weight_cap; ++w) {
        for (const auto& m : enumerate_monos(L.dim(), w, L.suspended_degrees())) {
            if (!ce_differential(L, ce_differential(L, m)).empty()) {
                return false;
            }
        }
    }
    return true;
}

int letters_in(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), ',')) + 1; }

} // namespace

TEST_CASE("abelian algebras have zero CE differential")
{
    auto L = fixtures::abelian({{"x", 0}, {"y", 1}, {"z", -1}});
    for (const auto& m : enumerate_monos_upto(L.dim(), 4, L.suspended_degrees())) {
        CHECK(ce_differential(L, m).empty());
    }
}

TEST_CASE("DG Lie differential only has c_1 and c_2")
{
    auto L = fixtures::sl2();
    for (const auto& m : enumerate_monos_upto(L.dim(), 4, L.suspended_degrees())) {
        CHECK(ce_differential(L, m) == ce_differential(L, m, ArityRange{1, 2}));
        CHECK(ce_differential(L, m, ArityRange{3, 1 << 20}).empty());
    }
}

TEST_CASE("sl2: delta(se sf) lands on sh and squares to zero")
{
    auto L = fixtures::sl2();
    auto d = ce_differential(L, Mono{0, 1});
    REQUIRE(d.size() == 1);
    CHECK(d.begin()->first == Mono{2});
    CHECK(abs(d.begin()->second) == 1);
    CHECK(ce_squares_to_zero(L, 3));
}

TEST_CASE("check_linfty")
{
    CHECK(check_linfty(fixtures::sl2(), 4).pass);
    CHECK(check_linfty(fixtures::heisenberg(), 4).pass);
    CHECK(check_linfty(fixtures::l3only(), 5).pass);
    CHECK(check_linfty(fixtures::t23(), 5).pass);
    CHECK(check_linfty(fixtures::mixed(), 5).pass);

    LInftyAlgebra bad(GradedSpace({{"e", 0}, {"f", 0}, {"h", 0}}));
    bad.set_bracket({0, 1}, LinComb<int>(2));
    bad.set_bracket({2, 0}, LinComb<int>(0, 2));
    bad.set_bracket({2, 1}, LinComb<int>(1, -3));
    auto r = check_linfty(bad, 4);
    CHECK_FALSE(r.pass);
    CHECK(letters_in(r.counterexample) == 3);
}

TEST_CASE("bracket degrees are enforced")
{
    LInftyAlgebra L(GradedSpace({{"x", 0}, {"y", 0}}));
    CHECK_THROWS_AS(L.set_bracket({0, 1, 1}, LinComb<int>(0)), std::invalid_argument);
    CHECK_THROWS_AS(L.set_bracket({0}, LinComb<int>(1)), std::invalid_argument);
}

TEST_CASE("morphism checks")
{
    auto H = fixtures::heisenberg();
    auto Ab = fixtures::abelian({{"x", 0}, {"y", 0}});
    CHECK(check_morphism(LInftyMorphism::identity(H), 4).pass);

    LInftyMorphism pr(H, Ab);
    pr.set_component({0}, LinComb<int>(0));
    pr.set_component({1}, LinComb<int>(1));
    CHECK(check_morphism(pr, 4).pass);

    auto V = fixtures::arrow();
    LInftyMorphism broken(V, V);
    broken.set_component({0}, LinComb<int>(0));
    auto r = check_morphism(broken, 3);
    CHECK_FALSE(r.pass);
    CHECK(letters_in(r.counterexample) == 1);
}

TEST_CASE("composition of morphisms")
{
    auto A = fixtures::abelian({{"a", 0}, {"b", 0}});
    auto B = fixtures::abelian({{"c", 0}, {"e", -1}});
    auto C = fixtures::abelian({{"p", 0}, {"q", -1}});

    LInftyMorphism phi(A, B);
    phi.set_component({0}, LinComb<int>(0));
    phi.set_component({1}, LinComb<int>(0, 2));
    phi.set_component({0, 1}, LinComb<int>(1));
    REQUIRE(check_morphism(phi, 4).pass);

    auto left = compose_morphisms(LInftyMorphism::identity(B), phi, 3);
    auto right = compose_morphisms(phi, LInftyMorphism::identity(A), 3);
    for (const auto& m : enumerate_monos_upto(A.dim(), 3, A.suspended_degrees())) {
        CHECK(left.component(m) == phi.component(m));
        CHECK(right.component(m) == phi.component(m));
    }

    SUBCASE("strict second factor: (psi phi)_2 = psi_1 phi_2")
    {
        LInftyMorphism psi(B, C);
        psi.set_component({0}, LinComb<int>(0, 3));
        psi.set_component({1}, LinComb<int>(1, 5));
        auto c = compose_morphisms(psi, phi, 3);
        CHECK(c.component({0}) == LinComb<int>(0, 3));
        CHECK(c.component({1}) == LinComb<int>(0, 6));
        CHECK(c.component({0, 1}) == LinComb<int>(1, 5));
        CHECK(check_morphism(c, 4).pass);
    }
    SUBCASE("strict first factor: (psi phi)_2 = psi_2(phi_1, phi_1)")
    {
        LInftyMorphism s(A, A);
        s.set_component({0}, LinComb<int>(1));
        s.set_component({1}, LinComb<int>(0));
        auto c = compose_morphisms(phi, s, 3);
        CHECK(c.component({0}) == LinComb<int>(0, 2));
        CHECK(c.component({1}) == LinComb<int>(0));
        // phi_2(b, a) = -phi_2(a, b) for degree-0 inputs
        CHECK(c.component({0, 1}) == LinComb<int>(1, -1));
    }
    SUBCASE("two strict morphisms compose to a strict morphism")
    {
        LInftyMorphism f(A, A);
        f.set_component({0}, LinComb<int>(1));
        f.set_component({1}, LinComb<int>(0));
        auto ff = compose_morphisms(f, f, 3);
        CHECK(ff.is_strict());
        CHECK(ff.component({0}) == LinComb<int>(0));
    }
}

TEST_CASE("complete intersections")
{
    const std::vector<std::string> x{"x"};
    SUBCASE("W = x^2 gives only l_2")
    {
        auto L = from_complete_intersection(x, {Polynomial{{{0, 0}, Scalar(1)}}});
        CHECK(L.brackets().size() == 1);
        CHECK(L.brackets().begin()->first == 2);
        CHECK(check_linfty(L, 5).pass);
    }
    SUBCASE("W = x^3 gives only l_3")
    {
        auto L = from_complete_intersection(x, {Polynomial{{{0, 0, 0}, Scalar(1)}}});
        CHECK(L.brackets().size() == 1);
        CHECK(L.brackets().begin()->first == 3);
        CHECK(check_linfty(L, 5).pass);
        auto D = from_complete_intersection(x, {Polynomial{{{0, 0, 0}, Scalar(1)}}},
                                            DerivativeNormalization::divided_power);
        const auto& p = L.brackets().at(3).begin()->second;
        const auto& q = D.brackets().at(3).begin()->second;
        auto q6 = q;
        q6 *= Scalar(6);
        CHECK(p == q6);
    }
    SUBCASE("W = 0 is abelian")
    {
        auto L = from_complete_intersection(x, {Polynomial{}});
        CHECK(L.brackets().empty());
    }
}
