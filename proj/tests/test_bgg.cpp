#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "uenv/bgg.hpp"

using namespace uenv;

TEST_CASE("twisting cochain equation")
{
    const auto sl2 = fixtures::sl2();
    AInftyStructure A(sl2, 4, 4);
    CHECK(twisted_cochain_check(A, 4).pass);
    CHECK(omega_to_u_check(A, 3).pass);

    const auto ab = fixtures::abelian({{"x", 0}, {"y", 1}});
    AInftyStructure B(ab, 3, 4);
    CHECK(twisted_cochain_check(B, 4).pass);

    const auto l3 = fixtures::l3only();
    AInftyStructure C(l3, 3, 4);
    CHECK(twisted_cochain_check(C, 3).pass);
}

TEST_CASE("tau on weight one is the projection")
{
    const auto sl2 = fixtures::sl2();
    AInftyStructure A(sl2, 3, 3);
    for (int g = 0; g < sl2.dim(); ++g) {
        auto t = canonical_tau(A, Mono{g});
        REQUIRE(t.size() == 1);
        CHECK(t.begin()->first == Mono{g});
        CHECK(abs(t.begin()->second) == 1);
    }
}

TEST_CASE("Koszul complex C(L) (x)_tau U(L)")
{
    SUBCASE("one odd generator")
    {
        const auto L = fixtures::odd_one();
        AInftyStructure A(L, 3, 4);
        auto r = twisted_tensor_acyclicity(A, 4);
        CHECK(r.exact);
        CHECK(r.pass());
        CHECK(r.homology == std::map<int, int>{{0, 1}});
    }
    SUBCASE("two odd generators")
    {
        const auto L = fixtures::odd_two();
        AInftyStructure A(L, 3, 4);
        auto r = twisted_tensor_acyclicity(A, 4);
        CHECK(r.exact);
        CHECK(r.pass());
    }
    SUBCASE("L = 0")
    {
        const LInftyAlgebra L{GradedSpace{}};
        AInftyStructure A(L, 2, 2);
        auto r = twisted_tensor_acyclicity(A, 2);
        CHECK(r.pass());
        CHECK(r.homology == std::map<int, int>{{0, 1}});
    }
    SUBCASE("sl2 window squares to zero")
    {
        const auto L = fixtures::sl2();
        AInftyStructure A(L, 3, 3);
        auto r = twisted_tensor_acyclicity(A, 3);
        CHECK_FALSE(r.exact);
        CHECK(r.square_zero);
    }
}

TEST_CASE("modules")
{
    const auto sl2 = fixtures::sl2();
    auto triv = LInftyModule::trivial(sl2, GradedSpace({{"v", 0}}));
    auto ad = LInftyModule::adjoint(sl2);
    CHECK(check_module(triv, 4).pass);
    CHECK(check_module(ad, 4).pass);

    LInftyModule bad(sl2, sl2.basis());
    Operator op;
    op.add({0, 1}, Scalar(1));
    bad.set_action({0}, op);
    CHECK_FALSE(check_module(bad, 3).pass);
}

TEST_CASE("G preserves the weight-one action")
{
    const auto sl2 = fixtures::sl2();
    AInftyStructure A(sl2, 4, 4);
    auto ad = LInftyModule::adjoint(sl2);
    auto g = functor_G(ad, A);
    CHECK(g.check().pass);
    // rho is stored in cobar form, the negative of the action
    for (int x = 0; x < sl2.dim(); ++x) {
        Operator action = ad.rho(Mono{x});
        action *= Scalar(-1);
        CHECK(g.psi(EBarWord{Mono{x}}) == action);
    }
    auto triv = LInftyModule::trivial(sl2, GradedSpace({{"v", 0}}));
    auto gt = functor_G(triv, A);
    for (const auto& w : enumerate_ebar_words(sl2, 3, 3)) {
        CHECK(gt.psi(w).empty());
    }
}

TEST_CASE("round trips")
{
    const auto sl2 = fixtures::sl2();
    AInftyStructure A(sl2, 4, 4);
    auto triv = LInftyModule::trivial(sl2, GradedSpace({{"v", 0}}));
    auto ad = LInftyModule::adjoint(sl2);
    CHECK(roundtrip_FG(triv, A, 4).pass);
    CHECK(roundtrip_FG(ad, A, 4).pass);
    CHECK(roundtrip_GF(functor_G(triv, A)).pass);
    CHECK(roundtrip_GF(functor_G(ad, A)).pass);

    AInftyStructure M(sl2, 4, 4, mutated_homotopies());
    CHECK_FALSE(roundtrip_FG(ad, M, 4).pass);
}

TEST_CASE("U(L) acting on itself")
{
    for (const auto& L : {fixtures::odd_one(), fixtures::odd_two()}) {
        AInftyStructure A(L, 3, 4);
        auto R = regular_module(A);
        CHECK(R.check().pass);
        CHECK(roundtrip_GF(R).pass);
        auto back = functor_F(R, 4);
        CHECK(check_module(back, 4).pass);
    }
    const auto sl2 = fixtures::sl2();
    AInftyStructure S(sl2, 2, 2);
    CHECK_THROWS_AS(regular_module(S), std::invalid_argument);
}
