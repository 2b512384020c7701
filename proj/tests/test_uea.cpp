#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "uenv/cobar_contraction.hpp"
#include "uenv/uea.hpp"

using namespace uenv;

namespace {

LinComb<Mono> mono(std::initializer_list<std::pair<Mono, Scalar>> terms)
{
    LinComb<Mono> out;
    for (const auto& [m, c] : terms) {
        out.add(m, c);
    }
    return out;
}

} // namespace

TEST_CASE("abelian: m_2 is the symmetric product and higher products vanish")
{
    const auto L = fixtures::abelian({{"x", 0}, {"y", 1}});
    AInftyStructure A(L, 3, 4);
    for (const auto& xs : enumerate_tuples(L, 2, 4)) {
        CHECK(A.m(xs) == product(LinComb<Mono>(xs[0]), LinComb<Mono>(xs[1]), L.degrees()));
    }
    for (const auto& xs : enumerate_tuples(L, 3, 4)) {
        CHECK(A.m(xs).empty());
    }
}

TEST_CASE("sl2: m_2 on generators")
{
    const auto L = fixtures::sl2();
    AInftyStructure A(L, 3, 4);
    const Mono e{0}, f{1}, h{2};
    CHECK(A.m({e, f}) == mono({{{0, 1}, 1}, {{2}, Scalar(1, 2)}}));
    CHECK(A.m({e, f}) - A.m({f, e}) == LinComb<Mono>(h));
    CHECK(m2_generator_check(A).pass);
    for (const auto& xs : enumerate_tuples(L, 3, 3)) {
        CHECK(A.m(xs).empty());
    }
}

TEST_CASE("Heisenberg: m_2(x, y) = x*y + z/2 and PBW holds")
{
    const auto L = fixtures::heisenberg();
    AInftyStructure A(L, 3, 4);
    CHECK(A.m({Mono{0}, Mono{1}}) == mono({{{0, 1}, 1}, {{2}, Scalar(1, 2)}}));
    CHECK(pbw_compare(A).pass);
    CHECK(m2_generator_check(A).pass);
}

TEST_CASE("Stasheff identities")
{
    const auto ab = fixtures::abelian({{"x", 0}, {"y", 1}});
    const auto sl2 = fixtures::sl2();
    const auto l3 = fixtures::l3only();
    AInftyStructure A(ab, 4, 4);
    CHECK(stasheff_check(A).pass);
    AInftyStructure S(sl2, 3, 5);
    CHECK(stasheff_check(S).pass);
    AInftyStructure T(l3, 4, 4);
    CHECK(stasheff_check(T).pass);
}

TEST_CASE("a corrupted product table is caught")
{
    const auto L = fixtures::sl2();
    AInftyStructure A(L, 3, 4);
    auto bad = A.m({Mono{0}, Mono{1}});
    bad.add(Mono{2}, Scalar(1));
    A.override_product({Mono{0}, Mono{1}}, bad);
    auto r = stasheff_check(A);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.counterexample.empty());
}

TEST_CASE("PBW comparison")
{
    const auto sl2 = fixtures::sl2();
    AInftyStructure A(sl2, 4, 4);
    CHECK(pbw_compare(A).pass);
    const auto ab = fixtures::abelian({{"x", 0}, {"y", 0}});
    AInftyStructure B(ab, 3, 4);
    CHECK(pbw_compare(B).pass);
}

TEST_CASE("m_n(Alt) = l_n")
{
    const auto sl2 = fixtures::sl2();
    const auto l3 = fixtures::l3only();
    const auto ab = fixtures::abelian({{"x", 0}, {"y", 1}});
    AInftyStructure S(sl2, 3, 3);
    CHECK(alt_bracket_check(S, 2).pass);
    AInftyStructure T(l3, 3, 3);
    CHECK(alt_bracket_check(T, 3).pass);
    CHECK(alt_bracket_check(T, 2).pass);
    AInftyStructure A(ab, 3, 3);
    CHECK(alt_bracket_check(A, 2).pass);
    CHECK(alt_bracket_check(A, 3).pass);
}

TEST_CASE("involution identity")
{
    const auto sl2 = fixtures::sl2();
    const auto l3 = fixtures::l3only();
    const auto ab = fixtures::abelian({{"x", 0}, {"y", 1}});
    AInftyStructure S(sl2, 3, 3);
    AInftyStructure T(l3, 3, 3);
    AInftyStructure A(ab, 3, 3);
    for (int n = 1; n <= 3; ++n) {
        CHECK(involution_check(S, n).pass);
        CHECK(involution_check(T, n).pass);
    }
    CHECK(involution_check(A, 2).pass);
}

TEST_CASE("the coproduct is strict")
{
    const auto sl2 = fixtures::sl2();
    const auto ab = fixtures::abelian({{"x", 0}, {"y", 1}});
    AInftyStructure S(sl2, 2, 3);
    CHECK(coproduct_strictness_check(S, 2, 3).pass);
    AInftyStructure A(ab, 2, 3);
    CHECK(coproduct_strictness_check(A, 2, 3).pass);
    const Mono x{0};
    auto d = diagonal(ab, direct_sum(ab, ab), x);
    CHECK(d.size() == 2);
}

TEST_CASE("enveloping morphisms")
{
    SUBCASE("identity")
    {
        const auto L = fixtures::sl2();
        AInftyStructure A(L, 3, 3);
        auto id = LInftyMorphism::identity(L);
        AInftyMorphismData U(id, A, A);
        for (const auto& xs : enumerate_tuples(L, 1, 3)) {
            CHECK(U.component(xs) == LinComb<Mono>(xs[0]));
        }
        for (const auto& xs : enumerate_tuples(L, 2, 3)) {
            CHECK(U.component(xs).empty());
        }
    }
    SUBCASE("strict map to the abelianization")
    {
        const auto H = fixtures::heisenberg();
        const auto Ab = fixtures::abelian({{"x", 0}, {"y", 0}});
        LInftyMorphism pr(H, Ab);
        pr.set_component({0}, LinComb<int>(0));
        pr.set_component({1}, LinComb<int>(1));
        AInftyStructure AH(H, 3, 4);
        AInftyStructure AA(Ab, 3, 4);
        auto U = u_morphism(pr, AH, AA);
        CHECK(u_morphism_check(U).pass);
        for (const auto& xs : enumerate_tuples(H, 1, 4)) {
            CHECK(U.component(xs) == sym_linear_part(pr, xs[0]));
        }
        for (const auto& xs : enumerate_tuples(H, 2, 4)) {
            CHECK(U.component(xs).empty());
        }
    }
    SUBCASE("non-strict map between abelian algebras")
    {
        const auto L = fixtures::abelian({{"a", 0}, {"b", 0}});
        const auto M = fixtures::abelian({{"c", 0}, {"e", -1}});
        LInftyMorphism phi(L, M);
        phi.set_component({0}, LinComb<int>(0));
        phi.set_component({1}, LinComb<int>(0));
        phi.set_component({0, 1}, LinComb<int>(1));
        AInftyStructure AL(L, 3, 4);
        AInftyStructure AM(M, 3, 4);
        auto U = u_morphism(phi, AL, AM);
        CHECK(u_morphism_check(U).pass);
        bool higher = false;
        for (const auto& xs : enumerate_tuples(L, 2, 4)) {
            higher = higher || !U.component(xs).empty();
        }
        CHECK(higher);
    }
}

TEST_CASE("composition homotopy")
{
    const auto L = fixtures::abelian({{"a", 0}, {"b", 0}});
    const auto M = fixtures::abelian({{"c", 0}, {"e", -1}});
    const auto N = fixtures::abelian({{"p", 0}, {"q", -1}, {"r", -2}});
    LInftyMorphism phi(L, M);
    phi.set_component({0}, LinComb<int>(0));
    phi.set_component({1}, LinComb<int>(0));
    phi.set_component({0, 1}, LinComb<int>(1));
    LInftyMorphism psi(M, N);
    psi.set_component({0}, LinComb<int>(0));
    psi.set_component({1}, LinComb<int>(1));
    psi.set_component({0, 1}, LinComb<int>(2));
    AInftyStructure AL(L, 3, 4), AM(M, 3, 4), AN(N, 3, 4);
    CompositionHomotopy H(phi, psi, AL, AM, AN);
    CHECK(H.check().pass);

    auto idM = LInftyMorphism::identity(M);
    CompositionHomotopy H2(phi, idM, AL, AM, AM);
    CHECK(H2.check().pass);
    for (const auto& w : enumerate_ebar_words(L, 3, 4)) {
        CHECK(H2.apply(w).empty());
    }
}

TEST_CASE("truncation agreement")
{
    const auto t23 = fixtures::t23();
    const auto l3 = fixtures::l3only();
    const auto sl2 = fixtures::sl2();
    AInftyStructure A(t23, 3, 4);
    CHECK(truncation_agreement_check(A).pass);
    AInftyStructure B(l3, 3, 4);
    CHECK(truncation_agreement_check(B).pass);
    for (const auto& xs : enumerate_tuples(l3, 2, 4)) {
        CHECK(B.m(xs) == product(LinComb<Mono>(xs[0]), LinComb<Mono>(xs[1]), l3.degrees()));
    }
    AInftyStructure C(sl2, 3, 3);
    CHECK(truncation_agreement_check(C).pass);
}
