#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "uenv/hpt.hpp"

using namespace uenv;

TEST_CASE("unperturbed bar contraction satisfies all identities")
{
    auto L = fixtures::sl2();
    BarOperators ops(L);
    auto base = ops.base_contraction();
    std::vector<EBarWord> mkeys = enumerate_ebar_words(L, 3, 3);
    CHECK(check_contraction(base, enumerate_bar_words(L, 3), mkeys).empty());
}

TEST_CASE("perturbing by zero changes nothing")
{
    auto L = fixtures::heisenberg();
    BarOperators ops(L);
    auto base = ops.base_contraction();
    BasisOp<BarWord, BarWord> zero = [](const BarWord&) { return LinComb<BarWord>{}; };
    auto p = perturb(base, zero);
    for (const auto& w : enumerate_bar_words(L, 3)) {
        CHECK(p.F(w) == base.F(w));
        CHECK(p.H(w) == base.H(w));
        CHECK(p.dN(w) == base.dN(w));
    }
    for (const auto& w : enumerate_ebar_words(L, 3, 3)) {
        CHECK(p.G(w) == base.G(w));
        CHECK(p.dM(w) == base.dM(w));
    }
}

TEST_CASE("t_L vanishes for abelian algebras")
{
    auto L = fixtures::abelian({{"x", 0}, {"y", 1}});
    BarOperators ops(L);
    for (const auto& w : enumerate_bar_words(L, 3)) {
        CHECK(ops.t_L(w).empty());
    }
}

TEST_CASE("perturbed bar differential squares to zero on sl2")
{
    const auto L = fixtures::sl2();
    Transfer T(L);
    for (const auto& w : enumerate_bar_words(T.algebra(), 4)) {
        LinComb<BarWord> dd;
        for (const auto& [v, c] : T.delta(w)) {
            dd.add(T.delta(v), c);
        }
        CHECK(dd.empty());
    }
}

TEST_CASE("transferred contraction identities")
{
    for (const auto& L : {fixtures::sl2(), fixtures::l3only(), fixtures::mixed()}) {
        Transfer T(L);
        auto r = transfer_identities_check(T, 3);
        INFO(r.image);
        CHECK(r.pass);
    }
}

TEST_CASE("perturbing in two steps equals perturbing once")
{
    auto r = composition_law_check(fixtures::sl2(), 3);
    INFO(r.counterexample << " " << r.image);
    CHECK(r.pass);
    CHECK(composition_law_check(fixtures::t23(), 3).pass);
}

TEST_CASE("abelian transfer reproduces the bar construction of Sym(V)")
{
    CHECK(abelian_transfer_check(fixtures::abelian({{"x", 0}}), 4, 5).pass);
    CHECK(abelian_transfer_check(fixtures::abelian({{"x", 0}, {"y", 1}, {"z", -1}}), 3, 4).pass);
    CHECK_THROWS_AS(abelian_transfer_check(fixtures::sl2(), 2, 2), std::invalid_argument);
}

TEST_CASE("a perturbation that is not locally nilpotent hits the budget")
{
    Contraction<int, int> c;
    c.dN = [](const int&) { return LinComb<int>{}; };
    c.dM = [](const int&) { return LinComb<int>{}; };
    c.F = [](const int& k) { return k == 0 ? LinComb<int>(0) : LinComb<int>{}; };
    c.G = [](const int& k) { return LinComb<int>(k); };
    c.H = [](const int& k) { return k == 1 ? LinComb<int>(2) : LinComb<int>{}; };
    c.budget = [](const int&) { return 5; };
    BasisOp<int, int> t = [](const int& k) { return k == 2 ? LinComb<int>(1) : LinComb<int>(k == 0 ? 1 : -1); };
    auto p = perturb(c, t);
    CHECK_THROWS_AS(p.F(1), PerturbationBudgetExceeded);
}
