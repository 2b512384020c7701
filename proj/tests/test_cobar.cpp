#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "uenv/cobar_contraction.hpp"

using namespace uenv;

namespace {

using Pair = std::pair<CobarWord, CobarWord>;

/// (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd
LinComb<Pair> product_of_pairs(const LInftyAlgebra& L, const LinComb<Pair>& x, const LinComb<Pair>& y)
{
    LinComb<Pair> out;
    for (const auto& [ab, cx] : x) {
        for (const auto& [cd, cy] : y) {
            const int sign = is_odd(cobar_degree(L, ab.second) * cobar_degree(L, cd.first)) ? -1 : 1;
            out.add(Pair{concat(ab.first, cd.first), concat(ab.second, cd.second)}, cx * cy * sign);
        }
    }
    return out;
}

/// (delta (x) 1 + 1 (x) delta) on pairs.
LinComb<Pair> delta_on_pairs(const LInftyAlgebra& L, const LinComb<Pair>& v, CobarParts parts)
{
    LinComb<Pair> out;
    for (const auto& [ab, c] : v) {
        for (const auto& [a2, x] : cobar_differential(L, ab.first, parts)) {
            out.add(Pair{a2, ab.second}, c * x);
        }
        const Scalar sign = is_odd(cobar_degree(L, ab.first)) ? -1 : 1;
        for (const auto& [b2, x] : cobar_differential(L, ab.second, parts)) {
            out.add(Pair{ab.first, b2}, c * x * sign);
        }
    }
    return out;
}

LinComb<Pair> coproduct(const LInftyAlgebra& L, const LinComb<CobarWord>& v)
{
    LinComb<Pair> out;
    for (const auto& [w, c] : v) {
        out.add(shuffle_coproduct(L, w), c);
    }
    return out;
}

} // namespace

TEST_CASE("cobar differential")
{
    SUBCASE("abelian: only the coproduct part")
    {
        auto L = fixtures::abelian({{"x", 0}, {"y", 1}});
        for (int r = 1; r <= 3; ++r) {
            for (const auto& w : enumerate_cobar_words(L, r)) {
                auto d = cobar_differential(L, w, CobarParts::full());
                CHECK(d == cobar_differential(L, w, CobarParts{ArityRange{1, 0}, true}));
                for (const auto& [v, c] : d) {
                    CHECK(v.size() == w.size() + 1);
                }
            }
        }
    }
    SUBCASE("squares to zero on sl2 up to rank 4")
    {
        auto L = fixtures::sl2();
        for (int r = 1; r <= 4; ++r) {
            for (const auto& w : enumerate_cobar_words(L, r)) {
                auto d = cobar_differential(L, w, CobarParts::full());
                CHECK(cobar_differential(L, d, CobarParts::full()).empty());
            }
        }
    }
}

TEST_CASE("shuffle coproduct: multiplicative and a coderivation for delta")
{
    auto L = fixtures::sl2();
    auto M = fixtures::abelian({{"a", 0}, {"b", 1}});
    for (const auto* X : {&L, &M}) {
        for (int r = 1; r <= 3; ++r) {
            for (const auto& w : enumerate_cobar_words(*X, r)) {
                auto lhs = coproduct(*X, cobar_differential(*X, w, CobarParts::full()));
                auto rhs = delta_on_pairs(*X, shuffle_coproduct(*X, w), CobarParts::full());
                CHECK(lhs == rhs);
            }
        }
        const auto words = enumerate_cobar_words(*X, 2);
        for (const auto& a : words) {
            for (const auto& b : words) {
                auto lhs = shuffle_coproduct(*X, concat(a, b));
                auto rhs = product_of_pairs(*X, shuffle_coproduct(*X, a), shuffle_coproduct(*X, b));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("involution on the cobar construction")
{
    auto L = fixtures::sl2();
    for (int r = 1; r <= 3; ++r) {
        for (const auto& w : enumerate_cobar_words(L, r)) {
            const LinComb<CobarWord> x(w);
            CHECK(iota_omega(L, iota_omega(L, x)) == x);
            CHECK(iota_omega(L, cobar_differential(L, x, CobarParts::full()))
                  == cobar_differential(L, iota_omega(L, x), CobarParts::full()));
        }
    }
}

TEST_CASE("contraction onto Sym(V), dim V <= 2")
{
    std::vector<LInftyAlgebra> spaces;
    spaces.push_back(fixtures::abelian({{"a", 0}}));
    spaces.push_back(fixtures::abelian({{"a", 1}}));
    spaces.push_back(fixtures::abelian({{"a", 0}, {"b", 1}}));
    spaces.push_back(fixtures::abelian({{"a", 0}, {"b", 0}}));
    spaces.push_back(fixtures::abelian({{"a", 1}, {"b", -1}}));
    spaces.push_back(fixtures::arrow());
    for (const auto& V : spaces) {
        auto r = verify_cobar_contraction(V, 4);
        INFO(r.first_failure);
        CHECK(r.pass());
    }
}

TEST_CASE("h_V g_V = 0 on Sym^2(V) and h_V kills one-letter words")
{
    auto V = fixtures::abelian({{"a", 0}, {"b", 1}});
    for (const auto& m : enumerate_monos(V.dim(), 2, V.degrees())) {
        CHECK(homotopy_hV(V, g_V(V, m)).empty());
    }
    for (int n = 1; n <= 4; ++n) {
        for (const auto& m : enumerate_monos(V.dim(), n, V.suspended_degrees())) {
            CHECK(homotopy_hV(V, CobarWord{m}).empty());
        }
    }
}

TEST_CASE("naturality along random chain maps")
{
    auto V = fixtures::arrow();
    LInftyAlgebra W(GradedSpace({{"p", 1}, {"q", 0}, {"r", 1}}));
    W.set_bracket({1}, LinComb<int>(0));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto phi = random_chain_map(V, W, seed);
        CHECK(check_morphism(phi, 3).pass);
        auto r = functoriality_check(phi, 4);
        INFO(r.counterexample << " " << r.image);
        CHECK(r.pass);
    }
}

TEST_CASE("a wrong homotopy breaks the contraction")
{
    auto V = fixtures::abelian({{"a", 0}, {"b", 1}});
    CHECK_FALSE(verify_cobar_contraction(V, 3, mutated_homotopies()).pass());
}
