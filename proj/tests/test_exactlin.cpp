#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uenv/exactlin.hpp"

#include <random>

using namespace uenv;

TEST_CASE("koszul sign of simple permutations")
{
    const std::vector<int> odd2{1, 1};
    const std::vector<int> mixed{1, 2};
    CHECK(koszul_sign(std::vector<int>{0, 1, 2}, std::vector<int>{1, 3, 5}) == 1);
    CHECK(koszul_sign(std::vector<int>{1, 0}, odd2) == -1);
    CHECK(koszul_sign(std::vector<int>{1, 0}, mixed) == 1);
    CHECK_THROWS_AS(koszul_sign(std::vector<int>{0, 0}, odd2), std::invalid_argument);
}

TEST_CASE("koszul sign is a cocycle on S_3")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> deg(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> d{deg(rng), deg(rng), deg(rng)};
        for (const auto& s : all_permutations(3)) {
            std::vector<int> moved{d[s[0]], d[s[1]], d[s[2]]};
            for (const auto& t : all_permutations(3)) {
                const auto st = compose_then(s, t);
                CHECK(koszul_sign(st, d) == koszul_sign(s, d) * koszul_sign(t, moved));
            }
        }
    }
}

TEST_CASE("permutation sign matches parity of inversions")
{
    CHECK(permutation_sign(std::vector<int>{0, 1, 2}) == 1);
    CHECK(permutation_sign(std::vector<int>{1, 0, 2}) == -1);
    CHECK(permutation_sign(std::vector<int>{1, 2, 0}) == 1);
}

TEST_CASE("suspension bookkeeping")
{
    GradedSpace V({{"v", 1}, {"w", 2}});
    const BasisWord v{WordKind::tensor, {0}};
    GradedVector x{0, LinComb<BasisWord>(v)};
    auto sx = suspend(x, 1);
    CHECK(degree_of(V, v, sx.suspension) == 0);
    CHECK(suspend(sx, -1) == x);

    GradedLinearMap<BasisWord> d;
    d.degree = 1;
    d.columns[v] = LinComb<BasisWord>(BasisWord{WordKind::tensor, {1}});
    auto dsx = apply_suspended(d, sx);
    auto s_dx = suspend(GradedVector{0, d(x.entries)}, 1);
    s_dx.entries *= Scalar(-1);
    CHECK(dsx == s_dx);
}

TEST_CASE("tensor product of maps")
{
    auto deg = [](int k) { return k; }; // basis vector k sits in degree k
    GradedLinearMap<int> id;
    for (int k = 0; k < 3; ++k) {
        id.columns[k] = LinComb<int>(k);
    }
    auto idid = tensor_map(id, id, deg);
    for (const auto& [key, col] : idid.columns) {
        CHECK(col == LinComb<std::pair<int, int>>(key));
    }

    GradedLinearMap<int> g;
    g.degree = 1;
    g.columns[1] = LinComb<int>(2);
    auto fg = tensor_map(id, g, deg);
    CHECK(fg.columns.at({1, 1}) == LinComb<std::pair<int, int>>({1, 2}, Scalar(-1)));
    CHECK(fg.columns.at({2, 1}) == LinComb<std::pair<int, int>>({2, 2}));
}

TEST_CASE("interchange law for tensor products on random maps")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-2, 2);
    auto deg = [](int k) { return k; };
    auto random_map = [&](int degree) {
        GradedLinearMap<int> f;
        f.degree = degree;
        for (int k = -3; k <= 3; ++k) {
            if (k + degree < -3 || k + degree > 3) {
                continue;
            }
            LinComb<int> col(k + degree, Scalar(coef(rng)));
            if (!col.empty()) {
                f.columns[k] = col;
            }
        }
        return f;
    };
    for (int trial = 0; trial < 30; ++trial) {
        const int df = trial % 3 - 1;
        const int dg = (trial / 3) % 3 - 1;
        const int dfp = (trial / 9) % 3 - 1;
        const int dgp = trial % 2;
        auto f = random_map(df);
        auto g = random_map(dg);
        auto fp = random_map(dfp);
        auto gp = random_map(dgp);
        auto lhs = compose(tensor_map(f, g, deg), tensor_map(fp, gp, deg));
        auto rhs = tensor_map(compose(f, fp), compose(g, gp), deg);
        const Scalar sign = is_odd(dg * dfp) ? -1 : 1;
        for (int a = -3; a <= 3; ++a) {
            for (int b = -3; b <= 3; ++b) {
                auto r = rhs(std::pair{a, b});
                r *= sign;
                CHECK(lhs(std::pair{a, b}) == r);
            }
        }
    }
}

TEST_CASE("graded symmetrization")
{
    GradedSpace V({{"a", 0}, {"b", 0}, {"v", 1}});
    const BasisWord single{WordKind::tensor, {2}};
    CHECK(symmetrize(V, single) == LinComb<BasisWord>(single));
    LinComb<BasisWord> expected;
    expected.add(BasisWord{WordKind::tensor, {0, 1}}, Scalar(1, 2));
    expected.add(BasisWord{WordKind::tensor, {1, 0}}, Scalar(1, 2));
    CHECK(symmetrize(V, BasisWord{WordKind::tensor, {0, 1}}) == expected);
    CHECK(symmetrize(V, BasisWord{WordKind::tensor, {2, 2}}).empty());
    CHECK_FALSE(make_symmetric(V, {2, 2}).has_value());
    auto ab = make_symmetric(V, {1, 0});
    REQUIRE(ab.has_value());
    CHECK(ab->first.letters == std::vector<int>{0, 1});
    CHECK(ab->second == 1);
}

TEST_CASE("homology of small complexes")
{
    SUBCASE("zero differential")
    {
        FiniteComplex c({{0, 2}, {1, 3}}, {});
        CHECK(homology_dims(c) == std::map<int, int>{{0, 2}, {1, 3}});
    }
    SUBCASE("identity k -> k")
    {
        SparseMatrix m(1, 1);
        m.add(0, 0, Scalar(1));
        FiniteComplex c({{0, 1}, {1, 1}}, {{0, m}});
        CHECK(homology_dims(c) == std::map<int, int>{{0, 0}, {1, 0}});
    }
    SUBCASE("d o d != 0 is rejected")
    {
        SparseMatrix a(1, 1);
        a.add(0, 0, Scalar(1));
        CHECK_THROWS_AS(FiniteComplex({{0, 1}, {1, 1}, {2, 1}}, {{0, a}, {1, a}}), std::invalid_argument);
    }
}

TEST_CASE("rank and solving over the rationals")
{
    SparseMatrix m(3, 3);
    m.add(0, 0, Scalar(1, 2));
    m.add(1, 0, Scalar(1, 3));
    m.add(0, 1, Scalar(1));
    m.add(1, 1, Scalar(2, 3));
    m.add(2, 2, Scalar(5));
    CHECK(rank(m) == 2);
    LinearSolver s(m);
    CHECK(s.rank() == 2);
    SparseRow b{{0, Scalar(1)}, {1, Scalar(2, 3)}, {2, Scalar(10)}};
    auto x = s.solve(b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
    SparseRow bad{{0, Scalar(1)}};
    CHECK_FALSE(s.solve(bad).has_value());
}

TEST_CASE("rational parsing")
{
    CHECK(parse_scalar("-6/4") == Scalar(-3, 2));
    CHECK(parse_scalar("7") == Scalar(7));
    CHECK(format_scalar(Scalar(3)) == "3/1");
    CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scalar("x"), std::invalid_argument);
}
