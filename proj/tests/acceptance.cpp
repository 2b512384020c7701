// Acceptance run: one PASS/FAIL line per criterion.

#include "fixtures.hpp"
#include "uenv/bgg.hpp"
#include "uenv/cobar_contraction.hpp"
#include "uenv/json_io.hpp"
#include "uenv/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#ifndef UENV_DATA_DIR
#define UENV_DATA_DIR "data"
#endif

using namespace uenv;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            note = what;
        }
    }
    void require(const CheckResult& r, const std::string& what)
    {
        require(r.pass, what + (r.counterexample.empty() ? "" : " at " + r.counterexample));
    }
};

std::string data(const std::string& name) { return std::string(UENV_DATA_DIR) + "/" + name; }

/// Ordered set partitions of n, by the recurrence over the first block.
long fubini(int n)
{
    std::vector<long> a(static_cast<std::size_t>(n) + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= n; ++m) {
        long binom = 1;
        for (int k = 1; k <= m; ++k) {
            binom = binom * (m - k + 1) / k;
            a[static_cast<std::size_t>(m)] += binom * a[static_cast<std::size_t>(m - k)];
        }
    }
    return a[static_cast<std::size_t>(n)];
}

Outcome permutahedra()
{
    Outcome o;
    for (int n = 1; n <= 5; ++n) {
        const std::string tag = "n = " + std::to_string(n) + ": ";
        auto r = verify_permutahedron(n, contraction(n));
        o.require(r.pass(), tag + r.first_failure);
        long total = 0;
        for (const auto& [d, c] : r.face_counts) {
            total += c;
        }
        o.require(total == fubini(n), tag + "face total");
        int rank = 0;
        for (const auto& [deg, dim] : r.homology) {
            rank += dim;
        }
        o.require(rank == 1 && r.homology.at(0) == 1, tag + "homology");
    }
    return o;
}

Outcome cobar_contraction()
{
    Outcome o;
    std::vector<LInftyAlgebra> spaces;
    spaces.push_back(fixtures::abelian({{"a", 0}}));
    spaces.push_back(fixtures::abelian({{"a", 1}}));
    spaces.push_back(fixtures::abelian({{"a", 0}, {"b", 0}}));
    spaces.push_back(fixtures::abelian({{"a", 0}, {"b", 1}}));
    spaces.push_back(fixtures::abelian({{"a", 1}, {"b", -1}}));
    spaces.push_back(fixtures::arrow());
    for (const auto& V : spaces) {
        auto r = verify_cobar_contraction(V, 4);
        o.require(r.pass(), r.first_failure);
    }
    const auto V = fixtures::arrow();
    LInftyAlgebra W(GradedSpace({{"p", 1}, {"q", 0}, {"r", 1}}));
    W.set_bracket({1}, LinComb<int>(0));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto phi = random_chain_map(V, W, seed);
        o.require(check_morphism(phi, 4), "random map");
        o.require(functoriality_check(phi, 4), "functoriality");
    }
    return o;
}

Outcome stasheff()
{
    Outcome o;
    for (const char* name : {"abelian1.json", "abelian2.json", "abelian3.json", "sl2.json", "heisenberg.json",
                             "odd.json", "l3only.json"}) {
        auto L = load_algebra(data(name));
        AInftyStructure A(L, 4, 5);
        o.require(stasheff_check(A), name);
    }
    return o;
}

Outcome pbw()
{
    Outcome o;
    for (const char* name : {"sl2.json", "heisenberg.json"}) {
        auto L = load_algebra(data(name));
        AInftyStructure A(L, 4, 4);
        o.require(pbw_compare(A), name);
        o.require(m2_generator_check(A), name);
    }
    return o;
}

Outcome alt()
{
    Outcome o;
    auto sl2 = load_algebra(data("sl2.json"));
    auto heis = load_algebra(data("heisenberg.json"));
    auto l3 = load_algebra(data("l3only.json"));
    AInftyStructure S(sl2, 3, 3), H(heis, 3, 3), T(l3, 3, 3);
    o.require(alt_bracket_check(S, 2), "sl2");
    o.require(alt_bracket_check(H, 2), "heisenberg");
    o.require(alt_bracket_check(T, 3), "l3only");
    return o;
}

Outcome involution_and_coproduct()
{
    Outcome o;
    for (const char* name : {"sl2.json", "l3only.json"}) {
        auto L = load_algebra(data(name));
        AInftyStructure A(L, 3, 3);
        for (int n = 1; n <= 3; ++n) {
            o.require(involution_check(A, n), name);
        }
        o.require(coproduct_strictness_check(A, 3, 3), name);
    }
    return o;
}

Outcome morphisms()
{
    Outcome o;
    auto ns = morphism_from_json(parse_json_file(data("morphism_nonstrict.json")));
    auto st = morphism_from_json(parse_json_file(data("morphism_strict.json")));
    AInftyStructure NL(*ns.source, 3, 4), NM(*ns.target, 3, 4);
    AInftyStructure SL(*st.source, 3, 4), SM(*st.target, 3, 4);
    auto Un = u_morphism(*ns.phi, NL, NM);
    auto Us = u_morphism(*st.phi, SL, SM);
    o.require(u_morphism_check(Un), "non-strict U(phi)");
    o.require(u_morphism_check(Us), "strict U(phi)");
    for (const auto& xs : enumerate_tuples(*ns.source, 1, 4)) {
        o.require(Un.component(xs) == sym_linear_part(*ns.phi, xs[0]), "U(phi)_1 != Sym(phi_1)");
    }
    for (int i = 2; i <= 3; ++i) {
        for (const auto& xs : enumerate_tuples(*st.source, i, 4)) {
            o.require(Us.component(xs).empty(), "strict U(phi)_i != 0");
        }
    }

    // non-strict pair L -> M -> N
    const auto& L = *ns.source;
    const auto& M = *ns.target;
    const auto N = fixtures::abelian({{"p", 0}, {"q", -1}, {"r", -2}});
    LInftyMorphism psi(M, N);
    psi.set_component({0}, LinComb<int>(0));
    psi.set_component({1}, LinComb<int>(1));
    psi.set_component({0, 1}, LinComb<int>(2));
    AInftyStructure AN(N, 3, 4);
    CompositionHomotopy H(*ns.phi, psi, NL, NM, AN);
    o.require(H.check(), "composition homotopy");

    auto idL = LInftyMorphism::identity(L);
    auto idM = LInftyMorphism::identity(M);
    CompositionHomotopy left(idL, *ns.phi, NL, NL, NM);
    CompositionHomotopy right(*ns.phi, idM, NL, NM, NM);
    o.require(left.check(), "strict first factor");
    o.require(right.check(), "strict second factor");
    for (const auto& w : enumerate_ebar_words(L, 3, 4)) {
        o.require(left.apply(w).empty() && right.apply(w).empty(), "H != 0 with a strict factor");
    }
    return o;
}

Outcome perturbation()
{
    Outcome o;
    auto sl2 = load_algebra(data("sl2.json"));
    o.require(composition_law_check(sl2, 3), "composition law");
    for (const char* name : {"abelian1.json", "abelian2.json", "abelian3.json"}) {
        o.require(abelian_transfer_check(load_algebra(data(name)), 3, 4), name);
    }
    return o;
}

Outcome tableaux()
{
    Outcome o;
    SuiteConfig cfg;
    cfg.n_cap = 4;
    for (const auto& rec : tableaux_suite(cfg)) {
        o.require(rec.status == Status::pass, rec.name + " " + rec.detail);
    }
    return o;
}

Outcome bgg()
{
    Outcome o;
    auto sl2 = load_algebra(data("sl2.json"));
    AInftyStructure A(sl2, 4, 4);
    o.require(twisted_cochain_check(A, 4), "twisting cochain");
    for (const char* name : {"odd1.json", "odd.json"}) {
        auto L = load_algebra(data(name));
        AInftyStructure B(L, 3, 4);
        auto r = twisted_tensor_acyclicity(B, 4);
        o.require(r.exact && r.pass() && r.homology == std::map<int, int>{{0, 1}}, std::string(name) + " homology");
    }
    auto triv = module_from_json(parse_json_file(data("sl2_trivial_module.json")));
    auto ad = module_from_json(parse_json_file(data("sl2_adjoint_module.json")));
    for (const auto* mod : {triv.module.get(), ad.module.get()}) {
        AInftyStructure S(mod->algebra(), 4, 4);
        o.require(check_module(*mod, 4), "module");
        o.require(roundtrip_FG(*mod, S, 4), "FG");
        o.require(roundtrip_GF(functor_G(*mod, S)), "GF");
    }
    AInftyStructure broken(*ad.algebra, 4, 4, mutated_homotopies());
    o.require(!roundtrip_FG(*ad.module, broken, 4).pass, "mutated FG was not detected");
    return o;
}

} // namespace

int main()
{
    const std::vector<std::function<Outcome()>> criteria = {
        permutahedra, cobar_contraction, stasheff, pbw, alt, involution_and_coproduct,
        morphisms,    perturbation,      tableaux, bgg,
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && o.pass;
        std::printf("criterion %zu: %s (%.2fs)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", s, o.note.empty() ? "" : " ",
                    o.note.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
