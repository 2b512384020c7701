#pragma once

#include "uenv/cobar.hpp"
#include "uenv/linfty.hpp"
#include "uenv/permutahedra.hpp"

#include <random>
#include <string>
#include <vector>

namespace uenv {

/// Result of the exhaustive checks of the contraction (f_V, g_V, h_V) of
/// Omega Sym_c(sV) onto Sym(V) on all cobar words of rank <= cap.
struct CobarContractionReport {
    long checked = 0;
    bool fg = true;
    bool homotopy = true;
    bool side_conditions = true;
    bool iota = true;
    std::string first_failure;

    [[nodiscard]] bool pass() const { return fg && homotopy && side_conditions && iota; }
};

namespace detail {

inline std::string render_cobar(const LInftyAlgebra& V, const CobarWord& w)
{
    std::string s;
    for (const auto& m : w) {
        s += "s^-1" + render_mono(V.basis(), m);
    }
    return s.empty() ? "1" : s;
}

} // namespace detail

inline CobarContractionReport verify_cobar_contraction(const LInftyAlgebra& V, int rank_cap,
                                                       const HomotopySource& hs = default_homotopies())
{
    if (!V.is_dg_lie() || V.max_arity() > 1) {
        throw std::invalid_argument("the cobar contraction needs a complex (only l_1)");
    }
    CobarContractionReport r;
    auto fail = [&r](bool& flag, const std::string& what) {
        if (flag) {
            flag = false;
            if (r.first_failure.empty()) {
                r.first_failure = what;
            }
        }
    };
    for (int rank = 1; rank <= rank_cap; ++rank) {
        for (const auto& w : enumerate_cobar_words(V, rank)) {
            ++r.checked;
            const LinComb<CobarWord> x(w);
            auto h = homotopy_hV(V, x, hs);
            auto lhs = x - g_V(V, f_V(V, x));
            auto rhs = cobar_differential(V, h) + homotopy_hV(V, cobar_differential(V, x), hs);
            if (!(lhs == rhs)) {
                fail(r.homotopy, "1 - gf != dh + hd at " + detail::render_cobar(V, w));
            }
            if (!f_V(V, h).empty()) {
                fail(r.side_conditions, "fh != 0 at " + detail::render_cobar(V, w));
            }
            if (!homotopy_hV(V, h, hs).empty()) {
                fail(r.side_conditions, "hh != 0 at " + detail::render_cobar(V, w));
            }
            if (!(homotopy_hV(V, iota_omega(V, x), hs) == iota_omega(V, h))) {
                fail(r.iota, "h does not commute with the involution at " + detail::render_cobar(V, w));
            }
        }
        for (const auto& m : enumerate_monos(V.dim(), rank, V.degrees())) {
            ++r.checked;
            auto gm = g_V(V, m);
            if (!(f_V(V, gm) == LinComb<Mono>(m))) {
                fail(r.fg, "fg != 1 at " + render_mono(V.basis(), m));
            }
            if (!homotopy_hV(V, gm, hs).empty()) {
                fail(r.side_conditions, "hg != 0 at " + render_mono(V.basis(), m));
            }
        }
    }
    return r;
}

/// A chain map V -> W (degree 0, commuting with l_1) drawn from a seeded
/// generator: a random small-integer combination of a basis of all chain maps.
inline LInftyMorphism random_chain_map(const LInftyAlgebra& V, const LInftyAlgebra& W, std::uint64_t seed)
{
    // unknowns: entries (w, v) with |w| = |v|
    std::vector<std::pair<int, int>> vars;
    for (int v = 0; v < V.dim(); ++v) {
        for (int w = 0; w < W.dim(); ++w) {
            if (V.basis().degree(v) == W.basis().degree(w)) {
                vars.emplace_back(w, v);
            }
        }
    }
    // constraints: l_1^W phi - phi l_1^V = 0, one row per (w', v)
    std::map<std::pair<int, int>, std::map<int, Scalar>> rows;
    for (std::size_t k = 0; k < vars.size(); ++k) {
        const auto [w, v] = vars[k];
        for (const auto& [w2, c] : W.bracket({w})) {
            rows[{w2, v}][static_cast<int>(k)] += c;
        }
    }
    for (int v = 0; v < V.dim(); ++v) {
        for (const auto& [v2, c] : V.bracket({v})) {
            for (std::size_t k = 0; k < vars.size(); ++k) {
                if (vars[k].second == v2) {
                    rows[{vars[k].first, v}][static_cast<int>(k)] -= c;
                }
            }
        }
    }
    // null space by dense reduction
    const int nv = static_cast<int>(vars.size());
    std::vector<std::vector<Scalar>> mat;
    for (const auto& [key, row] : rows) {
        std::vector<Scalar> r(static_cast<std::size_t>(nv), Scalar(0));
        for (const auto& [k, c] : row) {
            r[static_cast<std::size_t>(k)] = c;
        }
        mat.push_back(std::move(r));
    }
    std::vector<int> pivot_col;
    std::size_t rank_rows = 0;
    for (int col = 0; col < nv && rank_rows < mat.size(); ++col) {
        std::size_t piv = rank_rows;
        while (piv < mat.size() && sgn(mat[piv][static_cast<std::size_t>(col)]) == 0) {
            ++piv;
        }
        if (piv == mat.size()) {
            continue;
        }
        std::swap(mat[piv], mat[rank_rows]);
        const Scalar inv = 1 / mat[rank_rows][static_cast<std::size_t>(col)];
        for (auto& x : mat[rank_rows]) {
            x *= inv;
        }
        for (std::size_t i = 0; i < mat.size(); ++i) {
            if (i != rank_rows && sgn(mat[i][static_cast<std::size_t>(col)]) != 0) {
                const Scalar f = mat[i][static_cast<std::size_t>(col)];
                for (int j = 0; j < nv; ++j) {
                    mat[i][static_cast<std::size_t>(j)] -= f * mat[rank_rows][static_cast<std::size_t>(j)];
                }
            }
        }
        pivot_col.push_back(col);
        ++rank_rows;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    std::vector<Scalar> x(static_cast<std::size_t>(nv), Scalar(0));
    std::vector<char> is_pivot(static_cast<std::size_t>(nv), 0);
    for (int c : pivot_col) {
        is_pivot[static_cast<std::size_t>(c)] = 1;
    }
    for (int j = 0; j < nv; ++j) {
        if (!is_pivot[static_cast<std::size_t>(j)]) {
            x[static_cast<std::size_t>(j)] = dist(rng);
        }
    }
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        Scalar s(0);
        for (int j = 0; j < nv; ++j) {
            if (!is_pivot[static_cast<std::size_t>(j)]) {
                s += mat[i][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            }
        }
        x[static_cast<std::size_t>(pivot_col[i])] = -s;
    }
    LInftyMorphism phi(V, W);
    std::map<int, LinComb<int>> images;
    for (int k = 0; k < nv; ++k) {
        images[vars[static_cast<std::size_t>(k)].second].add(vars[static_cast<std::size_t>(k)].first,
                                                            x[static_cast<std::size_t>(k)]);
    }
    for (const auto& [v, img] : images) {
        phi.set_component({v}, img);
    }
    return phi;
}

/// Sym(phi_1) on Sym(L), multiplicative.
inline LinComb<Mono> sym_linear_part(const LInftyMorphism& phi, const Mono& m)
{
    LinComb<Mono> acc(Mono{});
    for (int g : m) {
        LinComb<Mono> x;
        for (const auto& [h, c] : phi.component(Mono{g})) {
            x.add(Mono{h}, c);
        }
        acc = product(acc, x, phi.target().degrees());
    }
    return acc;
}

/// Naturality of the contraction along a chain map phi: V -> W:
/// f_W Omega(phi) = Sym(phi) f_V, Omega(phi) g_V = g_W Sym(phi) and
/// h_W Omega(phi) = Omega(phi) h_V, on cobar words of rank <= cap.
inline CheckResult functoriality_check(const LInftyMorphism& phi, int rank_cap,
                                       const HomotopySource& hs = default_homotopies())
{
    if (!phi.is_strict()) {
        throw std::invalid_argument("functoriality_check needs a chain map");
    }
    const auto& V = phi.source();
    const auto& W = phi.target();
    CheckResult r;
    auto sym = [&phi](const LinComb<Mono>& v) {
        LinComb<Mono> out;
        for (const auto& [m, c] : v) {
            out.add(sym_linear_part(phi, m), c);
        }
        return out;
    };
    for (int rank = 1; rank <= rank_cap; ++rank) {
        for (const auto& w : enumerate_cobar_words(V, rank)) {
            ++r.checked;
            const LinComb<CobarWord> x(w);
            auto ox = omega_map(phi, x);
            if (!(homotopy_hV(W, ox, hs) == omega_map(phi, homotopy_hV(V, x, hs)))) {
                r.pass = false;
                r.counterexample = detail::render_cobar(V, w);
                r.image = "h_W Omega(phi) != Omega(phi) h_V";
                return r;
            }
            if (!(f_V(W, ox) == sym(f_V(V, x)))) {
                r.pass = false;
                r.counterexample = detail::render_cobar(V, w);
                r.image = "f_W Omega(phi) != Sym(phi) f_V";
                return r;
            }
        }
        for (const auto& m : enumerate_monos(V.dim(), rank, V.degrees())) {
            ++r.checked;
            if (!(omega_map(phi, g_V(V, m)) == g_V(W, sym(LinComb<Mono>(m))))) {
                r.pass = false;
                r.counterexample = render_mono(V.basis(), m);
                r.image = "Omega(phi) g_V != g_W Sym(phi)";
                return r;
            }
        }
    }
    return r;
}

} // namespace uenv
