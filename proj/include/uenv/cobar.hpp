#pragma once

#include "uenv/linfty.hpp"
#include "uenv/sym.hpp"

#include <utility>
#include <vector>

namespace uenv {

/// Element of the reduced cobar construction of C(L) = Sym_c(sL): a tensor
/// word of letters s^{-1}m, m a nonempty monomial of sL. The empty word is
/// the unit.
using CobarWord = std::vector<Mono>;

/// Rank = total number of L-letters.
inline int cobar_rank(const CobarWord& w)
{
    int r = 0;
    for (const auto& m : w) {
        r += static_cast<int>(m.size());
    }
    return r;
}

/// Geometric degree: a letter s^{-1}Sym^k has degree k-1.
inline int geometric_degree(const CobarWord& w) { return cobar_rank(w) - static_cast<int>(w.size()); }

inline int cobar_letter_degree(const LInftyAlgebra& L, const Mono& m)
{
    return mono_degree(m, L.suspended_degrees()) + 1;
}

inline int cobar_degree(const LInftyAlgebra& L, const CobarWord& w)
{
    int d = 0;
    for (const auto& m : w) {
        d += cobar_letter_degree(L, m);
    }
    return d;
}

inline CobarWord concat(const CobarWord& a, const CobarWord& b)
{
    CobarWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline LinComb<CobarWord> concat(const LinComb<CobarWord>& a, const LinComb<CobarWord>& b)
{
    LinComb<CobarWord> out;
    for (const auto& [x, cx] : a) {
        for (const auto& [y, cy] : b) {
            out.add(concat(x, y), cx * cy);
        }
    }
    return out;
}

/// Which parts of the cobar differential to apply.
struct CobarParts {
    ArityRange internal = ArityRange::linear(); // arities of the CE coderivation feeding omega_1
    bool coproduct = true;                       // include omega_2

    static CobarParts unperturbed() { return {ArityRange::linear(), true}; }
    static CobarParts full() { return {ArityRange::all(), true}; }
    static CobarParts higher_brackets() { return {ArityRange::higher(), false}; }
};

/// delta_Omega on one letter s^{-1}c:
/// omega_1(s^{-1}c) = -s^{-1} dc, omega_2(s^{-1}c) = sum (-1)^{|c'|} s^{-1}c' (x) s^{-1}c''.
inline LinComb<CobarWord> cobar_letter_differential(const LInftyAlgebra& L, const Mono& c, CobarParts parts)
{
    LinComb<CobarWord> out;
    for (const auto& [m, x] : ce_differential(L, c, parts.internal)) {
        out.add(CobarWord{m}, -x);
    }
    if (parts.coproduct) {
        for (const auto& [ab, x] : reduced_coproduct(c, L.suspended_degrees())) {
            const int da = mono_degree(ab.first, L.suspended_degrees());
            out.add(CobarWord{ab.first, ab.second}, is_odd(da) ? -x : x);
        }
    }
    return out;
}

/// Extension of the letter differential as a degree +1 derivation.
inline LinComb<CobarWord> cobar_differential(const LInftyAlgebra& L, const CobarWord& w,
                                             CobarParts parts = CobarParts::unperturbed())
{
    LinComb<CobarWord> out;
    int before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Scalar sign = is_odd(before) ? -1 : 1;
        for (const auto& [piece, x] : cobar_letter_differential(L, w[i], parts)) {
            CobarWord r(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            r.insert(r.end(), piece.begin(), piece.end());
            r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
            out.add(std::move(r), x * sign);
        }
        before += cobar_letter_degree(L, w[i]);
    }
    return out;
}

inline LinComb<CobarWord> cobar_differential(const LInftyAlgebra& L, const LinComb<CobarWord>& v,
                                             CobarParts parts = CobarParts::unperturbed())
{
    LinComb<CobarWord> out;
    for (const auto& [w, c] : v) {
        out.add(cobar_differential(L, w, parts), c);
    }
    return out;
}

/// The anti-involution acting by -1 on generators:
/// iota(x_1 ... x_d) = (-1)^d (Koszul sign) x_d ... x_1.
inline LinComb<CobarWord> iota_omega(const LInftyAlgebra& L, const CobarWord& w)
{
    const int d = static_cast<int>(w.size());
    std::vector<int> degs;
    Permutation rev;
    for (int i = 0; i < d; ++i) {
        degs.push_back(cobar_letter_degree(L, w[static_cast<std::size_t>(i)]));
        rev.push_back(d - 1 - i);
    }
    int sign = koszul_sign(rev, degs);
    if (is_odd(d)) {
        sign = -sign;
    }
    CobarWord r(w.rbegin(), w.rend());
    return LinComb<CobarWord>(r, Scalar(sign));
}

inline LinComb<CobarWord> iota_omega(const LInftyAlgebra& L, const LinComb<CobarWord>& v)
{
    LinComb<CobarWord> out;
    for (const auto& [w, c] : v) {
        out.add(iota_omega(L, w), c);
    }
    return out;
}

/// Shuffle coproduct: generators primitive, extended multiplicatively.
inline LinComb<std::pair<CobarWord, CobarWord>> shuffle_coproduct(const LInftyAlgebra& L, const CobarWord& w)
{
    LinComb<std::pair<CobarWord, CobarWord>> out;
    const unsigned n = static_cast<unsigned>(w.size());
    std::vector<int> degs;
    for (const auto& m : w) {
        degs.push_back(cobar_letter_degree(L, m));
    }
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        CobarWord a;
        CobarWord b;
        int sign = 1;
        int odd_b = 0;
        for (unsigned i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                a.push_back(w[i]);
                if (is_odd(degs[i]) && is_odd(odd_b)) {
                    sign = -sign;
                }
            } else {
                b.push_back(w[i]);
                if (is_odd(degs[i])) {
                    ++odd_b;
                }
            }
        }
        out.add({std::move(a), std::move(b)}, Scalar(sign));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Projection and embedding between Omega Sym_c(sV) and Sym(V)
// ---------------------------------------------------------------------------

/// f_V: multiplicative, s^{-1}(sv) -> v, letters of weight >= 2 -> 0.
/// Output is a monomial of Sym(V) (degrees of V). The empty word maps to
/// the empty monomial (the unit).
inline LinComb<Mono> f_V(const LInftyAlgebra& L, const CobarWord& w)
{
    Mono letters;
    for (const auto& m : w) {
        if (m.size() != 1) {
            return {};
        }
        letters.push_back(m[0]);
    }
    auto c = canonical_mono(std::move(letters), L.degrees());
    if (!c) {
        return {};
    }
    return LinComb<Mono>(c->first, Scalar(c->second));
}

inline LinComb<Mono> f_V(const LInftyAlgebra& L, const LinComb<CobarWord>& v)
{
    LinComb<Mono> out;
    for (const auto& [w, c] : v) {
        out.add(f_V(L, w), c);
    }
    return out;
}

/// g_V: x_1 * ... * x_k -> (1/k!) sum_sigma eps s^{-1}sx_{s1} (x) ... (x) s^{-1}sx_{sk}.
inline LinComb<CobarWord> g_V(const LInftyAlgebra& L, const Mono& m)
{
    LinComb<CobarWord> out;
    const int k = static_cast<int>(m.size());
    std::vector<int> degs;
    for (int g : m) {
        degs.push_back(L.degrees()[static_cast<std::size_t>(g)]);
    }
    Scalar norm(1);
    for (int i = 2; i <= k; ++i) {
        norm *= i;
    }
    norm = 1 / norm;
    for (const auto& p : all_permutations(k)) {
        CobarWord w;
        for (int i : p) {
            w.push_back(Mono{m[static_cast<std::size_t>(i)]});
        }
        out.add(std::move(w), norm * koszul_sign(p, degs));
    }
    return out;
}

inline LinComb<CobarWord> g_V(const LInftyAlgebra& L, const LinComb<Mono>& v)
{
    LinComb<CobarWord> out;
    for (const auto& [m, c] : v) {
        out.add(g_V(L, m), c);
    }
    return out;
}

/// Symmetric extension of l_1 to Sym(L) as a derivation (the differential of E(V)).
inline LinComb<Mono> sym_differential(const LInftyAlgebra& L, const Mono& m)
{
    LinComb<Mono> out;
    int before = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Scalar sign = is_odd(before) ? -1 : 1;
        for (const auto& [g, x] : L.bracket({m[i]})) {
            Mono r = m;
            r[i] = g;
            if (auto c = canonical_mono(std::move(r), L.degrees())) {
                out.add(std::move(c->first), x * sign * c->second);
            }
        }
        before += L.degrees()[static_cast<std::size_t>(m[i])];
    }
    return out;
}

inline LinComb<Mono> sym_differential(const LInftyAlgebra& L, const LinComb<Mono>& v)
{
    LinComb<Mono> out;
    for (const auto& [m, c] : v) {
        out.add(sym_differential(L, m), c);
    }
    return out;
}

/// Omega(phi) for an L-infinity morphism phi: letterwise s^{-1} Phi s.
inline LinComb<CobarWord> omega_map(const LInftyMorphism& phi, const CobarWord& w)
{
    LinComb<CobarWord> out(CobarWord{});
    for (const auto& m : w) {
        LinComb<CobarWord> letter;
        for (const auto& [img, c] : phi.coalgebra_map(m)) {
            letter.add(CobarWord{img}, c);
        }
        out = concat(out, letter);
        if (out.empty()) {
            break;
        }
    }
    return out;
}

inline LinComb<CobarWord> omega_map(const LInftyMorphism& phi, const LinComb<CobarWord>& v)
{
    LinComb<CobarWord> out;
    for (const auto& [w, c] : v) {
        out.add(omega_map(phi, w), c);
    }
    return out;
}

/// All cobar words of a given rank (every letter a nonempty monomial of sL).
inline std::vector<CobarWord> enumerate_cobar_words(const LInftyAlgebra& L, int rank)
{
    std::vector<CobarWord> out;
    CobarWord cur;
    auto rec = [&](auto&& self, int left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = 1; k <= left; ++k) {
            for (const auto& m : enumerate_monos(L.dim(), k, L.suspended_degrees())) {
                cur.push_back(m);
                self(self, left - k);
                cur.pop_back();
            }
        }
    };
    if (rank >= 1) {
        rec(rec, rank);
    }
    return out;
}

} // namespace uenv
