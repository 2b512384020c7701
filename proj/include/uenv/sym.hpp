#pragma once

#include "uenv/exactlin.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace uenv {

/// Monomial of a graded-commutative symmetric algebra/coalgebra: generator
/// indices in nondecreasing order. Which parity a letter carries depends on
/// the ambient (L or sL); callers pass the per-generator degrees.
using Mono = std::vector<int>;

/// Degree table for letters: `degrees[i]` is the degree of generator i in
/// the ambient where the monomial lives.
using Degrees = std::vector<int>;

inline int mono_degree(const Mono& m, std::span<const int> degrees)
{
    int d = 0;
    for (int l : m) {
        d += degrees[static_cast<std::size_t>(l)];
    }
    return d;
}

/// Sorts the letters and returns the Koszul sign, or nullopt when an odd
/// letter repeats (the product vanishes).
inline std::optional<std::pair<Mono, int>> canonical_mono(Mono letters, std::span<const int> degrees)
{
    int sign = sort_with_koszul_sign(letters, [&](int l) { return degrees[static_cast<std::size_t>(l)]; });
    for (std::size_t i = 1; i < letters.size(); ++i) {
        if (letters[i] == letters[i - 1] && is_odd(degrees[static_cast<std::size_t>(letters[i])])) {
            return std::nullopt;
        }
    }
    return std::make_pair(std::move(letters), sign);
}

/// Graded-commutative product of two monomials.
inline std::optional<std::pair<Mono, int>> mono_product(const Mono& a, const Mono& b, std::span<const int> degrees)
{
    Mono cat = a;
    cat.insert(cat.end(), b.begin(), b.end());
    return canonical_mono(std::move(cat), degrees);
}

inline LinComb<Mono> product(const LinComb<Mono>& a, const LinComb<Mono>& b, std::span<const int> degrees)
{
    LinComb<Mono> out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            if (auto p = mono_product(ma, mb, degrees)) {
                out.add(std::move(p->first), ca * cb * p->second);
            }
        }
    }
    return out;
}

/// All monomials of the given weight over `dim` generators.
inline std::vector<Mono> enumerate_monos(int dim, int weight, std::span<const int> degrees)
{
    std::vector<Mono> out;
    Mono cur;
    auto rec = [&](auto&& self, int start, int left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int g = start; g < dim; ++g) {
            if (!cur.empty() && cur.back() == g && is_odd(degrees[static_cast<std::size_t>(g)])) {
                continue;
            }
            cur.push_back(g);
            self(self, g, left - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, weight);
    return out;
}

/// Monomials of weight 1..max_weight.
inline std::vector<Mono> enumerate_monos_upto(int dim, int max_weight, std::span<const int> degrees)
{
    std::vector<Mono> out;
    for (int w = 1; w <= max_weight; ++w) {
        auto part = enumerate_monos(dim, w, degrees);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

/// Splits positions of `m` into (chosen, rest) by bitmask and returns the
/// Koszul sign of moving the chosen letters to the front.
inline int split_sign(const Mono& m, unsigned mask, std::span<const int> degrees, Mono& chosen, Mono& rest)
{
    chosen.clear();
    rest.clear();
    int sign = 1;
    int odd_rest = 0; // odd letters left behind so far
    for (std::size_t i = 0; i < m.size(); ++i) {
        const bool odd = is_odd(degrees[static_cast<std::size_t>(m[i])]);
        if (mask & (1u << i)) {
            chosen.push_back(m[i]);
            if (odd && (odd_rest & 1)) {
                sign = -sign;
            }
        } else {
            rest.push_back(m[i]);
            if (odd) {
                ++odd_rest;
            }
        }
    }
    return sign;
}

/// Koszul sign of concatenating the blocks (positions of `m`) relative to
/// the original order.
inline int blocks_sign(const Mono& m, const std::vector<std::vector<int>>& blocks, std::span<const int> degrees)
{
    Permutation perm;
    for (const auto& b : blocks) {
        perm.insert(perm.end(), b.begin(), b.end());
    }
    std::vector<int> degs;
    degs.reserve(m.size());
    for (int l : m) {
        degs.push_back(degrees[static_cast<std::size_t>(l)]);
    }
    return koszul_sign(perm, degs);
}

/// Ordered partitions of {0..n-1} into exactly k nonempty blocks, each
/// block increasing.
inline std::vector<std::vector<std::vector<int>>> ordered_set_partitions(int n, int k)
{
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
            for (int i = 0; i < n; ++i) {
                blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])].push_back(i);
            }
            for (const auto& b : blocks) {
                if (b.empty()) {
                    return;
                }
            }
            out.push_back(std::move(blocks));
            return;
        }
        for (int b = 0; b < k; ++b) {
            assign[static_cast<std::size_t>(pos)] = b;
            self(self, pos + 1);
        }
    };
    if (n >= k && k >= 1) {
        rec(rec, 0);
    }
    return out;
}

/// Unordered set partitions of {0..n-1}; blocks ordered by their minima.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n)
{
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            out.push_back(blocks);
            return;
        }
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            blocks[i].push_back(pos);
            self(self, pos + 1);
            blocks[i].pop_back();
        }
        blocks.push_back({pos});
        self(self, pos + 1);
        blocks.pop_back();
    };
    rec(rec, 0);
    return out;
}

inline Mono pick(const Mono& m, const std::vector<int>& positions)
{
    Mono out;
    out.reserve(positions.size());
    for (int p : positions) {
        out.push_back(m[static_cast<std::size_t>(p)]);
    }
    return out;
}

/// Reduced coproduct of Sym_c on a monomial: sum over proper nonempty
/// position subsets I of sign * m_I (x) m_{I^c}.
inline LinComb<std::pair<Mono, Mono>> reduced_coproduct(const Mono& m, std::span<const int> degrees)
{
    LinComb<std::pair<Mono, Mono>> out;
    const unsigned full = (1u << m.size()) - 1u;
    Mono a;
    Mono b;
    for (unsigned mask = 1; mask < full; ++mask) {
        int sign = split_sign(m, mask, degrees, a, b);
        out.add({a, b}, Scalar(sign));
    }
    return out;
}

/// Iterated reduced coproduct into k tensor factors.
inline LinComb<std::vector<Mono>> iterated_coproduct(const Mono& m, int k, std::span<const int> degrees)
{
    LinComb<std::vector<Mono>> out;
    for (const auto& blocks : ordered_set_partitions(static_cast<int>(m.size()), k)) {
        std::vector<Mono> parts;
        for (const auto& b : blocks) {
            parts.push_back(pick(m, b));
        }
        out.add(parts, Scalar(blocks_sign(m, blocks, degrees)));
    }
    return out;
}

/// Koszul sign of s^{(x)k}: s^{(x)k}(x_1 (x) ... (x) x_k) = sign * sx_1 (x) ... (x) sx_k.
inline int suspension_sign(std::span<const int> degrees_of_inputs)
{
    int e = 0;
    const int k = static_cast<int>(degrees_of_inputs.size());
    for (int i = 0; i < k; ++i) {
        e += (k - 1 - i) * degrees_of_inputs[static_cast<std::size_t>(i)];
    }
    return is_odd(e) ? -1 : 1;
}

} // namespace uenv
