#pragma once

#include "uenv/exactlin.hpp"
#include "uenv/sym.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uenv {

/// Bracket table of one arity: canonical (sorted) input word -> value in L.
using BracketTable = std::map<Mono, LinComb<int>>;

/// Finite-dimensional L-infinity algebra given by structure constants.
///
/// l_k has degree 2-k and is graded antisymmetric. Values are stored on
/// sorted input words only; other orders follow by antisymmetry. A sorted
/// word may repeat a generator when that generator is odd in L (then its
/// suspension is even and the symmetric power does not vanish).
class LInftyAlgebra {
public:
    LInftyAlgebra() = default;

    explicit LInftyAlgebra(GradedSpace basis) : basis_(std::move(basis))
    {
        for (int i = 0; i < basis_.dim(); ++i) {
            deg_l_.push_back(basis_.degree(i));
            deg_s_.push_back(basis_.degree(i) - 1);
        }
    }

    [[nodiscard]] const GradedSpace& basis() const { return basis_; }
    [[nodiscard]] int dim() const { return basis_.dim(); }
    /// Degrees of generators in L.
    [[nodiscard]] const Degrees& degrees() const { return deg_l_; }
    /// Degrees of generators in sL.
    [[nodiscard]] const Degrees& suspended_degrees() const { return deg_s_; }
    [[nodiscard]] const std::map<int, BracketTable>& brackets() const { return brackets_; }

    [[nodiscard]] int max_arity() const { return brackets_.empty() ? 0 : brackets_.rbegin()->first; }

    /// Sets l_k(inputs) = value; `inputs` may be in any order, the entry is
    /// stored on the sorted word with the antisymmetry sign.
    void set_bracket(const std::vector<int>& inputs, const LinComb<int>& value)
    {
        const int k = static_cast<int>(inputs.size());
        if (k < 1) {
            throw std::invalid_argument("bracket arity must be >= 1");
        }
        for (int g : inputs) {
            check_gen(g);
        }
        const int out_deg = expected_output_degree(inputs);
        for (const auto& [g, c] : value) {
            check_gen(g);
            if (basis_.degree(g) != out_deg) {
                throw std::invalid_argument("bracket value " + basis_.id(g) + " has degree "
                                            + std::to_string(basis_.degree(g)) + ", expected "
                                            + std::to_string(out_deg));
            }
        }
        auto sorted = antisymmetric_sort(inputs);
        if (!sorted) {
            if (!value.empty()) {
                throw std::invalid_argument("bracket on a word that vanishes by antisymmetry");
            }
            return;
        }
        auto& table = brackets_[k];
        LinComb<int> v = value;
        v *= Scalar(sorted->second);
        if (v.empty()) {
            table.erase(sorted->first);
        } else {
            table[sorted->first] = std::move(v);
        }
        if (table.empty()) {
            brackets_.erase(k);
        }
    }

    /// l_k on an arbitrary ordered input word.
    [[nodiscard]] LinComb<int> bracket(const std::vector<int>& inputs) const
    {
        auto it = brackets_.find(static_cast<int>(inputs.size()));
        if (it == brackets_.end()) {
            return {};
        }
        auto sorted = antisymmetric_sort(inputs);
        if (!sorted) {
            return {};
        }
        auto jt = it->second.find(sorted->first);
        if (jt == it->second.end()) {
            return {};
        }
        return Scalar(sorted->second) * jt->second;
    }

    /// Structure restricted to arities <= k (the k-truncation).
    [[nodiscard]] LInftyAlgebra truncated(int k) const
    {
        LInftyAlgebra out(basis_);
        for (const auto& [a, t] : brackets_) {
            if (a <= k) {
                out.brackets_[a] = t;
            }
        }
        return out;
    }

    [[nodiscard]] bool is_dg_lie() const { return max_arity() <= 2; }

    /// Sorts an input word for l_k; returns the graded-antisymmetry sign or
    /// nullopt when the word vanishes.
    [[nodiscard]] std::optional<std::pair<Mono, int>> antisymmetric_sort(std::vector<int> inputs) const
    {
        // antisymmetric in L with Koszul signs == symmetric in sL
        auto r = canonical_mono(inputs, deg_s_);
        if (!r) {
            return std::nullopt;
        }
        // canonical_mono gives the sL Koszul sign; translate: moving x past y
        // costs -(-1)^{|x||y|} in L, which equals (-1)^{(|x|-1)(|y|-1)} times
        // (-1)^{|x|+|y|}. The product of the second factor over all
        // transpositions of the sort is (-1)^{sum over inversions (|x|+|y|)}.
        int e = 0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            for (std::size_t j = i + 1; j < inputs.size(); ++j) {
                if (inputs[i] > inputs[j]) {
                    e += deg_l_[static_cast<std::size_t>(inputs[i])] + deg_l_[static_cast<std::size_t>(inputs[j])];
                }
            }
        }
        return std::make_pair(std::move(r->first), is_odd(e) ? -r->second : r->second);
    }

private:
    void check_gen(int g) const
    {
        if (g < 0 || g >= basis_.dim()) {
            throw std::invalid_argument("bracket references unknown generator index " + std::to_string(g));
        }
    }

    [[nodiscard]] int expected_output_degree(const std::vector<int>& inputs) const
    {
        int d = 2 - static_cast<int>(inputs.size());
        for (int g : inputs) {
            d += basis_.degree(g);
        }
        return d;
    }

    GradedSpace basis_;
    Degrees deg_l_;
    Degrees deg_s_;
    std::map<int, BracketTable> brackets_;
};

/// Which arities of the CE coderivation to include.
struct ArityRange {
    int min = 1;
    int max = 1 << 20;

    [[nodiscard]] bool contains(int k) const { return k >= min && k <= max; }
    static ArityRange all() { return {}; }
    static ArityRange linear() { return {1, 1}; }
    static ArityRange higher() { return {2, 1 << 20}; }
    static ArityRange exactly(int k) { return {k, k}; }
};

/// c_k on a sorted monomial of sL of weight k:
/// c_k = (-1)^k s l_k (s^{(x)k})^{-1}. Output letters are generators of sL.
inline LinComb<int> ce_component(const LInftyAlgebra& L, const Mono& m)
{
    const int k = static_cast<int>(m.size());
    std::vector<int> in_degs;
    for (int g : m) {
        in_degs.push_back(L.degrees()[static_cast<std::size_t>(g)]);
    }
    int sign = suspension_sign(in_degs);
    if (is_odd(k)) {
        sign = -sign;
    }
    auto v = L.bracket(m);
    v *= Scalar(sign);
    return v;
}

/// The Chevalley-Eilenberg coderivation on Sym_c(sL) restricted to the
/// given arities: D(m) = sum_I sign(I) c_|I|(m_I) * m_{I^c}.
inline LinComb<Mono> ce_differential(const LInftyAlgebra& L, const Mono& m, ArityRange arities = ArityRange::all())
{
    LinComb<Mono> out;
    const auto& ds = L.suspended_degrees();
    const unsigned n = static_cast<unsigned>(m.size());
    Mono chosen;
    Mono rest;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int k = __builtin_popcount(mask);
        if (!arities.contains(k) || !L.brackets().count(k)) {
            continue;
        }
        const int sign = split_sign(m, mask, ds, chosen, rest);
        auto c = ce_component(L, chosen);
        for (const auto& [g, coeff] : c) {
            Mono cat;
            cat.reserve(rest.size() + 1);
            cat.push_back(g);
            cat.insert(cat.end(), rest.begin(), rest.end());
            if (auto p = canonical_mono(std::move(cat), ds)) {
                out.add(std::move(p->first), coeff * sign * p->second);
            }
        }
    }
    return out;
}

inline LinComb<Mono> ce_differential(const LInftyAlgebra& L, const LinComb<Mono>& v,
                                     ArityRange arities = ArityRange::all())
{
    LinComb<Mono> out;
    for (const auto& [m, c] : v) {
        out.add(ce_differential(L, m, arities), c);
    }
    return out;
}

/// Weight-truncated Chevalley-Eilenberg coalgebra C(L) = Sym_c(sL).
class CECoalgebra {
public:
    CECoalgebra(const LInftyAlgebra& L, int weight_cap) : L_(&L), cap_(weight_cap)
    {
        if (weight_cap < 1) {
            throw std::invalid_argument("ce_coalgebra: weight cap must be >= 1");
        }
        basis_ = enumerate_monos_upto(L.dim(), weight_cap, L.suspended_degrees());
    }

    [[nodiscard]] const LInftyAlgebra& algebra() const { return *L_; }
    [[nodiscard]] int weight_cap() const { return cap_; }
    [[nodiscard]] const std::vector<Mono>& basis() const { return basis_; }
    [[nodiscard]] int degree(const Mono& m) const { return mono_degree(m, L_->suspended_degrees()); }

    [[nodiscard]] LinComb<Mono> differential(const Mono& m) const { return ce_differential(*L_, m); }
    [[nodiscard]] LinComb<std::pair<Mono, Mono>> coproduct(const Mono& m) const
    {
        return reduced_coproduct(m, L_->suspended_degrees());
    }

private:
    const LInftyAlgebra* L_;
    int cap_;
    std::vector<Mono> basis_;
};

inline CECoalgebra ce_coalgebra(const LInftyAlgebra& L, int weight_cap) { return CECoalgebra(L, weight_cap); }

/// Result of a finite identity check: the first failing basis input (if any)
/// rendered as text together with its nonzero image.
struct CheckResult {
    bool pass = true;
    std::string counterexample;
    std::string image;
    long checked = 0;

    explicit operator bool() const { return pass; }
};

inline std::string render_mono(const GradedSpace& space, const Mono& m, const char* prefix = "")
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) {
            s += ",";
        }
        s += prefix + space.id(m[i]);
    }
    return s + "]";
}

inline std::string render_comb(const GradedSpace& space, const LinComb<Mono>& v, const char* prefix = "")
{
    std::string s;
    for (const auto& [m, c] : v) {
        if (!s.empty()) {
            s += " + ";
        }
        s += format_scalar(c) + "*" + render_mono(space, m, prefix);
    }
    return s.empty() ? "0" : s;
}

/// Verifies delta_C^2 = 0 on all words of weight <= cap (the generalized
/// Jacobi identities). Reports the first failing word.
inline CheckResult check_linfty(const LInftyAlgebra& L, int weight_cap)
{
    CheckResult r;
    for (int w = 1; w <= weight_cap; ++w) {
        for (const auto& m : enumerate_monos(L.dim(), w, L.suspended_degrees())) {
            ++r.checked;
            auto dd = ce_differential(L, ce_differential(L, m));
            if (!dd.empty()) {
                r.pass = false;
                r.counterexample = render_mono(L.basis(), m, "s");
                r.image = render_comb(L.basis(), dd, "s");
                return r;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

/// L-infinity morphism L -> M given by its Taylor components in suspended
/// form Phi_i : Sym^i(sL) -> sM (degree 0), stored on sorted words. The
/// unsuspended components phi_i : L^{(x)i} -> M of degree 1-i are related by
/// Phi_i = s phi_i (s^{(x)i})^{-1}.
class LInftyMorphism {
public:
    LInftyMorphism(LInftyAlgebra&&, const LInftyAlgebra&) = delete;
    LInftyMorphism(const LInftyAlgebra&, LInftyAlgebra&&) = delete;
    LInftyMorphism(const LInftyAlgebra& source, const LInftyAlgebra& target) : src_(&source), dst_(&target) {}

    [[nodiscard]] const LInftyAlgebra& source() const { return *src_; }
    [[nodiscard]] const LInftyAlgebra& target() const { return *dst_; }
    [[nodiscard]] const std::map<int, std::map<Mono, LinComb<int>>>& components() const { return comps_; }

    /// Sets phi_i(inputs) = value (unsuspended convention).
    void set_component(const std::vector<int>& inputs, const LinComb<int>& value)
    {
        const int i = static_cast<int>(inputs.size());
        int out_deg = 1 - i;
        std::vector<int> in_degs;
        for (int g : inputs) {
            if (g < 0 || g >= src_->dim()) {
                throw std::invalid_argument("morphism component references unknown source generator");
            }
            out_deg += src_->degrees()[static_cast<std::size_t>(g)];
        }
        for (const auto& [g, c] : value) {
            if (g < 0 || g >= dst_->dim()) {
                throw std::invalid_argument("morphism component references unknown target generator");
            }
            if (dst_->degrees()[static_cast<std::size_t>(g)] != out_deg) {
                throw std::invalid_argument("morphism component value has the wrong degree");
            }
        }
        auto sorted = src_->antisymmetric_sort(inputs);
        if (!sorted) {
            if (!value.empty()) {
                throw std::invalid_argument("morphism component on a word that vanishes by antisymmetry");
            }
            return;
        }
        for (int g : sorted->first) {
            in_degs.push_back(src_->degrees()[static_cast<std::size_t>(g)]);
        }
        LinComb<int> v = value;
        v *= Scalar(sorted->second * suspension_sign(in_degs));
        auto& t = comps_[i];
        if (v.empty()) {
            t.erase(sorted->first);
        } else {
            t[sorted->first] = std::move(v);
        }
    }

    /// Sets the suspended component Phi_i on a sorted word directly.
    void set_suspended_component(const Mono& sorted_inputs, const LinComb<int>& value)
    {
        auto& t = comps_[static_cast<int>(sorted_inputs.size())];
        if (value.empty()) {
            t.erase(sorted_inputs);
        } else {
            t[sorted_inputs] = value;
        }
    }

    /// Phi_i on a sorted monomial of sL.
    [[nodiscard]] LinComb<int> suspended_component(const Mono& m) const
    {
        auto it = comps_.find(static_cast<int>(m.size()));
        if (it == comps_.end()) {
            return {};
        }
        auto jt = it->second.find(m);
        return jt == it->second.end() ? LinComb<int>{} : jt->second;
    }

    /// phi_i in unsuspended form on a sorted word.
    [[nodiscard]] LinComb<int> component(const Mono& m) const
    {
        std::vector<int> in_degs;
        for (int g : m) {
            in_degs.push_back(src_->degrees()[static_cast<std::size_t>(g)]);
        }
        auto v = suspended_component(m);
        v *= Scalar(suspension_sign(in_degs));
        return v;
    }

    [[nodiscard]] bool is_strict() const
    {
        for (const auto& [i, t] : comps_) {
            if (i >= 2 && !t.empty()) {
                return false;
            }
        }
        return true;
    }

    /// The induced coalgebra map C(L) -> C(M) on a monomial: sum over set
    /// partitions of the positions of the product of the components.
    [[nodiscard]] LinComb<Mono> coalgebra_map(const Mono& m) const
    {
        LinComb<Mono> out;
        const auto& ds = src_->suspended_degrees();
        const auto& dt = dst_->suspended_degrees();
        for (const auto& blocks : set_partitions(static_cast<int>(m.size()))) {
            LinComb<Mono> acc(Mono{}, Scalar(blocks_sign(m, blocks, ds)));
            for (const auto& b : blocks) {
                auto c = suspended_component(pick(m, b));
                if (c.empty()) {
                    acc = {};
                    break;
                }
                LinComb<Mono> f;
                for (const auto& [g, x] : c) {
                    f.add(Mono{g}, x);
                }
                acc = product(acc, f, dt);
                if (acc.empty()) {
                    break;
                }
            }
            out.add(acc);
        }
        return out;
    }

    [[nodiscard]] LinComb<Mono> coalgebra_map(const LinComb<Mono>& v) const
    {
        LinComb<Mono> out;
        for (const auto& [m, c] : v) {
            out.add(coalgebra_map(m), c);
        }
        return out;
    }

    static LInftyMorphism identity(const LInftyAlgebra& L)
    {
        LInftyMorphism id(L, L);
        for (int g = 0; g < L.dim(); ++g) {
            id.set_suspended_component(Mono{g}, LinComb<int>(g));
        }
        return id;
    }

private:
    const LInftyAlgebra* src_;
    const LInftyAlgebra* dst_;
    std::map<int, std::map<Mono, LinComb<int>>> comps_;
};

/// Verifies Phi o delta_L = delta_M o Phi on all words of weight <= cap.
inline CheckResult check_morphism(const LInftyMorphism& phi, int weight_cap)
{
    CheckResult r;
    const auto& L = phi.source();
    const auto& M = phi.target();
    for (int w = 1; w <= weight_cap; ++w) {
        for (const auto& m : enumerate_monos(L.dim(), w, L.suspended_degrees())) {
            ++r.checked;
            auto lhs = phi.coalgebra_map(ce_differential(L, m));
            auto rhs = ce_differential(M, phi.coalgebra_map(m));
            auto diff = lhs - rhs;
            if (!diff.empty()) {
                r.pass = false;
                r.counterexample = render_mono(L.basis(), m, "s");
                r.image = render_comb(M.basis(), diff, "s");
                return r;
            }
        }
    }
    return r;
}

/// psi o phi, with components read off by corestricting the composite
/// coalgebra map to weight one, for inputs up to `max_arity`.
inline LInftyMorphism compose_morphisms(const LInftyMorphism& psi, const LInftyMorphism& phi, int max_arity)
{
    if (!(phi.target().basis() == psi.source().basis())) {
        throw std::invalid_argument("compose_morphisms: target of phi differs from source of psi");
    }
    LInftyMorphism out(phi.source(), psi.target());
    const auto& L = phi.source();
    for (int w = 1; w <= max_arity; ++w) {
        for (const auto& m : enumerate_monos(L.dim(), w, L.suspended_degrees())) {
            auto img = psi.coalgebra_map(phi.coalgebra_map(m));
            LinComb<int> lin;
            for (const auto& [mm, c] : img) {
                if (mm.size() == 1) {
                    lin.add(mm[0], c);
                }
            }
            if (!lin.empty()) {
                out.set_suspended_component(m, lin);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Complete intersections
// ---------------------------------------------------------------------------

/// A polynomial in the variables of V: monomial (variable indices with
/// multiplicity, any order) -> coefficient.
using Polynomial = std::map<std::vector<int>, Scalar>;

enum class DerivativeNormalization { partial, divided_power };

/// L = s^{-1}V^vee (+) U with U spanned by degree-2 symbols z_i, whose CE
/// differential is sum_i W_i(d/d xi) (x) sz_i. With plain partial
/// derivatives a monomial x^alpha of W_i contributes alpha! to c_k; the
/// divided-power reading contributes 1.
inline LInftyAlgebra from_complete_intersection(const std::vector<std::string>& variables,
                                                const std::vector<Polynomial>& polys,
                                                DerivativeNormalization norm = DerivativeNormalization::partial)
{
    std::vector<Generator> gens;
    for (const auto& v : variables) {
        gens.push_back({"y_" + v, 1});
    }
    for (std::size_t i = 0; i < polys.size(); ++i) {
        gens.push_back({"z" + std::to_string(i + 1), 2});
    }
    LInftyAlgebra L{GradedSpace(gens)};
    const int nv = static_cast<int>(variables.size());
    std::map<Mono, LinComb<int>> values; // sorted y-word -> l_k value
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const int z = nv + static_cast<int>(i);
        for (const auto& [mon, coeff] : polys[i]) {
            if (mon.size() < 2) {
                if (sgn(coeff) != 0) {
                    throw std::invalid_argument("complete intersection polynomial has a constant or linear term");
                }
                continue;
            }
            Mono sorted = mon;
            std::sort(sorted.begin(), sorted.end());
            for (int v : sorted) {
                if (v < 0 || v >= nv) {
                    throw std::invalid_argument("polynomial references unknown variable");
                }
            }
            const int k = static_cast<int>(sorted.size());
            Scalar c = coeff;
            if (norm == DerivativeNormalization::partial) {
                // alpha!
                std::size_t i0 = 0;
                while (i0 < sorted.size()) {
                    std::size_t j = i0;
                    while (j < sorted.size() && sorted[j] == sorted[i0]) {
                        ++j;
                    }
                    for (std::size_t f = 2; f <= j - i0; ++f) {
                        c *= static_cast<long>(f);
                    }
                    i0 = j;
                }
            }
            // c_k(xi^alpha) = c * s z ; l_k = (-1)^k (-1)^{k(k-1)/2} s^{-1} c_k
            int e = k + k * (k - 1) / 2;
            values[sorted].add(z, is_odd(e) ? -c : c);
        }
    }
    for (const auto& [word, v] : values) {
        L.set_bracket(word, v);
    }
    return L;
}

} // namespace uenv
