#pragma once

#include "uenv/cobar_contraction.hpp"
#include "uenv/hpt.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uenv {

inline std::string render_ebar_comb(const GradedSpace& space, const LinComb<EBarWord>& v)
{
    std::string s;
    for (const auto& [w, c] : v) {
        if (!s.empty()) {
            s += " + ";
        }
        s += format_scalar(c) + "*" + render_ebar(space, w);
    }
    return s.empty() ? "0" : s;
}

inline int weight_sum(const std::vector<Mono>& xs)
{
    int w = 0;
    for (const auto& x : xs) {
        w += static_cast<int>(x.size());
    }
    return w;
}

inline std::vector<int> mono_degrees(const LInftyAlgebra& L, const std::vector<Mono>& xs)
{
    std::vector<int> d;
    d.reserve(xs.size());
    for (const auto& x : xs) {
        d.push_back(mono_degree(x, L.degrees()));
    }
    return d;
}

/// All n-tuples of nonempty monomials of Sym(L) with total weight <= cap.
inline std::vector<std::vector<Mono>> enumerate_tuples(const LInftyAlgebra& L, int n, int weight_cap)
{
    std::vector<std::vector<Mono>> out;
    for (auto& w : enumerate_ebar_words(L, n, weight_cap)) {
        if (static_cast<int>(w.size()) == n) {
            out.push_back(std::move(w));
        }
    }
    return out;
}

/// The A-infinity structure {m_n} on Sym(L) transferred from B Omega C(L).
/// Units follow strict unitality: the empty monomial is 1, m_2(1, x) =
/// m_2(x, 1) = x and every other product involving 1 vanishes.
class AInftyStructure {
public:
    explicit AInftyStructure(LInftyAlgebra&&, int = 4, int = 6, HomotopySource = default_homotopies()) = delete;
    explicit AInftyStructure(const LInftyAlgebra& L, int arity_cap = 4, int weight_cap = 6,
                             HomotopySource homotopies = default_homotopies())
        : transfer_(std::make_shared<Transfer>(L, std::move(homotopies))), arity_cap_(arity_cap),
          weight_cap_(weight_cap)
    {
    }

    [[nodiscard]] const LInftyAlgebra& algebra() const { return transfer_->algebra(); }
    [[nodiscard]] const Transfer& transfer() const { return *transfer_; }
    [[nodiscard]] int arity_cap() const { return arity_cap_; }
    [[nodiscard]] int weight_cap() const { return weight_cap_; }

    [[nodiscard]] LinComb<Mono> m(const std::vector<Mono>& xs) const
    {
        const int n = static_cast<int>(xs.size());
        if (n < 1 || n > arity_cap_) {
            throw std::out_of_range("product arity " + std::to_string(n) + " outside the arity cap");
        }
        if (weight_sum(xs) > weight_cap_) {
            throw std::out_of_range("product inputs exceed the weight cap");
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i].empty()) {
                if (n == 2) {
                    return LinComb<Mono>(xs[1 - i]);
                }
                return {};
            }
        }
        auto o = overrides_.find(xs);
        if (o != overrides_.end()) {
            return o->second;
        }
        auto it = memo_.find(xs);
        if (it != memo_.end()) {
            return it->second;
        }
        return memo_.emplace(xs, transfer_->m(xs)).first->second;
    }

    /// Multilinear extension to linear combinations.
    [[nodiscard]] LinComb<Mono> m(const std::vector<LinComb<Mono>>& xs) const
    {
        LinComb<Mono> out;
        std::vector<Mono> cur;
        auto rec = [&](auto&& self, std::size_t i, const Scalar& c) -> void {
            if (i == xs.size()) {
                out.add(m(cur), c);
                return;
            }
            for (const auto& [x, cx] : xs[i]) {
                cur.push_back(x);
                self(self, i + 1, c * cx);
                cur.pop_back();
            }
        };
        rec(rec, 0, Scalar(1));
        return out;
    }

    /// Replaces one table entry; used to exercise the checkers on corrupted data.
    void override_product(const std::vector<Mono>& xs, LinComb<Mono> value) { overrides_[xs] = std::move(value); }

    /// Suspended component b_n(sx_1 ... sx_n) = (-1)^n s m_n (s^{(x)n})^{-1}.
    [[nodiscard]] LinComb<Mono> b(const std::vector<Mono>& xs) const
    {
        int sign = suspension_sign(mono_degrees(algebra(), xs));
        if (is_odd(static_cast<int>(xs.size()))) {
            sign = -sign;
        }
        auto out = m(xs);
        out *= Scalar(sign);
        return out;
    }

    /// Bar differential of B Sym(L) assembled from the product tables.
    [[nodiscard]] LinComb<EBarWord> bar_differential(const EBarWord& w) const
    {
        const auto& L = algebra();
        return coderivation(
            w, [&L](const Mono& x) { return ebar_letter_degree(L, x); }, arity_cap_,
            [this](std::span<const Mono> s) { return b(std::vector<Mono>(s.begin(), s.end())); });
    }

    /// Every nonzero product on basis tuples of arity n within the caps.
    [[nodiscard]] std::vector<std::pair<std::vector<Mono>, LinComb<Mono>>> table(int n) const
    {
        std::vector<std::pair<std::vector<Mono>, LinComb<Mono>>> out;
        for (const auto& xs : enumerate_tuples(algebra(), n, weight_cap_)) {
            auto v = m(xs);
            if (!v.empty()) {
                out.emplace_back(xs, std::move(v));
            }
        }
        return out;
    }

private:
    std::shared_ptr<Transfer> transfer_;
    int arity_cap_;
    int weight_cap_;
    std::map<std::vector<Mono>, LinComb<Mono>> overrides_;
    mutable std::map<std::vector<Mono>, LinComb<Mono>> memo_;
};

inline AInftyStructure compute_products(const LInftyAlgebra& L, int arity_cap = 4, int weight_cap = 6,
                                        HomotopySource homotopies = default_homotopies())
{
    return AInftyStructure(L, arity_cap, weight_cap, std::move(homotopies));
}

namespace detail {

inline CheckResult fail(CheckResult r, std::string where, std::string what)
{
    r.pass = false;
    r.counterexample = std::move(where);
    r.image = std::move(what);
    return r;
}

inline std::string render_tuple(const GradedSpace& space, const std::vector<Mono>& xs)
{
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) {
            s += ", ";
        }
        s += render_mono(space, xs[i]);
    }
    return s + ")";
}

} // namespace detail

/// delta_B^2 = 0 on all bar words within the caps (the Stasheff relations).
inline CheckResult stasheff_check(const AInftyStructure& A)
{
    CheckResult r;
    const auto& L = A.algebra();
    for (const auto& w : enumerate_ebar_words(L, A.arity_cap(), A.weight_cap())) {
        ++r.checked;
        LinComb<EBarWord> dd;
        for (const auto& [v, c] : A.bar_differential(w)) {
            dd.add(A.bar_differential(v), c);
        }
        if (!dd.empty()) {
            return detail::fail(r, render_ebar(L.basis(), w), render_ebar_comb(L.basis(), dd));
        }
    }
    return r;
}

/// The classical enveloping algebra of a DG Lie algebra in its PBW basis:
/// words are rewritten toward sorted order by xy = (-1)^{|x||y|} yx + [x,y]
/// and xx = 1/2 [x,x] for odd x.
class ClassicalEnvelope {
public:
    using Word = std::vector<int>;

    explicit ClassicalEnvelope(const LInftyAlgebra& L) : L_(&L)
    {
        if (L.max_arity() > 2) {
            throw std::invalid_argument("the PBW comparison needs a DG Lie algebra (no l_k with k >= 3)");
        }
    }

    [[nodiscard]] LinComb<Word> normal_form(const Word& w) const
    {
        auto it = memo_.find(w);
        if (it != memo_.end()) {
            return it->second;
        }
        const auto& deg = L_->degrees();
        LinComb<Word> out;
        std::size_t i = 0;
        while (i + 1 < w.size() && !(w[i] > w[i + 1] || (w[i] == w[i + 1] && is_odd(deg[static_cast<std::size_t>(w[i])])))) {
            ++i;
        }
        if (i + 1 >= w.size()) {
            out.add(w, Scalar(1));
        } else {
            const int a = w[i];
            const int b = w[i + 1];
            auto replaced = [&](int g) {
                Word r(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                r.push_back(g);
                r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
                return r;
            };
            const auto br = L_->bracket({a, b});
            if (a == b) {
                for (const auto& [g, c] : br) {
                    out.add(normal_form(replaced(g)), c / 2);
                }
            } else {
                Word sw = w;
                std::swap(sw[i], sw[i + 1]);
                const bool odd = is_odd(deg[static_cast<std::size_t>(a)]) && is_odd(deg[static_cast<std::size_t>(b)]);
                out.add(normal_form(sw), Scalar(odd ? -1 : 1));
                for (const auto& [g, c] : br) {
                    out.add(normal_form(replaced(g)), c);
                }
            }
        }
        return memo_.emplace(w, out).first->second;
    }

    [[nodiscard]] LinComb<Word> multiply(const LinComb<Word>& x, const LinComb<Word>& y) const
    {
        LinComb<Word> out;
        for (const auto& [a, ca] : x) {
            for (const auto& [b, cb] : y) {
                Word w = a;
                w.insert(w.end(), b.begin(), b.end());
                out.add(normal_form(w), ca * cb);
            }
        }
        return out;
    }

    /// Symmetrization Sym(L) -> U(L): (1/k!) sum of Koszul-signed orderings.
    [[nodiscard]] LinComb<Word> symmetrize(const Mono& m) const
    {
        LinComb<Word> out;
        for (const auto& [w, c] : g_V(*L_, m)) {
            Word word;
            for (const auto& letter : w) {
                word.push_back(letter[0]);
            }
            out.add(normal_form(word), c);
        }
        return out;
    }

    [[nodiscard]] LinComb<Word> symmetrize(const LinComb<Mono>& v) const
    {
        LinComb<Word> out;
        for (const auto& [m, c] : v) {
            out.add(symmetrize(m), c);
        }
        return out;
    }

private:
    const LInftyAlgebra* L_;
    mutable std::map<Word, LinComb<Word>> memo_;
};

/// Compares the transferred structure with the classical enveloping algebra
/// through symmetrization: m_1 = l_1 extended, sym(m_2(a,b)) = sym(a)sym(b),
/// m_n = 0 for n >= 3.
inline CheckResult pbw_compare(const AInftyStructure& A)
{
    CheckResult r;
    const auto& L = A.algebra();
    ClassicalEnvelope U(L);
    for (const auto& xs : enumerate_tuples(L, 1, A.weight_cap())) {
        ++r.checked;
        auto diff = A.m(xs) - sym_differential(L, xs[0]);
        if (!diff.empty()) {
            return detail::fail(r, "m_1" + detail::render_tuple(L.basis(), xs), render_comb(L.basis(), diff));
        }
    }
    for (const auto& xs : enumerate_tuples(L, 2, A.weight_cap())) {
        ++r.checked;
        auto lhs = U.symmetrize(A.m(xs));
        auto rhs = U.multiply(U.symmetrize(xs[0]), U.symmetrize(xs[1]));
        if (!(lhs == rhs)) {
            return detail::fail(r, "m_2" + detail::render_tuple(L.basis(), xs), "differs from the classical product");
        }
    }
    for (int n = 3; n <= A.arity_cap(); ++n) {
        for (const auto& xs : enumerate_tuples(L, n, A.weight_cap())) {
            ++r.checked;
            auto v = A.m(xs);
            if (!v.empty()) {
                return detail::fail(r, "m_" + std::to_string(n) + detail::render_tuple(L.basis(), xs),
                                    render_comb(L.basis(), v));
            }
        }
    }
    return r;
}

/// m_2(v, u) = v*u + l_2(v, u)/2 on generators, v*u the product of Sym(L).
inline CheckResult m2_generator_check(const AInftyStructure& A)
{
    CheckResult r;
    const auto& L = A.algebra();
    for (int v = 0; v < L.dim(); ++v) {
        for (int u = 0; u < L.dim(); ++u) {
            ++r.checked;
            LinComb<Mono> want = product(LinComb<Mono>(Mono{v}), LinComb<Mono>(Mono{u}), L.degrees());
            for (const auto& [g, c] : L.bracket({v, u})) {
                want.add(Mono{g}, c / 2);
            }
            auto diff = A.m(std::vector<Mono>{Mono{v}, Mono{u}}) - want;
            if (!diff.empty()) {
                return detail::fail(r, "m_2" + detail::render_tuple(L.basis(), {Mono{v}, Mono{u}}),
                                    render_comb(L.basis(), diff));
            }
        }
    }
    return r;
}

/// m_n(Alt(v_1 (x) ... (x) v_n)) = l_n(v_1, ..., v_n) on all generator tuples,
/// Alt the graded antisymmetrization.
inline CheckResult alt_bracket_check(const AInftyStructure& A, int n)
{
    CheckResult r;
    const auto& L = A.algebra();
    const auto perms = all_permutations(n);
    std::vector<int> in(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) {
            ++r.checked;
            std::vector<int> degs;
            for (int g : in) {
                degs.push_back(L.degrees()[static_cast<std::size_t>(g)]);
            }
            LinComb<Mono> lhs;
            for (const auto& p : perms) {
                std::vector<Mono> xs;
                for (int j : p) {
                    xs.push_back(Mono{in[static_cast<std::size_t>(j)]});
                }
                lhs.add(A.m(xs), Scalar(koszul_sign(p, degs) * permutation_sign(p)));
            }
            LinComb<Mono> rhs;
            for (const auto& [g, c] : L.bracket(in)) {
                rhs.add(Mono{g}, c);
            }
            if (!(lhs == rhs)) {
                std::vector<Mono> xs;
                for (int g : in) {
                    xs.push_back(Mono{g});
                }
                r = detail::fail(r, "Alt" + detail::render_tuple(L.basis(), xs), render_comb(L.basis(), lhs - rhs));
                return false;
            }
            return true;
        }
        for (int g = 0; g < L.dim(); ++g) {
            in[static_cast<std::size_t>(i)] = g;
            if (!self(self, i + 1)) {
                return false;
            }
        }
        return true;
    };
    rec(rec, 0);
    return r;
}

/// m_n o iota^{(x)n} = iota o m_n o omega_n with iota = (-1)^k on Sym^k(L)
/// and omega_n the order reversal carrying its Koszul sign (unsuspended
/// degrees) and the factor (-1)^{(n-1)(n-2)/2} of the opposite structure.
inline CheckResult involution_check(const AInftyStructure& A, int n)
{
    CheckResult r;
    const auto& L = A.algebra();
    Permutation rev;
    for (int i = 0; i < n; ++i) {
        rev.push_back(n - 1 - i);
    }
    for (const auto& xs : enumerate_tuples(L, n, A.weight_cap())) {
        ++r.checked;
        auto lhs = A.m(xs);
        if (is_odd(weight_sum(xs))) {
            lhs *= Scalar(-1);
        }
        std::vector<Mono> ys(xs.rbegin(), xs.rend());
        LinComb<Mono> rhs;
        for (const auto& [m, c] : A.m(ys)) {
            rhs.add(m, is_odd(static_cast<int>(m.size())) ? -c : c);
        }
        int sign = koszul_sign(rev, mono_degrees(L, xs));
        if (is_odd((n - 1) * (n - 2) / 2)) {
            sign = -sign;
        }
        rhs *= Scalar(sign);
        if (!(lhs == rhs)) {
            return detail::fail(r, detail::render_tuple(L.basis(), xs), render_comb(L.basis(), lhs - rhs));
        }
    }
    return r;
}

/// L (+) M with brackets acting within each summand. Generator ids get the
/// suffixes `left` and `right`.
inline LInftyAlgebra direct_sum(const LInftyAlgebra& L, const LInftyAlgebra& M, const std::string& left = "'",
                                const std::string& right = "''")
{
    std::vector<Generator> gens;
    for (const auto& g : L.basis().generators()) {
        gens.push_back({g.id + left, g.degree});
    }
    for (const auto& g : M.basis().generators()) {
        gens.push_back({g.id + right, g.degree});
    }
    LInftyAlgebra S{GradedSpace(gens)};
    auto copy = [&S](const LInftyAlgebra& X, int offset) {
        for (const auto& [k, table] : X.brackets()) {
            for (const auto& [in, v] : table) {
                std::vector<int> ins;
                for (int g : in) {
                    ins.push_back(g + offset);
                }
                LinComb<int> out;
                for (const auto& [g, c] : v) {
                    out.add(g + offset, c);
                }
                S.set_bracket(ins, out);
            }
        }
    };
    copy(L, 0);
    copy(M, L.dim());
    return S;
}

/// The diagonal Sym(L) -> Sym(L (+) L), x -> x' + x'' extended multiplicatively.
inline LinComb<Mono> diagonal(const LInftyAlgebra& L, const LInftyAlgebra& LL, const Mono& m)
{
    LinComb<Mono> acc(Mono{});
    for (int g : m) {
        LinComb<Mono> x;
        x.add(Mono{g}, Scalar(1));
        x.add(Mono{g + L.dim()}, Scalar(1));
        acc = product(acc, x, LL.degrees());
    }
    return acc;
}

/// Delta o m_n^L = m_n^{L (+) L} o Delta^{(x)n} for n <= arity within the caps.
inline CheckResult coproduct_strictness_check(const AInftyStructure& A, int max_arity, int weight_cap)
{
    CheckResult r;
    const auto& L = A.algebra();
    const LInftyAlgebra LL = direct_sum(L, L);
    AInftyStructure B(LL, max_arity, weight_cap, A.transfer().operators().homotopies());
    for (int n = 1; n <= max_arity; ++n) {
        for (const auto& xs : enumerate_tuples(L, n, weight_cap)) {
            ++r.checked;
            LinComb<Mono> lhs;
            for (const auto& [m, c] : A.m(xs)) {
                lhs.add(diagonal(L, LL, m), c);
            }
            std::vector<LinComb<Mono>> ds;
            for (const auto& x : xs) {
                ds.push_back(diagonal(L, LL, x));
            }
            auto rhs = B.m(ds);
            if (!(lhs == rhs)) {
                return detail::fail(r, detail::render_tuple(L.basis(), xs), render_comb(LL.basis(), lhs - rhs));
            }
        }
    }
    return r;
}

/// U(phi) = F_M B Omega(phi) G_L as a coalgebra map B Sym(L) -> B Sym(M),
/// with components U(phi)_i = s^{-1} pi_1 U(phi) s^{(x)i} of degree 1-i.
class AInftyMorphismData {
public:
    AInftyMorphismData(const LInftyMorphism& phi, const AInftyStructure& source, const AInftyStructure& target)
        : phi_(&phi), src_(&source), dst_(&target)
    {
    }

    [[nodiscard]] const LInftyMorphism& morphism() const { return *phi_; }
    [[nodiscard]] const AInftyStructure& source() const { return *src_; }
    [[nodiscard]] const AInftyStructure& target() const { return *dst_; }

    [[nodiscard]] LinComb<EBarWord> apply(const EBarWord& w) const
    {
        auto it = memo_.find(w);
        if (it != memo_.end()) {
            return it->second;
        }
        const auto& tl = src_->transfer().perturbed();
        const auto& tm = dst_->transfer().perturbed();
        auto out = apply_basis(tm.F, bar_omega_map(*phi_, tl.G(w)));
        return memo_.emplace(w, out).first->second;
    }

    [[nodiscard]] LinComb<EBarWord> apply(const LinComb<EBarWord>& v) const
    {
        LinComb<EBarWord> out;
        for (const auto& [w, c] : v) {
            out.add(apply(w), c);
        }
        return out;
    }

    [[nodiscard]] LinComb<Mono> component(const std::vector<Mono>& xs) const
    {
        const int sign = suspension_sign(mono_degrees(src_->algebra(), xs));
        LinComb<Mono> out;
        for (const auto& [w, c] : apply(xs)) {
            if (w.size() == 1) {
                out.add(w[0], c * sign);
            }
        }
        return out;
    }

private:
    const LInftyMorphism* phi_;
    const AInftyStructure* src_;
    const AInftyStructure* dst_;
    mutable std::map<EBarWord, LinComb<EBarWord>> memo_;
};

inline AInftyMorphismData u_morphism(const LInftyMorphism& phi, const AInftyStructure& source,
                                     const AInftyStructure& target)
{
    return AInftyMorphismData(phi, source, target);
}

/// Sym(phi_1) on a monomial.

/// U(phi)_1 = Sym(phi_1); U(phi)_i = 0 for i >= 2 when phi is strict; and
/// d_M U(phi) = U(phi) d_L on bar words within the caps.
inline CheckResult u_morphism_check(const AInftyMorphismData& U)
{
    CheckResult r;
    const auto& L = U.source().algebra();
    const auto& M = U.target().algebra();
    const auto& phi = U.morphism();
    const int cap = U.source().weight_cap();
    for (const auto& xs : enumerate_tuples(L, 1, cap)) {
        ++r.checked;
        auto diff = U.component(xs) - sym_linear_part(phi, xs[0]);
        if (!diff.empty()) {
            return detail::fail(r, "U_1" + detail::render_tuple(L.basis(), xs), render_comb(M.basis(), diff));
        }
    }
    if (phi.is_strict()) {
        for (int n = 2; n <= U.source().arity_cap(); ++n) {
            for (const auto& xs : enumerate_tuples(L, n, cap)) {
                ++r.checked;
                auto v = U.component(xs);
                if (!v.empty()) {
                    return detail::fail(r, "U_" + std::to_string(n) + detail::render_tuple(L.basis(), xs),
                                        render_comb(M.basis(), v));
                }
            }
        }
    }
    const auto& dl = U.source().transfer().perturbed().dM;
    const auto& dm = U.target().transfer().perturbed().dM;
    for (const auto& w : enumerate_ebar_words(L, U.source().arity_cap(), cap)) {
        ++r.checked;
        auto diff = apply_basis(dm, U.apply(w)) - U.apply(dl(w));
        if (!diff.empty()) {
            return detail::fail(r, "chain map on " + render_ebar(L.basis(), w), render_ebar_comb(M.basis(), diff));
        }
    }
    return r;
}

/// H(phi, psi) = F_N B Omega(psi) H_M B Omega(phi) G_L.
class CompositionHomotopy {
public:
    CompositionHomotopy(const LInftyMorphism& phi, const LInftyMorphism& psi, const AInftyStructure& L,
                        const AInftyStructure& M, const AInftyStructure& N)
        : phi_(&phi), psi_(&psi), L_(&L), M_(&M), N_(&N)
    {
        if (!(phi.target().basis() == psi.source().basis())) {
            throw std::invalid_argument("composition homotopy: morphisms are not composable");
        }
    }

    [[nodiscard]] LinComb<EBarWord> apply(const EBarWord& w) const
    {
        const auto& tl = L_->transfer().perturbed();
        const auto& tm = M_->transfer().perturbed();
        const auto& tn = N_->transfer().perturbed();
        auto x = bar_omega_map(*phi_, tl.G(w));
        auto y = bar_omega_map(*psi_, apply_basis(tm.H, x));
        return apply_basis(tn.F, y);
    }

    [[nodiscard]] LinComb<EBarWord> apply(const LinComb<EBarWord>& v) const
    {
        LinComb<EBarWord> out;
        for (const auto& [w, c] : v) {
            out.add(apply(w), c);
        }
        return out;
    }

    /// U(psi o phi) - U(psi) U(phi) = d H + H d on bar words within the caps;
    /// additionally H = 0 when phi or psi is strict.
    [[nodiscard]] CheckResult check() const
    {
        CheckResult r;
        const auto& La = L_->algebra();
        const auto& Na = N_->algebra();
        const LInftyMorphism comp = compose_morphisms(*psi_, *phi_, L_->weight_cap());
        AInftyMorphismData Uc(comp, *L_, *N_);
        AInftyMorphismData Uphi(*phi_, *L_, *M_);
        AInftyMorphismData Upsi(*psi_, *M_, *N_);
        const bool strict = phi_->is_strict() || psi_->is_strict();
        const auto& dl = L_->transfer().perturbed().dM;
        const auto& dn = N_->transfer().perturbed().dM;
        for (const auto& w : enumerate_ebar_words(La, L_->arity_cap(), L_->weight_cap())) {
            ++r.checked;
            auto h = apply(w);
            if (strict && !h.empty()) {
                return detail::fail(r, "H != 0 on " + render_ebar(La.basis(), w), render_ebar_comb(Na.basis(), h));
            }
            auto lhs = Uc.apply(w) - Upsi.apply(Uphi.apply(w));
            auto rhs = apply_basis(dn, h) + apply(dl(w));
            if (!(lhs == rhs)) {
                return detail::fail(r, render_ebar(La.basis(), w), render_ebar_comb(Na.basis(), lhs - rhs));
            }
        }
        return r;
    }

private:
    const LInftyMorphism* phi_;
    const LInftyMorphism* psi_;
    const AInftyStructure* L_;
    const AInftyStructure* M_;
    const AInftyStructure* N_;
};

/// m_1 and m_2 computed from L agree with those of its 2-truncation.
inline CheckResult truncation_agreement_check(const AInftyStructure& A)
{
    CheckResult r;
    const auto& L = A.algebra();
    const LInftyAlgebra T = L.truncated(2);
    if (auto c = check_linfty(T, 3); !c.pass) {
        throw std::invalid_argument("the 2-truncation is not a DG Lie algebra");
    }
    AInftyStructure B(T, 2, A.weight_cap(), A.transfer().operators().homotopies());
    for (int n = 1; n <= 2; ++n) {
        for (const auto& xs : enumerate_tuples(L, n, A.weight_cap())) {
            ++r.checked;
            auto diff = A.m(xs) - B.m(xs);
            if (!diff.empty()) {
                return detail::fail(r, "m_" + std::to_string(n) + detail::render_tuple(L.basis(), xs),
                                    render_comb(L.basis(), diff));
            }
        }
    }
    return r;
}

} // namespace uenv
