#pragma once

#include "uenv/uea.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uenv {

// ---------------------------------------------------------------------------
// Twisted cochains C(L) -> U(L)
// ---------------------------------------------------------------------------

/// tau(c) = s^{-1} pi_1 F_L iota(c), iota the canonical map C(L) -> B Omega C(L).
/// It is the projection C(L) -> sL -> L (weight-one part).
inline LinComb<Mono> canonical_tau(const AInftyStructure& A, const Mono& c)
{
    LinComb<Mono> out;
    if (c.empty()) {
        return out;
    }
    const auto& F = A.transfer().perturbed().F;
    for (const auto& [w, x] : apply_basis(F, canonical_bar_embedding(A.algebra(), c))) {
        if (w.size() == 1) {
            out.add(w[0], x);
        }
    }
    return out;
}

/// Ordered decompositions n -> n_0 (x) c_1 (x) ... (x) c_j of the iterated
/// reduced coaction N -> N (x) C-bar^{(x)j}: n_0 may be empty, the c_i may not.
inline LinComb<std::vector<Mono>> iterated_coaction(const Mono& n, int j, std::span<const int> degrees)
{
    LinComb<std::vector<Mono>> out;
    const int len = static_cast<int>(n.size());
    if (j == 0) {
        out.add(std::vector<Mono>{n}, Scalar(1));
        return out;
    }
    auto emit = [&](std::vector<std::vector<int>> blocks) {
        std::vector<Mono> parts;
        for (const auto& b : blocks) {
            parts.push_back(pick(n, b));
        }
        for (const auto& p : parts) {
            if (!std::is_sorted(p.begin(), p.end())) {
                throw std::logic_error("iterated_coaction: unsorted block");
            }
        }
        out.add(std::move(parts), Scalar(blocks_sign(n, blocks, degrees)));
    };
    for (auto blocks : ordered_set_partitions(len, j + 1)) {
        emit(std::move(blocks));
    }
    for (auto blocks : ordered_set_partitions(len, j)) {
        blocks.insert(blocks.begin(), std::vector<int>{});
        emit(std::move(blocks));
    }
    return out;
}

/// The generalized twisted-cochain equation in bar form:
/// s tau(d_C c) = sum_k b_k((s tau)^{(x)k} Delta^{(k)} c), checked on all
/// monomials c of weight <= cap.
inline CheckResult twisted_cochain_check(const AInftyStructure& A, int weight_cap)
{
    CheckResult r;
    const auto& L = A.algebra();
    const auto& sd = L.suspended_degrees();
    auto tau = [&A](const Mono& c) { return canonical_tau(A, c); };
    for (int w = 1; w <= weight_cap; ++w) {
        for (const auto& c : enumerate_monos(L.dim(), w, sd)) {
            ++r.checked;
            LinComb<Mono> lhs;
            for (const auto& [m, x] : ce_differential(L, c)) {
                lhs.add(tau(m), x);
            }
            LinComb<Mono> rhs;
            for (int k = 1; k <= std::min(w, A.arity_cap()); ++k) {
                for (const auto& [parts, x] : iterated_coproduct(c, k, sd)) {
                    std::vector<LinComb<Mono>> ys;
                    for (const auto& p : parts) {
                        ys.push_back(tau(p));
                    }
                    // b_k on linear combinations: the sign depends on the degrees of the inputs.
                    LinComb<Mono> acc;
                    std::vector<Mono> cur;
                    auto rec = [&](auto&& self, std::size_t i, const Scalar& coeff) -> void {
                        if (i == ys.size()) {
                            acc.add(A.b(cur), coeff);
                            return;
                        }
                        for (const auto& [y, cy] : ys[i]) {
                            cur.push_back(y);
                            self(self, i + 1, coeff * cy);
                            cur.pop_back();
                        }
                    };
                    rec(rec, 0, Scalar(1));
                    rhs.add(acc, x);
                }
            }
            if (!(lhs == rhs)) {
                return detail::fail(r, render_mono(L.basis(), c, "s"), render_comb(L.basis(), lhs - rhs));
            }
        }
    }
    return r;
}

/// For DG Lie L (m_n = 0 for n >= 3): the algebra map Omega C(L) -> U(L),
/// s^{-1}c -> -tau(c) extended by m_2, commutes with the differentials on
/// cobar words of rank <= cap.
inline CheckResult omega_to_u_check(const AInftyStructure& A, int rank_cap)
{
    const auto& L = A.algebra();
    if (L.max_arity() > 2) {
        throw std::invalid_argument("omega_to_u_check needs a DG Lie algebra");
    }
    CheckResult r;
    auto rho = [&](const CobarWord& w) {
        LinComb<Mono> acc(Mono{});
        for (const auto& c : w) {
            auto t = canonical_tau(A, c);
            t *= Scalar(-1);
            LinComb<Mono> next;
            for (const auto& [a, ca] : acc) {
                for (const auto& [b, cb] : t) {
                    if (a.empty()) {
                        next.add(b, ca * cb);
                    } else {
                        next.add(A.m(std::vector<Mono>{a, b}), ca * cb);
                    }
                }
            }
            acc = std::move(next);
        }
        return acc;
    };
    for (int k = 1; k <= rank_cap; ++k) {
        for (const auto& w : enumerate_cobar_words(L, k)) {
            ++r.checked;
            LinComb<Mono> lhs;
            for (const auto& [v, x] : cobar_differential(L, w, CobarParts::full())) {
                lhs.add(rho(v), x);
            }
            LinComb<Mono> rhs;
            for (const auto& [m, x] : rho(w)) {
                rhs.add(A.m(std::vector<Mono>{m}), x);
            }
            if (!(lhs == rhs)) {
                std::string s;
                for (const auto& c : w) {
                    s += render_mono(L.basis(), c, "s");
                }
                return detail::fail(r, s, render_comb(L.basis(), lhs - rhs));
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// The twisted tensor product C(L) (x)_tau U(L)
// ---------------------------------------------------------------------------

/// Basis element n (x) a: n a monomial of sL (empty = counit), a a monomial
/// of Sym(L) (empty = unit).
using TwistedKey = std::pair<Mono, Mono>;

/// C(L) (x)_tau U(L) truncated by total weight; the differential is
/// delta(n (x) a) = d_C n (x) a
///   + sum_{s>=1} (-1)^{|n_0| + s + sum_{i<s} (s-i)|tau c_i|} n_0 (x) m_s(tau c_1, ..., tau c_{s-1}, a)
/// summed over the iterated coaction n -> n_0 (x) c_1 (x) ... (x) c_{s-1}.
class TwistedTensor {
public:
    TwistedTensor(AInftyStructure&&, int) = delete;
    TwistedTensor(const AInftyStructure& A, int weight_cap) : A_(&A), cap_(weight_cap)
    {
        if (weight_cap > A.weight_cap()) {
            throw std::out_of_range("twisted tensor truncation exceeds the product weight cap");
        }
    }

    [[nodiscard]] int degree(const TwistedKey& k) const
    {
        const auto& L = A_->algebra();
        return mono_degree(k.first, L.suspended_degrees()) + mono_degree(k.second, L.degrees());
    }

    [[nodiscard]] static int weight(const TwistedKey& k)
    {
        return static_cast<int>(k.first.size() + k.second.size());
    }

    /// All basis elements of total weight <= cap.
    [[nodiscard]] std::vector<TwistedKey> basis() const
    {
        const auto& L = A_->algebra();
        std::vector<TwistedKey> out;
        for (int p = 0; p <= cap_; ++p) {
            for (const auto& n : monos_of_weight(L.suspended_degrees(), p)) {
                for (int q = 0; p + q <= cap_; ++q) {
                    for (const auto& a : monos_of_weight(L.degrees(), q)) {
                        out.emplace_back(n, a);
                    }
                }
            }
        }
        return out;
    }

    [[nodiscard]] LinComb<TwistedKey> d(const TwistedKey& k) const
    {
        auto it = memo_.find(k);
        if (it != memo_.end()) {
            return it->second;
        }
        const auto& L = A_->algebra();
        const auto& sd = L.suspended_degrees();
        const auto& [n, a] = k;
        LinComb<TwistedKey> out;
        for (const auto& [m, x] : ce_differential(L, n)) {
            out.add({m, a}, x);
        }
        const int smax = std::min(A_->arity_cap(), static_cast<int>(n.size()) + 1);
        for (int s = 1; s <= smax; ++s) {
            for (const auto& [parts, x] : iterated_coaction(n, s - 1, sd)) {
                std::vector<LinComb<Mono>> ins;
                bool zero = false;
                for (std::size_t i = 1; i < parts.size(); ++i) {
                    ins.push_back(canonical_tau(*A_, parts[i]));
                    if (ins.back().empty()) {
                        zero = true;
                        break;
                    }
                }
                if (zero) {
                    continue;
                }
                ins.emplace_back(LinComb<Mono>(a));
                const int n0deg = mono_degree(parts[0], sd);
                std::vector<Mono> cur;
                auto rec = [&](auto&& self, std::size_t i, const Scalar& coeff) -> void {
                    if (i == ins.size()) {
                        if (weight_sum(cur) > A_->weight_cap()) {
                            throw std::out_of_range("twisted differential exceeds the product weight cap");
                        }
                        int e = n0deg + s;
                        for (int j = 0; j < s; ++j) {
                            e += (s - 1 - j) * mono_degree(cur[static_cast<std::size_t>(j)], L.degrees());
                        }
                        for (const auto& [y, cy] : A_->m(cur)) {
                            out.add({parts[0], y}, Scalar(is_odd(e) ? -1 : 1) * coeff * cy);
                        }
                        return;
                    }
                    for (const auto& [y, cy] : ins[i]) {
                        cur.push_back(y);
                        self(self, i + 1, coeff * cy);
                        cur.pop_back();
                    }
                };
                rec(rec, 0, x);
            }
        }
        return memo_.emplace(k, out).first->second;
    }

    /// delta^2 = 0 on every basis element of the truncation.
    [[nodiscard]] CheckResult check_square_zero() const
    {
        CheckResult r;
        const auto& L = A_->algebra();
        for (const auto& k : basis()) {
            ++r.checked;
            LinComb<TwistedKey> dd;
            for (const auto& [v, c] : d(k)) {
                dd.add(d(v), c);
            }
            if (!dd.empty()) {
                return detail::fail(r, render_mono(L.basis(), k.first, "s") + "(x)" + render_mono(L.basis(), k.second),
                                    "delta^2 != 0");
            }
        }
        return r;
    }

    /// Homology dimensions by degree of the truncation.
    [[nodiscard]] std::map<int, int> homology() const
    {
        auto keys = basis();
        auto cx = complex_from_basis(
            keys, [this](const TwistedKey& k) { return degree(k); }, [this](const TwistedKey& k) { return d(k); });
        std::map<int, int> out;
        for (const auto& [deg, dim] : homology_dims(cx)) {
            if (dim != 0) {
                out[deg] = dim;
            }
        }
        return out;
    }

private:
    static std::vector<Mono> monos_of_weight(const Degrees& degs, int w)
    {
        if (w == 0) {
            return {Mono{}};
        }
        return enumerate_monos(static_cast<int>(degs.size()), w, degs);
    }

    const AInftyStructure* A_;
    int cap_;
    mutable std::map<TwistedKey, LinComb<TwistedKey>> memo_;
};

/// True when every generator has odd degree (then Sym(L) is finite and the
/// algebra is abelian with l_1 = 0).
inline bool odd_concentrated(const LInftyAlgebra& L)
{
    for (int d : L.degrees()) {
        if (!is_odd(d)) {
            return false;
        }
    }
    return true;
}

/// Homology of C(L) (x)_tau U(L). For odd-concentrated L the truncation by
/// total weight splits off exactly, so the result must be k in degree 0.
struct AcyclicityReport {
    std::map<int, int> homology;
    bool square_zero = true;
    bool exact = false; // odd-concentrated: truncation is a direct summand
    int weight_cap = 0;

    [[nodiscard]] bool pass() const
    {
        if (!square_zero) {
            return false;
        }
        return !exact || (homology.size() == 1 && homology.count(0) && homology.at(0) == 1);
    }
};

inline AcyclicityReport twisted_tensor_acyclicity(const AInftyStructure& A, int weight_cap)
{
    TwistedTensor T(A, weight_cap);
    AcyclicityReport rep;
    rep.weight_cap = weight_cap;
    rep.exact = odd_concentrated(A.algebra());
    rep.square_zero = T.check_square_zero().pass;
    rep.homology = T.homology();
    return rep;
}

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

/// Homogeneous linear operator on a finite graded space: (row, column) -> entry.
using Operator = LinComb<std::pair<int, int>>;

inline Operator compose(const Operator& a, const Operator& b)
{
    std::map<int, std::vector<std::pair<int, Scalar>>> rows_of_b; // column index of a -> entries of b
    for (const auto& [rc, x] : b) {
        rows_of_b[rc.first].emplace_back(rc.second, x);
    }
    Operator out;
    for (const auto& [rc, x] : a) {
        auto it = rows_of_b.find(rc.second);
        if (it == rows_of_b.end()) {
            continue;
        }
        for (const auto& [col, y] : it->second) {
            out.add({rc.first, col}, x * y);
        }
    }
    return out;
}

inline Operator identity_operator(const GradedSpace& M)
{
    Operator out;
    for (int i = 0; i < M.dim(); ++i) {
        out.add({i, i}, Scalar(1));
    }
    return out;
}

/// L-infinity module over L on a finite graded space M with zero internal
/// differential, stored as the twisting data rho(s^{-1}c) in End(M) for
/// sorted monomials c of sL; rho(s^{-1}c) has degree |c| + 1.
class LInftyModule {
public:
    LInftyModule(LInftyAlgebra&&, GradedSpace) = delete;
    LInftyModule(const LInftyAlgebra& L, GradedSpace M) : L_(&L), M_(std::move(M)) {}

    [[nodiscard]] const LInftyAlgebra& algebra() const { return *L_; }
    [[nodiscard]] const GradedSpace& space() const { return M_; }
    [[nodiscard]] const std::map<Mono, Operator>& table() const { return rho_; }

    [[nodiscard]] Operator rho(const Mono& c) const
    {
        auto it = rho_.find(c);
        return it == rho_.end() ? Operator{} : it->second;
    }

    /// rho on a cobar word: composition in word order; the empty word acts by 1.
    [[nodiscard]] Operator rho(const CobarWord& w) const
    {
        Operator acc = identity_operator(M_);
        for (const auto& c : w) {
            acc = compose(acc, rho(c));
            if (acc.empty()) {
                break;
            }
        }
        return acc;
    }

    void set_rho(const Mono& sorted, Operator value)
    {
        if (value.empty()) {
            rho_.erase(sorted);
        } else {
            rho_[sorted] = std::move(value);
        }
    }

    /// Sets the action l_k(x_1, ..., x_k; -) given in unsuspended form, any
    /// input order; stored as rho(s^{-1}(sx_1 ... sx_k)) = -eps * action with
    /// eps the suspension and reordering sign.
    void set_action(const std::vector<int>& inputs, const Operator& value)
    {
        int in_deg = 0;
        for (int g : inputs) {
            if (g < 0 || g >= L_->dim()) {
                throw std::invalid_argument("module action references an unknown generator");
            }
            in_deg += L_->degrees()[static_cast<std::size_t>(g)];
        }
        const int k = static_cast<int>(inputs.size());
        for (const auto& [rc, x] : value) {
            if (rc.first < 0 || rc.first >= M_.dim() || rc.second < 0 || rc.second >= M_.dim()) {
                throw std::invalid_argument("module action references an unknown module basis element");
            }
            if (M_.degree(rc.first) != M_.degree(rc.second) + in_deg + 1 - k) {
                throw std::invalid_argument("module action has the wrong degree");
            }
        }
        auto sorted = L_->antisymmetric_sort(inputs);
        if (!sorted) {
            if (!value.empty()) {
                throw std::invalid_argument("module action on inputs that vanish by antisymmetry");
            }
            return;
        }
        std::vector<int> degs;
        for (int g : sorted->first) {
            degs.push_back(L_->degrees()[static_cast<std::size_t>(g)]);
        }
        Operator v = value;
        v *= Scalar(-sorted->second * suspension_sign(degs));
        set_rho(sorted->first, std::move(v));
    }

    static LInftyModule trivial(const LInftyAlgebra& L, GradedSpace M) { return LInftyModule(L, std::move(M)); }

    /// Adjoint module of a Lie algebra (ordinary representation x -> [x, -]).
    static LInftyModule adjoint(const LInftyAlgebra& L)
    {
        LInftyModule mod(L, L.basis());
        for (int x = 0; x < L.dim(); ++x) {
            Operator ad;
            for (int y = 0; y < L.dim(); ++y) {
                for (const auto& [z, c] : L.bracket({x, y})) {
                    ad.add({z, y}, c);
                }
            }
            mod.set_action({x}, ad);
        }
        return mod;
    }

private:
    const LInftyAlgebra* L_;
    GradedSpace M_;
    std::map<Mono, Operator> rho_;
};

inline std::string render_operator(const GradedSpace& M, const Operator& a)
{
    std::string s;
    for (const auto& [rc, x] : a) {
        if (!s.empty()) {
            s += " + ";
        }
        s += format_scalar(x) + "*" + M.id(rc.first) + "<-" + M.id(rc.second);
    }
    return s.empty() ? "0" : s;
}

/// The module equation: rho o delta_Omega = 0 on s^{-1}c for every
/// monomial c of weight <= cap (rho extended multiplicatively); this is
/// delta^2 = 0 on C(L) (x) M.
inline CheckResult check_module(const LInftyModule& mod, int weight_cap)
{
    CheckResult r;
    const auto& L = mod.algebra();
    for (const auto& [c, a] : mod.table()) {
        const int want = mono_degree(c, L.suspended_degrees()) + 1;
        for (const auto& [rc, x] : a) {
            if (mod.space().degree(rc.first) - mod.space().degree(rc.second) != want) {
                return detail::fail(r, render_mono(L.basis(), c, "s"), "action of the wrong degree");
            }
        }
    }
    for (int w = 1; w <= weight_cap; ++w) {
        for (const auto& c : enumerate_monos(L.dim(), w, L.suspended_degrees())) {
            ++r.checked;
            Operator acc;
            for (const auto& [v, x] : cobar_differential(L, CobarWord{c}, CobarParts::full())) {
                acc.add(mod.rho(v), x);
            }
            if (!acc.empty()) {
                return detail::fail(r, render_mono(L.basis(), c, "s"), render_operator(mod.space(), acc));
            }
        }
    }
    return r;
}

/// A-infinity module over U(L) on M: the components psi_k of a DG coalgebra
/// map B U(L) -> B End(M), psi(sx_1 | ... | sx_k) in s End(M).
class AInftyModule {
public:
    using Component = std::function<Operator(const EBarWord&)>;

    AInftyModule(const AInftyStructure& A, GradedSpace M, Component psi)
        : A_(&A), M_(std::move(M)), psi_(std::move(psi))
    {
    }

    [[nodiscard]] const AInftyStructure& structure() const { return *A_; }
    [[nodiscard]] const GradedSpace& space() const { return M_; }

    [[nodiscard]] Operator psi(const EBarWord& w) const
    {
        auto it = memo_.find(w);
        if (it != memo_.end()) {
            return it->second;
        }
        return memo_.emplace(w, psi_(w)).first->second;
    }

    /// pi_1 of the chain-map condition: sum over w = w1 w2 of
    /// (-1)^{|psi(w1)|} psi(w1) psi(w2) equals psi(d_{BU} w).
    [[nodiscard]] CheckResult check() const
    {
        CheckResult r;
        const auto& L = A_->algebra();
        const auto& dU = A_->transfer().perturbed().dM;
        for (const auto& w : enumerate_ebar_words(L, A_->arity_cap(), A_->weight_cap())) {
            ++r.checked;
            Operator lhs;
            for (std::size_t i = 1; i < w.size(); ++i) {
                EBarWord a(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                EBarWord b(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
                const int da = ebar_degree(L, a) + 1;
                lhs.add(compose(psi(a), psi(b)), Scalar(is_odd(da) ? -1 : 1));
            }
            Operator rhs;
            for (const auto& [v, x] : dU(w)) {
                rhs.add(psi(v), x);
            }
            if (!(lhs == rhs)) {
                return detail::fail(r, render_ebar(L.basis(), w), render_operator(M_, lhs - rhs));
            }
        }
        return r;
    }

private:
    const AInftyStructure* A_;
    GradedSpace M_;
    Component psi_;
    mutable std::map<EBarWord, Operator> memo_;
};

/// G(M): compose B(rho) with G_L : B U(L) -> B Omega C(L).
inline AInftyModule functor_G(const LInftyModule& mod, const AInftyStructure& A)
{
    const auto* m = &mod;
    const auto* a = &A;
    return AInftyModule(A, mod.space(), [m, a](const EBarWord& w) {
        Operator out;
        for (const auto& [bw, x] : a->transfer().G(w)) {
            if (bw.size() == 1) {
                out.add(m->rho(bw[0]), x);
            }
        }
        return out;
    });
}

/// F(psi): compose the canonical map C(L) -> B Omega C(L), F_L and psi;
/// the resulting twisting cochain enters the cobar form with a sign.
inline LInftyModule functor_F(const AInftyModule& psi, int weight_cap)
{
    const auto& A = psi.structure();
    const auto& L = A.algebra();
    LInftyModule out(L, psi.space());
    const auto& F = A.transfer().perturbed().F;
    for (int w = 1; w <= weight_cap; ++w) {
        for (const auto& c : enumerate_monos(L.dim(), w, L.suspended_degrees())) {
            Operator v;
            for (const auto& [ew, x] : apply_basis(F, canonical_bar_embedding(L, c))) {
                v.add(psi.psi(ew), -x);
            }
            out.set_rho(c, std::move(v));
        }
    }
    return out;
}

/// U(L) acting on itself through m_2 when the structure is a DG algebra
/// (m_n = 0 for n >= 3 within the caps), restricted to a finite Sym(L).
inline AInftyModule regular_module(const AInftyStructure& A)
{
    const auto& L = A.algebra();
    if (!odd_concentrated(L)) {
        throw std::invalid_argument("regular_module needs a finite-dimensional Sym(L) (odd-concentrated L)");
    }
    std::vector<Generator> gens;
    std::vector<Mono> basis;
    for (int w = 0; w <= L.dim(); ++w) {
        for (const auto& m : (w == 0 ? std::vector<Mono>{Mono{}} : enumerate_monos(L.dim(), w, L.degrees()))) {
            basis.push_back(m);
            gens.push_back({render_mono(L.basis(), m), mono_degree(m, L.degrees())});
        }
    }
    auto index = std::make_shared<std::map<Mono, int>>();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        (*index)[basis[i]] = static_cast<int>(i);
    }
    const auto* a = &A;
    return AInftyModule(A, GradedSpace(gens), [a, basis, index](const EBarWord& w) {
        Operator out;
        if (w.size() != 1) {
            return out;
        }
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (weight_sum({w[0], basis[j]}) > a->weight_cap()) {
                continue;
            }
            for (const auto& [y, c] : a->m(std::vector<Mono>{w[0], basis[j]})) {
                out.add({index->at(y), static_cast<int>(j)}, c);
            }
        }
        return out;
    });
}

/// F(G(M)) = M on all monomials of weight <= cap.
inline CheckResult roundtrip_FG(const LInftyModule& mod, const AInftyStructure& A, int weight_cap)
{
    CheckResult r;
    const auto& L = mod.algebra();
    auto g = functor_G(mod, A);
    auto back = functor_F(g, weight_cap);
    for (int w = 1; w <= weight_cap; ++w) {
        for (const auto& c : enumerate_monos(L.dim(), w, L.suspended_degrees())) {
            ++r.checked;
            auto diff = back.rho(c) - mod.rho(c);
            if (!diff.empty()) {
                return detail::fail(r, render_mono(L.basis(), c, "s"), render_operator(mod.space(), diff));
            }
        }
    }
    return r;
}

/// G(F(psi)) = psi on bar words within the caps.
inline CheckResult roundtrip_GF(const AInftyModule& psi)
{
    CheckResult r;
    const auto& A = psi.structure();
    const auto& L = A.algebra();
    auto f = functor_F(psi, A.weight_cap());
    auto back = functor_G(f, A);
    for (const auto& w : enumerate_ebar_words(L, A.arity_cap(), A.weight_cap())) {
        ++r.checked;
        auto diff = back.psi(w) - psi.psi(w);
        if (!diff.empty()) {
            return detail::fail(r, render_ebar(L.basis(), w), render_operator(psi.space(), diff));
        }
    }
    return r;
}

} // namespace uenv
