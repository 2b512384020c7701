#pragma once

#include "uenv/cobar.hpp"
#include "uenv/exactlin.hpp"
#include "uenv/linfty.hpp"
#include "uenv/sym.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uenv {

using Partition = std::vector<int>;
/// Rows of a tableau, values 1..n.
using Tableau = std::vector<std::vector<int>>;
/// Subset of {1..n-1}, sorted.
using DescentSet = std::vector<int>;

inline std::vector<Partition> partitions(int n)
{
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int left, int max_part) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, left - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

inline Partition shape_of(const Tableau& t)
{
    Partition p;
    for (const auto& r : t) {
        p.push_back(static_cast<int>(r.size()));
    }
    return p;
}

inline int tableau_size(const Tableau& t)
{
    int n = 0;
    for (const auto& r : t) {
        n += static_cast<int>(r.size());
    }
    return n;
}

inline std::string tableau_to_string(const Tableau& t)
{
    std::string s = "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < t[i].size(); ++j) {
            s += (j ? "," : "") + std::to_string(t[i][j]);
        }
        s += "]";
    }
    return s + "]";
}

inline bool is_partition(const Partition& p)
{
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0 || (i > 0 && p[i] > p[i - 1])) {
            return false;
        }
    }
    return true;
}

/// Values increase strictly along rows and down columns, and form {1..n}.
inline bool is_standard(const Tableau& t)
{
    if (!is_partition(shape_of(t))) {
        return false;
    }
    const int n = tableau_size(t);
    std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < t[i].size(); ++j) {
            const int v = t[i][j];
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
                return false;
            }
            seen[static_cast<std::size_t>(v)] = 1;
            if (j > 0 && t[i][j - 1] >= v) {
                return false;
            }
            if (i > 0 && t[i - 1][j] >= v) {
                return false;
            }
        }
    }
    return true;
}

/// All standard fillings of shape lambda, in lexicographic order of the
/// row reading word.
inline std::vector<Tableau> standard_tableaux(const Partition& lambda)
{
    if (!is_partition(lambda)) {
        throw std::invalid_argument("standard_tableaux: not a partition");
    }
    const int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    std::vector<Tableau> out;
    Tableau t(lambda.size());
    auto rec = [&](auto&& self, int v) -> void {
        if (v > n) {
            out.push_back(t);
            return;
        }
        for (std::size_t r = 0; r < lambda.size(); ++r) {
            const auto len = t[r].size();
            if (static_cast<int>(len) < lambda[r] && (r == 0 || t[r - 1].size() > len)) {
                t[r].push_back(v);
                self(self, v + 1);
                t[r].pop_back();
            }
        }
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end(), [](const Tableau& a, const Tableau& b) {
        std::vector<int> ra;
        std::vector<int> rb;
        for (const auto& r : a) {
            ra.insert(ra.end(), r.begin(), r.end());
        }
        for (const auto& r : b) {
            rb.insert(rb.end(), r.begin(), r.end());
        }
        return ra < rb;
    });
    return out;
}

/// Row of each value: row_of[v] for v in 1..n.
inline std::vector<int> rows_of_values(const Tableau& t)
{
    std::vector<int> out(static_cast<std::size_t>(tableau_size(t) + 1), -1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (int v : t[i]) {
            out.at(static_cast<std::size_t>(v)) = static_cast<int>(i);
        }
    }
    return out;
}

/// J_T: i is a descent when i sits in a strictly higher row than i + 1.
inline DescentSet descents(const Tableau& t)
{
    auto row = rows_of_values(t);
    DescentSet out;
    const int n = tableau_size(t);
    for (int i = 1; i < n; ++i) {
        if (row[static_cast<std::size_t>(i)] < row[static_cast<std::size_t>(i + 1)]) {
            out.push_back(i);
        }
    }
    return out;
}

inline bool is_subset(const DescentSet& a, const DescentSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<DescentSet> subsets(const DescentSet& s)
{
    std::vector<DescentSet> out;
    const std::size_t k = s.size();
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        DescentSet j;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (1u << i)) {
                j.push_back(s[i]);
            }
        }
        out.push_back(std::move(j));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

/// zeta_J: the weakly increasing surjection {1..n} -> {1..n-#J} gluing i
/// and i + 1 exactly for i in J (index 0 unused).
inline std::vector<int> zeta(int n, const DescentSet& J)
{
    std::vector<int> z(static_cast<std::size_t>(n + 1), 0);
    int v = 1;
    for (int i = 1; i <= n; ++i) {
        if (i > 1 && !std::binary_search(J.begin(), J.end(), i - 1)) {
            ++v;
        }
        z[static_cast<std::size_t>(i)] = v;
    }
    return z;
}

/// T_J = zeta_J o T.
inline Tableau compose_zeta(const Tableau& t, const DescentSet& J)
{
    auto z = zeta(tableau_size(t), J);
    Tableau out = t;
    for (auto& r : out) {
        for (auto& v : r) {
            v = z[static_cast<std::size_t>(v)];
        }
    }
    return out;
}

/// Values strictly increase along rows and weakly down columns.
inline bool is_column_semistandard(const Tableau& u)
{
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u[i].size(); ++j) {
            if (j > 0 && u[i][j - 1] >= u[i][j]) {
                return false;
            }
            if (i > 0 && u[i - 1][j] > u[i][j]) {
                return false;
            }
        }
    }
    return true;
}

/// Column-semistandard surjections of shape lambda onto {1..m}.
inline std::vector<Tableau> column_semistandard(const Partition& lambda, int m)
{
    std::vector<Tableau> out;
    Tableau u(lambda.size());
    std::vector<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (int j = 0; j < lambda[i]; ++j) {
            cells.emplace_back(static_cast<int>(i), j);
        }
    }
    auto rec = [&](auto&& self, std::size_t c) -> void {
        if (c == cells.size()) {
            std::vector<char> hit(static_cast<std::size_t>(m + 1), 0);
            for (const auto& r : u) {
                for (int v : r) {
                    hit[static_cast<std::size_t>(v)] = 1;
                }
            }
            for (int v = 1; v <= m; ++v) {
                if (!hit[static_cast<std::size_t>(v)]) {
                    return;
                }
            }
            out.push_back(u);
            return;
        }
        const auto [i, j] = cells[c];
        int lo = 1;
        if (j > 0) {
            lo = std::max(lo, u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] + 1);
        }
        if (i > 0) {
            lo = std::max(lo, u[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
        }
        for (int v = lo; v <= m; ++v) {
            u[static_cast<std::size_t>(i)].push_back(v);
            self(self, c + 1);
            u[static_cast<std::size_t>(i)].pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Inverse of (T, J) -> T_J: standardizes a column-semistandard surjection
/// by numbering equal values from the top row down.
inline std::optional<std::pair<Tableau, DescentSet>> destandardize(const Tableau& u)
{
    if (!is_column_semistandard(u)) {
        return std::nullopt;
    }
    std::vector<std::tuple<int, int, int>> cells; // value, row, column
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u[i].size(); ++j) {
            cells.emplace_back(u[i][j], static_cast<int>(i), static_cast<int>(j));
        }
    }
    std::sort(cells.begin(), cells.end());
    Tableau t = u;
    DescentSet J;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto [v, i, j] = cells[k];
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<int>(k + 1);
        if (k > 0 && std::get<0>(cells[k - 1]) == v) {
            J.push_back(static_cast<int>(k));
        }
    }
    if (!is_standard(t) || !is_subset(J, descents(t)) || !(compose_zeta(t, J) == u)) {
        return std::nullopt;
    }
    return std::make_pair(t, J);
}

// ---------------------------------------------------------------------------
// The complexes C_T
// ---------------------------------------------------------------------------

/// #X(J, j) with X(J, j) = {i | 1 <= i <= j - 1, i not in J}.
inline int x_count(const DescentSet& J, int j)
{
    int c = 0;
    for (int i = 1; i < j; ++i) {
        if (!std::binary_search(J.begin(), J.end(), i)) {
            ++c;
        }
    }
    return c;
}

inline DescentSet erase_from(DescentSet J, int j)
{
    J.erase(std::find(J.begin(), J.end(), j));
    return J;
}

inline DescentSet insert_into(DescentSet J, int j)
{
    J.insert(std::upper_bound(J.begin(), J.end(), j), j);
    return J;
}

/// Basis T_J (J a subset of J_T) of C_T, graded by -#J.
class TComplex {
public:
    explicit TComplex(Tableau t) : t_(std::move(t))
    {
        if (!is_standard(t_)) {
            throw std::invalid_argument("TComplex: tableau " + tableau_to_string(t_) + " is not standard");
        }
        jt_ = descents(t_);
    }

    [[nodiscard]] const Tableau& tableau() const { return t_; }
    [[nodiscard]] const DescentSet& descent_set() const { return jt_; }
    [[nodiscard]] std::vector<DescentSet> basis() const { return subsets(jt_); }
    [[nodiscard]] static int degree(const DescentSet& J) { return -static_cast<int>(J.size()); }

    /// dim (C_T)_{-p}
    [[nodiscard]] int dim(int p) const
    {
        int c = 0;
        for (const auto& J : basis()) {
            c += static_cast<int>(J.size()) == p ? 1 : 0;
        }
        return c;
    }

    [[nodiscard]] LinComb<DescentSet> boundary(const DescentSet& J) const
    {
        require(J);
        LinComb<DescentSet> out;
        for (int j : J) {
            out.add(erase_from(J, j), Scalar(is_odd(x_count(J, j)) ? -1 : 1));
        }
        return out;
    }

    /// h_T(T_J) = (1/#J_T) sum_{j in J_T \ J} (-1)^{#X(J,j)} T_{J u j}.
    [[nodiscard]] LinComb<DescentSet> homotopy(const DescentSet& J) const
    {
        require(J);
        LinComb<DescentSet> out;
        if (jt_.empty()) {
            return out;
        }
        const Scalar w(1, static_cast<long>(jt_.size()));
        for (int j : jt_) {
            if (!std::binary_search(J.begin(), J.end(), j)) {
                out.add(insert_into(J, j), is_odd(x_count(J, j)) ? Scalar(-w) : w);
            }
        }
        return out;
    }

    /// g f: the identity on T_{empty} when J_T is empty, zero otherwise.
    [[nodiscard]] LinComb<DescentSet> projection(const DescentSet& J) const
    {
        require(J);
        LinComb<DescentSet> out;
        if (jt_.empty()) {
            out.add(J, Scalar(1));
        }
        return out;
    }

    [[nodiscard]] FiniteComplex complex() const
    {
        return complex_from_basis(
            basis(), [](const DescentSet& J) { return degree(J); },
            [this](const DescentSet& J) { return boundary(J); });
    }

private:
    void require(const DescentSet& J) const
    {
        if (!std::is_sorted(J.begin(), J.end()) || !is_subset(J, jt_)) {
            throw std::invalid_argument("J is not a subset of the descent set of " + tableau_to_string(t_));
        }
    }

    Tableau t_;
    DescentSet jt_;
};

struct TComplexReport {
    bool square_zero = true;
    bool contraction = true;
    bool homology_ok = true;
    std::map<int, int> homology;
    std::string failure;

    [[nodiscard]] bool pass() const { return square_zero && contraction && homology_ok; }
};

/// d^2 = 0, 1 - gf = dh + hd, h^2 = 0, and homology k in degree 0 when
/// J_T is empty and 0 otherwise.
inline TComplexReport verify_tcomplex(const TComplex& c)
{
    TComplexReport r;
    for (const auto& J : c.basis()) {
        LinComb<DescentSet> dd;
        for (const auto& [K, x] : c.boundary(J)) {
            dd.add(c.boundary(K), x);
        }
        if (!dd.empty() && r.square_zero) {
            r.square_zero = false;
            r.failure = "d^2 != 0 on J of size " + std::to_string(J.size());
        }
        LinComb<DescentSet> lhs(J);
        lhs -= c.projection(J);
        LinComb<DescentSet> rhs;
        for (const auto& [K, x] : c.homotopy(J)) {
            rhs.add(c.boundary(K), x);
        }
        for (const auto& [K, x] : c.boundary(J)) {
            rhs.add(c.homotopy(K), x);
        }
        LinComb<DescentSet> hh;
        for (const auto& [K, x] : c.homotopy(J)) {
            hh.add(c.homotopy(K), x);
        }
        if ((!(lhs == rhs) || !hh.empty()) && r.contraction) {
            r.contraction = false;
            r.failure = "contraction identity fails";
        }
    }
    for (const auto& [d, k] : homology_dims(c.complex())) {
        if (k != 0) {
            r.homology[d] = k;
        }
    }
    std::map<int, int> want;
    if (c.descent_set().empty()) {
        want[0] = 1;
    }
    r.homology_ok = r.homology == want;
    if (!r.homology_ok && r.failure.empty()) {
        r.failure = "unexpected homology";
    }
    return r;
}

// ---------------------------------------------------------------------------
// Schur functors S^T(X) = X^{(x)n} e_T, e_T = c_T r^-_T
// ---------------------------------------------------------------------------

/// Graded dimension of the space the Schur functor is applied to, by parity.
struct ParityDims {
    int even = 0;
    int odd = 0;

    [[nodiscard]] int dim() const { return even + odd; }
    /// Letters 0..even-1 are even, the rest odd.
    [[nodiscard]] bool odd_letter(int x) const { return x >= even; }
};

using TensorWord = std::vector<int>;

/// Right action of sigma on X^{(x)n}: position i of w.sigma holds
/// w[sigma(i)], with the Koszul sign.
inline std::pair<TensorWord, int> act_right(const TensorWord& w, const Permutation& sigma, const ParityDims& X)
{
    TensorWord out(w.size());
    std::vector<int> degs;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out[i] = w[static_cast<std::size_t>(sigma[i])];
        degs.push_back(X.odd_letter(w[i]) ? 1 : 0);
    }
    return {out, koszul_sign(sigma, degs)};
}

/// Permutations of {0..n-1} (position v-1 for value v) preserving the
/// given blocks of positions; with sign if requested.
inline std::vector<std::pair<Permutation, int>> block_group(int n, const std::vector<std::vector<int>>& blocks)
{
    std::vector<std::pair<Permutation, int>> out{{identity_permutation(n), 1}};
    for (const auto& b : blocks) {
        std::vector<std::pair<Permutation, int>> next;
        for (const auto& local : all_permutations(static_cast<int>(b.size()))) {
            const int s = permutation_sign(local);
            for (const auto& [p, sp] : out) {
                Permutation q = p;
                for (std::size_t k = 0; k < b.size(); ++k) {
                    q[static_cast<std::size_t>(b[k])] = p[static_cast<std::size_t>(b[static_cast<std::size_t>(local[k])])];
                }
                next.emplace_back(std::move(q), sp * s);
            }
        }
        out = std::move(next);
    }
    return out;
}

inline std::vector<std::vector<int>> column_blocks(const Tableau& t)
{
    std::vector<std::vector<int>> out;
    for (std::size_t j = 0; j < t.front().size(); ++j) {
        std::vector<int> b;
        for (const auto& r : t) {
            if (j < r.size()) {
                b.push_back(r[j] - 1);
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

inline std::vector<std::vector<int>> row_blocks(const Tableau& t)
{
    std::vector<std::vector<int>> out;
    for (const auto& r : t) {
        std::vector<int> b;
        for (int v : r) {
            b.push_back(v - 1);
        }
        out.push_back(std::move(b));
    }
    return out;
}

/// w.e_T = (w.c_T).r^-_T
inline LinComb<TensorWord> young_symmetrize(const TensorWord& w, const Tableau& t, const ParityDims& X)
{
    const int n = tableau_size(t);
    LinComb<TensorWord> mid;
    for (const auto& [c, s] : block_group(n, column_blocks(t))) {
        auto [v, k] = act_right(w, c, X);
        mid.add(v, Scalar(k));
    }
    LinComb<TensorWord> out;
    const auto rows = block_group(n, row_blocks(t));
    for (const auto& [v, x] : mid) {
        for (const auto& [r, s] : rows) {
            auto [u, k] = act_right(v, r, X);
            out.add(u, x * (k * s));
        }
    }
    return out;
}

inline std::vector<TensorWord> all_words(int n, int d)
{
    std::vector<TensorWord> out;
    TensorWord w(static_cast<std::size_t>(n), 0);
    if (d == 0) {
        return n == 0 ? std::vector<TensorWord>{w} : out;
    }
    while (true) {
        out.push_back(w);
        int i = n - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == d - 1) {
            w[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) {
            break;
        }
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

/// Rank of a family of vectors.
template <class K>
int span_rank(const std::vector<LinComb<K>>& vs)
{
    std::map<K, int> index;
    for (const auto& v : vs) {
        for (const auto& [k, x] : v) {
            index.emplace(k, 0);
        }
    }
    int i = 0;
    for (auto& [k, idx] : index) {
        idx = i++;
    }
    SparseMatrix m(i, static_cast<int>(vs.size()));
    for (std::size_t c = 0; c < vs.size(); ++c) {
        for (const auto& [k, x] : vs[c]) {
            m.add(index.at(k), static_cast<int>(c), x);
        }
    }
    return rank(m);
}

/// dim S^T(X) by the rank of e_T on X^{(x)n}.
inline int schur_rank(const Tableau& t, const ParityDims& X)
{
    std::vector<LinComb<TensorWord>> imgs;
    for (const auto& w : all_words(tableau_size(t), X.dim())) {
        imgs.push_back(young_symmetrize(w, t, X));
    }
    return span_rank(imgs);
}

/// dim S^T(X) by counting fillings with letters ordered even < odd:
/// weakly increasing along rows and columns, even letters strictly along
/// rows, odd letters strictly down columns.
inline long schur_dimension(const Partition& lambda, const ParityDims& X)
{
    const int d = X.dim();
    long count = 0;
    Tableau u(lambda.size());
    std::vector<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        for (int j = 0; j < lambda[i]; ++j) {
            cells.emplace_back(static_cast<int>(i), j);
        }
    }
    auto rec = [&](auto&& self, std::size_t c) -> void {
        if (c == cells.size()) {
            ++count;
            return;
        }
        const auto [i, j] = cells[c];
        for (int v = 0; v < d; ++v) {
            if (j > 0) {
                const int left = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)];
                if (v < left || (v == left && !X.odd_letter(v))) {
                    continue;
                }
            }
            if (i > 0) {
                const int up = u[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
                if (v < up || (v == up && X.odd_letter(v))) {
                    continue;
                }
            }
            u[static_cast<std::size_t>(i)].push_back(v);
            self(self, c + 1);
            u[static_cast<std::size_t>(i)].pop_back();
        }
    };
    rec(rec, 0);
    return count;
}

// ---------------------------------------------------------------------------
// The decomposition of Omega Sym_c(X)
// ---------------------------------------------------------------------------

/// Abelian algebra whose suspension has the given parities, so that
/// Omega Sym_c(sL) is the cobar construction of Sym_c(X).
inline LInftyAlgebra abelian_for_parities(const ParityDims& X)
{
    std::vector<Generator> gens;
    for (int i = 0; i < X.dim(); ++i) {
        gens.push_back({"x" + std::to_string(i + 1), X.odd_letter(i) ? 0 : 1});
    }
    return LInftyAlgebra(GradedSpace(gens));
}

struct DecompositionRow {
    int length = 0; // number of cobar letters, n - p
    long cobar_dim = 0;
    long tableaux_dim = 0;
};

struct DecompositionReport {
    int n = 0;
    ParityDims X;
    std::vector<DecompositionRow> rows;
    bool dims_match = true;
    bool injective = true;
    bool chain_map = true;
    /// (tableau, J, j) -> c with d phi(T_J (x) u) = sum_j c (-1)^{#X(J,j)} phi(T_{J\j} (x) u).
    std::map<std::tuple<Tableau, DescentSet, int>, Scalar> sign_table;
    std::string failure;

    [[nodiscard]] bool pass() const { return dims_match && injective && chain_map; }
};

/// Number of standard tableaux, summed dimensions per cobar length.
inline std::map<int, long> tableaux_profile(int n, const ParityDims& X)
{
    std::map<int, long> out;
    for (const auto& lambda : partitions(n)) {
        const long s = schur_dimension(lambda, X);
        for (const auto& t : standard_tableaux(lambda)) {
            TComplex c(t);
            for (int p = 0; p <= static_cast<int>(c.descent_set().size()); ++p) {
                out[n - p] += c.dim(p) * s;
            }
        }
    }
    return out;
}

inline std::map<int, long> cobar_profile(int n, const ParityDims& X)
{
    auto L = abelian_for_parities(X);
    std::map<int, long> out;
    for (const auto& w : enumerate_cobar_words(L, n)) {
        ++out[static_cast<int>(w.size())];
    }
    return out;
}

/// phi(T_J (x) w e_T) = (1/prod m(J)_i!) pi_J(w e_T sigma_{m(J_T)}).
inline LinComb<CobarWord> tableau_embedding(const Tableau& t, const DescentSet& J, const TensorWord& w,
                                            const ParityDims& X)
{
    const int n = tableau_size(t);
    auto blocks_for = [n](const DescentSet& K) {
        auto z = zeta(n, K);
        std::vector<std::vector<int>> b(static_cast<std::size_t>(z[static_cast<std::size_t>(n)]));
        for (int v = 1; v <= n; ++v) {
            b[static_cast<std::size_t>(z[static_cast<std::size_t>(v)] - 1)].push_back(v - 1);
        }
        return b;
    };
    const auto jt = descents(t);
    auto u = young_symmetrize(w, t, X);
    // average over Sigma_{m(J_T)}
    const auto avg_group = block_group(n, blocks_for(jt));
    const Scalar inv_order(1, static_cast<long>(avg_group.size()));
    LinComb<TensorWord> avg;
    for (const auto& [v, x] : u) {
        for (const auto& [g, s] : avg_group) {
            auto [y, k] = act_right(v, g, X);
            avg.add(y, x * k * inv_order);
        }
    }
    const auto blocks = blocks_for(J);
    Scalar norm(1);
    for (const auto& b : blocks) {
        for (std::size_t k = 2; k <= b.size(); ++k) {
            norm /= Scalar(static_cast<long>(k));
        }
    }
    std::vector<int> sdeg; // degree parity of the letters in X
    for (int i = 0; i < X.dim(); ++i) {
        sdeg.push_back(X.odd_letter(i) ? 1 : 0);
    }
    LinComb<CobarWord> out;
    for (const auto& [v, x] : avg) {
        CobarWord cw;
        int sign = 1;
        for (auto b = blocks.rbegin(); b != blocks.rend(); ++b) {
            std::vector<int> letters;
            for (int p : *b) {
                letters.push_back(v[static_cast<std::size_t>(p)]);
            }
            auto m = canonical_mono(letters, sdeg);
            if (!m) {
                sign = 0;
                break;
            }
            sign *= m->second;
            cw.insert(cw.begin(), m->first);
        }
        if (sign == 0) {
            continue;
        }
        int pre = 0;
        for (std::size_t i = 0; i < cw.size(); ++i) {
            // (s^{-1})^{(x)k}: the i-th s^{-1} passes letters 0..i-1
            if (is_odd(pre)) {
                sign = -sign;
            }
            pre += mono_degree(cw[i], sdeg);
        }
        out.add(std::move(cw), x * sign * norm);
    }
    return out;
}

/// Dimension profile of Omega Sym_c(X) in rank n against the tableaux sum;
/// with `embedding`, also checks that the explicit embedding is injective
/// (rank of the images per cobar length) and solves for the constants
/// making it a chain map.
inline DecompositionReport decomposition_dims(int n, const ParityDims& X, bool embedding = true)
{
    if (n < 1) {
        throw std::invalid_argument("decomposition_dims: n must be positive");
    }
    DecompositionReport r;
    r.n = n;
    r.X = X;
    auto cob = cobar_profile(n, X);
    auto tab = tableaux_profile(n, X);
    for (int len = 1; len <= n; ++len) {
        DecompositionRow row{len, cob[len], tab[len]};
        if (row.cobar_dim != row.tableaux_dim) {
            r.dims_match = false;
            if (r.failure.empty()) {
                r.failure = "dimension mismatch at cobar length " + std::to_string(len);
            }
        }
        r.rows.push_back(row);
    }
    if (!embedding) {
        return r;
    }
    const auto words = all_words(n, X.dim());
    std::vector<Tableau> tabs;
    for (const auto& lambda : partitions(n)) {
        for (const auto& t : standard_tableaux(lambda)) {
            tabs.push_back(t);
        }
    }
    std::map<int, std::vector<LinComb<CobarWord>>> by_len;
    for (const auto& t : tabs) {
        for (const auto& J : subsets(descents(t))) {
            for (const auto& w : words) {
                by_len[n - static_cast<int>(J.size())].push_back(tableau_embedding(t, J, w, X));
            }
        }
    }
    for (const auto& [len, vs] : by_len) {
        if (span_rank(vs) != cob[len]) {
            r.injective = false;
            if (r.failure.empty()) {
                r.failure = "embedding not bijective at cobar length " + std::to_string(len);
            }
        }
    }
    const auto L = abelian_for_parities(X);
    for (const auto& t : tabs) {
        for (const auto& J : subsets(descents(t))) {
            if (J.empty()) {
                continue;
            }
            // unknowns c_j; equations from every word and every cobar key
            std::map<CobarWord, int> keys;
            std::vector<std::vector<LinComb<CobarWord>>> cols(J.size());
            std::vector<LinComb<CobarWord>> rhs;
            for (const auto& w : words) {
                rhs.push_back(cobar_differential(L, tableau_embedding(t, J, w, X), CobarParts::full()));
                for (std::size_t k = 0; k < J.size(); ++k) {
                    cols[k].push_back(tableau_embedding(t, erase_from(J, J[k]), w, X));
                }
            }
            auto key_of = [&keys](const CobarWord& cw) {
                return keys.emplace(cw, static_cast<int>(keys.size())).first->second;
            };
            SparseRow b;
            // row index = (word, key) pair
            std::map<std::pair<int, int>, int> rows;
            auto row_of = [&rows](int wi, int key) {
                return rows.emplace(std::make_pair(wi, key), static_cast<int>(rows.size())).first->second;
            };
            std::vector<std::tuple<int, int, Scalar>> entries;
            for (std::size_t wi = 0; wi < words.size(); ++wi) {
                for (std::size_t k = 0; k < J.size(); ++k) {
                    for (const auto& [cw, x] : cols[k][wi]) {
                        entries.emplace_back(row_of(static_cast<int>(wi), key_of(cw)), static_cast<int>(k), x);
                    }
                }
                for (const auto& [cw, x] : rhs[wi]) {
                    b[row_of(static_cast<int>(wi), key_of(cw))] += x;
                }
            }
            SparseMatrix A(static_cast<int>(rows.size()), static_cast<int>(J.size()));
            for (const auto& [i, k, x] : entries) {
                A.add(i, k, x);
            }
            std::erase_if(b, [](const auto& kv) { return sgn(kv.second) == 0; });
            auto sol = LinearSolver(A).solve(b);
            if (!sol) {
                r.chain_map = false;
                if (r.failure.empty()) {
                    r.failure = "no chain-map constants for T = " + tableau_to_string(t);
                }
                continue;
            }
            for (std::size_t k = 0; k < J.size(); ++k) {
                Scalar c = sol->count(static_cast<int>(k)) ? sol->at(static_cast<int>(k)) : Scalar(0);
                if (is_odd(x_count(J, J[k]))) {
                    c = -c;
                }
                r.sign_table[{t, J, J[k]}] = c;
            }
        }
    }
    return r;
}

/// Every column-semistandard surjection of shape lambda (|lambda| = n) is
/// T_J for exactly one standard T and J in J_T; returns the two counts per
/// shape and whether the maps are mutually inverse.
struct BijectionRecord {
    Partition shape;
    long pairs = 0;
    long semistandard = 0;
    bool bijective = true;
};

inline std::vector<BijectionRecord> tableau_bijection(int n)
{
    std::vector<BijectionRecord> out;
    for (const auto& lambda : partitions(n)) {
        BijectionRecord rec;
        rec.shape = lambda;
        std::map<Tableau, int> images;
        for (const auto& t : standard_tableaux(lambda)) {
            for (const auto& J : subsets(descents(t))) {
                ++rec.pairs;
                auto u = compose_zeta(t, J);
                if (!is_column_semistandard(u)) {
                    rec.bijective = false;
                }
                ++images[u];
                auto back = destandardize(u);
                if (!back || back->first != t || back->second != J) {
                    rec.bijective = false;
                }
            }
        }
        for (int m = 1; m <= n; ++m) {
            for (const auto& u : column_semistandard(lambda, m)) {
                ++rec.semistandard;
                if (images[u] != 1) {
                    rec.bijective = false;
                }
            }
        }
        if (rec.pairs != rec.semistandard) {
            rec.bijective = false;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace uenv
