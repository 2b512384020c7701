#pragma once

#include "uenv/linear.hpp"
#include "uenv/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace uenv {

// ---------------------------------------------------------------------------
// Signs and permutations
// ---------------------------------------------------------------------------

/// A permutation in one-line notation acting on positions of a word:
/// `(w . perm)[i] = w[perm[i]]`.
using Permutation = std::vector<int>;

inline bool is_odd(int degree) { return (degree & 1) != 0; }

inline bool is_permutation(std::span<const int> perm)
{
    std::vector<char> seen(perm.size(), 0);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || seen[p]) {
            return false;
        }
        seen[p] = 1;
    }
    return true;
}

/// Sign picked up by rearranging graded letters of the given degrees into
/// the order `perm`: each transposed pair of odd letters contributes -1.
inline int koszul_sign(std::span<const int> perm, std::span<const int> degrees)
{
    if (perm.size() != degrees.size()) {
        throw std::invalid_argument("koszul_sign: permutation and degree list differ in length");
    }
    if (!is_permutation(perm)) {
        throw std::invalid_argument("koszul_sign: not a permutation");
    }
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) {
            if (perm[i] > perm[j] && is_odd(degrees[perm[i]]) && is_odd(degrees[perm[j]])) {
                sign = -sign;
            }
        }
    }
    return sign;
}

/// Ordinary sign of a permutation.
inline int permutation_sign(std::span<const int> perm)
{
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        for (std::size_t j = i + 1; j < perm.size(); ++j) {
            if (perm[i] > perm[j]) {
                sign = -sign;
            }
        }
    }
    return sign;
}

inline Permutation identity_permutation(int n)
{
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// All permutations of {0..n-1} in lexicographic order.
inline std::vector<Permutation> all_permutations(int n)
{
    std::vector<Permutation> out;
    auto p = identity_permutation(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Composite acting as "first `first`, then `second`":
/// `(w . first) . second == w . compose_then(first, second)`.
inline Permutation compose_then(const Permutation& first, const Permutation& second)
{
    Permutation out(second.size());
    for (std::size_t i = 0; i < second.size(); ++i) {
        out[i] = first[second[i]];
    }
    return out;
}

/// Sign of sorting a word of graded letters into nondecreasing order
/// (stable). Letters compare by `key`; parity by `degree`.
template <class Letter, class DegreeFn>
int sort_with_koszul_sign(std::vector<Letter>& word, DegreeFn&& degree)
{
    // insertion sort: each adjacent swap of two odd letters flips the sign
    int sign = 1;
    for (std::size_t i = 1; i < word.size(); ++i) {
        for (std::size_t j = i; j > 0 && word[j] < word[j - 1]; --j) {
            if (is_odd(degree(word[j])) && is_odd(degree(word[j - 1]))) {
                sign = -sign;
            }
            std::swap(word[j], word[j - 1]);
        }
    }
    return sign;
}

// ---------------------------------------------------------------------------
// Graded spaces, words, vectors and maps
// ---------------------------------------------------------------------------

struct Generator {
    std::string id;
    int degree = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Named basis of a finite graded vector space (cohomological degrees).
class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(std::vector<Generator> gens) : gens_(std::move(gens))
    {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            auto [it, fresh] = index_.emplace(gens_[i].id, static_cast<int>(i));
            if (!fresh) {
                throw std::invalid_argument("duplicate generator id '" + gens_[i].id + "'");
            }
        }
    }

    [[nodiscard]] int dim() const { return static_cast<int>(gens_.size()); }
    [[nodiscard]] int degree(int i) const { return gens_.at(static_cast<std::size_t>(i)).degree; }
    [[nodiscard]] const std::string& id(int i) const { return gens_.at(static_cast<std::size_t>(i)).id; }
    [[nodiscard]] const std::vector<Generator>& generators() const { return gens_; }

    [[nodiscard]] std::optional<int> find(const std::string& id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] int index(const std::string& id) const
    {
        auto i = find(id);
        if (!i) {
            throw std::invalid_argument("unknown generator '" + id + "'");
        }
        return *i;
    }

    [[nodiscard]] int word_degree(std::span<const int> letters) const
    {
        int d = 0;
        for (int l : letters) {
            d += degree(l);
        }
        return d;
    }

    /// Degrees of the letters in `word`, optionally shifted per letter.
    [[nodiscard]] std::vector<int> degrees_of(std::span<const int> letters, int shift = 0) const
    {
        std::vector<int> out;
        out.reserve(letters.size());
        for (int l : letters) {
            out.push_back(degree(l) + shift);
        }
        return out;
    }

    friend bool operator==(const GradedSpace& a, const GradedSpace& b) { return a.gens_ == b.gens_; }

private:
    std::vector<Generator> gens_;
    std::unordered_map<std::string, int> index_;
};

enum class WordKind : std::uint8_t { tensor, symmetric };

/// A basis word of V^{(x)n} (tensor kind) or Sym^n(V) (symmetric kind,
/// letters sorted by generator index).
struct BasisWord {
    WordKind kind = WordKind::tensor;
    std::vector<int> letters;

    friend auto operator<=>(const BasisWord&, const BasisWord&) = default;
};

/// Canonical symmetric word with the Koszul sign of the sorting permutation,
/// or nullopt when an odd letter repeats (the word is zero).
inline std::optional<std::pair<BasisWord, int>> make_symmetric(const GradedSpace& space, std::vector<int> letters)
{
    int sign = sort_with_koszul_sign(letters, [&](int l) { return space.degree(l); });
    for (std::size_t i = 1; i < letters.size(); ++i) {
        if (letters[i] == letters[i - 1] && is_odd(space.degree(letters[i]))) {
            return std::nullopt;
        }
    }
    return std::make_pair(BasisWord{WordKind::symmetric, std::move(letters)}, sign);
}

/// Element of s^k(W) where W is V^{(x)n} or Sym(V); `suspension` counts
/// the applied s (negative for s^{-1}).
struct GradedVector {
    int suspension = 0;
    LinComb<BasisWord> entries;

    friend bool operator==(const GradedVector&, const GradedVector&) = default;
};

inline int degree_of(const GradedSpace& space, const BasisWord& w, int suspension = 0)
{
    return space.word_degree(w.letters) - suspension;
}

/// s^{shift} v. The suspension lowers degree by one: deg(sv) = deg v - 1.
inline GradedVector suspend(const GradedVector& v, int shift)
{
    return GradedVector{v.suspension + shift, v.entries};
}

/// A homogeneous linear map of the given degree, stored column by column.
template <class Key = BasisWord>
struct GradedLinearMap {
    int degree = 0;
    std::map<Key, LinComb<Key>> columns;

    [[nodiscard]] LinComb<Key> operator()(const Key& k) const
    {
        auto it = columns.find(k);
        return it == columns.end() ? LinComb<Key>{} : it->second;
    }

    [[nodiscard]] LinComb<Key> operator()(const LinComb<Key>& v) const
    {
        LinComb<Key> out;
        for (const auto& [k, c] : v) {
            out.add((*this)(k), c);
        }
        return out;
    }
};

/// Map induced on s^{shift}W by f: W -> W, i.e. (-1)^{shift*|f|} s f s^{-1}.
/// For a differential this is d(sv) = -s(dv).
template <class Key>
GradedLinearMap<Key> suspended_map(const GradedLinearMap<Key>& f, int shift)
{
    GradedLinearMap<Key> out = f;
    if (is_odd(shift * f.degree)) {
        for (auto& [k, col] : out.columns) {
            col *= Scalar(-1);
        }
    }
    return out;
}

inline GradedVector apply_suspended(const GradedLinearMap<BasisWord>& f, const GradedVector& v)
{
    auto g = suspended_map(f, v.suspension);
    return GradedVector{v.suspension, g(v.entries)};
}

/// f (x) g with the Koszul rule (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b).
template <class K1, class K2, class DegA>
GradedLinearMap<std::pair<K1, K2>> tensor_map(const GradedLinearMap<K1>& f, const GradedLinearMap<K2>& g,
                                              DegA&& degree_of_first)
{
    GradedLinearMap<std::pair<K1, K2>> out;
    out.degree = f.degree + g.degree;
    for (const auto& [a, fa] : f.columns) {
        const int sign = is_odd(g.degree * degree_of_first(a)) ? -1 : 1;
        for (const auto& [b, gb] : g.columns) {
            LinComb<std::pair<K1, K2>> col;
            for (const auto& [x, cx] : fa) {
                for (const auto& [y, cy] : gb) {
                    col.add({x, y}, cx * cy * sign);
                }
            }
            if (!col.empty()) {
                out.columns.emplace(std::pair<K1, K2>{a, b}, std::move(col));
            }
        }
    }
    return out;
}

/// f o g on the columns of g.
template <class Key>
GradedLinearMap<Key> compose(const GradedLinearMap<Key>& f, const GradedLinearMap<Key>& g)
{
    GradedLinearMap<Key> out;
    out.degree = f.degree + g.degree;
    for (const auto& [k, col] : g.columns) {
        auto img = f(col);
        if (!img.empty()) {
            out.columns.emplace(k, std::move(img));
        }
    }
    return out;
}

/// Graded symmetrization of a tensor word: (1/k!) sum over S_k of the
/// Koszul-signed permuted words. Output is in tensor kind.
inline LinComb<BasisWord> symmetrize(const GradedSpace& space, const BasisWord& w)
{
    if (w.kind != WordKind::tensor) {
        throw std::invalid_argument("symmetrize: expects a tensor word");
    }
    const int k = static_cast<int>(w.letters.size());
    const auto degs = space.degrees_of(w.letters);
    LinComb<BasisWord> out;
    Scalar weight(1);
    for (int i = 2; i <= k; ++i) {
        weight /= i;
    }
    for (const auto& p : all_permutations(k)) {
        BasisWord pw{WordKind::tensor, {}};
        for (int i : p) {
            pw.letters.push_back(w.letters[i]);
        }
        out.add(pw, weight * koszul_sign(p, degs));
    }
    return out;
}

inline LinComb<BasisWord> symmetrize(const GradedSpace& space, const LinComb<BasisWord>& v)
{
    LinComb<BasisWord> out;
    for (const auto& [w, c] : v) {
        out.add(symmetrize(space, w), c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sparse exact row reduction
// ---------------------------------------------------------------------------

using SparseRow = std::map<int, Scalar>;

/// Sparse matrix with `rows x cols` shape, stored by columns
/// (column j = image of basis vector j).
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<SparseRow> columns;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

    void add(int row, int col, const Scalar& v)
    {
        if (sgn(v) == 0) {
            return;
        }
        auto& column = columns.at(static_cast<std::size_t>(col));
        auto [it, fresh] = column.try_emplace(row, v);
        if (!fresh) {
            it->second += v;
            if (sgn(it->second) == 0) {
                column.erase(it);
            }
        }
    }

    [[nodiscard]] SparseRow apply(const SparseRow& x) const
    {
        SparseRow out;
        for (const auto& [j, xj] : x) {
            for (const auto& [i, a] : columns.at(static_cast<std::size_t>(j))) {
                auto& slot = out[i];
                slot += a * xj;
                if (sgn(slot) == 0) {
                    out.erase(i);
                }
            }
        }
        return out;
    }

    /// this * other
    [[nodiscard]] SparseMatrix multiply(const SparseMatrix& other) const
    {
        if (cols != other.rows) {
            throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
        }
        SparseMatrix out(rows, other.cols);
        for (int j = 0; j < other.cols; ++j) {
            out.columns[static_cast<std::size_t>(j)] = apply(other.columns[static_cast<std::size_t>(j)]);
        }
        return out;
    }

    [[nodiscard]] bool is_zero() const
    {
        return std::all_of(columns.begin(), columns.end(), [](const SparseRow& c) { return c.empty(); });
    }

    [[nodiscard]] std::vector<SparseRow> row_list() const
    {
        std::vector<SparseRow> out(static_cast<std::size_t>(rows));
        for (int j = 0; j < cols; ++j) {
            for (const auto& [i, a] : columns[static_cast<std::size_t>(j)]) {
                out[static_cast<std::size_t>(i)].emplace(j, a);
            }
        }
        return out;
    }
};

namespace detail {

// Integer row with content removed. Fraction-free elimination works on
// these: r <- a*r - b*p followed by division by the gcd of the entries.
using IntRow = std::map<int, mpz_class>;

inline IntRow to_primitive(const SparseRow& r)
{
    mpz_class l = 1;
    for (const auto& [j, v] : r) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    IntRow out;
    mpz_class g = 0;
    for (const auto& [j, v] : r) {
        mpz_class x = v.get_num() * (l / v.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        out.emplace(j, std::move(x));
    }
    if (g > 1) {
        for (auto& [j, x] : out) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        }
    }
    return out;
}

inline void make_primitive(IntRow& r)
{
    mpz_class g = 0;
    for (const auto& [j, x] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) {
            return;
        }
    }
    if (g > 1) {
        for (auto& [j, x] : r) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        }
    }
}

} // namespace detail

/// Rank via fraction-free sparse elimination of the rows.
inline int rank(const SparseMatrix& m)
{
    std::map<int, detail::IntRow> pivots; // pivot column -> row
    for (const auto& r : m.row_list()) {
        if (r.empty()) {
            continue;
        }
        auto row = detail::to_primitive(r);
        while (!row.empty()) {
            auto lead = row.begin()->first;
            auto pit = pivots.find(lead);
            if (pit == pivots.end()) {
                pivots.emplace(lead, std::move(row));
                break;
            }
            const mpz_class a = pit->second.begin()->second; // pivot entry
            const mpz_class b = row.begin()->second;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            const mpz_class fa = a / g;
            const mpz_class fb = b / g;
            detail::IntRow next;
            for (auto& [j, x] : row) {
                next.emplace(j, x * fa);
            }
            for (const auto& [j, y] : pit->second) {
                auto [it, fresh] = next.try_emplace(j, 0);
                it->second -= y * fb;
                if (it->second == 0) {
                    next.erase(it);
                }
            }
            detail::make_primitive(next);
            row = std::move(next);
        }
    }
    return static_cast<int>(pivots.size());
}

/// Reduced row echelon solver for A x = b. Pivot columns are chosen in
/// increasing column order; free variables are set to zero, which yields
/// the solution supported on the lexicographically first pivot columns.
class LinearSolver {
public:
    explicit LinearSolver(const SparseMatrix& a) : rows_(a.rows), cols_(a.cols)
    {
        // Row-reduce [A | I] keeping the row operations in `ops_`.
        auto rl = a.row_list();
        std::vector<SparseRow> ops(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i) {
            ops[static_cast<std::size_t>(i)].emplace(i, Scalar(1));
        }
        std::vector<char> used(static_cast<std::size_t>(rows_), 0);
        for (int col = 0; col < cols_; ++col) {
            int piv = -1;
            for (int i = 0; i < rows_; ++i) {
                if (!used[static_cast<std::size_t>(i)] && rl[static_cast<std::size_t>(i)].count(col)) {
                    if (piv < 0 || rl[static_cast<std::size_t>(i)].size() < rl[static_cast<std::size_t>(piv)].size()) {
                        piv = i;
                    }
                }
            }
            if (piv < 0) {
                continue;
            }
            used[static_cast<std::size_t>(piv)] = 1;
            auto& prow = rl[static_cast<std::size_t>(piv)];
            auto& pops = ops[static_cast<std::size_t>(piv)];
            const Scalar inv = 1 / prow.at(col);
            for (auto& [j, v] : prow) {
                v *= inv;
            }
            for (auto& [j, v] : pops) {
                v *= inv;
            }
            for (int i = 0; i < rows_; ++i) {
                if (i == piv) {
                    continue;
                }
                auto& r = rl[static_cast<std::size_t>(i)];
                auto it = r.find(col);
                if (it == r.end()) {
                    continue;
                }
                const Scalar f = it->second;
                axpy(r, prow, -f);
                axpy(ops[static_cast<std::size_t>(i)], pops, -f);
            }
            pivots_.push_back({col, piv});
        }
        for (auto [col, row] : pivots_) {
            pivot_ops_.push_back(ops[static_cast<std::size_t>(row)]);
        }
        for (int i = 0; i < rows_; ++i) {
            if (!used[static_cast<std::size_t>(i)]) {
                null_ops_.push_back(ops[static_cast<std::size_t>(i)]);
            }
        }
    }

    [[nodiscard]] int rank() const { return static_cast<int>(pivots_.size()); }

    /// Particular solution of A x = b, or nullopt if b is not in the image.
    [[nodiscard]] std::optional<SparseRow> solve(const SparseRow& b) const
    {
        for (const auto& op : null_ops_) {
            if (sgn(dot(op, b)) != 0) {
                return std::nullopt;
            }
        }
        SparseRow x;
        for (std::size_t k = 0; k < pivots_.size(); ++k) {
            Scalar v = dot(pivot_ops_[k], b);
            if (sgn(v) != 0) {
                x.emplace(pivots_[k].first, std::move(v));
            }
        }
        return x;
    }

private:
    static void axpy(SparseRow& r, const SparseRow& p, const Scalar& f)
    {
        for (const auto& [j, v] : p) {
            auto [it, fresh] = r.try_emplace(j, 0);
            it->second += f * v;
            if (sgn(it->second) == 0) {
                r.erase(it);
            }
        }
    }

    static Scalar dot(const SparseRow& a, const SparseRow& b)
    {
        Scalar s(0);
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (ia->first < ib->first) {
                ++ia;
            } else if (ib->first < ia->first) {
                ++ib;
            } else {
                s += ia->second * ib->second;
                ++ia;
                ++ib;
            }
        }
        return s;
    }

    int rows_;
    int cols_;
    std::vector<std::pair<int, int>> pivots_; // (column, row)
    std::vector<SparseRow> pivot_ops_;
    std::vector<SparseRow> null_ops_;
};

// ---------------------------------------------------------------------------
// Finite cochain complexes
// ---------------------------------------------------------------------------

/// Finite-dimensional cochain complex: dims per degree and the
/// differential d^k : C^k -> C^{k+1} as a (dim k+1) x (dim k) matrix.
class FiniteComplex {
public:
    FiniteComplex(std::map<int, int> dims, std::map<int, SparseMatrix> differential)
        : dims_(std::move(dims)), d_(std::move(differential))
    {
        for (const auto& [k, m] : d_) {
            if (m.cols != dim(k) || m.rows != dim(k + 1)) {
                throw std::invalid_argument("FiniteComplex: differential shape does not match dimensions in degree "
                                            + std::to_string(k));
            }
        }
        for (const auto& [k, m] : d_) {
            auto next = d_.find(k + 1);
            if (next != d_.end() && !next->second.multiply(m).is_zero()) {
                throw std::invalid_argument("FiniteComplex: d o d != 0 starting in degree " + std::to_string(k));
            }
        }
    }

    [[nodiscard]] int dim(int k) const
    {
        auto it = dims_.find(k);
        return it == dims_.end() ? 0 : it->second;
    }
    [[nodiscard]] const std::map<int, int>& dims() const { return dims_; }
    [[nodiscard]] const std::map<int, SparseMatrix>& differential() const { return d_; }

private:
    std::map<int, int> dims_;
    std::map<int, SparseMatrix> d_;
};

/// dim ker d^k - dim im d^{k-1} for every degree carrying a component.
inline std::map<int, int> homology_dims(const FiniteComplex& c)
{
    std::map<int, int> ranks;
    for (const auto& [k, m] : c.differential()) {
        ranks[k] = rank(m);
    }
    auto rank_at = [&](int k) {
        auto it = ranks.find(k);
        return it == ranks.end() ? 0 : it->second;
    };
    std::map<int, int> out;
    for (const auto& [k, n] : c.dims()) {
        out[k] = n - rank_at(k) - rank_at(k - 1);
    }
    return out;
}

/// Builds a FiniteComplex from keyed bases and a differential given on keys.
/// Images outside the listed basis are an error.
template <class Key, class DegreeFn, class DiffFn>
FiniteComplex complex_from_basis(const std::vector<Key>& basis, DegreeFn&& degree, DiffFn&& d)
{
    std::map<int, std::vector<const Key*>> by_degree;
    std::map<Key, std::pair<int, int>> where;
    for (const auto& k : basis) {
        int deg = degree(k);
        auto& slot = by_degree[deg];
        where.emplace(k, std::make_pair(deg, static_cast<int>(slot.size())));
        slot.push_back(&k);
    }
    std::map<int, int> dims;
    for (const auto& [deg, keys] : by_degree) {
        dims[deg] = static_cast<int>(keys.size());
    }
    std::map<int, SparseMatrix> diff;
    for (const auto& [deg, keys] : by_degree) {
        auto next = dims.find(deg + 1);
        SparseMatrix m(next == dims.end() ? 0 : next->second, static_cast<int>(keys.size()));
        bool any = false;
        for (std::size_t j = 0; j < keys.size(); ++j) {
            for (const auto& [img, c] : d(*keys[j])) {
                auto it = where.find(img);
                if (it == where.end() || it->second.first != deg + 1) {
                    throw std::logic_error("complex_from_basis: differential leaves the basis");
                }
                m.add(it->second.second, static_cast<int>(j), c);
                any = true;
            }
        }
        if (any || m.rows > 0) {
            diff.emplace(deg, std::move(m));
        }
    }
    return FiniteComplex(std::move(dims), std::move(diff));
}

} // namespace uenv
