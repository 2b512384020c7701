#pragma once

#include "uenv/cobar.hpp"
#include "uenv/exactlin.hpp"
#include "uenv/linear.hpp"
#include "uenv/linfty.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uenv {

/// Ordered partition [psi_1 | ... | psi_d] of {1..n}; each block increasing.
using Face = std::vector<std::vector<int>>;
using Chain = LinComb<Face>;

inline int face_size(const Face& f)
{
    int n = 0;
    for (const auto& b : f) {
        n += static_cast<int>(b.size());
    }
    return n;
}

/// Cohomological degree -(n - d).
inline int face_degree(const Face& f) { return static_cast<int>(f.size()) - face_size(f); }

inline std::string face_to_string(const Face& f)
{
    std::string s = "[";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) {
            s += "|";
        }
        for (std::size_t j = 0; j < f[i].size(); ++j) {
            if (j) {
                s += ",";
            }
            s += std::to_string(f[i][j]);
        }
    }
    return s + "]";
}

inline std::vector<Face> enumerate_faces(int n, int d)
{
    if (n < 1 || d < 1 || d > n) {
        throw std::out_of_range("enumerate_faces: need 1 <= d <= n");
    }
    std::vector<Face> out;
    for (auto& blocks : ordered_set_partitions(n, d)) {
        for (auto& b : blocks) {
            for (auto& x : b) {
                ++x;
            }
        }
        out.push_back(std::move(blocks));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Face> all_faces(int n)
{
    std::vector<Face> out;
    for (int d = 1; d <= n; ++d) {
        auto part = enumerate_faces(n, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

/// The standard face [1..m_1 | m_1+1..m_1+m_2 | ...] of a composition.
inline Face standard_face(const std::vector<int>& sizes)
{
    Face f;
    int next = 1;
    for (int m : sizes) {
        std::vector<int> b;
        for (int i = 0; i < m; ++i) {
            b.push_back(next++);
        }
        f.push_back(std::move(b));
    }
    return f;
}

inline Face top_cell(int n) { return standard_face({n}); }

/// Cellular differential: split one block psi_k into [M | psi_k \ M].
inline Chain boundary(const Face& f)
{
    Chain out;
    int before = 0; // m_1 + ... + m_{k-1}
    for (std::size_t k = 0; k < f.size(); ++k) {
        const auto& blk = f[k];
        const unsigned m = static_cast<unsigned>(blk.size());
        for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
            std::vector<int> M;
            std::vector<int> R;
            int inversions = 0; // pairs (r in R, x in M) with r before x
            for (unsigned i = 0; i < m; ++i) {
                if (mask & (1u << i)) {
                    M.push_back(blk[i]);
                    inversions += static_cast<int>(R.size());
                } else {
                    R.push_back(blk[i]);
                }
            }
            const int e = before + static_cast<int>(k) + static_cast<int>(M.size()) + inversions;
            Face g(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k));
            g.push_back(M);
            g.push_back(R);
            g.insert(g.end(), f.begin() + static_cast<std::ptrdiff_t>(k) + 1, f.end());
            out.add(std::move(g), Scalar(is_odd(e) ? -1 : 1));
        }
        before += static_cast<int>(m);
    }
    return out;
}

inline Chain boundary(const Chain& c)
{
    Chain out;
    for (const auto& [f, x] : c) {
        out.add(boundary(f), x);
    }
    return out;
}

/// Left action of sigma in S_n; sigma[i-1] is the image of i. The sign is
/// the parity of reordering each image block into increasing order.
inline std::pair<Face, int> act(const Permutation& sigma, const Face& f)
{
    Face g;
    int sign = 1;
    for (const auto& b : f) {
        std::vector<int> img;
        for (int x : b) {
            img.push_back(sigma.at(static_cast<std::size_t>(x - 1)));
        }
        sign *= sort_with_koszul_sign(img, [](int) { return 1; });
        g.push_back(std::move(img));
    }
    return {std::move(g), sign};
}

inline Chain act(const Permutation& sigma, const Chain& c)
{
    Chain out;
    for (const auto& [f, x] : c) {
        auto [g, s] = act(sigma, f);
        out.add(std::move(g), x * s);
    }
    return out;
}

/// Involution reversing the blocks.
inline std::pair<Face, int> nu(const Face& f)
{
    const int n = face_size(f);
    const int d = static_cast<int>(f.size());
    int e = 1 + n * (d - 1) + (d - 1) * (d - 2) / 2;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            e += static_cast<int>(f[static_cast<std::size_t>(i)].size() * f[static_cast<std::size_t>(j)].size());
        }
    }
    return {Face(f.rbegin(), f.rend()), is_odd(e) ? -1 : 1};
}

inline Chain nu(const Chain& c)
{
    Chain out;
    for (const auto& [f, x] : c) {
        auto [g, s] = nu(f);
        out.add(std::move(g), x * s);
    }
    return out;
}

/// Sizes of the blocks.
inline std::vector<int> composition_of(const Face& f)
{
    std::vector<int> out;
    for (const auto& b : f) {
        out.push_back(static_cast<int>(b.size()));
    }
    return out;
}

/// The permutation sending the standard face of f's composition onto f
/// (order preserving inside blocks, so act(sigma, standard) = +f).
inline Permutation standardizing_permutation(const Face& f)
{
    Permutation sigma(static_cast<std::size_t>(face_size(f)));
    int pos = 0;
    for (const auto& b : f) {
        for (int x : b) {
            sigma[static_cast<std::size_t>(pos++)] = x;
        }
    }
    return sigma;
}

inline Permutation inverse_permutation(const Permutation& sigma)
{
    Permutation inv(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        inv[static_cast<std::size_t>(sigma[i] - 1)] = static_cast<int>(i) + 1;
    }
    return inv;
}

/// 1-based permutations of {1..n}.
inline std::vector<Permutation> symmetric_group(int n)
{
    auto perms = all_permutations(n);
    for (auto& p : perms) {
        for (auto& x : p) {
            ++x;
        }
    }
    return perms;
}

// ---------------------------------------------------------------------------
// Equivariant contraction of C_*(P_n) onto k
// ---------------------------------------------------------------------------

struct ContractionOptions {
    bool average = true;          // symmetrize over S_n x Z_2
    bool side_conditions = true;  // H' = (1-GF)H(1-GF), then H'' = H' d H'
};

/// (F_n, G_n, H_n) for C_*(P_n): F_n sums vertex coefficients, G_n(1) is
/// the average of the vertices, H_n is stored column by column.
class PermutahedronContraction {
public:
    PermutahedronContraction(int n, ContractionOptions opt = {}) : n_(n), equivariant_(opt.average)
    {
        if (n < 1) {
            throw std::out_of_range("permutahedron contraction needs n >= 1");
        }
        for (int d = 1; d <= n; ++d) {
            faces_[d] = enumerate_faces(n, d);
        }
        build_particular(opt.average);
        if (opt.average) {
            average_nu();
        }
        if (opt.side_conditions) {
            repair_side_conditions();
        }
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const std::vector<Face>& faces(int d) const { return faces_.at(d); }

    [[nodiscard]] Scalar F(const Chain& c) const
    {
        Scalar s(0);
        for (const auto& [f, x] : c) {
            if (static_cast<int>(f.size()) == n_) {
                s += x;
            }
        }
        return s;
    }

    [[nodiscard]] Chain G(const Scalar& a = Scalar(1)) const
    {
        Chain out;
        Scalar w = a / static_cast<long>(faces_.at(n_).size());
        for (const auto& v : faces_.at(n_)) {
            out.add(v, w);
        }
        return out;
    }

    [[nodiscard]] Chain H(const Face& f) const
    {
        auto it = h_.find(f);
        return it == h_.end() ? Chain{} : it->second;
    }

    [[nodiscard]] Chain H(const Chain& c) const
    {
        Chain out;
        for (const auto& [f, x] : c) {
            out.add(H(f), x);
        }
        return out;
    }

    [[nodiscard]] Chain GF(const Chain& c) const { return G(F(c)); }

    [[nodiscard]] const std::map<Face, Chain>& columns() const { return h_; }

    /// Replaces H on one face. Only meant for building deliberately broken
    /// contractions in negative tests.
    void override_column(const Face& x, Chain c) { set_column(x, std::move(c)); }

private:
    // Degree by degree from the vertices upward in cell dimension:
    // dH(x) = x - GF(x) - H(dx). With averaging, only standard faces are
    // solved; the solution is averaged over their (signed) stabilizer and
    // transported to the rest of the orbit.
    void build_particular(bool equivariant)
    {
        for (int d = n_; d >= 2; --d) {
            const auto& rows = faces_.at(d);
            const auto& cols = faces_.at(d - 1);
            std::map<Face, int> row_index;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                row_index.emplace(rows[i], static_cast<int>(i));
            }
            SparseMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
            for (std::size_t j = 0; j < cols.size(); ++j) {
                for (const auto& [g, x] : boundary(cols[j])) {
                    m.add(row_index.at(g), static_cast<int>(j), x);
                }
            }
            LinearSolver solver(m);
            auto solve_for = [&](const Face& x) {
                Chain rhs(x);
                if (d == n_) {
                    rhs -= GF(rhs);
                }
                rhs -= H(boundary(x));
                SparseRow b;
                for (const auto& [g, c] : rhs) {
                    b.emplace(row_index.at(g), c);
                }
                auto sol = solver.solve(b);
                if (!sol) {
                    throw std::logic_error("permutahedron homotopy: right-hand side is not a boundary (n="
                                           + std::to_string(n_) + ", face " + face_to_string(x) + ")");
                }
                Chain y;
                for (const auto& [j, c] : *sol) {
                    y.add(cols[static_cast<std::size_t>(j)], c);
                }
                return y;
            };
            if (!equivariant) {
                for (const auto& x : rows) {
                    set_column(x, solve_for(x));
                }
                continue;
            }
            std::map<std::vector<int>, Chain> rep_values;
            for (const auto& x : rows) {
                auto comp = composition_of(x);
                auto it = rep_values.find(comp);
                if (it == rep_values.end()) {
                    Face rep = standard_face(comp);
                    Chain y = solve_for(rep);
                    it = rep_values.emplace(comp, stabilizer_average(rep, y)).first;
                }
                set_column(x, act(standardizing_permutation(x), it->second));
            }
        }
    }

    // (1/|Stab|) sum over block-preserving tau of eps_tau * tau(y), where
    // tau(rep) = eps_tau * rep.
    [[nodiscard]] Chain stabilizer_average(const Face& rep, const Chain& y) const
    {
        std::vector<std::vector<Permutation>> per_block;
        for (const auto& b : rep) {
            per_block.push_back(all_permutations(static_cast<int>(b.size())));
        }
        Chain out;
        long count = 0;
        std::vector<std::size_t> idx(rep.size(), 0);
        while (true) {
            Permutation tau(static_cast<std::size_t>(n_));
            int eps = 1;
            for (std::size_t k = 0; k < rep.size(); ++k) {
                const auto& p = per_block[k][idx[k]];
                eps *= permutation_sign(p);
                for (std::size_t i = 0; i < p.size(); ++i) {
                    tau[static_cast<std::size_t>(rep[k][i] - 1)] = rep[k][static_cast<std::size_t>(p[i])];
                }
            }
            out.add(act(tau, y), Scalar(eps));
            ++count;
            std::size_t k = 0;
            while (k < rep.size() && ++idx[k] == per_block[k].size()) {
                idx[k] = 0;
                ++k;
            }
            if (k == rep.size()) {
                break;
            }
        }
        out *= Scalar(1, count);
        return out;
    }

    void average_nu()
    {
        std::map<Face, Chain> avg;
        for (const auto& [d, fs] : faces_) {
            for (const auto& x : fs) {
                Chain c = H(x);
                auto [vx, s] = nu(x);
                c.add(nu(H(vx)), Scalar(s));
                c *= Scalar(1, 2);
                if (!c.empty()) {
                    avg.emplace(x, std::move(c));
                }
            }
        }
        h_ = std::move(avg);
    }

    void repair_side_conditions()
    {
        // H' = (1-GF) H (1-GF)
        const Chain hg = H(G());
        std::map<Face, Chain> h1;
        for (const auto& [d, fs] : faces_) {
            for (const auto& x : fs) {
                Chain c = H(x);
                if (d == n_) {
                    c -= hg;
                }
                c -= GF(c);
                if (!c.empty()) {
                    h1.emplace(x, std::move(c));
                }
            }
        }
        h_ = std::move(h1);
        // H'' = H' d H'; H' is equivariant, so evaluate on standard faces
        // and transport along the orbit.
        std::map<std::vector<int>, Chain> rep_values;
        std::map<Face, Chain> h2;
        for (const auto& [d, fs] : faces_) {
            for (const auto& x : fs) {
                Chain c;
                if (!equivariant_) {
                    c = H(boundary(H(x)));
                } else {
                    auto comp = composition_of(x);
                    auto it = rep_values.find(comp);
                    if (it == rep_values.end()) {
                        it = rep_values.emplace(comp, H(boundary(H(standard_face(comp))))).first;
                    }
                    c = act(standardizing_permutation(x), it->second);
                }
                if (!c.empty()) {
                    h2.emplace(x, std::move(c));
                }
            }
        }
        h_ = std::move(h2);
    }

    void set_column(const Face& x, Chain c)
    {
        if (c.empty()) {
            h_.erase(x);
        } else {
            h_[x] = std::move(c);
        }
    }

    int n_;
    bool equivariant_;
    std::map<int, std::vector<Face>> faces_;
    std::map<Face, Chain> h_;
};

/// Process-wide memo of the default contractions, keyed by n. Built once
/// under a lock; entries are immutable afterwards.
inline const PermutahedronContraction& contraction(int n)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<PermutahedronContraction>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<PermutahedronContraction>(n)).first;
    }
    return *it->second;
}

/// Outcome of the exhaustive checks on C_*(P_n).
struct PermutahedronReport {
    int n = 0;
    std::map<int, int> face_counts; // by number of blocks
    std::map<int, int> homology;    // by degree
    bool d_squared_zero = true;
    bool action_chain_map = true;
    bool nu_chain_map = true;
    bool nu_involution = true;
    bool nu_commutes_with_action = true;
    bool contraction_identities = true; // FG = 1 and 1 - GF = dH + Hd
    bool side_conditions = true;        // HG = 0, FH = 0, HH = 0
    bool equivariant = true;            // H commutes with S_n and nu
    bool top_cell_vanishes = true;
    std::string first_failure;

    [[nodiscard]] bool pass() const
    {
        return d_squared_zero && action_chain_map && nu_chain_map && nu_involution && nu_commutes_with_action
               && contraction_identities && side_conditions && equivariant && top_cell_vanishes;
    }
};

inline FiniteComplex permutahedron_complex(int n)
{
    return complex_from_basis(all_faces(n), [](const Face& f) { return face_degree(f); },
                              [](const Face& f) { return boundary(f); });
}

/// Exhaustive verification. Equivariance is tested on the generating
/// transpositions (i i+1) and nu.
inline PermutahedronReport verify_permutahedron(int n, const PermutahedronContraction& con)
{
    PermutahedronReport r;
    r.n = n;
    auto fail = [&](bool& flag, const std::string& what, const Face& f) {
        if (flag) {
            flag = false;
            if (r.first_failure.empty()) {
                r.first_failure = what + " at " + face_to_string(f);
            }
        }
    };
    for (int d = 1; d <= n; ++d) {
        r.face_counts[d] = static_cast<int>(enumerate_faces(n, d).size());
    }
    r.homology = homology_dims(permutahedron_complex(n));
    std::vector<Permutation> gens;
    for (int i = 1; i < n; ++i) {
        Permutation t(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            t[static_cast<std::size_t>(j)] = j + 1;
        }
        std::swap(t[static_cast<std::size_t>(i - 1)], t[static_cast<std::size_t>(i)]);
        gens.push_back(t);
    }
    const Chain g1 = con.G();
    if (con.F(g1) != 1) {
        r.contraction_identities = false;
        r.first_failure = "FG != 1";
    }
    if (!con.H(g1).empty()) {
        fail(r.side_conditions, "HG != 0", top_cell(n));
    }
    for (const auto& f : all_faces(n)) {
        const Chain x(f);
        const Chain dx = boundary(x);
        if (!boundary(dx).empty()) {
            fail(r.d_squared_zero, "d^2 != 0", f);
        }
        for (const auto& s : gens) {
            if (!(act(s, dx) == boundary(act(s, x)))) {
                fail(r.action_chain_map, "action is not a chain map", f);
            }
            if (!(nu(act(s, x)) == act(s, nu(x)))) {
                fail(r.nu_commutes_with_action, "nu does not commute with the action", f);
            }
            if (!(act(s, con.H(x)) == con.H(act(s, x)))) {
                fail(r.equivariant, "H not S_n-equivariant", f);
            }
        }
        if (!(nu(dx) == boundary(nu(x)))) {
            fail(r.nu_chain_map, "nu is not a chain map", f);
        }
        if (!(nu(nu(x)) == x)) {
            fail(r.nu_involution, "nu^2 != 1", f);
        }
        if (!(nu(con.H(x)) == con.H(nu(x)))) {
            fail(r.equivariant, "H does not commute with nu", f);
        }
        Chain lhs = x - con.GF(x);
        Chain rhs = boundary(con.H(x)) + con.H(dx);
        if (!(lhs == rhs)) {
            fail(r.contraction_identities, "1 - GF != dH + Hd", f);
        }
        const Chain hx = con.H(x);
        if (sgn(con.F(hx)) != 0) {
            fail(r.side_conditions, "FH != 0", f);
        }
        if (!con.H(hx).empty()) {
            fail(r.side_conditions, "HH != 0", f);
        }
    }
    if (!con.H(top_cell(n)).empty()) {
        r.top_cell_vanishes = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// The isomorphism Theta and the homotopy h_V
// ---------------------------------------------------------------------------

/// Theta(v_1 (x) ... (x) v_n, psi): reorder the word along the blocks of
/// psi (Koszul sign), then apply s^{-1}(s^{(x)m_j}) blockwise with Koszul
/// signs, times (-1)^{(n-d) sum deg v_i}. Letters are generators of V = L.
inline LinComb<CobarWord> theta(const LInftyAlgebra& V, const std::vector<int>& word, const Face& f)
{
    const int n = static_cast<int>(word.size());
    if (face_size(f) != n) {
        throw std::invalid_argument("theta: word length differs from the face size");
    }
    const auto& dv = V.degrees();
    std::vector<int> degs;
    int total = 0;
    for (int g : word) {
        degs.push_back(dv[static_cast<std::size_t>(g)]);
        total += degs.back();
    }
    const int d = static_cast<int>(f.size());
    int sign = is_odd((n - d) * total) ? -1 : 1;
    Permutation p;
    for (const auto& b : f) {
        for (int x : b) {
            p.push_back(x - 1);
        }
    }
    sign *= koszul_sign(p, degs);
    CobarWord out;
    int before = 0;
    std::size_t pos = 0;
    for (const auto& b : f) {
        const int m = static_cast<int>(b.size());
        std::vector<int> letters;
        std::vector<int> ldeg;
        for (int i = 0; i < m; ++i) {
            const int g = word[static_cast<std::size_t>(p[pos++])];
            letters.push_back(g);
            ldeg.push_back(dv[static_cast<std::size_t>(g)]);
        }
        if (is_odd((1 - m) * before)) {
            sign = -sign;
        }
        sign *= suspension_sign(ldeg);
        auto c = canonical_mono(letters, V.suspended_degrees());
        if (!c) {
            return {};
        }
        sign *= c->second;
        out.push_back(std::move(c->first));
        for (int x : ldeg) {
            before += x;
        }
    }
    return LinComb<CobarWord>(out, Scalar(sign));
}

inline LinComb<CobarWord> theta(const LInftyAlgebra& V, const std::vector<int>& word, const Chain& c)
{
    LinComb<CobarWord> out;
    for (const auto& [f, x] : c) {
        out.add(theta(V, word, f), x);
    }
    return out;
}

/// Preimage of a cobar word under Theta: the concatenated letters with the
/// standard face of its letter sizes, and the scalar c with w = c * Theta(...).
struct ThetaPreimage {
    std::vector<int> word;
    Face face;
    Scalar scale;
};

inline ThetaPreimage theta_inverse(const LInftyAlgebra& V, const CobarWord& w)
{
    ThetaPreimage pre;
    std::vector<int> sizes;
    for (const auto& m : w) {
        pre.word.insert(pre.word.end(), m.begin(), m.end());
        sizes.push_back(static_cast<int>(m.size()));
    }
    pre.face = standard_face(sizes);
    const Scalar c = theta(V, pre.word, pre.face).coeff(w);
    if (sgn(c) == 0) {
        throw std::logic_error("theta_inverse: word is not in the image of its standard representative");
    }
    pre.scale = 1 / c;
    return pre;
}

/// Source of the permutahedral homotopies; defaults to the memoized ones.
using HomotopySource = std::function<const PermutahedronContraction&(int)>;

inline HomotopySource default_homotopies()
{
    return [](int n) -> const PermutahedronContraction& { return contraction(n); };
}

/// Homotopies with the degree-violating term H(top cell) = top cell added;
/// used to confirm that round-trip checks detect a wrong homotopy.
inline HomotopySource mutated_homotopies()
{
    auto cache = std::make_shared<std::map<int, std::unique_ptr<PermutahedronContraction>>>();
    auto mu = std::make_shared<std::mutex>();
    return [cache, mu](int n) -> const PermutahedronContraction& {
        std::lock_guard<std::mutex> lock(*mu);
        auto it = cache->find(n);
        if (it == cache->end()) {
            auto c = std::make_unique<PermutahedronContraction>(contraction(n));
            c->override_column(top_cell(n), Chain(top_cell(n)));
            it = cache->emplace(n, std::move(c)).first;
        }
        return *it->second;
    };
}

/// h_V = 0 (+) (1 (x) H_n), with the Koszul sign (-1)^{|v|} of moving H_n
/// past the tensor factor.
inline LinComb<CobarWord> homotopy_hV(const LInftyAlgebra& V, const CobarWord& w,
                                      const HomotopySource& src = default_homotopies())
{
    if (w.empty()) {
        return {};
    }
    auto pre = theta_inverse(V, w);
    const auto& con = src(static_cast<int>(pre.word.size()));
    const Chain hx = con.H(pre.face);
    if (hx.empty()) {
        return {};
    }
    int total = 0;
    for (int g : pre.word) {
        total += V.degrees()[static_cast<std::size_t>(g)];
    }
    auto out = theta(V, pre.word, hx);
    out *= is_odd(total) ? -pre.scale : pre.scale;
    return out;
}

inline LinComb<CobarWord> homotopy_hV(const LInftyAlgebra& V, const LinComb<CobarWord>& v,
                                      const HomotopySource& src = default_homotopies())
{
    LinComb<CobarWord> out;
    for (const auto& [w, c] : v) {
        out.add(homotopy_hV(V, w, src), c);
    }
    return out;
}

} // namespace uenv
