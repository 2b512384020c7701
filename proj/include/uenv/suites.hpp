#pragma once

#include "uenv/bgg.hpp"
#include "uenv/cobar_contraction.hpp"
#include "uenv/hpt.hpp"
#include "uenv/permutahedra.hpp"
#include "uenv/tableaux.hpp"
#include "uenv/uea.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace uenv {

struct SuiteConfig {
    int arity_cap = 4;
    int weight_cap = 6;
    int n_cap = 4;
};

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::skipped:
        return "skipped";
    }
    return "?";
}

struct CheckRecord {
    std::string name;
    Status status = Status::pass;
    std::string counterexample;
    std::string detail;
    long checked = 0;
    double seconds = 0;
};

using Records = std::vector<CheckRecord>;

inline bool all_pass(const Records& rs)
{
    return std::none_of(rs.begin(), rs.end(), [](const CheckRecord& r) { return r.status == Status::fail; });
}

namespace suite_detail {

inline CheckRecord from_result(std::string name, const CheckResult& r)
{
    CheckRecord rec;
    rec.name = std::move(name);
    rec.status = r.pass ? Status::pass : Status::fail;
    rec.counterexample = r.counterexample;
    rec.detail = r.image;
    rec.checked = r.checked;
    return rec;
}

inline CheckRecord from_flag(std::string name, bool ok, std::string detail = {})
{
    CheckRecord rec;
    rec.name = std::move(name);
    rec.status = ok ? Status::pass : Status::fail;
    rec.detail = std::move(detail);
    return rec;
}

inline CheckRecord skipped(std::string name, std::string why)
{
    CheckRecord rec;
    rec.name = std::move(name);
    rec.status = Status::skipped;
    rec.detail = std::move(why);
    return rec;
}

/// Runs one check and stamps its wall time.
inline void timed(Records& out, const std::function<CheckRecord()>& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    auto rec = f();
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(rec));
}

inline std::string dims_string(const std::map<int, int>& m)
{
    std::string s = "{";
    for (const auto& [k, v] : m) {
        if (s.size() > 1) {
            s += ", ";
        }
        s += std::to_string(k) + ":" + std::to_string(v);
    }
    return s + "}";
}

} // namespace suite_detail

inline Records stasheff_suite(const AInftyStructure& A)
{
    Records out;
    suite_detail::timed(out, [&] { return suite_detail::from_result("stasheff", stasheff_check(A)); });
    return out;
}

inline Records pbw_suite(const AInftyStructure& A)
{
    Records out;
    if (!A.algebra().is_dg_lie()) {
        out.push_back(suite_detail::skipped("pbw", "needs a DG Lie algebra"));
        return out;
    }
    suite_detail::timed(out, [&] { return suite_detail::from_result("pbw", pbw_compare(A)); });
    if (A.arity_cap() >= 2) {
        suite_detail::timed(out, [&] { return suite_detail::from_result("pbw.m2_generators", m2_generator_check(A)); });
    }
    return out;
}

inline Records alt_suite(const AInftyStructure& A)
{
    Records out;
    for (int n = 2; n <= std::min(3, A.arity_cap()); ++n) {
        suite_detail::timed(out, [&] {
            return suite_detail::from_result("alt.n" + std::to_string(n), alt_bracket_check(A, n));
        });
    }
    return out;
}

inline Records involution_suite(const AInftyStructure& A)
{
    Records out;
    for (int n = 2; n <= std::min(3, A.arity_cap()); ++n) {
        suite_detail::timed(out, [&] {
            return suite_detail::from_result("involution.n" + std::to_string(n), involution_check(A, n));
        });
    }
    return out;
}

inline Records coproduct_suite(const AInftyStructure& A)
{
    Records out;
    suite_detail::timed(out, [&] {
        return suite_detail::from_result(
            "coproduct", coproduct_strictness_check(A, std::min(3, A.arity_cap()), std::min(3, A.weight_cap())));
    });
    return out;
}

inline Records truncation_suite(const AInftyStructure& A)
{
    Records out;
    suite_detail::timed(out, [&] { return suite_detail::from_result("truncation", truncation_agreement_check(A)); });
    return out;
}

/// check_morphism, then U(phi) against the strict/non-strict expectations.
inline Records morphism_suite(const LInftyMorphism& phi, const SuiteConfig& cfg)
{
    Records out;
    suite_detail::timed(out, [&] {
        return suite_detail::from_result("morphism.linfty", check_morphism(phi, cfg.weight_cap));
    });
    if (out.back().status == Status::fail) {
        return out;
    }
    const int ar = std::min(3, cfg.arity_cap);
    const int wt = std::min(4, cfg.weight_cap);
    AInftyStructure S(phi.source(), ar, wt);
    AInftyStructure T(phi.target(), ar, wt);
    suite_detail::timed(out, [&] {
        return suite_detail::from_result("morphism.enveloping", u_morphism_check(u_morphism(phi, S, T)));
    });
    return out;
}

/// Cobar contraction on the underlying complex (V, l_1) plus naturality along
/// a seeded random chain map V -> V.
inline Records theorem1_suite(const LInftyAlgebra& L, const SuiteConfig& cfg)
{
    Records out;
    const LInftyAlgebra V = L.truncated(1);
    const int rank = std::min(4, cfg.arity_cap);
    suite_detail::timed(out, [&] {
        auto r = verify_cobar_contraction(V, rank);
        auto rec = suite_detail::from_flag("theorem1.contraction", r.pass(), r.first_failure);
        rec.checked = r.checked;
        return rec;
    });
    suite_detail::timed(out, [&] {
        auto phi = random_chain_map(V, V, 1);
        return suite_detail::from_result("theorem1.functoriality", functoriality_check(phi, rank));
    });
    return out;
}

inline Records permutahedron_suite(const SuiteConfig& cfg)
{
    Records out;
    for (int n = 1; n <= cfg.n_cap; ++n) {
        suite_detail::timed(out, [&] {
            auto rep = verify_permutahedron(n, contraction(n));
            auto rec = suite_detail::from_flag("permutahedron.n" + std::to_string(n), rep.pass(), rep.first_failure);
            if (rep.pass()) {
                rec.detail = "homology " + suite_detail::dims_string(rep.homology);
            }
            return rec;
        });
    }
    return out;
}

inline Records tableaux_suite(const SuiteConfig& cfg)
{
    Records out;
    for (int n = 1; n <= cfg.n_cap; ++n) {
        const std::string tag = ".n" + std::to_string(n);
        suite_detail::timed(out, [&] {
            bool ok = true;
            std::string why;
            for (const auto& b : tableau_bijection(n)) {
                if (!b.bijective || b.pairs != b.semistandard) {
                    ok = false;
                    why = "shape " + tableau_to_string({b.shape});
                    break;
                }
            }
            return suite_detail::from_flag("tableaux.bijection" + tag, ok, why);
        });
        suite_detail::timed(out, [&] {
            long count = 0;
            for (const auto& lambda : partitions(n)) {
                for (const auto& t : standard_tableaux(lambda)) {
                    ++count;
                    auto rep = verify_tcomplex(TComplex(t));
                    if (!rep.pass()) {
                        auto rec = suite_detail::from_flag("tableaux.complex" + tag, false, rep.failure);
                        rec.counterexample = tableau_to_string(t);
                        return rec;
                    }
                }
            }
            auto rec = suite_detail::from_flag("tableaux.complex" + tag, true);
            rec.checked = count;
            return rec;
        });
        for (const ParityDims X : {ParityDims{2, 0}, ParityDims{1, 1}}) {
            const std::string name =
                "tableaux.decomposition" + tag + ".dim" + std::to_string(X.even) + "|" + std::to_string(X.odd);
            suite_detail::timed(out, [&] {
                auto rep = decomposition_dims(n, X);
                return suite_detail::from_flag(name, rep.pass(), rep.failure);
            });
        }
    }
    return out;
}

/// Twisting cochain, Koszul acyclicity (exact for odd-concentrated L, reported
/// as a window otherwise) and the module round trips.
inline Records bgg_suite(const AInftyStructure& A, const std::vector<std::pair<std::string, const LInftyModule*>>& modules)
{
    Records out;
    const auto& L = A.algebra();
    suite_detail::timed(out, [&] {
        return suite_detail::from_result("bgg.twisting_cochain", twisted_cochain_check(A, A.weight_cap()));
    });
    if (L.is_dg_lie()) {
        suite_detail::timed(out, [&] {
            return suite_detail::from_result("bgg.omega_to_u", omega_to_u_check(A, std::min(4, A.weight_cap())));
        });
    }
    suite_detail::timed(out, [&] {
        auto rep = twisted_tensor_acyclicity(A, A.weight_cap());
        auto rec = suite_detail::from_flag("bgg.acyclicity", rep.pass(),
                                           "homology " + suite_detail::dims_string(rep.homology)
                                               + (rep.exact ? "" : " (window, weight <= "
                                                                       + std::to_string(rep.weight_cap) + ")"));
        return rec;
    });
    for (const auto& [label, mod] : modules) {
        const std::string tag = "bgg." + label;
        suite_detail::timed(out, [&] {
            return suite_detail::from_result(tag + ".valid", check_module(*mod, A.weight_cap()));
        });
        if (out.back().status == Status::fail) {
            continue;
        }
        suite_detail::timed(out, [&] {
            return suite_detail::from_result(tag + ".G_valid", functor_G(*mod, A).check());
        });
        suite_detail::timed(out, [&] {
            return suite_detail::from_result(tag + ".FG", roundtrip_FG(*mod, A, A.weight_cap()));
        });
        suite_detail::timed(out, [&] {
            return suite_detail::from_result(tag + ".GF", roundtrip_GF(functor_G(*mod, A)));
        });
    }
    return out;
}

} // namespace uenv
