// uenv: load L-infinity algebras, compute transferred products, run the
// verification suites. Exit codes: 0 all checks pass, 1 a check failed,
// 2 malformed input or usage, 3 internal invariant violated.

#include "uenv/json_io.hpp"
#include "uenv/suites.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

using namespace uenv;

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    std::string suite = "all";
    std::string format = "text";
    SuiteConfig caps;
    int dim_even = 2;
    int dim_odd = 0;
    bool timing = false;
};

const std::vector<std::string> kSuites = {"stasheff", "pbw",      "alt",           "involution", "coproduct", "morphism",
                                          "truncation", "theorem1", "permutahedron", "tableaux",   "bgg",       "all"};

struct Report {
    Records records;
    json payload = json::object();
};

json config_echo(const RunConfig& c)
{
    json j;
    j["command"] = c.command;
    if (!c.input.empty()) {
        j["input"] = c.input;
    }
    if (c.command == "check") {
        j["suite"] = c.suite;
    }
    j["arity_cap"] = c.caps.arity_cap;
    j["weight_cap"] = c.caps.weight_cap;
    j["n_cap"] = c.caps.n_cap;
    if (c.command == "tableaux") {
        j["dim_even"] = c.dim_even;
        j["dim_odd"] = c.dim_odd;
    }
    return j;
}

json records_json(const Records& rs, bool timing)
{
    json out = json::array();
    for (const auto& r : rs) {
        json j;
        j["name"] = r.name;
        j["status"] = status_name(r.status);
        j["checked"] = r.checked;
        if (!r.counterexample.empty()) {
            j["counterexample"] = r.counterexample;
        }
        if (!r.detail.empty()) {
            j["detail"] = r.detail;
        }
        if (timing) {
            j["seconds"] = r.seconds;
        }
        out.push_back(std::move(j));
    }
    return out;
}

void print_text(const RunConfig& cfg, const Report& rep, int code)
{
    std::cout << "command: " << cfg.command;
    if (!cfg.input.empty()) {
        std::cout << "  input: " << cfg.input;
    }
    std::cout << "  caps: arity " << cfg.caps.arity_cap << ", weight " << cfg.caps.weight_cap << ", n "
              << cfg.caps.n_cap << "\n";
    for (const auto& r : rep.records) {
        std::cout << std::left << std::setw(40) << r.name << " " << status_name(r.status);
        if (r.checked > 0) {
            std::cout << "  (" << r.checked << " checked)";
        }
        std::cout << "  " << std::fixed << std::setprecision(3) << r.seconds << "s\n";
        if (!r.counterexample.empty()) {
            std::cout << "    counterexample: " << r.counterexample << "\n";
        }
        if (!r.detail.empty()) {
            std::cout << "    " << r.detail << "\n";
        }
    }
    if (!rep.payload.empty()) {
        std::cout << rep.payload.dump(2) << "\n";
    }
    std::cout << "status: " << (code == 0 ? "pass" : "fail") << "\n";
}

bool has_key(const json& j, const char* k) { return j.is_object() && j.contains(k); }

std::vector<std::pair<std::string, const LInftyModule*>> modules_for(const LInftyAlgebra& L,
                                                                     std::vector<std::unique_ptr<LInftyModule>>& own,
                                                                     const LInftyModule* given)
{
    std::vector<std::pair<std::string, const LInftyModule*>> out;
    if (given) {
        out.emplace_back("module", given);
        return out;
    }
    own.push_back(std::make_unique<LInftyModule>(LInftyModule::trivial(L, GradedSpace({{"v", 0}}))));
    out.emplace_back("trivial", own.back().get());
    if (L.is_dg_lie()) {
        own.push_back(std::make_unique<LInftyModule>(LInftyModule::adjoint(L)));
        out.emplace_back("adjoint", own.back().get());
    }
    return out;
}

void append(Records& a, Records b)
{
    for (auto& r : b) {
        a.push_back(std::move(r));
    }
}

Report cmd_validate(const RunConfig& cfg)
{
    Report rep;
    const json j = parse_json_file(cfg.input);
    if (has_key(j, "source")) {
        auto b = morphism_from_json(j);
        rep.records.push_back(suite_detail::from_result("morphism", check_morphism(*b.phi, cfg.caps.weight_cap)));
        return rep;
    }
    if (has_key(j, "module")) {
        auto b = module_from_json(j);
        rep.records.push_back(suite_detail::from_result("linfty", check_linfty(*b.algebra, cfg.caps.weight_cap)));
        rep.records.push_back(suite_detail::from_result("module", check_module(*b.module, cfg.caps.weight_cap)));
        return rep;
    }
    const auto L = algebra_from_json(j);
    rep.records.push_back(suite_detail::from_result("linfty", check_linfty(L, cfg.caps.weight_cap)));
    return rep;
}

Report cmd_products(const RunConfig& cfg)
{
    Report rep;
    const auto L = algebra_from_json(parse_json_file(cfg.input));
    rep.records.push_back(suite_detail::from_result("linfty", check_linfty(L, cfg.caps.weight_cap)));
    if (rep.records.back().status == Status::fail) {
        return rep;
    }
    const auto A = compute_products(L, cfg.caps.arity_cap, cfg.caps.weight_cap);
    rep.payload["algebra"] = algebra_to_json(L);
    rep.payload["products"] = products_to_json(A);
    return rep;
}

json permutahedron_payload(int n)
{
    auto rep = verify_permutahedron(n, contraction(n));
    json faces = json::object();
    int total = 0;
    for (const auto& [d, c] : rep.face_counts) {
        faces[std::to_string(d)] = c;
        total += c;
    }
    json hom = json::array();
    for (int k = 0; k < n; ++k) {
        hom.push_back(rep.homology.count(-k) ? rep.homology.at(-k) : 0);
    }
    return {{"n", n}, {"faces", faces}, {"total", total}, {"homology", hom}};
}

Report cmd_permutahedron(const RunConfig& cfg)
{
    Report rep;
    rep.records = permutahedron_suite(cfg.caps);
    json list = json::array();
    for (int n = 1; n <= cfg.caps.n_cap; ++n) {
        list.push_back(permutahedron_payload(n));
    }
    rep.payload["permutahedra"] = list;
    return rep;
}

Report cmd_tableaux(const RunConfig& cfg)
{
    Report rep;
    const int n = cfg.caps.n_cap;
    const ParityDims X{cfg.dim_even, cfg.dim_odd};
    json shapes = json::array();
    for (const auto& lambda : partitions(n)) {
        json ts = json::array();
        for (const auto& t : standard_tableaux(lambda)) {
            ts.push_back({{"tableau", tableau_to_json(t)}, {"descents", descents(t)}});
        }
        shapes.push_back({{"shape", lambda}, {"schur_dimension", schur_dimension(lambda, X)}, {"tableaux", ts}});
    }
    auto dec = decomposition_dims(n, X);
    json rows = json::array();
    for (const auto& r : dec.rows) {
        rows.push_back({{"length", r.length}, {"cobar_dim", r.cobar_dim}, {"tableaux_dim", r.tableaux_dim}});
    }
    rep.records.push_back(suite_detail::from_flag("tableaux.decomposition", dec.pass(), dec.failure));
    json bij = json::array();
    bool bij_ok = true;
    for (const auto& b : tableau_bijection(n)) {
        bij_ok = bij_ok && b.bijective && b.pairs == b.semistandard;
        bij.push_back({{"shape", b.shape}, {"pairs", b.pairs}, {"column_semistandard", b.semistandard}});
    }
    rep.records.push_back(suite_detail::from_flag("tableaux.bijection", bij_ok));
    rep.payload = {{"n", n}, {"shapes", shapes}, {"decomposition", rows}, {"bijection", bij}};
    return rep;
}

Report cmd_check(const RunConfig& cfg)
{
    Report rep;
    const std::string& s = cfg.suite;
    const bool all = s == "all";
    if (s == "permutahedron" || all) {
        append(rep.records, permutahedron_suite(cfg.caps));
    }
    if (s == "tableaux" || all) {
        append(rep.records, tableaux_suite(cfg.caps));
    }
    if (s == "permutahedron" || s == "tableaux") {
        return rep;
    }
    if (cfg.input.empty()) {
        throw ParseError("suite '" + s + "' needs --input");
    }
    const json j = parse_json_file(cfg.input);
    if (has_key(j, "source")) {
        if (s != "morphism" && !all) {
            throw ParseError("a morphism file only supports the morphism suite");
        }
        auto b = morphism_from_json(j);
        append(rep.records, morphism_suite(*b.phi, cfg.caps));
        return rep;
    }
    if (s == "morphism") {
        throw ParseError("the morphism suite needs a file with 'source', 'target' and 'components'");
    }
    std::optional<ModuleBundle> mb;
    std::shared_ptr<LInftyAlgebra> L;
    if (has_key(j, "module")) {
        mb = module_from_json(j);
        L = mb->algebra;
    } else {
        L = std::make_shared<LInftyAlgebra>(algebra_from_json(j));
    }
    auto valid = suite_detail::from_result("linfty", check_linfty(*L, cfg.caps.weight_cap));
    rep.records.push_back(valid);
    if (valid.status == Status::fail) {
        return rep;
    }
    if (s == "theorem1" || all) {
        append(rep.records, theorem1_suite(*L, cfg.caps));
    }
    const auto A = compute_products(*L, cfg.caps.arity_cap, cfg.caps.weight_cap);
    if (s == "stasheff" || all) {
        append(rep.records, stasheff_suite(A));
    }
    if (s == "pbw" || all) {
        append(rep.records, pbw_suite(A));
    }
    if (s == "alt" || all) {
        append(rep.records, alt_suite(A));
    }
    if (s == "involution" || all) {
        append(rep.records, involution_suite(A));
    }
    if (s == "coproduct" || all) {
        append(rep.records, coproduct_suite(A));
    }
    if (s == "truncation" || all) {
        append(rep.records, truncation_suite(A));
    }
    if (s == "bgg" || all) {
        std::vector<std::unique_ptr<LInftyModule>> own;
        append(rep.records, bgg_suite(A, modules_for(*L, own, mb ? mb->module.get() : nullptr)));
    }
    return rep;
}

int emit(const RunConfig& cfg, const Report& rep)
{
    const int code = all_pass(rep.records) ? 0 : 1;
    if (cfg.format == "json") {
        json out;
        out["config"] = config_echo(cfg);
        out["checks"] = records_json(rep.records, cfg.timing);
        if (!rep.payload.empty()) {
            out["result"] = rep.payload;
        }
        out["status"] = code == 0 ? "pass" : "fail";
        out["exit"] = code;
        std::cout << out.dump(2) << "\n";
    } else {
        print_text(cfg, rep, code);
    }
    return code;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_input)
{
    auto* in = sub->add_option("--input,-i", cfg.input, "JSON input file");
    if (needs_input) {
        in->required();
    }
    sub->add_option("--arity-cap", cfg.caps.arity_cap, "largest product arity")->check(CLI::PositiveNumber);
    sub->add_option("--weight-cap", cfg.caps.weight_cap, "largest total Sym weight")->check(CLI::PositiveNumber);
    sub->add_option("--n-cap", cfg.caps.n_cap, "largest n for permutahedra and tableaux")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--timing", cfg.timing, "include per-check wall time in JSON output");
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"Transferred A-infinity structures on Sym(L) and their verification suites"};
    app.require_subcommand(1);
    auto* validate = app.add_subcommand("validate", "check the generalized Jacobi identities of an input");
    add_common(validate, cfg, true);
    auto* products = app.add_subcommand("products", "compute and export the transferred products m_n");
    add_common(products, cfg, true);
    auto* check = app.add_subcommand("check", "run a verification suite");
    add_common(check, cfg, false);
    check->add_option("--suite", cfg.suite, "suite name")->check(CLI::IsMember(kSuites));
    auto* perm = app.add_subcommand("permutahedron", "face counts, homology and contraction of C(P_n), n <= n-cap");
    add_common(perm, cfg, false);
    auto* tab = app.add_subcommand("tableaux", "tableau decomposition tables for n = n-cap");
    add_common(tab, cfg, false);
    tab->add_option("--dim-even", cfg.dim_even, "even generators of sV")->check(CLI::NonNegativeNumber);
    tab->add_option("--dim-odd", cfg.dim_odd, "odd generators of sV")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Report rep;
        if (validate->parsed()) {
            cfg.command = "validate";
            rep = cmd_validate(cfg);
        } else if (products->parsed()) {
            cfg.command = "products";
            rep = cmd_products(cfg);
        } else if (check->parsed()) {
            cfg.command = "check";
            rep = cmd_check(cfg);
        } else if (perm->parsed()) {
            cfg.command = "permutahedron";
            rep = cmd_permutahedron(cfg);
        } else {
            cfg.command = "tableaux";
            rep = cmd_tableaux(cfg);
        }
        return emit(cfg, rep);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
