#pragma once

#include "uenv/bgg.hpp"
#include "uenv/linfty.hpp"
#include "uenv/tableaux.hpp"

#include <json.hpp>

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace uenv {

using json = nlohmann::ordered_json;

/// Malformed input (distinct from failing checks).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace io {

inline Scalar coeff_of(const json& j)
{
    if (j.is_string()) {
        try {
            return parse_scalar(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (j.is_number_integer()) {
        return Scalar(j.get<long>());
    }
    throw ParseError("coefficient must be a \"p/q\" string or an integer");
}

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline int id_index(const GradedSpace& space, const json& id)
{
    if (!id.is_string()) {
        throw ParseError("generator ids must be strings");
    }
    auto i = space.find(id.get<std::string>());
    if (!i) {
        throw ParseError("unknown generator '" + id.get<std::string>() + "'");
    }
    return *i;
}

inline std::vector<int> id_list(const GradedSpace& space, const json& ids)
{
    if (!ids.is_array()) {
        throw ParseError("expected an array of generator ids");
    }
    std::vector<int> out;
    for (const auto& id : ids) {
        out.push_back(id_index(space, id));
    }
    return out;
}

inline GradedSpace space_of(const json& gens)
{
    if (!gens.is_array()) {
        throw ParseError("'generators' must be an array");
    }
    std::vector<Generator> out;
    for (const auto& g : gens) {
        const auto& deg = field(g, "degree");
        if (!deg.is_number_integer()) {
            throw ParseError("generator degree must be an integer");
        }
        out.push_back({field(g, "id").get<std::string>(), deg.get<int>()});
    }
    try {
        return GradedSpace(out);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

/// [{"coeff","monomial":[id]}] -> linear combination of generators.
inline LinComb<int> linear_value(const GradedSpace& space, const json& value)
{
    if (!value.is_array()) {
        throw ParseError("'value' must be an array");
    }
    LinComb<int> out;
    for (const auto& term : value) {
        auto mon = id_list(space, field(term, "monomial"));
        if (mon.size() != 1) {
            throw ParseError("bracket and component outputs are single generators");
        }
        out.add(mon[0], coeff_of(field(term, "coeff")));
    }
    return out;
}

inline void require_sorted(const std::vector<int>& inputs, const GradedSpace& space)
{
    for (std::size_t i = 1; i < inputs.size(); ++i) {
        if (inputs[i - 1] > inputs[i]) {
            throw ParseError("inputs must be listed in canonical order (got '" + space.id(inputs[i - 1]) + "' before '"
                             + space.id(inputs[i]) + "')");
        }
    }
}

inline int arity_of(const json& entry, std::size_t n_inputs)
{
    const auto& a = field(entry, "arity");
    if (!a.is_number_integer() || a.get<int>() != static_cast<int>(n_inputs)) {
        throw ParseError("'arity' does not match the number of inputs");
    }
    return a.get<int>();
}

} // namespace io

inline LInftyAlgebra algebra_from_json(const json& j)
{
    if (j.contains("complete_intersection")) {
        const auto& ci = j.at("complete_intersection");
        std::vector<std::string> vars;
        for (const auto& v : io::field(ci, "variables")) {
            vars.push_back(v.get<std::string>());
        }
        std::vector<Generator> vgens;
        for (const auto& v : vars) {
            vgens.push_back({v, 0});
        }
        GradedSpace vspace(vgens);
        std::vector<Polynomial> polys;
        for (const auto& p : io::field(ci, "polynomials")) {
            Polynomial poly;
            for (const auto& term : p) {
                poly[io::id_list(vspace, io::field(term, "monomial"))] += io::coeff_of(io::field(term, "coeff"));
            }
            polys.push_back(std::move(poly));
        }
        auto norm = DerivativeNormalization::partial;
        if (ci.contains("normalization")) {
            const auto s = ci.at("normalization").get<std::string>();
            if (s == "divided_power") {
                norm = DerivativeNormalization::divided_power;
            } else if (s != "partial") {
                throw ParseError("normalization must be 'partial' or 'divided_power'");
            }
        }
        try {
            return from_complete_intersection(vars, polys, norm);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    LInftyAlgebra L(io::space_of(io::field(j, "generators")));
    if (j.contains("brackets")) {
        for (const auto& br : j.at("brackets")) {
            auto inputs = io::id_list(L.basis(), io::field(br, "inputs"));
            io::arity_of(br, inputs.size());
            io::require_sorted(inputs, L.basis());
            try {
                L.set_bracket(inputs, io::linear_value(L.basis(), io::field(br, "value")));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what());
            }
        }
    }
    return L;
}

inline json parse_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline LInftyAlgebra load_algebra(const std::string& path)
{
    try {
        return algebra_from_json(parse_json_file(path));
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

inline json value_to_json(const GradedSpace& space, const LinComb<Mono>& v)
{
    json out = json::array();
    for (const auto& [m, c] : v) {
        json mon = json::array();
        for (int g : m) {
            mon.push_back(space.id(g));
        }
        out.push_back({{"coeff", format_scalar(c)}, {"monomial", mon}});
    }
    return out;
}

inline json algebra_to_json(const LInftyAlgebra& L)
{
    json gens = json::array();
    for (const auto& g : L.basis().generators()) {
        gens.push_back({{"id", g.id}, {"degree", g.degree}});
    }
    json brs = json::array();
    for (const auto& [k, table] : L.brackets()) {
        for (const auto& [word, v] : table) {
            json ins = json::array();
            LinComb<Mono> out;
            for (int g : word) {
                ins.push_back(L.basis().id(g));
            }
            for (const auto& [g, c] : v) {
                out.add(Mono{g}, c);
            }
            brs.push_back({{"arity", k}, {"inputs", ins}, {"value", value_to_json(L.basis(), out)}});
        }
    }
    return {{"generators", gens}, {"brackets", brs}};
}

/// Product tables {"arity", "inputs":[words], "output":[{"coeff","monomial"}]}.
inline json products_to_json(const AInftyStructure& A)
{
    const auto& space = A.algebra().basis();
    json out = json::array();
    for (int n = 1; n <= A.arity_cap(); ++n) {
        for (const auto& [xs, v] : A.table(n)) {
            json ins = json::array();
            for (const auto& x : xs) {
                json w = json::array();
                for (int g : x) {
                    w.push_back(space.id(g));
                }
                ins.push_back(w);
            }
            out.push_back({{"arity", n}, {"inputs", ins}, {"output", value_to_json(space, v)}});
        }
    }
    return out;
}

/// Source and target own their storage; the morphism points into them.
struct MorphismBundle {
    std::shared_ptr<LInftyAlgebra> source;
    std::shared_ptr<LInftyAlgebra> target;
    std::shared_ptr<LInftyMorphism> phi;
};

/// {"source": algebra, "target": algebra, "components":[{"arity","inputs","value"}]}
inline MorphismBundle morphism_from_json(const json& j)
{
    MorphismBundle b;
    b.source = std::make_shared<LInftyAlgebra>(algebra_from_json(io::field(j, "source")));
    b.target = std::make_shared<LInftyAlgebra>(algebra_from_json(io::field(j, "target")));
    b.phi = std::make_shared<LInftyMorphism>(*b.source, *b.target);
    for (const auto& c : io::field(j, "components")) {
        auto inputs = io::id_list(b.source->basis(), io::field(c, "inputs"));
        io::arity_of(c, inputs.size());
        io::require_sorted(inputs, b.source->basis());
        try {
            b.phi->set_component(inputs, io::linear_value(b.target->basis(), io::field(c, "value")));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    return b;
}

struct ModuleBundle {
    std::shared_ptr<LInftyAlgebra> algebra;
    std::shared_ptr<LInftyModule> module;
};

/// Algebra JSON plus {"module":{"generators":[...], "actions":[{"arity","inputs",
/// "module_input","value":[{"coeff","monomial":[module id]}]}]}}; "arity"
/// counts the L-inputs.
inline ModuleBundle module_from_json(const json& j)
{
    ModuleBundle b;
    b.algebra = std::make_shared<LInftyAlgebra>(algebra_from_json(j));
    const auto& mj = io::field(j, "module");
    auto space = io::space_of(io::field(mj, "generators"));
    b.module = std::make_shared<LInftyModule>(*b.algebra, space);
    std::map<std::vector<int>, Operator> actions;
    if (mj.contains("actions")) {
        for (const auto& a : mj.at("actions")) {
            auto inputs = io::id_list(b.algebra->basis(), io::field(a, "inputs"));
            io::arity_of(a, inputs.size());
            io::require_sorted(inputs, b.algebra->basis());
            const int col = io::id_index(space, io::field(a, "module_input"));
            auto& op = actions[inputs];
            for (const auto& term : io::field(a, "value")) {
                auto mon = io::id_list(space, io::field(term, "monomial"));
                if (mon.size() != 1) {
                    throw ParseError("module action outputs are single module generators");
                }
                op.add({mon[0], col}, io::coeff_of(io::field(term, "coeff")));
            }
        }
    }
    for (const auto& [inputs, op] : actions) {
        try {
            b.module->set_action(inputs, op);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    return b;
}

inline json tableau_to_json(const Tableau& t)
{
    json out = json::array();
    for (const auto& r : t) {
        out.push_back(r);
    }
    return out;
}

inline json face_to_json(const Face& f)
{
    json out = json::array();
    for (const auto& block : f) {
        json b = json::array();
        for (int v : block) {
            b.push_back(v);
        }
        out.push_back(b);
    }
    return out;
}

} // namespace uenv
