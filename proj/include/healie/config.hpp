#pragma once

#include <fstream>

#include "healie/serialize.hpp"

namespace healie {

/// Built-in session configurations, as the same JSON the file loader takes.
/// "sl2_untwisted": sl_2, n=2, m=(1,1).
/// "sl2_twisted":   sl_2, n=2, m=(2,1), sigma_1 the order-2 sign flip on e,f.
/// "sl3_twisted":   sl_3, n=4, m=(3,1,1,1), sigma_1 of order 3 (diagonal
///                  conjugation by (1, w, w^2)).
inline json builtin_config(const std::string& name)
{
    auto sl2_table = [](json& cfg) {
        cfg["basis"] = {"e", "f", "h"};
        cfg["brackets"] = {{"e,f", {{"h", 1}}},
                           {"h,e", {{"e", 2}}},
                           {"h,f", {{"f", -2}}}};
        cfg["form"] = {{"e,f", 1}, {"h,h", 2}};
        cfg["cartan"] = {"h"};
        cfg["simple_roots"] = {"e"};
        cfg["root_type"] = "A1";
    };
    auto sl3_table = [](json& cfg) {
        cfg["basis"] = {"e1", "e2", "e12", "f1", "f2", "f12", "h1", "h2"};
        cfg["brackets"] = {
            {"e1,e2", {{"e12", 1}}},   {"e1,f1", {{"h1", 1}}},
            {"e2,f2", {{"h2", 1}}},    {"e12,f12", {{"h1", 1}, {"h2", 1}}},
            {"e1,f12", {{"f2", -1}}},  {"e2,f12", {{"f1", 1}}},
            {"e12,f1", {{"e2", -1}}},  {"e12,f2", {{"e1", 1}}},
            {"f1,f2", {{"f12", -1}}},  {"h1,e1", {{"e1", 2}}},
            {"h1,e2", {{"e2", -1}}},   {"h1,e12", {{"e12", 1}}},
            {"h1,f1", {{"f1", -2}}},   {"h1,f2", {{"f2", 1}}},
            {"h1,f12", {{"f12", -1}}}, {"h2,e1", {{"e1", -1}}},
            {"h2,e2", {{"e2", 2}}},    {"h2,e12", {{"e12", 1}}},
            {"h2,f1", {{"f1", 1}}},    {"h2,f2", {{"f2", -2}}},
            {"h2,f12", {{"f12", -1}}}};
        cfg["form"] = {{"e1,f1", 1}, {"e2,f2", 1},  {"e12,f12", 1},
                       {"h1,h1", 2}, {"h2,h2", 2},  {"h1,h2", -1}};
        cfg["cartan"] = {"h1", "h2"};
        cfg["simple_roots"] = {"e1", "e2"};
        cfg["root_type"] = "A2";
    };

    json cfg;
    if (name == "sl2_untwisted") {
        cfg["type"] = "sl2";
        cfg["n"] = 2;
        cfg["m"] = {1, 1};
        sl2_table(cfg);
    } else if (name == "sl2_twisted") {
        cfg["type"] = "sl2";
        cfg["n"] = 2;
        cfg["m"] = {2, 1};
        sl2_table(cfg);
        cfg["automorphisms"] = json::array();
        cfg["automorphisms"].push_back(
            json{{"images", {{"e", {{"e", -1}}}, {"f", {{"f", -1}}}}}});
        cfg["automorphisms"].push_back(nullptr);
    } else if (name == "sl3_twisted") {
        cfg["type"] = "sl3";
        cfg["n"] = 4;
        cfg["m"] = {3, 1, 1, 1};
        sl3_table(cfg);
        // conjugation by diag(1, w, w^2): E_ij -> w^{i-j} E_ij with w = zeta_3
        const json w1 = json{{"cyclotomic", {{1, 1, 1}}}};  // w
        const json w2 = json{{"cyclotomic", {{2, 1, 1}}}};  // w^2
        cfg["automorphisms"] = json::array();
        cfg["automorphisms"].push_back(json{{"images",
                                             {{"e1", {{"e1", w2}}},
                                              {"e2", {{"e2", w2}}},
                                              {"e12", {{"e12", w1}}},
                                              {"f1", {{"f1", w1}}},
                                              {"f2", {{"f2", w1}}},
                                              {"f12", {{"f12", w2}}}}}});
        cfg["automorphisms"].push_back(nullptr);
        cfg["automorphisms"].push_back(nullptr);
        cfg["automorphisms"].push_back(nullptr);
    } else {
        throw ConfigError("unknown built-in configuration '" + name + "'");
    }
    return cfg;
}

inline bool is_builtin_config(const std::string& name)
{
    return name == "sl2_untwisted" || name == "sl2_twisted" || name == "sl3_twisted";
}

namespace detail {

inline std::pair<std::string, std::string> split_pair_key(const std::string& key)
{
    const auto comma = key.find(',');
    if (comma == std::string::npos)
        throw ConfigError("bracket/form key must be 'a,b', got '" + key + "'");
    return {key.substr(0, comma), key.substr(comma + 1)};
}

} // namespace detail

/// Build a session from its JSON description. The built-in tags fill in the
/// structure tables; "custom" requires them inline. Validation runs in full
/// unless skip_validation is set (a test hook for negative controls).
inline AlgebraPtr load_algebra(json cfg, bool skip_validation = false)
{
    if (!cfg.contains("m") || !cfg.at("m").is_array())
        throw ConfigError("config: missing automorphism orders 'm'");
    std::vector<long> m;
    for (const auto& x : cfg.at("m"))
        m.push_back(static_cast<long>(int_from_json(x).get_si()));
    if (cfg.contains("n") &&
        static_cast<long>(m.size()) != int_from_json(cfg.at("n")).get_si())
        throw ConfigError("config: n does not match the length of m");
    GradingLattice lattice(m);
    const FieldPtr field = CycField::get(lattice.field_order());

    // structure table: from the tag or inline
    if (cfg.contains("type") && !cfg.contains("basis")) {
        const std::string tag = cfg.at("type").get<std::string>();
        json base;
        if (tag == "sl2")
            base = builtin_config("sl2_untwisted");
        else if (tag == "sl3")
            base = builtin_config("sl3_twisted");
        else
            throw ConfigError("config: unknown type tag '" + tag +
                              "' without an inline structure table");
        for (const auto& key : {"basis", "brackets", "form", "cartan", "simple_roots",
                                "root_type"})
            cfg[key] = base.at(key);
    }

    SimpleLieAlgebra::Spec spec;
    spec.skip_validation = skip_validation;
    for (const auto& b : cfg.at("basis"))
        spec.labels.push_back(b.get<std::string>());
    for (auto it = cfg.at("brackets").begin(); it != cfg.at("brackets").end(); ++it) {
        const auto key = detail::split_pair_key(it.key());
        std::map<std::string, Rational> combo;
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
            combo[jt.key()] = rational_from_json(jt.value());
        spec.brackets[key] = combo;
    }
    for (auto it = cfg.at("form").begin(); it != cfg.at("form").end(); ++it)
        spec.form[detail::split_pair_key(it.key())] = rational_from_json(it.value());
    for (const auto& c : cfg.at("cartan"))
        spec.cartan.push_back(c.get<std::string>());
    if (cfg.contains("simple_roots"))
        for (const auto& s : cfg.at("simple_roots"))
            spec.simple_roots.push_back(s.get<std::string>());
    if (cfg.contains("root_type"))
        spec.root_type = cfg.at("root_type").get<std::string>();
    SimpleLieAlgebra lie(spec);

    // automorphisms: per slot, either null (identity) or an images map
    std::vector<AutomorphismSet::Matrix> mats;
    const int dim = lie.dim();
    for (int i = 0; i < lattice.n(); ++i) {
        AutomorphismSet::Matrix mat;
        for (int j = 0; j < dim; ++j)
            mat.push_back(GElement::basis(j, field));
        if (cfg.contains("automorphisms") && i < static_cast<int>(cfg.at("automorphisms").size())) {
            const json& a = cfg.at("automorphisms")[i];
            if (!a.is_null()) {
                if (!a.contains("images"))
                    throw ConfigError("config: automorphism entry needs an 'images' map");
                for (auto it = a.at("images").begin(); it != a.at("images").end(); ++it) {
                    GElement img;
                    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
                        img.add_term(lie.index_of(jt.key()),
                                     scalar_from_json(jt.value(), field));
                    mat[lie.index_of(it.key())] = img;
                }
            }
        }
        mats.push_back(std::move(mat));
    }
    AutomorphismSet auts(std::move(mats), m);

    long bound = 10000;
    if (cfg.contains("bound"))
        bound = static_cast<long>(int_from_json(cfg.at("bound")).get_si());
    auto alg = std::make_shared<const TauAlgebra>(std::move(lattice), std::move(lie),
                                                  std::move(auts), bound);

    // optional named elements shipped with the config: validated here so a
    // bad element fails at load, before any command runs
    if (cfg.contains("elements"))
        for (auto it = cfg.at("elements").begin(); it != cfg.at("elements").end(); ++it) {
            try {
                (void)element_from_json(*alg, it.value());
            } catch (const std::exception& e) {
                throw ConfigError("config element '" + it.key() + "': " + e.what());
            }
        }
    return alg;
}

/// Resolve -c CONFIG: a built-in name or a JSON file path.
inline AlgebraPtr load_config_arg(const std::string& arg)
{
    if (is_builtin_config(arg))
        return load_algebra(builtin_config(arg));
    std::ifstream in(arg);
    if (!in)
        throw ConfigError("cannot open config file '" + arg + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + arg + "' is not valid JSON: " + e.what());
    }
    return load_algebra(cfg);
}

} // namespace healie
