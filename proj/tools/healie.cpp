// healie: command-line front end.
//
//   healie {bracket|check|dims|canon|reflect|twist|act} -c CONFIG [flags]
//
// Exit codes: 0 success / all checks pass, 1 check or validation failure,
// 2 usage or expression-parse error. HEALIE_SEED supplies the default seed.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "healie/healie.hpp"

namespace {

using namespace healie;

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("HEALIE_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

/// Parse an element expression; on failure print the caret diagnostic and
/// exit with the usage/parse code 2.
TauElement parse_or_exit(const TauAlgebra& alg, const std::string& src)
{
    try {
        return parse_element(alg, src);
    } catch (const ParseError& e) {
        std::cerr << "parse error:\n" << caret_diagnostic(src, e) << "\n";
        std::exit(2);
    }
}

std::vector<long> parse_long_list(const std::string& s)
{
    std::vector<long> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        v.push_back(std::stol(tok));
    return v;
}

LatticeVector parse_degree(const std::string& s) { return LatticeVector(parse_long_list(s)); }

std::vector<std::vector<long>> parse_matrix(const std::string& s)
{
    std::vector<std::vector<long>> rows;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';'))
        rows.push_back(parse_long_list(row));
    return rows;
}

void emit(bool as_json, const json& payload, const std::string& text)
{
    if (as_json)
        std::cout << payload.dump() << "\n";
    else
        std::cout << text << "\n";
}

int cmd_bracket(const TauAlgebra& alg, const std::string& ea, const std::string& eb,
                bool as_json)
{
    const TauElement a = parse_or_exit(alg, ea);
    const TauElement b = parse_or_exit(alg, eb);
    const TauElement r = tau_bracket(alg, a, b);
    const json j = element_to_json(alg, r);
    emit(as_json, json{{"bracket", j}}, j.dump());
    return 0;
}

int cmd_canon(const TauAlgebra& alg, const std::string& expr, bool as_json)
{
    const TauElement a = parse_or_exit(alg, expr);
    const json j = element_to_json(alg, a);
    emit(as_json, json{{"element", j}}, j.dump());
    return 0;
}

int cmd_check(const TauAlgebra& alg, const std::string& suite, long samples,
              std::uint64_t seed, bool as_json)
{
    const auto reports = run_suites(alg, suite, samples, seed);
    bool all_pass = true;
    for (const auto& rep : reports) {
        emit(as_json, rep.to_json(), rep.line());
        all_pass = all_pass && rep.pass();
    }
    return all_pass ? 0 : 1;
}

int cmd_dims(const TauAlgebra& alg, const std::string& degrees, bool as_json)
{
    std::stringstream ss(degrees);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        const LatticeVector r = parse_degree(tok);
        json row{{"degree", degree_to_json(r)}};
        std::string text;
        if (r.size() != alg.n()) {
            row["error"] = "degree has wrong length";
            text = r.str() + "  error: degree has wrong length";
        } else {
            const int loop_dim = alg.eigenspaces().dim(alg.lattice().residue_class(r));
            row["loop_dim"] = loop_dim;
            text = r.str() + "  loop_dim=" + std::to_string(loop_dim);
            if (alg.lattice().in_gamma_bar(r)) {
                const int central_dim = central_quotient_dim_oracle(alg, r);
                row["central_dim"] = central_dim;
                text += "  central_dim=" + std::to_string(central_dim);
            } else {
                row["central_dim_error"] = "degree is not in GammaBar";
                text += "  central_dim: error (degree is not in GammaBar)";
            }
        }
        emit(as_json, row, text);
    }
    return 0;
}

int cmd_reflect(const TauAlgebra& alg, const std::string& gamma_expr,
                const std::string& weight_json, bool as_json)
{
    const TauElement g = parse_or_exit(alg, gamma_expr);
    const RootDatum gamma = root_of(alg, g);
    const Weight lambda = weight_from_json(alg, json::parse(weight_json));
    const Weight out = reflect(alg, gamma, lambda);
    const json j = weight_to_json(out);
    emit(as_json, json{{"weight", j}}, j.dump());
    return 0;
}

int cmd_twist(const TauAlgebra& alg, const std::string& matrix, const std::string& expr,
              bool as_json)
{
    const TwistMatrix B(parse_matrix(matrix));
    const TauElement a = parse_or_exit(alg, expr);
    const FtElement image = twist(alg, B, FtElement::embed(alg, a));
    json j;
    bool representable = true;
    try {
        const TauElement t = ft_to_tau(alg, image);
        j = element_to_json(alg, t);
    } catch (const std::domain_error&) {
        representable = false;
        j = ft_element_to_json(alg, image);
        j["carrier"] = true;
    }
    emit(as_json, json{{"twist", j}, {"representable", representable}}, j.dump());
    return 0;
}

int cmd_act(const TauAlgebra& alg, const std::string& module, const std::string& gen,
            const std::string& gen_u, const std::string& kdeg, int windex,
            const std::string& alpha, const std::string& beta, bool hprime,
            const std::string& zeta, bool as_json)
{
    const auto& lat = alg.lattice();
    const auto& f = alg.field();
    const SpModule W(module == "trivial" ? SpModule::Kind::Trivial : SpModule::Kind::Natural,
                     lat);
    auto field_vec = [&](const std::string& s) {
        std::vector<CycScalar> v;
        if (s.empty())
            return std::vector<CycScalar>(static_cast<std::size_t>(alg.n()), alg.zero());
        for (long x : parse_long_list(s))
            v.push_back(alg.scalar(x));
        return v;
    };
    if (windex < 0 || windex >= W.dim())
        throw ConfigError("--w index out of range for the chosen module");

    if (hprime) {
        const LatticeVector r = parse_degree(gen);
        const auto out = hprime_action(lat, W, r, field_vec(zeta), W.basis_vector(windex, f), f);
        const json j{{"vector", scalar_vector_to_json(out)}};
        emit(as_json, j, j.dump());
        return 0;
    }

    JetGenerator g = JetGenerator::monomial(LatticeVector::zero(alg.n()));
    if (!gen_u.empty()) {
        g = JetGenerator::degree_zero(field_vec(gen_u));
    } else if (!gen.empty()) {
        if (gen[0] == 't')
            g = JetGenerator::monomial(parse_degree(gen.substr(1)));
        else
            g = JetGenerator::hamiltonian(parse_degree(gen));
    } else {
        throw ConfigError("act: supply --gen or --gen-u");
    }
    JetModuleVector v(field_vec(alpha), field_vec(beta));
    const LatticeVector k =
        kdeg.empty() ? LatticeVector::zero(alg.n()) : parse_degree(kdeg);
    v.add(k, W.basis_vector(windex, f));
    const JetModuleVector out = jet_action(lat, W, g, v, f);
    const json j = jet_vector_to_json(out);
    emit(as_json, j, j.dump());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact structure computations for twisted Hamiltonian EALAs"};
    app.require_subcommand(1);
    bool as_json = false;

    std::string config, expr_a, expr_b, suite = "all", degrees, gamma_expr, weight_json;
    std::string matrix, module = "natural", gen, gen_u, kdeg, alpha, beta, zeta;
    long samples = 0;
    std::uint64_t seed = default_seed();
    int windex = 0;
    bool hprime = false;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config,
                        "config file or built-in name "
                        "(sl2_untwisted|sl2_twisted|sl3_twisted)")
            ->required();
        sub->add_flag("--json", as_json, "line-delimited JSON output");
    };

    auto* bracket = app.add_subcommand("bracket", "canonicalized bracket of two elements");
    add_config(bracket);
    bracket->add_option("a", expr_a, "first element expression")->required();
    bracket->add_option("b", expr_b, "second element expression")->required();

    auto* check = app.add_subcommand("check", "run an invariant suite");
    add_config(check);
    check->add_option("--suite", suite, "jacobi|form|ideal|triangular|twist|modules|all");
    check->add_option("-n,--samples", samples, "sample count (0 = per-suite default)");
    check->add_option("--seed", seed, "RNG seed (default: HEALIE_SEED or 0)");

    auto* dims = app.add_subcommand("dims", "graded dimensions of eigenspaces and Z/K(m)");
    add_config(dims);
    dims->add_option("--degrees", degrees, "semicolon-separated degree tuples")->required();

    auto* canon = app.add_subcommand("canon", "parse and canonicalize an element");
    add_config(canon);
    canon->add_option("expr", expr_a, "element expression")->required();

    auto* refl = app.add_subcommand("reflect", "reflect a weight in a real root");
    add_config(refl);
    refl->add_option("--gamma", gamma_expr, "homogeneous element spanning the root space")
        ->required();
    refl->add_option("--weight", weight_json, "weight as JSON {h:[],K:[],d:[]}")->required();

    auto* tw = app.add_subcommand("twist", "apply a GL(n,Z) twist to an element");
    add_config(tw);
    tw->add_option("--matrix", matrix, "integer matrix, rows separated by ';'")->required();
    tw->add_option("expr", expr_a, "element expression")->required();

    auto* act = app.add_subcommand("act", "module actions (jet module / H'_n shift action)");
    add_config(act);
    act->add_option("--W", module, "trivial|natural");
    act->add_option("--gen", gen, "generator: degree tuple (Hamiltonian) or t<degree>");
    act->add_option("--gen-u", gen_u, "degree-zero derivation coefficients");
    act->add_option("--k", kdeg, "monomial degree of the input vector");
    act->add_option("--w", windex, "basis index of the W component");
    act->add_option("--alpha", alpha, "alpha shift parameters");
    act->add_option("--beta", beta, "beta shift parameters");
    act->add_flag("--hprime", hprime, "apply the shifted H'_n action instead of the jet action");
    act->add_option("--zeta", zeta, "zeta shift for --hprime");

    CLI11_PARSE(app, argc, argv);

    try {
        const AlgebraPtr alg = healie::load_config_arg(config);
        if (bracket->parsed())
            return cmd_bracket(*alg, expr_a, expr_b, as_json);
        if (check->parsed())
            return cmd_check(*alg, suite, samples, seed, as_json);
        if (dims->parsed())
            return cmd_dims(*alg, degrees, as_json);
        if (canon->parsed())
            return cmd_canon(*alg, expr_a, as_json);
        if (refl->parsed())
            return cmd_reflect(*alg, gamma_expr, weight_json, as_json);
        if (tw->parsed())
            return cmd_twist(*alg, matrix, expr_a, as_json);
        if (act->parsed())
            return cmd_act(*alg, module, gen, gen_u, kdeg, windex, alpha, beta, hprime, zeta,
                           as_json);
    } catch (const healie::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
