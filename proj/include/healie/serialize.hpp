#pragma once

#include <string>

#include "json.hpp"

#include "healie/repr.hpp"
#include "healie/structure.hpp"
#include "healie/tau.hpp"

namespace healie {

using nlohmann::json;

// Exactness survives serialization: integers that fit in 64 bits are emitted
// as JSON numbers, anything larger as decimal strings; both are accepted on
// input.

inline json int_to_json(const mpz_class& z)
{
    if (fits_int64(z))
        return json(static_cast<std::int64_t>(z.get_si()));
    return json(z.get_str());
}

inline mpz_class int_from_json(const json& j)
{
    if (j.is_number_integer())
        return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string())
        return mpz_class(j.get<std::string>());
    throw ConfigError("expected an integer (number or decimal string)");
}

inline json rational_to_json(const Rational& q)
{
    return json{int_to_json(q.get_num()), int_to_json(q.get_den())};
}

inline Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(int_from_json(j));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        Rational q;
        if (slash == std::string::npos)
            q = Rational(mpz_class(s));
        else
            q = Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
        q.canonicalize();
        return q;
    }
    if (j.is_array() && j.size() == 2) {
        Rational q(int_from_json(j[0]), int_from_json(j[1]));
        q.canonicalize();
        return q;
    }
    throw ConfigError("expected a rational ([p,q], integer, or \"p/q\")");
}

/// {"rational": [p, q]} or {"cyclotomic": [[e, p, q], ...]}; bare integers
/// and "p/q" strings are accepted as rationals on input.
inline json scalar_to_json(const CycScalar& s)
{
    if (s.is_rational()) {
        const Rational q = s.to_rational();
        return json{{"rational", rational_to_json(q)}};
    }
    json terms = json::array();
    for (const auto& [e, q] : s.coeffs())
        terms.push_back(json{json(e), int_to_json(q.get_num()), int_to_json(q.get_den())});
    return json{{"cyclotomic", terms}};
}

inline CycScalar scalar_from_json(const json& j, const FieldPtr& f)
{
    if (j.is_number_integer() || j.is_string() || j.is_array())
        return CycScalar::from_rational(f, rational_from_json(j));
    if (j.is_object() && j.contains("rational"))
        return CycScalar::from_rational(f, rational_from_json(j.at("rational")));
    if (j.is_object() && j.contains("cyclotomic")) {
        CycScalar s = CycScalar::zero(f);
        for (const auto& term : j.at("cyclotomic")) {
            if (!term.is_array() || term.size() != 3)
                throw ConfigError("cyclotomic term must be [e, p, q]");
            const long e = static_cast<long>(int_from_json(term[0]).get_si());
            Rational q(int_from_json(term[1]), int_from_json(term[2]));
            q.canonicalize();
            s = s + CycScalar::zeta_pow(f, e) * q;
        }
        return s;
    }
    throw ConfigError("unrecognized scalar encoding: " + j.dump());
}

inline json degree_to_json(const LatticeVector& r)
{
    json a = json::array();
    for (int i = 0; i < r.size(); ++i)
        a.push_back(r[i]);
    return a;
}

inline LatticeVector degree_from_json(const json& j)
{
    std::vector<long> v;
    for (const auto& x : j)
        v.push_back(static_cast<long>(int_from_json(x).get_si()));
    return LatticeVector(std::move(v));
}

inline json scalar_vector_to_json(const std::vector<CycScalar>& u)
{
    json a = json::array();
    for (const auto& c : u)
        a.push_back(scalar_to_json(c));
    return a;
}

inline std::vector<CycScalar> scalar_vector_from_json(const json& j, const FieldPtr& f)
{
    std::vector<CycScalar> u;
    for (const auto& x : j)
        u.push_back(scalar_from_json(x, f));
    return u;
}

inline json gelement_to_json(const TauAlgebra& alg, const GElement& x)
{
    json o = json::object();
    for (const auto& [i, q] : x.coeffs())
        o[alg.lie().label(i)] = scalar_to_json(q);
    return o;
}

inline GElement gelement_from_json(const TauAlgebra& alg, const json& j)
{
    GElement x;
    for (auto it = j.begin(); it != j.end(); ++it)
        x.add_term(alg.lie().index_of(it.key()), scalar_from_json(it.value(), alg.field()));
    return x;
}

inline json element_to_json(const TauAlgebra& alg, const TauElement& e)
{
    json o = json::object();
    if (!e.loop_part().empty()) {
        json arr = json::array();
        for (const auto& [r, x] : e.loop_part())
            arr.push_back(json{{"degree", degree_to_json(r)},
                               {"coeffs", gelement_to_json(alg, x)}});
        o["loop"] = arr;
    }
    if (!e.central0().empty())
        o["central0"] = scalar_vector_to_json(e.central0());
    if (!e.central_part().empty()) {
        json arr = json::array();
        for (const auto& [r, c] : e.central_part())
            arr.push_back(json{{"degree", degree_to_json(r)}, {"coeff", scalar_to_json(c)}});
        o["central"] = arr;
    }
    if (!e.deriv0().empty())
        o["deriv0"] = scalar_vector_to_json(e.deriv0());
    if (!e.ham_part().empty()) {
        json arr = json::array();
        for (const auto& [r, c] : e.ham_part())
            arr.push_back(json{{"degree", degree_to_json(r)}, {"coeff", scalar_to_json(c)}});
        o["ham"] = arr;
    }
    return o;
}

inline TauElement element_from_json(const TauAlgebra& alg, const json& j)
{
    TauElement e;
    if (j.contains("loop"))
        for (const auto& t : j.at("loop")) {
            const LatticeVector r = degree_from_json(t.at("degree"));
            const GElement x = gelement_from_json(alg, t.at("coeffs"));
            e = e + TauElement::loop(alg, x, r);
        }
    if (j.contains("central0"))
        e = e + TauElement::central(alg, scalar_vector_from_json(j.at("central0"), alg.field()),
                                    LatticeVector::zero(alg.n()));
    if (j.contains("central"))
        for (const auto& t : j.at("central")) {
            const LatticeVector r = degree_from_json(t.at("degree"));
            TauElement b = TauElement::central_basis(alg, r);
            e = e + b * scalar_from_json(t.at("coeff"), alg.field());
        }
    if (j.contains("deriv0")) {
        TauElement d = TauElement::derivation(
            alg, scalar_vector_from_json(j.at("deriv0"), alg.field()));
        e = e + d;
    }
    if (j.contains("ham"))
        for (const auto& t : j.at("ham")) {
            const LatticeVector r = degree_from_json(t.at("degree"));
            e = e + TauElement::hamiltonian(alg, r) *
                        scalar_from_json(t.at("coeff"), alg.field());
        }
    return e;
}

/// Carrier elements serialize with explicit general central/derivation
/// vectors; they are output-only (twisted images need not re-embed in tau).
inline json ft_element_to_json(const TauAlgebra& alg, const FtElement& e)
{
    json o = json::object();
    if (!e.loop_part().empty()) {
        json arr = json::array();
        for (const auto& [r, x] : e.loop_part())
            arr.push_back(json{{"degree", degree_to_json(r)},
                               {"coeffs", gelement_to_json(alg, x)}});
        o["loop"] = arr;
    }
    if (!e.central_part().empty()) {
        json arr = json::array();
        for (const auto& [r, u] : e.central_part())
            arr.push_back(json{{"degree", degree_to_json(r)}, {"u", scalar_vector_to_json(u)}});
        o["central_general"] = arr;
    }
    if (!e.deriv_part().empty()) {
        json arr = json::array();
        for (const auto& [r, u] : e.deriv_part())
            arr.push_back(json{{"degree", degree_to_json(r)}, {"u", scalar_vector_to_json(u)}});
        o["deriv_general"] = arr;
    }
    return o;
}

inline json weight_to_json(const Weight& w)
{
    return json{{"h", scalar_vector_to_json(w.h)},
                {"K", scalar_vector_to_json(w.K)},
                {"d", scalar_vector_to_json(w.d)}};
}

inline Weight weight_from_json(const TauAlgebra& alg, const json& j)
{
    Weight w = Weight::zero(alg);
    w.h = scalar_vector_from_json(j.at("h"), alg.field());
    w.K = scalar_vector_from_json(j.at("K"), alg.field());
    w.d = scalar_vector_from_json(j.at("d"), alg.field());
    if (static_cast<int>(w.h.size()) != alg.lie().cartan_dim() ||
        static_cast<int>(w.K.size()) != alg.n() || static_cast<int>(w.d.size()) != alg.n())
        throw ConfigError("weight: component lengths do not match the Cartan " +
                          std::to_string(alg.lie().cartan_dim()) + "+" +
                          std::to_string(alg.n()) + "+" + std::to_string(alg.n()));
    return w;
}

inline json root_to_json(const RootDatum& b)
{
    json alpha = json::array();
    for (const auto& q : b.alpha)
        alpha.push_back(rational_to_json(q));
    return json{{"alpha", alpha}, {"degree", degree_to_json(b.degree)}};
}

inline json jet_vector_to_json(const JetModuleVector& v)
{
    json terms = json::array();
    for (const auto& [deg, w] : v.components())
        terms.push_back(json{{"degree", degree_to_json(deg)}, {"vector", scalar_vector_to_json(w)}});
    return json{{"alpha", scalar_vector_to_json(v.alpha())},
                {"beta", scalar_vector_to_json(v.beta())},
                {"terms", terms}};
}

} // namespace healie
