#pragma once

#include <functional>
#include <random>

#include "healie/config.hpp"
#include "healie/repr.hpp"
#include "healie/serialize.hpp"
#include "healie/structure.hpp"

namespace healie {

/// Outcome of one invariant suite. Deterministic for a fixed (config, seed).
struct CheckReport {
    std::string suite;
    long total = 0;
    long failed = 0;
    std::string first_failure;

    bool pass() const { return failed == 0; }

    std::string line() const
    {
        if (pass())
            return "PASS " + suite + " " + std::to_string(total) + "/" + std::to_string(total);
        return "FAIL " + suite + " " + std::to_string(total - failed) + "/" +
               std::to_string(total) + " first: " + first_failure;
    }

    json to_json() const
    {
        return json{{"suite", suite},
                    {"total", total},
                    {"failed", failed},
                    {"pass", pass()},
                    {"first_failure", first_failure}};
    }
};

/// Seeded random elements of tau, drawn across all three summands.
class ElementSampler {
public:
    ElementSampler(const TauAlgebra& alg, std::uint64_t seed) : alg_(alg), rng_(seed)
    {
        classes_ = alg.eigenspaces().nonempty_classes();
    }

    std::mt19937_64& rng() { return rng_; }

    long uniform(long lo, long hi)
    {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(rng_);
    }

    Rational random_rational()
    {
        const long num = uniform(-4, 4);
        const long den = uniform(1, 3);
        return rat(num, den);
    }

    std::vector<CycScalar> random_field_vector(int len)
    {
        std::vector<CycScalar> u;
        for (int i = 0; i < len; ++i)
            u.push_back(alg_.scalar(random_rational()));
        return u;
    }

    /// Random degree in GammaBar (entries m_i * [-2,2]).
    LatticeVector random_gammabar(bool nonzero)
    {
        for (int tries = 0; tries < 64; ++tries) {
            std::vector<long> v(static_cast<std::size_t>(alg_.n()));
            for (int i = 0; i < alg_.n(); ++i)
                v[i] = alg_.lattice().order(i) * uniform(-2, 2);
            LatticeVector r(std::move(v));
            if (!nonzero || !r.is_zero())
                return r;
        }
        // fall back to a guaranteed nonzero degree
        LatticeVector r = LatticeVector::zero(alg_.n());
        r[0] = alg_.lattice().order(0);
        return r;
    }

    /// Random eigenvector together with its residue class.
    GElement random_eigenvector(std::vector<long>& rbar_out)
    {
        const auto& c = classes_[static_cast<std::size_t>(
            uniform(0, static_cast<long>(classes_.size()) - 1))];
        const auto& basis = alg_.eigenspaces().basis(c);
        rbar_out = c;
        return basis[static_cast<std::size_t>(uniform(0, static_cast<long>(basis.size()) - 1))];
    }

    /// Random degree congruent to the class, entries class + m_i * [-2,2].
    LatticeVector degree_in_class(const std::vector<long>& rbar)
    {
        std::vector<long> v(static_cast<std::size_t>(alg_.n()));
        for (int i = 0; i < alg_.n(); ++i)
            v[i] = rbar[i] + alg_.lattice().order(i) * uniform(-2, 2);
        return LatticeVector(std::move(v));
    }

    TauElement random_loop()
    {
        std::vector<long> rbar;
        const GElement x = random_eigenvector(rbar);
        return TauElement::loop(alg_, x, degree_in_class(rbar));
    }

    /// Random basis element of tau: loop, h_r, K(rbar,r), K_i, or d_i.
    TauElement random_basis_element()
    {
        switch (uniform(0, 9)) {
        case 0:
        case 1:
        case 2:
        case 3:
            return random_loop();
        case 4:
        case 5:
            return TauElement::hamiltonian(alg_, random_gammabar(true));
        case 6:
        case 7:
            return TauElement::central_basis(alg_, random_gammabar(true));
        case 8:
            return TauElement::central_K(alg_, static_cast<int>(uniform(0, alg_.n() - 1)));
        default:
            return TauElement::derivation_d(alg_, static_cast<int>(uniform(0, alg_.n() - 1)));
        }
    }

    /// Random K(m) member at a nonzero degree: a vector orthogonal to rbar.
    std::pair<std::vector<CycScalar>, LatticeVector> random_km_member()
    {
        for (int tries = 0; tries < 256; ++tries) {
            const LatticeVector r = random_gammabar(true);
            const LatticeVector rbar = alg_.lattice().bar(r);
            std::vector<CycScalar> v = random_field_vector(alg_.n());
            const CycScalar proj = dot(v, rbar, alg_.field()) *
                                   rat(1, static_cast<long>(dot(rbar, rbar)));
            bool nonzero = false;
            for (int i = 0; i < alg_.n(); ++i) {
                v[i] = v[i] - proj * alg_.scalar(rbar[i]);
                if (!v[i].is_zero())
                    nonzero = true;
            }
            if (nonzero)
                return {v, r};
        }
        throw std::logic_error("random_km_member: sampling failed");
    }

private:
    const TauAlgebra& alg_;
    std::mt19937_64 rng_;
    std::vector<std::vector<long>> classes_;
};

inline TwistMatrix random_unimodular(int n, std::mt19937_64& rng)
{
    std::vector<std::vector<long>> rows(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i)
        rows[i][i] = 1;
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int step = 0; step < 4 * n; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        const long c = coin(rng) ? 1 : -1;
        for (int t = 0; t < n; ++t)
            rows[i][t] += c * rows[j][t];
    }
    return TwistMatrix(std::move(rows));
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Jacobi residual on random basis triples across all three summands.
inline CheckReport check_jacobi(const TauAlgebra& alg, long samples, std::uint64_t seed,
                                const BracketOptions& opts = {})
{
    CheckReport rep{"jacobi", samples, 0, ""};
    ElementSampler s(alg, seed);
    for (long i = 0; i < samples; ++i) {
        const TauElement a = s.random_basis_element();
        const TauElement b = s.random_basis_element();
        const TauElement c = s.random_basis_element();
        const TauElement r = jacobi_residual(alg, a, b, c, opts);
        if (!r.is_zero()) {
            ++rep.failed;
            if (rep.first_failure.empty())
                rep.first_failure = "sample " + std::to_string(i) + " triple " +
                                    element_to_json(alg, a).dump() + " , " +
                                    element_to_json(alg, b).dump() + " , " +
                                    element_to_json(alg, c).dump() + " residual " +
                                    element_to_json(alg, r).dump();
        }
    }
    return rep;
}

/// Symmetry, invariance, and blockwise nondegeneracy of the bilinear form.
inline CheckReport check_form(const TauAlgebra& alg, long samples, std::uint64_t seed)
{
    CheckReport rep{"form", samples, 0, ""};
    ElementSampler s(alg, seed);
    for (long i = 0; i < samples; ++i) {
        const TauElement a = s.random_basis_element();
        const TauElement b = s.random_basis_element();
        const TauElement c = s.random_basis_element();
        bool ok = bilinear_form(alg, a, b) == bilinear_form(alg, b, a);
        if (ok)
            ok = bilinear_form(alg, tau_bracket(alg, a, b), c) ==
                 bilinear_form(alg, a, tau_bracket(alg, b, c));
        if (ok) {
            // (h_r | K((-r)bar, -r)) = -(rbar, rbar) != 0
            const LatticeVector r = s.random_gammabar(true);
            const CycScalar p = bilinear_form(alg, TauElement::hamiltonian(alg, r),
                                              TauElement::central_basis(alg, -r));
            ok = !p.is_zero();
        }
        if (!ok) {
            ++rep.failed;
            if (rep.first_failure.empty())
                rep.first_failure = "sample " + std::to_string(i) + " pair " +
                                    element_to_json(alg, a).dump() + " , " +
                                    element_to_json(alg, b).dump();
        }
    }
    return rep;
}

/// [tau-bar, K(m)] stays inside K(m): bracketing any basis element against a
/// K(m) member produces only central terms whose Z/K(m) canonical form is 0.
inline CheckReport check_ideal(const TauAlgebra& alg, long samples, std::uint64_t seed)
{
    CheckReport rep{"ideal", samples, 0, ""};
    ElementSampler s(alg, seed);
    for (long i = 0; i < samples; ++i) {
        const TauElement x = s.random_basis_element();
        const auto [u, r] = s.random_km_member();
        FtElement km;
        km.add_central(alg, r, u);
        const FtElement br = ft_bracket(alg, FtElement::embed(alg, x), km);
        bool ok = br.loop_part().empty() && br.deriv_part().empty();
        if (ok)
            for (const auto& [t, v] : br.central_part()) {
                if (t.is_zero()) {
                    ok = false; // degree-0 central output would leave K(m)
                    break;
                }
                if (!central_canonicalize(alg, v, t).is_zero()) {
                    ok = false;
                    break;
                }
            }
        if (!ok) {
            ++rep.failed;
            if (rep.first_failure.empty())
                rep.first_failure = "sample " + std::to_string(i) + " x " +
                                    element_to_json(alg, x).dump() + " against K(u," +
                                    r.str() + ") with u " +
                                    scalar_vector_to_json(u).dump();
        }
    }
    return rep;
}

namespace detail {

// Homogeneous elements of a prescribed triangular class, built directly.
inline TauElement sample_in_class(const TauAlgebra& alg, ElementSampler& s, TriClass target)
{
    const int k = alg.k(), n = alg.n();
    const long mk = alg.lattice().order(k - 1);
    const long m2k = alg.lattice().order(n - 1);
    const long step = std::lcm(mk, m2k);
    for (int tries = 0; tries < 512; ++tries) {
        TauElement cand;
        const long kind = s.uniform(0, 2); // 0 loop, 1 ham, 2 central
        if (kind == 0) {
            std::vector<long> rbar;
            const GElement x = s.random_eigenvector(rbar);
            LatticeVector r = s.degree_in_class(rbar);
            if (target == TriClass::Plus || target == TriClass::Minus ||
                target == TriClass::Zero) {
                // force equal slots; both zero when the class demands it or a
                // weight-signed element is wanted
                const bool slot_route = s.uniform(0, 1) == 0 && target != TriClass::Zero;
                long v = 0;
                if (slot_route)
                    v = (target == TriClass::Plus ? 1 : -1) * step * s.uniform(1, 2);
                if (rbar[k - 1] != 0 || rbar[n - 1] != 0)
                    continue; // class blocks equal slots
                r[k - 1] = v;
                r[n - 1] = v;
                if (!slot_route) {
                    // need a single-signed finite weight component
                    auto parts = alg.lie().weight_decompose(x);
                    bool found = false;
                    for (const auto& [alpha, comp] : parts) {
                        auto sign = weight_sign(alg, alpha);
                        if (!sign)
                            continue;
                        const int want = target == TriClass::Plus
                                             ? 1
                                             : (target == TriClass::Minus ? -1 : 0);
                        if (*sign == want) {
                            cand = TauElement::loop(alg, comp, r);
                            found = true;
                            break;
                        }
                    }
                    if (!found)
                        continue;
                } else {
                    auto parts = alg.lie().weight_decompose(x);
                    cand = TauElement::loop(alg, parts.begin()->second, r);
                }
            } else {
                const long a = s.uniform(-2, 2), b = s.uniform(-2, 2);
                r[k - 1] = rbar[k - 1] + mk * a;
                r[n - 1] = rbar[n - 1] + m2k * b;
                auto parts = alg.lie().weight_decompose(x);
                cand = TauElement::loop(alg, parts.begin()->second, r);
            }
        } else {
            LatticeVector r = s.random_gammabar(true);
            if (target == TriClass::Plus || target == TriClass::Minus) {
                const long v = (target == TriClass::Plus ? 1 : -1) * step * s.uniform(1, 2);
                r[k - 1] = v;
                r[n - 1] = v;
            } else if (target == TriClass::Zero) {
                r[k - 1] = 0;
                r[n - 1] = 0;
            }
            if (r.is_zero())
                continue;
            cand = kind == 1 ? TauElement::hamiltonian(alg, r)
                             : TauElement::central_basis(alg, r);
        }
        if (cand.is_zero())
            continue;
        try {
            if (triangular_class(alg, cand) == target)
                return cand;
        } catch (const std::domain_error&) {
        }
    }
    throw std::logic_error("sample_in_class: could not build a representative");
}

} // namespace detail

/// Partition of a homogeneous basis sample plus the bracket inclusions of
/// the five-part decomposition.
inline CheckReport check_triangular(const TauAlgebra& alg, long samples, std::uint64_t seed)
{
    CheckReport rep{"triangular", 0, 0, ""};
    ElementSampler s(alg, seed);

    // every homogeneous basis element receives exactly one class
    for (const auto& c : alg.eigenspaces().nonempty_classes())
        for (const auto& x : alg.eigenspaces().basis(c)) {
            std::vector<long> cc = c;
            for (int rep_i = 0; rep_i < 3; ++rep_i) {
                const LatticeVector r = s.degree_in_class(cc);
                for (const auto& piece : split_homogeneous(alg, TauElement::loop(alg, x, r))) {
                    ++rep.total;
                    try {
                        (void)triangular_class(alg, piece);
                    } catch (const std::domain_error& e) {
                        ++rep.failed;
                        if (rep.first_failure.empty())
                            rep.first_failure = e.what();
                    }
                }
            }
        }
    for (int i = 0; i < alg.n(); ++i) {
        for (const TauElement& x : {TauElement::central_K(alg, i),
                                    TauElement::derivation_d(alg, i)}) {
            ++rep.total;
            try {
                if (triangular_class(alg, x) != TriClass::Zero)
                    throw std::domain_error("Cartan element not in class 0");
            } catch (const std::domain_error& e) {
                ++rep.failed;
                if (rep.first_failure.empty())
                    rep.first_failure = e.what();
            }
        }
    }
    for (int i = 0; i < 24; ++i) {
        const LatticeVector r = s.random_gammabar(true);
        for (const TauElement& x : {TauElement::hamiltonian(alg, r),
                                    TauElement::central_basis(alg, r)}) {
            ++rep.total;
            try {
                (void)triangular_class(alg, x);
            } catch (const std::domain_error& e) {
                ++rep.failed;
                if (rep.first_failure.empty())
                    rep.first_failure = e.what();
            }
        }
    }

    // bracket inclusions
    struct Rule {
        TriClass left;
        std::vector<TriClass> right;
        std::vector<TriClass> target;
    };
    const std::vector<Rule> rules = {
        {TriClass::PlusPlus, {TriClass::Plus, TriClass::Minus}, {TriClass::PlusPlus}},
        {TriClass::MinusMinus, {TriClass::Plus, TriClass::Minus}, {TriClass::MinusMinus}},
        {TriClass::Plus, {TriClass::Plus}, {TriClass::PlusPlus, TriClass::Plus}},
        {TriClass::Zero, {TriClass::Zero}, {TriClass::Zero}},
    };
    for (const auto& rule : rules) {
        for (long i = 0; i < samples; ++i) {
            ++rep.total;
            try {
                const TauElement x = detail::sample_in_class(alg, s, rule.left);
                const TauElement y = detail::sample_in_class(
                    alg, s,
                    rule.right[static_cast<std::size_t>(
                        s.uniform(0, static_cast<long>(rule.right.size()) - 1))]);
                const TauElement br = tau_bracket(alg, x, y);
                for (const auto& piece : split_homogeneous(alg, br)) {
                    const TriClass c = triangular_class(alg, piece);
                    bool allowed = false;
                    for (const auto& t : rule.target)
                        if (c == t)
                            allowed = true;
                    if (!allowed)
                        throw std::domain_error(
                            std::string("bracket left the target classes: got ") +
                            tri_name(c));
                }
            } catch (const std::domain_error& e) {
                ++rep.failed;
                if (rep.first_failure.empty())
                    rep.first_failure = e.what();
            }
        }
    }
    return rep;
}

/// B-twists preserve carrier brackets and compose as a group action, for
/// B = I, the B_{n,n} family (a = 1, 2), and a seeded random unimodular B.
inline CheckReport check_twist(const TauAlgebra& alg, long samples, std::uint64_t seed)
{
    CheckReport rep{"twist", 0, 0, ""};
    ElementSampler s(alg, seed);
    std::vector<std::pair<std::string, TwistMatrix>> mats;
    mats.emplace_back("I", TwistMatrix::identity(alg.n()));
    mats.emplace_back("B_{n,n};a=1", TwistMatrix::bnn(alg.n(), 1));
    mats.emplace_back("B_{n,n};a=2", TwistMatrix::bnn(alg.n(), 2));
    mats.emplace_back("random", random_unimodular(alg.n(), s.rng()));

    for (const auto& [name, B] : mats)
        for (long i = 0; i < samples; ++i) {
            ++rep.total;
            const FtElement x = FtElement::embed(alg, s.random_basis_element());
            const FtElement y = FtElement::embed(alg, s.random_basis_element());
            const FtElement lhs = twist(alg, B, ft_bracket(alg, x, y));
            const FtElement rhs = ft_bracket(alg, twist(alg, B, x), twist(alg, B, y));
            if (lhs != rhs) {
                ++rep.failed;
                if (rep.first_failure.empty())
                    rep.first_failure = "homomorphism failure under " + name;
            }
        }

    // group action: twist(B1, twist(B2, x)) = twist(B1 B2, x)
    for (std::size_t a = 0; a < mats.size(); ++a)
        for (std::size_t b = 0; b < mats.size(); ++b) {
            const TwistMatrix prod = mats[a].second * mats[b].second;
            for (long i = 0; i < std::max<long>(samples / 8, 4); ++i) {
                ++rep.total;
                const FtElement x = FtElement::embed(alg, s.random_basis_element());
                if (twist(alg, mats[a].second, twist(alg, mats[b].second, x)) !=
                    twist(alg, prod, x)) {
                    ++rep.failed;
                    if (rep.first_failure.empty())
                        rep.first_failure = "group action failure " + mats[a].first + " * " +
                                            mats[b].first;
                }
            }
        }
    return rep;
}

namespace detail {

// Seeded degree/field-vector sampling over a bare lattice (the module-layer
// checks do not need a simple Lie algebra).
class LatticeSampler {
public:
    LatticeSampler(const GradingLattice& lat, const FieldPtr& f, std::uint64_t seed)
        : lat_(lat), f_(f), rng_(seed)
    {
    }

    std::mt19937_64& rng() { return rng_; }

    long uniform(long lo, long hi)
    {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(rng_);
    }

    LatticeVector random_gammabar(bool nonzero)
    {
        for (int tries = 0; tries < 64; ++tries) {
            std::vector<long> v(static_cast<std::size_t>(lat_.n()));
            for (int i = 0; i < lat_.n(); ++i)
                v[i] = lat_.order(i) * uniform(-2, 2);
            LatticeVector r(std::move(v));
            if (!nonzero || !r.is_zero())
                return r;
        }
        LatticeVector r = LatticeVector::zero(lat_.n());
        r[0] = lat_.order(0);
        return r;
    }

    std::vector<CycScalar> random_field_vector(int len)
    {
        std::vector<CycScalar> u;
        for (int i = 0; i < len; ++i)
            u.push_back(CycScalar::from_rational(f_, rat(uniform(-4, 4), uniform(1, 3))));
        return u;
    }

private:
    const GradingLattice& lat_;
    FieldPtr f_;
    std::mt19937_64 rng_;
};

} // namespace detail

/// Lemma-4.4 module axiom: rho([I_r, I_s]) = [rho(I_r), rho(I_s)] with the
/// closed bracket (rbar,s)(I_{r+s} - I_r - I_s), for the shipped sp_n
/// modules and zeta in {0, random}.
inline CheckReport check_lemma44(const GradingLattice& lat, const FieldPtr& f, long samples,
                                 std::uint64_t seed,
                                 RankOneConvention conv = RankOneConvention::ColRow)
{
    CheckReport rep{"lemma44", 0, 0, ""};
    detail::LatticeSampler s(lat, f, seed);
    const CycScalar zero = CycScalar::zero(f);
    const std::vector<SpModule> mods = {SpModule(SpModule::Kind::Trivial, lat),
                                        SpModule(SpModule::Kind::Natural, lat)};

    // rank-one matrices land in sp_n
    for (long i = 0; i < std::min<long>(samples, 100); ++i) {
        ++rep.total;
        const LatticeVector r = s.random_gammabar(false);
        const SpMatrix m = conv == RankOneConvention::ColRow
                               ? rank_one_sp(lat, r, f)
                               : rank_one_sp_swapped(lat, r, f);
        if (!is_symplectic(lat, m, f)) {
            ++rep.failed;
            if (rep.first_failure.empty())
                rep.first_failure = "rank_one_sp(" + r.str() + ") is not symplectic";
        }
    }

    for (long i = 0; i < samples; ++i) {
        const LatticeVector r = s.random_gammabar(true);
        const LatticeVector t = s.random_gammabar(true);
        const std::vector<CycScalar> zeta =
            s.uniform(0, 1) ? s.random_field_vector(lat.n())
                            : std::vector<CycScalar>(static_cast<std::size_t>(lat.n()), zero);
        for (const auto& W : mods) {
            ++rep.total;
            bool ok = true;
            for (int j = 0; j < W.dim() && ok; ++j) {
                const auto w = W.basis_vector(j, f);
                auto act = [&](const LatticeVector& d, const std::vector<CycScalar>& v) {
                    return hprime_action(lat, W, d, zeta, v, f, conv);
                };
                std::vector<CycScalar> rhs = act(r, act(t, w));
                const std::vector<CycScalar> sub = act(t, act(r, w));
                for (std::size_t e = 0; e < rhs.size(); ++e)
                    rhs[e] = rhs[e] - sub[e];
                const CycScalar c =
                    CycScalar::from_rational(f, rat(static_cast<long>(lat.sympl(r, t))));
                std::vector<CycScalar> lhs(static_cast<std::size_t>(W.dim()), zero);
                const LatticeVector rt = r + t;
                if (!rt.is_zero()) {
                    const auto a1 = act(rt, w);
                    for (std::size_t e = 0; e < lhs.size(); ++e)
                        lhs[e] = lhs[e] + a1[e];
                }
                const auto a2 = act(r, w);
                const auto a3 = act(t, w);
                for (std::size_t e = 0; e < lhs.size(); ++e)
                    lhs[e] = (lhs[e] - a2[e] - a3[e]) * c;
                if (lhs != rhs)
                    ok = false;
            }
            if (!ok) {
                ++rep.failed;
                if (rep.first_failure.empty())
                    rep.first_failure =
                        "Lemma 4.4 axiom fails at r=" + r.str() + " s=" + t.str() +
                        (W.kind() == SpModule::Kind::Trivial ? " (trivial W)"
                                                             : " (natural W)");
            }
        }
    }
    return rep;
}

/// Jet-module axiom for H_n(m) |x A_n(m) on random generator pairs, both
/// shipped modules, random alpha and beta.
inline CheckReport check_jet(const GradingLattice& lat, const FieldPtr& f, long samples,
                             std::uint64_t seed,
                             RankOneConvention conv = RankOneConvention::ColRow)
{
    CheckReport rep{"jet", 0, 0, ""};
    detail::LatticeSampler s(lat, f, seed);
    const std::vector<SpModule> mods = {SpModule(SpModule::Kind::Trivial, lat),
                                        SpModule(SpModule::Kind::Natural, lat)};
    auto random_generator = [&]() -> JetGenerator {
        switch (s.uniform(0, 2)) {
        case 0:
            return JetGenerator::hamiltonian(s.random_gammabar(true));
        case 1:
            return JetGenerator::degree_zero(s.random_field_vector(lat.n()));
        default:
            return JetGenerator::monomial(s.random_gammabar(false));
        }
    };
    for (long i = 0; i < samples; ++i) {
        const JetGenerator a = random_generator();
        const JetGenerator b = random_generator();
        const auto alpha = s.random_field_vector(lat.n());
        const auto beta = s.random_field_vector(lat.n());
        for (const auto& W : mods) {
            ++rep.total;
            bool ok = true;
            for (int j = 0; j < W.dim() && ok; ++j) {
                JetModuleVector v(alpha, beta);
                v.add(s.random_gammabar(false), W.basis_vector(j, f));
                JetModuleVector rhs =
                    jet_action(lat, W, a, jet_action(lat, W, b, v, f, conv), f, conv) -
                    jet_action(lat, W, b, jet_action(lat, W, a, v, f, conv), f, conv);
                JetModuleVector lhs(alpha, beta);
                for (const auto& [c, g] : jet_bracket(lat, a, b, f)) {
                    JetModuleVector part = jet_action(lat, W, g, v, f, conv);
                    for (const auto& [deg, w] : part.components()) {
                        std::vector<CycScalar> scaled(w);
                        for (auto& q : scaled)
                            q = q * c;
                        lhs.add(deg, scaled);
                    }
                }
                if (lhs != rhs)
                    ok = false;
            }
            if (!ok) {
                ++rep.failed;
                if (rep.first_failure.empty())
                    rep.first_failure = "jet-module axiom fails on a sampled generator pair";
            }
        }
    }
    return rep;
}

/// Evaluation maps: Lie homomorphism for point sets of size l in {1, 2},
/// the kernel/factoring property, and rejection of separation violations.
inline CheckReport check_evaluation(const TauAlgebra& alg, long samples, std::uint64_t seed)
{
    CheckReport rep{"evaluation", 0, 0, ""};
    ElementSampler s(alg, seed);
    const auto& lat = alg.lattice();
    const auto& f = alg.field();
    auto fail = [&](const std::string& msg) {
        ++rep.failed;
        if (rep.first_failure.empty())
            rep.first_failure = msg;
    };
    for (int l : {1, 2}) {
        std::vector<std::vector<CycScalar>> pts;
        for (int i = 0; i < alg.n(); ++i) {
            std::vector<CycScalar> slot;
            for (int j = 0; j < l; ++j)
                slot.push_back(alg.scalar(j + 1 + i)); // distinct positive integers
            pts.push_back(slot);
        }
        const EvaluationPoints ev(lat, pts, f);
        for (long i = 0; i < samples; ++i) {
            ++rep.total;
            std::vector<long> rbar, sbar;
            const GElement x = s.random_eigenvector(rbar);
            const GElement y = s.random_eigenvector(sbar);
            const LatticeVector r = s.degree_in_class(rbar);
            const LatticeVector t = s.degree_in_class(sbar);
            const auto phix = ev.evaluate(x, r);
            const auto phiy = ev.evaluate(y, t);
            const auto phixy = ev.evaluate(alg.lie().bracket(x, y), r + t);
            bool ok = true;
            for (int c = 0; c < ev.copies() && ok; ++c)
                if (alg.lie().bracket(phix[c], phiy[c]) != phixy[c])
                    ok = false;
            if (!ok)
                fail("evaluation map is not a homomorphism (l=" + std::to_string(l) + ")");
        }
    }
    {
        // kernel: with every point 1, any two degrees evaluate identically
        ++rep.total;
        std::vector<std::vector<CycScalar>> ones(
            static_cast<std::size_t>(alg.n()), std::vector<CycScalar>{alg.one()});
        const EvaluationPoints ev(lat, ones, f);
        std::vector<long> rbar0(static_cast<std::size_t>(alg.n()), 0);
        const auto& b0 = alg.eigenspaces().basis(rbar0);
        if (!b0.empty()) {
            const LatticeVector r = s.random_gammabar(false);
            const LatticeVector t = s.random_gammabar(false);
            if (ev.evaluate(b0[0], r) != ev.evaluate(b0[0], t))
                fail("evaluation kernel property fails for the all-ones point");
        }
        ++rep.total;
        bool rejected = false;
        try {
            std::vector<std::vector<CycScalar>> bad;
            for (int i = 0; i < alg.n(); ++i) {
                // second point = zeta_{m_i} * first: equal m_i-th powers
                std::vector<CycScalar> slot{alg.one(), alg.zeta(i, 1)};
                bad.push_back(slot);
            }
            EvaluationPoints evb(lat, bad, f);
        } catch (const std::domain_error&) {
            rejected = true;
        }
        if (!rejected)
            fail("separation-constraint violation was not rejected");
    }
    return rep;
}

/// Module-layer checks bundled for the CLI suite: Lemma 4.4, the jet axiom,
/// and the evaluation maps of the configured session.
inline CheckReport check_modules(const TauAlgebra& alg, long samples, std::uint64_t seed,
                                 RankOneConvention conv = RankOneConvention::ColRow)
{
    CheckReport rep{"modules", 0, 0, ""};
    const CheckReport parts[] = {
        check_lemma44(alg.lattice(), alg.field(), samples, seed, conv),
        check_jet(alg.lattice(), alg.field(), samples, seed + 1, conv),
        check_evaluation(alg, samples / 2, seed + 2)};
    for (const auto& p : parts) {
        rep.total += p.total;
        rep.failed += p.failed;
        if (rep.first_failure.empty() && !p.first_failure.empty())
            rep.first_failure = p.suite + ": " + p.first_failure;
    }
    return rep;
}

/// Rank oracle for the graded central quotient: dim (Z/K(m))_r computed from
/// the raw relation set (independent of the canonicalizer).
inline int central_quotient_dim_oracle(const TauAlgebra& alg, const LatticeVector& r)
{
    if (!alg.lattice().in_gamma_bar(r))
        throw std::domain_error("central dimension oracle: degree outside GammaBar");
    if (r.is_zero())
        return alg.n(); // no relations at degree 0
    // relations: K(m) spans {u : (u, rbar) = 0}; dA adds the vector r itself.
    const LatticeVector rbar = alg.lattice().bar(r);
    std::vector<std::vector<Rational>> rows;
    for (int j = 0; j < alg.n(); ++j) {
        // e_j - ((e_j, rbar)/(rbar,rbar)) rbar spans the orthogonal complement
        std::vector<Rational> v(static_cast<std::size_t>(alg.n()), Rational(0));
        v[j] = 1;
        const Rational c = Rational(rbar[j]) / Rational(static_cast<long>(dot(rbar, rbar)));
        for (int i = 0; i < alg.n(); ++i)
            v[i] -= c * rbar[i];
        rows.push_back(std::move(v));
    }
    {
        std::vector<Rational> v(static_cast<std::size_t>(alg.n()), Rational(0));
        for (int i = 0; i < alg.n(); ++i)
            v[i] = Rational(r[i]);
        rows.push_back(std::move(v));
    }
    // rational rank
    int rank = 0;
    const int cols = alg.n();
    std::vector<int> used(rows.size(), 0);
    for (int c = 0; c < cols; ++c) {
        int piv = -1;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!used[i] && rows[i][c] != 0) {
                piv = static_cast<int>(i);
                break;
            }
        if (piv < 0)
            continue;
        used[piv] = 1;
        ++rank;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == piv || rows[i][c] == 0)
                continue;
            const Rational q = rows[i][c] / rows[piv][c];
            for (int j = 0; j < cols; ++j)
                rows[i][j] -= q * rows[piv][j];
        }
    }
    return alg.n() - rank;
}

/// Central graded dimensions and the canonical basis element, on random
/// degrees: Prop-2.1 structure rechecked against the rank oracle.
inline CheckReport check_central_dims(const TauAlgebra& alg, long samples, std::uint64_t seed)
{
    CheckReport rep{"central-dims", 0, 0, ""};
    ElementSampler s(alg, seed);
    ++rep.total;
    if (central_quotient_dim_oracle(alg, LatticeVector::zero(alg.n())) != alg.n()) {
        ++rep.failed;
        rep.first_failure = "degree 0 dimension is not n";
    }
    for (long i = 0; i < samples; ++i) {
        ++rep.total;
        const LatticeVector r = s.random_gammabar(true);
        bool ok = central_quotient_dim_oracle(alg, r) == 1;
        if (ok) {
            // the canonical basis element K(rbar, r) must survive with c = 1
            const CycScalar c = central_canonicalize(
                alg, alg.field_vector(alg.lattice().bar(r)), r);
            ok = c == alg.one();
        }
        if (!ok) {
            ++rep.failed;
            if (rep.first_failure.empty())
                rep.first_failure = "degree " + r.str();
        }
    }
    return rep;
}

/// Named-suite dispatch used by the CLI. "all" runs every suite with its
/// default sample count (or `samples` when positive).
inline std::vector<CheckReport> run_suites(const TauAlgebra& alg, const std::string& which,
                                           long samples, std::uint64_t seed)
{
    auto count = [&](long dflt) { return samples > 0 ? samples : dflt; };
    std::vector<CheckReport> out;
    const bool all = which == "all";
    if (all || which == "jacobi")
        out.push_back(check_jacobi(alg, count(1000), seed));
    if (all || which == "form")
        out.push_back(check_form(alg, count(500), seed));
    if (all || which == "ideal")
        out.push_back(check_ideal(alg, count(200), seed));
    if (all || which == "triangular")
        out.push_back(check_triangular(alg, count(300), seed));
    if (all || which == "twist")
        out.push_back(check_twist(alg, count(300), seed));
    if (all || which == "modules")
        out.push_back(check_modules(alg, count(200), seed));
    if (out.empty())
        throw ConfigError("unknown suite '" + which +
                          "' (expected jacobi|form|ideal|triangular|twist|modules|all)");
    return out;
}

} // namespace healie
