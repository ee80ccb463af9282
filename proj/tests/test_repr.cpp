#include <catch2/catch_amalgamated.hpp>

#include "healie/checks.hpp"

using namespace healie;

namespace {

std::vector<CycScalar> zeros(int n, const FieldPtr& f)
{
    return std::vector<CycScalar>(static_cast<std::size_t>(n), CycScalar::zero(f));
}

} // namespace

TEST_CASE("rank-one symplectic matrices", "[repr]")
{
    GradingLattice lat({1, 1});
    const auto f = CycField::get(1);

    const SpMatrix z = rank_one_sp(lat, LatticeVector{0, 0}, f);
    for (const auto& row : z)
        for (const auto& x : row)
            CHECK(x.is_zero());

    // r = (1,0): rbar = (0,-1), matrix [[0,-1],[0,0]]
    const SpMatrix m1 = rank_one_sp(lat, LatticeVector{1, 0}, f);
    CHECK(m1[0][0].is_zero());
    CHECK(m1[0][1] == CycScalar::from_rational(f, rat(-1)));
    CHECK(m1[1][0].is_zero());
    CHECK(m1[1][1].is_zero());
    CHECK(is_symplectic(lat, m1, f));

    // r = (0,1): rbar = (1,0), matrix [[0,0],[1,0]]
    const SpMatrix m2 = rank_one_sp(lat, LatticeVector{0, 1}, f);
    CHECK(m2[1][0] == CycScalar::one(f));
    CHECK(m2[0][1].is_zero());

    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> d(-4, 4);
    GradingLattice lat4({2, 1, 3, 1});
    const auto f4 = CycField::get(6);
    for (int i = 0; i < 100; ++i) {
        std::vector<long> v(4);
        for (auto& x : v)
            x = d(rng);
        CHECK(is_symplectic(lat4, rank_one_sp(lat4, LatticeVector(v), f4), f4));
    }
}

TEST_CASE("shipped modules are Lie homomorphisms", "[repr]")
{
    // rho([M, N]) w = rho(M) rho(N) w - rho(N) rho(M) w on sampled rank-one
    // generators, for both shipped modules
    GradingLattice lat({1, 1, 1, 1});
    const auto f = CycField::get(1);
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> d(-3, 3);
    for (const auto kind : {SpModule::Kind::Trivial, SpModule::Kind::Natural}) {
        const SpModule W(kind, lat);
        for (int i = 0; i < 60; ++i) {
            std::vector<long> a(4), b(4);
            for (int t = 0; t < 4; ++t) {
                a[t] = d(rng);
                b[t] = d(rng);
            }
            const SpMatrix M = rank_one_sp(lat, LatticeVector(a), f);
            const SpMatrix N = rank_one_sp(lat, LatticeVector(b), f);
            const SpMatrix C = sp_commutator(M, N, f);
            for (int j = 0; j < W.dim(); ++j) {
                const auto w = W.basis_vector(j, f);
                auto lhs = W.apply(C, w, f);
                auto r1 = W.apply(M, W.apply(N, w, f), f);
                const auto r2 = W.apply(N, W.apply(M, w, f), f);
                for (std::size_t t = 0; t < r1.size(); ++t)
                    r1[t] = r1[t] - r2[t];
                CHECK(lhs == r1);
            }
        }
    }
}

TEST_CASE("H'_n action", "[repr]")
{
    GradingLattice lat({1, 1});
    const auto f = CycField::get(1);

    SECTION("trivial module sees only the zeta shift")
    {
        const SpModule W(SpModule::Kind::Trivial, lat);
        const LatticeVector r{1, 0};
        std::vector<CycScalar> zeta = {CycScalar::from_rational(f, rat(2)),
                                       CycScalar::from_rational(f, rat(3))};
        const auto out = hprime_action(lat, W, r, zeta, W.basis_vector(0, f), f);
        // (rbar, zeta) = ((0,-1), (2,3)) = -3
        CHECK(out[0] == CycScalar::from_rational(f, rat(-3)));
    }

    SECTION("natural module, zeta = 0")
    {
        const SpModule W(SpModule::Kind::Natural, lat);
        const auto out =
            hprime_action(lat, W, LatticeVector{1, 0}, zeros(2, f), W.basis_vector(1, f), f);
        // matrix [[0,-1],[0,0]] sends e2 to -e1
        CHECK(out[0] == CycScalar::from_rational(f, rat(-1)));
        CHECK(out[1].is_zero());
    }

    SECTION("preconditions")
    {
        const SpModule W(SpModule::Kind::Natural, lat);
        CHECK_THROWS_AS(
            hprime_action(lat, W, LatticeVector{0, 0}, zeros(2, f), W.basis_vector(0, f), f),
            std::domain_error);
        GradingLattice twl({2, 1});
        CHECK_THROWS_AS(hprime_action(twl, SpModule(SpModule::Kind::Natural, twl),
                                      LatticeVector{1, 0}, zeros(2, f),
                                      {CycScalar::one(f), CycScalar::zero(f)}, f),
                        std::domain_error);
    }

    SECTION("module axiom via the closed bracket")
    {
        for (auto orders : {std::vector<long>{1, 1}, std::vector<long>{2, 1},
                            std::vector<long>{1, 2, 2, 1}}) {
            GradingLattice lt(orders);
            const auto fld = CycField::get(lt.field_order());
            const auto rep = check_lemma44(lt, fld, 120, 55);
            INFO(rep.first_failure);
            CHECK(rep.pass());
        }
    }

    SECTION("the swapped convention breaks the bracket identity")
    {
        GradingLattice lt({1, 1});
        const auto rep =
            check_lemma44(lt, CycField::get(1), 120, 55, RankOneConvention::SwappedRowCol);
        CHECK_FALSE(rep.pass());
    }
}

TEST_CASE("jet module action", "[repr]")
{
    GradingLattice lat({2, 1});
    const auto f = CycField::get(2);
    const SpModule W(SpModule::Kind::Trivial, lat);

    SECTION("t^0 is the identity")
    {
        JetModuleVector v(zeros(2, f), zeros(2, f));
        v.add(LatticeVector{2, 3}, W.basis_vector(0, f));
        CHECK(jet_action(lat, W, JetGenerator::monomial(LatticeVector{0, 0}), v, f) == v);
    }

    SECTION("trivial W with beta = 0: pure (rbar, k) shift")
    {
        JetModuleVector v(zeros(2, f), zeros(2, f));
        const LatticeVector k{2, 1};
        v.add(k, W.basis_vector(0, f));
        const LatticeVector r{2, -1};
        const auto out = jet_action(lat, W, JetGenerator::hamiltonian(r), v, f);
        REQUIRE(out.components().size() == 1);
        const auto& [deg, w] = *out.components().begin();
        CHECK(deg == k + r);
        // (rbar, k) = ((-1,-2),(2,1)) = -4
        CHECK(w[0] == CycScalar::from_rational(f, rat(-4)));
    }

    SECTION("degree bookkeeping: degree-r generators shift components by r")
    {
        const SpModule Wn(SpModule::Kind::Natural, lat);
        std::mt19937_64 rng(9);
        std::uniform_int_distribution<long> d(-2, 2);
        for (int i = 0; i < 50; ++i) {
            JetModuleVector v(zeros(2, f), zeros(2, f));
            const LatticeVector k{2 * d(rng), d(rng)};
            v.add(k, Wn.basis_vector(static_cast<int>((d(rng) + 2) % 2), f));
            const LatticeVector r{2 * d(rng), d(rng)};
            if (r.is_zero())
                continue;
            const auto out = jet_action(lat, Wn, JetGenerator::hamiltonian(r), v, f);
            for (const auto& [deg, w] : out.components())
                CHECK(deg == k + r);
        }
    }

    SECTION("module axiom for the semidirect product")
    {
        for (auto orders : {std::vector<long>{1, 1}, std::vector<long>{2, 1},
                            std::vector<long>{1, 1, 1, 1}}) {
            GradingLattice lt(orders);
            const auto fld = CycField::get(lt.field_order());
            const auto rep = check_jet(lt, fld, 120, 56);
            INFO(rep.first_failure);
            CHECK(rep.pass());
        }
    }
}

TEST_CASE("evaluation maps", "[repr]")
{
    const auto alg = load_algebra(builtin_config("sl2_twisted"));
    const auto& lat = alg->lattice();
    const auto& f = alg->field();
    const GElement e = GElement::basis(alg->lie().index_of("e"), f);

    SECTION("all-ones point set is constant in the degree")
    {
        std::vector<std::vector<CycScalar>> pts(2, {alg->one()});
        const EvaluationPoints ev(lat, pts, f);
        CHECK(ev.copies() == 1);
        for (const LatticeVector& r : {LatticeVector{1, 0}, LatticeVector{3, -2}})
            CHECK(ev.evaluate(e, r) == std::vector<GElement>{e});
    }

    SECTION("l = 1: scalar evaluation c^r and degree additivity")
    {
        std::vector<std::vector<CycScalar>> pts = {{alg->scalar(2)}, {alg->scalar(3)}};
        const EvaluationPoints ev(lat, pts, f);
        const auto out = ev.evaluate(e, LatticeVector{1, 2});
        CHECK(out[0] == e * alg->scalar(2 * 9));
        // negative exponents are exact
        const auto out2 = ev.evaluate(e, LatticeVector{-1, 0});
        CHECK(out2[0] == e * alg->scalar(rat(1, 2)));
        // a^{r+s} = a^r a^s
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<long> d(-3, 3);
        for (int i = 0; i < 50; ++i) {
            const LatticeVector r{d(rng), d(rng)}, s{d(rng), d(rng)};
            CHECK(ev.scalar_at(0, r + s) == ev.scalar_at(0, r) * ev.scalar_at(0, s));
        }
    }

    SECTION("kernel: degrees with equal evaluations act identically")
    {
        std::vector<std::vector<CycScalar>> pts = {{alg->scalar(2)}, {alg->scalar(2)}};
        const EvaluationPoints ev(lat, pts, f);
        // a^{(1,0)} = 2 = a^{(0,1)}
        CHECK(ev.evaluate(e, LatticeVector{1, 0}) == ev.evaluate(e, LatticeVector{0, 1}));
    }

    SECTION("separation constraint")
    {
        // m_1 = 2 and points (1, -1): (-1)^2 = 1^2 violates (6.1)
        std::vector<std::vector<CycScalar>> bad = {{alg->one(), alg->scalar(-1)},
                                                   {alg->one(), alg->scalar(2)}};
        CHECK_THROWS_AS(EvaluationPoints(lat, bad, f), std::domain_error);
        // swapping to orders where it is fine must pass: (1,-1) separates m=1
        std::vector<std::vector<CycScalar>> good = {{alg->one(), alg->scalar(3)},
                                                    {alg->one(), alg->scalar(-1)}};
        CHECK_NOTHROW(EvaluationPoints(lat, good, f));
        // zero points are rejected
        std::vector<std::vector<CycScalar>> zero = {{alg->zero()}, {alg->one()}};
        CHECK_THROWS_AS(EvaluationPoints(lat, zero, f), std::domain_error);
    }

    SECTION("homomorphism and rejection suite")
    {
        for (const auto name : {"sl2_twisted", "sl3_twisted"}) {
            const auto a = load_algebra(builtin_config(name));
            const auto rep = check_evaluation(*a, 100, 77);
            INFO(rep.first_failure);
            CHECK(rep.pass());
        }
    }
}
