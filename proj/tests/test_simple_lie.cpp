#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "healie/config.hpp"

using namespace healie;

namespace {

AlgebraPtr alg_for(const std::string& name) { return load_algebra(builtin_config(name)); }

} // namespace

TEST_CASE("sl2 structure constants", "[simple_lie]")
{
    const auto alg = alg_for("sl2_untwisted");
    const auto& lie = alg->lie();
    const auto& f = alg->field();
    const GElement e = GElement::basis(lie.index_of("e"), f);
    const GElement fe = GElement::basis(lie.index_of("f"), f);
    const GElement h = GElement::basis(lie.index_of("h"), f);

    CHECK(lie.bracket(e, fe) == h);
    CHECK(lie.bracket(h, e) == e * alg->scalar(2));
    CHECK(lie.bracket(e, e).is_zero());
    CHECK(lie.bracket(e + h, e + h).is_zero());
}

TEST_CASE("load-time validation rejects bad tables", "[simple_lie]")
{
    auto cfg = builtin_config("sl2_untwisted");
    cfg["brackets"]["e,f"]["e"] = 1; // breaks Jacobi
    CHECK_THROWS_AS(load_algebra(cfg), ConfigError);

    auto cfg2 = builtin_config("sl2_untwisted");
    cfg2["form"]["h,h"] = 3; // breaks invariance and normalization
    CHECK_THROWS_AS(load_algebra(cfg2), ConfigError);

    auto cfg3 = builtin_config("sl2_untwisted");
    cfg3["cartan"] = {"e"}; // not ad-diagonal
    CHECK_THROWS_AS(load_algebra(cfg3), ConfigError);
}

TEST_CASE("automorphism validation", "[simple_lie]")
{
    // declared order must be exact
    auto cfg = builtin_config("sl2_twisted");
    cfg["m"] = {4, 1}; // sign flip has order 2, not 4
    CHECK_THROWS_AS(load_algebra(cfg), ConfigError);

    // non-automorphism images are rejected
    auto cfg2 = builtin_config("sl2_twisted");
    cfg2["automorphisms"][0]["images"]["e"] = {{"e", -1}, {"h", 1}};
    CHECK_THROWS_AS(load_algebra(cfg2), ConfigError);
}

TEST_CASE("eigenspace decomposition", "[simple_lie]")
{
    SECTION("untwisted: everything is fixed")
    {
        const auto alg = alg_for("sl2_untwisted");
        CHECK(alg->eigenspaces().dim({0, 0}) == 3);
        CHECK(alg->eigenspaces().nonempty_classes().size() == 1);
    }
    SECTION("order-2 twist of sl2")
    {
        const auto alg = alg_for("sl2_twisted");
        const auto& lie = alg->lie();
        const auto& f = alg->field();
        CHECK(alg->eigenspaces().dim({0, 0}) == 1);
        CHECK(alg->eigenspaces().dim({1, 0}) == 2);
        CHECK(alg->in_eigenspace({0, 0}, GElement::basis(lie.index_of("h"), f)));
        CHECK(alg->in_eigenspace({1, 0}, GElement::basis(lie.index_of("e"), f)));
        CHECK(alg->in_eigenspace({1, 0}, GElement::basis(lie.index_of("f"), f)));
        CHECK_FALSE(alg->in_eigenspace({0, 0}, GElement::basis(lie.index_of("e"), f)));
        // dim checksum
        int total = 0;
        for (const auto& c : alg->eigenspaces().nonempty_classes())
            total += alg->eigenspaces().dim(c);
        CHECK(total == 3);
    }
    SECTION("order-3 twist of sl3")
    {
        const auto alg = alg_for("sl3_twisted");
        CHECK(alg->eigenspaces().dim({0, 0, 0, 0}) == 2);
        CHECK(alg->eigenspaces().dim({1, 0, 0, 0}) == 3);
        CHECK(alg->eigenspaces().dim({2, 0, 0, 0}) == 3);
    }
}

TEST_CASE("bracket respects the eigenspace grading", "[simple_lie]")
{
    const auto alg = alg_for("sl3_twisted");
    std::mt19937_64 rng(17);
    const auto classes = alg->eigenspaces().nonempty_classes();
    std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
    for (int i = 0; i < 100; ++i) {
        const auto& ca = classes[pick(rng)];
        const auto& cb = classes[pick(rng)];
        const auto& ba = alg->eigenspaces().basis(ca);
        const auto& bb = alg->eigenspaces().basis(cb);
        std::uniform_int_distribution<std::size_t> ia(0, ba.size() - 1), ib(0, bb.size() - 1);
        const GElement x = ba[ia(rng)];
        const GElement y = bb[ib(rng)];
        std::vector<long> sum(ca.size());
        for (std::size_t t = 0; t < ca.size(); ++t)
            sum[t] = (ca[t] + cb[t]) % alg->lattice().order(static_cast<int>(t));
        CHECK(alg->in_eigenspace(sum, alg->lie().bracket(x, y)));
    }
}

TEST_CASE("Lie torus condition (3)", "[simple_lie]")
{
    CHECK(alg_for("sl2_untwisted")->auts().condition3(alg_for("sl2_untwisted")->lie(),
                                                      alg_for("sl2_untwisted")->field()));
    const auto tw = alg_for("sl2_twisted");
    CHECK(tw->auts().condition3(tw->lie(), tw->field()));
    const auto sl3 = alg_for("sl3_twisted");
    CHECK(sl3->auts().condition3(sl3->lie(), sl3->field()));

    // two equal order-2 automorphisms generate a group of order 2 < 4
    auto cfg = builtin_config("sl2_twisted");
    cfg["m"] = {2, 2};
    cfg["automorphisms"][1] = cfg["automorphisms"][0];
    const auto dup = load_algebra(cfg);
    CHECK_FALSE(dup->auts().condition3(dup->lie(), dup->field()));

    // enumeration bound is enforced
    CHECK_THROWS_AS(dup->auts().condition3(dup->lie(), dup->field(), 3), std::domain_error);
}

TEST_CASE("weight decomposition", "[simple_lie]")
{
    const auto alg = alg_for("sl2_twisted");
    const auto& lie = alg->lie();
    const auto& f = alg->field();
    const GElement e = GElement::basis(lie.index_of("e"), f);
    const GElement fe = GElement::basis(lie.index_of("f"), f);
    const GElement h = GElement::basis(lie.index_of("h"), f);

    const auto parts_h = lie.weight_decompose(h);
    REQUIRE(parts_h.size() == 1);
    CHECK(parts_h.begin()->first == FiniteWeight{Rational(0)});

    const auto parts = lie.weight_decompose(e + fe);
    REQUIRE(parts.size() == 2);
    CHECK(parts.at(FiniteWeight{Rational(2)}) == e);
    CHECK(parts.at(FiniteWeight{Rational(-2)}) == fe);

    // components sum back and are ad-eigenvectors
    GElement sum;
    for (const auto& [alpha, comp] : parts) {
        sum = sum + comp;
        CHECK(lie.bracket(h, comp) == comp * CycScalar::from_rational(f, alpha[0]));
    }
    CHECK(sum == e + fe);
}

TEST_CASE("root data and coroots", "[simple_lie]")
{
    const auto alg = alg_for("sl3_twisted");
    const auto& lie = alg->lie();
    CHECK(lie.roots().size() == 6);
    CHECK(lie.enlarged_roots() == lie.roots()); // A2: nothing to double

    // coroot of the highest root alpha1 + alpha2 is h1 + h2
    const FiniteWeight theta = lie.highest_root();
    CHECK(theta == FiniteWeight{Rational(1), Rational(1)});
    CHECK(lie.coroot_coords(theta) == std::vector<Rational>{Rational(1), Rational(1)});
    CHECK(lie.norm2(theta) == 2);

    const auto coords = lie.simple_coords(theta);
    REQUIRE(coords.has_value());
    CHECK(*coords == std::vector<Rational>{Rational(1), Rational(1)});
}
