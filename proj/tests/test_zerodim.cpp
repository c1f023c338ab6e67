#include <catch2/catch_amalgamated.hpp>
#include <cycal/zerodim.hpp>

using namespace cycal;

namespace {

Polynomial var(const RingPtr& r, const char* n)
{
    return Polynomial::variable(r, static_cast<size_t>(r->var_index(n)));
}

}  // namespace

TEST_CASE("minimal primes of zero-dimensional ideals")
{
    SECTION("a rational point is its own decomposition")
    {
        auto R = PolyRing::make(FieldSpec::rationals(), {"x", "y"});
        auto x = var(R, "x"), y = var(R, "y");
        Ideal I(R, {x, y});
        auto comps = minimal_primes_zero_dim(I);
        REQUIRE(comps.size() == 1);
        REQUIRE(comps[0] == I);
    }
    SECTION("x^2-1 splits into rational roots")
    {
        auto R = PolyRing::make(FieldSpec::rationals(), {"x"});
        auto x = var(R, "x");
        auto comps = minimal_primes_zero_dim(Ideal(R, {x * x - Polynomial::one(R)}));
        REQUIRE(comps.size() == 2);
        REQUIRE(((comps[0] == Ideal(R, {x - Polynomial::one(R)})) ||
                 (comps[1] == Ideal(R, {x - Polynomial::one(R)}))));
    }
    SECTION("x^2+1 stays irreducible over Q")
    {
        auto R = PolyRing::make(FieldSpec::rationals(), {"x"});
        auto x = var(R, "x");
        Ideal I(R, {x * x + Polynomial::one(R)});
        auto comps = minimal_primes_zero_dim(I);
        REQUIRE(comps.size() == 1);
        REQUIRE(comps[0] == I);
        REQUIRE(residue_degree(comps[0]) == 2);
    }
    SECTION("a degenerate fiber structure needs a separating element")
    {
        // (x^2+1, y^2+1) = (x^2+1, y-x) cap (x^2+1, y+x) over Q
        auto R = PolyRing::make(FieldSpec::rationals(), {"x", "y"});
        auto x = var(R, "x"), y = var(R, "y");
        Ideal I(R, {x * x + Polynomial::one(R), y * y + Polynomial::one(R)});
        auto comps = minimal_primes_zero_dim(I);
        REQUIRE(comps.size() == 2);
        for (const auto& c : comps) {
            REQUIRE(residue_degree(c) == 2);
            for (const auto& g : I.gens()) REQUIRE(c.contains(g));
        }
    }
    SECTION("multiplicities are stripped")
    {
        auto R = PolyRing::make(FieldSpec::rationals(), {"x"});
        auto x = var(R, "x");
        auto comps = minimal_primes_zero_dim(Ideal(R, {(x - Polynomial::one(R)).pow(3)}));
        REQUIRE(comps.size() == 1);
        REQUIRE(comps[0] == Ideal(R, {x - Polynomial::one(R)}));
    }
    SECTION("over a prime field")
    {
        auto R = PolyRing::make(FieldSpec::prime(5), {"x"});
        auto x = var(R, "x");
        // x^2-2 irreducible over F_5; x^2-1 splits
        auto c1 = minimal_primes_zero_dim(Ideal(R, {x * x - Polynomial::constant(R, 2)}));
        REQUIRE(c1.size() == 1);
        auto c2 = minimal_primes_zero_dim(Ideal(R, {x * x - Polynomial::one(R)}));
        REQUIRE(c2.size() == 2);
    }
    SECTION("positive-dimensional input is rejected")
    {
        auto R = PolyRing::make(FieldSpec::rationals(), {"x", "y"});
        auto x = var(R, "x");
        REQUIRE_THROWS_AS(minimal_primes_zero_dim(Ideal(R, {x})), error);
    }
}

TEST_CASE("every component is certified maximal")
{
    auto R = PolyRing::make(FieldSpec::rationals(), {"x", "y"});
    auto x = var(R, "x"), y = var(R, "y");
    Ideal I(R, {x * x * x - x, y * y - y});
    auto comps = minimal_primes_zero_dim(I);
    REQUIRE(comps.size() == 6);
    for (const auto& c : comps) REQUIRE(is_maximal(c));
}

TEST_CASE("is_maximal rejects non-maximal input")
{
    auto R = PolyRing::make(FieldSpec::rationals(), {"x", "y"});
    auto x = var(R, "x"), y = var(R, "y");
    REQUIRE_FALSE(is_maximal(Ideal(R, {x})));                          // positive-dimensional
    REQUIRE_FALSE(is_maximal(Ideal(R, {x * x, y})));                   // not radical
    REQUIRE_FALSE(is_maximal(Ideal(R, {x * x - Polynomial::one(R), y})));  // two points
    REQUIRE(is_maximal(Ideal(R, {x, y})));
    REQUIRE(is_maximal(Ideal(R, {x * x + Polynomial::one(R), y - x})));
}
