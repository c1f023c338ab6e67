#include <catch2/catch_amalgamated.hpp>
#include <cycal/cycles.hpp>

using namespace cycal;

namespace {

struct A2 {
    RingPtr R;
    SchemePtr X;
    Polynomial x, y;
    A2()
        : R(PolyRing::make(FieldSpec::rationals(), {"x", "y"})), X(AffineScheme::affine_space(R)),
          x(Polynomial::variable(R, 0)), y(Polynomial::variable(R, 1))
    {
    }
    Cycle divisor(const Polynomial& f) { return Cycle::of_prime(PrimeCycle(X, Ideal(R, {f}))); }
};

}  // namespace

TEST_CASE("proper intersection predicate")
{
    A2 a;
    auto Vx = a.divisor(a.x), Vy = a.divisor(a.y);
    REQUIRE(intersects_properly(Vx, Vy));
    REQUIRE_FALSE(intersects_properly(Vx, Vx));
    REQUIRE(intersects_properly(a.divisor(a.y - a.x * a.x), Vy));
}

TEST_CASE("Serre multiplicities in the plane")
{
    A2 a;
    Ideal origin(a.R, {a.x, a.y});
    PrimeCycle Vx(a.X, Ideal(a.R, {a.x}));
    PrimeCycle Vy(a.X, Ideal(a.R, {a.y}));
    PrimeCycle Vpar(a.X, Ideal(a.R, {a.y - a.x * a.x}));
    REQUIRE(serre_multiplicity(Vx, Vy, origin) == 1);
    REQUIRE(serre_multiplicity(Vpar, Vy, origin) == 2);
    REQUIRE_THROWS_AS(serre_multiplicity(Vx, Vx, origin), error);
    REQUIRE_THROWS_AS(serre_multiplicity(Vx, Vy, Ideal(a.R, {a.x})), error);
}

TEST_CASE("intersection products in the plane")
{
    A2 a;
    auto Vx = a.divisor(a.x), Vy = a.divisor(a.y);
    auto prod = intersection_product(Vx, Vy);
    REQUIRE(prod.size() == 1);
    REQUIRE(prod == Cycle::of_prime(PrimeCycle(a.X, Ideal(a.R, {a.x, a.y}))));

    auto par = a.divisor(a.y - a.x * a.x);
    auto tangent = intersection_product(par, Vy);
    REQUIRE(tangent == Cycle::of_prime(PrimeCycle(a.X, Ideal(a.R, {a.x, a.y})), 2));

    // [V(y-x^2)].[V(y-1)] = [(x-1,y-1)] + [(x+1,y-1)]
    auto chord = intersection_product(par, a.divisor(a.y - Polynomial::one(a.R)));
    Cycle expect(a.X, 2);
    expect.add_term(PrimeCycle(a.X, Ideal(a.R, {a.x - Polynomial::one(a.R), a.y - Polynomial::one(a.R)})), 1);
    expect.add_term(PrimeCycle(a.X, Ideal(a.R, {a.x + Polynomial::one(a.R), a.y - Polynomial::one(a.R)})), 1);
    REQUIRE(chord == expect);
}

TEST_CASE("commutativity and bilinearity")
{
    A2 a;
    auto par = a.divisor(a.y - a.x * a.x);
    auto Vy = a.divisor(a.y);
    auto line = a.divisor(a.y - a.x);
    REQUIRE(intersection_product(par, Vy) == intersection_product(Vy, par));
    // (2C + 3C').D = 2(C.D) + 3(C'.D)
    auto lhs = intersection_product(par * 2 + line * 3, Vy);
    auto rhs = intersection_product(par, Vy) * 2 + intersection_product(line, Vy) * 3;
    REQUIRE(lhs == rhs);
}

TEST_CASE("cycles of modules")
{
    A2 a;
    SECTION("R/(x^2) on the line")
    {
        auto R1 = PolyRing::make(FieldSpec::rationals(), {"x"});
        auto X1 = AffineScheme::affine_space(R1);
        auto x1 = Polynomial::variable(R1, 0);
        auto c = cycle_of_ideal(X1, Ideal(R1, {x1 * x1}), 1);
        REQUIRE(c == Cycle::of_prime(PrimeCycle(X1, Ideal(R1, {x1})), 2));
        auto c2 = cycle_of_ideal(X1, Ideal(R1, {x1}), 1);
        REQUIRE(c2 == Cycle::of_prime(PrimeCycle(X1, Ideal(R1, {x1})), 1));
    }
    SECTION("R/(x^2 y) splits over its components")
    {
        auto c = cycle_of_ideal(a.X, Ideal(a.R, {a.x * a.x * a.y}), 1,
                                {Ideal(a.R, {a.x}), Ideal(a.R, {a.y})});
        Cycle expect(a.X, 1);
        expect.add_term(PrimeCycle(a.X, Ideal(a.R, {a.x})), 2);
        expect.add_term(PrimeCycle(a.X, Ideal(a.R, {a.y})), 1);
        REQUIRE(c == expect);
    }
    SECTION("codimension violation detected")
    {
        REQUIRE_THROWS_AS(cycle_of_ideal(a.X, Ideal(a.R, {a.x}), 2), error);
    }
}

TEST_CASE("Tor formula: euler_cycle equals the product")
{
    A2 a;
    SECTION("transverse lines")
    {
        auto e = euler_cycle(a.X, Ideal(a.R, {a.x}), Ideal(a.R, {a.y}), 2);
        REQUIRE(e == intersection_product(a.divisor(a.x), a.divisor(a.y)));
    }
    SECTION("tangency")
    {
        auto e = euler_cycle(a.X, Ideal(a.R, {a.y - a.x * a.x}), Ideal(a.R, {a.y}), 2);
        REQUIRE(e == intersection_product(a.divisor(a.y - a.x * a.x), a.divisor(a.y)));
    }
    SECTION("two planes in A^4 with nonvanishing Tor_1")
    {
        auto R = PolyRing::make(FieldSpec::rationals(), {"x", "y", "z", "w"});
        auto X = AffineScheme::affine_space(R);
        auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1);
        auto z = Polynomial::variable(R, 2), w = Polynomial::variable(R, 3);
        Ideal I(R, {x * z, x * w, y * z, y * w});
        Ideal J(R, {x - z, y - w});
        auto e = euler_cycle(X, I, J, 4);
        Ideal origin(R, {x, y, z, w});
        Cycle expect(X, 4);
        expect.add_term(PrimeCycle(X, origin), 2);
        REQUIRE(e == expect);
        // product of the component cycles agrees
        auto ZI = cycle_of_ideal(X, I, 2, {Ideal(R, {x, y}), Ideal(R, {z, w})});
        auto ZJ = cycle_of_ideal(X, J, 2, {J});
        REQUIRE(intersection_product(ZI, ZJ) == e);
    }
}

TEST_CASE("flat pullbacks")
{
    // projection A^2 -> A^1
    auto R2 = PolyRing::make(FieldSpec::rationals(), {"x", "y"});
    auto R1 = PolyRing::make(FieldSpec::rationals(), {"x"});
    auto X2 = AffineScheme::affine_space(R2);
    auto X1 = AffineScheme::affine_space(R1);
    auto x2 = Polynomial::variable(R2, 0);
    auto x1 = Polynomial::variable(R1, 0);
    auto pr = SchemeMorphism::projection(X2, X1);

    auto C = Cycle::of_prime(PrimeCycle(X1, Ideal(R1, {x1 - Polynomial::one(R1)})));
    auto lifted = flat_pullback(pr, C);
    REQUIRE(lifted == Cycle::of_prime(PrimeCycle(X2, Ideal(R2, {x2 - Polynomial::one(R2)}))));

    auto twice = flat_pullback(pr, Cycle::of_prime(PrimeCycle(X1, Ideal(R1, {x1})), 2));
    REQUIRE(twice == Cycle::of_prime(PrimeCycle(X2, Ideal(R2, {x2})), 2));

    // localization A^1 minus origin -> A^1: only the visible component survives
    auto Gm = AffineScheme::localized(X1, {x1});
    auto loc = SchemeMorphism::localization(Gm, X1);
    Cycle mixed(X1, 1);
    mixed.add_term(PrimeCycle(X1, Ideal(R1, {x1})), 1);
    mixed.add_term(PrimeCycle(X1, Ideal(R1, {x1 - Polynomial::one(R1)})), 1);
    auto restricted = flat_pullback(loc, mixed);
    REQUIRE(restricted == Cycle::of_prime(PrimeCycle(Gm, Ideal(R1, {x1 - Polynomial::one(R1)}))));

    REQUIRE_THROWS_AS(flat_pullback(SchemeMorphism::generic(X2, X1, {x2 * x2}), C), error);
}

TEST_CASE("graph pullbacks")
{
    auto R1 = PolyRing::make(FieldSpec::rationals(), {"x"});
    auto Ry = PolyRing::make(FieldSpec::rationals(), {"y"});
    auto X = AffineScheme::affine_space(R1);
    auto Y = AffineScheme::affine_space(Ry);
    auto x = Polynomial::variable(R1, 0);
    auto y = Polynomial::variable(Ry, 0);

    SECTION("identity restores the cycle")
    {
        auto idm = SchemeMorphism::generic(X, Y, {x});
        auto C = Cycle::of_prime(PrimeCycle(Y, Ideal(Ry, {y - Polynomial::constant(Ry, 3)})), 5);
        auto back = graph_pullback(idm, C);
        REQUIRE(back == Cycle::of_prime(PrimeCycle(X, Ideal(R1, {x - Polynomial::constant(R1, 3)})), 5));
    }
    SECTION("squaring splits a fiber")
    {
        auto sq = SchemeMorphism::generic(X, Y, {x * x});
        auto C = Cycle::of_prime(PrimeCycle(Y, Ideal(Ry, {y - Polynomial::one(Ry)})));
        auto pulled = graph_pullback(sq, C);
        Cycle expect(X, 1);
        expect.add_term(PrimeCycle(X, Ideal(R1, {x - Polynomial::one(R1)})), 1);
        expect.add_term(PrimeCycle(X, Ideal(R1, {x + Polynomial::one(R1)})), 1);
        REQUIRE(pulled == expect);
    }
    SECTION("squaring ramifies at the origin")
    {
        auto sq = SchemeMorphism::generic(X, Y, {x * x});
        auto C = Cycle::of_prime(PrimeCycle(Y, Ideal(Ry, {y})));
        auto pulled = graph_pullback(sq, C);
        REQUIRE(pulled == Cycle::of_prime(PrimeCycle(X, Ideal(R1, {x})), 2));
    }
    SECTION("graph pullback agrees with flat pullback on projections")
    {
        auto R2 = PolyRing::make(FieldSpec::rationals(), {"u", "y"});
        auto X2 = AffineScheme::affine_space(R2);
        auto pr = SchemeMorphism::projection(X2, Y);
        auto C = Cycle::of_prime(PrimeCycle(Y, Ideal(Ry, {y - Polynomial::constant(Ry, 2)})));
        auto a = flat_pullback(pr, C);
        auto y2 = Polynomial::variable(R2, 1);
        auto b = graph_pullback(pr, C, {Ideal(R2, {y2 - Polynomial::constant(R2, 2)})});
        REQUIRE(a == b);
    }
}

TEST_CASE("associativity on transparent triples")
{
    auto R = PolyRing::make(FieldSpec::rationals(), {"x", "y", "z"});
    auto X = AffineScheme::affine_space(R);
    auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1), z = Polynomial::variable(R, 2);
    auto div = [&](const Polynomial& f) { return Cycle::of_prime(PrimeCycle(X, Ideal(R, {f}))); };

    auto C = div(y - x * x), D = div(z), E = div(y - Polynomial::one(R));
    std::vector<Ideal> cd_comps = {Ideal(R, {y - x * x, z})};
    auto CD = intersection_product(C, D, cd_comps);
    auto lhs = intersection_product(CD, E);
    std::vector<Ideal> de_comps = {Ideal(R, {z, y - Polynomial::one(R)})};
    auto DE = intersection_product(D, E, de_comps);
    auto rhs = intersection_product(C, DE);
    REQUIRE(lhs == rhs);
    REQUIRE(lhs.size() == 2);
}
