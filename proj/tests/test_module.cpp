#include <catch2/catch_amalgamated.hpp>
#include <cycal/module.hpp>

using namespace cycal;

namespace {

RingPtr qxy() { return PolyRing::make(FieldSpec::rationals(), {"x", "y"}); }

Polynomial var(const RingPtr& r, const char* n)
{
    return Polynomial::variable(r, static_cast<size_t>(r->var_index(n)));
}

}  // namespace

TEST_CASE("syzygies of a regular sequence are Koszul")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    ModVec f1(R, {x}), f2(R, {y});
    auto syz = syzygies({f1, f2});
    REQUIRE(syz.size() == 1);
    // (y, -x) up to a unit
    auto s = syz[0];
    REQUIRE((s.comps[0] * x + s.comps[1] * y).is_zero());
    REQUIRE_FALSE(s.comps[0].is_zero());
}

TEST_CASE("module membership and lift")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    ModVec g1(R, {x, y});
    ModVec g2(R, {y, Polynomial::zero(R)});
    ModVec target = g1 * (x + y) + g2 * y;
    auto lift = mod_lift(target, {g1, g2});
    REQUIRE(lift.has_value());
    ModVec rebuilt = g1 * (*lift)[0] + g2 * (*lift)[1];
    REQUIRE((rebuilt - target).is_zero());
    ModVec outside(R, {Polynomial::one(R), Polynomial::zero(R)});
    REQUIRE_FALSE(mod_lift(outside, {g1, g2}).has_value());
}

TEST_CASE("module saturation")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    // Submodule x^2*R of R: saturation by x is everything.
    ModVec g(R, {x * x});
    auto sat = module_saturate({g}, x, 1, R);
    auto gb = mod_groebner(sat, ModOrder::pot);
    ModVec one(R, {Polynomial::one(R)});
    REQUIRE(mod_member(one, gb, ModOrder::pot));
    // Saturating (x*y)*R by x gives (y).
    ModVec h(R, {x * y});
    auto sat2 = mod_groebner(module_saturate({h}, x, 1, R), ModOrder::pot);
    REQUIRE(mod_member(ModVec(R, {y}), sat2, ModOrder::pot));
    REQUIRE_FALSE(mod_member(one, sat2, ModOrder::pot));
}

TEST_CASE("standard monomial counting")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    // R/(x^2, y) is 2-dimensional; as a rank-1 module
    auto gb = mod_groebner({ModVec(R, {x * x}), ModVec(R, {y})}, ModOrder::pot);
    auto cnt = std_monomial_count(gb, 1, R);
    REQUIRE(cnt.has_value());
    REQUIRE(*cnt == 2);
    // infinite case
    auto gb2 = mod_groebner({ModVec(R, {x})}, ModOrder::pot);
    REQUIRE_FALSE(std_monomial_count(gb2, 1, R).has_value());
}

TEST_CASE("rank over a quotient domain")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    Ideal P(R, {y});  // R/P = Q[x]
    PolyMatrix M(R, 2, 2);
    M.at(0, 0) = x;
    M.at(0, 1) = y;  // dies mod P
    M.at(1, 0) = x * x;
    M.at(1, 1) = y * x;
    REQUIRE(rank_mod_prime(M, P) == 1);
    PolyMatrix Id(R, 2, 2);
    Id.at(0, 0) = Polynomial::one(R);
    Id.at(1, 1) = x;
    REQUIRE(rank_mod_prime(Id, P) == 2);
}
