#include <catch2/catch_amalgamated.hpp>
#include <cycal/ideal.hpp>

#include <random>

using namespace cycal;

namespace {

RingPtr qxy() { return PolyRing::make(FieldSpec::rationals(), {"x", "y"}); }

Polynomial var(const RingPtr& r, const char* n)
{
    return Polynomial::variable(r, static_cast<size_t>(r->var_index(n)));
}

Polynomial random_poly(const RingPtr& r, std::mt19937_64& rng, unsigned maxdeg = 3, int nterms = 4)
{
    std::vector<Term> terms;
    for (int i = 0; i < nterms; ++i) {
        Exponents e(r->nvars(), 0);
        unsigned budget = maxdeg;
        for (auto& x : e) {
            x = static_cast<unsigned>(rng() % (budget + 1));
            budget -= x;
        }
        long c = static_cast<long>(rng() % 7) - 3;
        terms.push_back({e, mpq_class(c)});
    }
    return Polynomial(r, std::move(terms));
}

}  // namespace

TEST_CASE("reduced Groebner bases match hand computations")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");

    SECTION("principal ideal")
    {
        Ideal I(R, {x});
        REQUIRE(I.groebner().size() == 1);
        REQUIRE(I.groebner()[0] == x);
    }
    SECTION("(x^2+y^2, xy) gains y^3")
    {
        Ideal I(R, {x * x + y * y, x * y});
        auto gb = I.groebner();
        REQUIRE(gb.size() == 3);
        // Hand Buchberger: S(x^2+y^2, xy) = y^3; every later pair reduces to 0.
        std::vector<Polynomial> expect = {x * y, x * x + y * y, y.pow(3)};
        for (const auto& e : expect) {
            bool found = false;
            for (const auto& g : gb) found = found || g == e;
            REQUIRE(found);
        }
    }
    SECTION("unit ideal")
    {
        Ideal I(R, {Polynomial::constant(R, 7)});
        REQUIRE(I.is_unit_ideal());
        REQUIRE(I.groebner()[0] == Polynomial::one(R));
    }
    SECTION("idempotent")
    {
        Ideal I(R, {x * x + y * y, x * y});
        Ideal J(R, I.groebner());
        REQUIRE(I == J);
    }
}

TEST_CASE("normal forms")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    Ideal Iy(R, {y});
    REQUIRE(Iy.normal_form(x) == x);
    Ideal I(R, {x * x + y, y});
    REQUIRE(I.normal_form(x * x) == Polynomial::zero(R));
    REQUIRE(I.normal_form(Polynomial::zero(R)).is_zero());
}

TEST_CASE("normal form is a homomorphism modulo the ideal")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    Ideal I(R, {x * x - y, y * y + x});
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        auto f = random_poly(R, rng);
        auto g = random_poly(R, rng);
        auto h = random_poly(R, rng) * I.gens()[rng() % 2];  // element of I
        auto lhs = I.normal_form(f * g + h);
        auto rhs = I.normal_form(I.normal_form(f * g) + I.normal_form(h));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("ideal dimension")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    REQUIRE(ideal_dimension(Ideal::zero(R)) == 2);
    REQUIRE(ideal_dimension(Ideal(R, {x})) == 1);
    REQUIRE(ideal_dimension(Ideal(R, {x * x, x * y, y * y})) == 0);
    REQUIRE(ideal_dimension(Ideal(R, {Polynomial::one(R)})) == -1);
}

TEST_CASE("saturation")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    SECTION("splits off a component")
    {
        Ideal I(R, {x * y});
        Ideal S = saturate(I, x);
        REQUIRE(S == Ideal(R, {y}));
    }
    SECTION("nonzerodivisor leaves the ideal alone")
    {
        REQUIRE(saturate(Ideal(R, {x}), y) == Ideal(R, {x}));
    }
    SECTION("nilpotent-direction saturation gives the unit ideal")
    {
        REQUIRE(saturate(Ideal(R, {x * x}), x).is_unit_ideal());
    }
    SECTION("idempotent")
    {
        Ideal I(R, {x * x * y, x * y * y});
        REQUIRE(saturate(saturate(I, x), x) == saturate(I, x));
    }
}

TEST_CASE("intersection, product, radical membership")
{
    auto R = qxy();
    auto x = var(R, "x"), y = var(R, "y");
    Ideal A(R, {x}), B(R, {y});
    REQUIRE(ideal_intersect(A, B) == Ideal(R, {x * y}));
    REQUIRE(ideal_sum(A, B) == Ideal(R, {x, y}));
    REQUIRE(radical_member(x * y, Ideal(R, {x * x * y.pow(3)})));
    REQUIRE_FALSE(radical_member(x + y, Ideal(R, {x * x})));
    Ideal I(R, {x * x, x * y});
    REQUIRE(saturate_by_ideal(I, Ideal(R, {x, y})) == Ideal(R, {x}));
}
